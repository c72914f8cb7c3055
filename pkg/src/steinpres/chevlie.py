"""Chevalley bases of spherical Lie algebras over Z, the W*-generators s*_i,
and the root-stabilizer words.

Integral structure is obtained from irreducible highest-weight modules built
over Q.  A vector of weight below the top is stored through its images under
the raising operators E_j, which is faithful on the irreducible quotient, so
the module is computed weight space by weight space without any Verma-module
bookkeeping.  The Kostant lattice U_Z^- v gives integral E_i, F_i with
integral divided powers.

Sign conventions follow the 2x2 basis e = (0 1; 0 0), f = (0 0; -1 0),
hbar = (1 0; 0 -1), so [e, f] = -hbar.  Modules are built with
F = -f, i.e. [E, F] = H.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, lcm

import numpy as np

from .cartan import GCM, classify_components, components, edge_label, is_spherical
from .weyl import Vec, enumerate_roots, is_positive, pairing, weyl_element_of_word


class NotSpherical(ValueError):
    pass


class NonIntegralDividedPower(AssertionError):
    pass


class NotAnOddPath(ValueError):
    pass


# ---------------------------------------------------------------------------
# small exact linear algebra


class _Echelon:
    """Incremental row echelon form over Q that remembers how each row was
    built from the accepted basis vectors."""

    def __init__(self):
        self.rows: list[tuple[int, list, list]] = []
        self.size = 0

    def reduce(self, v):
        res = list(v)
        coeffs = [Fraction(0)] * self.size
        for piv, vec, comb in self.rows:
            f = res[piv]
            if f:
                res = [a - f * b for a, b in zip(res, vec)]
                for k, c in enumerate(comb):
                    coeffs[k] += f * c
        return res, coeffs

    def add(self, v) -> tuple[bool, list]:
        """Accept v as a new basis vector if independent; return (accepted, coeffs)."""
        res, coeffs = self.reduce(v)
        piv = next((k for k, x in enumerate(res) if x), None)
        if piv is None:
            return False, coeffs
        f = res[piv]
        vec = [x / f for x in res]
        comb = [-c / f for c in coeffs] + [Fraction(1) / f]
        self.rows = [(p, r, c + [Fraction(0)]) for p, r, c in self.rows]
        self.rows.append((piv, vec, comb))
        self.size += 1
        return True, coeffs + [Fraction(0)]


def _mat_inv(m):
    n = len(m)
    a = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        f = a[col][col]
        a[col] = [x / f for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                g = a[r][col]
                a[r] = [x - g * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def _mat_mul(a, b):
    if not a or not b:
        return [[Fraction(0)] * (len(b[0]) if b else 0) for _ in a]
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), Fraction(0)) for j in range(len(b[0]))] for i in range(len(a))]


def _int_row_basis(rows: list[list[int]]) -> list[list[int]]:
    """Z-basis (echelon) of the lattice spanned by integer rows."""
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return []
    ncols = len(rows[0])
    basis = []
    col = 0
    while rows and col < ncols:
        nz = [r for r in rows if r[col] != 0]
        rest = [r for r in rows if r[col] == 0]
        if not nz:
            col += 1
            continue
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            keep = [piv]
            for r in nz[1:]:
                q = r[col] // piv[col]
                r2 = [a - q * b for a, b in zip(r, piv)]
                if r2[col] != 0:
                    keep.append(r2)
                elif any(r2):
                    rest.append(r2)
            nz = keep
        basis.append(nz[0])
        rows = rest
        col += 1
    return basis


def _lattice_basis(vectors) -> list[list[Fraction]]:
    den = 1
    for v in vectors:
        for x in v:
            den = lcm(den, Fraction(x).denominator)
    ints = [[int(Fraction(x) * den) for x in v] for v in vectors]
    return [[Fraction(x, den) for x in r] for r in _int_row_basis(ints)]


def divided_powers(m: np.ndarray) -> list[np.ndarray]:
    """[I, m, m^2/2!, ...] up to the last nonzero term; asserts integrality."""
    n = m.shape[0]
    out = [np.eye(n, dtype=np.int64)]
    power = np.eye(n, dtype=object)
    mo = m.astype(object)
    k = 0
    while True:
        k += 1
        power = power.dot(mo)
        if not power.any():
            return out
        if k > n:
            raise NonIntegralDividedPower("matrix is not nilpotent")
        f = factorial(k)
        q, r = power // f, power % f
        if r.any():
            raise NonIntegralDividedPower(f"(ad)^{k}/{k}! is not integral")
        out.append(q.astype(np.int64))


# ---------------------------------------------------------------------------
# highest-weight modules


@dataclass
class HWModule:
    """Irreducible module with highest weight lam (fundamental coordinates),
    in a Kostant-lattice basis.  weights[k] lists <alpha_i^vee, mu> for basis
    vector k.  E, F, H are integer matrices with [E_i, F_i] = H_i."""

    A: GCM
    lam: tuple[int, ...]
    weights: list[tuple[int, ...]]
    E: list[np.ndarray]
    F: list[np.ndarray]

    @property
    def dim(self) -> int:
        return len(self.weights)

    @property
    def H(self) -> list[np.ndarray]:
        return [np.diag([w[i] for w in self.weights]).astype(np.int64) for i in range(self.A.rank)]


def highest_weight_module(A: GCM, lam) -> HWModule:
    n = A.rank
    lam = tuple(lam)
    if len(lam) != n or any(x < 0 for x in lam):
        raise ValueError("highest weight must be dominant")
    if not is_spherical(A):
        raise NotSpherical(f"{A} is not spherical")

    def unit(i):
        return tuple(int(k == i) for k in range(n))

    def plus(c, e):
        return tuple(x + y for x, y in zip(c, e))

    def minus(c, e):
        return tuple(x - y for x, y in zip(c, e))

    def pair(c, i):
        return lam[i] - sum(A.a(i, j) * c[j] for j in range(n))

    top = (0,) * n
    dims = {top: 1}
    order = [top]
    E: dict = {}  # (c, j) -> matrix dims[c - e_j] x dims[c]
    F: dict = {}  # (c, i) -> matrix dims[c + e_i] x dims[c]
    frontier = [top]
    while frontier:
        cands = sorted({plus(c, unit(i)) for c in frontier for i in range(n)})
        new_frontier = []
        for c2 in cands:
            up = [j for j in range(n) if minus(c2, unit(j)) in dims]
            ech = _Echelon()
            chosen, coords = [], {}
            for i in up:
                c = minus(c2, unit(i))
                for k in range(dims[c]):
                    blocks = []
                    for j in up:
                        cj = minus(c2, unit(j))
                        block = [Fraction(0)] * dims[cj]
                        cje = minus(c, unit(j))
                        if (c, j) in E and (cje, i) in F:
                            ejw = [row[k] for row in E[(c, j)]]
                            fm = F[(cje, i)]
                            for r in range(dims[cj]):
                                block[r] += sum((fm[r][s] * ejw[s] for s in range(len(ejw))), Fraction(0))
                        if j == i:
                            block[k] += pair(c, i)
                        blocks.append(block)
                    vec = [x for b in blocks for x in b]
                    accepted, cf = ech.add(vec)
                    if accepted:
                        chosen.append((i, k, blocks))
                    coords[(i, k)] = cf
            if not chosen:
                continue
            d = len(chosen)
            dims[c2] = d
            order.append(c2)
            new_frontier.append(c2)
            for pos, j in enumerate(up):
                E[(c2, j)] = [[chosen[b][2][pos][r] for b in range(d)] for r in range(dims[minus(c2, unit(j))])]
            for i in up:
                c = minus(c2, unit(i))
                cols = []
                for k in range(dims[c]):
                    cf = coords[(i, k)]
                    if len(cf) < d:
                        cf = cf + [Fraction(0)] * (d - len(cf))
                    # accepted vectors were recorded with their own new slot
                    cols.append(cf[:d])
                F[(c, i)] = [[cols[k][r] for k in range(dims[c])] for r in range(d)]
            # a candidate accepted as basis vector b has coordinates e_b
            for b, (i, k, _) in enumerate(chosen):
                c = minus(c2, unit(i))
                for r in range(d):
                    F[(c, i)][r][k] = Fraction(int(r == b))
        frontier = new_frontier

    # Kostant lattice U_Z^- v_top, weight by weight
    lat = {top: [[Fraction(1)]]}  # columns of the lattice basis
    for c2 in order[1:]:
        span = []
        for i in range(n):
            kk = 1
            while True:
                c = tuple(x - kk * int(k == i) for k, x in enumerate(c2))
                if c not in dims:
                    break
                chain_ok = True
                vecs = [list(col) for col in zip(*lat[c])] if lat[c] else []
                cur = c
                for _ in range(kk):
                    if (cur, i) not in F:
                        chain_ok = False
                        break
                    fm = F[(cur, i)]
                    vecs = [[sum((fm[r][s] * v[s] for s in range(len(v))), Fraction(0)) for r in range(len(fm))] for v in vecs]
                    cur = plus(cur, unit(i))
                if chain_ok:
                    span.extend([[x / factorial(kk) for x in v] for v in vecs])
                kk += 1
        basis = _lattice_basis(span)
        if len(basis) != dims[c2]:
            raise AssertionError("Kostant lattice has wrong rank")
        lat[c2] = [list(r) for r in zip(*basis)]  # columns

    inv = {c: _mat_inv(lat[c]) for c in order}
    offset, pos = {}, 0
    for c in order:
        offset[c] = pos
        pos += dims[c]
    N = pos
    Em = [np.zeros((N, N), dtype=np.int64) for _ in range(n)]
    Fm = [np.zeros((N, N), dtype=np.int64) for _ in range(n)]

    def place(target, src_c, dst_c, m):
        m2 = _mat_mul(_mat_mul(inv[dst_c], m), lat[src_c])
        for r, row in enumerate(m2):
            for s, x in enumerate(row):
                if x.denominator != 1:
                    raise NonIntegralDividedPower("module operator not integral on the lattice")
                target[offset[dst_c] + r, offset[src_c] + s] = int(x)

    for (c, j), m in E.items():
        place(Em[j], c, minus(c, unit(j)), m)
    for (c, i), m in F.items():
        dst = plus(c, unit(i))
        if dst in dims:
            place(Fm[i], c, dst, m)
    weights = []
    for c in order:
        weights.extend([tuple(pair(c, i) for i in range(n))] * dims[c])
    mod = HWModule(A, lam, weights, Em, Fm)
    _check_module(mod)
    return mod


def _check_module(mod: HWModule):
    H = mod.H
    for i, j in itertools.product(range(mod.A.rank), repeat=2):
        comm = mod.E[i] @ mod.F[j] - mod.F[j] @ mod.E[i]
        expect = H[i] if i == j else 0 * H[i]
        if not np.array_equal(comm, expect):
            raise AssertionError("module fails [E_i, F_j] = delta_ij H_i")
    for M in mod.E + mod.F:
        divided_powers(M)


def fundamental_weight(A: GCM, i: int) -> tuple[int, ...]:
    return tuple(int(k == i) for k in range(A.rank))


# ---------------------------------------------------------------------------
# Chevalley algebra


def _root_key(r: Vec):
    return (sum(r), tuple(-x for x in r))


@dataclass
class ChevalleyAlgebra:
    """Basis: e_gamma for positive roots (height order), e_gamma for negative
    roots (same order), then hbar_i.  ad[b] is the integer matrix of ad of
    basis element b."""

    A: GCM
    positive: list[Vec]
    basis: list  # Vec for root vectors, ("h", i) for Cartan elements
    index: dict
    ad: list[np.ndarray]
    structure: dict = field(default_factory=dict)  # (gamma, delta) -> N
    coroots: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def rank(self) -> int:
        return self.A.rank

    @property
    def roots(self) -> list[Vec]:
        return [b for b in self.basis if not (isinstance(b, tuple) and b and b[0] == "h")]

    def e(self, gamma) -> int:
        """Basis index of e_gamma."""
        return self.index[tuple(gamma)]

    def h(self, i: int) -> int:
        return self.index[("h", i)]

    def vector(self, b: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[b] = 1
        return v

    def bracket(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        out = np.zeros(self.dim, dtype=np.int64)
        for b in np.nonzero(x)[0]:
            out += x[b] * (self.ad[b] @ y)
        return out

    def simple_e(self, i: int) -> int:
        return self.e(tuple(int(k == i) for k in range(self.rank)))

    def simple_f(self, i: int) -> int:
        return self.e(tuple(-int(k == i) for k in range(self.rank)))


def _adjoint_module(A: GCM) -> tuple[np.ndarray, list, list]:
    """Faithful module: direct sum of V(highest root) over the components.
    Returns (dim, E list, F list) with E, F as block-diagonal integer matrices."""
    blocks = []
    for comp in components(A):
        sub = A.sub(comp)
        roots = enumerate_roots(sub)
        theta = max(roots.positive(), key=_root_key)
        lam = tuple(sum(sub.a(i, j) * theta[j] for j in range(sub.rank)) for i in range(sub.rank))
        blocks.append((comp, highest_weight_module(sub, lam)))
    N = sum(m.dim for _, m in blocks)
    E = [np.zeros((N, N), dtype=np.int64) for _ in range(A.rank)]
    F = [np.zeros((N, N), dtype=np.int64) for _ in range(A.rank)]
    off = 0
    for comp, m in blocks:
        for local, i in enumerate(comp):
            E[i][off:off + m.dim, off:off + m.dim] = m.E[local]
            F[i][off:off + m.dim, off:off + m.dim] = m.F[local]
        off += m.dim
    return N, E, F


def _ratio(c: np.ndarray, x: np.ndarray) -> int:
    """c = lambda * x with integer lambda; assert."""
    nz = np.argwhere(x != 0)[0]
    lam = Fraction(int(c[tuple(nz)]), int(x[tuple(nz)]))
    if lam.denominator != 1 or not np.array_equal(c * lam.denominator, x * lam.numerator):
        raise AssertionError("bracket is not a multiple of the expected root vector")
    return int(lam)


def build_algebra(A: GCM) -> ChevalleyAlgebra:
    if not is_spherical(A):
        raise NotSpherical(f"{A} is not spherical")
    n = A.rank
    rs = enumerate_roots(A)
    positive = sorted(rs.positive(), key=_root_key)
    posset = set(positive)
    _, E, F = _adjoint_module(A)
    H = [E[i] @ F[i] - F[i] @ E[i] for i in range(n)]

    def comm(x, y):
        return x @ y - y @ x

    def hcomb(coroot):
        out = np.zeros_like(H[0])
        for i, c in enumerate(coroot):
            out = out + c * H[i]
        return out

    M = {}  # Kac-normalized root vectors in the module
    for i in range(n):
        s = tuple(int(k == i) for k in range(n))
        M[s] = E[i]
        M[tuple(-x for x in s)] = F[i]
    for g in positive:
        if g in M:
            continue
        # extraspecial pair: alpha minimal with g - alpha a positive root
        alpha = next(a for a in positive if tuple(x - y for x, y in zip(g, a)) in posset)
        beta = tuple(x - y for x, y in zip(g, alpha))
        p = 0
        while tuple(b - (p + 1) * a for a, b in zip(alpha, beta)) in rs:
            p += 1
        c = comm(M[alpha], M[beta])
        q, r = np.divmod(c, p + 1)
        if r.any():
            raise AssertionError("extraspecial bracket not divisible by p+1")
        M[g] = q
        mg = comm(M[tuple(-x for x in alpha)], M[tuple(-x for x in beta)])
        target = hcomb(rs.coroot(g))
        lam = Fraction(_ratio_frac(comm(M[g], mg), target))
        neg_g = mg * lam.numerator
        if (neg_g % lam.denominator).any():
            raise AssertionError("negative root vector not integral")
        M[tuple(-x for x in g)] = neg_g // lam.denominator
        if not np.array_equal(comm(M[g], M[tuple(-x for x in g)]), target):
            raise AssertionError("normalization of e_{-gamma} failed")

    negatives = [tuple(-x for x in g) for g in positive]
    basis = list(positive) + negatives + [("h", i) for i in range(n)]
    index = {b: k for k, b in enumerate(basis)}
    # basis convention: e_gamma = M_gamma (gamma > 0), e_{-gamma} = -M_{-gamma}, hbar_i = H_i
    X = {}
    for g in positive:
        X[g] = M[g]
    for g in negatives:
        X[g] = -M[g]
    for i in range(n):
        X[("h", i)] = H[i]
    dim = len(basis)
    hdiag = np.array([np.diag(H[i]) for i in range(n)]).T  # module dim x rank

    def coords(b1, b2) -> np.ndarray:
        out = np.zeros(dim, dtype=np.int64)
        if isinstance(b1, tuple) and b1[0] == "h" and isinstance(b2, tuple) and b2[0] == "h":
            return out
        if isinstance(b1, tuple) and b1[0] == "h":
            out[index[b2]] = pairing(A, _unit(n, b1[1]), b2)
            return out
        if isinstance(b2, tuple) and b2[0] == "h":
            out[index[b1]] = -pairing(A, _unit(n, b2[1]), b1)
            return out
        c = comm(X[b1], X[b2])
        w = tuple(x + y for x, y in zip(b1, b2))
        if w in index:
            out[index[w]] = _ratio(c, X[w])
        elif not any(w):
            coef, *_ = np.linalg.lstsq(hdiag.astype(float), np.diag(c).astype(float), rcond=None)
            coef = np.rint(coef).astype(np.int64)
            if not np.array_equal(sum(int(coef[i]) * H[i] for i in range(n)), c):
                raise AssertionError("[e_g, e_-g] is not in the Cartan lattice")
            for i in range(n):
                out[index[("h", i)]] = coef[i]
        elif c.any():
            raise AssertionError("bracket lands outside the root spaces")
        return out

    ad = []
    structure = {}
    for b1 in basis:
        m = np.zeros((dim, dim), dtype=np.int64)
        for k, b2 in enumerate(basis):
            col = coords(b1, b2)
            m[:, k] = col
            if b1[0] != "h" and b2[0] != "h":
                w = tuple(x + y for x, y in zip(b1, b2))
                if w in index:
                    structure[(b1, b2)] = int(col[index[w]])
        ad.append(m)
    L = ChevalleyAlgebra(A, positive, basis, index, ad, structure, {r: rs.coroot(r) for r in rs.roots})
    return L


def _ratio_frac(c: np.ndarray, x: np.ndarray) -> Fraction:
    """Fraction lambda with lambda * c = x."""
    nz = np.argwhere(c != 0)[0]
    lam = Fraction(int(x[tuple(nz)]), int(c[tuple(nz)]))
    if not np.array_equal(c * lam.numerator, x * lam.denominator):
        raise AssertionError("matrices are not proportional")
    return lam


def _unit(n, i):
    return tuple(int(k == i) for k in range(n))


def check_algebra(L: ChevalleyAlgebra) -> dict:
    """Jacobi (ad is a homomorphism), Serre relations, [h, e] weights,
    [e_g, e_-g] = -coroot combination, |N| = p + 1."""
    n, dim = L.rank, L.dim
    report = {"jacobi": True, "serre": True, "normalization": True, "cartan": True}
    for a, b in itertools.product(range(dim), repeat=2):
        lhs = L.ad[a] @ L.ad[b] - L.ad[b] @ L.ad[a]
        rhs = np.zeros((dim, dim), dtype=np.int64)
        col = L.ad[a][:, b]
        for c in np.nonzero(col)[0]:
            rhs += col[c] * L.ad[c]
        if not np.array_equal(lhs, rhs):
            report["jacobi"] = False
    roots = set(L.roots)
    for i, j in itertools.product(range(n), repeat=2):
        if i == j:
            continue
        v = L.vector(L.simple_e(j))
        for _ in range(1 - L.A.a(i, j)):
            v = L.ad[L.simple_e(i)] @ v
        w = L.vector(L.simple_f(j))
        for _ in range(1 - L.A.a(i, j)):
            w = L.ad[L.simple_f(i)] @ w
        if v.any() or w.any():
            report["serre"] = False
    for g in L.roots:
        col = L.ad[L.e(g)][:, L.e(tuple(-x for x in g))]
        # [e_g, e_-g] = -h_g for every root g
        hpart = np.array([col[L.h(i)] for i in range(n)])
        if not np.array_equal(hpart, -np.array(L.coroots[g])):
            report["cartan"] = False
        for i in range(n):
            if L.ad[L.h(i)][L.e(g), L.e(g)] != pairing(L.A, _unit(n, i), g):
                report["cartan"] = False
    for (g, d), N in L.structure.items():
        p = 0
        while tuple(y - (p + 1) * x for x, y in zip(g, d)) in roots:
            p += 1
        if abs(N) != p + 1:
            report["normalization"] = False
    return report


# ---------------------------------------------------------------------------
# W*


@dataclass(frozen=True)
class WStarElement:
    matrix: np.ndarray = field(compare=False)
    word: tuple  # ((node, +-1), ...)

    def __mul__(self, other: "WStarElement") -> "WStarElement":
        return WStarElement(self.matrix @ other.matrix, self.word + other.word)


def exp_ad_powers(L: ChevalleyAlgebra, gamma) -> list[np.ndarray]:
    """Integer divided powers of ad e_gamma."""
    return divided_powers(L.ad[L.e(gamma)])


def exp_ad(L: ChevalleyAlgebra, gamma, t, R) -> list[list]:
    """exp(t ad e_gamma) as a nested list of ring values."""
    pw = exp_ad_powers(L, gamma)
    dim = L.dim
    tk = [R.pow(t, k) if k else R.one() for k in range(len(pw))]
    out = []
    for r in range(dim):
        row = []
        for c in range(dim):
            v = R.zero()
            for k, P in enumerate(pw):
                if P[r, c]:
                    v = R.add(v, R.mul(R.from_int(int(P[r, c])), tk[k]))
            row.append(v)
        out.append(row)
    return out


def _exp_int(L: ChevalleyAlgebra, b: int, t: int = 1) -> np.ndarray:
    out = np.zeros((L.dim, L.dim), dtype=np.int64)
    for k, P in enumerate(divided_powers(L.ad[b])):
        out += (t**k) * P
    return out


def s_star_matrix(L: ChevalleyAlgebra, i: int) -> np.ndarray:
    cache = L.__dict__.setdefault("_sstar", {})
    if i not in cache:
        xe = _exp_int(L, L.simple_e(i))
        xf = _exp_int(L, L.simple_f(i))
        cache[i] = xe @ xf @ xe
    return cache[i]


def s_star(L: ChevalleyAlgebra, i: int) -> WStarElement:
    return WStarElement(s_star_matrix(L, i), ((i, 1),))


def w_star_of_word(L: ChevalleyAlgebra, word) -> WStarElement:
    """word: sequence of nodes or (node, +-1) pairs; left-to-right product."""
    m = np.eye(L.dim, dtype=np.int64)
    norm = []
    for x in word:
        i, e = (x, 1) if isinstance(x, (int, np.integer)) else x
        s = s_star_matrix(L, i)
        m = m @ (s if e == 1 else s @ s @ s)
        norm.append((int(i), e))
    return WStarElement(m, tuple(norm))


def ad_coroot(L: ChevalleyAlgebra, coroot) -> np.ndarray:
    diag = []
    for b in L.basis:
        if isinstance(b, tuple) and b and b[0] == "h":
            diag.append(1)
        else:
            diag.append(-1 if pairing(L.A, tuple(coroot), b) % 2 else 1)
    return np.diag(diag).astype(np.int64)


def e_set(L: ChevalleyAlgebra, gamma) -> list[np.ndarray]:
    """Vectors of the W*-orbit of {e_i} lying on the gamma root line."""
    gamma = tuple(gamma)
    gens = [s_star_matrix(L, i) for i in range(L.rank)]
    start = [(L.simple_e(i), 1) for i in range(L.rank)]
    seen = set(start)
    frontier = list(start)
    while frontier:
        nxt = []
        for b, sg in frontier:
            for g in gens:
                col = g[:, b]
                nz = np.nonzero(col)[0]
                if len(nz) != 1 or abs(col[nz[0]]) != 1:
                    raise AssertionError("W* does not permute root vectors up to sign")
                item = (int(nz[0]), sg * int(col[nz[0]]))
                if item not in seen:
                    seen.add(item)
                    nxt.append(item)
        frontier = nxt
    out = []
    for b, sg in sorted(seen):
        if L.basis[b] == gamma:
            v = np.zeros(L.dim, dtype=np.int64)
            v[b] = sg
            out.append(v)
    return sorted(out, key=lambda v: -int(v.sum()))


# ---------------------------------------------------------------------------
# root stabilizer words


def p_gamma_word(path, A: GCM | None = None) -> tuple:
    """(s_{i_{n-1}} s_{i_n}) ... (s_{i_0} s_{i_1}) as a tuple of (node, 1)."""
    path = list(path)
    if A is not None:
        for a, b in zip(path, path[1:]):
            if edge_label(A, a, b) != 3:
                raise NotAnOddPath(f"nodes {a}, {b} are not joined by an m = 3 edge")
    word = []
    for k in range(len(path) - 2, -1, -1):
        word += [(path[k], 1), (path[k + 1], 1)]
    return tuple(word)


def inverse_word(word) -> tuple:
    return tuple((i, -e) for i, e in reversed(word))


@dataclass(frozen=True)
class StabilizerGenerator:
    kind: str  # "r", "p" or "square"
    label: tuple
    word: tuple  # ((node, +-1), ...)


def stabilizer_generators(A: GCM, i: int) -> list[StabilizerGenerator]:
    from .cartan import odd_diagram

    g = odd_diagram(A)
    comp = g.component_of(i)
    out = []
    for z in g.cycle_basis(i):
        out.append(StabilizerGenerator("p", tuple(z), p_gamma_word(z, A)))
    for j in comp:
        p = p_gamma_word(g.tree_path(i, j), A)
        for k in range(A.rank):
            m = edge_label(A, j, k)
            if m not in (2, 4, 6):
                continue
            mid = {2: [k], 4: [k, j, k], 6: [k, j, k, j, k]}[m]
            word = inverse_word(p) + tuple((x, 1) for x in mid) + p
            out.append(StabilizerGenerator("r", (j, k), word))
    for l in range(A.rank):
        out.append(StabilizerGenerator("square", (l,), ((l, 1), (l, 1))))
    return out


def weyl_word(word) -> list[int]:
    """Image in W: exponents drop out since s_i^2 = 1."""
    return [i for i, _ in word]


# ---------------------------------------------------------------------------
# identity checks


def _alternating(i, j, m):
    return [i if k % 2 == 0 else j for k in range(m)]


def wstar_suite(A: GCM, L: ChevalleyAlgebra | None = None) -> dict:
    """Machine check of the W* identities on a spherical diagram.
    Returns {check name: bool}."""
    from .weyl import group_closure, orbit, reflection_matrix

    if L is None:
        L = build_algebra(A)
    n = A.rank
    S = [s_star_matrix(L, i) for i in range(n)]
    Sinv = [s @ s @ s for s in S]
    res = {}
    ok = True
    for i, j in itertools.combinations(range(n), 2):
        m = edge_label(A, i, j)
        lhs = w_star_of_word(L, _alternating(i, j, m)).matrix
        rhs = w_star_of_word(L, _alternating(j, i, m)).matrix
        ok &= np.array_equal(lhs, rhs)
    res["artin"] = bool(ok)
    res["square_is_ad_coroot"] = all(
        np.array_equal(S[i] @ S[i], ad_coroot(L, _unit(n, i))) for i in range(n)
    )
    res["square_order_two"] = all(
        np.array_equal(np.linalg.matrix_power(S[i] @ S[i], 2), np.eye(L.dim, dtype=np.int64)) for i in range(n)
    )
    ok = True
    for i, j in itertools.product(range(n), repeat=2):
        lhs = S[i] @ S[j] @ S[j] @ Sinv[i]
        e = -2 * A.a(j, i)
        rhs = S[j] @ S[j] @ _mpow(S[i], Sinv[i], e)
        ok &= np.array_equal(lhs, rhs)
    res["square_conjugation"] = bool(ok)
    ok = True
    for b in range(L.dim):
        if isinstance(L.basis[b], tuple) and L.basis[b][0] == "h":
            continue
        for w in [list(x) for x in itertools.product(range(n), repeat=2)]:
            we = weyl_element_of_word(A, w)
            ws = w_star_of_word(L, w).matrix
            col = ws[:, b]
            tgt = L.e(we(L.basis[b]))
            if abs(col[tgt]) != 1 or np.count_nonzero(col) != 1:
                ok = False
    res["permutes_root_lines"] = bool(ok)
    ok = True
    for i, j in itertools.permutations(range(n), 2):
        m = edge_label(A, i, j)
        ej = L.vector(L.simple_e(j))
        if m == 3:
            ok &= np.array_equal(S[j] @ S[i] @ ej, L.vector(L.simple_e(i)))
        elif m in (2, 4, 6):
            word = {2: [i], 4: [i, j, i], 6: [i, j, i, j, i]}[m]
            ok &= np.array_equal(w_star_of_word(L, word).matrix @ ej, ej)
    res["root_moving"] = bool(ok)
    ok = True
    eq = True
    W_order = len(group_closure([reflection_matrix(A, k) for k in range(n)]))
    for i in range(n):
        ei = L.vector(L.simple_e(i))
        gens = stabilizer_generators(A, i)
        for g in gens:
            mat = w_star_of_word(L, g.word).matrix
            if g.kind == "square":
                l = g.label[0]
                ok &= np.array_equal(mat @ ei, (-1) ** (A.a(l, i) % 2) * ei)
            else:
                ok &= np.array_equal(mat @ ei, ei)
        wmats = [weyl_element_of_word(A, weyl_word(g.word)).matrix for g in gens if g.kind != "square"]
        stab = group_closure(wmats) if wmats else {tuple(tuple(int(r == c) for c in range(n)) for r in range(n))}
        orb = orbit(A, _unit(n, i))
        eq &= len(stab) * len(orb) == W_order
    res["stabilizer_fixes_e_i"] = bool(ok)
    res["orbit_stabilizer"] = bool(eq)
    sizes = [len(e_set(L, g)) for g in L.roots]
    res["e_set_sizes"] = all(1 <= s <= 2 for s in sizes)
    return res


def _mpow(S, Sinv, e):
    out = np.eye(S.shape[0], dtype=np.int64)
    base = S if e >= 0 else Sinv
    for _ in range(abs(e)):
        out = out @ base
    return out
