"""Roots, coroots and the Weyl group action on Z^I.

Root and coroot vectors are plain integer tuples indexed by node position.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .cartan import GCM

Vec = tuple[int, ...]


class DimensionMismatch(ValueError):
    pass


class NotRealRoots(ValueError):
    pass


class PairNotClassicallyPrenilpotent(ValueError):
    pass


def simple(A: GCM, i: int) -> Vec:
    return tuple(1 if k == i else 0 for k in range(A.rank))


def neg(v: Vec) -> Vec:
    return tuple(-x for x in v)


def add(v: Vec, w: Vec) -> Vec:
    return tuple(x + y for x, y in zip(v, w))


def is_positive(v: Vec) -> bool:
    return all(x >= 0 for x in v) and any(v)


def pairing(A: GCM, coroot: Vec, root: Vec) -> int:
    """<beta^vee, gamma> extended bilinearly from <alpha_i^vee, alpha_j> = A_ij."""
    if len(coroot) != A.rank or len(root) != A.rank:
        raise DimensionMismatch(f"expected vectors of length {A.rank}")
    return sum(coroot[i] * A.a(i, j) * root[j] for i in range(A.rank) if coroot[i] for j in range(A.rank) if root[j])


def reflect_root(A: GCM, i: int, beta: Vec) -> Vec:
    c = sum(A.a(i, j) * beta[j] for j in range(A.rank))
    return tuple(b - c if k == i else b for k, b in enumerate(beta))


def reflect_coroot(A: GCM, i: int, beta_v: Vec) -> Vec:
    c = sum(beta_v[j] * A.a(j, i) for j in range(A.rank))
    return tuple(b - c if k == i else b for k, b in enumerate(beta_v))


@dataclass
class RootSet:
    """Enumerated real roots with their coroots.

    complete is True when the orbit closed up within the bound.
    """

    A: GCM
    coroots: dict = field(default_factory=dict)
    depth: dict = field(default_factory=dict)
    complete: bool = False

    @property
    def roots(self) -> list[Vec]:
        return sorted(self.coroots, key=lambda r: (not is_positive(r), sum(map(abs, r)), tuple(-x for x in r)))

    def positive(self) -> list[Vec]:
        return [r for r in self.roots if is_positive(r)]

    def coroot(self, r: Vec) -> Vec:
        return self.coroots[r]

    def __contains__(self, r) -> bool:
        return tuple(r) in self.coroots

    def __len__(self):
        return len(self.coroots)

    def __iter__(self):
        return iter(self.roots)


def enumerate_roots(A: GCM, bound: int | None = None) -> RootSet:
    """BFS over the orbits of the simple roots, carrying coroots along.

    Layer 1 is {+-alpha_i}; layer k+1 applies one simple reflection to layer k;
    ``bound`` is the number of layers kept.  With bound None the BFS runs until
    the orbit closes (only sensible for spherical A; capped at 10^5 roots).
    """
    rs = RootSet(A)
    if bound is not None and bound <= 0:
        rs.complete = False
        return rs
    frontier = []
    for i in range(A.rank):
        for sgn in (1, -1):
            r = tuple(sgn * x for x in simple(A, i))
            rs.coroots[r] = r  # alpha_i^vee has the same coordinates
            rs.depth[r] = 1
            frontier.append(r)
    layer = 1
    while frontier:
        if bound is not None and layer >= bound:
            break
        layer += 1
        nxt = []
        for r in sorted(frontier):
            cv = rs.coroots[r]
            for i in range(A.rank):
                s = reflect_root(A, i, r)
                if s not in rs.coroots:
                    rs.coroots[s] = reflect_coroot(A, i, cv)
                    rs.depth[s] = layer
                    nxt.append(s)
        frontier = nxt
        if bound is None and len(rs.coroots) > 100_000:
            raise ValueError("root enumeration did not close; pass an explicit bound")
    if not frontier:
        rs.complete = True
    else:
        # closed iff one more layer adds nothing
        rs.complete = all(reflect_root(A, i, r) in rs.coroots for r in frontier for i in range(A.rank))
    return rs


# ---------------------------------------------------------------------------
# Weyl group elements


def reflection_matrix(A: GCM, i: int) -> tuple[tuple[int, ...], ...]:
    n = A.rank
    cols = [reflect_root(A, i, simple(A, j)) for j in range(n)]
    return tuple(tuple(cols[j][r] for j in range(n)) for r in range(n))


def _matmul(a, b):
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def _identity(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def apply_matrix(m, v: Vec) -> Vec:
    return tuple(sum(m[i][j] * v[j] for j in range(len(v))) for i in range(len(v)))


@dataclass(frozen=True)
class WeylElement:
    matrix: tuple[tuple[int, ...], ...]
    word: tuple[int, ...]

    def __call__(self, v: Vec) -> Vec:
        return apply_matrix(self.matrix, v)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return WeylElement(_matmul(self.matrix, other.matrix), self.word + other.word)


def weyl_element_of_word(A: GCM, word) -> WeylElement:
    """Product s_{w_0} s_{w_1} ... as a matrix acting on the left."""
    m = _identity(A.rank)
    word = tuple(A.index(i) for i in word)
    for i in word:
        m = _matmul(m, reflection_matrix(A, i))
    return WeylElement(m, word)


def group_closure(gens: list, limit: int = 10**6) -> set:
    """All products of the given integer matrices (tuples); BFS."""
    if not gens:
        return set()
    n = len(gens[0])
    ident = _identity(n)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = _matmul(g, s)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
                    if len(seen) > limit:
                        raise ValueError("group closure exceeded limit")
        frontier = nxt
    return seen


def weyl_group_order(A: GCM, limit: int = 10**6) -> int:
    return len(group_closure([reflection_matrix(A, i) for i in range(A.rank)], limit))


def orbit(A: GCM, v: Vec) -> set:
    seen = {v}
    frontier = [v]
    while frontier:
        nxt = []
        for r in frontier:
            for i in range(A.rank):
                s = reflect_root(A, i, r)
                if s not in seen:
                    seen.add(s)
                    nxt.append(s)
        frontier = nxt
    return seen


# ---------------------------------------------------------------------------
# rank-2 subsystems and prenilpotency


A1, A1xA1, A2, B2, G2, INFINITE = "A1", "A1xA1", "A2", "B2", "G2", "Infinite"


def _in_span(v: Vec, a: Vec, b: Vec) -> bool:
    """Is v in the rational span of a and b?  (a, b assumed independent or equal up to sign)"""
    n = len(v)
    # rank of [a; b; v] vs rank of [a; b]
    return _rank([a, b, v]) == _rank([a, b])


def _rank(rows) -> int:
    m = [[Fraction(x) for x in r] for r in rows]
    rank, col = 0, 0
    ncols = len(m[0]) if m else 0
    while rank < len(m) and col < ncols:
        piv = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if piv is None:
            col += 1
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                f = m[r][col] / m[rank][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
        col += 1
    return rank


def _reflect_in(A: GCM, gamma: Vec, gamma_v: Vec, delta: Vec) -> Vec:
    c = pairing(A, gamma_v, delta)
    return tuple(d - c * g for d, g in zip(delta, gamma))


def _check_real(Phi: RootSet, *roots):
    for r in roots:
        if tuple(r) not in Phi.coroots:
            raise NotRealRoots(f"{r} is not among the enumerated real roots")


def rank2_subsystem(A: GCM, Phi: RootSet, alpha: Vec, beta: Vec) -> tuple[set, bool]:
    """(roots found in the span, infinite-certificate flag).

    The enumerated roots in the span are closed under their own reflections;
    a pair with <g^vee, d><d^vee, g> >= 4 certifies an infinite dihedral
    reflection group, hence infinitely many roots in the span.
    """
    _check_real(Phi, alpha, beta)
    if _rank([alpha, beta]) == 1:
        found = {r for r in Phi.coroots if _rank([alpha, r]) == 1}
    else:
        found = {r for r in Phi.coroots if _in_span(r, alpha, beta)}
    cov = {r: Phi.coroots[r] for r in found}
    changed = True
    while changed:
        changed = False
        items = sorted(cov.items())
        for (g, gv), (d, dv) in itertools.product(items, repeat=2):
            if d == g or d == neg(g):
                continue
            if pairing(A, gv, d) * pairing(A, dv, g) >= 4:
                return set(cov), True
            s = _reflect_in(A, g, gv, d)
            if s not in cov:
                cov[s] = _reflect_in_coroot(A, g, gv, dv)
                changed = True
                if len(cov) > 12:
                    return set(cov), True
    return set(cov), False


def _reflect_in_coroot(A: GCM, gamma: Vec, gamma_v: Vec, delta_v: Vec) -> Vec:
    c = pairing(A, delta_v, gamma)
    return tuple(d - c * g for d, g in zip(delta_v, gamma_v))


def rank2_type(A: GCM, Phi: RootSet, alpha: Vec, beta: Vec) -> str:
    roots, infinite = rank2_subsystem(A, Phi, alpha, beta)
    if infinite:
        return INFINITE
    n = len(roots)
    return {2: A1, 4: A1xA1, 6: A2, 8: B2, 12: G2}.get(n, INFINITE)


@dataclass(frozen=True)
class PairClass:
    kind: str  # NotPrenilpotent | PrenilpotentOnly | ClassicallyPrenilpotent | Unknown
    rank2: str | None = None
    reason: str = ""

    def __str__(self):
        return f"{self.kind}({self.rank2})" if self.rank2 else self.kind


def _imaginary_certificate(A: GCM, alpha: Vec, beta: Vec, steps: int = 200) -> tuple | None:
    """Search small c, d >= 0 with v = c*alpha + d*beta positive and
    W-conjugate into {<alpha_i^vee, .> <= 0 for all i}.  Such v has
    w(v) >= v > 0 for every w, so no w makes both w(alpha), w(beta) negative."""
    for c, d in sorted(itertools.product(range(7), repeat=2), key=lambda p: (sum(p), p)):
        if c == 0 and d == 0:
            continue
        v = tuple(c * x + d * y for x, y in zip(alpha, beta))
        if not is_positive(v):
            continue
        w = v
        for _ in range(steps):
            if not is_positive(w):
                break
            bad = [i for i in range(A.rank) if sum(A.a(i, j) * w[j] for j in range(A.rank)) > 0]
            if not bad:
                return (c, d, w)
            w = reflect_root(A, bad[0], w)
    return None


def classify_pair(A: GCM, Phi: RootSet, alpha: Vec, beta: Vec, budget: int = 8) -> PairClass:
    alpha, beta = tuple(alpha), tuple(beta)
    _check_real(Phi, alpha, beta)
    if add(alpha, beta) == (0,) * A.rank:
        return PairClass("NotPrenilpotent", reason="alpha = -beta")
    t = rank2_type(A, Phi, alpha, beta)
    if t != INFINITE:
        return PairClass("ClassicallyPrenilpotent", t)
    pos = neg_found = False
    frontier = [(alpha, beta)]
    seen = {(alpha, beta)}
    for _ in range(budget + 1):
        nxt = []
        for a, b in frontier:
            if is_positive(a) and is_positive(b):
                pos = True
            if is_positive(neg(a)) and is_positive(neg(b)):
                neg_found = True
            for i in range(A.rank):
                p = (reflect_root(A, i, a), reflect_root(A, i, b))
                if p not in seen:
                    seen.add(p)
                    nxt.append(p)
        if pos and neg_found:
            return PairClass("PrenilpotentOnly", INFINITE, "witness chambers found")
        frontier = nxt
    cert = _imaginary_certificate(A, alpha, beta)
    if cert is not None:
        c, d, _ = cert
        return PairClass("NotPrenilpotent", INFINITE, f"{c}*alpha + {d}*beta lies in the imaginary cone")
    return PairClass("Unknown", INFINITE, "budget exhausted")


def theta(A: GCM, Phi: RootSet, alpha: Vec, beta: Vec) -> set:
    pc = classify_pair(A, Phi, alpha, beta)
    if pc.kind != "ClassicallyPrenilpotent":
        raise PairNotClassicallyPrenilpotent(f"{alpha}, {beta}: {pc}")
    roots, _ = rank2_subsystem(A, Phi, alpha, beta)
    out = set()
    for r in roots:
        # r = m*alpha + n*beta with m, n >= 0 rational; roots here have small coefficients
        for m in range(0, 4):
            for n in range(0, 4):
                if (m or n) and tuple(m * x + n * y for x, y in zip(alpha, beta)) == r:
                    out.add(r)
    return out

