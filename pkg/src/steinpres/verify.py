"""Matrix representations, relator checking, diagram endomorphisms and
unipotent generation experiments."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .cartan import GCM, classify_components, edge_label, short_node
from .chevlie import build_algebra, divided_powers, highest_weight_module
from .fpgroup import matrix_closure
from .present import PresentationDoc, additive_generators, emit_presentation
from .ring import GaloisField, LaurentRing, Ring, WrongCharacteristic, frobenius_sqrt
from .weyl import enumerate_roots, reflect_root
from .words import Gen, Word, substitute


class NotSupported(ValueError):
    pass


class UnassignedGenerator(KeyError):
    pass


class WrongDiagram(ValueError):
    pass


class NotAField(ValueError):
    pass


# ---------------------------------------------------------------------------
# matrix backends


class SymbolicBackend:
    """Sparse matrices with entries in a (possibly infinite) ring: a tuple of
    dict rows {column: value}."""

    def __init__(self, R: Ring, dim: int):
        self.R, self.dim = R, dim

    def identity(self):
        one = self.R.one()
        return tuple({i: one} for i in range(self.dim))

    def from_powers(self, powers: list[np.ndarray], t):
        R = self.R
        rows = [dict() for _ in range(self.dim)]
        tk = R.one()
        for k, P in enumerate(powers):
            if k:
                tk = R.mul(tk, t)
            if R.is_zero(tk):
                break
            for r, c in zip(*np.nonzero(P)):
                v = R.mul(R.from_int(int(P[r, c])), tk)
                row = rows[r]
                s = R.add(row.get(c, R.zero()), v)
                if R.is_zero(s):
                    row.pop(c, None)
                else:
                    row[int(c)] = s
        return tuple(rows)

    def mul(self, a, b):
        R = self.R
        out = []
        for row in a:
            acc: dict = {}
            for k, x in row.items():
                for j, y in b[k].items():
                    p = R.mul(x, y)
                    acc[j] = R.add(acc[j], p) if j in acc else p
            out.append({j: v for j, v in acc.items() if not R.is_zero(v)})
        return tuple(out)

    def equal(self, a, b) -> bool:
        return all(x == y for x, y in zip(a, b))

    def to_list(self, a):
        z = self.R.zero()
        return [[self.R.fmt(row.get(j, z)) for j in range(self.dim)] for row in a]


class FiniteBackend:
    """Dense integer matrices modulo n, with GF(p^k) entries replaced by
    their k x k multiplication matrices over F_p."""

    def __init__(self, R: Ring, dim: int):
        self.R, self.dim = R, dim
        self.mod, self.k, self.embed = R.linear_embedding()
        self.size = dim * self.k

    def identity(self):
        return np.eye(self.size, dtype=np.int64)

    def from_powers(self, powers: list[np.ndarray], t):
        R = self.R
        out = np.zeros((self.size, self.size), dtype=np.int64)
        tk = R.one()
        for k, P in enumerate(powers):
            if k:
                tk = R.mul(tk, t)
            out += np.kron(P % self.mod, self.embed(tk))
        return out % self.mod

    def mul(self, a, b):
        return (a @ b) % self.mod

    def equal(self, a, b) -> bool:
        return bool(np.array_equal(a, b))

    def to_list(self, a):
        return a.tolist()


def backend_for(R: Ring, dim: int):
    if isinstance(R, LaurentRing) or not R.is_finite:
        return SymbolicBackend(R, dim)
    return FiniteBackend(R, dim)


# ---------------------------------------------------------------------------
# representations


@dataclass
class RepSpec:
    """X_i(t) = exp(t e_i) and S_i = X_i(1) exp(f_i) X_i(1) in a module with
    integer matrices e_i, f_i (f as in the sl2 basis with [e, f] = -hbar)."""

    A: GCM
    R: Ring
    kind: str
    dim: int
    e: list[np.ndarray]
    f: list[np.ndarray]
    backend: object = None
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.backend = backend_for(self.R, self.dim)
        self._ep = [divided_powers(m) for m in self.e]
        self._fp = [divided_powers(m) for m in self.f]

    def x(self, i: int, t):
        return self.backend.from_powers(self._ep[i], t)

    def y(self, i: int, t):
        """exp(t f_i)."""
        return self.backend.from_powers(self._fp[i], t)

    def gen_matrix(self, g: Gen, e: int = 1):
        key = (g, e)
        if key in self._cache:
            return self._cache[key]
        if g.node not in range(self.A.rank):
            raise UnassignedGenerator(g)
        R, B = self.R, self.backend
        if g.kind == "X":
            m = self.x(g.node, g.t if e == 1 else R.neg(g.t))
        elif g.kind == "S":
            one = R.one() if e == 1 else R.neg(R.one())
            m = B.mul(B.mul(self.x(g.node, one), self.y(g.node, one)), self.x(g.node, one))
        else:
            raise UnassignedGenerator(g)
        self._cache[key] = m
        return m

    def eval_word(self, w: Word):
        B = self.backend
        m = B.identity()
        for g, e in w:
            m = B.mul(m, self.gen_matrix(g, e))
        return m

    def is_identity(self, w: Word) -> bool:
        return self.backend.equal(self.eval_word(w), self.backend.identity())

    def self_check(self, samples=None) -> dict:
        """Additivity X(t)X(u) = X(t+u) and collapse consistency."""
        from .present import params_for
        from .words import S, X, mul

        R = self.R
        P = params_for(R)
        ts = samples if samples is not None else list(P.t)[:4]
        us = samples if samples is not None else list(P.u)[:4]
        add_ok, coll_ok = True, True
        for i in range(self.A.rank):
            for t, u in itertools.product(ts, us):
                add_ok &= self.is_identity(mul(X(i, t), X(i, u), X(i, R.add(t, u), -1)))
            one = R.one()
            w = mul(X(i, one), S(i), X(i, one), S(i, -1), X(i, one), S(i, -1))
            coll_ok &= self.is_identity(w)
        return {"additivity": bool(add_ok), "collapse": bool(coll_ok)}


_DEFINING = {"A1": 2, "A1xA1": 4, "A2": 3, "B2": 4, "G2": 7}


def defining_type(A: GCM) -> str | None:
    types = [str(t) for _, t in classify_components(A)]
    if types == ["A1"]:
        return "A1"
    if types == ["A1", "A1"]:
        return "A1xA1"
    if len(types) == 1 and types[0] in ("A2", "B2", "G2"):
        return types[0]
    return None


def build_rep(A: GCM, R: Ring, kind: str = "defining") -> RepSpec:
    if kind == "defining":
        t = defining_type(A)
        if t is None:
            raise NotSupported(f"no defining representation for {A}")
        if t in ("B2", "G2"):
            lam = tuple(int(k == short_node(A, 0, 1)) for k in range(2))
        else:
            lam = (1,) * A.rank if t == "A1xA1" else tuple(int(k == 0) for k in range(A.rank))
        mod = highest_weight_module(A, lam)
        assert mod.dim == _DEFINING[t]
        return RepSpec(A, R, kind, mod.dim, list(mod.E), [-F for F in mod.F])
    if kind == "adjoint":
        L = build_algebra(A)
        e = [L.ad[L.simple_e(i)] for i in range(A.rank)]
        f = [L.ad[L.simple_f(i)] for i in range(A.rank)]
        return RepSpec(A, R, kind, L.dim, e, f)
    raise NotSupported(f"unknown representation kind {kind!r}")


def module_rep(A: GCM, R: Ring, lam) -> RepSpec:
    """Representation on the irreducible module with highest weight lam."""
    mod = highest_weight_module(A, lam)
    return RepSpec(A, R, f"highest{tuple(lam)}", mod.dim, list(mod.E), [-F for F in mod.F])


def image_order(rep: RepSpec, words, cap: int = 2_000_000) -> int:
    """Order of the matrix group generated by the images of the given words."""
    if not isinstance(rep.backend, FiniteBackend):
        raise NotSupported("image orders need a finite ring")
    return matrix_closure([rep.eval_word(w) for w in words], rep.backend.mod, cap=cap, keep=False).order


# ---------------------------------------------------------------------------
# relator checking


@dataclass
class CheckReport:
    total: int
    failures: list  # (relator index, relator, matrix as nested list)
    per_batch: dict

    @property
    def ok(self) -> bool:
        return not self.failures


def check_presentation(rep: RepSpec, P: PresentationDoc, words=None) -> CheckReport:
    """Evaluate every relator (or the given words); pass means identity."""
    rels = P.relators
    targets = words if words is not None else [r.word for r in rels]
    I = rep.backend.identity()
    failures = []
    per_batch: dict = {}
    for k, (r, w) in enumerate(zip(rels, targets)):
        m = rep.eval_word(w)
        good = rep.backend.equal(m, I)
        b = per_batch.setdefault(r.batch, [0, 0])
        b[0] += 1
        if not good:
            b[1] += 1
            failures.append((k, r, rep.backend.to_list(m)))
    return CheckReport(len(rels), failures, per_batch)


# ---------------------------------------------------------------------------
# diagram endomorphisms


def _endo_setup(A: GCM, kind: str) -> tuple[int, int, int]:
    want = {"B2char2": (4, 2), "G2char3": (6, 3)}
    if kind not in want:
        raise WrongDiagram(f"unknown endomorphism {kind!r}")
    m, p = want[kind]
    if A.rank != 2 or edge_label(A, 0, 1) != m:
        raise WrongDiagram(f"{kind} needs a diagram with one m = {m} edge")
    s = short_node(A, 0, 1)
    return s, 1 - s, p


def diagram_endo_images(A: GCM, R: Ring, kind: str):
    """Generator substitution: S_s <-> S_l, X_s(t) -> X_l(t^p), X_l(t) -> X_s(t)."""
    s, l, p = _endo_setup(A, kind)
    if R.characteristic != p:
        raise WrongCharacteristic(f"{kind} needs characteristic {p}")

    def img(g: Gen) -> Word:
        if g.kind == "S":
            return ((Gen("S", l if g.node == s else s), 1),)
        if g.node == s:
            return ((Gen("X", l, R.pow(g.t, p)), 1),)
        return ((Gen("X", s, g.t), 1),)

    return img


def apply_diagram_endo(word: Word, A: GCM, R: Ring, kind: str) -> Word:
    return substitute(word, diagram_endo_images(A, R, kind))


def frobenius_images(R: Ring, p: int):
    def img(g: Gen) -> Word:
        return ((g if g.kind == "S" else Gen("X", g.node, R.pow(g.t, p)), 1),)

    return img


def sqrt_images(R: Ring):
    def img(g: Gen) -> Word:
        return ((g if g.kind == "S" else Gen("X", g.node, frobenius_sqrt(R, g.t)), 1),)

    return img


@dataclass
class EndoReport:
    relators: int
    relator_failures: int
    frobenius: bool
    inverse: bool | None

    @property
    def ok(self) -> bool:
        return self.relator_failures == 0 and self.frobenius and self.inverse is not False


def check_endomorphism(A: GCM, R: Ring, kind: str, rep: RepSpec | None = None) -> EndoReport:
    img = diagram_endo_images(A, R, kind)
    _, _, p = _endo_setup(A, kind)
    P = emit_presentation(A, R)
    rep = rep or build_rep(A, R, "defining")
    images = [substitute(r.word, img) for r in P.relators]
    rep_report = check_presentation(rep, P, images)
    frob = frobenius_images(R, p)
    frob_ok = all(substitute(substitute(((g, 1),), img), img) == frob(g) for g in P.generators)
    inverse = None
    if isinstance(R, GaloisField):
        psi = sqrt_images(R)
        inverse = all(substitute(substitute(substitute(((g, 1),), img), img), psi) == ((g, 1),) for g in P.generators)
    return EndoReport(len(P.relators), len(rep_report.failures), frob_ok, inverse)


# ---------------------------------------------------------------------------
# unipotent generation


def named_roots(A: GCM) -> dict:
    """Root names: s, l, s', l' on rank-2 diagrams with an m = 4 or 6 edge,
    a<k> for simple roots, and b<k>, g<i><j> for the rank-3 generating set."""
    n = A.rank
    out = {}
    for k in range(n):
        v = tuple(int(x == k) for x in range(n))
        out[f"a{A.nodes[k]}"] = v
        out[f"b{A.nodes[k]}"] = v
    for i, j in itertools.permutations(range(n), 2):
        out[f"g{A.nodes[i]}{A.nodes[j]}"] = reflect_root(A, i, tuple(int(x == j) for x in range(n)))
    if n == 2 and edge_label(A, 0, 1) in (4, 6):
        s = short_node(A, 0, 1)
        l = 1 - s
        a_s = tuple(int(x == s) for x in range(2))
        a_l = tuple(int(x == l) for x in range(2))
        out.update({"s": a_s, "l": a_l, "s'": reflect_root(A, l, a_s), "l'": reflect_root(A, s, a_l)})
    return out


def rank3_generating_roots(A: GCM) -> list[tuple]:
    """The simple roots and all s_i(beta_j), i != j."""
    n = A.rank
    out = [tuple(int(x == k) for x in range(n)) for k in range(n)]
    for i, j in itertools.permutations(range(n), 2):
        r = reflect_root(A, i, out[j])
        if r not in out:
            out.append(r)
    return out


@dataclass
class GenerationIndex:
    order: int
    full: int

    @property
    def index(self) -> int:
        return self.full // self.order


def unipotent_generation_index(A: GCM, F: Ring, roots, cap: int = 2_000_000) -> GenerationIndex:
    if not isinstance(F, GaloisField):
        raise NotAField(f"{F.name} is not a field")
    L = build_algebra(A)
    npos = len(enumerate_roots(A).positive())
    B = FiniteBackend(F, L.dim)
    gens = []
    for g in roots:
        g = tuple(g)
        powers = divided_powers(L.ad[L.e(g)])
        for t in additive_generators(F):
            gens.append(B.from_powers(powers, t))
    closure = matrix_closure(gens, B.mod, cap=cap)
    full = F.order ** npos
    if full % closure.order:
        raise AssertionError("closure order does not divide |U|")
    return GenerationIndex(closure.order, full)
