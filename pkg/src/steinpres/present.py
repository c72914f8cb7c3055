"""Presentations of pre-Steinberg groups: relator batches 0-4, the
Kac-Moody quotient batch, the simply-laced table, pruning and export."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field, replace

from .cartan import GCM, INF, edge_label, short_node
from .ring import InfiniteRing, LaurentRing, Ring
from .words import (
    Gen,
    S,
    Sw,
    Word,
    X,
    commutator,
    conj,
    fmt_word,
    h_tilde,
    inverse,
    mul,
    nodes_of,
    reduce,
)


class UnsupportedEdge(ValueError):
    pass


@dataclass(frozen=True)
class Relator:
    batch: object  # 0..4 or "km"
    family: str
    nodes: tuple[int, ...]
    params: tuple  # ((name, value), ...)
    word: Word


@dataclass
class PresentationDoc:
    A: GCM
    R: Ring
    generators: list[Gen]
    relators: list[Relator]
    options: dict = field(default_factory=dict)

    def batch(self, b) -> list[Relator]:
        return [r for r in self.relators if r.batch == b]

    def counts(self) -> dict:
        out: dict = {}
        for r in self.relators:
            out[r.batch] = out.get(r.batch, 0) + 1
        return out


# ---------------------------------------------------------------------------
# parameter sources


@dataclass(frozen=True)
class Params:
    """Values substituted for t, u (any ring element) and r (units).
    Symbolic rings supply one generic value for each."""

    R: Ring
    symbolic: bool
    t: tuple
    u: tuple
    r: tuple


def params_for(R: Ring) -> Params:
    if isinstance(R, LaurentRing):
        if len(R.poly_vars) < 2 or len(R.unit_vars) < 1:
            raise InfiniteRing("symbolic emission needs one unit variable and two polynomial variables")
        t, u = R.var(R.poly_vars[0]), R.var(R.poly_vars[1])
        r = R.var(R.unit_vars[0])
        return Params(R, True, (t,), (u,), (r,))
    if not R.is_finite:
        raise InfiniteRing(f"{R.name} is infinite")
    els = tuple(R.elements())
    return Params(R, False, els, els, tuple(R.units()))


def _rel(batch, family, word, params=(), nodes=None) -> Relator:
    word = reduce(word)
    return Relator(batch, family, tuple(sorted(nodes)) if nodes is not None else nodes_of(word), tuple(params), word)


def _eq(lhs: Word, rhs: Word) -> Word:
    """Relator for lhs = rhs."""
    return mul(lhs, inverse(rhs))


def _alt(i: int, j: int, m: int) -> Word:
    return Sw(*[i if k % 2 == 0 else j for k in range(m)])


def _S2(i: int, e: int = 1) -> Word:
    return S(i, e) + S(i, e)


# ---------------------------------------------------------------------------
# batch 0


def what_relators(A: GCM) -> list[Relator]:
    out = []
    n = A.rank
    for i, j in itertools.combinations(range(n), 2):
        m = edge_label(A, i, j)
        if m != INF:
            out.append(_rel(0, "artin", _eq(_alt(i, j, m), _alt(j, i, m)), nodes=(i, j)))
    for i, j in itertools.permutations(range(n), 2):
        eps = 1 if A.a(i, j) % 2 == 0 else -1
        out.append(_rel(0, "square_conj", mul(conj(_S2(i), S(j)), S(j, -eps)), nodes=(i, j)))
    return out


# ---------------------------------------------------------------------------
# batch 1


def additivity_relators(A: GCM, R: Ring, sparse: bool = False) -> list[Relator]:
    P = params_for(R)
    out = []
    if sparse and not P.symbolic:
        pairs = [(t, g) for t in P.t for g in additive_generators(R)]
    else:
        pairs = [(t, u) for t in P.t for u in P.u]
    for i in range(A.rank):
        for t, u in pairs:
            w = mul(X(i, t), X(i, u), X(i, R.add(t, u), -1))
            out.append(_rel(1, "additivity", w, (("t", t), ("u", u)), nodes=(i,)))
    return out


def additive_generators(R: Ring) -> list:
    """A small generating set of (R, +), greedily chosen."""
    from .ring import _additive_span

    gens, span = [], {R.zero()}
    for a in R.elements():
        if a not in span:
            gens.append(a)
            span = _additive_span(R, gens)
    return gens


# ---------------------------------------------------------------------------
# batch 2


def _middle(i: int, j: int, m: int) -> Word:
    """S_j, S_j S_i S_j, S_j S_i S_j S_i S_j for m = 2, 4, 6."""
    return _alt(j, i, m - 1)


def batch2_relators(A: GCM, R: Ring) -> list[Relator]:
    P = params_for(R)
    n = A.rank
    out = []
    for i, j in itertools.product(range(n), repeat=2):
        sign = R.one() if A.a(i, j) % 2 == 0 else R.neg(R.one())
        for t in P.t:
            w = mul(conj(_S2(i), X(j, t)), X(j, R.mul(sign, t), -1))
            out.append(_rel(2, "B", w, (("t", t),), nodes=(i, j)))
    for i, j in itertools.permutations(range(n), 2):
        m = edge_label(A, i, j)
        for t in P.t:
            if m == 3:
                w = _eq(mul(X(i, t), Sw(j, i)), mul(Sw(j, i), X(j, t)))
                out.append(_rel(2, "C", w, (("t", t),), nodes=(i, j)))
            elif m in (2, 4, 6):
                w = commutator(_middle(i, j, m), X(i, t))
                out.append(_rel(2, "D", w, (("t", t),), nodes=(i, j)))
    return out


# ---------------------------------------------------------------------------
# batch 3


def _cx(w: tuple, i: int, t) -> Word:
    """Conjugate of X_i(t) by the S-word on nodes w."""
    return conj(Sw(*w), X(i, t))


def chevalley_relators(A: GCM, R: Ring, i: int, j: int) -> list[Relator]:
    """Batch-3 relators of the edge {i, j}."""
    P = params_for(R)
    m = edge_label(A, i, j)
    out = []
    tu = [(t, u) for t in P.t for u in P.u]

    def add(family, w, t, u):
        out.append(_rel(3, family, w, (("t", t), ("u", u)), nodes=(i, j)))

    if m == 2:
        a, b = min(i, j), max(i, j)
        for t, u in tu:
            add("m2", commutator(X(a, t), X(b, u)), t, u)
    elif m == 3:
        for a, b in ((i, j), (j, i)):
            for t, u in tu:
                add(f"m3.commutator[{a},{b}]", _eq(commutator(X(a, t), X(b, u)), _cx((a,), b, R.mul(t, u))), t, u)
            for t, u in tu:
                add(f"m3.commute[{a},{b}]", commutator(X(a, t), _cx((a,), b, u)), t, u)
    elif m == 4:
        s = short_node(A, i, j)
        l = j if s == i else i
        M = R.mul
        for t, u in tu:
            add("b2.a", commutator(_cx((s,), l, t), _cx((l,), s, u)), t, u)
        for t, u in tu:
            add("b2.b", commutator(X(l, t), _cx((s,), l, u)), t, u)
        for t, u in tu:
            add("b2.c", _eq(commutator(X(s, t), _cx((l,), s, u)), _cx((s,), l, M(R.from_int(-2), M(t, u)))), t, u)
        for t, u in tu:
            rhs = mul(_cx((l,), s, R.neg(M(t, u))), _cx((s,), l, M(M(t, t), u)))
            add("b2.d", _eq(commutator(X(s, t), X(l, u)), rhs), t, u)
    elif m == 6:
        s = short_node(A, i, j)
        l = j if s == i else i
        M = R.mul

        def c(k):
            return R.from_int(k)

        for t, u in tu:
            add("g2.1", commutator(X(l, t), _cx((l, s), l, u)), t, u)
        for t, u in tu:
            add("g2.2", commutator(_cx((s, l), s, t), _cx((l, s), l, u)), t, u)
        for t, u in tu:
            add("g2.3", commutator(_cx((s,), l, t), _cx((l,), s, u)), t, u)
        for t, u in tu:
            add("g2.4", _eq(commutator(X(l, t), _cx((s,), l, u)), _cx((l, s), l, M(t, u))), t, u)
        for t, u in tu:
            add("g2.5", _eq(commutator(X(s, t), _cx((s, l), s, u)), _cx((s,), l, M(c(3), M(t, u)))), t, u)
        for t, u in tu:
            rhs = mul(
                _cx((s, l), s, M(c(-2), M(t, u))),
                _cx((s,), l, M(c(-3), M(M(t, t), u))),
                _cx((l, s), l, M(c(-3), M(t, M(u, u)))),
            )
            add("g2.6", _eq(commutator(X(s, t), _cx((l,), s, u)), rhs), t, u)
        for t, u in tu:
            t2, t3 = M(t, t), M(t, M(t, t))
            rhs = mul(
                _cx((s, l), s, M(t2, u)),
                _cx((l,), s, R.neg(M(t, u))),
                _cx((s,), l, M(t3, u)),
                _cx((l, s), l, R.neg(M(t3, M(u, u)))),
            )
            add("g2.7", _eq(commutator(X(s, t), X(l, u)), rhs), t, u)
    elif m == INF:
        raise UnsupportedEdge(f"edge {{{i},{j}}} has m = infinity")
    else:
        raise UnsupportedEdge(f"edge {{{i},{j}}} has m = {m}")
    return out


def batch3_relators(A: GCM, R: Ring) -> list[Relator]:
    out = []
    for i, j in itertools.combinations(range(A.rank), 2):
        if edge_label(A, i, j) != INF:
            out.extend(chevalley_relators(A, R, i, j))
    return out


# ---------------------------------------------------------------------------
# batch 4 and the Kac-Moody batch


def batch4_relators(A: GCM, R: Ring) -> list[Relator]:
    P = params_for(R)
    n = A.rank
    out = []
    for i, j in itertools.product(range(n), repeat=2):
        a = A.a(i, j)
        for r in P.r:
            h = h_tilde(R, i, r)
            for t in P.t:
                w = mul(conj(h, X(j, t)), X(j, R.mul(R.pow(r, a), t), -1))
                out.append(_rel(4, "torus_pos", w, (("r", r), ("t", t)), nodes=(i, j)))
            for t in P.t:
                lhs = conj(h, _cx((j,), j, t))
                rhs = _cx((j,), j, R.mul(R.pow(r, -a), t))
                out.append(_rel(4, "torus_neg", _eq(lhs, rhs), (("r", r), ("t", t)), nodes=(i, j)))
    for i in range(n):
        one = R.one()
        w = _eq(S(i), mul(X(i, one), S(i), X(i, one), S(i, -1), X(i, one)))
        out.append(_rel(4, "collapse", w, nodes=(i,)))
    return out


def kac_moody_relators(A: GCM, R: Ring) -> list[Relator]:
    P = params_for(R)
    out = []
    if P.symbolic:
        if len(R.unit_vars) < 2:
            raise InfiniteRing("symbolic Kac-Moody relators need two unit variables")
        pairs = [(R.var(R.unit_vars[0]), R.var(R.unit_vars[1]))]
    else:
        pairs = [(u, v) for u in P.r for v in P.r]
    for i in range(A.rank):
        for u, v in pairs:
            w = mul(h_tilde(R, i, R.mul(u, v)), inverse(h_tilde(R, i, u)), inverse(h_tilde(R, i, v)))
            out.append(_rel("km", "P", w, (("u", u), ("v", v)), nodes=(i,)))
    return out


# ---------------------------------------------------------------------------
# simply-laced table


def table1_relators(A: GCM, R: Ring) -> list[Relator]:
    """The twelve relation schemas for simply-laced A without A1 components."""
    P = params_for(R)
    n = A.rank
    for i in range(n):
        for j in range(n):
            if i != j and edge_label(A, i, j) not in (2, 3):
                raise UnsupportedEdge("table relators need a simply-laced diagram")
    out = additivity_relators(A, R)
    for i in range(n):
        for t in P.t:
            out.append(_rel(2, "t.square_x", commutator(_S2(i), X(i, t)), (("t", t),), nodes=(i,)))
        one = R.one()
        w = _eq(S(i), mul(X(i, one), S(i), X(i, one), S(i, -1), X(i, one)))
        out.append(_rel(4, "collapse", w, nodes=(i,)))
    for i, j in itertools.permutations(range(n), 2):
        m = edge_label(A, i, j)
        if m == 2:
            if i < j:
                out.append(_rel(0, "t.s_commute", commutator(S(i), S(j)), nodes=(i, j)))
            for t in P.t:
                out.append(_rel(2, "t.s_x", commutator(S(i), X(j, t)), (("t", t),), nodes=(i, j)))
            if i < j:
                for t in P.t:
                    for u in P.u:
                        out.append(_rel(3, "t.x_x", commutator(X(i, t), X(j, u)), (("t", t), ("u", u)), nodes=(i, j)))
        else:
            if i < j:
                out.append(_rel(0, "t.artin", _eq(Sw(i, j, i), Sw(j, i, j)), nodes=(i, j)))
            out.append(_rel(0, "t.square_s", _eq(conj(_S2(i), S(j)), S(j, -1)), nodes=(i, j)))
            for t in P.t:
                out.append(_rel(2, "t.transport", _eq(mul(X(i, t), Sw(j, i)), mul(Sw(j, i), X(j, t))), (("t", t),), nodes=(i, j)))
            for t in P.t:
                out.append(_rel(2, "t.square_x_inv", _eq(conj(_S2(i), X(j, t)), X(j, t, -1)), (("t", t),), nodes=(i, j)))
            for t in P.t:
                for u in P.u:
                    out.append(_rel(3, "t.commute", commutator(X(i, t), _cx((i,), j, u)), (("t", t), ("u", u)), nodes=(i, j)))
            for t in P.t:
                for u in P.u:
                    w = _eq(commutator(X(i, t), X(j, u)), _cx((i,), j, R.mul(t, u)))
                    out.append(_rel(3, "t.commutator", w, (("t", t), ("u", u)), nodes=(i, j)))
    return out


# ---------------------------------------------------------------------------
# pruning


def _components_of(items: list, linked) -> list[list]:
    parent = {x: x for x in items}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in itertools.combinations(items, 2):
        if linked(a, b) or linked(b, a):
            parent[find(a)] = find(b)
    groups: dict = {}
    for x in items:
        groups.setdefault(find(x), []).append(x)
    return sorted(groups.values())


def pruning_plan(A: GCM) -> dict:
    """Which batch-3 families to keep.

    m = 2 pairs {i,j} and {i,k} are linked when j, k are joined by an m = 3
    edge and neither is joined to i (an A1 x A2 configuration).  Ordered
    m = 3 pairs (i,j) and (j,k) are linked inside an A3 configuration.
    Linked classes are connected components; the first member of each
    class (in node order) is kept.
    """
    n = A.rank

    def m(a, b):
        return edge_label(A, a, b)

    pairs2 = [(i, j) for i, j in itertools.combinations(range(n), 2) if m(i, j) == 2]

    def link2(p, q):
        common = set(p) & set(q)
        if len(common) != 1 or p == q:
            return False
        (c,) = common
        x = p[0] if p[1] == c else p[1]
        y = q[0] if q[1] == c else q[1]
        return m(x, y) == 3

    pairs3 = [(i, j) for i, j in itertools.permutations(range(n), 2) if m(i, j) == 3]

    def link3(p, q):
        i, j = p
        j2, k = q
        return j == j2 and i != k and m(i, k) == 2

    keep2 = [c[0] for c in _components_of(pairs2, link2)]
    keep3 = [c[0] for c in _components_of(pairs3, link3)]
    return {"m2": sorted(keep2), "m3": sorted(keep3), "m2_all": pairs2, "m3_all": pairs3}


def prune(P: PresentationDoc) -> PresentationDoc:
    plan = pruning_plan(P.A)
    keep2, keep3 = set(plan["m2"]), set(plan["m3"])
    out = []
    for r in P.relators:
        if r.batch == 3 and r.family == "m2" and r.nodes not in keep2:
            continue
        if r.batch == 3 and r.family.startswith("m3."):
            a, b = (int(x) for x in r.family[r.family.index("[") + 1:-1].split(","))
            if (a, b) not in keep3:
                continue
        out.append(r)
    return replace(P, relators=out, options={**P.options, "prune": True})


# ---------------------------------------------------------------------------
# full presentation


def emit_presentation(A: GCM, R: Ring, prune_: bool = False, kac_moody: bool = False,
                      sparse: bool = False, table: bool = False) -> PresentationDoc:
    if table:
        rels = table1_relators(A, R)
    else:
        rels = what_relators(A) + additivity_relators(A, R, sparse) + batch2_relators(A, R)
        rels += batch3_relators(A, R) + batch4_relators(A, R)
    if kac_moody:
        rels += kac_moody_relators(A, R)
    P = params_for(R)
    if P.symbolic:
        gens = sorted({g for r in rels for g, _ in r.word}, key=lambda g: _gen_key(R, g))
    else:
        gens = [Gen("S", i) for i in range(A.rank)]
        gens += [Gen("X", i, t) for i in range(A.rank) for t in P.t]
    doc = PresentationDoc(A, R, gens, rels, {"prune": False, "kac_moody": kac_moody, "sparse": sparse, "table": table})
    return prune(doc) if prune_ else doc


def _gen_key(R: Ring, g: Gen):
    return (g.kind != "S", g.node, R.fmt(g.t) if g.t is not None else "")


# ---------------------------------------------------------------------------
# export


def _param_text(R: Ring, params) -> dict:
    return {k: R.fmt(v) for k, v in params}


def export(P: PresentationDoc, fmt: str = "json") -> str:
    R, A = P.R, P.A
    if fmt == "json":
        doc = {
            "diagram": {"name": A.name, "nodes": list(A.nodes), "cartan": [list(r) for r in A.entries]},
            "ring": R.name,
            "generators": [g.name(R, A) for g in P.generators],
            "relators": [
                {
                    "batch": r.batch,
                    "family": r.family,
                    "nodes": [A.nodes[k] for k in r.nodes],
                    "params": _param_text(R, r.params),
                    "word": [[g.name(R, A), e] for g, e in r.word],
                }
                for r in P.relators
            ],
        }
        return json.dumps(doc, indent=1)
    if fmt == "gap":
        index = {g: k + 1 for k, g in enumerate(P.generators)}
        lines = [f"# presentation of PSt over {R.name} for diagram {A.name}"]
        for g, k in index.items():
            lines.append(f"# F.{k} = {g.name(R, A)}")
        lines.append(f"F := FreeGroup({len(index)});")
        body = []
        for r in P.relators:
            if not r.word:
                body.append("One(F)")
                continue
            body.append("*".join(f"F.{index[g]}" if e == 1 else f"F.{index[g]}^-1" for g, e in r.word))
        lines.append("rels := [\n  " + ",\n  ".join(body) + "\n];")
        lines.append("G := F / rels;")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown export format {fmt!r}")


def describe(P: PresentationDoc, limit: int | None = None) -> str:
    lines = []
    for r in P.relators[:limit]:
        lines.append(f"[{r.batch}] {r.family} {_param_text(P.R, r.params)}: {fmt_word(r.word, P.R, P.A)}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# local structure


def relator_nodes_ok(P: PresentationDoc) -> bool:
    """Every relator mentions at most two distinct nodes."""
    return all(len(nodes_of(r.word)) <= 2 for r in P.relators)


def _relabel(word: Word, idx) -> Word:
    return tuple((Gen(g.kind, idx[g.node], g.t), e) for g, e in word)


def curtis_tits_union(A: GCM, R: Ring, **opts) -> tuple[bool, bool]:
    """(locality, equality): every relator uses <= 2 nodes, and the relator
    set equals the union of the emissions for all 1- and 2-node subdiagrams."""
    full = emit_presentation(A, R, **opts)
    union = set()
    subsets = [(i,) for i in range(A.rank)] + list(itertools.combinations(range(A.rank), 2))
    for idx in subsets:
        sub = emit_presentation(A.sub(list(idx)), R, **opts)
        union |= {_relabel(r.word, idx) for r in sub.relators}
    return relator_nodes_ok(full), {r.word for r in full.relators} == union
