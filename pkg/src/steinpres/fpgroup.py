"""Free reduction, Todd-Coxeter coset enumeration and matrix-group closure."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .words import reduce  # noqa: F401  (re-exported)


class Capped(RuntimeError):
    pass


class CapExceeded(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# abstract presentations


@dataclass
class FPPresentation:
    """Generators are arbitrary hashable symbols; relators are words of
    (symbol, +-1)."""

    generators: list
    relators: list
    subgroup: list = field(default_factory=list)

    @classmethod
    def from_doc(cls, P, subgroup=()) -> "FPPresentation":
        return cls(list(P.generators), [r.word for r in P.relators], list(subgroup))

    @classmethod
    def from_strings(cls, gens: str, rels: list[str]) -> "FPPresentation":
        """Letters name generators; capitals are inverses: ("ab", ["aaa", "abAB"])."""
        word = lambda s: tuple((c.lower(), -1 if c.isupper() else 1) for c in s)  # noqa: E731
        return cls(list(gens), [word(r) for r in rels])


def _cyclic_reduce(w: tuple) -> tuple:
    w = reduce(w)
    while len(w) >= 2 and w[0][0] == w[-1][0] and w[0][1] == -w[-1][1]:
        w = w[1:-1]
    return w


def simplify(fp: FPPresentation) -> FPPresentation:
    """Cyclically reduce, drop empty relators and duplicates, and eliminate
    generators that some relator of length 1 declares trivial."""
    gens = list(fp.generators)
    rels = [_cyclic_reduce(w) for w in fp.relators]
    sub = list(fp.subgroup)
    changed = True
    while changed:
        changed = False
        trivial = {w[0][0] for w in rels if len(w) == 1}
        if trivial:
            changed = True
            gens = [g for g in gens if g not in trivial]
            rels = [_cyclic_reduce(tuple(x for x in w if x[0] not in trivial)) for w in rels]
            sub = [reduce(tuple(x for x in w if x[0] not in trivial)) for w in sub]
        rels = [w for w in rels if w]
    seen, out = set(), []
    for w in rels:
        if w not in seen and _invert(w) not in seen:
            seen.add(w)
            out.append(w)
    return FPPresentation(gens, out, sub)


def _invert(w):
    return tuple((g, -e) for g, e in reversed(w))


# ---------------------------------------------------------------------------
# coset enumeration


@dataclass
class CosetTable:
    status: str  # "complete" or "capped"
    index: int | None
    cosets_defined: int
    max_live: int
    table: list | None = field(default=None, repr=False)


class _Enumerator:
    def __init__(self, ngens: int, rels: list[list[int]], sub: list[list[int]], cap: int):
        self.nc = 2 * ngens
        self.rels = rels
        self.sub = sub
        self.cap = cap
        self.tab: list[list[int]] = [[-1] * self.nc]
        self.p = [0]
        self.live = 1
        self.defined = 1
        self.max_live = 1
        self.queue: list[int] = []

    def find(self, c: int) -> int:
        p = self.p
        r = c
        while p[r] != r:
            r = p[r]
        while p[c] != r:
            p[c], c = r, p[c]
        return r

    def new(self, c: int, x: int) -> int:
        if self.live >= self.cap:
            raise Capped
        d = len(self.tab)
        self.tab.append([-1] * self.nc)
        self.p.append(d)
        self.tab[c][x] = d
        self.tab[d][x ^ 1] = c
        self.live += 1
        self.defined += 1
        if self.live > self.max_live:
            self.max_live = self.live
        return d

    def _merge(self, a: int, b: int):
        a, b = self.find(a), self.find(b)
        if a == b:
            return
        if a > b:
            a, b = b, a
        self.p[b] = a
        self.live -= 1
        self.queue.append(b)

    def coincidence(self, a: int, b: int):
        tab, nc = self.tab, self.nc
        self.queue = []
        self._merge(a, b)
        i = 0
        while i < len(self.queue):
            e = self.queue[i]
            i += 1
            row = tab[e]
            for x in range(nc):
                f = row[x]
                if f < 0:
                    continue
                xi = x ^ 1
                if tab[f][xi] == e:
                    tab[f][xi] = -1
                e1, f1 = self.find(e), self.find(f)
                if tab[e1][x] >= 0:
                    self._merge(f1, tab[e1][x])
                elif tab[f1][xi] >= 0:
                    self._merge(e1, tab[f1][xi])
                else:
                    tab[e1][x] = f1
                    tab[f1][xi] = e1
        self.queue = []

    def scan(self, c: int, rel: list[int], fill: bool) -> None:
        tab = self.tab
        f, i = c, 0
        b, j = c, len(rel) - 1
        while True:
            while i <= j:
                nxt = tab[f][rel[i]]
                if nxt < 0:
                    break
                f, i = nxt, i + 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i:
                nxt = tab[b][rel[j] ^ 1]
                if nxt < 0:
                    break
                b, j = nxt, j - 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                tab[f][rel[i]] = b
                tab[b][rel[i] ^ 1] = f
                return
            if not fill:
                return
            self.new(f, rel[i])

    def alive(self, c: int) -> bool:
        return self.p[c] == c

    def lookahead(self):
        c = 0
        while c < len(self.tab):
            if self.alive(c):
                for r in self.rels:
                    self.scan(c, r, False)
                    if not self.alive(c):
                        break
            c += 1

    def compact(self) -> dict:
        """Renumber live cosets consecutively; returns old -> new."""
        ren, k = {}, 0
        for c in range(len(self.tab)):
            if self.p[c] == c:
                ren[c] = k
                k += 1
        tab = []
        for c in range(len(self.tab)):
            if c in ren:
                tab.append([ren[x] if x >= 0 else -1 for x in self.tab[c]])
        self.tab = tab
        self.p = list(range(k))
        return ren

    def run(self) -> CosetTable:
        try:
            for w in self.sub:
                self.scan(0, w, True)
            c = 0
            while c < len(self.tab):
                if self.alive(c):
                    try:
                        for r in self.rels:
                            self.scan(c, r, True)
                            if not self.alive(c):
                                break
                        if self.alive(c):
                            row = self.tab[c]
                            for x in range(self.nc):
                                if row[x] < 0:
                                    self.new(c, x)
                    except Capped:
                        self.lookahead()
                        if self.live >= self.cap:
                            raise
                        ren = self.compact()
                        c = min((ren[k] for k in ren if k >= c), default=len(self.tab))
                        continue
                c += 1
        except Capped:
            return CosetTable("capped", None, self.defined, self.max_live)
        self.compact()
        return CosetTable("complete", len(self.tab), self.defined, self.max_live, self.tab)


def todd_coxeter(fp, subgroup=(), max_cosets: int = 2_000_000, simplify_first: bool = True) -> CosetTable:
    """Index of the subgroup generated by `subgroup` (words); with no subgroup,
    the group order.  Accepts an FPPresentation or a PresentationDoc."""
    if not isinstance(fp, FPPresentation):
        fp = FPPresentation.from_doc(fp, subgroup)
    elif subgroup:
        fp = FPPresentation(fp.generators, fp.relators, list(subgroup))
    if simplify_first:
        fp = simplify(fp)
    col = {g: 2 * k for k, g in enumerate(fp.generators)}

    def cols(w):
        return [col[g] ^ (0 if e == 1 else 1) for g, e in w]

    rels = [cols(w) for w in fp.relators]
    # shorter relators first: they close cosets sooner
    order = sorted(range(len(rels)), key=lambda k: len(rels[k]))
    rels = [rels[k] for k in order]
    sub = [cols(w) for w in fp.subgroup if w]
    return _Enumerator(len(fp.generators), rels, sub, max_cosets).run()


# ---------------------------------------------------------------------------
# matrix closure


@dataclass
class Closure:
    order: int
    elements: dict | None
    mod: int

    def contains(self, m: np.ndarray) -> bool:
        if self.elements is None:
            raise ValueError("elements were not kept")
        return (np.asarray(m) % self.mod).astype(np.int64).tobytes() in self.elements


def matrix_closure(gens: list[np.ndarray], mod: int, cap: int = 2_000_000, keep: bool = True) -> Closure:
    """BFS closure of the group generated by invertible matrices mod `mod`."""
    gens = [(np.asarray(g) % mod).astype(np.int64) for g in gens]
    n = gens[0].shape[0] if gens else 1
    ident = np.eye(n, dtype=np.int64)
    seen = {ident.tobytes(): None}
    frontier = [ident]
    while frontier:
        nxt = []
        for m in frontier:
            for g in gens:
                h = (m @ g) % mod
                key = h.tobytes()
                if key not in seen:
                    seen[key] = None
                    nxt.append(h)
                    if len(seen) > cap:
                        raise CapExceeded(f"closure exceeds {cap} elements")
        frontier = nxt
    return Closure(len(seen), seen if keep else None, mod)
