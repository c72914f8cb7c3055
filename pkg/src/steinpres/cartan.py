"""Generalized Cartan matrices, Dynkin diagram edge labels, and the
spherical (ABCDEFG) catalog.

Conventions: ``A[i][j] = <alpha_i^vee, alpha_j>``.  In an m = 4 or m = 6 edge
the short node is the one whose row carries the -2 or -3.  Named types:

* ``B2``: node 1 short, ``[[2,-2],[-1,2]]``
* ``G2``: node 1 short, ``[[2,-3],[-1,2]]``
* ``Bn`` (n >= 3): chain with node n short
* ``Cn`` (n >= 3): chain with node n long
* ``F4``: nodes 1, 2 long and 3, 4 short
* ``X~``: untwisted affine extension; the extra node is named ``0`` and
  comes first.
"""

from __future__ import annotations

import ast
import itertools
import re
from dataclasses import dataclass, field

INF = 0  # edge label for m_ij = infinity


class MalformedSpec(ValueError):
    pass


class NotAGCM(ValueError):
    pass


@dataclass(frozen=True)
class GCM:
    """Generalized Cartan matrix with named nodes."""

    nodes: tuple[str, ...]
    entries: tuple[tuple[int, ...], ...]
    name: str = ""

    def __post_init__(self):
        n = len(self.nodes)
        if n == 0:
            raise NotAGCM("empty matrix")
        if len(set(self.nodes)) != n:
            raise NotAGCM("duplicate node names")
        if len(self.entries) != n or any(len(r) != n for r in self.entries):
            raise NotAGCM("matrix must be square and match the node list")
        for i in range(n):
            if self.entries[i][i] != 2:
                raise NotAGCM(f"A[{i + 1}][{i + 1}] = {self.entries[i][i]}, expected 2")
            for j in range(n):
                if i == j:
                    continue
                a, b = self.entries[i][j], self.entries[j][i]
                if a > 0:
                    raise NotAGCM(f"A[{i + 1}][{j + 1}] = {a} is positive")
                if (a == 0) != (b == 0):
                    raise NotAGCM(f"A[{i + 1}][{j + 1}] = {a} but A[{j + 1}][{i + 1}] = {b}")

    @property
    def rank(self) -> int:
        return len(self.nodes)

    def index(self, node) -> int:
        if isinstance(node, int) and node not in range(self.rank):
            raise KeyError(node)
        if isinstance(node, int):
            return node
        return self.nodes.index(str(node))

    def a(self, i: int, j: int) -> int:
        return self.entries[i][j]

    def sub(self, idx) -> "GCM":
        """Principal submatrix on the given positions, keeping node names."""
        idx = sorted(idx)
        return GCM(
            tuple(self.nodes[i] for i in idx),
            tuple(tuple(self.entries[i][j] for j in idx) for i in idx),
        )

    def label(self) -> str:
        return self.name or str([list(r) for r in self.entries])

    def __str__(self):
        return self.label()


def _matrix(n: int, edges: dict) -> list[list[int]]:
    """edges: (i, j) -> A_ij (0-based), set both directions explicitly."""
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for (i, j), v in edges.items():
        a[i][j] = v
    return a


def _chain(n: int) -> dict:
    e = {}
    for i in range(n - 1):
        e[(i, i + 1)] = -1
        e[(i + 1, i)] = -1
    return e


def named_matrix(letter: str, n: int) -> list[list[int]]:
    if letter == "A" and n >= 1:
        return _matrix(n, _chain(n))
    if letter == "B" and n == 2:
        return [[2, -2], [-1, 2]]
    if letter == "B" and n >= 3:
        e = _chain(n)
        e[(n - 1, n - 2)] = -2
        return _matrix(n, e)
    if letter == "C" and n == 2:
        return [[2, -2], [-1, 2]]
    if letter == "C" and n >= 3:
        e = _chain(n)
        e[(n - 2, n - 1)] = -2
        return _matrix(n, e)
    if letter == "D" and n >= 4:
        e = _chain(n - 1)
        e[(n - 3, n - 1)] = e[(n - 1, n - 3)] = -1
        return _matrix(n, e)
    if letter == "E" and n in (6, 7, 8):
        # Bourbaki numbering: 1-3-4-5-6(-7-8), 2 attached to 4
        e = {}
        for i, j in [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)]:
            if i < n and j < n:
                e[(i, j)] = e[(j, i)] = -1
        return _matrix(n, e)
    if letter == "F" and n == 4:
        e = _chain(4)
        e[(2, 1)] = -2
        return _matrix(4, e)
    if letter == "G" and n == 2:
        return [[2, -3], [-1, 2]]
    raise MalformedSpec(f"unknown type {letter}{n}")


def _affine_extension(base: list[list[int]]) -> list[list[int]]:
    from .weyl import enumerate_roots  # local import: weyl depends on cartan

    n = len(base)
    A = GCM(tuple(str(i + 1) for i in range(n)), tuple(tuple(r) for r in base))
    roots = enumerate_roots(A, bound=64)
    # highest root: largest height; its coroot comes along with it
    theta = max(roots.positive(), key=lambda r: (sum(r), r))
    theta_v = roots.coroot(theta)
    out = [[2] + [0] * n for _ in range(n + 1)]
    for j in range(n):
        out[0][j + 1] = -sum(theta_v[k] * base[k][j] for k in range(n))
        out[j + 1][0] = -sum(base[j][k] * theta[k] for k in range(n))
        out[j + 1][1:] = list(base[j])
    out[0][0] = 2
    return out


_NAMED = re.compile(r"^([A-G])(\d+)(~?)$")


def parse_diagram(spec: str) -> GCM:
    """Named type (A2, B3, G2, A1~, ...), a product with '+' or 'x'
    (A1+B2, A1x2 means A1+A1), or an integer matrix literal."""
    s = spec.strip().replace("−", "-").replace(" ", "")
    if not s:
        raise MalformedSpec("empty diagram spec")
    if s.startswith("["):
        try:
            rows = ast.literal_eval(s)
        except (ValueError, SyntaxError) as exc:
            raise MalformedSpec(f"cannot parse matrix {spec!r}") from exc
        if not isinstance(rows, (list, tuple)) or not all(isinstance(r, (list, tuple)) for r in rows):
            raise MalformedSpec(f"not a matrix literal: {spec!r}")
        if not all(isinstance(x, int) for r in rows for x in r):
            raise MalformedSpec("matrix entries must be integers")
        n = len(rows)
        return GCM(tuple(str(i + 1) for i in range(n)), tuple(tuple(r) for r in rows))
    parts = re.split(r"\+", s.upper())
    blocks = []
    for part in parts:
        m = re.fullmatch(r"([A-G]\d+~?)(?:\^(\d+)|X(\d+))?", part)
        if not m:
            raise MalformedSpec(f"cannot parse diagram {spec!r}")
        mult = int(m.group(2) or m.group(3) or 1)
        nm = _NAMED.match(m.group(1))
        letter, n, aff = nm.group(1), int(nm.group(2)), nm.group(3)
        mat = named_matrix(letter, n)
        if aff:
            mat = _affine_extension(mat)
        blocks.extend([mat] * mult)
    total = sum(len(b) for b in blocks)
    out = [[0] * total for _ in range(total)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, v in enumerate(row):
                out[off + i][off + j] = v
        off += len(b)
    if len(blocks) == 1 and _NAMED.match(parts[0]) and parts[0].endswith("~"):
        n = total - 1
        nodes = ("0",) + tuple(str(i + 1) for i in range(n))
    else:
        nodes = tuple(str(i + 1) for i in range(total))
    return GCM(nodes, tuple(tuple(r) for r in out), name=spec.strip())


def edge_label(A: GCM, i, j) -> int:
    """m_ij in {1, 2, 3, 4, 6}, or INF (= 0) for infinity."""
    i, j = A.index(i), A.index(j)
    if i == j:
        return 1
    p = A.a(i, j) * A.a(j, i)
    return {0: 2, 1: 3, 2: 4, 3: 6}.get(p, INF)


def short_node(A: GCM, i, j) -> int | None:
    """For an m = 4 or 6 edge, the position of the short node; else None."""
    i, j = A.index(i), A.index(j)
    if edge_label(A, i, j) not in (4, 6):
        return None
    return i if abs(A.a(i, j)) > abs(A.a(j, i)) else j


@dataclass(frozen=True)
class DynkinDiagram:
    nodes: tuple[str, ...]
    edges: dict  # (i, j) positions, i < j -> m_ij, only m != 2
    short: dict  # (i, j) -> short node position, for m in {4, 6}


def dynkin_diagram(A: GCM) -> DynkinDiagram:
    edges, short = {}, {}
    for i, j in itertools.combinations(range(A.rank), 2):
        m = edge_label(A, i, j)
        if m != 2:
            edges[(i, j)] = m
        if m in (4, 6):
            short[(i, j)] = short_node(A, i, j)
    return DynkinDiagram(A.nodes, edges, short)


def components(A: GCM) -> list[list[int]]:
    """Connected components (positions), each sorted, in order of first node."""
    seen, out = set(), []
    for s in range(A.rank):
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in range(A.rank):
                if w not in seen and A.a(v, w) != 0:
                    seen.add(w)
                    stack.append(w)
        out.append(sorted(comp))
    return out


@dataclass(frozen=True)
class SphericalType:
    letter: str
    rank: int

    def __str__(self):
        return f"{self.letter}{self.rank}"


NOT_SPHERICAL = "NotSpherical"


def _path_order(adj: dict, nodes: list[int]) -> list[int] | None:
    ends = [v for v in nodes if len(adj[v]) == 1]
    if len(nodes) == 1:
        return nodes
    if len(ends) != 2 or any(len(adj[v]) > 2 for v in nodes):
        return None
    order, prev, cur = [ends[0]], None, ends[0]
    while len(order) < len(nodes):
        nxt = [w for w in adj[cur] if w != prev]
        prev, cur = cur, nxt[0]
        order.append(cur)
    return order


def _classify_connected(A: GCM, comp: list[int]):
    n = len(comp)
    if n == 1:
        return SphericalType("A", 1)
    adj = {v: [] for v in comp}
    labels = []
    for i, j in itertools.combinations(comp, 2):
        m = edge_label(A, i, j)
        if m == 2:
            continue
        if m == INF:
            return NOT_SPHERICAL
        adj[i].append(j)
        adj[j].append(i)
        labels.append((m, i, j))
    if len(labels) != n - 1:  # a tree has n-1 edges; connected + more edges = cycle
        return NOT_SPHERICAL
    multi = [e for e in labels if e[0] != 3]
    if not multi:
        path = _path_order(adj, comp)
        if path is not None:
            return SphericalType("A", n)
        branch = [v for v in comp if len(adj[v]) >= 3]
        if len(branch) != 1 or len(adj[branch[0]]) != 3:
            return NOT_SPHERICAL
        b = branch[0]
        arms = []
        for start in adj[b]:
            length, prev, cur = 1, b, start
            while True:
                nxt = [w for w in adj[cur] if w != prev]
                if not nxt:
                    break
                if len(nxt) > 1:
                    return NOT_SPHERICAL
                prev, cur = cur, nxt[0]
                length += 1
            arms.append(length)
        arms.sort()
        if arms[0] == 1 and arms[1] == 1:
            return SphericalType("D", n)
        if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
            return SphericalType("E", n)
        return NOT_SPHERICAL
    if len(multi) > 1:
        return NOT_SPHERICAL
    m, i, j = multi[0]
    path = _path_order(adj, comp)
    if path is None:
        return NOT_SPHERICAL
    if m == 6:
        return SphericalType("G", 2) if n == 2 else NOT_SPHERICAL
    # m == 4
    if n == 2:
        return SphericalType("B", 2)
    pos = sorted([path.index(i), path.index(j)])
    s = short_node(A, i, j)
    if pos == [n - 2, n - 1] or pos == [0, 1]:
        end = path[-1] if pos == [n - 2, n - 1] else path[0]
        return SphericalType("B" if s == end else "C", n)
    if n == 4 and pos == [1, 2]:
        return SphericalType("F", 4)
    return NOT_SPHERICAL


def classify_components(A: GCM) -> list[tuple[tuple[str, ...], object]]:
    """[(component node names, SphericalType | NOT_SPHERICAL)]."""
    out = []
    for comp in components(A):
        out.append((tuple(A.nodes[v] for v in comp), _classify_connected(A, comp)))
    return out


def is_spherical(A: GCM) -> bool:
    return all(t != NOT_SPHERICAL for _, t in classify_components(A))


def is_k_spherical(A: GCM, k: int) -> bool:
    if k < 1:
        raise ValueError("k must be positive")
    for size in range(1, min(k, A.rank) + 1):
        for idx in itertools.combinations(range(A.rank), size):
            if not is_spherical(A.sub(idx)):
                return False
    return True


@dataclass(frozen=True)
class OddDiagram:
    """Graph of m = 3 edges with a BFS spanning tree and cycle basis per component.

    parent[v] is the tree parent of v (None at a component root).  Each basis
    cycle is a closed node sequence starting and ending at its component root.
    """

    nodes: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    components: tuple[tuple[int, ...], ...]
    parent: dict = field(default_factory=dict)
    cycles: tuple[tuple[int, ...], ...] = ()

    def component_of(self, v: int) -> tuple[int, ...]:
        return next(c for c in self.components if v in c)

    def tree_path(self, root: int, v: int) -> list[int]:
        """Node sequence from root to v in the spanning tree rooted at root."""
        parent = _bfs_parents(self, root)
        path = [v]
        while path[-1] != root:
            path.append(parent[path[-1]])
        return path[::-1]

    def cycle_basis(self, root: int) -> list[list[int]]:
        """Closed edge paths at root, one per non-tree edge of root's component."""
        parent = _bfs_parents(self, root)
        comp = set(self.component_of(root))
        out = []
        for a, b in self.edges:
            if a not in comp:
                continue
            if parent.get(a) == b or parent.get(b) == a:
                continue
            pa = self.tree_path(root, a)
            pb = self.tree_path(root, b)
            out.append(pa + pb[::-1])
        return out


def _bfs_parents(g: OddDiagram, root: int) -> dict:
    adj = {v: [] for v in g.nodes}
    for a, b in g.edges:
        adj[a].append(b)
        adj[b].append(a)
    parent = {root: None}
    queue = [root]
    for v in queue:
        for w in sorted(adj[v]):
            if w not in parent:
                parent[w] = v
                queue.append(w)
    return parent


def odd_diagram(A: GCM) -> OddDiagram:
    edges = tuple(
        (i, j) for i, j in itertools.combinations(range(A.rank), 2) if edge_label(A, i, j) == 3
    )
    g = OddDiagram(tuple(range(A.rank)), edges, ())
    comps, seen = [], set()
    for s in range(A.rank):
        if s in seen:
            continue
        par = _bfs_parents(g, s)
        seen.update(par)
        comps.append(tuple(sorted(par)))
    parent = {}
    for c in comps:
        parent.update(_bfs_parents(g, c[0]))
    g = OddDiagram(g.nodes, edges, tuple(comps), parent, ())
    cycles = tuple(tuple(z) for c in comps for z in g.cycle_basis(c[0]))
    return OddDiagram(g.nodes, edges, tuple(comps), parent, cycles)
