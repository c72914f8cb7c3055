import pytest

from steinpres.cartan import parse_diagram
from steinpres.weyl import (
    DimensionMismatch,
    NotRealRoots,
    PairNotClassicallyPrenilpotent,
    classify_pair,
    enumerate_roots,
    pairing,
    rank2_type,
    reflect_coroot,
    reflect_root,
    theta,
    weyl_element_of_word,
    weyl_group_order,
)

A2, B2, G2 = (parse_diagram(x) for x in ("A2", "B2", "G2"))
AFF = parse_diagram("[[2,-2],[-2,2]]")


def test_reflect_root():
    assert reflect_root(A2, 0, (0, 1)) == (1, 1)
    for A in (A2, B2, G2):
        assert reflect_root(A, 1, (0, 1)) == (0, -1)
    assert reflect_root(B2, 0, (0, 1)) == (2, 1)


def test_reflect_coroot():
    assert reflect_coroot(A2, 0, (0, 1)) == (1, 1)
    assert reflect_coroot(A2, 0, (1, 0)) == (-1, 0)
    # oracle: coroots reflect by the transposed matrix
    At = [[B2.a(j, i) for j in range(2)] for i in range(2)]
    v = (0, 1)
    expect = tuple(v[k] - (At[0][1] if k == 0 else 0) * 1 for k in range(2))
    assert expect == (1, 1)
    assert reflect_coroot(B2, 0, v) == (1, 1)


def test_pairing():
    assert pairing(A2, (1, 0), (1, 0)) == 2
    assert pairing(A2, (1, 0), (0, 1)) == -1
    assert pairing(B2, (1, 0), (0, 1)) == -2
    with pytest.raises(DimensionMismatch):
        pairing(A2, (1, 0, 0), (1, 0))


def test_enumerate_counts_and_lists():
    assert sorted(enumerate_roots(A2).roots) == sorted([(1, 0), (0, 1), (1, 1), (-1, 0), (0, -1), (-1, -1)])
    g2 = enumerate_roots(G2)
    assert len(g2) == 12
    # sigma = (1,0) short, lambda = (0,1) long
    assert set(g2.positive()) == {(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)}


def _hand_bfs(A, depth):
    """Oracle: plain orbit BFS, layer 1 = +-simple roots."""
    layer = {(1, 0), (0, 1), (-1, 0), (0, -1)}
    seen = set(layer)
    for _ in range(depth - 1):
        nxt = set()
        for r in layer:
            for i in range(2):
                c = sum(A.a(i, j) * r[j] for j in range(2))
                s = tuple(r[k] - (c if k == i else 0) for k in range(2))
                if s not in seen:
                    nxt.add(s)
        seen |= nxt
        layer = nxt
    return seen


def test_enumerate_affine_bound3():
    expected = {(1, 0), (0, 1), (2, 1), (1, 2), (3, 2), (2, 3)}
    expected |= {(-a, -b) for a, b in expected}
    assert _hand_bfs(AFF, 3) == expected
    rs = enumerate_roots(AFF, 3)
    assert set(rs.roots) == expected and not rs.complete


def test_coroots_equivariant_b2():
    rs = enumerate_roots(B2)
    # long root 2s+l has coroot s^v + l^v, short root s+l has coroot 2s^v + l^v... check via pairing = 2
    for r in rs.roots:
        assert pairing(B2, rs.coroot(r), r) == 2


def test_rank2_type():
    assert rank2_type(A2, enumerate_roots(A2), (1, 0), (0, 1)) == "A2"
    assert rank2_type(B2, enumerate_roots(B2), (1, 0), (0, 1)) == "B2"
    assert rank2_type(AFF, enumerate_roots(AFF, 6), (1, 0), (0, 1)) == "Infinite"
    with pytest.raises(NotRealRoots):
        rank2_type(A2, enumerate_roots(A2), (1, 0), (2, 0))


def test_rank2_type_inside_rank3():
    A3 = parse_diagram("A3")
    Phi = enumerate_roots(A3)
    assert rank2_type(A3, Phi, (1, 0, 0), (0, 0, 1)) == "A1xA1"
    assert rank2_type(A3, Phi, (1, 0, 0), (0, 1, 1)) == "A2"
    B3 = parse_diagram("B3")
    assert rank2_type(B3, enumerate_roots(B3), (0, 1, 0), (0, 0, 1)) == "B2"


def test_classify_pair():
    P = enumerate_roots(A2)
    assert classify_pair(A2, P, (1, 0), (-1, 0)).kind == "NotPrenilpotent"
    c = classify_pair(A2, P, (1, 0), (0, 1))
    assert c.kind == "ClassicallyPrenilpotent" and c.rank2 == "A2"
    Pa = enumerate_roots(AFF, 6)
    assert classify_pair(AFF, Pa, (1, 0), (0, 1)).kind == "NotPrenilpotent"
    # oracle for the certificate: alpha_1 + alpha_2 is fixed by s_1 s_2
    s12 = weyl_element_of_word(AFF, [0, 1])
    assert s12((1, 1)) == (1, 1)
    assert classify_pair(AFF, Pa, (1, 0), (3, 2)).kind == "PrenilpotentOnly"


def test_theta():
    assert theta(A2, enumerate_roots(A2), (1, 0), (0, 1)) == {(1, 0), (0, 1), (1, 1)}
    # oracle: N-combinations inside the 8-root system
    Phi = enumerate_roots(B2)
    brute = {(m, n) for m in range(4) for n in range(4) if (m, n) != (0, 0) and (m, n) in Phi}
    assert brute == {(1, 0), (0, 1), (1, 1), (2, 1)}
    assert theta(B2, Phi, (1, 0), (0, 1)) == brute
    assert theta(A2, enumerate_roots(A2), (1, 0), (1, 0)) == {(1, 0)}
    with pytest.raises(PairNotClassicallyPrenilpotent):
        theta(A2, enumerate_roots(A2), (1, 0), (-1, 0))


def test_weyl_words():
    assert weyl_element_of_word(A2, [0, 1, 0]).matrix == weyl_element_of_word(A2, [1, 0, 1]).matrix
    assert weyl_element_of_word(B2, [0, 1, 0, 1]).matrix == weyl_element_of_word(B2, [1, 0, 1, 0]).matrix
    ident = weyl_element_of_word(G2, []).matrix
    assert weyl_element_of_word(G2, [1, 1]).matrix == ident


@pytest.mark.parametrize(
    "name, order",
    [("A2", 6), ("B2", 8), ("G2", 12), ("A3", 24), ("B3", 48), ("C3", 48), ("D4", 192), ("F4", 1152)],
)
def test_weyl_orders(name, order):
    assert weyl_group_order(parse_diagram(name)) == order


@pytest.mark.parametrize(
    "name, count",
    [("A2", 6), ("B2", 8), ("G2", 12), ("A3", 12), ("B3", 18), ("C3", 18), ("F4", 48), ("D4", 24), ("E6", 72)],
)
def test_root_counts(name, count):
    rs = enumerate_roots(parse_diagram(name))
    assert rs.complete and len(rs) == count
