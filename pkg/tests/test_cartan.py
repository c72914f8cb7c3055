import itertools

import pytest

from steinpres.cartan import (
    INF,
    MalformedSpec,
    NotAGCM,
    SphericalType,
    classify_components,
    dynkin_diagram,
    edge_label,
    is_k_spherical,
    is_spherical,
    odd_diagram,
    parse_diagram,
    short_node,
)

AFF2 = "[[2,-2],[-2,2]]"


def test_parse_named_a2():
    assert parse_diagram("A2").entries == ((2, -1), (-1, 2))


def test_parse_b2_short_node_first():
    A = parse_diagram("B2")
    assert A.entries == ((2, -2), (-1, 2))
    assert short_node(A, 0, 1) == 0


def test_parse_matrix_literal_affine():
    A = parse_diagram(AFF2)
    assert A.entries == ((2, -2), (-2, 2))
    assert edge_label(A, 0, 1) == INF


def test_parse_unicode_minus_and_products():
    assert parse_diagram("[[2,−1],[−1,2]]").entries == ((2, -1), (-1, 2))
    A = parse_diagram("A1+B2")
    assert A.rank == 3 and A.a(0, 1) == 0


@pytest.mark.parametrize("bad", ["Q7", "[[2,1],[1,2", "", "A0"])
def test_malformed(bad):
    with pytest.raises((MalformedSpec, NotAGCM)):
        parse_diagram(bad)


@pytest.mark.parametrize(
    "m, msg",
    [("[[2,1],[-1,2]]", "A[1][2]"), ("[[2,0],[-1,2]]", "A[1][2]"), ("[[3,-1],[-1,2]]", "A[1][1]")],
)
def test_not_a_gcm_reports_entry(m, msg):
    with pytest.raises(NotAGCM, match=msg.replace("[", r"\[").replace("]", r"\]")):
        parse_diagram(m)


def test_edge_labels():
    assert edge_label(parse_diagram("A2"), 0, 1) == 3
    assert edge_label(parse_diagram("G2"), 0, 1) == 6
    assert edge_label(parse_diagram("B2"), 0, 1) == 4
    for d in ["A2", "G2", AFF2]:
        A = parse_diagram(d)
        assert all(edge_label(A, i, i) == 1 for i in range(A.rank))


def test_dynkin_short_annotation_only_on_4_6_edges():
    D = dynkin_diagram(parse_diagram("B3"))
    assert set(D.short) == {(1, 2)}
    assert D.short[(1, 2)] == 2


def test_classify():
    assert classify_components(parse_diagram("A2")) == [(("1", "2"), SphericalType("A", 2))]
    assert classify_components(parse_diagram(AFF2)) == [(("1", "2"), "NotSpherical")]
    got = classify_components(parse_diagram("A1+B2"))
    assert [str(t) for _, t in got] == ["A1", "B2"]
    assert [len(c) for c, _ in got] == [1, 2]


@pytest.mark.parametrize(
    "name, expected",
    [("A4", "A4"), ("B3", "B3"), ("C3", "C3"), ("D4", "D4"), ("F4", "F4"), ("E6", "E6"), ("G2", "G2"), ("C4", "C4")],
)
def test_classify_catalog(name, expected):
    assert [str(t) for _, t in classify_components(parse_diagram(name))] == [expected]


def test_classify_is_isomorphism_invariant():
    # B3 with nodes listed in reverse order
    A = parse_diagram("[[2,-2,0],[-1,2,-1],[0,-1,2]]")
    assert [str(t) for _, t in classify_components(A)] == ["B3"]
    A = parse_diagram("[[2,-1,0],[-2,2,-1],[0,-1,2]]")
    assert [str(t) for _, t in classify_components(A)] == ["C3"]


def test_k_spherical():
    assert is_k_spherical(parse_diagram("A2"), 2)
    assert not is_k_spherical(parse_diagram(AFF2), 2)
    A = parse_diagram("A2~")
    # oracle: enumerate every induced subdiagram and classify it
    for k, expected in [(2, True), (3, False)]:
        brute = all(
            is_spherical(A.sub(idx))
            for size in range(1, k + 1)
            for idx in itertools.combinations(range(3), size)
        )
        assert brute == expected
        assert is_k_spherical(A, k) == expected


def test_odd_diagram():
    g = odd_diagram(parse_diagram("A3"))
    assert g.edges == ((0, 1), (1, 2)) and g.components == ((0, 1, 2),) and g.cycles == ()
    g = odd_diagram(parse_diagram("B2"))
    assert g.edges == () and g.components == ((0,), (1,))
    g = odd_diagram(parse_diagram("A2~"))
    assert len(g.components) == 1 and len(g.cycles) == 1
    assert g.cycles[0][0] == g.cycles[0][-1]


def test_affine_extension_shapes():
    A = parse_diagram("A1~")
    assert A.entries == ((2, -2), (-2, 2))
    A = parse_diagram("G2~")
    assert A.rank == 3 and A.nodes[0] == "0"
    assert [str(t) for _, t in classify_components(A)] == ["NotSpherical"]
