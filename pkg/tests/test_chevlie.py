import numpy as np
import pytest

from steinpres.cartan import parse_diagram
from steinpres.chevlie import (
    NotAnOddPath,
    NotSpherical,
    ad_coroot,
    build_algebra,
    check_algebra,
    e_set,
    exp_ad,
    highest_weight_module,
    p_gamma_word,
    s_star_matrix,
    stabilizer_generators,
    w_star_of_word,
    weyl_word,
)
from steinpres.ring import ring_from_text
from steinpres.weyl import enumerate_roots, weyl_element_of_word

A1, A2, B2, G2 = (parse_diagram(x) for x in ("A1", "A2", "B2", "G2"))


@pytest.fixture(scope="module")
def algebras():
    return {n: build_algebra(parse_diagram(n)) for n in ("A1", "A2", "B2", "G2", "A3")}


def _string_oracle(A, Phi, a, b):
    """|N_{a,b}| = p + 1 where b - p a is the start of the a-string through b."""
    p = 0
    while tuple(x - (p + 1) * y for x, y in zip(b, a)) in Phi:
        p += 1
    return p + 1


def test_dims(algebras):
    assert {n: L.dim for n, L in algebras.items()} == {"A1": 3, "A2": 8, "B2": 10, "G2": 14, "A3": 15}


def test_a1_bracket(algebras):
    L = algebras["A1"]
    v = L.bracket(L.vector(L.simple_e(0)), L.vector(L.simple_f(0)))
    assert list(v) == list(-L.vector(L.h(0)))


@pytest.mark.parametrize("name", ["A2", "B2", "G2"])
def test_structure_constants_match_root_strings(algebras, name):
    L = algebras[name]
    A = parse_diagram(name)
    Phi = enumerate_roots(A)
    seen_max = 0
    for a in Phi.roots:
        for b in Phi.roots:
            s = tuple(x + y for x, y in zip(a, b))
            if s not in Phi:
                continue
            v = L.bracket(L.vector(L.e(a)), L.vector(L.e(b)))
            nz = np.nonzero(v)[0]
            assert list(nz) == [L.e(s)]
            assert abs(int(v[nz[0]])) == _string_oracle(A, Phi, a, b)
            seen_max = max(seen_max, abs(int(v[nz[0]])))
    assert seen_max == {"A2": 1, "B2": 2, "G2": 3}[name]


@pytest.mark.parametrize("name", ["A1", "A2", "B2", "G2", "A3"])
def test_algebra_checks(algebras, name):
    assert all(check_algebra(algebras[name]).values())


def test_exp_ad_a1_symbolic(algebras):
    L = algebras["A1"]
    R = ring_from_text("laurent(r;t,u)")
    t = R.var("t")
    M = exp_ad(L, (1,), t, R)
    col = {b: M[b][L.simple_f(0)] for b in range(L.dim)}
    assert col[L.simple_f(0)] == R.one()
    assert col[L.h(0)] == R.neg(t)
    assert col[L.simple_e(0)] == R.mul(t, t)
    M0 = exp_ad(L, (1,), R.zero(), R)
    assert all(M0[r][c] == (R.one() if r == c else R.zero()) for r in range(3) for c in range(3))


def test_exp_ad_a2(algebras):
    L = algebras["A2"]
    R = ring_from_text("z/7")
    M = exp_ad(L, (1, 0), 1, R)
    N = int(L.bracket(L.vector(L.e((1, 0))), L.vector(L.e((0, 1))))[L.e((1, 1))])
    col = [M[r][L.e((0, 1))] for r in range(L.dim)]
    expect = [0] * L.dim
    expect[L.e((0, 1))] = 1
    expect[L.e((1, 1))] = N
    assert [int(x) for x in col] == [v % 7 for v in expect] and abs(N) == 1


def test_s_star_a1(algebras):
    L = algebras["A1"]
    S = s_star_matrix(L, 0)
    e, f, h = L.simple_e(0), L.simple_f(0), L.h(0)
    assert abs(S[f, e]) == 1 and abs(S[e, f]) == 1
    assert S[h, h] == -1
    assert np.array_equal(S @ S, ad_coroot(L, (1,)))


def test_s_star_moves_simple_vectors(algebras):
    L = algebras["A2"]
    w = w_star_of_word(L, [1, 0]).matrix
    v = w @ L.vector(L.simple_e(1))
    # s_2 s_1 sends alpha_2 to alpha_1
    assert weyl_element_of_word(A2, [1, 0])((0, 1)) == (1, 0)
    assert list(np.nonzero(v)[0]) == [L.simple_e(0)]
    assert abs(v[L.simple_e(0)]) == 1


def test_ad_coroot_a2(algebras):
    L = algebras["A2"]
    D = ad_coroot(L, (1, 0))
    sign = {r: (-1) ** (2 * r[0] - r[1]) for r in L.roots}
    for r in L.roots:
        assert D[L.e(r), L.e(r)] == sign[r]


@pytest.mark.parametrize("name", ["A2", "B2", "G2"])
def test_w_star_equivariance(algebras, name):
    L = algebras[name]
    A = parse_diagram(name)
    for word in ([0], [1], [0, 1], [1, 0, 1]):
        w = w_star_of_word(L, word).matrix
        sw = weyl_element_of_word(A, word)
        for r in L.roots:
            col = w[:, L.e(r)]
            assert list(np.nonzero(col)[0]) == [L.e(sw(r))]


def test_e_set_sizes(algebras):
    assert len(e_set(algebras["A2"], (1, 1))) == 2
    # A1: s*^2 is trivial on e, so only +e is reached
    assert [list(v) for v in e_set(algebras["A1"], (1,))] == [[1, 0, 0]]
    for name in ("B2", "G2"):
        L = algebras[name]
        for i in range(2):
            vs = e_set(L, tuple(int(k == i) for k in range(2)))
            assert any(v[L.simple_e(i)] == 1 for v in vs)
            assert 1 <= len(vs) <= 2


def test_p_gamma_word():
    A3 = parse_diagram("A3")
    assert p_gamma_word([0, 1, 2], A3) == ((1, 1), (2, 1), (0, 1), (1, 1))
    assert p_gamma_word([0]) == ()
    with pytest.raises(NotAnOddPath):
        p_gamma_word([0, 2], A3)


def test_stabilizers_fix_root():
    for name, node in (("A3", 1), ("B2", 0), ("G2", 1), ("A2", 0)):
        A = parse_diagram(name)
        alpha = tuple(int(k == node) for k in range(A.rank))
        for g in stabilizer_generators(A, node):
            assert weyl_element_of_word(A, weyl_word(g.word))(alpha) == alpha


def test_stabilizer_a3_labels():
    kinds = [(g.kind, g.label) for g in stabilizer_generators(parse_diagram("A3"), 1)]
    assert ("r", (1, 3)) not in kinds
    assert ("r", (0, 2)) in kinds and ("r", (2, 0)) in kinds
    assert [k for k in kinds if k[0] == "square"] == [("square", (0,)), ("square", (1,)), ("square", (2,))]


def test_highest_weight_dims():
    assert highest_weight_module(A2, (1, 0)).dim == 3
    assert highest_weight_module(B2, (1, 0)).dim == 4
    assert highest_weight_module(G2, (1, 0)).dim == 7
    assert highest_weight_module(A2, (1, 1)).dim == 8


def test_not_spherical():
    with pytest.raises(NotSpherical):
        build_algebra(parse_diagram("[[2,-2],[-2,2]]"))
