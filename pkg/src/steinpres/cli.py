"""Command-line interface.

Exit codes: 0 when every identity check in the invocation passed, 1 when
some check failed, 2 on usage errors.  Measurements (orders, indices) are
reported and never fail the process.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field

from . import cartan, chevlie, fpgroup, present, ring, verify, weyl
from .words import fmt_word


class UsageError(ValueError):
    pass


@dataclass
class CommandResult:
    command: str
    config: dict
    payload: dict
    exit_code: int = 0
    text: list = field(default_factory=list)


def _diagram(text: str) -> cartan.GCM:
    try:
        return cartan.parse_diagram(text)
    except (cartan.MalformedSpec, cartan.NotAGCM) as exc:
        raise UsageError(str(exc)) from exc


def _ring(text: str) -> ring.Ring:
    try:
        return ring.ring_from_text(text)
    except ring.InvalidDescriptor as exc:
        raise UsageError(str(exc)) from exc


def _node(A: cartan.GCM, text: str) -> int:
    try:
        return A.index(text)
    except (KeyError, ValueError) as exc:
        raise UsageError(f"unknown node {text!r}; nodes are {', '.join(A.nodes)}") from exc


def _root_text(A, r) -> str:
    return "(" + ",".join(str(x) for x in r) + ")"


# ---------------------------------------------------------------------------
# subcommands


def cmd_present(a) -> CommandResult:
    A, R = _diagram(a.diagram), _ring(a.ring)
    P = present.emit_presentation(A, R, prune_=a.prune, kac_moody=a.kac_moody, sparse=a.sparse, table=a.table)
    cfg = {"diagram": a.diagram, "ring": R.name, "prune": a.prune, "kac_moody": a.kac_moody, "out": a.out}
    res = CommandResult("present", cfg, {"counts": {str(k): v for k, v in P.counts().items()}})
    if a.out in ("gap", "json"):
        doc = present.export(P, a.out)
        res.text.append(doc.rstrip("\n"))
        if a.out == "json":
            res.payload = json.loads(doc)
    elif a.json:
        res.payload = json.loads(present.export(P, "json"))
    else:
        res.text.append(present.describe(P))
    return res


def cmd_verify(a) -> CommandResult:
    A, R = _diagram(a.diagram), _ring(a.ring)
    P = present.emit_presentation(A, R, prune_=a.prune, kac_moody=a.kac_moody, table=a.table)
    kinds = ["defining", "adjoint"] if a.rep == "both" else [a.rep]
    rels = P.relators
    if a.sample and len(rels) > a.sample:
        rng = random.Random(a.seed)
        keep = sorted(rng.sample(range(len(rels)), a.sample))
        P = present.PresentationDoc(P.A, P.R, P.generators, [rels[k] for k in keep], P.options)
    cfg = {"diagram": a.diagram, "ring": R.name, "rep": a.rep, "seed": a.seed, "sample": a.sample}
    payload, failed = {}, False
    text = []
    for kind in kinds:
        try:
            rep = verify.build_rep(A, R, kind)
        except verify.NotSupported as exc:
            raise UsageError(str(exc)) from exc
        rep_ok = rep.self_check()
        rpt = verify.check_presentation(rep, P)
        failed |= not rpt.ok or not all(rep_ok.values())
        payload[kind] = {
            "dimension": rep.dim,
            "construction_checks": rep_ok,
            "relators": rpt.total,
            "failures": [
                {"index": k, "batch": r.batch, "family": r.family, "word": fmt_word(r.word, R, A)}
                for k, r, _ in rpt.failures
            ],
            "per_batch": {str(b): {"checked": c, "failed": f} for b, (c, f) in sorted(rpt.per_batch.items(), key=lambda x: str(x[0]))},
        }
        text.append(f"{kind} (dim {rep.dim}): {rpt.total - len(rpt.failures)}/{rpt.total} relators map to the identity")
        for b, (c, f) in sorted(rpt.per_batch.items(), key=lambda x: str(x[0])):
            text.append(f"  batch {b}: {c - f}/{c}")
        for k, r, _ in rpt.failures[:20]:
            text.append(f"  FAIL #{k} [{r.batch}] {r.family}: {fmt_word(r.word, R, A)}")
    return CommandResult("verify", cfg, payload, int(failed), text)


def cmd_autos(a) -> CommandResult:
    kind = {"b2": "B2char2", "g2": "G2char3"}[a.type]
    A = cartan.parse_diagram(a.type.upper())
    F = _ring(a.field)
    try:
        rpt = verify.check_endomorphism(A, F, kind)
    except (verify.WrongDiagram, ring.WrongCharacteristic) as exc:
        raise UsageError(str(exc)) from exc
    payload = {
        "relators": rpt.relators,
        "relator_failures": rpt.relator_failures,
        "phi_squared_is_frobenius": rpt.frobenius,
        "psi_phi_squared_is_identity": rpt.inverse,
    }
    text = [
        f"phi-images of {rpt.relators} relators: {rpt.relators - rpt.relator_failures} map to the identity",
        f"phi^2 = Frobenius on generators: {rpt.frobenius}",
        f"psi o phi^2 = identity on generators: {rpt.inverse}",
    ]
    return CommandResult("autos", {"type": a.type, "field": F.name}, payload, int(not rpt.ok), text)


def cmd_wstar(a) -> CommandResult:
    A = _diagram(a.diagram)
    if not cartan.is_spherical(A):
        raise UsageError(f"{A} is not spherical")
    L = chevlie.build_algebra(A)
    res = chevlie.wstar_suite(A, L)
    res.update({f"algebra_{k}": v for k, v in chevlie.check_algebra(L).items()})
    text = [f"{k}: {'ok' if v else 'FAILED'}" for k, v in res.items()]
    return CommandResult("wstar-check", {"diagram": a.diagram}, res, int(not all(res.values())), text)


def cmd_stabilizer(a) -> CommandResult:
    A = _diagram(a.diagram)
    i = _node(A, a.node)
    gens = chevlie.stabilizer_generators(A, i)

    def wtext(w):
        return " ".join(f"s{A.nodes[k]}" if e == 1 else f"s{A.nodes[k]}^-1" for k, e in w) or "1"

    items = [{"kind": g.kind, "label": [A.nodes[k] for k in g.label], "word": wtext(g.word)} for g in gens]
    text = [f"{it['kind']} {','.join(it['label'])}: {it['word']}" for it in items]
    failed = False
    if cartan.is_spherical(A):
        L = chevlie.build_algebra(A)
        ei = L.vector(L.simple_e(i))
        for it, g in zip(items, gens):
            v = chevlie.w_star_of_word(L, g.word).matrix @ ei
            if g.kind == "square":
                expect = (-1) ** (A.a(g.label[0], i) % 2)
            else:
                expect = 1
            ok = bool((v == expect * ei).all())
            it["acts_on_e_i_by"] = expect
            it["verified"] = ok
            failed |= not ok
        text = [f"{it['kind']} {','.join(it['label'])}: {it['word']}  [e_i -> {it['acts_on_e_i_by']:+d} e_i: {'ok' if it['verified'] else 'FAILED'}]" for it in items]
    return CommandResult("stabilizer", {"diagram": a.diagram, "node": a.node}, {"generators": items}, int(failed), text)


def cmd_roots(a) -> CommandResult:
    A = _diagram(a.diagram)
    bound = a.bound
    if bound is None and not cartan.is_spherical(A):
        raise UsageError("non-spherical diagrams need --bound")
    rs = weyl.enumerate_roots(A, bound)
    items = [{"root": list(r), "coroot": list(rs.coroot(r)), "sign": "+" if weyl.is_positive(r) else "-"} for r in rs.roots]
    text = [f"{it['sign']} {_root_text(A, it['root'])}  coroot {_root_text(A, it['coroot'])}" for it in items]
    text.append(f"{len(items)} roots; orbit closed: {rs.complete}")
    return CommandResult("roots", {"diagram": a.diagram, "bound": bound}, {"roots": items, "count": len(items), "complete": rs.complete}, 0, text)


def cmd_enumerate(a) -> CommandResult:
    A, R = _diagram(a.diagram), _ring(a.ring)
    P = present.emit_presentation(A, R, prune_=a.prune, kac_moody=a.kac_moody)
    t = fpgroup.todd_coxeter(P, max_cosets=a.max_cosets)
    payload = {"status": t.status, "order": t.index, "cosets_defined": t.cosets_defined, "max_live": t.max_live}
    text = [f"status: {t.status}", f"order: {t.index if t.index is not None else 'unknown (cap reached)'}",
            f"cosets defined: {t.cosets_defined}, max live: {t.max_live}"]
    cfg = {"diagram": a.diagram, "ring": R.name, "prune": a.prune, "max_cosets": a.max_cosets}
    return CommandResult("enumerate", cfg, payload, 0, text)


def _parse_roots(A, text: str) -> list:
    names = verify.named_roots(A)
    if text.strip() == "rank3-generators":
        return verify.rank3_generating_roots(A)
    out = []
    token, depth = "", 0
    parts = []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(token)
            token = ""
        else:
            token += ch
    parts.append(token)
    for p in (x.strip() for x in parts):
        if p in names:
            out.append(names[p])
        elif p[:1] in "([":
            out.append(tuple(int(x) for x in p.strip("()[]").split(",")))
        else:
            raise UsageError(f"unknown root {p!r}; known names: {', '.join(sorted(names))}")
    roots = weyl.enumerate_roots(A)
    for r in out:
        if r not in roots or not weyl.is_positive(r):
            raise UsageError(f"{r} is not a positive root")
    return out


def cmd_unipotent(a) -> CommandResult:
    A, F = _diagram(a.diagram), _ring(a.field)
    roots = _parse_roots(A, a.gens)
    try:
        g = verify.unipotent_generation_index(A, F, roots)
    except verify.NotAField as exc:
        raise UsageError(str(exc)) from exc
    payload = {"generated_order": g.order, "unipotent_order": g.full, "index": g.index, "roots": [list(r) for r in roots]}
    text = [f"|<U_gamma>| = {g.order}, |U| = {g.full}, index = {g.index}"]
    return CommandResult("unipotent-gen", {"diagram": a.diagram, "field": F.name, "gens": a.gens}, payload, 0, text)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for sampled checks")
    common.add_argument("--max-cosets", type=int, default=argparse.SUPPRESS, help="Todd-Coxeter coset cap")

    p = argparse.ArgumentParser(prog="steinpres", description="Presentations of (pre-)Steinberg groups and their checks.")
    p.add_argument("--json", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-cosets", type=int, default=2_000_000)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("present", cmd_present, "emit a presentation")
    sp.add_argument("--diagram", required=True)
    sp.add_argument("--ring", required=True)
    sp.add_argument("--prune", action="store_true")
    sp.add_argument("--kac-moody", action="store_true")
    sp.add_argument("--sparse", action="store_true", help="additivity over an additive generating set only")
    sp.add_argument("--table", action="store_true", help="simply-laced table relators")
    sp.add_argument("--out", choices=["json", "gap", "text"], default="text")

    sp = add("verify", cmd_verify, "evaluate relators in matrix representations")
    sp.add_argument("--diagram", required=True)
    sp.add_argument("--ring", required=True)
    sp.add_argument("--rep", choices=["defining", "adjoint", "both"], default="defining")
    sp.add_argument("--prune", action="store_true")
    sp.add_argument("--kac-moody", action="store_true")
    sp.add_argument("--table", action="store_true")
    sp.add_argument("--sample", type=int, default=0, help="check only a random sample of this many relators")

    sp = add("autos", cmd_autos, "check the char 2 / char 3 diagram endomorphisms")
    sp.add_argument("--type", choices=["b2", "g2"], required=True)
    sp.add_argument("--field", required=True)

    sp = add("wstar-check", cmd_wstar, "run the W* identity suite")
    sp.add_argument("--diagram", required=True)

    sp = add("stabilizer", cmd_stabilizer, "root-stabilizer generators")
    sp.add_argument("--diagram", required=True)
    sp.add_argument("--node", required=True)

    sp = add("roots", cmd_roots, "enumerate real roots")
    sp.add_argument("--diagram", required=True)
    sp.add_argument("--bound", type=int, default=None)

    sp = add("enumerate", cmd_enumerate, "Todd-Coxeter order of a presentation")
    sp.add_argument("--diagram", required=True)
    sp.add_argument("--ring", required=True)
    sp.add_argument("--prune", action="store_true")
    sp.add_argument("--kac-moody", action="store_true")

    sp = add("unipotent-gen", cmd_unipotent, "index of a root-group subgroup in U")
    sp.add_argument("--diagram", required=True)
    sp.add_argument("--field", required=True)
    sp.add_argument("--gens", required=True, help="comma list: s,l,s',l', a<k>, g<ij>, (c1,c2,...) or rank3-generators")
    return p


def run(argv=None, out=None) -> CommandResult:
    out = out or sys.stdout
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return CommandResult("usage", {}, {}, 2 if exc.code else 0)
    try:
        res = a.fn(a)
    except (UsageError, ring.InfiniteRing, present.UnsupportedEdge, chevlie.NotSpherical) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return CommandResult(a.command, {}, {"error": str(exc)}, 2)
    if a.json:
        doc = {"command": res.command, "config": res.config, "result": res.payload, "exit_code": res.exit_code}
        print(json.dumps(doc, indent=1, sort_keys=True, default=str), file=out)
    else:
        for line in res.text:
            print(line, file=out)
    return res


def main(argv=None) -> int:
    try:
        return run(argv).exit_code
    except BrokenPipeError:
        # output closed early (e.g. piped into head)
        sys.stderr.close()
        return 0


if __name__ == "__main__":
    sys.exit(main())
