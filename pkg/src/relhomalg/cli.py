"""Command-line front end.

Exit codes: 0 = all checks verified or vacuous-at-cutoff, 1 = input or
usage error, 2 = a check reported "violated" or a validation failed.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bounds as bounds_mod
from .complexes import (
    chain_identity,
    cone,
    hom_k,
    is_f_acyclic,
    term_length,
)
from .fields import PrimeField, QQ
from .relative import (
    TruncationError,
    ext_f,
    f_resolution,
    findim_f,
    gldim_f,
    id_f,
    is_f_exact,
    pd_f,
    relative_injectives,
)
from .rep import ShortExactSeq, is_isomorphic, kernel, projective_cover
from .schema import SchemaError, canonical_form, load_problem
from .tilting import end_algebra, image_tilting_over_sigma, verify_f_tilting

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_VIOLATED = 2


class Output:
    def __init__(self, quiet: bool):
        self.quiet = quiet
        self.report: dict = {}

    def say(self, *parts):
        if not self.quiet:
            print(*parts)

    def table(self, rows, headers=None):
        if self.quiet or not rows:
            return
        cols = len(rows[0])
        if headers:
            rows = [headers] + [["-" * len(h) for h in headers]] + rows
        widths = [max(len(str(r[c])) for r in rows) for c in range(cols)]
        for r in rows:
            print("  ".join(str(v).ljust(widths[c]) for c, v in enumerate(r)))


def _load(args, out: Output):
    field = None
    if args.field:
        if args.field.lower() in ("q", "qq"):
            field = QQ
        elif args.field.lower().startswith("fp:"):
            field = PrimeField(int(args.field.split(":", 1)[1]))
        else:
            raise SchemaError("--field", f"unknown field {args.field!r} (use q or fp:P)")
    return load_problem(args.file, field_override=field, cutoff_override=args.cutoff)


def _named_match(problem, module) -> str:
    for name, m in problem.modules.items():
        if is_isomorphic(m, module).isomorphic:
            return name
    return f"<unnamed {module.dims}>"


def cmd_algebra(args, out: Output) -> int:
    problem = _load(args, out)
    alg = problem.algebra
    out.say(f"algebra over {alg.field!r}: {alg.quiver.n} vertices, "
            f"{len(alg.quiver.arrows)} arrows, dimension {alg.dim}")
    rows = []
    for k, (src, word) in enumerate(alg.basis):
        label = "e_" + str(src) if not word else "".join(
            alg.quiver.arrows[a].name for a in word)
        rows.append([k, label, src, alg.element_target(k), len(word)])
    out.table(rows, headers=["idx", "path", "from", "to", "len"])
    if args.canonical:
        with open(args.file, "r", encoding="utf-8") as fh:
            sys.stdout.write(canonical_form(fh.read()))
    out.report = {
        "dimension": alg.dim,
        "basis": [{"path": "".join(alg.quiver.arrows[a].name for a in word) if word else f"e_{src}",
                   "from": src, "to": alg.element_target(k)}
                  for k, (src, word) in enumerate(alg.basis)],
    }
    return EXIT_OK


def cmd_module(args, out: Output) -> int:
    problem = _load(args, out)
    F = problem.subbifunctor
    names = [args.name] if args.name else list(problem.modules)
    injs, validated, _notes = relative_injectives(F, [m for _, m in problem.corpus()])
    rows = []
    rep_json = {}
    for n in names:
        if n not in problem.modules:
            raise SchemaError("--name", f"unknown module {n!r}")
        m = problem.modules[n]
        pdr = pd_f(m, F, problem.cutoff)
        idr = id_f(m, F, injs, problem.cutoff)
        res = f_resolution(m, F, problem.cutoff)
        shape = " <- ".join(str(p.dims) for p in res.modules)
        rows.append([n, str(m.dims), str(pdr.dim), str(idr.dim), shape])
        rep_json[n] = {"dims": list(m.dims), "pd_F": pdr.to_json(), "id_F": idr.to_json()}
    out.table(rows, headers=["module", "dims", "pd_F", "id_F", "resolution"])
    if args.ext:
        x, y, deg = args.ext
        val = ext_f(problem.modules[x], problem.modules[y], int(deg), F)
        out.say(f"ext_F^{deg}({x}, {y}) = {val}")
        rep_json["ext"] = {"x": x, "y": y, "degree": int(deg), "dim": val}
    out.report = rep_json
    return EXIT_OK


def cmd_relhom(args, out: Output) -> int:
    problem = _load(args, out)
    F = problem.subbifunctor
    corpus = problem.corpus()
    if args.sub == "ifset":
        injs, validated, notes = relative_injectives(F, [m for _, m in corpus])
        names = [_named_match(problem, c.module) for c in injs]
        out.say("I(F) = {" + ", ".join(names) + "}")
        out.say(f"validated F-injective against corpus: {'yes' if validated else 'NO'}")
        out.report = {"ifset": names,
                      "validated": validated,
                      "notes": notes if not validated else []}
        return EXIT_OK if validated else EXIT_VIOLATED
    if args.sub == "gldim":
        g = gldim_f(corpus, F, problem.cutoff, complete=problem.corpus_complete)
        fd = findim_f(corpus, F, problem.cutoff, complete=problem.corpus_complete)
        out.say(f"gldim_F = {g.dim}   fd_F = {fd.dim}   (cutoff {problem.cutoff})")
        out.table([[n, str(d)] for n, d in sorted(g.breakdown.items())],
                  headers=["module", "pd_F"])
        out.report = {"gldim_F": g.to_json(), "fd_F": fd.to_json()}
        return EXIT_OK
    if args.sub == "resolve":
        if not args.module:
            raise SchemaError("--module", "relhom resolve needs --module")
        m = problem.modules[args.module]
        res = f_resolution(m, F, problem.cutoff)
        rows = [[-k, str(p.dims),
                 ",".join(F.summands[j].name for j in (res.pieces[k] or []))
                 if res.pieces[k] is not None else "(identity)"]
                for k, p in enumerate(res.modules)]
        out.table(rows, headers=["degree", "dims", "add(G) pieces"])
        out.say(f"length {res.length}{' (truncated)' if res.truncated else ''}")
        out.report = {"module": args.module, "length": res.length, "truncated": res.truncated}
        return EXIT_OK
    if args.sub == "exact":
        if not args.module:
            raise SchemaError("--module", "relhom exact needs --module")
        m = problem.modules[args.module]
        cover = projective_cover(m)
        k, incl = kernel(cover.map)
        ses = ShortExactSeq(incl, cover.map)
        ok = is_f_exact(ses, F)
        out.say(f"projective cover sequence of {args.module}: "
                f"{'F-exact' if ok else 'not F-exact'}")
        out.report = {"module": args.module, "cover_sequence_f_exact": ok}
        return EXIT_OK
    raise SchemaError("relhom", f"unknown subcommand {args.sub!r}")


def cmd_complex(args, out: Output) -> int:
    problem = _load(args, out)
    F = problem.subbifunctor
    if args.complex not in problem.complexes:
        raise SchemaError("--complex", f"unknown complex {args.complex!r}")
    x = problem.complexes[args.complex]
    if args.sub == "termlength":
        t = term_length(x)
        out.say(f"term length t({args.complex}) = {t}")
        out.report = {"complex": args.complex, "term_length": t}
        return EXIT_OK
    if args.sub == "acyclic":
        ok = is_f_acyclic(x, F)
        out.say(f"{args.complex} is {'F-acyclic' if ok else 'not F-acyclic'}")
        out.report = {"complex": args.complex, "f_acyclic": ok}
        return EXIT_OK
    if args.sub == "cone":
        m, _, _ = cone(chain_identity(x))
        ok = is_f_acyclic(m, F)
        out.say(f"cone(id_{args.complex}): degrees {m.degrees()}, "
                f"F-acyclic: {'yes' if ok else 'NO'}")
        out.report = {"complex": args.complex, "cone_degrees": m.degrees(),
                      "contractible_cone_acyclic": ok}
        return EXIT_OK if ok else EXIT_VIOLATED
    if args.sub == "homk":
        if not args.to:
            raise SchemaError("--to", "complex homk needs --to")
        y = problem.complexes[args.to]
        dims = {}
        lo, hi = -(args.window or 3), (args.window or 3)
        for n in range(lo, hi + 1):
            dims[n] = hom_k(x, y, n)[0]
        out.table([[n, dims[n]] for n in sorted(dims)], headers=["shift", "dim hom_K"])
        out.report = {"from": args.complex, "to": args.to,
                      "hom_k": {str(n): d for n, d in sorted(dims.items())}}
        return EXIT_OK
    raise SchemaError("complex", f"unknown subcommand {args.sub!r}")


def _require_char_zero(problem):
    if problem.field.characteristic != 0:
        raise SchemaError("--field", "endomorphism-algebra checks need characteristic 0 "
                          "(the automatic radical uses the trace form); drop the field override")


def cmd_tilting(args, out: Output) -> int:
    problem = _load(args, out)
    _require_char_zero(problem)
    F = problem.subbifunctor
    if problem.tilting is None:
        raise SchemaError("$.tilting", "file declares no tilting complex")
    ts = problem.tilting_sum()
    rep = verify_f_tilting(ts, F, problem.tilting.declared_count,
                           witnesses=problem.tilting.witnesses,
                           witness_env=problem.complexes)
    endo = end_algebra(ts)
    gamma = endo.to_abstract()
    out.say(f"tilting complex {problem.tilting.complex_name}: "
            f"{'PASSES' if rep.passed else 'FAILS'}")
    out.table([
        ["components in add(G)", "yes" if rep.in_kb_pf else "NO"],
        ["self-orthogonal", "yes" if rep.self_orthogonal_ok else "NO"],
        ["term length", rep.term_length],
        ["declared summands", rep.declared_count],
        ["count criterion", "passes" if rep.count_criterion_ok else "FAILS"],
        ["generation", rep.generation],
        ["dim End(T)", rep.endo_dim],
        ["dim rad End(T)", gamma.radical_dim()],
    ])
    for f in rep.failures:
        out.say("failure:", f)
    if args.sigma:
        _, comparison, dims_check = image_tilting_over_sigma(ts, F)
        mism = {n: v for n, v in comparison.items() if v[0] != v[1]}
        out.say("image over Sigma: hom windows "
                + ("match" if not mism else f"MISMATCH {mism}"))
    out.report = {"tilting": rep.to_json(), "endo_dim": endo.dim,
                  "endo_radical_dim": gamma.radical_dim()}
    return EXIT_OK if rep.passed else EXIT_VIOLATED


def cmd_bounds(args, out: Output) -> int:
    problem = _load(args, out)
    _require_char_zero(problem)
    F = problem.subbifunctor
    corpus = problem.corpus()
    if problem.tilting is None:
        raise SchemaError("$.tilting", "bounds checks need a tilting declaration")
    ts = problem.tilting_sum()
    cutoff = problem.cutoff
    if args.sub == "theorem73":
        rep = bounds_mod.theorem73_check(F, corpus, ts, cutoff,
                                         complete=problem.corpus_complete)
    elif args.sub == "cor710":
        rep = bounds_mod.corollary710_check(F, corpus, ts, cutoff,
                                            complete=problem.corpus_complete)
    elif args.sub == "counts":
        endo = end_algebra(ts)
        rep = bounds_mod.prop63_64_counts(F, problem.tilting.declared_count,
                                          endo.to_abstract())
    elif args.sub == "gorenstein":
        rep = bounds_mod.gorenstein_check(F, corpus, ts, cutoff)
    else:
        raise SchemaError("bounds", f"unknown subcommand {args.sub!r}")
    rows = []
    for key, val in rep.values.items():
        rows.append([key, str(val.dim) if hasattr(val, "dim") else str(val)])
    for key, val in rep.counts.items():
        rows.append([key, str(val)])
    out.table(rows, headers=["quantity", "value"])
    out.say("")
    out.table([[c.label, str(c.lhs), str(c.rhs), c.status] for c in rep.checks],
              headers=["check", "lhs", "rhs", "status"])
    for n in rep.notes:
        out.say("note:", n)
    out.say(f"overall: {rep.worst_status}")
    out.report = rep.to_json()
    return EXIT_VIOLATED if rep.violated else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="relhomalg",
        description="relative homological algebra over finite-dimensional quiver algebras")
    p.add_argument("--cutoff", type=int, default=None,
                   help="dimension cutoff (default: the file's, else 10)")
    p.add_argument("--field", default=None, help="field override: q or fp:P")
    p.add_argument("--report", default=None, help="write a JSON report to PATH")
    p.add_argument("--quiet", action="store_true", help="suppress human output")
    sub = p.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("algebra", help="build the algebra and dump its basis")
    pa.add_argument("file")
    pa.add_argument("--canonical", action="store_true",
                    help="print the canonical form of the input file")
    pa.set_defaults(fn=cmd_algebra)

    pm = sub.add_parser("module", help="module dimensions, resolutions and ext")
    pm.add_argument("file")
    pm.add_argument("--name", default=None)
    pm.add_argument("--ext", nargs=3, metavar=("X", "Y", "I"), default=None)
    pm.set_defaults(fn=cmd_module)

    pr = sub.add_parser("relhom", help="F-exactness, resolutions, I(F), gldim_F")
    pr.add_argument("sub", choices=["ifset", "gldim", "resolve", "exact"])
    pr.add_argument("file")
    pr.add_argument("--module", default=None)
    pr.set_defaults(fn=cmd_relhom)

    pc = sub.add_parser("complex", help="cones, hom_k, acyclicity, term length")
    pc.add_argument("sub", choices=["termlength", "acyclic", "cone", "homk"])
    pc.add_argument("file")
    pc.add_argument("--complex", required=True)
    pc.add_argument("--to", default=None)
    pc.add_argument("--window", type=int, default=None)
    pc.set_defaults(fn=cmd_complex)

    pt = sub.add_parser("tilting", help="verify the F-tilting declaration and dump End")
    pt.add_argument("file")
    pt.add_argument("--sigma", action="store_true",
                    help="also compare hom windows with the image complex over End(G)")
    pt.set_defaults(fn=cmd_tilting)

    pb = sub.add_parser("bounds", help="theorem73 / cor710 / counts / gorenstein")
    pb.add_argument("sub", choices=["theorem73", "cor710", "counts", "gorenstein"])
    pb.add_argument("file")
    pb.set_defaults(fn=cmd_bounds)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Output(quiet=args.quiet)
    try:
        code = args.fn(args, out)
    except SchemaError as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except FileNotFoundError as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except TruncationError as e:
        print(f"undeterminable at this cutoff: {e}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as e:
        print(f"check failed: {e}", file=sys.stderr)
        return EXIT_VIOLATED
    if args.report:
        payload = {"command": args.command, "file": getattr(args, "file", None),
                   "exit": code, "results": out.report}
        with open(args.report, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, sort_keys=True, indent=1)
            fh.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
