"""Command-line surface: export zoo models, check files, run translations.

Exit codes: 0 all checks pass, 1 axiom violations, 2 parse/semantic/usage
errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from cyclops.reporting import Report
from cyclops import presfile
from cyclops.presfile import ParseError, SemanticError
from cyclops.presentations import (
    check_entries_only,
    check_entries_only_derived,
    check_exchangeable_output,
    check_exchangeable_output_derived,
)
from cyclops.species import check_functoriality, check_bijectivity, check_naturality, check_map_equality

ZOO_MODELS = ("comm", "cyclic-orders", "free-cyclic")
DIRECTIONS = ("eo2exo", "exo2eo", "comp2alg", "alg2comp", "alg-eo2alg-exo", "alg-exo2alg-eo")


def _zoo_model(name: str, size_cap: int):
    from cyclops import zoo

    if name == "comm":
        return zoo.comm_cyclic(size_cap)
    if name == "cyclic-orders":
        return zoo.cyclic_orders(size_cap)
    if name == "free-cyclic":
        return zoo.free_cyclic({"g": 3}, size_cap)
    raise ValueError(f"unknown zoo model {name!r}; choose from {', '.join(ZOO_MODELS)}")


def cmd_zoo(args) -> int:
    try:
        model = _zoo_model(args.model, args.size_cap)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    data = presfile.export_entries_only(model)
    Path(args.out).write_text(presfile.render(data))
    print(f"wrote {args.model} (size cap {args.size_cap}) to {args.out}")
    return 0


def _emit(reports: list[Report], as_json: bool) -> int:
    ok = all(r.ok for r in reports)
    if as_json:
        print(json.dumps({"ok": ok, "checks": [r.to_json() for r in reports]}, indent=2))
    else:
        for r in reports:
            print(r.format())
        print("PASS" if ok else "FAIL")
    return 0 if ok else 1


def cmd_check(args) -> int:
    try:
        data = presfile.parse(Path(args.file).read_text())
        if args.kind and data.kind != args.kind:
            raise SemanticError(f"file has kind {data.kind}, expected {args.kind}")
        presentation = presfile.load(Path(args.file).read_text(), Path(args.file).stem)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (SemanticError, OSError) as exc:
        print(f"semantic error: {exc}", file=sys.stderr)
        return 2
    max_size = args.max_size if args.max_size else presentation.max_size
    presentation.max_size = min(presentation.max_size, max_size)
    pool_size = min(max_size, 4)
    reports = [check_functoriality(presentation.carrier, min(pool_size, 3))]
    if data.kind == "entries-only":
        reports.append(check_entries_only(presentation, pool_size=pool_size))
        if args.derived_laws:
            reports.append(check_entries_only_derived(presentation, pool_size=pool_size))
        from cyclops.translate import eo_componential_to_algebraic
        from cyclops.algebraic import check_CA1, check_CA2

        algebraic = eo_componential_to_algebraic(presentation)
        reports.append(check_CA1(algebraic, full=args.full_ca1))
        reports.append(check_CA2(algebraic))
    else:
        reports.append(check_exchangeable_output(presentation, pool_size=pool_size))
        if args.derived_laws:
            reports.append(check_exchangeable_output_derived(presentation, pool_size=min(pool_size, 3)))
    return _emit(reports, args.json)


def cmd_translate(args) -> int:
    from cyclops import translate as tr
    from cyclops.algebraic import check_CA1, check_CA2, check_OA, check_D_axioms

    try:
        text = Path(args.file).read_text()
        data = presfile.parse(text)
        presentation = presfile.load(text, Path(args.file).stem)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (SemanticError, OSError) as exc:
        print(f"semantic error: {exc}", file=sys.stderr)
        return 2

    direction = args.direction
    reports: list[Report] = []
    try:
        if direction in ("eo2exo", "comp2alg", "alg2comp", "alg-eo2alg-exo"):
            if data.kind != "entries-only":
                raise SemanticError(f"direction {direction} needs an entries-only file")
        else:
            if data.kind != "exchangeable-output":
                raise SemanticError(f"direction {direction} needs an exchangeable-output file")

        if direction == "eo2exo":
            out_pres = tr.eo_to_exo(presentation)
            out_data = presfile.export_exchangeable_output(out_pres)
            if args.verify_roundtrip:
                reports.extend(tr.verify_eo_exo_roundtrip(presentation))
        elif direction == "exo2eo":
            out_pres = tr.exo_to_eo(presentation)
            out_data = presfile.export_entries_only(out_pres)
            if args.verify_roundtrip:
                reports.extend(tr.verify_exo_eo_roundtrip(presentation))
        elif direction in ("comp2alg", "alg2comp"):
            algebraic = tr.eo_componential_to_algebraic(presentation)
            if direction == "comp2alg":
                reports.append(check_CA1(algebraic))
                reports.append(check_CA2(algebraic))
            back = tr.eo_algebraic_to_componential(algebraic)
            back.max_size = presentation.max_size
            if direction == "alg2comp":
                reports.append(check_entries_only(back, pool_size=min(back.max_size, 3)))
            out_data = presfile.export_entries_only(back, n_atoms=len(data.atoms))
            if args.verify_roundtrip:
                rep = Report("roundtrip-tables")
                rep.check(out_data == data, "TABLES-EQUAL", {"file": args.file},
                          "translated tables", "original tables")
                reports.append(rep)
        elif direction == "alg-eo2alg-exo":
            algebraic = tr.eo_componential_to_algebraic(presentation)
            exo_alg = tr.alg_eo_to_alg_exo(algebraic)
            reports.append(check_OA(exo_alg.as_operad(), pool_size=min(exo_alg.max_size, 2)))
            reports.append(check_D_axioms(exo_alg, pool_size=min(exo_alg.max_size, 2)))
            out_pres = tr.exo_algebraic_to_componential(exo_alg)
            out_pres.max_size = exo_alg.max_size
            out_data = presfile.export_exchangeable_output(out_pres)
            if args.verify_roundtrip:
                back = tr.alg_exo_to_alg_eo(exo_alg)
                rep = Report("roundtrip-maps")
                check_map_equality("RHO-RECOVERED", back.rho, algebraic.rho,
                                   max_size=min(algebraic.max_size, 3), report=rep)
                check_map_equality("ETA2-RECOVERED", back.eta2, algebraic.eta2,
                                   max_size=min(algebraic.max_size, 3), report=rep)
                reports.append(rep)
        else:  # alg-exo2alg-eo
            exo_alg = tr.exo_componential_to_algebraic(presentation)
            eo_alg = tr.alg_exo_to_alg_eo(exo_alg)
            reports.append(check_CA1(eo_alg, pool_size=min(eo_alg.max_size, 2)))
            reports.append(check_CA2(eo_alg, pool_size=min(eo_alg.max_size, 2)))
            out_pres = tr.eo_algebraic_to_componential(eo_alg)
            out_pres.max_size = min(out_pres.max_size, presentation.max_size + 1)
            out_data = presfile.export_entries_only(out_pres, n_atoms=len(data.atoms))
            if args.verify_roundtrip:
                again = tr.alg_eo_to_alg_exo(eo_alg)
                rep = Report("roundtrip-maps")
                norm, j = tr.normalize_descent(exo_alg)
                check_map_equality("NU-RECOVERED", again.nu, norm.nu,
                                   max_size=min(exo_alg.max_size, 2), report=rep)
                check_map_equality("ETA1-RECOVERED", again.eta1, norm.eta1,
                                   max_size=min(exo_alg.max_size, 2), report=rep)
                reports.append(rep)
    except (SemanticError, ValueError) as exc:
        print(f"semantic error: {exc}", file=sys.stderr)
        return 2

    Path(args.out).write_text(presfile.render(out_data))
    print(f"wrote {direction} translation to {args.out}")
    code = _emit(reports, args.json) if reports else 0
    return code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cyclops",
                                     description="workbench for constant-free cyclic operads")
    sub = parser.add_subparsers(dest="command", required=True)

    zoo_p = sub.add_parser("zoo", help="export a built-in model to a presentation file")
    zoo_p.add_argument("model", choices=ZOO_MODELS)
    zoo_p.add_argument("out")
    zoo_p.add_argument("--size-cap", type=int, default=4)
    zoo_p.set_defaults(func=cmd_zoo)

    check_p = sub.add_parser("check", help="run the axiom suites on a presentation file")
    check_p.add_argument("file")
    check_p.add_argument("--kind", choices=presfile.KINDS)
    check_p.add_argument("--max-size", type=int)
    check_p.add_argument("--derived-laws", action="store_true")
    check_p.add_argument("--full-ca1", action="store_true")
    check_p.add_argument("--json", action="store_true")
    check_p.set_defaults(func=cmd_check)

    tr_p = sub.add_parser("translate", help="run a constructive translation on a file")
    tr_p.add_argument("file")
    tr_p.add_argument("out")
    tr_p.add_argument("--direction", choices=DIRECTIONS, required=True)
    tr_p.add_argument("--verify-roundtrip", action="store_true")
    tr_p.add_argument("--json", action="store_true")
    tr_p.set_defaults(func=cmd_translate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
