"""Command-line surface for the workbench.

Subcommands: dim, normal-form, eval, check-associator, extend-associator,
check-yb, distinguish, vassiliev-degree, delta-kernel, hilbert-table,
check-splitting.  Output is deterministic: fixed word order, rationals in
lowest terms.  ``--format structured`` emits one JSON object per result
with the fields {command, inputs, degrees, values}, rationals as strings.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import associator as assoc_mod
from . import invariants as inv_mod
from . import reps as reps_mod
from .quotient import PRESET_KINDS, build_graded_basis, preset_by_name
from .sdseries import SemidirectSeries
from .series import TruncatedSeries, parse_series
from .words import GroupRingElement, parse_word


def _common_flags(parser):
    parser.add_argument("--n", type=int, default=3, help="strand count (default 3)")
    parser.add_argument("--cap", type=int, default=3, help="truncation degree (default 3)")
    parser.add_argument(
        "--preset",
        choices=PRESET_KINDS,
        default="oriented_artin",
        help="relation preset for quotient commands",
    )
    parser.add_argument("--cache-dir", default=None, help="directory for persisted bases")
    parser.add_argument(
        "--format", choices=("text", "structured"), default="text", dest="format_"
    )


def _emit(args, command, inputs, degrees, values, text_lines):
    if args.format_ == "structured":
        obj = {"command": command, "inputs": inputs, "degrees": degrees, "values": values}
        print(json.dumps(obj, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _series_terms(series: TruncatedSeries) -> dict:
    return {
        series.alphabet.word_name(word) or "1": str(c) for word, c in series.terms()
    }


def _sd_values(image: SemidirectSeries) -> list:
    out = []
    for perm in sorted(image.terms):
        out.append({"perm": perm.one_line(), "terms": _series_terms(image.terms[perm])})
    return out


def _read_series_arg(args, cap) -> TruncatedSeries:
    if getattr(args, "series", None):
        text = args.series
    elif getattr(args, "infile", None):
        text = _read_series_file(args.infile)
    else:
        raise SystemExit("need --series or --in")
    alphabet = preset_by_name(args.preset, args.n).alphabet
    return parse_series(text, alphabet, cap)


def _read_series_file(path) -> str:
    with open(path) as handle:
        lines = [line for line in handle if not line.lstrip().startswith("#")]
    return " ".join(line.strip() for line in lines if line.strip())


def _read_assoc(args, cap) -> TruncatedSeries:
    if getattr(args, "assoc", None):
        text = _read_series_file(args.assoc)
        return parse_series(text, assoc_mod.AB, max(cap, _assoc_degree_hint(text, cap)))
    return assoc_mod.bootstrap_semi_associator(cap)


def _assoc_degree_hint(text, cap):
    # A series file may hold terms above the working cap; parse generously.
    longest = max((chunk.count(".") + 1 for chunk in text.split("*")[1:]), default=0)
    return max(cap, longest)


def cmd_dim(args):
    preset = preset_by_name(args.preset, args.n)
    basis = build_graded_basis(preset, args.cap, args.cache_dir)
    dims = [basis.dimension(k) for k in range(args.cap + 1)]
    _emit(
        args,
        "dim",
        {"preset": preset.key(), "n": args.n, "cap": args.cap},
        list(range(args.cap + 1)),
        [str(d) for d in dims],
        [f"{preset.key()} dimensions, degrees 0..{args.cap}: {dims}"],
    )


def cmd_normal_form(args):
    preset = preset_by_name(args.preset, args.n)
    basis = build_graded_basis(preset, args.cap, args.cache_dir)
    series = _read_series_arg(args, args.cap)
    nf = basis.normal_form(series)
    degrees = sorted(k for k in range(args.cap + 1) if nf.slices[k])
    _emit(
        args,
        "normal-form",
        {"preset": preset.key(), "n": args.n, "cap": args.cap, "series": series.text()},
        degrees,
        _series_terms(nf),
        [nf.text()],
    )


def cmd_eval(args):
    w = parse_word(args.word, args.n)
    if args.family == "welded":
        image = reps_mod.eval_welded(w, args.cap, cache_dir=args.cache_dir)
    elif args.family == "drinfeld":
        image = reps_mod.eval_drinfeld(w, _read_assoc(args, args.cap), args.cap, cache_dir=args.cache_dir)
    else:
        image = reps_mod.eval_rho3(w, _read_assoc(args, args.cap), args.cap, cache_dir=args.cache_dir)
    degrees = sorted({k for t in image.terms.values() for k in range(args.cap + 1) if t.slices[k]})
    _emit(
        args,
        "eval",
        {"family": args.family, "n": args.n, "cap": args.cap, "word": args.word},
        degrees,
        _sd_values(image),
        [image.text()],
    )


def cmd_check_associator(args):
    phi_text = _read_series_file(args.infile) if args.infile else args.series
    if phi_text is None:
        raise SystemExit("need --series or --in")
    phi = parse_series(phi_text, assoc_mod.AB, max(args.cap, _assoc_degree_hint(phi_text, args.cap)))
    axioms = [ax.strip() for ax in args.axioms.split(",") if ax.strip()]
    values = {}
    lines = []
    for ax in axioms:
        result = assoc_mod.check_axiom(phi, ax, args.cap, args.cache_dir)
        values[ax] = {
            "passed": result.passed,
            "first_failure_degree": result.first_failure_degree,
            "residual": result.residual.text() if result.residual is not None else "0",
        }
        status = "pass" if result.passed else f"FAIL at degree {result.first_failure_degree}"
        lines.append(f"{ax}: {status}")
        if not result.passed:
            lines.append(f"  residual: {result.residual.text()}")
    _emit(
        args,
        "check-associator",
        {"cap": args.cap, "axioms": axioms, "series": phi.text()},
        list(range(args.cap + 1)),
        values,
        lines,
    )


def cmd_extend_associator(args):
    phi_text = _read_series_file(args.from_file)
    phi = parse_series(phi_text, assoc_mod.AB, _assoc_degree_hint(phi_text, 1))
    kernel_dims = {}
    lines = []
    prev = None
    while phi.cap < args.to_degree:
        try:
            step = assoc_mod.extend_semi_associator(phi, args.cache_dir)
        except assoc_mod.AssociatorError:
            if prev is None:
                raise
            phi = prev.extended(assoc_mod._revised_coordinates(prev, args.cache_dir))
            lines.append(f"degree {prev.degree}: revised within the solution set")
            step = assoc_mod.extend_semi_associator(phi, args.cache_dir)
        kernel_dims[step.degree] = step.kernel_dimension
        lines.append(
            f"degree {step.degree}: solution found, kernel dimension {step.kernel_dimension}"
        )
        phi = step.extended()
        prev = step
    with open(args.out, "w") as handle:
        handle.write(f"# semi-associator to degree {phi.cap}\n")
        handle.write(phi.text() + "\n")
    lines.append(f"wrote {args.out}")
    _emit(
        args,
        "extend-associator",
        {"from": args.from_file, "to_degree": args.to_degree},
        sorted(kernel_dims),
        {str(k): v for k, v in kernel_dims.items()},
        lines,
    )


def cmd_check_yb(args):
    psi_text = _read_series_file(args.infile) if args.infile else args.series
    if psi_text is None:
        raise SystemExit("need --series or --in")
    psi = parse_series(psi_text, assoc_mod.AB, max(args.cap, _assoc_degree_hint(psi_text, args.cap)))
    result = assoc_mod.check_yang_baxter(psi, args.cap, args.cache_dir)
    status = "pass" if result.passed else f"FAIL at degree {result.first_failure_degree}"
    _emit(
        args,
        "check-yb",
        {"cap": args.cap, "series": psi.text()},
        list(range(args.cap + 1)),
        {"passed": result.passed, "first_failure_degree": result.first_failure_degree},
        [f"yang-baxter: {status}"],
    )


def cmd_distinguish(args):
    w1 = parse_word(args.w1, args.n)
    w2 = parse_word(args.w2, args.n)
    report = inv_mod.distinguish(w1, w2, args.cap, args.cache_dir)
    if report.images_equal_to_cap:
        headline = f"images equal to cap {args.cap}"
    else:
        headline = f"images differ first at degree {report.first_difference_degree}"
    _emit(
        args,
        "distinguish",
        {"n": args.n, "cap": args.cap, "w1": args.w1, "w2": args.w2},
        list(range(args.cap + 1)),
        {
            "first_difference_degree": report.first_difference_degree,
            "oracle_equal": report.oracle_equal,
        },
        [headline, f"oracle: words {'equal' if report.oracle_equal else 'distinct'}"],
    )


def cmd_vassiliev_degree(args):
    xi = GroupRingElement.parse(args.element, args.n)
    report = inv_mod.vassiliev_degree(xi, args.cap, cache_dir=args.cache_dir)
    order = "above cap" if report.above_cap else str(report.order)
    _emit(
        args,
        "vassiliev-degree",
        {"n": args.n, "cap": args.cap, "element": args.element},
        list(range(args.cap + 1)),
        {"order": report.order, "image": _sd_values(report.image)},
        [f"order: {order}", f"image: {report.image.text()}"],
    )


def cmd_delta_kernel(args):
    degrees = list(range(1, args.cap + 1))
    values = {}
    lines = []
    for k in degrees:
        report = inv_mod.delta_kernel(args.n, k, args.cache_dir, force=args.force)
        values[str(k)] = {
            "kernel_dimension": report.kernel_dimension,
            "domain_dimension": report.domain_dimension,
        }
        lines.append(
            f"degree {k}: kernel dimension {report.kernel_dimension} "
            f"(domain dimension {report.domain_dimension})"
        )
    _emit(
        args,
        "delta-kernel",
        {"n": args.n, "cap": args.cap},
        degrees,
        values,
        lines,
    )


def cmd_hilbert_table(args):
    table = inv_mod.hilbert_table(args.n, args.cap, args.cache_dir)
    lines = [f"n = {args.n}, degrees 0..{args.cap}"]
    values = {}
    for name, row in table.rows():
        lines.append(f"{name:>25}: {row}")
        values[name] = [str(v) for v in row]
    _emit(
        args,
        "hilbert-table",
        {"n": args.n, "cap": args.cap},
        list(range(args.cap + 1)),
        values,
        lines,
    )


def cmd_check_splitting(args):
    report = inv_mod.check_splitting_identity(
        args.n, args.cap, args.samples, args.seed, args.cache_dir
    )
    lines = [f"splitting identity: {'pass' if report.passed else 'FAIL'} ({len(report.cases)} cases)"]
    for case in report.cases:
        if not case.passed:
            lines.append(
                f"  FAIL {case.description}: order {case.order_plain} vs {case.order_twisted}"
            )
    _emit(
        args,
        "check-splitting",
        {"n": args.n, "cap": args.cap, "samples": args.samples, "seed": args.seed},
        list(range(args.cap + 1)),
        {
            "passed": report.passed,
            "cases": [
                {
                    "description": case.description,
                    "order_plain": case.order_plain,
                    "order_twisted": case.order_twisted,
                    "passed": case.passed,
                }
                for case in report.cases
            ],
        },
        lines,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="braidalg",
        description="Exact computations in braid and welded-braid algebras over Q.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dim", help="graded dimensions of a quotient preset")
    _common_flags(p)
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("normal-form", help="canonical representative in a quotient")
    _common_flags(p)
    p.add_argument("--series", help="series in the text grammar")
    p.add_argument("--in", dest="infile", help="file holding the series")
    p.set_defaults(func=cmd_normal_form)

    p = sub.add_parser("eval", help="evaluate a representation on a word")
    _common_flags(p)
    p.add_argument("--family", choices=("welded", "drinfeld", "rho3"), required=True)
    p.add_argument("--word", required=True, help="word in the token grammar")
    p.add_argument(
        "--assoc",
        help="series file for the associator-driven families "
        "(default: the bootstrapped semi-associator at the working cap)",
    )
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("check-associator", help="test the semi-associator axioms")
    _common_flags(p)
    p.add_argument("--axioms", default="AE,AS,H1,H3,P")
    p.add_argument("--series")
    p.add_argument("--in", dest="infile")
    p.set_defaults(func=cmd_check_associator)

    p = sub.add_parser("extend-associator", help="extend a semi-associator degree by degree")
    _common_flags(p)
    p.add_argument("--from", dest="from_file", required=True)
    p.add_argument("--to-degree", dest="to_degree", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_extend_associator)

    p = sub.add_parser("check-yb", help="Yang-Baxter test for the 3-strand family")
    _common_flags(p)
    p.add_argument("--series")
    p.add_argument("--in", dest="infile")
    p.set_defaults(func=cmd_check_yb)

    p = sub.add_parser("distinguish", help="separate welded words by truncated invariants")
    _common_flags(p)
    p.add_argument("--w1", required=True)
    p.add_argument("--w2", required=True)
    p.set_defaults(func=cmd_distinguish)

    p = sub.add_parser("vassiliev-degree", help="filtration order of a group-ring element")
    _common_flags(p)
    p.add_argument("--element", required=True, help="group-ring grammar, e.g. '1*[sig1] - 1*[s1]'")
    p.set_defaults(func=cmd_vassiliev_degree)

    p = sub.add_parser("delta-kernel", help="kernel of the chord-to-oriented comparison map")
    _common_flags(p)
    p.add_argument(
        "--force", action="store_true", help="run even when a slice exceeds the word limit"
    )
    p.set_defaults(func=cmd_delta_kernel)

    p = sub.add_parser("hilbert-table", help="dimension table, chord vs oriented")
    _common_flags(p)
    p.set_defaults(func=cmd_hilbert_table)

    p = sub.add_parser("check-splitting", help="permutation factors preserve vanishing order")
    _common_flags(p)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_check_splitting)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
