"""Command-line front end: scenario reports, figures, and the raw engine.

Subcommands ``square | kite | rectangle | trapezoid | all`` run the
classification scenarios and exit nonzero if any oracle check fails;
``groebner`` exposes the basis engine on polynomial text files.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from decimal import Decimal
from fractions import Fraction

from vortexsym.groebner import Ideal, buchberger, eliminate
from vortexsym.ratpoly import Poly, VarRegistry, grevlex, lex
from vortexsym.scenarios import run_kite, run_rectangle, run_square, run_trapezoid
from vortexsym.trigvortex import SCENARIOS, Configuration

SCENARIO_ORDER = ("kite", "rectangle", "square", "trapezoid")

# representative angle for each family's figure
FIGURE_THETA2 = {
    "square": math.pi / 2,
    "kite": 2 * math.pi / 3,
    "rectangle": math.pi / 4,
    "trapezoid": 0.687197,
}


def _parse_fraction(text):
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(Decimal(text))


def _parse_mu(text):
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("--mu needs four comma-separated rationals")
    mus = tuple(_parse_fraction(p) for p in parts)
    if any(m == 0 for m in mus):
        raise argparse.ArgumentTypeError("circulation parameters must be nonzero")
    return mus


def _parse_eps(text):
    eps = Fraction(Decimal(text))
    if eps <= 0:
        raise argparse.ArgumentTypeError("--eps must be positive")
    return eps


def build_parser():
    parser = argparse.ArgumentParser(
        prog="vortexsym",
        description="Symmetric relative equilibria of the (1+4)-vortex problem,"
        " re-derived in exact arithmetic.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def scenario_parser(name, with_mu=True):
        p = sub.add_parser(name, help=f"run the {name} classification")
        p.add_argument("--json", metavar="PATH", help="write the report as JSON")
        p.add_argument("--svg", metavar="DIR", help="write a configuration figure")
        if with_mu:
            p.add_argument(
                "--mu",
                type=_parse_mu,
                default=None,
                help="four circulation parameters, e.g. 1,2,1,2 or 3/2,1,3/2,1",
            )
        p.add_argument(
            "--eps",
            type=_parse_eps,
            default=Fraction(1, 10**9),
            help="root enclosure width (default 1e-9)",
        )
        p.add_argument(
            "--check-appendix",
            action="store_true",
            help="include the full coefficient-table and line-count oracles",
        )
        return p

    for name in ("square", "kite", "rectangle", "trapezoid", "all"):
        scenario_parser(name, with_mu=name != "all")

    g = sub.add_parser("groebner", help="compute a reduced basis from a file")
    g.add_argument("--in", dest="infile", required=True, metavar="FILE")
    g.add_argument("--vars", required=True, help="comma-separated variable names")
    g.add_argument("--order", choices=("lex", "grevlex"), default="lex")
    g.add_argument("--eliminate", default=None, help="comma-separated variables to drop")
    g.add_argument("--json", metavar="PATH", help="write the basis as JSON")
    return parser


def _run_scenario(name, args):
    eps = getattr(args, "eps", Fraction(1, 10**9))
    mus = getattr(args, "mu", None)
    if name == "square":
        return run_square(mus=mus)
    if name == "kite":
        return run_kite(mus=mus, eps=eps)
    if name == "rectangle":
        return run_rectangle(mus=mus, eps=eps)
    if name == "trapezoid":
        return run_trapezoid(eps=eps, check_appendix=args.check_appendix)
    raise ValueError(name)


def _print_report(report, stream):
    print(f"== {report.scenario} ==", file=stream)
    if report.conditions:
        print("conditions:", "; ".join(report.conditions), file=stream)
    for root in report.roots:
        theta = "" if root.theta2 is None else f"  theta2 = {root.theta2:+.6f}"
        print(
            f"  root {root.decimal:+.6f} (width {root.width:.2e}){theta}",
            file=stream,
        )
    verdict = report.stability.get("verdict")
    if verdict:
        print(f"stability: {verdict}", file=stream)
    for check in report.oracle_checks:
        print(f"[{check.status.upper():4s}] {check.name}: {check.detail}", file=stream)
    print(file=stream)


def render_json(document):
    return json.dumps(document, indent=2, sort_keys=True) + "\n"


def emit_svg(config, path):
    """Write an SVG figure: unit circle, dominant vortex, labelled quadrilateral."""
    order = sorted(range(4), key=lambda i: config.thetas[i] % (2 * math.pi))
    points = [
        (math.cos(t), -math.sin(t)) for t in config.thetas
    ]  # y flipped for screen coordinates
    lines = [
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        'viewBox="-1.45 -1.45 2.9 2.9" width="360" height="360">',
        '<circle cx="0" cy="0" r="1" fill="none" stroke="#888" stroke-width="0.015"/>',
        '<circle cx="0" cy="0" r="0.06" fill="#222"/>',
    ]
    edge = " ".join(f"{points[i][0]:.5f},{points[i][1]:.5f}" for i in order)
    lines.append(
        f'<polygon points="{edge}" fill="none" stroke="#1f77b4" stroke-width="0.02"/>'
    )
    for i, (x, y) in enumerate(points):
        lines.append(f'<circle cx="{x:.5f}" cy="{y:.5f}" r="0.045" fill="#d62728"/>')
        lx, ly = 1.18 * x, 1.18 * y
        lines.append(
            f'<text x="{lx:.5f}" y="{ly + 0.05:.5f}" font-size="0.16" '
            f'text-anchor="middle">{i + 1}</text>'
        )
    lines.append("</svg>")
    with open(path, "w") as handle:
        handle.write("\n".join(lines) + "\n")


def _figure_config(name, mus=None):
    scenario = SCENARIOS[name]
    theta2 = FIGURE_THETA2[name]
    thetas = scenario.angles(theta2)
    if mus is None:
        mus = (1.0, 1.0, 1.0, 1.0)
    return Configuration(tuple(thetas), tuple(float(m) for m in mus))


def _scenario_command(name, args, stream):
    names = SCENARIO_ORDER if name == "all" else (name,)
    reports = []
    for scenario_name in names:
        try:
            report = _run_scenario(scenario_name, args)
        except ValueError as err:
            print(f"error: {err}", file=sys.stderr)
            return 2
        reports.append(report)
        _print_report(report, stream)
        if args.svg:
            import os

            os.makedirs(args.svg, exist_ok=True)
            mus = getattr(args, "mu", None)
            config = _figure_config(scenario_name, mus)
            emit_svg(config, os.path.join(args.svg, f"{scenario_name}.svg"))
    if args.json:
        if len(reports) == 1:
            document = reports[0].to_document()
        else:
            document = {"scenarios": [r.to_document() for r in reports]}
        with open(args.json, "w") as handle:
            handle.write(render_json(document))
    return 0 if all(r.passed() for r in reports) else 1


def _groebner_command(args, stream):
    names = [v.strip() for v in args.vars.split(",") if v.strip()]
    try:
        registry = VarRegistry(names)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    polys = []
    try:
        with open(args.infile) as handle:
            for line in handle:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                polys.append(Poly.parse(registry, line))
    except OSError as err:
        print(f"error: cannot read {args.infile}: {err}", file=sys.stderr)
        return 2
    except (ValueError, KeyError) as err:
        print(f"error: malformed polynomial: {err}", file=sys.stderr)
        return 2
    if not polys:
        print("error: no polynomials in input", file=sys.stderr)
        return 2
    order = lex(registry) if args.order == "lex" else grevlex(registry)
    dropped = []
    if args.eliminate:
        dropped = [v.strip() for v in args.eliminate.split(",") if v.strip()]
        for v in dropped:
            if not registry.contains(v):
                print(f"error: cannot eliminate unknown variable {v!r}", file=sys.stderr)
                return 2
        gb = eliminate(Ideal.of(*polys), dropped)
    else:
        gb = buchberger(Ideal.of(*polys), order)
    basis_text = [p.format(gb.order) for p in gb.polys]
    for text in basis_text:
        print(text, file=stream)
    document = {
        "basis": basis_text,
        "order": args.order if not dropped else f"elimination+{args.order}",
        "eliminated": dropped,
    }
    if args.json:
        with open(args.json, "w") as handle:
            handle.write(render_json(document))
    else:
        print(render_json(document), end="", file=stream)
    return 0


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    stream = sys.stdout
    if args.command == "groebner":
        return _groebner_command(args, stream)
    return _scenario_command(args.command, args, stream)


if __name__ == "__main__":
    sys.exit(main())
