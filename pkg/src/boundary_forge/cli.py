"""boundary-forge command line.

Exit codes: 0 ok, 1 verification failure, 2 schema error, 3 synthesis or
domain error, 4 I/O error.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

import numpy as np

from . import io
from .dynamics import simulate
from .errors import BoundaryForgeError
from .force import Duffing, eval_force
from .synthesis import (
    BranchStatus,
    Numerics,
    _roundtrip,
    enumerate_configurations,
    sample_branch,
)
from .verify import check_branch, check_table

log = logging.getLogger("boundary_forge")

EXIT_OK, EXIT_VERIFY, EXIT_SCHEMA, EXIT_SYNTH, EXIT_IO = 0, 1, 2, 3, 4

# panel letters for the softening Duffing family; the point configuration is shared
DEMO_PANELS = {"Y11": "a", "Y12": "b", "Y14": "c", "Y21": "d", "Y22": "e", "Y24": "f", "Y13=Y23": "g"}


def _n_samples(args, numerics: Numerics) -> int:
    return args.samples if args.samples is not None else numerics.n_samples


def _design_rows(spec, bid, n, numerics):
    table = sample_branch(spec, bid, n, numerics)
    x, y, u = table.T
    fr = -_roundtrip(spec, y, x)
    return np.column_stack([x, y, u, fr])


def _domain_dict(dom):
    return {
        "lo": dom.lo,
        "hi": dom.hi,
        "lo_closed": dom.lo_closed,
        "hi_closed": dom.hi_closed,
        "lo_kind": dom.lo_kind,
        "hi_kind": dom.hi_kind,
    }


def cmd_design(args) -> int:
    sf = io.load_spec(args.config)
    spec, bid = sf.branch_design(args.branch)
    rows = _design_rows(spec, bid, _n_samples(args, sf.numerics), sf.numerics)
    io.write_csv(args.out, ["X", "Y", "U", "Fr"], rows)
    log.info("wrote %d rows of %s to %s", len(rows), bid.name, args.out)
    return EXIT_OK


def _census_report(census, force_doc, k_mag, delta_mag, rod_length, out_dir: Path, n: int) -> dict:
    records = []
    for name, br in census.branches.items():
        rec = {
            "name": name,
            "k_eff": br.spec.k_eff,
            "delta": br.spec.delta,
            "status": br.status.value,
            "domain": _domain_dict(br.domain),
            "csv": None,
        }
        if br.status is BranchStatus.NON_DEGENERATE:
            rows = _design_rows(br.spec, br.id, n, br.numerics)
            io.write_csv(out_dir / f"{name}.csv", ["X", "Y", "U", "Fr"], rows)
            rec["csv"] = f"{name}.csv"
        records.append(rec)
    return {
        "force": force_doc,
        "k_mag": k_mag,
        "delta_mag": delta_mag,
        "rod_length": rod_length,
        "potential_class": census.potential_class.value,
        "strict_count": census.strict_count,
        "lenient_count": census.lenient_count,
        "branches": records,
    }


def _force_doc(force) -> dict:
    if isinstance(force, Duffing):
        return {"type": "duffing", "k3": force.k3}
    if hasattr(force, "coeffs"):
        return {"type": "polynomial", "coeffs": list(force.coeffs)}
    return {"type": "tabulated", "samples": [list(s) for s in zip(force.x, force.p)]}


def cmd_enumerate(args) -> int:
    sf = io.load_spec(args.config)
    k_mag, delta_mag = abs(sf.k_eff), abs(sf.delta)
    sf.design()  # reject K = 0 and |delta| >= L up front
    census = enumerate_configurations(sf.force, k_mag, delta_mag, sf.rod_length, sf.numerics)
    out = Path(args.out)
    report = _census_report(census, _force_doc(sf.force), k_mag, delta_mag, sf.rod_length, out,
                            _n_samples(args, sf.numerics))
    io.write_json(out / "census.json", report)
    print(f"strict_count={census.strict_count} lenient_count={census.lenient_count} "
          f"potential_class={census.potential_class.value}")
    return EXIT_OK


def cmd_simulate(args) -> int:
    sf = io.load_spec(args.config)
    if sf.sim is None:
        raise io.SchemaError("simulate needs a 'sim' block in the design file")
    spec, bid = sf.branch_design(args.branch)
    result = simulate(spec, bid, sf.sim, sf.numerics)
    footer = f"termination={result.termination.value}"
    if result.event_time is not None:
        footer += f" t_event={io.fmt(result.event_time)}"
    io.write_csv(args.out, ["t", "X", "V", "E"], result.rows(), footer=footer)
    log.info("%s after %d samples", footer, len(result.t))
    return EXIT_OK


def cmd_verify(args) -> int:
    sf = io.load_spec(args.config)
    report = {"tolerance": args.tol, "branches": []}
    if args.table:
        spec, bid = sf.branch_design(args.branch)
        header, table = io.read_csv(args.table)
        if header[:4] != ["X", "Y", "U", "Fr"] or table.shape[0] == 0:
            raise io.SchemaError(f"{args.table}: expected columns X,Y,U,Fr")
        checks = check_table(spec, bid, table, args.tol)
        report["branches"].append({"name": bid.name, "checks": [c.as_dict() for c in checks]})
    else:
        sf.design()
        census = enumerate_configurations(sf.force, abs(sf.k_eff), abs(sf.delta), sf.rod_length, sf.numerics)
        n = _n_samples(args, sf.numerics)
        for br in census.live():
            checks = check_branch(br.spec, br.id, args.tol, n, sf.numerics)
            report["branches"].append({"name": br.name, "checks": [c.as_dict() for c in checks]})

    all_checks = [c for b in report["branches"] for c in b["checks"]]
    failed = [c for c in all_checks if not c["pass"]]
    worst = max(all_checks, key=lambda c: (not c["pass"], c["residual"] / c["bound"])) if all_checks else None
    report["pass"] = not failed
    report["worst"] = worst
    text = json.dumps(io.jsonable(report), indent=2)
    if args.out:
        io.write_json(args.out, report)
    print(text)
    if failed:
        print(f"verification FAILED: {worst['check']} residual {worst['residual']:.3e}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_duffing_demo(args) -> int:
    force = Duffing(-5000.0)
    k_mag, delta_mag, L = 100.0, 0.01, args.rod_length
    numerics = Numerics()
    census = enumerate_configurations(force, k_mag, delta_mag, L, numerics)
    out = Path(args.out)
    n = args.samples if args.samples is not None else numerics.n_samples
    report = _census_report(census, _force_doc(force), k_mag, delta_mag, L, out, n)

    point = [b for b in census.branches.values() if b.status is BranchStatus.DEGENERATE_POINT]
    if point:
        merged = "=".join(b.name for b in point)
        io.write_csv(out / f"{merged.replace('=', '_')}.csv", ["X", "Y", "U", "Fr"], [[0.0, 0.0, 0.0, 0.0 - eval_force(force, 0.0)]])
        for rec in report["branches"]:
            if rec["status"] == BranchStatus.DEGENERATE_POINT.value:
                rec["csv"] = f"{merged.replace('=', '_')}.csv"
    configs = []
    for b in census.live():
        configs.append({"panel": DEMO_PANELS.get(b.name), "branches": [b.name], "k_eff": b.spec.k_eff,
                        "delta": b.spec.delta, "half_width": 0.5 * b.domain.width})
    if point:
        configs.append({"panel": DEMO_PANELS.get("=".join(b.name for b in point)),
                        "branches": [b.name for b in point], "k_eff": point[0].spec.k_eff, "delta": 0.0,
                        "half_width": 0.0})
    report["configurations"] = sorted(configs, key=lambda c: c["panel"] or "~")
    io.write_json(out / "census.json", report)
    print(f"strict_count={census.strict_count} lenient_count={census.lenient_count}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="boundary-forge",
        description="Synthesize roller tracks that turn a linear spring into a target nonlinear stiffness.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, out_required=True):
        p.add_argument("--config", required=True, help="JSON design file")
        p.add_argument("--out", required=out_required, help="output file or directory")
        p.add_argument("--samples", type=int, default=None, help="samples per branch (default 1001)")

    p = sub.add_parser("design", help="write the track of one branch as X,Y,U,Fr CSV")
    common(p)
    p.add_argument("--branch", default=None, help="Y11..Y24 (default: branch through Y(0)=delta)")
    p.set_defaults(func=cmd_design)

    p = sub.add_parser("enumerate", help="census of all eight candidate branches")
    common(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("simulate", help="free vibration on one branch, t,X,V,E CSV")
    common(p)
    p.add_argument("--branch", default=None)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="check energy identity, symmetry, force round trip")
    common(p, out_required=False)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--table", default=None, help="re-verify an X,Y,U,Fr CSV instead of resynthesizing")
    p.add_argument("--branch", default=None, help="branch the table belongs to")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("duffing-demo", help="softening Duffing family (k3=-5000, |K|=100, |delta|=0.01)")
    p.add_argument("--out", required=True)
    p.add_argument("--rod-length", type=float, default=0.05)
    p.add_argument("--samples", type=int, default=None)
    p.set_defaults(func=cmd_duffing_demo)
    return parser


def _configure_logging() -> None:
    level = os.environ.get("BOUNDARY_FORGE_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")


def main(argv=None) -> int:
    _configure_logging()
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except io.SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except (BoundaryForgeError, ValueError) as exc:
        print(f"synthesis error: {exc}", file=sys.stderr)
        return EXIT_SYNTH
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
