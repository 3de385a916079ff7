"""
Command-line front end.

    dds potential    [--case NAME | --config FILE] [--which U_B,V_minus,...]
    dds spectrum     [--case NAME | --config FILE]
    dds wavefunction [--case NAME | --config FILE] --state minus_n --n 1
    dds verify       [--case NAME ...]
    dds algebra      [--case NAME | --config FILE]

Exit codes: 0 all checks passed, 1 a check failed, 2 usage or config error.
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import algebra as alg
from . import pipeline as pl
from . import scarf as sc
from .deviations import printed_effective_potential, printed_partner
from .errors import DDSError
from .grid import MIN_POINTS

log = logging.getLogger("dds")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
POTENTIALS = ("U_A", "U_B", "U_A_printed", "U_B_printed", "V_minus", "V_plus",
              "V_minus_printed", "V_plus_printed", "V_casimir", "V_casimir_printed")
STATES = sc.EIGEN_KINDS
FLOAT_FMT = "%.17g"


class UsageError(Exception):
    pass


# --------------------------------------------------------------------------
# configuration
# --------------------------------------------------------------------------

def _positive(name, v, kind=float):
    try:
        v = kind(v)
    except (TypeError, ValueError):
        raise UsageError(f"{name} must be a number, got {v!r}") from None
    if not v > 0:
        raise UsageError(f"{name} must be strictly positive, got {v}")
    return v


def load_config(path):
    """Read a JSON run configuration."""
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"config {path} is not valid JSON: {exc.msg} (line {exc.lineno})") from None
    if not isinstance(cfg, dict):
        raise UsageError("config must be a JSON object")
    return cfg


def build_case(args):
    """A :class:`dds.pipeline.MatchedCase` from ``--case`` / ``--config`` plus flags.

    Config keys: ``model`` (``e``, ``k``, ``q`` and optionally ``K1``, ``K2``),
    ``extension`` (``r1`` and optionally ``C2``), ``branch``, ``grid``
    (``n_points``, ``half_width``) and ``tolerances``.  When ``K1``, ``K2``
    and ``C2`` are all given the model is used as is; otherwise it is
    matched.
    """
    cfg = load_config(args.config) if args.config else {}
    if args.case and cfg:
        raise UsageError("give either --case or --config, not both")
    name = args.case or cfg.get("name") or ("config" if cfg else "scarf-q1")
    if cfg:
        model = cfg.get("model")
        if not isinstance(model, dict) or not {"e", "k", "q"} <= set(model):
            raise UsageError("config needs model.e, model.k and model.q")
        ext = cfg.get("extension", {})
        spec = pl.CaseSpec(float(model["e"]), float(model["k"]), float(model["q"]),
                           cfg.get("branch", "upper"), float(ext.get("r1", 1.0)))
        explicit = None
        keys = ("K1" in model, "K2" in model, "C2" in ext)
        if all(keys):
            explicit = {"K1": float(model["K1"]), "K2": float(model["K2"]), "C2": float(ext["C2"])}
        elif any(keys):
            raise UsageError("give all of model.K1, model.K2, extension.C2 or none of them")
        grid = cfg.get("grid", {})
        for k, v in cfg.get("tolerances", {}).items():
            _positive(f"tolerances.{k}", v)
    else:
        try:
            spec = pl.case_spec(name)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        explicit, grid = None, {}
    if args.branch:
        spec = pl.CaseSpec(spec.e, spec.k, spec.q, args.branch, spec.r1)
    try:
        sc.Branch.parse(spec.branch)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    n = args.grid_n if args.grid_n is not None else grid.get("n_points", pl.ORACLE_N)
    n = _positive("grid n", n, int)
    if n < MIN_POINTS:
        raise UsageError(f"grid needs at least {MIN_POINTS} points, got {n}")
    box = args.box if args.box is not None else grid.get("half_width")
    if box is not None:
        box = _positive("box half-width", box)
    if args.branch is None and not cfg:
        return pl.get_case(name, n, box)
    return pl.MatchedCase(spec, n_points=n, half_width=box, name=name, explicit=explicit)


# --------------------------------------------------------------------------
# output
# --------------------------------------------------------------------------

def to_jsonable(x):
    """Recursively convert complex and numpy values; complex becomes ``{re, im}``."""
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return [to_jsonable(v) for v in x.tolist()]
    if isinstance(x, (complex, np.complexfloating)):
        return {"re": to_jsonable(float(x.real)), "im": to_jsonable(float(x.imag))}
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else str(x)
    if hasattr(x, "value"):  # enums
        return x.value
    return x


def write_json(path, obj):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(to_jsonable(obj), indent=2, sort_keys=True) + "\n")
    return path


def _fmt(v):
    return FLOAT_FMT % v


def write_csv(path, header, rows):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([_fmt(v) if isinstance(v, float) else v for v in r])
    return path


def field_rows(z, values, with_abs=False):
    v = np.asarray(values, dtype=complex)
    for zi, vi in zip(np.asarray(z, dtype=float), v):
        row = [float(zi), float(vi.real), float(vi.imag)]
        if with_abs:
            row.append(float(abs(vi)))
        yield row


def _out_dir(args):
    return Path(args.out or ".")


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------

def potential_values(case: pl.MatchedCase, which, z):
    p, ext, sp = case.params, case.ext, case.spectrum
    if which in ("U_A", "U_B"):
        return sc.effective_potential(which[-1], p, z)
    if which in ("U_A_printed", "U_B_printed"):
        return printed_effective_potential(which[2], p, z)
    if which == "V_minus":
        return case.pair.v_minus(z)
    if which == "V_plus":
        return case.pair.v_plus(z)
    if which in ("V_minus_printed", "V_plus_printed"):
        return printed_partner(which.split("_")[1], ext, z)
    mu = complex(sp.lambda1 + 0.5)
    r = alg.restricted_realization(ext.r1, ext.r2, mu)
    if which == "V_casimir":
        return alg.casimir_potential(mu, r, z)
    if which == "V_casimir_printed":
        return alg.printed_casimir_potential(mu, z, r.params["q"], ext.r1, ext.r2)
    raise UsageError(f"unknown potential {which!r}; choose from {', '.join(POTENTIALS)}")


def cmd_potential(args):
    case = build_case(args)
    which = [w.strip() for w in args.which.split(",") if w.strip()]
    for w in which:
        if w not in POTENTIALS:
            raise UsageError(f"unknown potential {w!r}; choose from {', '.join(POTENTIALS)}")
    z = case.grid.points
    out = _out_dir(args)
    for w in which:
        path = write_csv(out / f"potential_{w}.csv", ["z", "re", "im"], field_rows(z, potential_values(case, w, z)))
        print(path)
    return EXIT_OK


def spectrum_rows(case: pl.MatchedCase, report):
    rows = []
    for lv in report["analytic"]["levels"]:
        rows.append([lv["n"], lv["E2"], lv["E"], "analytic14"])
    alv = report["analytic"].get("algebra_levels")
    if isinstance(alv, list):
        for lv in alv:
            rows.append([lv["n"], lv["E2"], lv["E"], "analytic38"])
    for i, b in enumerate(report["oracle"]["minus"]):
        e2 = complex(b["E2"])
        rows.append([i, e2, complex(np.sqrt(e2)), "oracle"])
    out = []
    for n, e2, e, src in rows:
        e2, e = complex(e2), complex(e)
        out.append([n, float(e2.real), float(e2.imag), float(e.real), float(e.imag), src])
    return out


def cmd_spectrum(args):
    case = build_case(args)
    crit = [pl.check_pt_reality([case]), pl.check_isospectral([case])]
    an = pl._lowest_analytic(case)
    rep = pl.orc.compare_spectra(an, case.oracle_minus[1], pl.LEVEL_TOL)
    report = pl.case_report(case, crit)
    report["oracle"]["comparison"] = rep.to_dict()
    out = _out_dir(args)
    print(write_json(out / f"spectrum_{case.name}.json", report))
    print(write_csv(out / f"spectrum_{case.name}.csv", ["n", "re_E2", "im_E2", "re_E", "im_E", "source"],
                    spectrum_rows(case, report)))
    return EXIT_OK


def cmd_wavefunction(args):
    case = build_case(args)
    if args.state not in STATES:
        raise UsageError(f"unknown state {args.state!r}; choose from {', '.join(STATES)}")
    grid = case.grid
    f = sc.eigenfunction_field(args.state, args.n, case.params, case.spectrum, grid, case.ext)
    tag = args.state if args.state == "ground_w1" else f"{args.state.split('_')[0]}_{args.n}"
    print(write_csv(_out_dir(args) / f"wavefunction_{tag}.csv", ["z", "re", "im", "abs"],
                    field_rows(f.z, f.values, with_abs=True)))
    return EXIT_OK


def cmd_verify(args):
    names = [args.case] if args.case else list(pl.CASES)
    for n in names:
        if n not in pl.CASES:
            raise UsageError(f"unknown case {n!r}; choose from {sorted(pl.CASES)}")
    n_points = _positive("grid n", args.grid_n, int) if args.grid_n is not None else pl.ORACLE_N
    box = _positive("box half-width", args.box) if args.box is not None else None
    results, reports = pl.run_acceptance(tuple(names), n_points, box)
    for r in results:
        print(r.line())
    doc = {"criteria": [r.to_dict() for r in results], "cases": reports,
           "passed": all(r.passed for r in results)}
    print(write_json(_out_dir(args) / "verify_report.json", doc))
    return EXIT_OK if doc["passed"] else EXIT_FAIL


def cmd_algebra(args):
    case = build_case(args)
    diag = pl.algebra_diagnostics(case)
    try:
        q, mu, levels, info = pl.algebra_levels(case)
        diag["levels"] = [{"n": lv.n, "E2": lv.e_squared, "E": lv.energy} for lv in levels]
        diag["identification"] = {"q": q, "mu": mu, **info}
    except DDSError as exc:
        diag["levels"] = {"error": str(exc)}
    try:
        diag["ladder"] = pl.ladder_diagnostics(case)
    except DDSError as exc:
        diag["ladder"] = {"error": str(exc)}
    ok = max(diag["commutator_pm"], diag["commutator_3p"], diag["commutator_3m"],
             diag["casimir_hamiltonian"]) <= pl.ALGEBRA_TOL
    diag["passed"] = ok
    report = {"inputs": case.inputs(), "analytic": {"levels": diag.pop("levels", None)},
              "oracle": {}, "residuals": diag,
              "paper_deviation": pl.ledger(case, with_oracle=False)}
    print(write_json(_out_dir(args) / f"algebra_{case.name}.json", report))
    return EXIT_OK if ok else EXIT_FAIL


# --------------------------------------------------------------------------
# entry point
# --------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def make_parser():
    common = _Parser(add_help=False)
    common.add_argument("--config", help="JSON run configuration")
    common.add_argument("--out", help="output directory (default: current)")
    common.add_argument("--branch", choices=("upper", "lower"))
    common.add_argument("--grid-n", type=int, dest="grid_n", help="number of interior grid points")
    common.add_argument("--box", type=float, help="box half-width (default: decay rule)")
    common.add_argument("--case", help=f"named case: {', '.join(pl.CASES)}")

    p = _Parser(prog="dds", description="Deformed Dirac-Scarf solver")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sp = sub.add_parser("potential", parents=[common], help="write potentials as CSV")
    sp.add_argument("--which", default="U_B,V_minus,V_plus", help=f"comma list from {', '.join(POTENTIALS)}")
    sp.set_defaults(func=cmd_potential)
    sp = sub.add_parser("spectrum", parents=[common], help="analytic and oracle spectrum report")
    sp.set_defaults(func=cmd_spectrum)
    sp = sub.add_parser("wavefunction", parents=[common], help="write an eigenfunction as CSV")
    sp.add_argument("--state", default="minus_n", help=f"one of {', '.join(STATES)}")
    sp.add_argument("--n", type=int, default=0)
    sp.set_defaults(func=cmd_wavefunction)
    sp = sub.add_parser("verify", parents=[common], help="run the acceptance checks")
    sp.set_defaults(func=cmd_verify)
    sp = sub.add_parser("algebra", parents=[common], help="so(2,1) diagnostics")
    sp.set_defaults(func=cmd_algebra)
    return p


def _setup_logging():
    level = os.environ.get("DDS_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)


def dispatch(argv):
    """Run one subcommand and return its exit code."""
    _setup_logging()
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            raise UsageError("missing subcommand; choose from potential, spectrum, wavefunction, verify, algebra")
        return args.func(args)
    except UsageError as exc:
        print(f"dds: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DDSError as exc:
        print(f"dds: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)


def main(argv=None):
    sys.exit(dispatch(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
