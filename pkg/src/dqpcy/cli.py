"""Command-line interface: ``dqpcy <command> ...``.

Exit codes: 0 when every check passes, 2 when some identity or axiom is
violated, 1 for malformed input or bad arguments.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .ainfty import AInfinityStructure
from .algebra import validate_algebra
from .double_bracket import check_db1, check_db2, is_double_poisson, is_quasi_poisson
from .exact_arith import CCoeffTable, format_rational, parse_rational
from .identities import (CorruptedTable, bcm_grid, cgen_grid, ide_trials, maincomp_grid,
                         mu_reduced_grid)
from .io import InputError, bundled_names, bundled_path, digest, load_file
from .stasheff import SIReport, default_jobs, verify_cyclicity, verify_pcy, verify_si

SCHEMA_VERSION = 1
EXIT_OK, EXIT_INPUT, EXIT_VIOLATION = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


# -- JSON rendering ----------------------------------------------------------

def jsonable(obj):
    """Exact, deterministic JSON rendering of witnesses."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, dict):
        items = sorted(obj.items(), key=lambda kv: repr(kv[0]))
        if all(isinstance(k, str) for k in obj):
            return {k: jsonable(v) for k, v in items}
        return [[jsonable(k), jsonable(v)] for k, v in items]
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    if hasattr(obj, "parity") and hasattr(obj, "slots"):
        return {"parity": list(obj.parity), "slots": [jsonable(s) for s in obj.slots]}
    return repr(obj)


class Report:
    def __init__(self, command: str):
        self.doc = {"schema_version": SCHEMA_VERSION, "tool_version": __version__,
                    "command": command, "checks": {}}
        self.timings: dict = {}

    def input(self, path: str, resolved: Path, tau, overridden: bool) -> None:
        self.doc["input"] = {"path": path, "sha256": digest(resolved)}
        self.doc["tau"] = format_rational(tau)
        self.doc["tau_override"] = overridden

    def add(self, name: str, rep, elapsed: float, **extra) -> None:
        if isinstance(rep, SIReport):
            entry = {"status": "pass" if rep.ok else "fail", "mode": rep.mode,
                     "checked": rep.tuples_checked, "degree_spot_checks": rep.degree_spot_checks,
                     "violations": rep.violation_count,
                     "witnesses": [{"tuple": jsonable(t), "value": jsonable(v)}
                                   for t, v in rep.violations]}
        else:
            entry = {"status": "pass" if rep.ok else "fail", "checked": rep.checked,
                     "violations": rep.violation_count, "witnesses": jsonable(rep.violations)}
        entry.update(extra)
        self.doc["checks"][name] = entry
        self.timings[name] = round(elapsed, 3)

    @property
    def ok(self) -> bool:
        return all(c["status"] == "pass" for c in self.doc["checks"].values())

    def render(self) -> str:
        doc = dict(self.doc)
        doc["status"] = "pass" if self.ok else "fail"
        doc["timings"] = self.timings
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    def emit(self, out: str | None) -> int:
        text = self.render()
        if out:
            Path(out).write_text(text, encoding="utf-8")
            for name, c in self.doc["checks"].items():
                print(f"{name}: {c['status']} ({c['violations']} violation(s) in {c['checked']})")
            print(f"report written to {out}")
        else:
            sys.stdout.write(text)
        return EXIT_OK if self.ok else EXIT_VIOLATION


def _timed(func, *args, **kwargs):
    start = time.perf_counter()
    value = func(*args, **kwargs)
    return value, time.perf_counter() - start


# -- input -------------------------------------------------------------------

def _resolve(path: str) -> Path:
    p = Path(path)
    if p.exists():
        return p
    if path in bundled_names():
        return bundled_path(path)
    raise InputError(f"{path}: no such file (bundled examples: {', '.join(bundled_names())})")


def _load(args, report: Report):
    resolved = _resolve(args.path)
    af = load_file(resolved)
    db = af.bracket
    overridden = getattr(args, "tau", None) is not None
    if overridden:
        db = db.with_tau(parse_rational(args.tau))
    report.input(args.path, resolved, db.tau, overridden)
    return af.algebra, db


def _validate_into(report: Report, alg, db) -> bool:
    rep, dt = _timed(validate_algebra, alg)
    report.add("algebra", rep, dt)
    if not rep.ok:
        return False
    for name, func in (("db1", check_db1), ("db2", check_db2)):
        rep, dt = _timed(func, db)
        report.add(name, rep, dt)
    return report.ok


# -- commands ----------------------------------------------------------------

def cmd_validate(args) -> int:
    report = Report("validate")
    alg, db = _load(args, report)
    _validate_into(report, alg, db)
    return report.emit(args.out)


def cmd_check(args) -> int:
    report = Report("check")
    alg, db = _load(args, report)
    if _validate_into(report, alg, db):
        if args.mode == "poisson":
            rep, dt = _timed(is_double_poisson, db)
            report.add("double_poisson", rep, dt)
        else:
            rep, dt = _timed(is_quasi_poisson, db)
            report.add("quasi_poisson", rep, dt)
    return report.emit(args.out)


def cmd_stasheff(args) -> int:
    report = Report("stasheff")
    alg, db = _load(args, report)
    report.doc["seed"] = args.seed
    if not _validate_into(report, alg, db):
        return report.emit(args.out)
    jobs = args.jobs if args.jobs is not None else default_jobs()
    struct = AInfinityStructure(db)
    reps, _ = _timed(verify_si, struct, args.max_n, mode=args.mode, samples=args.samples,
                     seed=args.seed, jobs=jobs, n_min=args.min_n)
    for rep in reps:
        report.add(f"si_{rep.N}", rep, rep.elapsed)
    cyc_max = min(args.max_n, 8) if args.cyclicity_max_n is None else args.cyclicity_max_n
    rep, dt = _timed(verify_cyclicity, struct, cyc_max, jobs=jobs)
    report.add("cyclicity", rep, dt, max_n=cyc_max)
    pcy, dt = _timed(verify_pcy, struct, cyc_max)
    for name, rep in pcy.items():
        report.add(name, rep, dt / len(pcy), max_n=cyc_max)
    return report.emit(args.out)


def cmd_identities(args) -> int:
    report = Report("identities")
    report.doc["seed"] = args.seed
    table = None
    if args.corrupt_c:
        try:
            i, j = (int(x) for x in args.corrupt_c.split(","))
        except ValueError:
            raise InputError(f"--corrupt-c: expected I,J, got {args.corrupt_c!r}") from None
        table = CorruptedTable(1, (i, j))
        report.doc["corrupted_entry"] = [i, j]
    rep, dt = _timed(cgen_grid, args.max_even_n, table=table)
    report.add("cgen", rep, dt, max_even_n=args.max_even_n)
    rep, dt = _timed(bcm_grid, args.bcm_max_k)
    report.add("bcm", rep, dt, max_k=args.bcm_max_k)
    rep, dt = _timed(maincomp_grid, args.maincomp_max_k)
    report.add("maincomp", rep, dt, max_k=args.maincomp_max_k)
    rep, dt = _timed(mu_reduced_grid, args.maincomp_max_k)
    report.add("mu_reduced", rep, dt, max_k=args.maincomp_max_k)
    if args.generalized_trials or args.indicators:
        rep, dt = _timed(ide_trials, args.ide_max_k, args.generalized_trials, args.seed,
                         indicators=args.indicators)
        report.add("ide", rep, dt, max_k=args.ide_max_k, trials=args.generalized_trials)
    return report.emit(args.out)


def cmd_cij(args) -> int:
    tau = parse_rational(args.tau)
    table = CCoeffTable(tau)
    print("i\tj\tC_ij")
    for (i, j), value in table.items(args.max):
        print(f"{i}\t{j}\t{format_rational(value)}")
    return EXIT_OK


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dqpcy", description=(
        "Exact checks for double (quasi-)Poisson brackets and the A-infinity "
        "structure they induce on A + A^#[-1]."))
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_input(p, tau=True):
        p.add_argument("path", help="algebra file, or the name of a bundled example "
                                    f"({', '.join(bundled_names())})")
        if tau:
            p.add_argument("--tau", help="override the file's tau (p/q); marked in the report")
        p.add_argument("--out", help="write the JSON report here instead of stdout")

    p = sub.add_parser("validate", help="associativity, unit and the double bracket axioms")
    with_input(p, tau=False)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("check", help="double Poisson or double quasi-Poisson test")
    with_input(p)
    p.add_argument("--mode", choices=("poisson", "quasi"), default="quasi")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("stasheff", help="Stasheff identities, cyclicity and pre-Calabi-Yau checks")
    with_input(p)
    p.add_argument("--max-n", type=int, default=7)
    p.add_argument("--min-n", type=int, default=1)
    p.add_argument("--mode", choices=("auto", "exhaustive", "sampled"), default="auto")
    p.add_argument("--samples", type=int, default=1000, help="tuples per N in sampled mode")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=None,
                   help="worker processes (default: $DQP_JOBS, else the CPU count)")
    p.add_argument("--cyclicity-max-n", type=int, default=None,
                   help="largest arity for the cyclicity and pre-Calabi-Yau checks "
                        "(default: min(max-n, 8))")
    p.set_defaults(func=cmd_stasheff)

    p = sub.add_parser("identities", aliases=["bernoulli-identities"],
                       help="the Bernoulli-number identities")
    p.add_argument("--max-even-n", type=int, default=24)
    p.add_argument("--bcm-max-k", type=int, default=12)
    p.add_argument("--maincomp-max-k", type=int, default=8)
    p.add_argument("--ide-max-k", type=int, default=8)
    p.add_argument("--generalized-trials", type=int, default=100)
    p.add_argument("--no-indicators", dest="indicators", action="store_false",
                   help="skip the indicator weight sequences")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--corrupt-c", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_identities)

    p = sub.add_parser("cij", help="print the coefficients C_ij")
    p.add_argument("--max", type=int, default=9, help="largest i + j")
    p.add_argument("--tau", default="1")
    p.set_defaults(func=cmd_cij)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"dqpcy: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"dqpcy: invalid argument: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
