"""Command-line front end: analyze, scan, witness, bound.

Exit codes: 0 success, 2 invalid input, 3 witness not applicable,
4 soundness alarm (a computed value contradicts a proven statement).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import __version__
from .analysis import (
    AnalysisReport,
    BoundEval,
    WitnessVerdict,
    bound_predicts,
    huneke_gate,
    membership_transfer,
    mult_bound,
    verify_witness,
)
from .curve import curve_ring, hankel_matrix, morales_transform, pfaffian_system, toric_ideal, witness_matrix
from .errors import InvalidCase, SoundnessAlarm, ValidationError, WrongResidue
from .poly import parse_polynomial
from .semigroup import ArithmeticCase, CurveSpec, arith_subseq, validate

EXIT_OK, EXIT_INVALID, EXIT_INAPPLICABLE, EXIT_ALARM = 0, 2, 3, 4

CSV_COLUMNS = [
    "exponents",
    "family",
    "a_mod_3",
    "multiplicity",
    "mu",
    "cm_type",
    "gorenstein",
    "equality",
    "verdict",
    "witness",
    "transfer",
    "error",
]


# ---------------------------------------------------------------------------
# JSON schema v1


def _fraction_pair(v: Fraction) -> tuple[int, int]:
    return v.numerator, v.denominator


def spec_to_dict(spec: CurveSpec) -> dict:
    case = spec.arithmetic_case
    return {
        "exponents": list(spec.exponents),
        "d": spec.d,
        "arithmetic_case": None
        if case is None
        else {"a": case.a, "r": case.r, "k": case.k, "residue": case.residue},
        "morales_history": [[i, c] for i, c in spec.morales_history],
        "extension": any(i != 0 for i, _ in spec.morales_history),
    }


def spec_from_dict(data: dict) -> CurveSpec:
    case = data.get("arithmetic_case")
    return CurveSpec(
        tuple(data["exponents"]),
        None if case is None else ArithmeticCase(**case),
        tuple((i, c) for i, c in data.get("morales_history", [])),
    )


_WITNESS_EXTRAS = (
    "det_nonzero",
    "minors_in_ideal",
    "adj_det_is_square",
    "adj_det_in_cube",
    "w_times_det_in_square",
    "degree_argument",
    "skew_symmetric",
    "pfaffians_generate_ideal",
)


def report_to_dict(report: AnalysisReport) -> dict:
    witnesses = []
    for w in report.witnesses:
        item = {
            "kind": w.kind,
            "det_or_pfaffians": list(w.det_or_pfaffians),
            "in_symbolic_square": w.in_symbolic_square,
            "in_ordinary_square": w.in_ordinary_square,
        }
        for name in _WITNESS_EXTRAS:
            value = getattr(w, name)
            if value is not None:
                item[name] = value
        item["passed"] = w.passed
        witnesses.append(item)
    return {
        "tool_version": __version__,
        "spec": spec_to_dict(report.spec),
        "equality": [{"n": n, "equal": eq} for n, eq in sorted(report.equality.items())],
        "multiplicity": report.multiplicity,
        "mu": report.mu,
        "min_generators": [str(g) for g in report.min_generators],
        "cm_type": report.cm_type,
        "gorenstein": report.gorenstein,
        "witnesses": witnesses,
        "bounds": [
            {
                "n": b.n,
                "d": b.d,
                "value_num": b.value.numerator,
                "value_den": b.value.denominator,
                "predicts": b.predicts,
            }
            for b in report.bound_evals
        ],
        "verdict": report.verdict,
        "regular_sequence": report.regular_sequence,
        "timings_ms": dict(report.timings_ms),
    }


def report_from_dict(data: dict) -> AnalysisReport:
    spec = spec_from_dict(data["spec"])
    ring = curve_ring(spec.exponents)
    witnesses = []
    for item in data["witnesses"]:
        extras = {k: item[k] for k in _WITNESS_EXTRAS if k in item}
        witnesses.append(
            WitnessVerdict(
                kind=item["kind"],
                det_or_pfaffians=list(item["det_or_pfaffians"]),
                in_symbolic_square=item["in_symbolic_square"],
                in_ordinary_square=item["in_ordinary_square"],
                **extras,
            )
        )
    return AnalysisReport(
        spec=spec,
        equality={e["n"]: e["equal"] for e in data["equality"]},
        multiplicity=data["multiplicity"],
        mu=data["mu"],
        min_generators=[parse_polynomial(ring, s) for s in data["min_generators"]],
        cm_type=data["cm_type"],
        gorenstein=data["gorenstein"],
        witnesses=witnesses,
        bound_evals=[
            BoundEval(b["n"], b["d"], Fraction(b["value_num"], b["value_den"]), b["predicts"])
            for b in data["bounds"]
        ],
        verdict=data["verdict"],
        regular_sequence=data.get("regular_sequence"),
        timings_ms=dict(data.get("timings_ms", {})),
    )


def dumps(data) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# argument helpers


def parse_exponents(text: str) -> list[int]:
    try:
        return [int(p) for p in text.replace(" ", "").split(",") if p]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad exponent list {text!r}") from None


def parse_range(text: str) -> list[int]:
    """``4..12`` (inclusive), ``2,3,5`` or a single integer."""
    text = text.strip()
    try:
        if ".." in text:
            lo, hi = text.split("..")
            values = list(range(int(lo), int(hi) + 1))
        else:
            values = [int(p) for p in text.split(",") if p]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return values


def _bool(v) -> str:
    return "" if v is None else ("true" if v else "false")


def _fmt_fraction(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _decimal(v: Fraction) -> str:
    return f"{float(v):.6g}"


_SUP = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


def _sup(n: int) -> str:
    return str(n).translate(_SUP)


# ---------------------------------------------------------------------------
# analyze


def format_report(report: AnalysisReport) -> str:
    spec = report.spec
    out = io.StringIO()
    head = f"curve ({', '.join(map(str, spec.exponents))})  d={spec.d}"
    case = spec.arithmetic_case
    if case is not None:
        head += f"  arithmetic: a={case.a} r={case.r} k={case.k}  a mod 3 = {case.residue}"
    if spec.morales_history:
        head += f"  modifications={list(spec.morales_history)}"
    print(head, file=out)
    ns = sorted(report.equality)
    if ns:
        print("  n           " + "".join(f"{n:>12}" for n in ns), file=out)
        cells = "".join(f"{'equal' if report.equality[n] else 'not_equal':>12}" for n in ns)
        print("  P^n = P^(n)" + " " + cells, file=out)
    print(
        f"  e={report.multiplicity}  mu={report.mu}  type={report.cm_type}  "
        f"gorenstein={_bool(report.gorenstein)}",
        file=out,
    )
    for b in report.bound_evals:
        mark = "forces P^n != P^(n)" if b.predicts else "no prediction"
        shown = _fmt_fraction(b.value)
        if b.value.denominator != 1:
            shown += f" (= {_decimal(b.value)})"
        print(f"  bound n={b.n}: {shown}  {mark}", file=out)
    for w in report.witnesses:
        print(f"  witness {w.kind}: {'pass' if w.passed else 'FAIL'}", file=out)
        if w.kind == "pfaffian5x5":
            for p in w.det_or_pfaffians:
                print(f"    pfaffian: {p}", file=out)
            print(f"    pfaffians generate P: {_bool(w.pfaffians_generate_ideal)}", file=out)
        else:
            print(f"    D = {w.det_or_pfaffians[0]}", file=out)
            print(
                f"    D in P^(2): {_bool(w.in_symbolic_square)}   D in P^2: {_bool(w.in_ordinary_square)}",
                file=out,
            )
    print(f"  verdict: {report.verdict}", file=out)
    return out.getvalue()


def cmd_analyze(args) -> int:
    try:
        spec = validate(args.exponents)
    except ValidationError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INVALID
    try:
        report = huneke_gate(spec, n_max=args.n_max, witnesses=args.witness)
    except SoundnessAlarm as err:
        print(f"soundness alarm: {err}", file=sys.stderr)
        return EXIT_ALARM
    sys.stdout.write(format_report(report))
    if args.json:
        Path(args.json).write_text(dumps(report_to_dict(report)), encoding="utf-8")
    if report.witnesses and not all(w.passed for w in report.witnesses):
        print("soundness alarm: a witness check failed", file=sys.stderr)
        return EXIT_ALARM
    return EXIT_OK


# ---------------------------------------------------------------------------
# witness


_KINDS = {"3k": "case3k", "3k1": "case3k1", "hankel": "hankel5", "pfaffian": "pfaffian5x5"}


def _format_matrix(entries) -> list[str]:
    cells = [[str(e) for e in row] for row in entries]
    width = max(len(c) for row in cells for c in row)
    return ["[ " + "  ".join(c.rjust(width) for c in row) + " ]" for row in cells]


def select_witness(spec: CurveSpec, kind: str):
    case = spec.arithmetic_case
    if kind == "auto":
        if case is not None:
            kind = "pfaffian" if case.residue == 2 else ("3k" if case.residue == 0 else "3k1")
        elif arith_subseq(spec.exponents, 5) is not None:
            kind = "hankel"
        else:
            raise InvalidCase("no witness shape applies: not a 4-term arithmetic sequence "
                              "and no arithmetic subsequence of length 5")
    if kind == "hankel":
        found = arith_subseq(spec.exponents, 5)
        if found is None:
            raise InvalidCase("no arithmetic subsequence of length 5")
        return hankel_matrix(spec, found[0])
    if case is None:
        raise InvalidCase(f"--kind {kind} needs exponents (a, a+r, a+2r, a+3r)")
    if kind == "pfaffian":
        return pfaffian_system(case.a, case.r)
    if kind == "3k" and case.residue != 0 or kind == "3k1" and case.residue != 1:
        hint = {0: "3k", 1: "3k1", 2: "pfaffian"}[case.residue]
        raise WrongResidue(f"a ≡ {case.residue} mod 3: use --kind {hint}")
    return witness_matrix(case.a, case.r)


def cmd_witness(args) -> int:
    try:
        spec = validate(args.exponents)
    except ValidationError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INVALID
    try:
        W = select_witness(spec, args.kind)
    except InvalidCase as err:
        print(f"witness not applicable: {err}", file=sys.stderr)
        return EXIT_INAPPLICABLE
    P = toric_ideal(spec)
    v = verify_witness(P, W)
    print(f"kind: {W.kind}")
    for line in _format_matrix(W.entries):
        print("  " + line)
    if W.kind == "pfaffian5x5":
        for i, p in enumerate(W.pfaffians, 1):
            print(f"  pfaffian (drop {i}): {p}")
        print(f"  skew-symmetric: {_bool(v.skew_symmetric)}")
        print(f"  pfaffians generate P: {_bool(v.pfaffians_generate_ideal)}")
    else:
        print(f"  D = {W.determinant}")
        rows = [
            ("D != 0", v.det_nonzero),
            ("2x2 minors in P", v.minors_in_ideal),
            ("D in P^2", v.in_ordinary_square),
            ("D in P^(2)", v.in_symbolic_square),
            ("det(adj M) = D^2", v.adj_det_is_square),
            ("det(adj M) in P^3", v.adj_det_in_cube),
        ]
        if v.w_times_det_in_square is not None:
            rows.append(("w*D in P^2", v.w_times_det_in_square))
        if v.degree_argument is not None:
            rows.append(("deg D = 3 < 4 <= deg P^2", v.degree_argument))
        for label, value in rows:
            print(f"  {label}: {_bool(value)}")
    print("all checks pass" if v.passed else "CHECK FAILED")
    return EXIT_OK if v.passed else EXIT_ALARM


# ---------------------------------------------------------------------------
# bound


def cmd_bound(args) -> int:
    if args.n < 1 or args.d < 2:
        print("error: need n >= 1 and d >= 2", file=sys.stderr)
        return EXIT_INVALID
    value = mult_bound(args.n, args.d)
    text = _fmt_fraction(value)
    if value.denominator != 1:
        text += f" (= {_decimal(value)})"
    print(text)
    if args.e is not None:
        if args.e < 1:
            print("error: e must be positive", file=sys.stderr)
            return EXIT_INVALID
        n = _sup(args.n)
        if bound_predicts(args.e, args.n, args.d):
            print(f"e={args.e} < {_fmt_fraction(value)} ⇒ P{n} ≠ P^({args.n})")
        else:
            print(f"e={args.e} ≥ {_fmt_fraction(value)}: no prediction")
    return EXIT_OK


# ---------------------------------------------------------------------------
# scan


@dataclass(frozen=True)
class ScanConfig:
    family: str
    a_range: tuple[int, ...] = ()
    r_range: tuple[int, ...] = ()
    exponents: tuple[tuple[int, ...], ...] = ()
    c_values: tuple[int, ...] = ()
    index: int = 0
    n_max: int | None = None
    samples: int = 20
    output: str | None = None
    fmt: str = "json"
    parallelism: int = 1

    def __post_init__(self):
        if self.family not in ("arith4", "hankel5", "explicit", "morales"):
            raise ValueError(f"unknown family {self.family!r}")
        if self.family in ("arith4", "hankel5") and (not self.a_range or not self.r_range):
            raise ValueError("arith4/hankel5 need non-empty --a and --r ranges")
        if self.family in ("explicit", "morales") and not self.exponents:
            raise ValueError(f"{self.family} needs --exponents")
        if self.family == "morales" and not self.c_values:
            raise ValueError("morales needs --c")
        if self.n_max is not None and self.n_max < 2:
            raise ValueError("n_max must be at least 2")


@dataclass(frozen=True)
class ScanJob:
    family: str
    exponents: tuple[int, ...]
    n_max: int | None
    base: tuple[int, ...] | None = None
    index: int = 0
    c: int = 1
    samples: int = 20


def scan_jobs(cfg: ScanConfig) -> list[ScanJob]:
    jobs = []
    if cfg.family in ("arith4", "hankel5"):
        terms = 4 if cfg.family == "arith4" else 5
        for a in cfg.a_range:
            for r in cfg.r_range:
                exps = tuple(a + i * r for i in range(terms))
                jobs.append(ScanJob(cfg.family, exps, cfg.n_max))
    elif cfg.family == "explicit":
        jobs = [ScanJob("explicit", tuple(e), cfg.n_max) for e in cfg.exponents]
    else:
        for base in cfg.exponents:
            for c in cfg.c_values:
                raw = [a if i == cfg.index else c * a for i, a in enumerate(base)]
                jobs.append(
                    ScanJob("morales", tuple(sorted(raw)), cfg.n_max, tuple(base), cfg.index, c, cfg.samples)
                )
    return jobs


def _row_key(row: dict) -> tuple:
    return tuple(row["exponents"]), row.get("family", "")


def run_job(job: ScanJob) -> dict:
    row = {col: None for col in CSV_COLUMNS}
    row["exponents"] = list(job.exponents)
    row["family"] = job.family
    try:
        if job.family == "morales":
            T = morales_transform(job.base, job.index, job.c)
            spec = T.target
        else:
            spec = validate(job.exponents)
        report = huneke_gate(spec, n_max=job.n_max, witnesses=True)
    except ValidationError as err:
        row["error"] = f"{type(err).__name__}: {err}"
        return row
    except SoundnessAlarm as err:
        row["error"] = f"SoundnessAlarm: {err}"
        return row
    case = spec.arithmetic_case
    row["a_mod_3"] = case.residue if case is not None else None
    row["multiplicity"] = report.multiplicity
    row["mu"] = report.mu
    row["cm_type"] = report.cm_type
    row["gorenstein"] = report.gorenstein
    row["equality"] = {str(n): eq for n, eq in sorted(report.equality.items())}
    row["verdict"] = report.verdict
    if report.witnesses:
        row["witness"] = "pass" if all(w.passed for w in report.witnesses) else "fail"
    if job.family == "morales":
        checks = membership_transfer(T, samples=job.samples)
        row["transfer"] = "pass" if all(c.passed for c in checks) else "fail"
    return row


def row_to_csv(row: dict) -> dict:
    out = {}
    for col in CSV_COLUMNS:
        v = row.get(col)
        if col == "exponents":
            out[col] = ",".join(map(str, v))
        elif col == "equality":
            out[col] = "" if v is None else ";".join(f"{n}:{_bool(eq)}" for n, eq in v.items())
        elif isinstance(v, bool):
            out[col] = _bool(v)
        else:
            out[col] = "" if v is None else str(v)
    return out


def write_scan(rows: list[dict], path: str | None, fmt: str, family: str) -> str:
    rows = sorted(rows, key=_row_key)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(row_to_csv(row))
        text = buf.getvalue()
    else:
        text = dumps({"tool_version": __version__, "family": family, "rows": rows})
    if path:
        Path(path).write_text(text, encoding="utf-8")
    return text


def worker_count(requested: int | None) -> int:
    env = os.environ.get("SYMPOW_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return max(1, requested or 1)


def run_scan(cfg: ScanConfig) -> list[dict]:
    """Analyze every curve of the family; rows are flushed to a sidecar file as they finish.

    With an output path, completed rows go to ``<output>.partial.jsonl`` and
    a rerun skips the exponents found there; the sidecar is removed once the
    sorted output is written.
    """
    jobs = scan_jobs(cfg)
    partial = Path(cfg.output + ".partial.jsonl") if cfg.output else None
    done: dict[tuple, dict] = {}
    if partial is not None and partial.exists():
        for line in partial.read_text(encoding="utf-8").splitlines():
            if line.strip():
                row = json.loads(line)
                done[_row_key(row)] = row
    todo = [j for j in jobs if (j.exponents, j.family) not in done]
    rows = list(done.values())
    sink = partial.open("a", encoding="utf-8") if partial is not None else None

    def record(row):
        rows.append(row)
        if sink is not None:
            sink.write(json.dumps(row, ensure_ascii=False) + "\n")
            sink.flush()

    try:
        workers = worker_count(cfg.parallelism)
        if workers == 1 or len(todo) <= 1:
            for job in todo:
                record(run_job(job))
        else:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                futures = [pool.submit(run_job, job) for job in todo]
                for fut in as_completed(futures):
                    record(fut.result())
    finally:
        if sink is not None:
            sink.close()
    wanted = {(j.exponents, j.family) for j in jobs}
    rows = [r for r in rows if _row_key(r) in wanted]
    write_scan(rows, cfg.output, cfg.fmt, cfg.family)
    if partial is not None and partial.exists():
        partial.unlink()
    return sorted(rows, key=_row_key)


def cmd_scan(args) -> int:
    try:
        cfg = ScanConfig(
            family=args.family,
            a_range=tuple(args.a or ()),
            r_range=tuple(args.r or ()),
            exponents=tuple(tuple(e) for e in (args.exponents or ())),
            c_values=tuple(args.c or ()),
            index=args.index,
            n_max=args.n_max,
            samples=args.samples,
            output=args.output,
            fmt=args.format,
            parallelism=args.jobs,
        )
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INVALID
    rows = run_scan(cfg)
    if not cfg.output:
        sys.stdout.write(write_scan(rows, None, cfg.fmt, cfg.family))
    else:
        print(f"{len(rows)} rows written to {cfg.output}")
    alarms = [r for r in rows if (r.get("error") or "").startswith("SoundnessAlarm")]
    alarms += [r for r in rows if r.get("witness") == "fail" or r.get("transfer") == "fail"]
    return EXIT_ALARM if alarms else EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sympow",
        description="Ordinary versus symbolic powers of monomial-curve ideals.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full report for one curve")
    p.add_argument("--exponents", type=parse_exponents, required=True)
    p.add_argument("--n-max", type=int, default=None, help="largest power compared (default d-1)")
    p.add_argument("--json", metavar="PATH", help="also write the JSON report here")
    p.add_argument("--witness", action="store_true", help="verify the applicable witness matrices")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("scan", help="analyze a family of curves")
    p.add_argument("--family", choices=["arith4", "hankel5", "explicit", "morales"], required=True)
    p.add_argument("--a", type=parse_range)
    p.add_argument("--r", type=parse_range)
    p.add_argument(
        "--exponents",
        type=parse_exponents,
        action="append",
        help="exponent list; repeat for several curves",
    )
    p.add_argument("--c", type=parse_range, help="modification factors, e.g. 2,3")
    p.add_argument("--index", type=int, default=0, help="fixed variable of the modification (0-based)")
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--samples", type=int, default=20, help="membership-transfer samples per check")
    p.add_argument("--output", metavar="PATH")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (SYMPOW_THREADS overrides)")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("witness", help="check a determinant or Pfaffian witness")
    p.add_argument("--exponents", type=parse_exponents, required=True)
    p.add_argument("--kind", choices=["auto", "3k", "3k1", "hankel", "pfaffian"], default="auto")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("bound", help="evaluate the multiplicity bound")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--e", type=int, default=None)
    p.set_defaults(func=cmd_bound)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
