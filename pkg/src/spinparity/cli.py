"""Command-line front end: truth-table ingestion, experiment execution,
verification against the brute-force reference, machine-readable reports,
and a benchmark mode.

Truth-table file format (bit-exact): line 1 is the spin count n, line 2 is
exactly 2^n characters, '+' for f(x) = +1 and '-' for f(x) = -1, where the
character position is the basis index with spin 1 as the most significant
bit.  Whitespace is tolerated at line ends only.

Exit codes: 0 on success (and reference agreement when --verify is set),
1 on parse or configuration errors, 2 on verification mismatch.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import dataclass

from .ensemble import run_sequence
from .oracles import PhaseFunction
from .protocol import solve_parity
from .reference import reference_report
from .spinops import DEFAULT_QUBIT_CAP, SpinSystem, op_counts, reset_op_counts


class TruthTableError(ValueError):
    """Malformed truth-table input; the message carries line/column."""


def parse_truth_table_text(text: str, cap: int = DEFAULT_QUBIT_CAP) -> PhaseFunction:
    lines = text.split("\n")
    header = lines[0].rstrip(" \t\r") if lines else ""
    if not header.isdigit():
        raise TruthTableError(f"line 1: expected a spin count, got {header!r}")
    n = int(header)
    if not 1 <= n <= cap:
        raise TruthTableError(f"line 1: spin count {n} outside 1..{cap}")
    if len(lines) < 2:
        raise TruthTableError("line 2: missing truth-table row")
    row = lines[1].rstrip(" \t\r")
    N = 1 << n
    if len(row) != N:
        raise TruthTableError(
            f"line 2, column {min(len(row), N) + 1}: expected exactly {N} entries, found {len(row)}"
        )
    marks = [False] * N
    for x, ch in enumerate(row):
        if ch == "-":
            marks[x] = True
        elif ch != "+":
            raise TruthTableError(
                f"line 2, column {x + 1}: invalid character {ch!r} (expected '+' or '-')"
            )
    for i, extra in enumerate(lines[2:], start=3):
        if extra.strip():
            raise TruthTableError(f"line {i}: unexpected content {extra.strip()!r}")
    return PhaseFunction(n, marks)


def parse_truth_table(path: str, cap: int = DEFAULT_QUBIT_CAP) -> PhaseFunction:
    with open(path, "r", encoding="ascii") as fh:
        return parse_truth_table_text(fh.read(), cap=cap)


def format_truth_table(f: PhaseFunction) -> str:
    row = "".join("-" if m else "+" for m in f.marks)
    return f"{f.n}\n{row}\n"


@dataclass(frozen=True)
class ExperimentConfig:
    """One experiment: a single function source plus execution options.

    ``source`` is one of ``const-plus``, ``const-minus``, ``single:<x>``,
    ``random`` (requires ``seed``), or ``file:<path>``.
    """

    source: str
    n: int = None
    seed: int = None
    density: float = 0.5
    epsilon: tuple = None
    threshold: float = 1e-9
    snr: bool = False
    verify: bool = False
    out: str = None
    fmt: str = "json"


def resolve_function(cfg: ExperimentConfig, n: int = None) -> PhaseFunction:
    n = cfg.n if n is None else n
    src = cfg.source
    if src == "const-plus" or src == "const-minus":
        _require_n(n, src)
        return PhaseFunction.constant(n, +1 if src == "const-plus" else -1)
    if src.startswith("single:"):
        _require_n(n, src)
        return PhaseFunction.single(n, int(src.split(":", 1)[1]))
    if src == "random":
        _require_n(n, src)
        if cfg.seed is None:
            raise ValueError("the random function source requires --seed for reproducibility")
        return PhaseFunction.random(n, cfg.density, cfg.seed)
    if src.startswith("file:"):
        f = parse_truth_table(src.split(":", 1)[1])
        if n is not None and f.n != n:
            raise ValueError(f"--n {n} contradicts the file's spin count {f.n}")
        return f
    raise ValueError(
        f"unknown function source {src!r}; expected const-plus, const-minus, "
        "single:<x>, random, or file:<path>"
    )


def _require_n(n, src):
    if n is None:
        raise ValueError(f"function source {src!r} requires --n")


def _round_sig(a: float) -> float:
    return float(f"{a:.12g}")


def run_experiment(cfg: ExperimentConfig) -> tuple:
    """Execute the parity protocol, returning (exit status, report dict)."""
    f = resolve_function(cfg)
    system = SpinSystem(f.n, epsilon=cfg.epsilon)
    trace = solve_parity(system, f, threshold=cfg.threshold, snr_mode=cfg.snr)
    report = {"n": f.n, "parity": trace.parity}
    status = 0
    if cfg.verify:
        ref = reference_report(f)
        report["G_parity_reference"] = ref.parity
        if ref.parity != trace.parity:
            status = 2
    report["runs"] = trace.uo_calls
    report["uo_calls"] = trace.uo_calls
    report["uf_calls"] = trace.uf_calls
    report["trace"] = [
        {
            "M": rec.m,
            "sign": rec.sign,
            "amplitudes": [_round_sig(a) for a in rec.amplitudes],
            "decision": rec.decision,
        }
        for rec in trace.iterations
    ]
    return status, report


def render_report(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    if fmt == "csv":
        # trace rows only
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        n_spins = report["n"]
        writer.writerow(
            ["iteration", "M", "sign"]
            + [f"amp_{k}" for k in range(1, n_spins + 1)]
            + ["decision"]
        )
        for i, rec in enumerate(report["trace"], start=1):
            writer.writerow(
                [i, "" if rec["M"] is None else rec["M"], "" if rec["sign"] is None else rec["sign"]]
                + [f"{a:.12g}" for a in rec["amplitudes"]]
                + [rec["decision"]]
            )
        return buf.getvalue()
    raise ValueError(f"unknown report format {fmt!r}")


def bench(cfg: ExperimentConfig, sizes) -> dict:
    """Time one sequence run per size and confirm the oracle application
    never falls back to a dense matrix product."""
    if cfg.source.startswith("file:"):
        raise ValueError("bench requires a size-independent function source")
    seconds = []
    for n in sizes:
        f = resolve_function(cfg, n=n)
        system = SpinSystem(n)
        run_sequence(system, f, threshold=cfg.threshold)  # warm-up
        best = float("inf")
        for _ in range(3):
            reset_op_counts()
            t0 = time.perf_counter()
            run_sequence(system, f, threshold=cfg.threshold)
            best = min(best, time.perf_counter() - t0)
            counts = op_counts()
            if counts["dense"] != 0:
                raise RuntimeError("dense conjugation used for a diagonal unitary")
        seconds.append(best)
    ratios = {}
    for i in range(1, len(sizes)):
        if sizes[i] == sizes[i - 1] + 1 and seconds[i - 1] > 0:
            ratios[f"{sizes[i - 1]}->{sizes[i]}"] = _round_sig(seconds[i] / seconds[i - 1])
    return {
        "sizes": list(sizes),
        "seconds_per_run": [_round_sig(s) for s in seconds],
        "ratios": ratios,
        "diagonal_path_only": True,
    }


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="spinparity",
        description="Determine the parity of a Boolean phase function by "
        "simulating the spin-ensemble pulse sequence and offset bisection.",
    )
    p.add_argument("--n", type=int, help="spin count (required unless --function file:...)")
    p.add_argument(
        "--function",
        help="function source: const-plus | const-minus | single:<x> | random | file:<path>",
    )
    p.add_argument("--seed", type=int, help="seed for the random source (required with it)")
    p.add_argument("--density", type=float, default=0.5, help="mark density for the random source")
    p.add_argument("--epsilon", help="comma-separated per-spin polarization parameters")
    p.add_argument("--threshold", type=float, default=1e-9, help="zero-detection threshold")
    p.add_argument("--snr", action="store_true", help="report amplitudes at the 2/N physical scale")
    p.add_argument("--verify", action="store_true", help="cross-check against the brute-force reference")
    p.add_argument("--out", help="write the report to this path instead of stdout")
    p.add_argument("--format", choices=("json", "csv"), default="json", dest="fmt")
    p.add_argument("--bench", metavar="SIZES", help="benchmark mode: comma-separated spin counts")
    return p


def _emit(text: str, out: str) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors; remap
        return 0 if exc.code in (0, None) else 1
    try:
        epsilon = None
        if args.epsilon:
            epsilon = tuple(float(x) for x in args.epsilon.split(","))
        if args.bench is not None:
            sizes = [int(x) for x in args.bench.split(",")]
            cfg = ExperimentConfig(
                source=args.function or "random",
                seed=args.seed if args.seed is not None else 0,
                density=args.density,
                threshold=args.threshold,
            )
            report = bench(cfg, sizes)
            _emit(json.dumps(report, indent=2) + "\n", args.out)
            return 0
        if not args.function:
            print("error: --function is required (or use --bench)", file=sys.stderr)
            return 1
        cfg = ExperimentConfig(
            source=args.function,
            n=args.n,
            seed=args.seed,
            density=args.density,
            epsilon=epsilon,
            threshold=args.threshold,
            snr=args.snr,
            verify=args.verify,
            out=args.out,
            fmt=args.fmt,
        )
        status, report = run_experiment(cfg)
        _emit(render_report(report, cfg.fmt), cfg.out)
        return status
    except (TruthTableError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
