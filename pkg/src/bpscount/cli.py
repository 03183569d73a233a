"""Command-line surface.

Subcommands: ``transform``, ``pipeline``, ``c-matrix``, ``verify
congruences``, ``verify integrality``, ``dt-table``.  Sequences and
verification reports travel as JSON, matrices and DT tables as TSV;
every rational is serialized in the canonical p/q string form.  Exit
codes: 0 success, 1 verification failure, 2 usage error, 3 malformed
input, 4 I/O failure.  Reports are byte-identical across runs with
the same job except for the single meta.timestamp field, regardless
of the --jobs setting.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Callable, Sequence

from . import __version__
from .congruence import (
    CheckKind,
    CongruenceCase,
    check_mod_four_descent,
    check_prime_power_descent,
    verify_divisibility,
)
from .dtlink import dt_table, table_to_tsv
from .matrices import (
    TransformMethod,
    build_transform_matrix,
    determinant,
    to_tsv,
    triangular_inverse,
)
from .series import (
    BridgeDirection,
    InvariantSequence,
    KindMismatchError,
    SequenceKind,
    bridge_gw,
    local_bps_to_gw,
    local_gw_to_bps,
    pipeline_local_bps_to_relative_bps,
    pipeline_relative_bps_to_local_bps,
    relative_bps_to_gw,
    relative_gw_to_bps,
)

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_IO = 4


class Command(Enum):
    TRANSFORM = "transform"
    PIPELINE = "pipeline"
    MATRIX = "c-matrix"
    VERIFY_CONGRUENCES = "verify congruences"
    VERIFY_INTEGRALITY = "verify integrality"
    DT_TABLE = "dt-table"


@dataclass
class JobSpec:
    """A fully validated unit of CLI work."""

    command: Command
    parameters: dict[str, object]
    input_path: str | None = None
    output_path: str | None = None


class InputError(ValueError):
    """Input file exists but its content is malformed."""


# ---------------------------------------------------------------- sequences

_CLI_KIND = {kind.value.replace("_", "-"): kind for kind in SequenceKind}
_RATIONAL_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")


def parse_rational(value: object) -> Fraction:
    """Parse a canonical p/q string (or a JSON integer) exactly."""
    if isinstance(value, bool):
        raise InputError(f"malformed rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str) and _RATIONAL_RE.match(value):
        try:
            return Fraction(value)
        except ZeroDivisionError:
            raise InputError(f"zero denominator: {value!r}") from None
    raise InputError(f"malformed rational: {value!r}")


def sequence_from_obj(obj: object) -> InvariantSequence:
    """Validate a decoded sequence object: kind, w, values."""
    if not isinstance(obj, dict):
        raise InputError("sequence file must hold a JSON object")
    try:
        kind_name = obj["kind"]
        w = obj["w"]
        raw_values = obj["values"]
    except KeyError as exc:
        raise InputError(f"missing field {exc.args[0]!r}") from None
    try:
        kind = SequenceKind(kind_name)
    except ValueError:
        raise InputError(f"unknown kind {kind_name!r}") from None
    if isinstance(w, bool) or not isinstance(w, int) or w < 1:
        raise InputError(f"w must be a positive integer, got {w!r}")
    if not isinstance(raw_values, list):
        raise InputError("values must be a list")
    return InvariantSequence(kind, w, tuple(parse_rational(v) for v in raw_values))


def sequence_to_obj(seq: InvariantSequence) -> dict[str, object]:
    return {"kind": seq.kind.value, "w": seq.w, "values": [str(v) for v in seq.values]}


def load_sequence(path: str) -> InvariantSequence:
    """Read and validate a sequence JSON file."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None
    return sequence_from_obj(obj)


def dump_sequence(seq: InvariantSequence) -> str:
    return json.dumps(sequence_to_obj(seq), indent=2) + "\n"


# ------------------------------------------------------------------ parsing


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _int_at_least_two(text: str) -> int:
    value = _positive_int(text)
    if value < 2:
        raise argparse.ArgumentTypeError("must be at least 2")
    return value


def _prime_list(text: str) -> tuple[int, ...]:
    try:
        primes = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}") from None
    if not primes or any(p < 2 for p in primes):
        raise argparse.ArgumentTypeError("primes must all be >= 2")
    return primes


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bpscount",
        description="Exact transforms and integrality checks for genus-0 BPS state counts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    tf = sub.add_parser("transform", help="apply one sequence transform")
    tf.add_argument("--from", dest="source", required=True, choices=sorted(_CLI_KIND))
    tf.add_argument("--to", dest="target", required=True, choices=sorted(_CLI_KIND))
    tf.add_argument("--in", dest="input_path", required=True, metavar="SEQ.json")
    tf.add_argument("--out", dest="output_path", metavar="SEQ.json")

    pl = sub.add_parser(
        "pipeline", help="transport a BPS sequence to the other BPS kind"
    )
    pl.add_argument("--in", dest="input_path", required=True, metavar="SEQ.json")
    pl.add_argument("--out", dest="output_path", metavar="SEQ.json")

    cm = sub.add_parser("c-matrix", help="build the transformation matrix as TSV")
    cm.add_argument("--n", type=_positive_int, required=True)
    cm.add_argument("--w", type=_positive_int, required=True)
    cm.add_argument(
        "--method",
        choices=["closed-form", "product", "both"],
        default="closed-form",
        help="'both' builds twice and fails on any entry mismatch",
    )
    cm.add_argument("--out", dest="output_path", metavar="C.tsv")

    ver = sub.add_parser("verify", help="run an exhaustive verification grid")
    vsub = ver.add_subparsers(dest="target", required=True)

    vc = vsub.add_parser("congruences", help="binomial descent congruence grids")
    vc.add_argument("--primes", type=_prime_list, default=(2, 3, 5, 7, 11, 13))
    vc.add_argument("--alpha-max", type=_positive_int, default=4)
    vc.add_argument("--a-max", type=_positive_int, default=30)
    vc.add_argument("--b-max", type=_positive_int, default=30)
    vc.add_argument("--odd-k-max", type=_positive_int, default=99)
    vc.add_argument("--odd-a-max", type=_positive_int, default=50)
    vc.add_argument("--jobs", type=_positive_int, default=os.cpu_count() or 1)
    vc.add_argument("--out", dest="output_path", metavar="REPORT.json")

    vi = vsub.add_parser(
        "integrality", help="transformation matrix integrality and divisibility"
    )
    vi.add_argument("--n", type=_positive_int, required=True)
    vi.add_argument("--w-min", type=_int_at_least_two, default=2)
    vi.add_argument("--w-max", type=_int_at_least_two, default=12)
    vi.add_argument("--jobs", type=_positive_int, default=os.cpu_count() or 1)
    vi.add_argument("--out", dest="output_path", metavar="REPORT.json")

    dt = sub.add_parser("dt-table", help="tabulate loop-quiver DT invariants as TSV")
    dt.add_argument("--n-max", type=_positive_int, required=True)
    dt.add_argument("--m-max", type=_positive_int, required=True)
    dt.add_argument("--out", dest="output_path", metavar="DT.tsv")

    return parser


def parse_args(argv: Sequence[str]) -> JobSpec:
    """Parse and validate argv into a JobSpec; usage errors exit with status 2."""
    ns = build_parser().parse_args(argv)
    if ns.command == "transform":
        return JobSpec(
            Command.TRANSFORM,
            {"from": ns.source, "to": ns.target},
            ns.input_path,
            ns.output_path,
        )
    if ns.command == "pipeline":
        return JobSpec(Command.PIPELINE, {}, ns.input_path, ns.output_path)
    if ns.command == "c-matrix":
        return JobSpec(
            Command.MATRIX,
            {"n": ns.n, "w": ns.w, "method": ns.method},
            None,
            ns.output_path,
        )
    if ns.command == "verify" and ns.target == "congruences":
        return JobSpec(
            Command.VERIFY_CONGRUENCES,
            {
                "primes": list(ns.primes),
                "alpha_max": ns.alpha_max,
                "a_max": ns.a_max,
                "b_max": ns.b_max,
                "odd_k_max": ns.odd_k_max,
                "odd_a_max": ns.odd_a_max,
                "jobs": ns.jobs,
            },
            None,
            ns.output_path,
        )
    if ns.command == "verify" and ns.target == "integrality":
        if ns.w_min > ns.w_max:
            build_parser().error("--w-min must not exceed --w-max")
        return JobSpec(
            Command.VERIFY_INTEGRALITY,
            {"n": ns.n, "w_min": ns.w_min, "w_max": ns.w_max, "jobs": ns.jobs},
            None,
            ns.output_path,
        )
    if ns.command == "dt-table":
        return JobSpec(
            Command.DT_TABLE, {"n_max": ns.n_max, "m_max": ns.m_max}, None, ns.output_path
        )
    raise AssertionError(f"unhandled command {ns.command!r}")


# ------------------------------------------------------------ verify blocks


def _prime_power_block(args: tuple[int, int, int, int]) -> tuple[int, list[CongruenceCase]]:
    p, alpha, a_max, b_max = args
    failures = []
    total = 0
    for a in range(1, a_max + 1):
        for b in range(1, b_max + 1):
            case = check_prime_power_descent(p, alpha, a, b)
            total += 1
            if not case.holds:
                failures.append(case)
    return total, failures


def _mod_four_block(args: tuple[int, int]) -> tuple[int, list[CongruenceCase]]:
    k, a_max = args
    failures = []
    total = 0
    for a in range(1, a_max + 1):
        case = check_mod_four_descent(k, a)
        total += 1
        if not case.holds:
            failures.append(case)
    return total, failures


def _equality_case(params: dict[str, int], difference: Fraction) -> CongruenceCase:
    # x == 0 encoded as a congruence: (|x| + 1) divides x only at x = 0
    numerator = difference.numerator
    return CongruenceCase(params, numerator, 0, abs(numerator) + 1)


def _integrality_block(
    args: tuple[int, int]
) -> dict[str, tuple[int, list[CongruenceCase]]]:
    """All integrality checks for one (size, w): entries, pair sums,
    route agreement, determinant, inverse entries."""
    size, w = args
    entry_total, entry_failures = 0, []
    pair_total, pair_failures = 0, []
    matrix = build_transform_matrix(TransformMethod.CLOSED_FORM, size, w)
    for (s, t), value in matrix.items():
        entry_total += 1
        case = CongruenceCase(
            {"s": s, "t": t, "w": w}, value.numerator, 0, value.denominator
        )
        if not case.holds:
            entry_failures.append(case)
        if s != t:
            report = verify_divisibility(s, t, w)
            pair_total += report.total_cases
            pair_failures.extend(report.failures)
            agreement = CongruenceCase(
                {"s": s, "t": t, "w": w, "agreement": 1},
                int(report.passed),
                int(value.denominator == 1),
                2,
            )
            entry_total += 1
            if not agreement.holds:
                entry_failures.append(agreement)
    det_case = _equality_case({"w": w, "determinant": 1}, determinant(matrix) - 1)
    entry_total += 1
    if not det_case.holds:
        entry_failures.append(det_case)
    for (s, t), value in triangular_inverse(matrix).items():
        case = CongruenceCase(
            {"s": s, "t": t, "w": w, "inverse": 1}, value.numerator, 0, value.denominator
        )
        entry_total += 1
        if not case.holds:
            entry_failures.append(case)
    return {
        CheckKind.ENTRY_INTEGRALITY.value: (entry_total, entry_failures),
        CheckKind.PAIR_SUM_DIVISIBILITY.value: (pair_total, pair_failures),
    }


def _parallel_map(fn: Callable, items: list, jobs: int) -> list:
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=min(jobs, len(items))) as pool:
            return list(pool.map(fn, items))
    return [fn(item) for item in items]


# ----------------------------------------------------------------- reports


def _case_obj(check: str, case: CongruenceCase) -> dict[str, object]:
    return {
        "check": check,
        "parameters": dict(sorted(case.parameters.items())),
        "lhs": case.lhs,
        "rhs": case.rhs,
        "modulus": case.modulus,
        "holds": case.holds,
    }


def _report_payload(
    job: JobSpec, tallies: dict[str, tuple[int, list[CongruenceCase]]]
) -> dict[str, object]:
    failures = []
    summary = {}
    total = 0
    for check, (cases, failed) in sorted(tallies.items()):
        total += cases
        summary[check] = {"cases": cases, "failures": len(failed)}
        failures.extend(_case_obj(check, case) for case in failed)
    return {
        "job": {
            "command": job.command.value,
            "parameters": job.parameters,
            "input": job.input_path,
            "output": job.output_path,
        },
        "total_cases": total,
        "failures": failures,
        "summary": summary,
        "meta": {
            "version": __version__,
            "timestamp": datetime.now(timezone.utc).isoformat(),
        },
    }


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _emit_report(job: JobSpec, tallies: dict[str, tuple[int, list[CongruenceCase]]]) -> int:
    payload = _report_payload(job, tallies)
    _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", job.output_path)
    return EXIT_OK if not payload["failures"] else EXIT_VERIFY


# ---------------------------------------------------------------- handlers

_TRANSFORMS: dict[tuple[str, str], Callable[[InvariantSequence], InvariantSequence]] = {
    ("local-bps", "local-gw"): local_bps_to_gw,
    ("local-gw", "local-bps"): local_gw_to_bps,
    ("relative-bps", "relative-gw"): relative_bps_to_gw,
    ("relative-gw", "relative-bps"): relative_gw_to_bps,
    ("local-gw", "relative-gw"): lambda s: bridge_gw(
        s, BridgeDirection.LOCAL_GW_TO_RELATIVE_GW
    ),
    ("relative-gw", "local-gw"): lambda s: bridge_gw(
        s, BridgeDirection.RELATIVE_GW_TO_LOCAL_GW
    ),
}


def _run_transform(job: JobSpec) -> int:
    pair = (str(job.parameters["from"]), str(job.parameters["to"]))
    fn = _TRANSFORMS.get(pair)
    if fn is None:
        print(f"usage error: no transform from {pair[0]} to {pair[1]}", file=sys.stderr)
        return EXIT_USAGE
    seq = load_sequence(job.input_path or "")
    if seq.kind is not _CLI_KIND[pair[0]]:
        raise InputError(
            f"sequence kind {seq.kind.value} does not match --from {pair[0]}"
        )
    _emit(dump_sequence(fn(seq)), job.output_path)
    return EXIT_OK


def _run_pipeline(job: JobSpec) -> int:
    seq = load_sequence(job.input_path or "")
    if seq.kind is SequenceKind.LOCAL_BPS:
        out = pipeline_local_bps_to_relative_bps(seq)
    elif seq.kind is SequenceKind.RELATIVE_BPS:
        out = pipeline_relative_bps_to_local_bps(seq)
    else:
        raise InputError("pipeline input must be a local_bps or relative_bps sequence")
    _emit(dump_sequence(out), job.output_path)
    return EXIT_OK


def _run_matrix(job: JobSpec) -> int:
    size = int(job.parameters["n"])
    w = int(job.parameters["w"])
    method = str(job.parameters["method"])
    if method == "both":
        closed = build_transform_matrix(TransformMethod.CLOSED_FORM, size, w)
        product = build_transform_matrix(TransformMethod.PRODUCT, size, w)
        if closed != product:
            mismatches = [
                (i, j)
                for (i, j), _ in closed.items()
                if closed.entry(i, j) != product.entry(i, j)
            ]
            print(
                f"method mismatch at entries {mismatches[:10]} (n={size}, w={w})",
                file=sys.stderr,
            )
            return EXIT_VERIFY
        matrix = closed
    else:
        matrix = build_transform_matrix(TransformMethod(method), size, w)
    _emit(to_tsv(matrix), job.output_path)
    return EXIT_OK


def _run_verify_congruences(job: JobSpec) -> int:
    params = job.parameters
    jobs = int(params["jobs"])
    prime_blocks = [
        (p, alpha, int(params["a_max"]), int(params["b_max"]))
        for p in params["primes"]
        for alpha in range(2 if p == 2 else 1, int(params["alpha_max"]) + 1)
    ]
    odd_blocks = [
        (k, int(params["odd_a_max"]))
        for k in range(1, int(params["odd_k_max"]) + 1, 2)
    ]
    prime_results = _parallel_map(_prime_power_block, prime_blocks, jobs)
    odd_results = _parallel_map(_mod_four_block, odd_blocks, jobs)
    tallies = {
        CheckKind.PRIME_POWER_DESCENT.value: (
            sum(t for t, _ in prime_results),
            [c for _, fs in prime_results for c in fs],
        ),
        CheckKind.MOD_FOUR_DESCENT.value: (
            sum(t for t, _ in odd_results),
            [c for _, fs in odd_results for c in fs],
        ),
    }
    return _emit_report(job, tallies)


def _run_verify_integrality(job: JobSpec) -> int:
    params = job.parameters
    blocks = [
        (int(params["n"]), w)
        for w in range(int(params["w_min"]), int(params["w_max"]) + 1)
    ]
    results = _parallel_map(_integrality_block, blocks, int(params["jobs"]))
    tallies: dict[str, tuple[int, list[CongruenceCase]]] = {}
    for result in results:
        for check, (total, failures) in result.items():
            old_total, old_failures = tallies.get(check, (0, []))
            tallies[check] = (old_total + total, old_failures + failures)
    return _emit_report(job, tallies)


def _run_dt_table(job: JobSpec) -> int:
    table = dt_table(int(job.parameters["n_max"]), int(job.parameters["m_max"]))
    _emit(table_to_tsv(table), job.output_path)
    for bad in table.inconsistencies:
        print(
            f"inconsistent realizations at n={bad.n}, m={bad.m}: {bad.realizations}",
            file=sys.stderr,
        )
    for cell in table.negatives:
        print(
            f"note: negative value {cell.value} at n={cell.n}, m={cell.m}",
            file=sys.stderr,
        )
    return EXIT_OK if table.consistent else EXIT_VERIFY


_HANDLERS = {
    Command.TRANSFORM: _run_transform,
    Command.PIPELINE: _run_pipeline,
    Command.MATRIX: _run_matrix,
    Command.VERIFY_CONGRUENCES: _run_verify_congruences,
    Command.VERIFY_INTEGRALITY: _run_verify_integrality,
    Command.DT_TABLE: _run_dt_table,
}


def run(job: JobSpec) -> int:
    """Execute a JobSpec and return the process exit status."""
    handler = _HANDLERS[job.command]
    try:
        return handler(job)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except KindMismatchError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_IO


def main(argv: Sequence[str] | None = None) -> int:
    # failure reports may carry very large exact integers
    try:
        sys.set_int_max_str_digits(0)
    except (AttributeError, ValueError):
        pass
    job = parse_args(sys.argv[1:] if argv is None else argv)
    return run(job)


if __name__ == "__main__":
    sys.exit(main())
