"""Command-line interface: counting, classification, verification, reports.

Exit status: 0 on success, 1 when a verification check fails (or the two
classifiers disagree), 2 for usage errors such as malformed bounds or
non-squarefree classify inputs.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from pathlib import Path

from . import asymptotics, enumeration
from .fields import FieldTriple, InvalidFieldError, from_generators, subfield_data
from .hnp import classify_by_congruences, classify_by_splitting

SCHEMA_VERSION = 1
EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2

EQUIVALENCE_SWEEP_BOUND = 2000  # |m * a1 * b1| bound of the classifier sweep
DISC_IDENTITY_BOUND = 10**8  # disc bound of the discriminant identity sweep


@dataclass
class RunConfig:
    max_disc: int
    threads: int = 1
    output_format: str = "text"
    audit_bound: int = 0
    prime_limit: int = asymptotics.DEFAULT_PRIME_LIMIT
    output_path: str | None = None

    def __post_init__(self) -> None:
        if self.max_disc < 1:
            raise ValueError("--max-disc must be a positive integer")
        if self.threads < 1:
            raise ValueError("--threads must be >= 1")
        if self.audit_bound > self.max_disc:
            raise ValueError("--audit-bound cannot exceed --max-disc")


def parse_bound(text: str) -> int:
    """Exact integer from a decimal or scientific literal such as 1e10."""
    try:
        value = Decimal(text)
    except InvalidOperation:
        raise argparse.ArgumentTypeError(f"not a numeric bound: {text!r}")
    if value != value.to_integral_value():
        raise argparse.ArgumentTypeError(f"bound must be an integer: {text!r}")
    return int(value)


def positive_bound(text: str) -> int:
    value = parse_bound(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"bound must be positive: {text!r}")
    return value


def _float15(x: float) -> str:
    return format(x, ".15g")


def _emit(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _label_dict(label: enumeration.ClassLabel, count: int, failing: int) -> dict:
    return {
        "sign2": label.sign2,
        "sign3": label.sign3,
        "even_slot": label.even_slot,
        "residues": list(label.residues),
        "count": count,
        "failing": failing,
    }


def _sorted_classes(report: enumeration.CountReport) -> list[tuple]:
    rows = []
    for label, count in report.per_class.items():
        failing = report.per_class_failing.get(label, 0)
        rows.append((label.sign2, label.sign3, label.even_slot, label.residues, count, failing))
    rows.sort(key=lambda r: (r[2], -r[0], -r[1], r[3]))
    return rows


def cmd_count(args: argparse.Namespace) -> int:
    config = RunConfig(
        max_disc=args.max_disc,
        threads=args.threads,
        output_format=args.format,
        audit_bound=args.audit_bound,
        output_path=args.out,
    )
    records_file = open(args.records, "w", encoding="utf-8") if args.records else None

    def record_sink(triple, data, status):
        line = json.dumps(
            {
                "m": triple.m,
                "a1": triple.a1,
                "b1": triple.b1,
                "disc": data.field_disc,
                "c": data.c,
                "verdict": status.verdict,
            }
        )
        records_file.write(line + "\n")

    started = time.perf_counter()
    try:
        report = enumeration.enumerate_fields(
            config.max_disc,
            sink=record_sink if records_file else None,
            threads=config.threads,
            audit_bound=config.audit_bound,
        )
    finally:
        if records_file:
            records_file.close()
    elapsed = time.perf_counter() - started

    if config.output_format == "json":
        payload = {
            "schema_version": SCHEMA_VERSION,
            "X": report.X,
            "S": report.S,
            "S_tilde": report.S_tilde,
            "ordered_total": report.ordered_total,
            "fail_fraction": report.fail_fraction,
            "wall_time_s": elapsed,
            "classes": [
                _label_dict(
                    enumeration.ClassLabel(r[0], r[1], r[2], r[3]), r[4], r[5]
                )
                for r in _sorted_classes(report)
            ],
        }
        _emit(json.dumps(payload, indent=2), config.output_path)
    elif config.output_format == "csv":
        lines = ["sign2,sign3,even_slot,res1,res2,res3,count,failing"]
        for s2, s3, slot, res, count, failing in _sorted_classes(report):
            lines.append(f"{s2},{s3},{slot},{res[0]},{res[1]},{res[2]},{count},{failing}")
        _emit("\r\n".join(lines) + "\r\n", config.output_path)
    else:
        lines = [
            f"X = {report.X}",
            f"S (all fields)      = {report.S}",
            f"S~ (HNP failures)   = {report.S_tilde}",
            f"ordered tuples      = {report.ordered_total}",
            f"fail fraction       = {_float15(report.fail_fraction)}",
            f"classes represented = {len(report.per_class)}",
            f"wall time           = {elapsed:.3f} s",
        ]
        _emit("\n".join(lines) + "\n", config.output_path)
    return EXIT_OK


def cmd_classify(args: argparse.Namespace) -> int:
    try:
        if args.gens:
            triple = from_generators(args.gens[0], args.gens[1])
        else:
            m, a1, b1 = args.triple
            triple = FieldTriple(m, a1, b1)
            triple.validate()
    except InvalidFieldError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    data = subfield_data(triple)
    by_splitting = classify_by_splitting(triple)
    by_congruences = classify_by_congruences(triple)
    agree = by_splitting.verdict == by_congruences.verdict
    if args.format == "json":
        payload = {
            "schema_version": SCHEMA_VERSION,
            "m": triple.m,
            "a1": triple.a1,
            "b1": triple.b1,
            "kernels": list(data.kernels),
            "fundamental_discs": list(data.fundamental_discs),
            "disc": data.field_disc,
            "c": data.c,
            "verdict": by_splitting.verdict,
            "witness": by_splitting.witness,
            "classifiers_agree": agree,
        }
        print(json.dumps(payload, indent=2))
    else:
        print(f"triple        (m, a1, b1) = ({triple.m}, {triple.a1}, {triple.b1})")
        print(f"kernels       {data.kernels}")
        print(f"fundamental   {data.fundamental_discs}")
        print(f"disc          {data.field_disc}   (c = {data.c})")
        print(f"splitting     {by_splitting.verdict}")
        print(f"congruences   {by_congruences.verdict}")
        if by_splitting.witness is not None:
            print(f"witness       {by_splitting.witness}")
    if not agree:
        print("error: classifiers disagree", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def _verify_checks(threads: int) -> list[tuple[str, str, str, bool]]:
    checks: list[tuple[str, str, str, bool]] = []

    value = asymptotics.total_class_weight()
    checks.append(("class weight sum (all classes)", "23", str(value), value == 23))

    value = asymptotics.failing_class_weight()
    checks.append(("class weight sum (failure classes)", "112", str(value), value == 112))

    signed = asymptotics.signed_failing_class_weight()
    checks.append(("signed class weight sum", "0", str(signed), signed == 0))
    blocks = [
        asymptotics.signed_failing_class_weight(sign_pairs=(pair,))
        for pair in asymptotics.SIGN_PAIRS
    ]
    checks.append(
        (
            "signed class weight sum per sign pair",
            "0, 0, 0, 0",
            ", ".join(str(b) for b in blocks),
            all(b == 0 for b in blocks),
        )
    )

    # discriminant identity and kernel parity law over all tuples with
    # disc <= DISC_IDENTITY_BOUND, checked from the raw enumeration records
    records = enumeration.field_records(DISC_IDENTITY_BOUND, threads=threads)
    bad = 0
    for row in records:
        t = FieldTriple(int(row[0]), int(row[1]), int(row[2]))
        data = subfield_data(t)  # raises if |d1 d2 d3| != (c m |a1 b1|)^2
        ones = sum(1 for k in data.kernels if k % 4 == 1)
        if data.field_disc != int(row[3]) or ones == 2:
            bad += 1
    checks.append(
        (
            f"discriminant identity, {len(records)} tuples to disc {DISC_IDENTITY_BOUND:.0e}",
            "0 violations",
            f"{bad} violations",
            bad == 0,
        )
    )

    from .arith import build_sieve

    sieve = build_sieve(EQUIVALENCE_SWEEP_BOUND)
    mismatches = 0
    total = 0
    for t in enumeration.iter_valid_triples(EQUIVALENCE_SWEEP_BOUND):
        total += 1
        if classify_by_splitting(t, sieve).verdict != classify_by_congruences(t, sieve).verdict:
            mismatches += 1
    checks.append(
        (
            f"classifier equivalence, {total} triples to |m a1 b1| = {EQUIVALENCE_SWEEP_BOUND}",
            "0 disagreements",
            f"{mismatches} disagreements",
            mismatches == 0,
        )
    )
    return checks


def cmd_verify(args: argparse.Namespace) -> int:
    checks = _verify_checks(args.threads)
    ok = all(passed for *_, passed in checks)
    if args.format == "json":
        payload = {
            "schema_version": SCHEMA_VERSION,
            "passed": ok,
            "checks": [
                {"name": name, "expected": exp, "actual": act, "passed": passed}
                for name, exp, act, passed in checks
            ],
        }
        print(json.dumps(payload, indent=2))
    else:
        for name, expected, actual, passed in checks:
            tag = "PASS" if passed else "FAIL"
            print(f"{tag}  {name}: expected {expected}, got {actual}")
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def cmd_constants(args: argparse.Namespace) -> int:
    total = asymptotics.euler_product_total(args.prime_limit)
    failing = asymptotics.euler_product_failing(args.prime_limit)
    cross = asymptotics.main_term_constant_crosscheck(args.prime_limit)
    if args.format == "json":
        payload = {
            "schema_version": SCHEMA_VERSION,
            "prime_limit": args.prime_limit,
            "euler_product_total": {
                "value": total.value,
                "tail_bound": total.tail_bound,
            },
            "euler_product_failing": {
                "value": failing.value,
                "tail_bound": failing.tail_bound,
            },
            "crosscheck": {
                "agrees": cross.agrees,
                "direct": cross.direct,
                "assembled": cross.assembled,
                "residual": cross.residual,
                "combined_tail": cross.combined_tail,
            },
        }
        print(json.dumps(payload, indent=2))
    else:
        print(f"prime limit                   {args.prime_limit}")
        print(f"Euler product (all fields)    {_float15(total.value)} +- {total.tail_bound:.2e}")
        print(f"Euler product (failures)      {_float15(failing.value)} +- {failing.tail_bound:.2e}")
        print(f"failing main-term coefficient {_float15(cross.direct)}")
        print(f"assembled closed form         {_float15(cross.assembled)}")
        print(f"relative residual             {cross.residual:.2e}")
        print(f"agreement within tails        {cross.agrees}")
    return EXIT_OK if cross.agrees else EXIT_VERIFY_FAILED


def cmd_compare(args: argparse.Namespace) -> int:
    checkpoints = args.checkpoints
    if sorted(checkpoints) != checkpoints:
        print("error: checkpoints must be ascending", file=sys.stderr)
        return EXIT_USAGE
    c_total = asymptotics.euler_product_total(args.prime_limit).value
    c_failing = asymptotics.euler_product_failing(args.prime_limit).value
    rows = []
    for x in checkpoints:
        report = enumeration.enumerate_fields(x, threads=args.threads)
        s_main = asymptotics.main_term_total(x, c_total)
        st_main = asymptotics.main_term_failing(x, c_failing)
        rows.append(
            {
                "X": x,
                "S": report.S,
                "S_main": s_main,
                "S_ratio": report.S / s_main if s_main else 0.0,
                "Stilde": report.S_tilde,
                "Stilde_main": st_main,
                "Stilde_ratio": report.S_tilde / st_main if st_main else 0.0,
                "fail_fraction": report.fail_fraction,
            }
        )
    if args.format == "json":
        payload = {"schema_version": SCHEMA_VERSION, "rows": rows}
        _emit(json.dumps(payload, indent=2), args.out)
    elif args.format == "text":
        header = f"{'X':>14} {'S':>10} {'S_ratio':>9} {'Stilde':>8} {'St_ratio':>9} {'fail_frac':>10}"
        lines = [header]
        for r in rows:
            lines.append(
                f"{r['X']:>14} {r['S']:>10} {r['S_ratio']:>9.4f} "
                f"{r['Stilde']:>8} {r['Stilde_ratio']:>9.4f} {r['fail_fraction']:>10.6f}"
            )
        _emit("\n".join(lines) + "\n", args.out)
    else:
        lines = ["X,S,S_main,S_ratio,Stilde,Stilde_main,Stilde_ratio,fail_fraction"]
        for r in rows:
            lines.append(
                ",".join(
                    [
                        str(r["X"]),
                        str(r["S"]),
                        _float15(r["S_main"]),
                        _float15(r["S_ratio"]),
                        str(r["Stilde"]),
                        _float15(r["Stilde_main"]),
                        _float15(r["Stilde_ratio"]),
                        _float15(r["fail_fraction"]),
                    ]
                )
            )
        _emit("\r\n".join(lines) + "\r\n", args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="biquad-hnp",
        description=(
            "Count biquadratic extensions of Q by discriminant and decide "
            "Hasse norm principle failures."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_count = sub.add_parser("count", help="enumerate fields with disc <= X")
    p_count.add_argument("--max-disc", type=positive_bound, required=True)
    p_count.add_argument("--threads", type=int, default=1)
    p_count.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p_count.add_argument("--out", default=None)
    p_count.add_argument("--audit-bound", type=parse_bound, default=0)
    p_count.add_argument(
        "--records",
        default=None,
        metavar="PATH",
        help="write one NDJSON record per field (keys m, a1, b1, disc, c, verdict)",
    )
    p_count.set_defaults(func=cmd_count)

    p_cls = sub.add_parser("classify", help="classify a single field")
    group = p_cls.add_mutually_exclusive_group(required=True)
    group.add_argument("--gens", type=int, nargs=2, metavar=("A", "B"))
    group.add_argument("--triple", type=int, nargs=3, metavar=("M", "A1", "B1"))
    p_cls.add_argument("--format", choices=("text", "json"), default="text")
    p_cls.set_defaults(func=cmd_classify)

    p_verify = sub.add_parser("verify", help="run the exact verification suite")
    p_verify.add_argument("--threads", type=int, default=1)
    p_verify.add_argument("--format", choices=("text", "json"), default="text")
    p_verify.set_defaults(func=cmd_verify)

    p_const = sub.add_parser("constants", help="evaluate the Euler-product constants")
    p_const.add_argument(
        "--prime-limit", type=positive_bound, default=asymptotics.DEFAULT_PRIME_LIMIT
    )
    p_const.add_argument("--format", choices=("text", "json"), default="text")
    p_const.set_defaults(func=cmd_constants)

    p_cmp = sub.add_parser("compare", help="counts vs main terms at checkpoints")
    p_cmp.add_argument(
        "--checkpoints",
        type=lambda s: [positive_bound(x) for x in s.split(",") if x],
        required=True,
        help="comma-separated ascending bounds, e.g. 1e6,1e8,1e10",
    )
    p_cmp.add_argument("--threads", type=int, default=1)
    p_cmp.add_argument("--format", choices=("csv", "json", "text"), default="csv")
    p_cmp.add_argument("--out", default=None)
    p_cmp.add_argument(
        "--prime-limit", type=positive_bound, default=asymptotics.DEFAULT_PRIME_LIMIT
    )
    p_cmp.set_defaults(func=cmd_compare)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, InvalidFieldError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
