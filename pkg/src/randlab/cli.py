"""Deterministic command-line reports over the workbench.

Every report embeds the full run configuration (budget, length limit, depth,
stage, registry fingerprint), so identical invocations produce byte-identical
output.  CSV reports start with ``# key=value`` configuration comments and
use LF line endings; JSON reports are a single object with ``config`` and
``results`` keys, sorted.  Bitstrings are ASCII ``0``/``1`` with the empty
string spelled ``-`` on the command line, in files, and in report cells.
Exact dyadic cells render as reduced fractions over powers of two; decimal
columns are annotations (dyadic decimals terminate, so they are exact too).

Exit status: 0 on success, 1 on domain errors and definite failures (Kraft
overflow, bridge mass violations, failed test levels, exhausted searches),
2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

from .bitstr import Dyadic, all_strings, index_to_string
from .complexity import (
    PAD_SCAN_LIMIT,
    census_incompressible,
    horizon_search,
    pad_witness,
    plain_c,
    prefix_k,
    registry_constants,
    subadditivity_probe,
)
from .machine import (
    DEFAULT_BUDGET,
    DEFAULT_LEN_LIMIT,
    dovetail_events,
    registry_fingerprint,
)
from .mltest import (
    DEFAULT_DEPTH,
    DEFAULT_K_LEN_LIMIT,
    builtin_tests,
    ml_to_kc_decoder,
    registered_tests,
    score,
    sense1_to_sense2,
    universal_test,
    validate_sense1,
)
from .omega import omega_lower_bound, psi_reconstruct
from .prefixfree import cover_measure, is_prefix_free, kraft_code, kraft_sum, prefix_freeize

DEFAULT_STAGE = 4096

STREAMS = {
    "zeros": lambda n: "0" * n,
    "ones": lambda n: "1" * n,
    "alternating": lambda n: ("01" * n)[:n],
}


@dataclass(frozen=True)
class RunConfig:
    budget: int
    len_limit: int
    depth: int
    stage: int
    registry_fingerprint: str

    def as_dict(self) -> dict[str, int | str]:
        return {
            "budget": self.budget,
            "len_limit": self.len_limit,
            "depth": self.depth,
            "stage": self.stage,
            "registry_fingerprint": self.registry_fingerprint,
        }


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------


def spell(bits: str) -> str:
    """The report spelling of a bitstring: '-' for the empty string."""
    return bits if bits else "-"


def unspell(text: str) -> str:
    if text == "-":
        return ""
    if any(c not in "01" for c in text):
        raise ValueError(f"not a bitstring: {text!r}")
    return text


def render_dyadic(r: Dyadic) -> str:
    return str(r.num) if r.scale == 0 else f"{r.num}/{2 ** r.scale}"


def render_decimal(r: Dyadic) -> str:
    """Exact terminating decimal of num / 2^scale."""
    if r.scale == 0:
        return str(r.num)
    digits = str(r.num * 5**r.scale).rjust(r.scale + 1, "0")
    return (digits[: -r.scale] + "." + digits[-r.scale :]).rstrip("0").rstrip(".")


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _report_text(fmt: str, config: RunConfig, columns: list[str], rows: list[dict]) -> str:
    if fmt == "json":
        payload = {"config": config.as_dict(), "results": rows}
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    buf = io.StringIO()
    for key, value in sorted(config.as_dict().items()):
        buf.write(f"# {key}={value}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row[c]) for c in columns])
    return buf.getvalue()


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="ascii", newline="") as fh:
            fh.write(text)


def _emit(args, columns: list[str], rows: list[dict]) -> None:
    config = RunConfig(
        args.budget, args.len_limit, args.depth, args.stage, registry_fingerprint()
    )
    _write(_report_text(args.format, config, columns, rows), args.out)


def _emit_set(args, strings: list[str]) -> None:
    text = "".join(spell(b) + "\n" for b in strings)
    _write(text, args.out)


def _canonical(strings) -> list[str]:
    return sorted(set(strings), key=lambda b: (len(b), b))


def _gather_strings(args) -> list[str]:
    strings = list(args.strings)
    if args.in_file is not None:
        with open(args.in_file, encoding="ascii") as fh:
            for line in fh:
                line = line.strip()
                if line and not line.startswith("#"):
                    strings.append(unspell(line))
    return strings


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------


def _cmd_enum(args) -> int:
    rows = [{"index": m, "string": spell(index_to_string(m))} for m in range(args.count)]
    _emit(args, ["index", "string"], rows)
    return 0


def _cmd_pfz(args) -> int:
    antichain = prefix_freeize(_canonical(_gather_strings(args)))
    _emit_set(args, _canonical(antichain))
    return 0


def _cmd_kraft(args) -> int:
    _emit_set(args, kraft_code(args.lengths))
    return 0


def _cmd_measure(args) -> int:
    strings = _canonical(_gather_strings(args))
    rows = [
        {"metric": "members", "value": len(strings)},
        {"metric": "prefix_free", "value": is_prefix_free(strings)},
        {"metric": "kraft_sum", "value": render_dyadic(kraft_sum(strings))},
        {"metric": "cover_measure", "value": render_dyadic(cover_measure(strings))},
    ]
    _emit(args, ["metric", "value"], rows)
    return 0


def _cmd_complexity_scan(args) -> int:
    rows = []
    for b in all_strings(args.max_len):
        row: dict = {"string": spell(b)}
        for tag, op in (("c", plain_c), ("k", prefix_k)):
            bound = op(b, args.len_limit, args.budget)
            row[f"{tag}_value"] = bound.value if bound else None
            row[f"{tag}_witness"] = spell(bound.witness) if bound else None
            row[f"{tag}_exhaustive"] = bound.exhaustive if bound else None
        rows.append(row)
    columns = ["string"] + [f"{t}_{f}" for t in "ck" for f in ("value", "witness", "exhaustive")]
    _emit(args, columns, rows)
    return 0


def _cmd_complexity_census(args) -> int:
    rows = [
        {
            "n": n,
            "incompressible": census_incompressible(n, args.len_limit, args.budget),
            "strings": 2**n,
        }
        for n in range(args.max_n + 1)
    ]
    _emit(args, ["n", "incompressible", "strings"], rows)
    return 0


def _cmd_complexity_pad(args) -> int:
    witness = pad_witness(STREAMS[args.stream], args.k, args.len_limit, args.budget)
    if witness is None:
        print(
            f"randlab: no pad witness for k={args.k} within len_limit={args.len_limit}",
            file=sys.stderr,
        )
        return 1
    rows = [
        {
            "stream": args.stream,
            "k": args.k,
            "n": witness.n,
            "value": witness.bound.value,
            "witness": spell(witness.bound.witness),
            "overhead": witness.overhead,
        }
    ]
    _emit(args, ["stream", "k", "n", "value", "witness", "overhead"], rows)
    return 0


def _cmd_complexity_horizon(args) -> int:
    m = horizon_search(args.k, args.max_m, args.len_limit, args.budget)
    if m is None:
        print(
            f"randlab: no horizon for k={args.k} below m={args.max_m} at these limits",
            file=sys.stderr,
        )
        return 1
    _emit(args, ["k", "m"], [{"k": args.k, "m": m}])
    return 0


def _cmd_complexity_subadd(args) -> int:
    report = subadditivity_probe(args.max_n, args.len_limit, args.budget)
    row = {
        "n_max": report.n_max,
        "pair_overhead": report.pair_overhead,
        "plain_gap_max": report.plain_gap_max,
        "plain_pairs": report.plain_pairs,
        "prefix_violations": len(report.prefix_violations),
        "prefix_pairs": report.prefix_pairs,
    }
    row.update(registry_constants())
    columns = list(row)
    _emit(args, columns, [row])
    return 0


def _cmd_omega(args) -> int:
    if args.until_mass is not None:
        halted = psi_reconstruct(args.until_mass, args.stage, args.len_limit)
        if halted is None:
            print(
                f"randlab: halted mass within {args.stage} stages never exceeds "
                f"the threshold {spell(args.until_mass)}",
                file=sys.stderr,
            )
            return 1
        _emit(args, ["program"], [{"program": spell(p)} for p in _canonical(halted)])
        return 0
    rows = []
    running = Dyadic(0, 0)
    for event in dovetail_events(args.stage, args.len_limit):
        running = running + Dyadic(1, len(event.program))
        rows.append(
            {
                "program": spell(event.program),
                "stage": event.stage,
                "status": event.outcome.status,
                "output": spell(event.outcome.output),
                "lower_bound": render_dyadic(running),
                "lower_bound_decimal": render_decimal(running),
            }
        )
    columns = ["program", "stage", "status", "output", "lower_bound", "lower_bound_decimal"]
    _emit(args, columns, rows)
    return 0


def _cmd_mltest_validate(args) -> int:
    verdicts = validate_sense1(registered_tests()[args.test], args.levels, args.depth)
    rows = [
        {
            "m": v.m,
            "verdict": v.verdict,
            "measure": render_dyadic(v.measure),
            "bound": render_dyadic(v.bound),
            "depth": v.depth,
        }
        for v in verdicts
    ]
    _emit(args, ["m", "verdict", "measure", "bound", "depth"], rows)
    return 1 if any(v.verdict == "fail" for v in verdicts) else 0


def _cmd_mltest_convert(args) -> int:
    conv = sense1_to_sense2(registered_tests()[args.test], args.depth)
    rows = [
        {"n": n, "member": spell(b)}
        for n in range(1, args.levels + 1)
        for b in _canonical(conv.enumerate(n, args.depth))
    ]
    _emit(args, ["n", "member"], rows)
    return 0


def _cmd_mltest_universal(args) -> int:
    tests = registered_tests()
    battery = [sense1_to_sense2(tests[name], args.depth) for name in args.tests]
    cover = universal_test(battery, args.level, args.depth)
    _emit(args, ["member"], [{"member": spell(b)} for b in _canonical(cover)])
    return 0


def _cmd_mltest_score(args) -> int:
    report = score(
        args.subject,
        len_limit=args.len_limit,
        budget=args.budget,
        depth=args.depth,
    )
    verdicts = dict(report.verdicts)
    rows = [
        {"name": name, "level": level, "verdict": verdicts[name]}
        for name, level in report.levels
    ]
    rows.append(
        {
            "name": "compression-deficiency",
            "level": report.compression_deficiency,
            "verdict": None,
        }
    )
    _emit(args, ["name", "level", "verdict"], rows)
    return 0


def _cmd_mltest_bridge(args) -> int:
    conv = sense1_to_sense2(registered_tests()[args.test], args.depth)
    # reporting only: the in-process registry is left untouched
    result = ml_to_kc_decoder(conv, args.n_max, args.depth, install=False)
    rows = [
        {"codeword": codeword, "length": ell, "n": n, "target": spell(b)}
        for (codeword, _), (ell, n, b) in zip(result.decoder, result.triples)
    ]
    _emit(args, ["codeword", "length", "n", "target"], rows)
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _bits_arg(text: str) -> str:
    try:
        return unspell(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _lengths_arg(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a length list: {text!r}") from exc


def _test_names_arg(text: str) -> list[str]:
    names = [part for part in text.split(",") if part]
    known = registered_tests()
    for name in names:
        if name not in known:
            raise argparse.ArgumentTypeError(f"unknown test: {name!r}")
    return names


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    common.add_argument("--len-limit", dest="len_limit", type=int, default=DEFAULT_LEN_LIMIT)
    common.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    common.add_argument("--stage", type=int, default=DEFAULT_STAGE)
    common.add_argument("--out", default=None)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    return common


def _build_parser() -> argparse.ArgumentParser:
    # a fresh parent per subparser: set_defaults mutates shared action objects
    test_names = sorted(registered_tests())
    parser = argparse.ArgumentParser(
        prog="randlab",
        description="exact workbench reports: enumerations, antichains, "
        "budgeted complexity, halting mass, and Martin-Löf tests",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enum", parents=[_common_flags()], help="length-lex enumeration rows")
    p.add_argument("--count", type=int, required=True)
    p.set_defaults(handler=_cmd_enum)

    p = sub.add_parser("pfz", help="reduce a set to its covering antichain")
    p.add_argument("strings", nargs="*", type=_bits_arg)
    p.add_argument("--in", dest="in_file", default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(handler=_cmd_pfz)

    p = sub.add_parser("kraft", help="leftmost codewords for a length list")
    p.add_argument("--lengths", type=_lengths_arg, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(handler=_cmd_kraft)

    p = sub.add_parser("measure", parents=[_common_flags()], help="exact mass of a string set")
    p.add_argument("strings", nargs="*", type=_bits_arg)
    p.add_argument("--in", dest="in_file", default=None)
    p.set_defaults(handler=_cmd_measure)

    p = sub.add_parser("complexity", help="budgeted complexity reports")
    csub = p.add_subparsers(dest="subcommand", required=True)
    q = csub.add_parser("scan", parents=[_common_flags()], help="C_t/K_t bounds for short strings")
    q.add_argument("--max-len", dest="max_len", type=int, default=4)
    q.set_defaults(handler=_cmd_complexity_scan)
    q = csub.add_parser("census", parents=[_common_flags()], help="incompressible string counts")
    q.add_argument("--max-n", dest="max_n", type=int, default=8)
    q.set_defaults(handler=_cmd_complexity_census)
    q = csub.add_parser("pad", parents=[_common_flags()], help="pad-compressed stream prefixes")
    q.add_argument("--stream", choices=sorted(STREAMS), default="zeros")
    q.add_argument("--k", type=int, required=True)
    q.set_defaults(handler=_cmd_complexity_pad, len_limit=PAD_SCAN_LIMIT)
    q = csub.add_parser("horizon", parents=[_common_flags()], help="compressible-prefix horizon")
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--max-m", dest="max_m", type=int, default=6)
    q.set_defaults(handler=_cmd_complexity_horizon)
    q = csub.add_parser("subadd", parents=[_common_flags()], help="pairing constants and gaps")
    q.add_argument("--max-n", dest="max_n", type=int, default=3)
    q.set_defaults(handler=_cmd_complexity_subadd)

    p = sub.add_parser("omega", parents=[_common_flags()], help="halting-mass lower bounds")
    p.add_argument("--until-mass", dest="until_mass", type=_bits_arg, default=None)
    p.set_defaults(handler=_cmd_omega)

    p = sub.add_parser("mltest", help="Martin-Löf test reports")
    msub = p.add_subparsers(dest="subcommand", required=True)
    q = msub.add_parser("validate", parents=[_common_flags()], help="per-level measure verdicts")
    q.add_argument("--test", choices=test_names, required=True)
    q.add_argument("--levels", type=int, default=3)
    q.set_defaults(handler=_cmd_mltest_validate)
    q = msub.add_parser("convert", parents=[_common_flags()], help="materialized sense-2 levels")
    q.add_argument("--test", choices=test_names, required=True)
    q.add_argument("--levels", type=int, default=3)
    q.set_defaults(handler=_cmd_mltest_convert)
    q = msub.add_parser("universal", parents=[_common_flags()], help="battery-universal cover")
    q.add_argument("--level", type=int, default=1)
    q.add_argument(
        "--tests",
        type=_test_names_arg,
        default=[t.name for t in builtin_tests()],
    )
    q.set_defaults(handler=_cmd_mltest_universal)
    q = msub.add_parser("score", parents=[_common_flags()], help="levels and deficiency of a subject")
    q.add_argument("--subject", type=_bits_arg, required=True)
    q.set_defaults(handler=_cmd_mltest_score, len_limit=DEFAULT_K_LEN_LIMIT)
    q = msub.add_parser("bridge", parents=[_common_flags()], help="Kraft decoder for test slices")
    q.add_argument("--test", choices=test_names, required=True)
    q.add_argument("--n-max", dest="n_max", type=int, default=2)
    q.set_defaults(handler=_cmd_mltest_bridge)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except ValueError as exc:
        print(f"randlab: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
