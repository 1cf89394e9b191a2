"""Command-line front end: construction, decoding, censuses, bounds.

Subcommands
-----------
``code build``       code summary: polynomials, zero set, systematic matrix
``pcm modify``       place identity columns on a chosen zero set, score criteria
``pcm analyze``      criteria report for an existing matrix file
``decode``           run one received word through one decoder
``census``           exhaustive undecodable-pattern counts by erasure weight
``simulate``         Monte Carlo erasure-channel sweep over an epsilon grid
``bounds``           stopping-redundancy lower bounds for (n, k, u)
``expand``           greedy construction of a covering sequence set
``verify-perfect``   set-level comparison of a decoder against the ML oracle

Outputs embed the run configuration and a sha256 of every fixture file
consumed, so identical configurations rerun to byte-identical files.  CSV
uses "." decimals and no locale; JSON objects are emitted with sorted keys.

Exit codes: 0 success, 2 usage or data error, 3 budget-exceeded partial
census.  A decoding *failure* is a result, not an error: ``decode`` and
``verify-perfect`` exit 0 whenever the run itself completed.

Matrix and sequence arguments take a literal file path; a path that does
not exist is retried against the packaged fixtures directory by basename,
so ``fixtures/golay_Hm.txt`` works from any working directory.  The special
matrix name ``sys`` builds the systematic matrix of the code.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import sys
from pathlib import Path

from .analysis import (
    ExternalTables,
    expanded_from_sequences,
    greedy_expand,
    monte_carlo,
    perfect_decoding_check,
    run_census,
    stopping_redundancy_bounds,
)
from .codes import (
    CyclicCode,
    ParityCheckMatrix,
    fixture_path,
    parse_code_spec,
    systematic_pcm,
)
from .decoders import (
    ReceivedWord,
    agd,
    ied,
    ml_decode,
    ts_agd,
    ts_agd_expanded,
)
from .pcm import BinarySequence, criteria_report, modify_pcm, parity_check_sequence

_DECODER_NAMES = {
    "ied": "ied",
    "agd": "agd",
    "ts-agd": "ts_agd",
    "ts_agd": "ts_agd",
    "ts-agd-expanded": "ts_agd_expanded",
    "ts_agd_expanded": "ts_agd_expanded",
    "ml": "ml",
}
_DECODER_CHOICES = sorted(_DECODER_NAMES)


# -- shared plumbing ----------------------------------------------------------


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _json_payload(config: dict, fixtures: dict, result) -> str:
    doc = {"config": config, "fixtures": fixtures, "result": result}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _csv_payload(config: dict, fixtures: dict, body: str) -> str:
    head = ["# config " + json.dumps(config, sort_keys=True, separators=(",", ":"))]
    for name in sorted(fixtures):
        head.append(f"# fixture {name} sha256={fixtures[name]}")
    return "\n".join(head) + "\n" + body


def _read_fixture_file(spec: str, fixtures: dict, kind: str) -> str:
    path = Path(spec)
    if not path.is_file():
        fallback = Path(str(fixture_path(path.name)))
        if not fallback.is_file():
            raise ValueError(f"{kind} file not found: {spec}")
        path = fallback
    data = path.read_bytes()
    fixtures[spec] = hashlib.sha256(data).hexdigest()
    return data.decode()


def _resolve_pcm(spec: str, code: CyclicCode, fixtures: dict) -> ParityCheckMatrix:
    if spec == "sys":
        return systematic_pcm(code)
    text = _read_fixture_file(spec, fixtures, "matrix")
    try:
        h = ParityCheckMatrix.from_text(text, label=spec)
    except (ValueError, IndexError) as ex:
        raise ValueError(f"malformed matrix file {spec}: {ex}") from None
    return h.attach(code)


def _load_seqs(spec: str, fixtures: dict) -> list[BinarySequence]:
    text = _read_fixture_file(spec, fixtures, "sequence")
    seqs = [
        BinarySequence.from_text(line, role="parity-check")
        for line in text.splitlines()
        if line.strip()
    ]
    if not seqs:
        raise ValueError(f"sequence file is empty: {spec}")
    return seqs


def _parse_ints(spec: str) -> list[int]:
    try:
        return [int(tok) for tok in spec.split(",") if tok.strip() != ""]
    except ValueError:
        raise ValueError(f"expected comma-separated integers, got {spec!r}") from None


def _parse_weights(spec: str) -> list[int]:
    """Weight grammar: "7", "7..11", "5,7..9,12" — ascending, deduplicated."""
    out: set[int] = set()
    for part in spec.split(","):
        part = part.strip()
        if not part:
            continue
        if ".." in part:
            lo_s, hi_s = part.split("..", 1)
            lo, hi = int(lo_s), int(hi_s)
            if hi < lo:
                raise ValueError(f"empty weight range {part!r}")
            out.update(range(lo, hi + 1))
        else:
            out.add(int(part))
    if not out:
        raise ValueError("no erasure weights given")
    return sorted(out)


def _parse_epsilons(spec: str) -> list[float]:
    """Epsilon grammar: "0.1,0.3" or "0.05..0.5:0.05" (inclusive grid)."""
    out: list[float] = []
    for part in spec.split(","):
        part = part.strip()
        if not part:
            continue
        if ":" in part and ".." in part:
            span, step_s = part.rsplit(":", 1)
            lo_s, hi_s = span.split("..", 1)
            lo, hi, step = float(lo_s), float(hi_s), float(step_s)
            if step <= 0:
                raise ValueError(f"non-positive grid step in {part!r}")
            i = 0
            while True:
                value = round(lo + i * step, 12)
                if value > hi + 1e-12:
                    break
                out.append(value)
                i += 1
        else:
            out.append(float(part))
    if not out:
        raise ValueError("no epsilon values given")
    return out


def _parse_symbols(text: str, n: int, q: int) -> list[int | None]:
    """One symbol per token; "?" marks an erasure; a single run of n
    hex digits is also accepted for q <= 16."""
    tokens = text.replace(",", " ").split()
    if len(tokens) == 1 and len(tokens[0]) == n and n > 1 and q <= 16:
        tokens = list(tokens[0])
    symbols: list[int | None] = []
    for tok in tokens:
        if tok == "?":
            symbols.append(None)
        else:
            try:
                symbols.append(int(tok, 16) if len(tok) == 1 else int(tok))
            except ValueError:
                raise ValueError(f"bad symbol token {tok!r}") from None
    if len(symbols) != n:
        raise ValueError(f"word has {len(symbols)} symbols, code length is {n}")
    for v in symbols:
        if v is not None and not 0 <= v < q:
            raise ValueError(f"symbol {v} outside GF({q})")
    return symbols


def _criteria_dict(report) -> dict:
    doc = dataclasses.asdict(report)
    doc["autocorrelation"] = {str(k): v for k, v in report.autocorrelation.items()}
    doc["row_weights"] = {str(k): v for k, v in report.row_weights.items()}
    doc["flat"] = report.is_flat()
    return doc


# -- subcommand handlers -------------------------------------------------------


def _cmd_code_build(args) -> int:
    config = {"command": "code build", "code": args.code}
    code = parse_code_spec(args.code)
    result = {
        "family": code.family,
        "n": code.n,
        "k": code.k,
        "q": code.field.q,
        "d": code.d,
        "extended": code.extended,
        "rotation_period": code.rotation_period,
        "zeros": list(code.zero_exponents),
        "generator": list(code.g.coeffs),
        "check_poly": list(code.h.coeffs),
        "systematic_pcm": systematic_pcm(code).to_text(),
    }
    _emit(_json_payload(config, {}, result), args.out)
    return 0


def _cmd_pcm_modify(args) -> int:
    config = {
        "command": "pcm modify",
        "code": args.code,
        "pcm": args.pcm,
        "zeros": args.zeros,
        "sp": args.sp,
        "depth": args.depth,
        "se_size": args.se_size,
    }
    code = parse_code_spec(args.code)
    fixtures: dict = {}
    h = _resolve_pcm(args.pcm, code, fixtures)
    if (args.zeros is None) == (args.sp is None):
        raise ValueError("pcm modify needs exactly one of --zeros / --sp")
    if args.zeros is not None:
        zeros = sorted(set(_parse_ints(args.zeros)))
    else:
        seqs = _load_seqs(args.sp, fixtures)
        seq = seqs[0]
        if seq.n != h.n:
            raise ValueError(f"sequence length {seq.n} != matrix length {h.n}")
        zeros = sorted(seq.zero_set())
    hm = modify_pcm(h, zeros, depth=args.depth)
    se_size = args.se_size if args.se_size is not None else code.n - code.k
    report = criteria_report(hm, se_size)
    sp, realized = parity_check_sequence(hm)
    result = {
        "matrix": hm.to_text(),
        "zeros": list(realized),
        "sp": sp.to_text().strip(),
        "se_size": se_size,
        "criteria": _criteria_dict(report),
    }
    _emit(_json_payload(config, fixtures, result), args.out)
    return 0


def _cmd_pcm_analyze(args) -> int:
    config = {
        "command": "pcm analyze",
        "code": args.code,
        "pcm": args.pcm,
        "se_size": args.se_size,
    }
    code = parse_code_spec(args.code)
    fixtures: dict = {}
    h = _resolve_pcm(args.pcm, code, fixtures)
    se_size = args.se_size if args.se_size is not None else code.n - code.k
    report = criteria_report(h, se_size)
    sp, zeros = parity_check_sequence(h)
    result = {
        "zeros": list(zeros),
        "sp": sp.to_text().strip(),
        "se_size": se_size,
        "criteria": _criteria_dict(report),
    }
    _emit(_json_payload(config, fixtures, result), args.out)
    return 0


def _cmd_decode(args) -> int:
    config = {
        "command": "decode",
        "code": args.code,
        "pcm": args.pcm,
        "decoder": args.decoder,
        "erasures": args.erasures,
        "word": args.word,
        "seqs": args.seqs,
        "u": args.u,
    }
    code = parse_code_spec(args.code)
    fixtures: dict = {}
    h = _resolve_pcm(args.pcm, code, fixtures)
    decoder = _DECODER_NAMES[args.decoder]

    if args.word:
        text = _read_fixture_file(args.word, fixtures, "word")
        symbols = _parse_symbols(text, code.n, code.field.q)
    else:
        symbols = [0] * code.n
    erased = set(_parse_ints(args.erasures)) if args.erasures else set()
    if any(t < 0 or t >= code.n for t in erased):
        raise ValueError("erasure position out of range")
    received = ReceivedWord(
        code,
        [None if (t in erased or v is None) else v for t, v in enumerate(symbols)],
    )

    if decoder == "ts_agd_expanded":
        if not args.seqs:
            raise ValueError("ts-agd-expanded needs --seqs with one sequence per line")
        hx = expanded_from_sequences(code, h, _load_seqs(args.seqs, fixtures))
        outcome = ts_agd_expanded(hx, received, args.u)
    elif decoder == "ml":
        outcome = ml_decode(h, received)
    else:
        outcome = {"ied": ied, "agd": agd, "ts_agd": ts_agd}[decoder](h, received)

    result = {
        "status": outcome.status,
        "decoder": outcome.decoder,
        "recovered": list(outcome.recovered) if outcome.recovered is not None else None,
        "unresolved": list(outcome.unresolved),
        "iterations": outcome.iterations,
        "complexity_units": outcome.complexity_units,
        "shifts_applied": list(outcome.shifts_applied),
        "blocks_used": list(outcome.blocks_used),
        "inversion_size": outcome.inversion_size,
        "cnu_sweeps": outcome.cnu_sweeps,
        "vnu_sweeps": outcome.vnu_sweeps,
    }
    _emit(_json_payload(config, fixtures, result), args.out)
    return 0


def _cmd_census(args) -> int:
    config = {
        "command": "census",
        "code": args.code,
        "pcm": args.pcm,
        "decoder": args.decoder,
        "e": args.e,
        "u": args.u,
        "order": args.order,
        "engine": args.engine,
        "workers": args.workers,
        "budget": args.budget,
        "seqs": args.seqs,
    }
    code = parse_code_spec(args.code)
    fixtures: dict = {}
    h = _resolve_pcm(args.pcm, code, fixtures)
    decoder = _DECODER_NAMES[args.decoder]
    weights = _parse_weights(args.e)
    if any(e < 0 or e > code.n for e in weights):
        raise ValueError(f"erasure weight outside 0..{code.n}")
    matrix_id = args.pcm
    target = h
    if decoder == "ts_agd_expanded":
        if not args.seqs:
            raise ValueError("ts-agd-expanded needs --seqs with one sequence per line")
        target = expanded_from_sequences(code, h, _load_seqs(args.seqs, fixtures))
        matrix_id = f"{args.pcm}+{args.seqs}"
    census = run_census(
        code,
        target,
        decoder,
        weights,
        code_id=args.code,
        matrix_id=matrix_id,
        u=args.u,
        order=args.order,
        engine=args.engine,
        workers=args.workers,
        budget=args.budget,
    )
    _emit(_csv_payload(config, fixtures, census.to_csv()), args.out)
    return 3 if any(r.partial for r in census.rows) else 0


def _cmd_simulate(args) -> int:
    config = {
        "command": "simulate",
        "code": args.code,
        "pcm": args.pcm,
        "decoder": args.decoder,
        "epsilon": args.epsilon,
        "trials": args.trials,
        "seed": args.seed,
        "u": args.u,
        "workers": args.workers,
        "seqs": args.seqs,
    }
    code = parse_code_spec(args.code)
    fixtures: dict = {}
    h = _resolve_pcm(args.pcm, code, fixtures)
    decoder = _DECODER_NAMES[args.decoder]
    target = h
    if decoder == "ts_agd_expanded":
        if not args.seqs:
            raise ValueError("ts-agd-expanded needs --seqs with one sequence per line")
        target = expanded_from_sequences(code, h, _load_seqs(args.seqs, fixtures))
    epsilons = _parse_epsilons(args.epsilon)
    if any(not 0.0 <= eps <= 1.0 for eps in epsilons):
        raise ValueError("epsilon outside [0, 1]")
    lines = [
        "epsilon,trials,seed,fer,fer_halfwidth,ber,ber_halfwidth,"
        "mean_iterations,mean_complexity"
    ]
    for eps in epsilons:
        stats = monte_carlo(
            code,
            target,
            decoder,
            eps,
            args.trials,
            args.seed,
            u=args.u,
            workers=args.workers,
        )
        lines.append(
            f"{stats.epsilon!r},{stats.trials},{stats.seed},"
            f"{stats.fer!r},{stats.fer_halfwidth!r},"
            f"{stats.ber!r},{stats.ber_halfwidth!r},"
            f"{stats.mean_iterations!r},{stats.mean_complexity!r}"
        )
    _emit(_csv_payload(config, fixtures, "\n".join(lines) + "\n"), args.out)
    return 0


def _cmd_bounds(args) -> int:
    config = {
        "command": "bounds",
        "n": args.n,
        "k": args.k,
        "u": args.u,
        "tables": args.tables,
        "source": args.source,
    }
    fixtures: dict = {}
    if args.tables:
        _read_fixture_file(args.tables, fixtures, "table")
    tables = ExternalTables.load(args.tables, source=args.source)
    report = stopping_redundancy_bounds(args.n, args.k, args.u, tables)
    result = json.loads(report.to_json())
    _emit(_json_payload(config, fixtures, result), args.out)
    missing = [
        name
        for name in ("gilbert", "lotto", "bonferroni")
        if result[name] is None or result[name].get("b") is None
    ]
    if missing:
        for name in missing:
            print(f"error: missing external table entry for {name} bound", file=sys.stderr)
        return 2
    return 0


def _cmd_expand(args) -> int:
    config = {"command": "expand", "n": args.n, "k": args.k, "u": args.u}
    seqs, blocks = greedy_expand(args.n, args.k, args.u)
    result = {
        "n": args.n,
        "k": args.k,
        "u": args.u,
        "b": blocks,
        "sequences": [seq.to_text().strip() for seq in seqs],
    }
    _emit(_json_payload(config, {}, result), args.out)
    return 0


def _cmd_verify_perfect(args) -> int:
    config = {
        "command": "verify-perfect",
        "code": args.code,
        "pcm": args.pcm,
        "decoder": args.decoder,
        "seqs": args.seqs,
        "u": args.u,
        "weights": args.weights,
        "engine": args.engine,
    }
    code = parse_code_spec(args.code)
    fixtures: dict = {}
    h = _resolve_pcm(args.pcm, code, fixtures)
    decoder = _DECODER_NAMES[args.decoder]
    target = h
    if args.seqs:
        target = expanded_from_sequences(code, h, _load_seqs(args.seqs, fixtures))
    elif decoder == "ts_agd_expanded":
        raise ValueError("ts-agd-expanded needs --seqs with one sequence per line")
    weights = _parse_weights(args.weights) if args.weights else None
    perfect, witness = perfect_decoding_check(
        code, target, decoder, u=args.u, weights=weights, engine=args.engine
    )
    result = {
        "perfect": perfect,
        "counterexample": None
        if witness is None
        else {"e": witness[0], "pattern": list(witness[1])},
    }
    _emit(_json_payload(config, fixtures, result), args.out)
    return 0


# -- parser ---------------------------------------------------------------------


def _add_out(sp) -> None:
    sp.add_argument("--out", help="output file (default: stdout)")


def _add_code_pcm(sp) -> None:
    sp.add_argument("--code", required=True, help="code spec, e.g. golay23 or rs:8,4,17,2")
    sp.add_argument("--pcm", default="sys", help='matrix file path or "sys" (default)')


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="erasure-lab",
        description="Cyclic-code erasure decoding: censuses, simulation, bounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("code", help="code construction")
    csub = p.add_subparsers(dest="subcommand", required=True)
    b = csub.add_parser("build", help="summarize a code and its systematic matrix")
    b.add_argument("--code", required=True)
    _add_out(b)
    b.set_defaults(func=_cmd_code_build)

    p = sub.add_parser("pcm", help="parity check matrix tools")
    msub = p.add_subparsers(dest="subcommand", required=True)
    m = msub.add_parser("modify", help="move identity columns onto a zero set")
    _add_code_pcm(m)
    m.add_argument("--zeros", help="comma-separated target columns")
    m.add_argument("--sp", help="sequence file; its zero set becomes the target")
    m.add_argument("--depth", type=int, default=3, help="row-combination search depth")
    m.add_argument("--se-size", type=int, dest="se_size", help="criteria erasure weight")
    _add_out(m)
    m.set_defaults(func=_cmd_pcm_modify)
    a = msub.add_parser("analyze", help="criteria report for a matrix")
    _add_code_pcm(a)
    a.add_argument("--se-size", type=int, dest="se_size", help="criteria erasure weight")
    _add_out(a)
    a.set_defaults(func=_cmd_pcm_analyze)

    p = sub.add_parser("decode", help="decode one received word")
    _add_code_pcm(p)
    p.add_argument("--decoder", required=True, choices=_DECODER_CHOICES)
    p.add_argument("--erasures", help="comma-separated erased positions")
    p.add_argument("--word", help='symbol file ("?" marks an erasure); default all-zero')
    p.add_argument("--seqs", help="sequence file for ts-agd-expanded")
    p.add_argument("--u", type=int, default=1, help="inversion budget (expanded)")
    _add_out(p)
    p.set_defaults(func=_cmd_decode)

    p = sub.add_parser("census", help="exhaustive failure counts by weight")
    _add_code_pcm(p)
    p.add_argument("--decoder", required=True, choices=_DECODER_CHOICES)
    p.add_argument("--e", required=True, help='weights: "7", "7..11", "5,7..9"')
    p.add_argument("--u", type=int, default=1)
    p.add_argument("--order", choices=("colex", "orbit"), default="colex")
    p.add_argument("--engine", choices=("kernel", "literal"), default="kernel")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--budget", type=int, help="max patterns to examine per weight")
    p.add_argument("--seqs", help="sequence file for ts-agd-expanded")
    _add_out(p)
    p.set_defaults(func=_cmd_census)

    p = sub.add_parser("simulate", help="Monte Carlo erasure-channel sweep")
    _add_code_pcm(p)
    p.add_argument("--decoder", required=True, choices=_DECODER_CHOICES)
    p.add_argument("--epsilon", required=True, help='"0.1,0.3" or "0.05..0.5:0.05"')
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--u", type=int, default=1)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--seqs", help="sequence file for ts-agd-expanded")
    _add_out(p)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("bounds", help="stopping-redundancy lower bounds")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--u", type=int, default=1)
    p.add_argument("--tables", help="external tables CSV (default: packaged)")
    p.add_argument("--source", default="implied", help="table source label to read")
    _add_out(p)
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("expand", help="greedy covering sequence set")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--u", type=int, default=1)
    _add_out(p)
    p.set_defaults(func=_cmd_expand)

    p = sub.add_parser("verify-perfect", help="decoder equals ML on every weight")
    _add_code_pcm(p)
    p.add_argument("--decoder", default="ts-agd", choices=_DECODER_CHOICES)
    p.add_argument("--seqs", help="sequence file; builds the expanded matrix")
    p.add_argument("--u", type=int, default=1)
    p.add_argument("--weights", help="restrict checked weights (default: all)")
    p.add_argument("--engine", choices=("kernel", "literal"), default="kernel")
    _add_out(p)
    p.set_defaults(func=_cmd_verify_perfect)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as ex:
        return int(ex.code or 0)
    try:
        return args.func(args)
    except (ValueError, OSError, KeyError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
