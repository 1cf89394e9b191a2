"""Exhaustive erasure-pattern censuses, channel simulation, counting bounds.

The census engine does not run the literal decoders pattern by pattern.  For
the sweep decoders it evaluates an equivalent support-combinatorial kernel:

  * ied fails exactly when peeling the erasure support against the row
    supports reaches a stuck fixpoint;
  * agd and ts_agd fail exactly when peeling against the row supports of
    EVERY cyclic rotation reaches a stuck fixpoint (restart-on-progress plus
    full shift coverage make both decoders compute that closure, and peeling
    is confluent, so the union row set gives the same fixpoint);
  * ml fails exactly when the erased columns are linearly dependent, and a
    peeling success already implies independence, so the rank test only runs
    on closure failures, once per rotation orbit;
  * ts_agd_expanded on an MDS code succeeds exactly when some block and
    shift leave at most u erasures on non-basis columns.

An ``engine="literal"`` switch runs the actual decoders instead; the
equivalences are property-tested against it.  Patterns enumerate in
colexicographic order, which for bit masks is plain numeric order, and the
kernels evaluate them in vectorized blocks.

Monte Carlo simulation replays each sweep decoder's control flow on erasure
supports alone.  On an erasure channel the sweep schedule never looks at
symbol values, so the replay reproduces the literal decoder's status and
counters exactly (also property-tested); only the symbol arithmetic is
skipped.
"""

from __future__ import annotations

import csv
import itertools
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from . import _linalg
from .codes import CyclicCode, ParityCheckMatrix, fixture_path
from .decoders import (
    DecodeOutcome,
    ExpandedParityCheckMatrix,
    ReceivedWord,
    agd,
    ied,
    ml_decode,
    ts_agd,
    ts_agd_expanded,
)
from .pcm import BinarySequence, parity_check_sequence

DECODERS = ("ied", "agd", "ts_agd", "ts_agd_expanded", "ml")

_BLOCK = 1 << 16


# -- colex enumeration ---------------------------------------------------------


def weight_masks(n: int, e: int, start: int = 0, count: int | None = None) -> Iterator[int]:
    """Weight-e masks of width n in increasing numeric (= colex) order."""
    if e == 0:
        if start == 0 and count != 0:
            yield 0
        return
    x = colex_unrank(n, e, start)
    limit = 1 << n
    left = math.comb(n, e) - start if count is None else count
    while x < limit and left > 0:
        yield x
        left -= 1
        c = x & -x
        r = x + c
        x = (((r ^ x) >> 2) // c) | r


def colex_rank(mask: int) -> int:
    rank = 0
    i = 0
    t = mask
    while t:
        low = t & -t
        rank += math.comb(low.bit_length() - 1, i + 1)
        i += 1
        t ^= low
    return rank


def colex_unrank(n: int, e: int, rank: int) -> int:
    mask = 0
    for i in range(e, 0, -1):
        c = i - 1
        while math.comb(c + 1, i) <= rank:
            c += 1
        rank -= math.comb(c, i)
        mask |= 1 << c
    return mask


def _mask_blocks(n: int, e: int, start: int, count: int) -> Iterator[np.ndarray]:
    gen = weight_masks(n, e, start, count)
    while True:
        chunk = list(itertools.islice(gen, _BLOCK))
        if not chunk:
            return
        yield np.array(chunk, dtype=np.uint64)


def _mask_positions(emask: int) -> list[int]:
    out = []
    while emask:
        out.append((emask & -emask).bit_length() - 1)
        emask &= emask - 1
    return out


# -- census kernels ------------------------------------------------------------


class _PeelKernel:
    """Stuck-fixpoint test for peeling an erasure mask against row supports."""

    def __init__(self, row_masks: Sequence[int]):
        self.rows = tuple(sorted(set(row_masks)))

    def residual(self, emask: int) -> int:
        rows = self.rows
        while emask:
            hit = 0
            for s in rows:
                x = s & emask
                if x and not (x & (x - 1)):
                    hit |= x
            if not hit:
                break
            emask &= ~hit
        return emask

    def fails(self, emask: int) -> bool:
        return self.residual(emask) != 0


class _BatchClosure:
    """Vectorized _PeelKernel over uint64 mask blocks (needs n <= 63)."""

    def __init__(self, row_masks: Sequence[int]):
        self.rows = np.array(sorted(set(row_masks)), dtype=np.uint64)

    def residual(self, masks: np.ndarray) -> np.ndarray:
        out = masks.astype(np.uint64, copy=True)
        idx = np.arange(len(out))
        cur = out[idx]
        while len(cur):
            hit = np.zeros_like(cur)
            for r in self.rows:
                x = cur & r
                hit |= np.where(np.bitwise_count(x) == 1, x, np.uint64(0))
            changed = hit != 0
            if not changed.any():
                break
            cur = cur & ~hit
            out[idx] = cur
            # a mask that did not change is at its own fixpoint already
            live = changed & (cur != 0)
            cur = cur[live]
            idx = idx[live]
        return out


def _rotation_row_masks(code: CyclicCode, h: ParityCheckMatrix) -> list[int]:
    out = []
    for m in h.support_masks():
        for tau in range(code.rotation_period):
            out.append(code.rotate_mask(m, tau))
    return out


class _RankKernel:
    """Linear-independence test for erased column sets."""

    def __init__(self, h: ParityCheckMatrix):
        self.field = h.field
        self.h = h
        self.binary = h.field.q == 2
        if self.binary:
            self.col_masks = h.binary_column_masks()

    def fails(self, emask: int) -> bool:
        t = emask
        if self.binary:
            basis: list[int] = []
            while t:
                v = self.col_masks[(t & -t).bit_length() - 1]
                for b in basis:
                    v = min(v, v ^ b)
                if not v:
                    return True
                basis.append(v)
                t &= t - 1
            return False
        idx = _mask_positions(emask)
        sub = [[row[j] for j in idx] for row in self.h.rows]
        return _linalg.rank(self.field, sub) < len(idx)


def _canonical_reps(code: CyclicCode, masks: np.ndarray) -> np.ndarray:
    """Numerically smallest head-rotation of each mask (tail bits stay put)."""
    period = code.rotation_period
    headmask = np.uint64((1 << period) - 1)
    head = masks & headmask
    tail = masks & ~headmask
    best = head.copy()
    rot = head
    for _ in range(period - 1):
        rot = ((rot << np.uint64(1)) | (rot >> np.uint64(period - 1))) & headmask
        np.minimum(best, rot, out=best)
    return best | tail


def _stack_blocks(h) -> ParityCheckMatrix:
    if not isinstance(h, ExpandedParityCheckMatrix):
        return h
    if h.b == 1:
        return h.blocks[0]
    return ParityCheckMatrix(
        [row for blk in h.blocks for row in blk.rows], h.blocks[0].field
    )


def _nonbasis_int_mask(h: ParityCheckMatrix) -> int:
    sp, basis = parity_check_sequence(h)
    if not basis:
        raise ValueError("matrix has no standard basis columns")
    m = 0
    for t in sp.support():
        m |= 1 << t
    return m


def _is_mds(code: CyclicCode) -> bool:
    return code.d == code.n - code.k + 1


class _BatchFlags:
    """Per-mask failure verdicts for one decoder config, block at a time."""

    def __init__(self, code: CyclicCode, h, decoder: str, u: int):
        self.code = code
        self.mode = decoder
        if decoder == "ied":
            self.closure = _BatchClosure(_stack_blocks(h).support_masks())
        elif decoder in ("agd", "ts_agd"):
            self.closure = _BatchClosure(_rotation_row_masks(code, h))
        elif decoder == "ml":
            stacked = _stack_blocks(h)
            self.closure = _BatchClosure(_rotation_row_masks(code, stacked))
            self.rank = _RankKernel(stacked)
        elif decoder == "ts_agd_expanded":
            hx = h if isinstance(h, ExpandedParityCheckMatrix) else ExpandedParityCheckMatrix([h])
            if not _is_mds(code):
                raise ValueError("batch expanded kernel requires an MDS code")
            cover = []
            for blk in hx.blocks:
                nb = _nonbasis_int_mask(blk)
                for tau in range(code.rotation_period):
                    cover.append(code.rotate_mask(nb, -tau))
            self.cover = np.array(sorted(set(cover)), dtype=np.uint64)
            self.u = u
            self.nk = code.n - code.k
        else:
            raise ValueError(f"unknown decoder {decoder!r}")

    def fails(self, masks: np.ndarray) -> np.ndarray:
        if self.mode == "ts_agd_expanded":
            # above n-k erasures the erased columns are dependent, so low
            # correlation alone cannot rescue the pattern
            feasible = np.bitwise_count(masks) <= self.nk
            hit = np.zeros(len(masks), dtype=bool)
            for m in self.cover:
                hit |= np.bitwise_count(masks & m) <= self.u
            return ~(feasible & hit)
        flags = self.closure.residual(masks) != 0
        if self.mode != "ml":
            return flags
        bad = np.flatnonzero(flags)
        if len(bad):
            reps = _canonical_reps(self.code, masks[bad])
            uniq, inverse = np.unique(reps, return_inverse=True)
            verdicts = np.fromiter(
                (self.rank.fails(int(m)) for m in uniq), dtype=bool, count=len(uniq)
            )
            flags[bad] = verdicts[inverse]
        return flags


def failure_test(
    code: CyclicCode,
    h,
    decoder: str,
    u: int = 1,
    engine: str = "kernel",
    word: Sequence[int] | None = None,
) -> Callable[[int], bool]:
    """Build a mask -> fails predicate for one decoder configuration.

    ``word`` (a codeword) only matters for the literal engine; the kernels
    are word-independent by linearity.
    """
    if decoder not in DECODERS:
        raise ValueError(f"unknown decoder {decoder!r}")
    if engine == "literal":
        return _literal_test(code, h, decoder, u, word)
    if engine != "kernel":
        raise ValueError(f"unknown engine {engine!r}")

    if decoder == "ied":
        return _PeelKernel(_stack_blocks(h).support_masks()).fails
    if decoder in ("agd", "ts_agd"):
        return _PeelKernel(_rotation_row_masks(code, h)).fails
    if decoder == "ml":
        stacked = _stack_blocks(h)
        closure = _PeelKernel(_rotation_row_masks(code, stacked))
        rank = _RankKernel(stacked)
        return lambda emask: closure.fails(emask) and rank.fails(emask)
    # ts_agd_expanded
    hx = h if isinstance(h, ExpandedParityCheckMatrix) else ExpandedParityCheckMatrix([h])
    if _is_mds(code):
        nb = [_nonbasis_int_mask(blk) for blk in hx.blocks]
        period = code.rotation_period
        rotate = code.rotate_mask
        nk = code.n - code.k

        def mds_fails(emask: int) -> bool:
            if emask.bit_count() > nk:
                return True
            for tau in range(period):
                rot = rotate(emask, tau)
                for m in nb:
                    if (rot & m).bit_count() <= u:
                        return False
            return True

        return mds_fails
    return _literal_test(code, hx, "ts_agd_expanded", u, word)


def _literal_test(code, h, decoder: str, u: int, word) -> Callable[[int], bool]:
    run = _literal_runner(code, h, decoder, u, word)
    return lambda emask: not run(emask).ok


def _literal_runner(
    code, h, decoder: str, u: int, word=None
) -> Callable[[int], DecodeOutcome]:
    if word is None:
        word = (0,) * code.n
    word = tuple(word)

    def run(emask: int) -> DecodeOutcome:
        r = ReceivedWord.from_codeword(code, word, _mask_positions(emask))
        if decoder == "ied":
            return ied(_stack_blocks(h), r)
        if decoder == "agd":
            return agd(h, r)
        if decoder == "ts_agd":
            return ts_agd(h, r)
        if decoder == "ml":
            return ml_decode(_stack_blocks(h), r)
        if decoder == "ts_agd_expanded":
            hx = h if isinstance(h, ExpandedParityCheckMatrix) else ExpandedParityCheckMatrix([h])
            return ts_agd_expanded(hx, r, u)
        raise ValueError(f"unknown decoder {decoder!r}")

    return run


# -- pattern census ------------------------------------------------------------


@dataclass(frozen=True)
class CensusRow:
    e: int
    total: int
    failures: int
    examined: int
    partial: bool = False


@dataclass
class PatternCensus:
    code_id: str
    matrix_id: str
    decoder: str
    order: str
    rows: list[CensusRow] = dc_field(default_factory=list)

    def failures_by_weight(self) -> dict[int, int]:
        return {r.e: r.failures for r in self.rows}

    def to_csv(self) -> str:
        out = ["e,total,failures,examined,partial"]
        for r in sorted(self.rows, key=lambda r: r.e):
            out.append(f"{r.e},{r.total},{r.failures},{r.examined},{int(r.partial)}")
        return "\n".join(out) + "\n"

    def to_json(self) -> str:
        return json.dumps(
            {
                "code": self.code_id,
                "matrix": self.matrix_id,
                "decoder": self.decoder,
                "order": self.order,
                "rows": [
                    {
                        "e": r.e,
                        "total": r.total,
                        "failures": r.failures,
                        "examined": r.examined,
                        "partial": r.partial,
                    }
                    for r in sorted(self.rows, key=lambda r: r.e)
                ],
            },
            sort_keys=True,
        )


def _orbit_span(code: CyclicCode, mask: int) -> int:
    period = code.rotation_period
    s = 1
    rot = code.rotate_mask(mask, 1)
    while rot != mask:
        rot = code.rotate_mask(rot, 1)
        s += 1
    return s


def _count_chunk(args) -> tuple[int, int]:
    (code, h, decoder, u, engine, word, n, e, start, count, order) = args
    if order == "colex" and engine == "kernel" and n <= 63:
        try:
            flags = _BatchFlags(code, h, decoder, u)
        except ValueError:
            flags = None  # non-MDS expanded config: per-mask fallback below
        if flags is not None:
            failures = examined = 0
            for block in _mask_blocks(n, e, start, count):
                failures += int(np.count_nonzero(flags.fails(block)))
                examined += len(block)
            return failures, examined

    fails = failure_test(code, h, decoder, u, engine, word)
    rotate = code.rotate_mask
    period = code.rotation_period
    failures = 0
    examined = 0
    if order == "orbit":
        for mask in weight_masks(n, e, start, count):
            examined += 1
            rot = mask
            smaller = False
            for _ in range(period - 1):
                rot = rotate(rot, 1)
                if rot < mask:
                    smaller = True
                    break
            if smaller:
                continue
            if fails(mask):
                failures += _orbit_span(code, mask)
    else:
        for mask in weight_masks(n, e, start, count):
            examined += 1
            if fails(mask):
                failures += 1
    return failures, examined


def enumerate_patterns(
    code: CyclicCode,
    h,
    decoder: str,
    e: int,
    *,
    u: int = 1,
    order: str = "colex",
    engine: str = "kernel",
    word: Sequence[int] | None = None,
    workers: int = 1,
    budget: int | None = None,
) -> CensusRow:
    """Count the weight-e erasure patterns the decoder fails on.

    order="colex" examines every pattern in colexicographic order;
    order="orbit" evaluates one representative per shift orbit and multiplies
    by the orbit size, which is valid for the shift-invariant decoders (agd,
    ts_agd, ts_agd_expanded, ml) but NOT for ied.  budget caps the number of
    patterns examined; a capped row comes back with partial=True, never
    silently truncated.
    """
    n = code.n
    if not 0 <= e <= n:
        raise ValueError("weight out of range")
    if order not in ("colex", "orbit"):
        raise ValueError(f"unknown order {order!r}")
    if order == "orbit" and decoder == "ied":
        raise ValueError("orbit enumeration is unsound for ied (not shift-invariant)")
    total = math.comb(n, e)
    span = total if budget is None else min(total, budget)
    partial = span < total

    if workers <= 1 or span < 4 * _BLOCK:
        failures, examined = _count_chunk(
            (code, h, decoder, u, engine, word, n, e, 0, span, order)
        )
    else:
        chunk = -(-span // workers)
        jobs = [
            (code, h, decoder, u, engine, word, n, e, s, min(chunk, span - s), order)
            for s in range(0, span, chunk)
        ]
        failures = examined = 0
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for f, x in pool.map(_count_chunk, jobs):
                failures += f
                examined += x
    return CensusRow(e, total, failures, examined, partial)


def run_census(
    code: CyclicCode,
    h,
    decoder: str,
    weights: Iterable[int],
    *,
    code_id: str = "",
    matrix_id: str = "",
    **kw,
) -> PatternCensus:
    dec_id = decoder if decoder != "ts_agd_expanded" else f"ts_agd_expanded(u={kw.get('u', 1)})"
    census = PatternCensus(
        code_id or repr(code), matrix_id, dec_id, kw.get("order", "colex")
    )
    for e in weights:
        census.rows.append(enumerate_patterns(code, h, decoder, e, **kw))
    return census


# -- support-level decoder replay (Monte Carlo fast path) -----------------------


def _sim_peel(rows: Sequence[int], emask: int) -> tuple[int, float, int, int, int, bool]:
    """Replay the flooding peel on supports: (residual, iter, units, cnu, vnu, progressed)."""
    iterations = 0.0
    units = 0
    cnu = vnu = 0
    progressed = False
    while True:
        active = 0
        hit = 0
        for s in rows:
            x = s & emask
            if x:
                active += 1
                if not (x & (x - 1)):
                    hit |= x
        units += active
        iterations += 0.5
        cnu += 1
        if not hit:
            return emask, iterations, units, cnu, vnu, progressed
        emask &= ~hit
        iterations += 0.5
        vnu += 1
        progressed = True
        if not emask:
            return 0, iterations, units, cnu, vnu, progressed


def _sim_ied(code, rows, emask: int):
    res, it, un, _, _, _ = _sim_peel(rows, emask)
    return res == 0, res.bit_count(), it, un


def _sim_agd(code, rows, emask: int):
    period = code.rotation_period
    misses = 0
    iterations = 0.0
    units = 0
    while True:
        emask, it, un, _, _, prog = _sim_peel(rows, emask)
        iterations += it
        units += un
        if prog:
            misses = 0
        if not emask:
            return True, 0, iterations, units
        if misses >= period - 1:
            return False, emask.bit_count(), iterations, units
        emask = code.rotate_mask(emask, 1)
        misses += 1


def _sim_ts_agd(code, rows, nonbasis: int, emask: int):
    period = code.rotation_period
    iterations = 0.0
    units = 0
    if not emask:
        res = _sim_peel(rows, 0)
        return True, 0, res[1], res[2]
    while True:
        units += period
        corr = [
            (code.rotate_mask(emask, tau) & nonbasis).bit_count()
            for tau in range(period)
        ]
        progressed = False
        for tau in sorted(range(period), key=lambda t: (corr[t], t)):
            res, it, un, _, _, prog = _sim_peel(rows, code.rotate_mask(emask, tau))
            iterations += it
            units += un
            if res == 0:
                return True, 0, iterations, units
            if prog:
                emask = code.rotate_mask(res, -tau)
                progressed = True
                break
        if not progressed:
            return False, emask.bit_count(), iterations, units


def _make_mc_eval(code, h, decoder: str, u: int) -> Callable[[int], tuple[bool, int, float, int]]:
    """mask -> (ok, unresolved count, iterations, complexity units)."""
    if decoder == "ied":
        rows = _stack_blocks(h).support_masks()
        return lambda emask: _sim_ied(code, rows, emask)
    if decoder == "agd":
        rows = h.support_masks()
        return lambda emask: _sim_agd(code, rows, emask)
    if decoder == "ts_agd":
        rows = h.support_masks()
        nonbasis = _nonbasis_int_mask(h)
        return lambda emask: _sim_ts_agd(code, rows, nonbasis, emask)
    if decoder == "ml":
        rank = _RankKernel(_stack_blocks(h))
        return lambda emask: (
            (False, emask.bit_count(), 0.0, 0)
            if emask and rank.fails(emask)
            else (True, 0, 0.0, 0)
        )
    # ts_agd_expanded runs the literal decoder: whether an inversion attempt
    # is singular depends on matrix values, which a support replay cannot see
    run = _literal_runner(code, h, decoder, u)

    def expanded(emask: int):
        out = run(emask)
        return out.ok, len(out.unresolved), out.iterations, out.complexity_units

    return expanded


# -- Monte Carlo ---------------------------------------------------------------


@dataclass(frozen=True)
class ChannelStats:
    epsilon: float
    trials: int
    seed: int
    fer: float
    ber: float
    mean_iterations: float
    mean_complexity: float
    fer_halfwidth: float
    ber_halfwidth: float

    def to_json(self) -> str:
        return json.dumps(
            {
                k: getattr(self, k)
                for k in (
                    "epsilon",
                    "trials",
                    "seed",
                    "fer",
                    "ber",
                    "mean_iterations",
                    "mean_complexity",
                    "fer_halfwidth",
                    "ber_halfwidth",
                )
            },
            sort_keys=True,
        )


_MC_BLOCK = 8192


def monte_carlo(
    code: CyclicCode,
    h,
    decoder: str,
    epsilon: float,
    trials: int,
    seed: int,
    *,
    u: int = 1,
    workers: int = 1,
) -> ChannelStats:
    """Simulate i.i.d. symbol erasures through one decoder configuration.

    Trials are split into fixed blocks of 8192 with one RNG substream each
    (SeedSequence spawn keys), so the result is a pure function of
    (seed, trials) no matter how blocks land on workers.  Outcomes repeat
    per erasure mask and are memoized.  Half-widths are 3-sigma normal
    estimates.
    """
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError("epsilon out of range")
    if trials < 1:
        raise ValueError("need at least one trial")
    if decoder not in DECODERS:
        raise ValueError(f"unknown decoder {decoder!r}")
    blocks = [
        (b, min(_MC_BLOCK, trials - b * _MC_BLOCK))
        for b in range(-(-trials // _MC_BLOCK))
    ]
    jobs = [(code, h, decoder, u, epsilon, seed, b, cnt) for b, cnt in blocks]
    if workers <= 1 or len(jobs) == 1:
        parts = [_mc_block(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_mc_block, jobs))
    fails = sum(p[0] for p in parts)
    symbols_lost = sum(p[1] for p in parts)
    iters = sum(p[2] for p in parts)
    units = sum(p[3] for p in parts)
    n = code.n
    fer = fails / trials
    ber = symbols_lost / (trials * n)
    return ChannelStats(
        epsilon,
        trials,
        seed,
        fer,
        ber,
        iters / trials,
        units / trials,
        3.0 * math.sqrt(max(fer * (1.0 - fer), 1e-300) / trials),
        3.0 * math.sqrt(max(ber * (1.0 - ber), 1e-300) / (trials * n)),
    )


def _mc_block(args) -> tuple[int, int, float, int]:
    code, h, decoder, u, epsilon, seed, block, count = args
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(block,)))
    n = code.n
    draws = rng.random((count, n)) < epsilon
    weights = np.uint64(1) << np.arange(n, dtype=np.uint64)
    masks = (draws * weights).sum(axis=1, dtype=np.uint64)
    evaluate = _make_mc_eval(code, h, decoder, u)
    memo: dict[int, tuple[bool, int, float, int]] = {}
    fails = 0
    lost = 0
    iters = 0.0
    units = 0
    for m in masks.tolist():
        hit = memo.get(m)
        if hit is None:
            hit = evaluate(m)
            memo[m] = hit
        ok, unresolved, it, un = hit
        fails += not ok
        lost += unresolved
        iters += it
        units += un
    return fails, lost, iters, units


def exact_fer(n: int, failures_by_weight: dict[int, int], epsilon: float) -> float:
    """Closed-form FER from a census: sum of failures(e) eps^e (1-eps)^(n-e).

    The dict must hold the failure count for every weight that has any;
    absent weights contribute zero.  No analytic fill happens here.
    """
    return sum(
        f * epsilon**e * (1.0 - epsilon) ** (n - e)
        for e, f in failures_by_weight.items()
    )


def fer_floor(n: int, k: int, epsilon: float) -> float:
    """P[more than n-k erasures]: no decoder beats this frame error rate.

    More erasures than check equations leaves the erased columns dependent,
    so even ML fails.  A floor only — ML can also fail below n-k+1.
    """
    return sum(
        math.comb(n, e) * epsilon**e * (1.0 - epsilon) ** (n - e)
        for e in range(n - k + 1, n + 1)
    )


# -- Bonferroni counting ---------------------------------------------------------


@dataclass(frozen=True)
class BonferroniTerms:
    first_term: int
    second_term: int
    lower_bound: int
    upper_bound: int

    def __iter__(self):
        return iter(
            (self.first_term, self.second_term, self.lower_bound, self.upper_bound)
        )


def _pair_double_count(n: int, k: int, u: int, zeros1: frozenset, zeros2: frozenset) -> int:
    """Exact count of weight-(n-k) patterns decodable through both basis sets.

    A pattern decodes through a basis set when at most u of its erasures
    fall outside the set.  Split positions by membership in the two sets
    and count every admissible distribution.
    """
    nk = n - k
    o = len(zeros1 & zeros2)
    v_only1 = nk - o
    v_only2 = nk - o
    v_neither = n - 2 * nk + o
    total = 0
    for x0 in range(0, u + 1):
        for x1 in range(0, u - x0 + 1):
            for x2 in range(0, u - x0 + 1):
                rest = nk - x0 - x1 - x2
                if rest < 0 or rest > o:
                    continue
                total += (
                    math.comb(v_neither, x0)
                    * math.comb(v_only2, x1)
                    * math.comb(v_only1, x2)
                    * math.comb(o, rest)
                )
    return total


def bonferroni_terms(
    seqs: Sequence[BinarySequence], n: int, k: int, u: int = 1
) -> BonferroniTerms:
    """Inclusion-exclusion bounds on decodable weight-(n-k) patterns.

    first_term = b n sum_{i<=u} C(n-k,i) C(k,i) counts (sequence, shift)
    coverage with multiplicity; second_term is the exact pairwise double
    count over all distinct (sequence, shift) pairs.  first - second and
    first bound the union from below and above, and the lower bound is
    exact when no pattern is covered three or more times.
    """
    if u < 0:
        raise ValueError("u must be nonnegative")
    for s in seqs:
        if len(s) != n:
            raise ValueError("sequence length differs from n")
        if s.weight != k:
            raise ValueError("sequence weight differs from k")
    b = len(seqs)
    nk = n - k
    per_shift = sum(math.comb(nk, i) * math.comb(k, i) for i in range(u + 1))
    first = b * n * per_shift
    zero_sets = [
        [frozenset((z + tau) % n for z in s.zero_set()) for tau in range(n)]
        for s in seqs
    ]
    configs = [(j, tau) for j in range(b) for tau in range(n)]
    second = 0
    for a in range(len(configs)):
        j1, t1 = configs[a]
        for c in range(a + 1, len(configs)):
            j2, t2 = configs[c]
            second += _pair_double_count(n, k, u, zero_sets[j1][t1], zero_sets[j2][t2])
    return BonferroniTerms(first, second, first - second, first)


def coverage_count(seqs: Sequence[BinarySequence], n: int, k: int, u: int = 1) -> int:
    """Exact union count: weight-(n-k) patterns with some-shift correlation <= u."""
    full = (1 << n) - 1
    masks = set()
    for s in seqs:
        supp = 0
        for t in s.support():
            supp |= 1 << t
        for tau in range(n):
            masks.add(((supp << tau) | (supp >> (n - tau))) & full if tau else supp)
    arr = np.array(sorted(masks), dtype=np.uint64)
    covered = 0
    for block in _mask_blocks(n, n - k, 0, math.comb(n, n - k)):
        hit = np.zeros(len(block), dtype=bool)
        for m in arr:
            hit |= np.bitwise_count(block & m) <= u
        covered += int(np.count_nonzero(hit))
    return covered


# -- external combinatorial tables ---------------------------------------------


@dataclass(frozen=True)
class TableEntry:
    kind: str
    args: tuple[int, ...]
    value: int
    source: str


class ExternalTables:
    """Lotto-design lower bounds and constant-weight-code sizes, from CSV.

    Consumed as data, never computed.  The shipped catalog carries the
    values the bound examples require under source="implied", plus
    alternates under source="standard"; a lookup miss returns None so the
    caller reports absence instead of inventing a number.  The env var
    ERASURE_LAB_TABLES overrides the CSV path.
    """

    def __init__(self, entries: Iterable[TableEntry], source: str = "implied"):
        self.source = source
        self._rows: dict[tuple, TableEntry] = {}
        for ent in entries:
            self._rows[(ent.kind, ent.args, ent.source)] = ent

    @classmethod
    def load(cls, path: str | None = None, source: str = "implied") -> "ExternalTables":
        if path is None:
            path = os.environ.get("ERASURE_LAB_TABLES") or str(
                fixture_path("external_tables.csv")
            )
        entries = []
        with open(path, newline="") as fh:
            for row in csv.DictReader(fh):
                args = tuple(int(row[c]) for c in ("n", "a1", "a2", "a3") if row.get(c))
                entries.append(
                    TableEntry(row["kind"], args, int(row["value"]), row["source"])
                )
        return cls(entries, source)

    def _get(self, kind: str, args: tuple[int, ...]) -> TableEntry | None:
        return self._rows.get((kind, args, self.source))

    def lotto(self, n: int, kk: int, p: int, t: int) -> TableEntry | None:
        """L(n, k, p, t), trying the complement-design identity on a miss."""
        ent = self._get("lotto", (n, kk, p, t))
        if ent is not None:
            return ent
        comp = (n, n - kk, n - p, n - kk - p + t)
        if min(comp) >= 0:
            return self._get("lotto", comp)
        return None

    def cwc(self, n: int, d: int, w: int) -> TableEntry | None:
        """A(n, d, w); the complement identity A(n,d,w) = A(n,d,n-w) tried on a miss."""
        ent = self._get("cwc", (n, d, w))
        if ent is not None:
            return ent
        return self._get("cwc", (n, d, n - w))


# -- stopping-redundancy lower bounds --------------------------------------------


@dataclass(frozen=True)
class BoundValue:
    b: int | None
    rho: int | None
    detail: str


@dataclass(frozen=True)
class BoundReport:
    n: int
    k: int
    u: int
    gilbert: BoundValue
    lotto: BoundValue
    bonferroni: BoundValue

    def to_json(self) -> str:
        def enc(v: BoundValue):
            return {"b": v.b, "rho": v.rho, "detail": v.detail}

        return json.dumps(
            {
                "n": self.n,
                "k": self.k,
                "u": self.u,
                "gilbert": enc(self.gilbert),
                "lotto": enc(self.lotto),
                "bonferroni": enc(self.bonferroni),
            },
            sort_keys=True,
        )


def stopping_redundancy_bounds(
    n: int, k: int, u: int, tables: ExternalTables | None = None
) -> BoundReport:
    """Three lower bounds on the block count b needed for perfect decoding.

    gilbert:     ceil( C(n,n-k) / (n sum_{i<=u} C(n-k,i)C(k,i)) )
    lotto:       ceil( L(n, n-k, n-k, n-k-u) / n )
    bonferroni:  ceil( (C(n,k) - C(2u,u)^2 A(n, 4u+2, n-k))
                       / (n (sum_{i<=u} C(n-k,i)C(k,i) - C(2u,u)^2)) )

    Each b is clamped to at least 1; rho = b (n-k).  A missing table entry
    yields an explicitly absent bound, never a substitute value.
    """
    if u < 1:
        raise ValueError("u must be at least 1")
    if not 0 < k < n:
        raise ValueError("need 0 < k < n")
    if tables is None:
        tables = ExternalTables.load()
    nk = n - k
    per_shift = sum(math.comb(nk, i) * math.comb(k, i) for i in range(u + 1))

    gb = max(1, -(-math.comb(n, nk) // (n * per_shift)))
    gilbert = BoundValue(gb, gb * nk, f"C({n},{nk})/({n}*{per_shift})")

    ent = tables.lotto(n, nk, nk, nk - u)
    if ent is None:
        lotto = BoundValue(None, None, f"L({n},{nk},{nk},{nk - u}) not in tables")
    else:
        lb = max(1, -(-ent.value // n))
        lotto = BoundValue(
            lb, lb * nk, f"L({n},{nk},{nk},{nk - u})={ent.value} [{ent.source}]"
        )

    c2 = math.comb(2 * u, u) ** 2
    ent = tables.cwc(n, 4 * u + 2, nk)
    if ent is None:
        bonf = BoundValue(None, None, f"A({n},{4 * u + 2},{nk}) not in tables")
    elif per_shift <= c2:
        bonf = BoundValue(1, nk, "degenerate denominator; bound vacuous")
    else:
        num = math.comb(n, k) - c2 * ent.value
        den = n * (per_shift - c2)
        bb = max(1, -(-num // den))
        bonf = BoundValue(
            bb, bb * nk, f"A({n},{4 * u + 2},{nk})={ent.value} [{ent.source}]"
        )
    return BoundReport(n, k, u, gilbert, lotto, bonf)


# -- greedy expanded-matrix construction ------------------------------------------


def _coverage_hits(patterns: np.ndarray, supp: int, n: int, u: int) -> np.ndarray:
    full = (1 << n) - 1
    hit = np.zeros(len(patterns), dtype=bool)
    for tau in range(n):
        rot = ((supp << tau) | (supp >> (n - tau))) & full if tau else supp
        hit |= np.bitwise_count(patterns & np.uint64(rot)) <= u
    return hit


def greedy_expand(n: int, k: int, u: int = 1) -> tuple[list[BinarySequence], int]:
    """Cover all weight-(n-k) patterns greedily with complement sequences.

    Each round scans the still-uncovered patterns v in colex order, scores
    the sequence with support complementary to v by how many uncovered
    patterns it would put within shifted correlation u, and adopts the best
    scorer (first in colex order on a tie).  Deterministic; returns the
    sequences and their count.
    """
    nk = n - k
    full = (1 << n) - 1
    patterns = np.array(list(weight_masks(n, nk)), dtype=np.uint64)
    covered = np.zeros(len(patterns), dtype=bool)
    seqs: list[BinarySequence] = []
    while not covered.all():
        open_idx = np.flatnonzero(~covered)
        remaining = patterns[open_idx]
        best_supp = -1
        best_gain = -1
        best_hit = None
        for v in remaining.tolist():
            supp = full ^ int(v)
            hit = _coverage_hits(remaining, supp, n, u)
            gain = int(np.count_nonzero(hit))
            if gain > best_gain:
                best_gain, best_supp, best_hit = gain, supp, hit
        seqs.append(BinarySequence((best_supp >> t) & 1 for t in range(n)))
        covered[open_idx[best_hit]] = True
    return seqs, len(seqs)


def expanded_from_sequences(
    code: CyclicCode, h: ParityCheckMatrix, seqs: Sequence[BinarySequence]
) -> ExpandedParityCheckMatrix:
    """Realize each sequence as a block: reduce h to identity on its zero set.

    Works whenever the zero-set columns of h are linearly independent (always
    true on MDS codes).  Each reduced block gets standard basis vectors
    exactly on the zero set, so its parity check sequence equals the input.
    """
    blocks = []
    for s in seqs:
        if len(s) != code.n:
            raise ValueError("sequence length differs from the code length")
        zeros = list(s.zero_set())
        rows = _linalg.rref_at_columns(code.field, [list(r) for r in h.rows], zeros)
        if rows is None:
            raise ValueError(f"zero-set columns {zeros} are not independent in h")
        blk = ParityCheckMatrix(rows, code.field)
        blk.attach(code)
        got, _ = parity_check_sequence(blk)
        if got != s:
            raise ValueError(
                "reduced block does not realize the requested sequence "
                "(a column outside the zero set collapsed to a basis vector)"
            )
        blocks.append(blk)
    return ExpandedParityCheckMatrix(blocks)


# -- perfect decoding -----------------------------------------------------------


def perfect_decoding_check(
    code: CyclicCode,
    h,
    decoder: str = "ts_agd",
    u: int = 1,
    weights: Iterable[int] | None = None,
    engine: str = "kernel",
) -> tuple[bool, tuple[int, tuple[int, ...]] | None]:
    """Compare failure SETS against the ML oracle for every e <= n-k.

    Returns (True, None) when they match everywhere, else (False,
    (e, pattern)) with the colex-first disagreeing erasure set.  Failure
    sets, not counts: a decoder that fails on different patterns in equal
    number is still not perfect.
    """
    nk = code.n - code.k
    n = code.n
    weights = list(weights) if weights is not None else list(range(1, nk + 1))

    if engine == "kernel" and n <= 63:
        try:
            dec = _BatchFlags(code, h, decoder, u)
        except ValueError:
            dec = None  # non-MDS expanded config: per-mask path below
        if dec is not None:
            ml = _BatchFlags(code, _stack_blocks(h), "ml", u)
            for e in weights:
                for block in _mask_blocks(n, e, 0, math.comb(n, e)):
                    diff = dec.fails(block) != ml.fails(block)
                    if diff.any():
                        bad = int(block[int(np.argmax(diff))])
                        return False, (e, tuple(_mask_positions(bad)))
            return True, None

    dec_f = failure_test(code, h, decoder, u, engine)
    ml_f = failure_test(code, _stack_blocks(h), "ml", u, engine)
    for e in weights:
        for mask in weight_masks(n, e):
            if dec_f(mask) != ml_f(mask):
                return False, (e, tuple(_mask_positions(mask)))
    return True, None
