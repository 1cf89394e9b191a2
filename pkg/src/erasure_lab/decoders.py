"""Erasure decoders for cyclic codes.

Five decoders share one accounting convention:

  * ied            -- iterative peeling (flooding CNU/VNU schedule)
  * agd            -- peeling interleaved with single cyclic shifts
  * ts_agd         -- shift schedule precomputed from the parity check
                      sequence, then peeling in ascending-correlation order
  * ts_agd_expanded-- several parity check matrices scanned jointly, with
                      an i x i submatrix inversion fallback for MDS codes
  * ml_decode      -- rank oracle on the erased-column submatrix

Counters: a CNU sweep adds 1/2 to ``iterations`` and one complexity unit per
check row that still touches an erasure; a VNU sweep adds 1/2 and is free,
and only runs when the preceding CNU sweep decoded something.  Preprocessing
correlations cost one unit per shift examined.  The ML oracle reports zero
for both counters; its cost is not modeled.

Erasure-channel semantics: known symbols are trusted, so a successful decode
is always the transmitted codeword (no miscorrection is possible while the
erased columns are independent).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import _linalg
from .codes import CyclicCode, ParityCheckMatrix
from .pcm import parity_check_sequence


class DecoderInternalError(RuntimeError):
    """An impossible state, e.g. a singular inversion submatrix on an MDS code."""


class ReceivedWord:
    """A channel output: known symbols plus erasure marks (None)."""

    def __init__(self, code: CyclicCode, symbols: Sequence[int | None]):
        syms = tuple(None if v is None else int(v) for v in symbols)
        if len(syms) != code.n:
            raise ValueError(f"expected {code.n} symbols, got {len(syms)}")
        self.code = code
        self.symbols = syms

    @classmethod
    def from_codeword(
        cls, code: CyclicCode, codeword: Sequence[int], erasures: Sequence[int]
    ) -> "ReceivedWord":
        erased = set(erasures)
        if any(t < 0 or t >= code.n for t in erased):
            raise ValueError("erasure position out of range")
        return cls(
            code, [None if t in erased else codeword[t] for t in range(code.n)]
        )

    @property
    def erasure_set(self) -> tuple[int, ...]:
        return tuple(t for t, v in enumerate(self.symbols) if v is None)

    @property
    def erasure_mask(self) -> int:
        m = 0
        for t, v in enumerate(self.symbols):
            if v is None:
                m |= 1 << t
        return m

    def is_complete(self) -> bool:
        return all(v is not None for v in self.symbols)

    def __repr__(self) -> str:
        return f"ReceivedWord(n={self.code.n}, erasures={list(self.erasure_set)})"


@dataclass(frozen=True)
class DecodeOutcome:
    """Result record; counters follow the module-level conventions."""

    status: str
    recovered: tuple[int, ...] | None
    iterations: float
    complexity_units: int
    shifts_applied: tuple[int, ...] = ()
    blocks_used: tuple[int, ...] = ()
    inversion_size: int = 0
    cnu_sweeps: int = 0
    vnu_sweeps: int = 0
    unresolved: tuple[int, ...] = ()
    decoder: str = ""

    @property
    def ok(self) -> bool:
        return self.status == "success"


class ExpandedParityCheckMatrix:
    """b same-shape parity check matrices of one code, scanned jointly."""

    def __init__(self, blocks: Sequence[ParityCheckMatrix]):
        blocks = tuple(blocks)
        if not blocks:
            raise ValueError("need at least one block")
        first = blocks[0]
        for blk in blocks:
            if blk.n != first.n or blk.field is not first.field:
                raise ValueError("blocks disagree on length or field")
            if blk.num_rows != first.num_rows:
                raise ValueError("blocks must have equal row counts")
        self.blocks = blocks

    @property
    def n(self) -> int:
        return self.blocks[0].n

    @property
    def b(self) -> int:
        return len(self.blocks)

    @property
    def stopping_redundancy(self) -> int:
        return self.b * self.blocks[0].num_rows

    def __repr__(self) -> str:
        return f"ExpandedParityCheckMatrix(b={self.b}, n={self.n})"


# -- shared peeling core -----------------------------------------------------


@dataclass
class _PeelRun:
    word: list
    iterations: float = 0.0
    units: int = 0
    cnu: int = 0
    vnu: int = 0
    progressed: bool = False

    def complete(self) -> bool:
        return all(v is not None for v in self.word)


def _peel(h: ParityCheckMatrix, word: list) -> _PeelRun:
    """Flooding peel to fixpoint.  Mutates and returns the working word."""
    f = h.field
    run = _PeelRun(word)
    supports = h.row_supports()
    while True:
        active = 0
        resolved: dict[int, int] = {}
        for row, sup in zip(h.rows, supports):
            erased = [j for j in sup if word[j] is None]
            if not erased:
                continue
            active += 1
            if len(erased) == 1:
                j = erased[0]
                acc = 0
                for t in sup:
                    if t != j:
                        acc = f.add(acc, f.mul(row[t], word[t]))
                resolved[j] = f.div(f.neg(acc), row[j])
        run.units += active
        run.iterations += 0.5
        run.cnu += 1
        if not resolved:
            return run
        for j, v in resolved.items():
            word[j] = v
        run.iterations += 0.5
        run.vnu += 1
        run.progressed = True
        if run.complete():
            return run


def _resolve_code(h: ParityCheckMatrix, r: ReceivedWord) -> CyclicCode:
    code = r.code
    if h.n != code.n or h.field is not code.field:
        raise ValueError("matrix does not match the received word's code")
    return code


def _success(run: _PeelRun, word, **kw) -> DecodeOutcome:
    return DecodeOutcome(
        "success",
        tuple(word),
        run.iterations,
        run.units,
        cnu_sweeps=run.cnu,
        vnu_sweeps=run.vnu,
        **kw,
    )


# -- decoders -----------------------------------------------------------------


def ied(h: ParityCheckMatrix, r: ReceivedWord) -> DecodeOutcome:
    """Peel to fixpoint; fail as soon as no check row sees a single erasure."""
    _resolve_code(h, r)
    run = _peel(h, list(r.symbols))
    if run.complete():
        return _success(run, run.word, decoder="ied")
    return DecodeOutcome(
        "failure",
        None,
        run.iterations,
        run.units,
        cnu_sweeps=run.cnu,
        vnu_sweeps=run.vnu,
        unresolved=_nones(run.word),
        decoder="ied",
    )


def agd(h: ParityCheckMatrix, r: ReceivedWord) -> DecodeOutcome:
    """Peel, then single right shifts; give up after a full unproductive orbit.

    The budget is rotation_period - 1 consecutive shifts whose following
    attempt decodes nothing; any progress resets it.  On success the word is
    shifted back to the original frame.
    """
    code = _resolve_code(h, r)
    period = code.rotation_period
    word = list(r.symbols)
    offset = 0
    misses = 0
    total = _PeelRun(word)
    shifts: list[int] = []
    while True:
        run = _peel(h, word)
        total.iterations += run.iterations
        total.units += run.units
        total.cnu += run.cnu
        total.vnu += run.vnu
        if run.progressed:
            misses = 0
        if run.complete():
            recovered = code.shift_word(word, -offset)
            return _success(
                total, recovered, shifts_applied=tuple(shifts), decoder="agd"
            )
        if misses >= period - 1:
            return DecodeOutcome(
                "failure",
                None,
                total.iterations,
                total.units,
                tuple(shifts),
                cnu_sweeps=total.cnu,
                vnu_sweeps=total.vnu,
                unresolved=_nones(code.shift_word(word, -offset)),
                decoder="agd",
            )
        offset = (offset + 1) % period
        word = code.shift_word(word, 1)
        shifts.append(offset)
        misses += 1


def _erasure_mask(word: Sequence) -> int:
    m = 0
    for t, v in enumerate(word):
        if v is None:
            m |= 1 << t
    return m


def _nones(word: Sequence) -> tuple[int, ...]:
    return tuple(t for t, v in enumerate(word) if v is None)


def ts_agd(
    h: ParityCheckMatrix, r: ReceivedWord, fast_restart: bool = False
) -> DecodeOutcome:
    """Correlation-scheduled shift decoding.

    Stage 1 charges one unit per shift and ranks every rotation by the count
    of erasures landing on non-basis columns; stage 2 peels at each rotation
    in ascending (count, shift) order.  Partial progress restarts stage 1 on
    the partially decoded word; a completing attempt stops immediately.
    ``fast_restart`` skips the stage-1 recharge in the accounting only; the
    outcome is unchanged.
    """
    code = _resolve_code(h, r)
    sp, basis_cols = parity_check_sequence(h)
    if not basis_cols:
        raise ValueError(
            "matrix has no standard basis columns; modify it before two-stage decoding"
        )
    period = code.rotation_period
    nonbasis_mask = 0
    for t in sp.support():
        nonbasis_mask |= 1 << t
    word = list(r.symbols)
    total = _PeelRun(word)
    shifts: list[int] = []

    if all(v is not None for v in word):
        # nothing to schedule: one confirming sweep
        run = _peel(h, word)
        total.iterations, total.units = run.iterations, run.units
        total.cnu, total.vnu = run.cnu, run.vnu
        return _success(total, word, decoder="ts_agd")

    first_pass = True
    while True:
        if first_pass or not fast_restart:
            total.units += period
        first_pass = False
        emask = _erasure_mask(word)
        corr = [
            bin(code.rotate_mask(emask, tau) & nonbasis_mask).count("1")
            for tau in range(period)
        ]
        progressed = False
        for tau in sorted(range(period), key=lambda t: (corr[t], t)):
            attempt = code.shift_word(word, tau)
            run = _peel(h, attempt)
            total.iterations += run.iterations
            total.units += run.units
            total.cnu += run.cnu
            total.vnu += run.vnu
            if tau:
                shifts.append(tau)
            if run.complete():
                recovered = code.shift_word(attempt, -tau)
                return _success(
                    total, recovered, shifts_applied=tuple(shifts), decoder="ts_agd"
                )
            if run.progressed:
                word = code.shift_word(attempt, -tau)
                progressed = True
                break
        if not progressed:
            return DecodeOutcome(
                "failure",
                None,
                total.iterations,
                total.units,
                tuple(shifts),
                cnu_sweeps=total.cnu,
                vnu_sweeps=total.vnu,
                unresolved=_nones(word),
                decoder="ts_agd",
            )


def ts_agd_expanded(
    hx: ExpandedParityCheckMatrix, r: ReceivedWord, u: int
) -> DecodeOutcome:
    """Joint scan over blocks with an i x i inversion fallback (i <= u).

    Hits (i, block, shift) with correlation exactly i are visited in
    lexicographic order.  A hit with i <= 1 runs a plain peeling attempt:
    completion stops, partial progress rescans from i = 0, a barren attempt
    moves on.  A hit with i >= 2 solves for the i erasures on non-basis
    columns directly (the square-submatrix condition of modified MDS
    matrices guarantees the system), then sweeps the rest.
    """
    code = r.code
    nk = code.n - code.k
    if not 0 <= u <= nk:
        raise ValueError(f"u must lie in [0, {nk}]")
    for blk in hx.blocks:
        _resolve_code(blk, r)
    period = code.rotation_period
    f = code.field

    seqs = [parity_check_sequence(blk) for blk in hx.blocks]
    nonbasis_masks = []
    pivot_row = []  # per block: basis column -> its hosting row
    for blk, (sp, basis) in zip(hx.blocks, seqs):
        if not basis:
            raise ValueError("every block needs standard basis columns")
        m = 0
        for t in sp.support():
            m |= 1 << t
        nonbasis_masks.append(m)
        pivot_row.append(
            {j: next(i for i, row in enumerate(blk.rows) if row[j]) for j in basis}
        )

    word = list(r.symbols)
    total = _PeelRun(word)
    shifts: list[int] = []
    blocks_used: list[int] = []

    if all(v is not None for v in word):
        run = _peel(hx.blocks[0], word)
        total.iterations, total.units = run.iterations, run.units
        total.cnu, total.vnu = run.cnu, run.vnu
        return _success(total, word, decoder="ts_agd_expanded")

    while True:
        total.units += hx.b * period
        emask = _erasure_mask(word)
        corr = [
            [
                bin(code.rotate_mask(emask, tau) & nb).count("1")
                for tau in range(period)
            ]
            for nb in nonbasis_masks
        ]
        hits = [
            (i, j, tau)
            for i in range(u + 1)
            for j in range(hx.b)
            for tau in range(period)
            if corr[j][tau] == i
        ]
        progressed = False
        for i, j, tau in hits:
            blk = hx.blocks[j]
            attempt = code.shift_word(word, tau)
            blocks_used.append(j)
            if tau:
                shifts.append(tau)
            if i <= 1:
                run = _peel(blk, attempt)
                total.iterations += run.iterations
                total.units += run.units
                total.cnu += run.cnu
                total.vnu += run.vnu
                if run.complete():
                    recovered = code.shift_word(attempt, -tau)
                    return _success(
                        total,
                        recovered,
                        shifts_applied=tuple(shifts),
                        blocks_used=tuple(blocks_used),
                        decoder="ts_agd_expanded",
                    )
                if run.progressed:
                    word = code.shift_word(attempt, -tau)
                    progressed = True
                    break
                continue
            # inversion path: solve the i erasures sitting on non-basis columns
            erased = [t for t, v in enumerate(attempt) if v is None]
            nb_mask = nonbasis_masks[j]
            free = [t for t in erased if nb_mask >> t & 1]
            pinned = [t for t in erased if not nb_mask >> t & 1]
            blocked = {pivot_row[j][t] for t in pinned}
            usable = [t for t in range(blk.num_rows) if t not in blocked]
            if len(usable) < i:
                # more erasures than check rows can pin down; the system is
                # underdetermined, so the hit is infeasible, not an error
                continue
            rows = usable[:i]
            sub = [[blk.rows[t][c] for c in free] for t in rows]
            rhs = []
            for t in rows:
                acc = 0
                for c, v in zip(range(blk.n), attempt):
                    if v is not None and blk.rows[t][c]:
                        acc = f.add(acc, f.mul(blk.rows[t][c], v))
                rhs.append(f.neg(acc))
            sol = _linalg.solve_unique(f, sub, rhs)
            if sol is None:
                raise DecoderInternalError(
                    "singular inversion submatrix; matrix violates the "
                    "square-submatrix condition"
                )
            for c, v in zip(free, sol):
                attempt[c] = v
            total.iterations += 1.0
            total.units += i
            total.cnu += 1
            total.vnu += 1
            if pinned:
                for c in pinned:
                    row_i = pivot_row[j][c]
                    row = blk.rows[row_i]
                    acc = 0
                    for t, v in enumerate(attempt):
                        if t != c and row[t]:
                            acc = f.add(acc, f.mul(row[t], v))
                    attempt[c] = f.div(f.neg(acc), row[c])
                total.iterations += 1.0
                total.units += len(pinned)
                total.cnu += 1
                total.vnu += 1
            recovered = code.shift_word(attempt, -tau)
            return _success(
                total,
                recovered,
                shifts_applied=tuple(shifts),
                blocks_used=tuple(blocks_used),
                inversion_size=i,
                decoder="ts_agd_expanded",
            )
        if not progressed:
            return DecodeOutcome(
                "failure",
                None,
                total.iterations,
                total.units,
                tuple(shifts),
                tuple(blocks_used),
                cnu_sweeps=total.cnu,
                vnu_sweeps=total.vnu,
                unresolved=_nones(word),
                decoder="ts_agd_expanded",
            )


def ml_decode(h: ParityCheckMatrix, r: ReceivedWord) -> DecodeOutcome:
    """Rank oracle: decodable iff the erased columns are linearly independent."""
    _resolve_code(h, r)
    f = h.field
    erased = list(r.erasure_set)
    if not erased:
        return DecodeOutcome(
            "success", tuple(r.symbols), 0.0, 0, decoder="ml_decode"
        )
    sub = [[row[c] for c in erased] for row in h.rows]
    rhs = []
    for row in h.rows:
        acc = 0
        for t, v in enumerate(r.symbols):
            if v is not None and row[t]:
                acc = f.add(acc, f.mul(row[t], v))
        rhs.append(f.neg(acc))
    sol = _linalg.solve_unique(f, sub, rhs)
    if sol is None:
        # no partial credit: an ambiguous system leaves the whole set open
        return DecodeOutcome(
            "failure", None, 0.0, 0, unresolved=tuple(erased), decoder="ml_decode"
        )
    word = list(r.symbols)
    for c, v in zip(erased, sol):
        word[c] = v
    return DecodeOutcome("success", tuple(word), 0.0, 0, decoder="ml_decode")
