"""Parity-check-matrix modification and parity check sequence tooling.

The modification places standard basis vectors at a chosen column set
(criterion 1), positions them so the parity check sequence has flat
out-of-phase autocorrelation (criterion 2, scored here rather than
optimized), and keeps row weights small (criterion 3).

A parity check sequence s_p(t) is 0 exactly where the matrix column is a
standard basis vector; its zero set S_p collects the basis positions.  The
correlation R_H(tau) = sum_t s_e(t) s_p(t+tau) counts erasures that sit on
non-basis columns once the received word is right-shifted by tau.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import _linalg
from .codes import ParityCheckMatrix, fixture_path
from .galois import GF, cyclotomic_coset

__all__ = [
    "BinarySequence",
    "CorrelationProfile",
    "PairOverlapMap",
    "Mask",
    "parity_check_sequence",
    "hamming_correlation",
    "modify_pcm",
    "propose_sp",
    "criteria_report",
    "CriteriaReport",
    "mask",
    "m_sequence",
    "difference_set_catalog",
]


class BinarySequence:
    """A fixed-length 0/1 sequence with an optional role tag."""

    __slots__ = ("n", "bits", "role")

    def __init__(self, bits: Iterable[int], role: str = ""):
        self.bits = tuple(int(b) for b in bits)
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("bits must be 0 or 1")
        self.n = len(self.bits)
        self.role = role

    @classmethod
    def from_support(cls, n: int, support: Iterable[int], role: str = "") -> "BinarySequence":
        bits = [0] * n
        for t in support:
            bits[t % n] = 1
        return cls(bits, role)

    @property
    def weight(self) -> int:
        return sum(self.bits)

    def support(self) -> tuple[int, ...]:
        return tuple(t for t, b in enumerate(self.bits) if b)

    def zero_set(self) -> tuple[int, ...]:
        return tuple(t for t, b in enumerate(self.bits) if not b)

    def complement(self) -> "BinarySequence":
        return BinarySequence(tuple(1 - b for b in self.bits), self.role)

    def shift(self, tau: int) -> "BinarySequence":
        """Right cyclic shift by tau positions."""
        tau %= self.n
        return BinarySequence(self.bits[-tau:] + self.bits[:-tau] if tau else self.bits, self.role)

    def to_text(self) -> str:
        return "".join(str(b) for b in self.bits) + "\n"

    @classmethod
    def from_text(cls, text: str, role: str = "") -> "BinarySequence":
        line = text.strip().replace(" ", "")
        return cls([int(c) for c in line], role)

    def __eq__(self, other) -> bool:
        return isinstance(other, BinarySequence) and self.bits == other.bits

    def __hash__(self) -> int:
        return hash(self.bits)

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, t: int) -> int:
        return self.bits[t]

    def __repr__(self) -> str:
        return f"BinarySequence({''.join(str(b) for b in self.bits)})"


@dataclass(frozen=True)
class CorrelationProfile:
    """Hamming correlation values R_H(tau) over one rotation period."""

    values: tuple[int, ...]
    source: str = ""

    @property
    def period(self) -> int:
        return len(self.values)

    def min_value(self) -> int:
        return min(self.values)

    def out_of_phase(self) -> tuple[int, ...]:
        return self.values[1:]

    def spread(self) -> int:
        oop = self.out_of_phase()
        return max(oop) - min(oop) if oop else 0

    def multiset(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for v in self.out_of_phase():
            out[v] = out.get(v, 0) + 1
        return out

    def taus_ascending(self) -> list[int]:
        """Shift order used by the two-stage decoder: value, then tau."""
        return sorted(range(self.period), key=lambda t: (self.values[t], t))


def hamming_correlation(
    s1: BinarySequence, s2: BinarySequence, rotation_period: int | None = None
) -> CorrelationProfile:
    """R_H(tau) = sum_t s1(t) s2(t+tau) for tau over the rotation period.

    With rotation_period m < n, only the first m coordinates take part in
    the shift and the fixed tail contributes a constant term (the extended
    Golay convention: the parity coordinate never moves).
    """
    if s1.n != s2.n:
        raise ValueError("length mismatch")
    n = s1.n
    m = rotation_period if rotation_period is not None else n
    fixed = sum(s1.bits[t] * s2.bits[t] for t in range(m, n))
    vals = []
    for tau in range(m):
        acc = fixed
        for t in s1.support():
            if t < m:
                acc += s2.bits[(t + tau) % m]
        vals.append(acc)
    return CorrelationProfile(tuple(vals))


class PairOverlapMap:
    """a(tau1, tau2) = |{t : s_p(t+tau1) = s_p(t+tau2) = 1}|.

    The map is circulant: a(tau1, tau2) depends only on tau2 - tau1 and
    equals the autocorrelation of s_p at that lag.
    """

    def __init__(self, sp: BinarySequence):
        self.n = sp.n
        self.weight = sp.weight
        auto = hamming_correlation(sp, sp)
        self._auto = auto.values
        self.validate()

    def value(self, tau1: int, tau2: int) -> int:
        return self._auto[(tau2 - tau1) % self.n]

    def validate(self) -> None:
        n, w = self.n, self.weight
        for lag, a in enumerate(self._auto):
            if not 0 <= a <= w:
                raise AssertionError(f"overlap {a} at lag {lag} outside [0, {w}]")
        if any(self.value(t, t) != w for t in range(n)):
            raise AssertionError("diagonal overlap must equal wt(s_p)")
        for tau2 in range(n):
            if sum(self.value(tau1, tau2) for tau1 in range(n)) != w * w:
                raise AssertionError("row sum must equal wt(s_p)^2")


@dataclass(frozen=True)
class Mask:
    """Nonzero-entry indicator of a parity check matrix."""

    rows: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.rows[0])

    def row_weights(self) -> tuple[int, ...]:
        return tuple(sum(r) for r in self.rows)

    def to_text(self) -> str:
        return "\n".join(" ".join(str(v) for v in r) for r in self.rows) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Mask":
        rows = tuple(
            tuple(int(t) for t in ln.split()) for ln in text.splitlines() if ln.strip()
        )
        return cls(rows)


def mask(h: ParityCheckMatrix) -> Mask:
    return Mask(tuple(tuple(1 if v else 0 for v in row) for row in h.rows))


def parity_check_sequence(h: ParityCheckMatrix) -> tuple[BinarySequence, tuple[int, ...]]:
    """The sequence with 0 exactly at standard-basis columns, plus its zero set."""
    bits = []
    for t in range(h.n):
        col = [v for v in h.column(t) if v]
        bits.append(0 if col == [1] else 1)
    seq = BinarySequence(bits, role="parity-check")
    return seq, seq.zero_set()


def modify_pcm(
    h: ParityCheckMatrix, target_zeros: Iterable[int], depth: int = 3
) -> ParityCheckMatrix:
    """Row-space-preserving modification placing basis vectors at target_zeros.

    Ascending target column gets ascending row index, pivots scaled to 1.
    When fewer than n-k columns are targeted, the leftover rows host no
    basis vector; those are the only rows that may legally be added to
    others, and a greedy search over combinations of up to `depth` of them
    (all nonzero coefficients) lowers row weights where it can.
    """
    zeros = sorted(set(target_zeros))
    if len(zeros) > h.num_rows:
        raise ValueError(f"{len(zeros)} target columns exceed {h.num_rows} rows")
    field = h.field
    rows = _linalg.rref_at_columns(field, h.rows, zeros)
    n_free = len(rows) - len(zeros)
    if n_free > 0 and depth > 0:
        free = list(range(len(zeros), len(rows)))
        scalars = [s for s in range(1, field.q)]
        combos: list[list[tuple[int, int]]] = []

        def build(start: int, cur: list[tuple[int, int]]):
            if cur:
                combos.append(list(cur))
            if len(cur) == depth:
                return
            for idx in range(start, len(free)):
                for s in scalars:
                    cur.append((free[idx], s))
                    build(idx + 1, cur)
                    cur.pop()

        build(0, [])
        improved = True
        while improved:
            improved = False
            for i in range(len(rows)):
                w_i = sum(1 for v in rows[i] if v)
                best = None
                for combo in combos:
                    if any(j == i for j, _ in combo):
                        continue
                    cand = list(rows[i])
                    for j, s in combo:
                        cand = [field.add(a, field.mul(s, b)) for a, b in zip(cand, rows[j])]
                    w = sum(1 for v in cand if v)
                    if w < w_i:
                        w_i, best = w, cand
                if best is not None:
                    rows[i] = best
                    improved = True
    out = ParityCheckMatrix(rows, field, None, label="modified")
    if h.code is not None:
        out = out.attach(h.code)
    return out


# -- parity check sequence constructions ----------------------------------------


def m_sequence(n: int, decimation: int = 1, p: int = 2) -> BinarySequence:
    """Maximal-length LFSR sequence of period n = p^m - 1, then decimated.

    The recurrence comes from the default degree-m modulus; the seed is
    0^{m-1} 1, which fixes the phase of every shipped sequence.
    """
    m = 1
    while p**m - 1 < n:
        m += 1
    if p**m - 1 != n:
        raise ValueError(f"{n} is not p^m - 1 for p={p}")
    if math.gcd(decimation, n) != 1:
        raise ValueError("decimation must be coprime to the period")
    field = GF(p, m)
    taps = field.modulus[:-1]  # low-order coefficients c_0 .. c_{m-1}
    s = [0] * (m - 1) + [1]
    for t in range(n - m):
        nxt = 0
        for i, c in enumerate(taps):
            nxt = (nxt - c * s[t + i]) % p
        s.append(nxt)
    return BinarySequence([s[(decimation * t) % n] for t in range(n)], role="parity-check")


def difference_set_catalog() -> list[dict]:
    """Shipped cyclic difference set supports, complements included."""
    entries = []
    with fixture_path("difference_sets.csv").open() as fh:
        for rec in csv.DictReader(fh):
            entries.append(
                {
                    "n": int(rec["n"]),
                    "k": int(rec["k"]),
                    "lambda": int(rec["lambda"]),
                    "support": tuple(int(t) for t in rec["support"].split()),
                    "source": rec["source"],
                }
            )
    return entries


# Shift aligning the coset-union zero set with the shipped reference phase,
# keyed by (n, leaders).  Unlisted combinations use shift 0.
_COSET_SHIFTS = {
    (31, (7, 11)): 12,
    (63, (3, 5, 7, 11, 13, 15, 23, 27)): 0,
}


def propose_sp(
    n: int,
    k: int,
    method: str,
    *,
    leaders: Sequence[int] | None = None,
    shift: int | None = None,
    decimation: int = 1,
) -> BinarySequence:
    """Generate a weight-k parity check sequence of length n.

    Methods: difference_set (catalog lookup), cyclotomic_cosets (zero set =
    shifted union of the 2-cosets of the given leaders), m_sequence.
    """
    if method == "difference_set":
        for rec in difference_set_catalog():
            if rec["n"] == n and rec["k"] == k:
                return BinarySequence.from_support(n, rec["support"], role="parity-check")
        raise ValueError(f"no shipped difference set for (n,k)=({n},{k})")
    if method == "cyclotomic_cosets":
        if not leaders:
            raise ValueError("cyclotomic_cosets needs coset leaders")
        zeros: set[int] = set()
        for leader in leaders:
            zeros.update(cyclotomic_coset(n, 2, leader))
        if len(zeros) != n - k:
            raise ValueError(f"coset union has size {len(zeros)}, expected n-k={n - k}")
        if shift is None:
            shift = _COSET_SHIFTS.get((n, tuple(sorted(leaders))), 0)
        shifted = {(z + shift) % n for z in zeros}
        return BinarySequence(
            [0 if t in shifted else 1 for t in range(n)], role="parity-check"
        )
    if method == "m_sequence":
        seq = m_sequence(n, decimation)
        if seq.weight != k:
            raise ValueError(f"m-sequence weight {seq.weight} does not match k={k}")
        return BinarySequence(seq.bits, role="parity-check")
    raise ValueError(f"unknown method {method!r}")


# -- criteria scoring ------------------------------------------------------------


def _comb(x: int, y: int) -> int:
    if y < 0 or x < y:
        return 0
    return math.comb(x, y)


@dataclass(frozen=True)
class CriteriaReport:
    basis_count: int
    autocorrelation: dict[int, int]
    autocorrelation_spread: int
    row_weights: dict[int, int]
    min_row_weight: int
    eq3_upper_bound: float
    eq4_upper_bound: float
    reference_overlap: float

    def is_flat(self) -> bool:
        return self.autocorrelation_spread == 0


def criteria_report(h: ParityCheckMatrix, se_size: int) -> CriteriaReport:
    """Score a matrix against the three modification criteria.

    The two upper bounds count shift values usable at R_H = 0 and R_H <= 1
    respectively, Bonferroni-corrected through the pairwise overlap map;
    the reference overlap is the flat-autocorrelation optimum they are
    maximized against.
    """
    sp, zeros = parity_check_sequence(h)
    n = h.n
    sp_size = len(zeros)  # basis positions: |S_p| in the zero-set sense
    w = n - sp_size
    auto = hamming_correlation(sp, sp)
    overlap = PairOverlapMap(sp)

    weights: dict[int, int] = {}
    for row in h.rows:
        rw = sum(1 for v in row if v)
        weights[rw] = weights.get(rw, 0) + 1

    pair_sum_eq3 = 0
    pair_sum_eq4 = 0
    for t1 in range(n):
        for t2 in range(t1 + 1, n):
            a = overlap.value(t1, t2)
            both_zero = 2 * sp_size - n + a
            pair_sum_eq3 += _comb(both_zero, se_size)
            pair_sum_eq4 += (n - sp_size - a) ** 2 * _comb(both_zero, se_size - 2)
            pair_sum_eq4 += a * _comb(both_zero, se_size - 1)

    eq3 = n * _comb(sp_size, se_size) - 2.0 / n * pair_sum_eq3
    eq4 = n * w * _comb(sp_size, se_size - 1) - 2.0 / n * pair_sum_eq4
    a_star = ((n - se_size + 1) ** 2 - n - se_size + 1) / (n - 1)

    return CriteriaReport(
        basis_count=sp_size,
        autocorrelation=auto.multiset(),
        autocorrelation_spread=auto.spread(),
        row_weights=dict(sorted(weights.items())),
        min_row_weight=min(weights),
        eq3_upper_bound=eq3,
        eq4_upper_bound=eq4,
        reference_overlap=a_star,
    )
