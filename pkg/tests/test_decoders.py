"""Decoder behavior: traces, correctness, and failure-set orderings."""

import itertools
import random

import pytest

from erasure_lab.codes import parse_code_spec, systematic_pcm
from erasure_lab.decoders import (
    ReceivedWord,
    agd,
    ied,
    ml_decode,
    ts_agd,
    ts_agd_expanded,
)
from erasure_lab.analysis import expanded_from_sequences
from erasure_lab.pcm import parity_check_sequence

EX1_ERASURES = (0, 2, 4, 7)


def _received(code, erasures, seed=None):
    if seed is None:
        cw = code.encode([0] * code.k)
    else:
        cw = code.random_codeword(random.Random(seed))
    return cw, ReceivedWord.from_codeword(code, cw, erasures)


class TestWorkedTrace:
    """The (8,4) RS code with erasures {0,2,4,7} on the systematic matrix.

    The counter conventions are anchored here: a CNU sweep costs half an
    iteration, complexity units count check-node evaluations, and the
    automorphism stage reports every shift it applied.
    """

    def test_ied_gives_up_immediately(self, rs8, rs8_hsys):
        _, r = _received(rs8, EX1_ERASURES)
        out = ied(rs8_hsys, r)
        assert not out.ok and out.status == "failure"
        assert out.iterations == 0.5
        assert out.complexity_units == 4
        assert out.cnu_sweeps == 1 and out.vnu_sweeps == 0
        assert out.recovered is None
        assert set(out.unresolved) == set(EX1_ERASURES)

    def test_agd_needs_one_shift(self, rs8, rs8_hsys):
        cw, r = _received(rs8, EX1_ERASURES)
        out = agd(rs8_hsys, r)
        assert out.ok
        assert out.recovered == cw
        assert out.shifts_applied == (1,)
        assert out.iterations == 2.5
        assert out.complexity_units == 11
        assert out.cnu_sweeps == 3 and out.vnu_sweeps == 2

    def test_ts_agd_jumps_to_the_good_shift(self, rs8, rs8_hsys):
        cw, r = _received(rs8, EX1_ERASURES)
        out = ts_agd(rs8_hsys, r)
        assert out.ok and out.recovered == cw
        assert out.shifts_applied == (1,)
        assert out.iterations == 2.0
        assert out.complexity_units == 15
        assert out.cnu_sweeps == 2 and out.vnu_sweeps == 2

    def test_ml_inverts_without_iterating(self, rs8, rs8_hsys):
        cw, r = _received(rs8, EX1_ERASURES)
        out = ml_decode(rs8_hsys, r)
        assert out.ok and out.recovered == cw
        assert out.iterations == 0.0 and out.complexity_units == 0

    def test_counters_ignore_symbol_values(self, rs8, rs8_hsys):
        # support-only dependence: a nonzero codeword traces identically
        _, r = _received(rs8, EX1_ERASURES, seed=99)
        out = ts_agd(rs8_hsys, r)
        assert (out.iterations, out.complexity_units, out.shifts_applied) == (
            2.0,
            15,
            (1,),
        )

    def test_no_erasures_is_half_an_iteration(self, rs8, rs8_hsys):
        _, r = _received(rs8, ())
        out = ts_agd(rs8_hsys, r)
        assert out.ok
        assert out.iterations == 0.5
        assert out.complexity_units == 0


ROUNDTRIP_CASES = [
    ("golay23", "hm"),
    ("golay23", "sys"),
    ("tgolay11", "hm"),
    ("rs8", "sys"),
    ("mds15", "hm"),
    ("lrc:15,8,dl=5", "hm"),
    ("bch:31,zeros=7+15", "hm"),
]


_FIXTURE_PAIRS = {
    "golay23": ("golay23", "golay_hm"),
    "tgolay11": ("tgolay11", "tgolay_hm"),
    "mds15": ("mds15", "mds15_hm"),
    "lrc:15,8,dl=5": ("lrc_d7", "lrc_d7_hm"),
    "bch:31,zeros=7+15": ("bch31_21", "bch31_21_hm"),
}


def _matrix_for(request, spec, kind):
    code = parse_code_spec(spec)
    if kind == "sys":
        return code, systematic_pcm(code)
    code_name, matrix_name = _FIXTURE_PAIRS[spec]
    return request.getfixturevalue(code_name), request.getfixturevalue(matrix_name)


@pytest.mark.parametrize("spec,kind", ROUNDTRIP_CASES, ids=lambda v: str(v))
def test_successful_decodes_recover_the_codeword(request, spec, kind):
    code, h = _matrix_for(request, spec, kind)
    rng = random.Random(hash(spec) & 0xFFFF)
    for trial in range(40):
        cw = code.random_codeword(rng)
        e = rng.randrange(0, code.n - code.k + 1)
        erasures = rng.sample(range(code.n), e)
        r = ReceivedWord.from_codeword(code, cw, erasures)
        for dec in (ied, agd, ts_agd, ml_decode):
            out = dec(h, r)
            if out.ok:
                assert out.recovered == cw, (dec.__name__, erasures)
            else:
                assert out.recovered is None
                assert out.unresolved
                assert set(out.unresolved) <= set(erasures)


def _failure_sets(code, h, max_e):
    """Exhaustive literal failure sets per decoder, as mask sets."""
    fails = {name: set() for name in ("ied", "agd", "ts_agd", "ml")}
    decs = {"ied": ied, "agd": agd, "ts_agd": ts_agd, "ml": ml_decode}
    cw = code.encode([0] * code.k)
    for e in range(max_e + 1):
        for pat in itertools.combinations(range(code.n), e):
            r = ReceivedWord.from_codeword(code, cw, pat)
            m = sum(1 << t for t in pat)
            for name, dec in decs.items():
                if not dec(h, r).ok:
                    fails[name].add(m)
    return fails


@pytest.mark.parametrize("spec", ["rs8", "tgolay11"])
def test_failure_set_ordering_exhaustive(request, spec):
    code = parse_code_spec(spec)
    for h in (
        systematic_pcm(code),
        request.getfixturevalue("tgolay_hm" if spec == "tgolay11" else "rs8_hsys"),
    ):
        fails = _failure_sets(code, h, code.n - code.k)
        assert fails["ml"] <= fails["agd"]
        assert fails["agd"] == fails["ts_agd"]
        assert fails["ts_agd"] <= fails["ied"]


def test_mds_modified_matrix_decodes_in_two_iterations(mds15, mds15_hm):
    # stage 1 always finds a shift with correlation <= 1 below the distance
    cw = mds15.encode([0] * 8)
    for e in range(1, 8):
        for pat in itertools.combinations(range(15), e):
            r = ReceivedWord.from_codeword(mds15, cw, pat)
            out = ts_agd(mds15_hm, r)
            if out.ok:
                assert out.iterations <= 2.0, pat


def test_decoding_is_deterministic(golay23, golay_hm):
    cw, r = (
        golay23.encode([0] * 12),
        ReceivedWord.from_codeword(
            golay23, golay23.encode([0] * 12), [0, 3, 7, 11, 14, 20, 22]
        ),
    )
    assert ts_agd(golay_hm, r) == ts_agd(golay_hm, r)
    assert agd(golay_hm, r) == agd(golay_hm, r)


def test_fast_restart_reaches_the_same_verdicts(rs8, rs8_hsys):
    cw = rs8.encode([0] * 4)
    for e in range(5):
        for pat in itertools.combinations(range(8), e):
            r = ReceivedWord.from_codeword(rs8, cw, pat)
            slow = ts_agd(rs8_hsys, r)
            fast = ts_agd(rs8_hsys, r, fast_restart=True)
            assert slow.ok == fast.ok
            assert slow.recovered == fast.recovered


def test_expanded_single_block_equals_plain_ts_agd(mds15, mds15_hm):
    sp, _ = parity_check_sequence(mds15_hm)
    hx = expanded_from_sequences(mds15, systematic_pcm(mds15), [sp])
    assert hx.blocks[0].rows == mds15_hm.rows
    cw = mds15.encode([0] * 8)
    rng = random.Random(17)
    for _ in range(150):
        e = rng.randrange(0, 8)
        pat = rng.sample(range(15), e)
        r = ReceivedWord.from_codeword(mds15, cw, pat)
        plain = ts_agd(mds15_hm, r)
        expanded = ts_agd_expanded(hx, r, u=1)
        assert plain.ok == expanded.ok, pat
        assert plain.recovered == expanded.recovered


def test_expanded_inversion_grows_the_decodable_set(rs8, rs8_hsys):
    sp, _ = parity_check_sequence(rs8_hsys)
    hx = expanded_from_sequences(rs8, rs8_hsys, [sp])
    cw = rs8.encode([0] * 4)
    stuck = decodable_u2_only = 0
    for pat in itertools.combinations(range(8), 4):
        r = ReceivedWord.from_codeword(rs8, cw, pat)
        out1 = ts_agd_expanded(hx, r, u=1)
        out2 = ts_agd_expanded(hx, r, u=2)
        if out1.ok:
            assert out2.ok  # raising u never loses patterns
            assert out2.recovered == cw
        else:
            stuck += 1
            if out2.ok:
                decodable_u2_only += 1
                assert out2.inversion_size == 2
    assert stuck > 0 and decodable_u2_only > 0


def _gf2_rank(cols):
    rank = 0
    basis = []
    for c in cols:
        for b in basis:
            c = min(c, c ^ b)
        if c:
            basis.append(c)
            rank += 1
    return rank


def test_ml_failure_iff_dependent_columns(golay23, golay_hsys):
    # independent oracle: bit-packed elimination on the erased columns
    colbits = []
    for t in range(golay23.n):
        col = golay_hsys.column(t)
        colbits.append(sum(1 << i for i, v in enumerate(col) if v))
    cw = golay23.encode([0] * 12)
    rng = random.Random(23)
    for _ in range(400):
        e = rng.randrange(0, 12)
        pat = sorted(rng.sample(range(23), e))
        r = ReceivedWord.from_codeword(golay23, cw, pat)
        out = ml_decode(golay_hsys, r)
        independent = _gf2_rank([colbits[t] for t in pat]) == len(pat)
        assert out.ok == independent, pat


def test_expanded_requires_matching_blocks(mds15, mds15_hm, rs8, rs8_hsys):
    from erasure_lab.decoders import ExpandedParityCheckMatrix

    with pytest.raises(ValueError):
        ExpandedParityCheckMatrix([])
    with pytest.raises(ValueError):
        ExpandedParityCheckMatrix([mds15_hm, rs8_hsys])
