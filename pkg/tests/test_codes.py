"""Code construction, parity check matrices, and the fixture inventory.

Minimum distances are established two independent ways: full codeword
enumeration where q^k is small enough, and the first weight at which the
ML census finds a dependent erasure pattern (a weight-e pattern is
ML-undecodable exactly when it contains a codeword support).
"""

import random

import numpy as np
import pytest

from erasure_lab.analysis import enumerate_patterns
from erasure_lab.codes import (
    ParityCheckMatrix,
    fixture_path,
    load_fixture_pcm,
    parse_code_spec,
    systematic_pcm,
)
from erasure_lab.decoders import ReceivedWord
from erasure_lab.pcm import Mask, mask, parity_check_sequence

# spec string -> (n, k, q, d)
SPEC_TABLE = {
    "golay23": (23, 12, 2, 7),
    "egolay24": (24, 12, 2, 8),
    "tgolay11": (11, 6, 3, 5),
    "rs8": (8, 4, 17, 5),
    "mds15": (15, 8, 16, 8),
    "rs:10,5,11,2": (10, 5, 11, 6),
    "rs:11,5,23,2": (11, 5, 23, 7),
    "rs:13,4,27,9": (13, 4, 27, 10),
    "lrc:15,8,dl=3": (15, 8, 16, 5),
    "lrc:15,8,dl=5": (15, 8, 16, 7),
    "bch:31,zeros=7+15": (31, 21, 2, 5),
    "bch:31,zeros=7+11+15": (31, 16, 2, 7),
    "bch:63,delta=21": (63, 18, 2, 21),
    "hamming:4": (15, 11, 2, 3),
}

MATRIX_FIXTURES = {
    "golay_Hm.txt": "golay23",
    "tgolay_Hm.txt": "tgolay11",
    "egolay_Hm.txt": "egolay24",
    "egolay_HA.txt": "egolay24",
    "egolay_HB.txt": "egolay24",
    "egolay_HC.txt": "egolay24",
    "egolay_Hehn.txt": "egolay24",
    "bch31_21_Hm.txt": "bch:31,zeros=7+15",
    "bch31_16_Hm.txt": "bch:31,zeros=7+11+15",
    "bch31_16_Hehn.txt": "bch:31,zeros=7+11+15",
}


@pytest.mark.parametrize("spec,params", SPEC_TABLE.items(), ids=SPEC_TABLE)
def test_spec_table_parameters(spec, params):
    code = parse_code_spec(spec)
    assert (code.n, code.k, code.field.q, code.d) == params


def test_aliases_expand_to_full_specs():
    assert parse_code_spec("rs8").field.q == 17
    assert parse_code_spec("mds15").field.q == 16
    assert parse_code_spec("MDS15").n == 15  # case-insensitive
    full = parse_code_spec("rs:15,8,16,2")
    assert full.g == parse_code_spec("mds15").g


@pytest.mark.parametrize(
    "bad",
    [
        "nonsense",
        "rs:9,4,17,2",  # 9 does not divide 17 - 1
        "lrc:15,8,dl=7",  # needs dl | n and (dl-1) | k
        "bch:31,zeros=",
        "rs:8,4",
    ],
)
def test_bad_specs_raise(bad):
    with pytest.raises(ValueError):
        parse_code_spec(bad)


@pytest.mark.parametrize("spec", SPEC_TABLE, ids=SPEC_TABLE)
def test_systematic_pcm_shape(spec):
    code = parse_code_spec(spec)
    h = systematic_pcm(code)
    assert h.n == code.n and h.num_rows == code.n - code.k
    assert h.annihilates_code()
    assert h.rank() == code.n - code.k
    sp, zeros = parity_check_sequence(h)
    # one standard basis column per check row, so the sequence weight is k
    assert sp.weight == code.k
    assert len(zeros) == code.n - code.k


@pytest.mark.parametrize("name,spec", MATRIX_FIXTURES.items(), ids=MATRIX_FIXTURES)
def test_fixture_matrices_annihilate_their_codes(name, spec):
    code = parse_code_spec(spec)
    h = load_fixture_pcm(name, code)
    assert h.annihilates_code()
    assert h.num_rows >= code.n - code.k
    if name == "bch31_16_Hehn.txt":
        # transcribed as published: 15 cog rows, one of them dependent
        assert h.rank() == 14
    else:
        assert h.rank() == code.n - code.k


def test_attach_rejects_foreign_matrix():
    # checks of the (31,16) subcode do not annihilate the (31,21) code
    h16 = load_fixture_pcm("bch31_16_Hm.txt")
    with pytest.raises(ValueError):
        h16.attach(parse_code_spec("bch:31,zeros=7+15"))
    with pytest.raises(ValueError):
        load_fixture_pcm("golay_Hm.txt", parse_code_spec("egolay24"))


def _exhaustive_min_weight(code, block=1 << 18):
    """Minimum nonzero-codeword weight via all q^k messages, digitwise."""
    field = code.field
    n, k, q, p, m = code.n, code.k, field.q, field.p, field.m
    tables = []
    for i in range(k):
        rows = np.zeros((q, n, m), dtype=np.int8)
        for s in range(q):
            msg = [0] * k
            msg[i] = s
            cw = code.encode(msg)
            for j, v in enumerate(cw):
                rows[s, j] = field.digits(v)
        tables.append(rows)
    total = q**k
    best = n + 1
    for start in range(0, total, block):
        idx = np.arange(start, min(start + block, total))
        digits = np.stack(np.unravel_index(idx, (q,) * k))
        acc = np.zeros((len(idx), n, m), dtype=np.int16)
        for i in range(k):
            acc += tables[i][digits[i]]
        nz = (acc % p).any(axis=2)
        w = nz.sum(axis=1)
        w = w[idx != 0]  # the zero message
        if len(w):
            best = min(best, int(w.min()))
    return best


@pytest.mark.parametrize(
    "spec",
    [s for s, (n, k, q, d) in SPEC_TABLE.items() if q**k <= 2**24],
    ids=lambda s: s,
)
def test_min_distance_by_enumeration(spec):
    code = parse_code_spec(spec)
    assert _exhaustive_min_weight(code) == code.d


# (spec, last weight with zero ML failures, first failing weight or None)
ML_DISTANCE_CASES = [
    ("golay23", 6, 7),
    ("egolay24", 7, 8),
    ("tgolay11", 4, 5),
    ("hamming:4", 2, 3),
    ("bch:31,zeros=7+15", 4, 5),
    ("bch:31,zeros=7+11+15", 6, 7),
    ("rs8", 4, None),  # MDS: clean through e = n-k, so d = n-k+1
    ("mds15", 7, None),
    ("rs:10,5,11,2", 5, None),
    ("rs:11,5,23,2", 6, None),
    ("rs:13,4,27,9", 9, None),
    ("lrc:15,8,dl=3", 4, 5),
    ("lrc:15,8,dl=5", 6, 7),
]


@pytest.mark.parametrize("spec,clean_e,fail_e", ML_DISTANCE_CASES, ids=lambda v: str(v))
def test_min_distance_by_ml_census(spec, clean_e, fail_e):
    code = parse_code_spec(spec)
    h = systematic_pcm(code)
    assert enumerate_patterns(code, h, "ml", clean_e).failures == 0
    if fail_e is None:
        assert clean_e == code.n - code.k
        assert code.d == code.n - code.k + 1
    else:
        assert fail_e == code.d
        assert enumerate_patterns(code, h, "ml", fail_e).failures > 0


def test_lrc_masks_carry_locality_rows(lrc_d5_hm, lrc_d7_hm, lrc_d5, lrc_d7):
    for code, h in ((lrc_d5, lrc_d5_hm), (lrc_d7, lrc_d7_hm)):
        weights = mask(h).row_weights()
        assert min(weights) == code.dual_locality
        assert weights.count(code.dual_locality) >= 1


def test_extended_code_rotates_head_only(egolay24):
    assert egolay24.rotation_period == 23
    assert egolay24.rotate_mask(1 << 23, 1) == 1 << 23
    assert egolay24.rotate_mask(1 << 22, 1) == 1 << 0
    assert egolay24.rotate_mask(1 << 0, 1) == 1 << 1
    rng = random.Random(7)
    cw = egolay24.random_codeword(rng)
    for t in (1, 5, 22):
        assert egolay24.contains(egolay24.shift_word(cw, t))


def test_extended_codewords_have_even_parity(egolay24):
    rng = random.Random(11)
    for _ in range(50):
        cw = egolay24.random_codeword(rng)
        assert sum(cw) % 2 == 0


def test_cyclic_shift_preserves_membership():
    rng = random.Random(3)
    for spec in ("golay23", "tgolay11", "rs8", "mds15", "bch:31,zeros=7+15"):
        code = parse_code_spec(spec)
        cw = code.random_codeword(rng)
        assert code.contains(cw)
        for t in (1, 2, code.n - 1):
            assert code.contains(code.shift_word(cw, t))


def test_codeword_iterator_counts_and_membership(tgolay11):
    seen = set()
    for cw in tgolay11.codewords():
        assert tgolay11.contains(cw)
        seen.add(cw)
    assert len(seen) == 3**6


def test_encode_is_linear_and_injective(mds15):
    field = mds15.field
    rng = random.Random(5)
    m1 = [rng.randrange(16) for _ in range(8)]
    m2 = [rng.randrange(16) for _ in range(8)]
    msum = [field.add(a, b) for a, b in zip(m1, m2)]
    cw1, cw2 = mds15.encode(m1), mds15.encode(m2)
    assert mds15.encode(msum) == tuple(
        field.add(a, b) for a, b in zip(cw1, cw2)
    )
    assert mds15.encode([0] * 8) == (0,) * 15
    assert cw1 != cw2 or m1 == m2


def test_matrix_text_roundtrip(golay_hm, egolay_matrices):
    for h in [golay_hm, egolay_matrices["HC"]]:
        again = ParityCheckMatrix.from_text(h.to_text(), label=h.label)
        assert again.rows == h.rows
        assert again.field.q == h.field.q


def test_mask_text_roundtrip(mds15_hm):
    grid = mask(mds15_hm)
    assert Mask.from_text(grid.to_text()) == grid
    assert grid.n == 15


def test_received_word_validation(rs8):
    cw = rs8.encode([1, 2, 3, 4])
    r = ReceivedWord.from_codeword(rs8, cw, [1, 6])
    assert r.erasure_set == (1, 6)
    assert r.erasure_mask == (1 << 1) | (1 << 6)
    assert not r.is_complete()
    with pytest.raises(ValueError):
        ReceivedWord(rs8, cw[:-1])
    with pytest.raises(ValueError):
        ReceivedWord.from_codeword(rs8, cw, [8])


def test_fixture_path_and_sha(tmp_path):
    p = fixture_path("golay_Hm.txt")
    assert p.exists()
    from erasure_lab.codes import fixture_sha256

    digest = fixture_sha256("golay_Hm.txt")
    assert len(digest) == 64 and int(digest, 16) >= 0
