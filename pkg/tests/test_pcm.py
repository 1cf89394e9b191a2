"""Parity check sequences, correlation, and matrix modification."""

import pytest
from hypothesis import given, strategies as st

from erasure_lab.codes import fixture_path, systematic_pcm
from erasure_lab.pcm import (
    BinarySequence,
    Mask,
    PairOverlapMap,
    criteria_report,
    difference_set_catalog,
    hamming_correlation,
    m_sequence,
    mask,
    modify_pcm,
    parity_check_sequence,
    propose_sp,
)

bits = st.lists(st.integers(0, 1), min_size=2, max_size=40)


def test_binary_sequence_basics():
    s = BinarySequence([0, 1, 1, 0, 1])
    assert s.weight == 3
    assert s.support() == (1, 2, 4)
    assert s.zero_set() == (0, 3)
    assert s.complement().bits == (1, 0, 0, 1, 0)
    assert s.shift(1).bits == (1, 0, 1, 1, 0)  # right cyclic
    assert s.shift(5) == s
    assert BinarySequence.from_text(s.to_text()) == s
    assert BinarySequence.from_support(5, [1, 2, 4]) == s
    with pytest.raises(ValueError):
        BinarySequence([0, 2, 1])


def test_m_sequence_pins():
    assert m_sequence(7).to_text().strip() == "0010111"
    assert m_sequence(15).to_text().strip() == "000100110101111"
    assert m_sequence(15, 7).to_text().strip() == "011110101100100"
    with pytest.raises(ValueError):
        m_sequence(6)
    with pytest.raises(ValueError):
        m_sequence(15, 3)  # gcd(3, 15) > 1


def test_m_sequence_balance_and_flat_autocorrelation():
    for n in (7, 15, 31, 63):
        s = m_sequence(n)
        assert s.weight == (n + 1) // 2
        prof = hamming_correlation(s, s)
        assert set(prof.out_of_phase()) == {(n + 1) // 4}


@given(bits, bits)
def test_correlation_total_is_weight_product(b1, b2):
    n = min(len(b1), len(b2))
    s1, s2 = BinarySequence(b1[:n]), BinarySequence(b2[:n])
    prof = hamming_correlation(s1, s2)
    assert sum(prof.values) == s1.weight * s2.weight
    assert prof.period == n


@given(bits, st.integers(0, 50))
def test_correlation_of_shift_is_shifted_profile(b, tau):
    s = BinarySequence(b)
    prof = hamming_correlation(s, s)
    shifted = hamming_correlation(s, s.shift(tau))
    # right-shifting s2 by tau delays the autocorrelation by tau
    assert shifted.values == tuple(
        prof.values[(x - tau) % s.n] for x in range(s.n)
    )


def test_correlation_with_fixed_tail():
    # rotation_period m < n: the tail never moves and contributes a constant
    s1 = BinarySequence([1, 0, 1, 1])
    s2 = BinarySequence([0, 1, 1, 1])
    prof = hamming_correlation(s1, s2, rotation_period=3)
    assert prof.period == 3
    fixed = s1.bits[3] * s2.bits[3]
    for tau in range(3):
        direct = fixed + sum(
            s1.bits[t] * s2.bits[(t + tau) % 3] for t in range(3)
        )
        assert prof.values[tau] == direct


def test_taus_ascending_orders_by_value_then_tau():
    prof = hamming_correlation(
        BinarySequence([1, 1, 0, 0, 1]), BinarySequence([1, 0, 1, 0, 1])
    )
    order = prof.taus_ascending()
    assert sorted(order) == list(range(5))
    keyed = [(prof.values[t], t) for t in order]
    assert keyed == sorted(keyed)


@given(bits.filter(lambda b: sum(b) > 0))
def test_pair_overlap_map_matches_direct_count(b):
    sp = BinarySequence(b)
    omap = PairOverlapMap(sp)  # the constructor re-validates the constraints
    n = sp.n
    for tau1, tau2 in [(0, 1), (1, 3 % n), (2 % n, 2 % n)]:
        direct = sum(
            1
            for t in range(n)
            if sp.bits[(t + tau1) % n] and sp.bits[(t + tau2) % n]
        )
        assert omap.value(tau1, tau2) == direct
        assert omap.value(tau1, tau2) == omap.value(0, tau2 - tau1)


def test_pair_overlap_constraints_on_golay_sequence(golay_hm):
    sp, zeros = parity_check_sequence(golay_hm)
    omap = PairOverlapMap(sp)
    n, w = sp.n, sp.weight
    assert all(omap.value(t, t) == w for t in range(n))
    assert all(0 <= omap.value(0, t) <= w for t in range(n))
    for tau2 in range(n):
        assert sum(omap.value(t1, tau2) for t1 in range(n)) == w * w


def test_parity_check_sequence_finds_basis_columns(golay_hsys, golay23):
    sp, zeros = parity_check_sequence(golay_hsys)
    assert len(zeros) == golay23.n - golay23.k
    for t in zeros:
        col = [v for v in golay_hsys.column(t) if v]
        assert col == [1]
    assert sp.weight == golay23.k


GOLAY_SP = "00001010011001101011111"
EGOLAY_SP = {
    "Hm": "000010100110011010111110",
    "HA": "100010100110011010111110",
    "HB": "100010100110011010111111",
}


def test_shipped_sequence_pins(golay_hm, egolay_matrices):
    sp, _ = parity_check_sequence(golay_hm)
    assert sp.to_text().strip() == GOLAY_SP
    for name, expect in EGOLAY_SP.items():
        sp, _ = parity_check_sequence(egolay_matrices[name])
        assert sp.to_text().strip() == expect, name


def test_modify_pcm_reproduces_golay_fixture(golay23, golay_hm, golay_hsys):
    _, zeros = parity_check_sequence(golay_hm)
    rebuilt = modify_pcm(golay_hsys, zeros)
    assert rebuilt.rows == golay_hm.rows


def test_modify_pcm_zero_set_postcondition(golay_hsys):
    target = [0, 4, 6, 9, 10, 13, 14, 16, 18, 20, 21]
    hm = modify_pcm(golay_hsys, target)
    _, realized = parity_check_sequence(hm)
    assert tuple(target) == realized


def test_modify_pcm_preserves_row_space(golay23, golay_hsys, golay_hm):
    stacked = list(golay_hsys.rows) + list(golay_hm.rows)
    from erasure_lab.codes import ParityCheckMatrix

    both = ParityCheckMatrix(stacked, golay_hsys.field)
    r = golay23.n - golay23.k
    assert golay_hsys.rank() == r
    assert golay_hm.rank() == r
    assert both.rank() == r  # neither matrix left the common row space


def test_modify_pcm_rejects_too_many_targets(rs8_hsys):
    with pytest.raises(ValueError):
        modify_pcm(rs8_hsys, range(5))  # only 4 rows available


def test_modify_pcm_over_nonbinary_field(tgolay11, tgolay_hm):
    sys = systematic_pcm(tgolay11)
    _, zeros = parity_check_sequence(tgolay_hm)
    rebuilt = modify_pcm(sys, zeros)
    assert rebuilt.rows == tgolay_hm.rows
    assert rebuilt.annihilates_code()


def test_criteria_report_golay(golay_hm, golay23):
    rep = criteria_report(golay_hm, se_size=golay23.n - golay23.k)
    assert rep.basis_count == 11
    assert rep.is_flat()
    assert rep.autocorrelation == {6: 22}
    assert rep.autocorrelation_spread == 0
    assert rep.row_weights == {8: 11}
    assert rep.min_row_weight == 8
    assert rep.eq3_upper_bound > 0 and rep.eq4_upper_bound > 0


def test_criteria_report_prefers_flat_sequence(golay_hm, golay_hsys, golay23):
    se = golay23.n - golay23.k
    flat = criteria_report(golay_hm, se)
    skew = criteria_report(golay_hsys, se)
    assert flat.is_flat() and not skew.is_flat()
    # bound (3) counts fully-covered erasure placements; flat wins
    assert flat.eq3_upper_bound >= skew.eq3_upper_bound


def test_difference_set_catalog_entries_are_flat():
    entries = difference_set_catalog()
    assert entries, "catalog must ship nonempty"
    for ent in entries:
        s = BinarySequence.from_support(ent["n"], ent["support"])
        assert s.weight == ent["k"]
        prof = hamming_correlation(s, s)
        assert set(prof.out_of_phase()) == {ent["lambda"]}, ent


def test_propose_sp_difference_set_is_flat():
    sp = propose_sp(23, 12, "difference_set")
    prof = hamming_correlation(sp, sp)
    assert len(set(prof.out_of_phase())) == 1
    assert sp.weight == 12
    with pytest.raises(ValueError):
        propose_sp(23, 10, "difference_set")


def test_propose_sp_m_sequence():
    sp = propose_sp(31, 16, "m_sequence")
    assert sp == m_sequence(31)
    with pytest.raises(ValueError):
        propose_sp(31, 15, "m_sequence")
    with pytest.raises(ValueError):
        propose_sp(31, 16, "no-such-method")


def test_propose_sp_coset_union_matches_bch63_fixture():
    sp = propose_sp(
        63, 18, "cyclotomic_cosets", leaders=(3, 5, 7, 11, 13, 15, 23, 27)
    )
    stored = BinarySequence.from_text(
        fixture_path("bch63_18_sp.txt").read_text(), role="parity-check"
    )
    assert sp == stored
    assert sp.weight == 18


def test_mask_row_weights(mds15_hm, golay_hm):
    grid = mask(mds15_hm)
    # modified MDS matrix: basis column plus a fully dense information part
    assert set(grid.row_weights()) == {9}
    assert set(mask(golay_hm).row_weights()) == {8}


def test_mask_equality_and_text(lrc_d5_hm):
    grid = mask(lrc_d5_hm)
    assert Mask.from_text(grid.to_text()) == grid
