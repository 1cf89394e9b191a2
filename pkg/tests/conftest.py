"""Shared fixtures: shipped codes and their parity check matrices.

Everything here is session scoped.  Code construction walks cyclotomic
cosets and several tests reuse the same censuses, so each object is built
exactly once per run.
"""

import pytest

from erasure_lab.codes import (
    CyclicCode,
    ParityCheckMatrix,
    fixture_path,
    load_fixture_pcm,
    parse_code_spec,
    systematic_pcm,
)
from erasure_lab.pcm import BinarySequence, Mask, mask, modify_pcm


def matrix_from_mask(code: CyclicCode, fixture_name: str) -> ParityCheckMatrix:
    """Rebuild the modified matrix whose nonzero pattern a mask fixture pins.

    The basis columns are the mask columns of weight one; the modification
    procedure is deterministic, so the rebuilt matrix must reproduce the
    stored mask or the fixture has drifted.
    """
    grid = Mask.from_text(fixture_path(fixture_name).read_text())
    zeros = [t for t in range(grid.n) if sum(row[t] for row in grid.rows) == 1]
    h = modify_pcm(systematic_pcm(code), zeros)
    assert mask(h) == grid, f"{fixture_name} drifted from the modification output"
    return h


def load_sequences(fixture_name: str) -> list[BinarySequence]:
    text = fixture_path(fixture_name).read_text()
    return [
        BinarySequence.from_text(ln, role="parity-check")
        for ln in text.splitlines()
        if ln.strip()
    ]


@pytest.fixture(scope="session")
def golay23() -> CyclicCode:
    return parse_code_spec("golay23")


@pytest.fixture(scope="session")
def golay_hm(golay23):
    return load_fixture_pcm("golay_Hm.txt", golay23)


@pytest.fixture(scope="session")
def golay_hsys(golay23):
    return systematic_pcm(golay23)


@pytest.fixture(scope="session")
def egolay24() -> CyclicCode:
    return parse_code_spec("egolay24")


@pytest.fixture(scope="session")
def egolay_matrices(egolay24):
    names = ("Hm", "HA", "HB", "HC", "Hehn")
    return {nm: load_fixture_pcm(f"egolay_{nm}.txt", egolay24) for nm in names}


@pytest.fixture(scope="session")
def tgolay11() -> CyclicCode:
    return parse_code_spec("tgolay11")


@pytest.fixture(scope="session")
def tgolay_hm(tgolay11):
    return load_fixture_pcm("tgolay_Hm.txt", tgolay11)


@pytest.fixture(scope="session")
def rs8() -> CyclicCode:
    return parse_code_spec("rs8")


@pytest.fixture(scope="session")
def rs8_hsys(rs8):
    return systematic_pcm(rs8)


@pytest.fixture(scope="session")
def mds15() -> CyclicCode:
    return parse_code_spec("mds15")


@pytest.fixture(scope="session")
def mds15_hm(mds15):
    return matrix_from_mask(mds15, "mask_mds15.txt")


@pytest.fixture(scope="session")
def lrc_d5():
    return parse_code_spec("lrc:15,8,dl=3")


@pytest.fixture(scope="session")
def lrc_d5_hm(lrc_d5):
    return matrix_from_mask(lrc_d5, "mask_lrc15_8_5.txt")


@pytest.fixture(scope="session")
def lrc_d7():
    return parse_code_spec("lrc:15,8,dl=5")


@pytest.fixture(scope="session")
def lrc_d7_hm(lrc_d7):
    return matrix_from_mask(lrc_d7, "mask_lrc15_8_7.txt")


@pytest.fixture(scope="session")
def bch31_21():
    return parse_code_spec("bch:31,zeros=7+15")


@pytest.fixture(scope="session")
def bch31_21_hm(bch31_21):
    return load_fixture_pcm("bch31_21_Hm.txt", bch31_21)


@pytest.fixture(scope="session")
def bch31_16():
    return parse_code_spec("bch:31,zeros=7+11+15")


@pytest.fixture(scope="session")
def bch31_16_hm(bch31_16):
    return load_fixture_pcm("bch31_16_Hm.txt", bch31_16)
