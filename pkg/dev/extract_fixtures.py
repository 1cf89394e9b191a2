"""Extract printed matrices/sequences from paper.md into package fixtures.

Dev-only (gitignored).  Every artifact is verified against the constructed
codes before being written:
  - matrices must annihilate their code (attach() raises otherwise),
  - parity check sequences derived from matrices must equal the printed ones,
  - derived systematic PCMs must match the printed H_sys where one is printed
    (the ExtGolay H_sys print is known-corrupt and is asserted to FAIL),
  - difference-set supports must have flat out-of-phase autocorrelation,
  - coset-union zero sets must reproduce the printed s_p bits.

Run:  python3 dev/extract_fixtures.py
"""

import re
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from erasure_lab.codes import (
    ParityCheckMatrix,
    build_code,
    parse_code_spec,
    systematic_pcm,
)
from erasure_lab.galois import GF
from erasure_lab.pcm import (
    BinarySequence,
    Mask,
    hamming_correlation,
    m_sequence,
    mask,
    modify_pcm,
    parity_check_sequence,
    propose_sp,
)

ROOT = Path(__file__).resolve().parents[1]
PAPER = (ROOT / "paper.md").read_text().splitlines()
FIXDIR = ROOT / "src" / "erasure_lab" / "fixtures"
FIXDIR.mkdir(exist_ok=True)

checks = 0


def ok(label: str, cond: bool):
    global checks
    checks += 1
    if not cond:
        raise AssertionError(f"FAILED: {label}")
    print(f"  ok: {label}")


def line(no: int) -> str:
    return PAPER[no - 1]


def row_digits(no: int) -> list[int]:
    return [int(c) for c in re.findall(r"[0-9]", line(no))]


def seq_digits(no: int) -> list[int]:
    text = line(no).split("=", 1)[1]
    return [int(c) for c in re.findall(r"[0-9]", text)]


def matrix(first: int, last: int, n: int) -> list[list[int]]:
    rows = [row_digits(no) for no in range(first, last + 1)]
    assert all(len(r) == n for r in rows), f"bad row widths in lines {first}-{last}"
    return rows


def seq(no: int, n: int) -> BinarySequence:
    bits = seq_digits(no)
    assert len(bits) == n, f"line {no}: got {len(bits)} digits, want {n}"
    return BinarySequence(bits)


def write(name: str, text: str):
    (FIXDIR / name).write_text(text)
    print(f"  wrote {name}")


GF2 = GF(2)
GF3 = GF(3)

# ---- (23,12,7) Golay -----------------------------------------------------------
print("golay23")
golay23 = build_code("golay23")
g_hm = ParityCheckMatrix(matrix(383, 393, 23), GF2).attach(golay23)
sp, zeros = parity_check_sequence(g_hm)
ok("golay Hm annihilates and matches printed s_p", sp == seq(401, 23))
ok("golay Hm has n-k basis columns", len(zeros) == 11)
ok("golay Hm rank", g_hm.rank() == 11)
auto = hamming_correlation(sp, sp)
ok("golay s_p support is a (23,12,6) difference set",
   sp.weight == 12 and set(auto.out_of_phase()) == {6})
write("golay_Hm.txt", g_hm.to_text())

# ---- (24,12,8) extended Golay --------------------------------------------------
print("egolay24")
egolay24 = build_code("egolay24")
e_hehn = ParityCheckMatrix(matrix(442, 453, 24), GF2).attach(egolay24)
e_hm = ParityCheckMatrix(matrix(480, 491, 24), GF2).attach(egolay24)
e_ha = ParityCheckMatrix(matrix(498, 509, 24), GF2).attach(egolay24)
e_hb = ParityCheckMatrix(matrix(517, 528, 24), GF2).attach(egolay24)
ok("egolay Hm s_p", parity_check_sequence(e_hm)[0] == seq(533, 24))
ok("egolay HA s_p", parity_check_sequence(e_ha)[0] == seq(536, 24))
ok("egolay HB s_p", parity_check_sequence(e_hb)[0] == seq(539, 24))
ok("egolay Hm first 23 columns extend golay Hm rows 0-10",
   [r[:23] for r in e_hm.rows[:11]] == list(g_hm.rows))
try:
    ParityCheckMatrix(matrix(461, 472, 24), GF2).attach(egolay24)
    ok("printed egolay H_sys is corrupt (must NOT annihilate)", False)
except ValueError:
    ok("printed egolay H_sys is corrupt (must NOT annihilate)", True)
e_sys = systematic_pcm(egolay24)
ok("derived egolay H_sys is [I|P]",
   all(e_sys.rows[i][j] == (1 if i == j else 0) for i in range(12) for j in range(12)))
for nm, h in [("egolay_Hehn.txt", e_hehn), ("egolay_Hm.txt", e_hm),
              ("egolay_HA.txt", e_ha), ("egolay_HB.txt", e_hb)]:
    write(nm, h.to_text())

# ---- ternary (11,6,5) Golay ----------------------------------------------------
print("tgolay11")
tgolay11 = build_code("tgolay11")
t_sys = systematic_pcm(tgolay11)
ok("tgolay derived H_sys equals printed",
   [list(r) for r in t_sys.rows] == matrix(600, 604, 11))
t_hm = ParityCheckMatrix(matrix(612, 616, 11), GF3).attach(tgolay11)
t_sp, t_zeros = parity_check_sequence(t_hm)
ok("tgolay Hm s_p", t_sp == seq(622, 11))
t_auto = hamming_correlation(t_sp, t_sp)
ok("tgolay s_p support is an (11,6,3) difference set",
   t_sp.weight == 6 and set(t_auto.out_of_phase()) == {3})
write("tgolay_Hm.txt", t_hm.to_text())

# ---- (31,21,5) BCH -------------------------------------------------------------
print("bch31_21")
bch31_21 = build_code("bch", n=31, zeros=[7, 15])
ok("bch31_21 is (31,21,5)", (bch31_21.n, bch31_21.k, bch31_21.d) == (31, 21, 5))
b21_sys = systematic_pcm(bch31_21)
ok("bch31_21 derived H_sys equals printed",
   [list(r) for r in b21_sys.rows] == matrix(651, 660, 31))
b21_hm = ParityCheckMatrix(matrix(669, 678, 31), GF2).attach(bch31_21)
b21_sp, _ = parity_check_sequence(b21_hm)
ok("bch31_21 Hm s_p", b21_sp == seq(684, 31))
ok("bch31_21 s_p zero set is the shifted coset union",
   b21_sp == propose_sp(31, 21, "cyclotomic_cosets", leaders=[7, 11]))
write("bch31_21_Hm.txt", b21_hm.to_text())

# ---- (31,16,7) BCH -------------------------------------------------------------
print("bch31_16")
bch31_16 = build_code("bch", n=31, zeros=[7, 11, 15])
ok("bch31_16 is (31,16,7)", (bch31_16.n, bch31_16.k, bch31_16.d) == (31, 16, 7))
b16_sys = systematic_pcm(bch31_16)
ok("bch31_16 derived H_sys equals printed",
   [list(r) for r in b16_sys.rows] == matrix(745, 759, 31))
b16_hehn = ParityCheckMatrix(matrix(724, 738, 31), GF2).attach(bch31_16)
b16_hm = ParityCheckMatrix(matrix(766, 780, 31), GF2).attach(bch31_16)
b16_sp, _ = parity_check_sequence(b16_hm)
ok("bch31_16 Hm s_p", b16_sp == seq(785, 31))
b16_auto = hamming_correlation(b16_sp, b16_sp)
ok("bch31_16 s_p support is a (31,16,8) difference set",
   b16_sp.weight == 16 and set(b16_auto.out_of_phase()) == {8})
write("bch31_16_Hehn.txt", b16_hehn.to_text())
write("bch31_16_Hm.txt", b16_hm.to_text())

# ---- (63,18,21) BCH parity check sequence --------------------------------------
print("bch63_18")
b63_sp = seq(811, 63)
ok("bch63_18 s_p weight", b63_sp.weight == 18)
ok("bch63_18 s_p zero set is the coset union",
   b63_sp == propose_sp(63, 18, "cyclotomic_cosets",
                        leaders=[3, 5, 7, 11, 13, 15, 23, 27]))
write("bch63_18_sp.txt", b63_sp.to_text())

# ---- (15,8) MDS and LRC masks --------------------------------------------------
print("mds15 / lrc15")
mds15 = parse_code_spec("mds15")
lrc7 = parse_code_spec("lrc:15,8,dl=5")   # (15,8,7)
lrc5 = parse_code_spec("lrc:15,8,dl=3")   # (15,8,5)
ok("lrc distances", (lrc7.d, lrc5.d) == (7, 5))
mseq = m_sequence(15)
ok("period-15 m-sequence bits", mseq == seq(864, 15))
basis_cols = mseq.zero_set()
ok("m-sequence zero set", basis_cols == (0, 1, 2, 4, 5, 8, 10))
# The printed (15,8,7) mask is corrupt: it disagrees with the unique
# Gauss-Jordan modification in exactly 5 cells, and an exhaustive sweep over
# field moduli, primitive-element choices and zero-set shifts shows NO parity
# check matrix of any optimal cyclic (15,8) dl=5 LRC realizes it (minimum 5
# diffs everywhere).  Same corruption class as the extended-Golay systematic
# print.  We ship the derived mask and pin the diff so a change in any input
# is caught.
printed_masks = {
    "mask_mds15.txt": (mds15, matrix(870, 876, 15), set()),
    "mask_lrc15_8_7.txt": (lrc7, matrix(882, 888, 15),
                           {(1, 9), (2, 3), (2, 6), (3, 6), (5, 12)}),
    "mask_lrc15_8_5.txt": (lrc5, matrix(894, 900, 15), set()),
}
for nm, (code, printed, known_bad) in printed_masks.items():
    hmod = modify_pcm(systematic_pcm(code), basis_cols)
    got = mask(hmod)
    diff = {(i, j)
            for i, row in enumerate(got.rows)
            for j, v in enumerate(row)
            if v != printed[i][j]}
    ok(f"{nm} matches the print except at the documented corrupt cells",
       diff == known_bad)
    write(nm, got.to_text())

# ---- expanded parity check sequence sets ---------------------------------------
print("sequence sets")
sets = {
    "seqs_10_5.txt": (10, 5, [seq(1136, 10), seq(1137, 10)]),
    "seqs_11_5.txt": (11, 5, [seq(1144, 11), seq(1145, 11)]),
    "seqs_13_4.txt": (13, 4, [seq(1162, 13), seq(1163, 13), seq(1164, 13)]),
}
for nm, (n, k, seqs) in sets.items():
    ok(f"{nm} weights equal k={k}", all(s.weight == k for s in seqs))
    write(nm, "".join(s.to_text() for s in seqs))
for s in sets["seqs_11_5.txt"][2]:
    a = hamming_correlation(s, s)
    ok("(11,5) sequence is an (11,5,2) difference set", set(a.out_of_phase()) == {2})

# ---- difference set catalog ----------------------------------------------------
print("difference_sets.csv")
ds_rows = [
    (7, 4, 2, (2, 4, 5, 6), "m-sequence"),
    (11, 5, 2, (1, 3, 4, 5, 9), "quadratic-residue"),
    (11, 6, 3, tuple(t_sp.support()), "reference"),
    (15, 8, 4, tuple(mseq.support()), "m-sequence"),
    (23, 12, 6, tuple(sp.support()), "reference"),
    (31, 16, 8, tuple(b16_sp.support()), "reference"),
]
for n, k, lam, support, _src in ds_rows:
    s = BinarySequence.from_support(n, support)
    a = hamming_correlation(s, s)
    ok(f"({n},{k},{lam}) difference set is flat",
       s.weight == k and set(a.out_of_phase()) == {lam})
ok("m_sequence(7) support matches the (7,4,2) entry",
   m_sequence(7).support() == (2, 4, 5, 6))
csv_text = "n,k,lambda,support,source\n" + "".join(
    f"{n},{k},{lam},{' '.join(str(t) for t in support)},{src}\n"
    for n, k, lam, support, src in ds_rows
)
write("difference_sets.csv", csv_text)

# ---- external combinatorial tables ---------------------------------------------
print("external_tables.csv")
write(
    "external_tables.csv",
    "kind,n,a1,a2,a3,value,source\n"
    "lotto,10,5,5,4,10,implied\n"
    "lotto,13,4,4,3,28,implied\n"
    "cwc,10,6,5,,7,implied\n"
    "cwc,13,6,9,,13,implied\n"
    "cwc,10,6,5,,6,standard\n",
)

print(f"\nall {checks} checks passed; fixtures written to {FIXDIR}")
