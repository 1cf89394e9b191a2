"""Dev-only anchor checks for codes.py against printed reference matrices."""

from erasure_lab.codes import ParityCheckMatrix, build_code, parse_code_spec, systematic_pcm
from erasure_lab.galois import GF

# printed (23,12) modified matrix
GOLAY23_HM = """
1 0 0 0 1 0 0 0 0 0 0 0 0 1 1 0 0 0 1 1 1 0 1
0 1 0 0 1 0 1 0 0 1 0 0 0 0 1 0 1 0 1 0 0 0 1
0 0 1 0 0 0 0 0 0 0 1 0 0 1 1 0 1 0 1 0 0 1 1
0 0 0 1 0 0 1 0 0 1 1 0 0 1 1 0 0 0 0 1 0 0 1
0 0 0 0 1 1 1 0 0 0 1 0 0 0 1 0 0 0 0 0 1 1 1
0 0 0 0 1 0 1 1 0 0 0 0 0 1 0 0 1 0 0 1 0 1 1
0 0 0 0 1 0 0 0 1 1 1 0 0 0 0 0 0 0 1 1 0 1 1
0 0 0 0 0 0 1 0 0 1 0 1 0 1 0 0 0 0 1 0 1 1 1
0 0 0 0 0 0 1 0 0 0 1 0 1 0 0 0 1 0 1 1 1 0 1
0 0 0 0 1 0 0 0 0 1 1 0 0 1 0 1 1 0 0 0 1 0 1
0 0 0 0 0 0 0 0 0 1 0 0 0 0 1 0 1 1 0 1 1 1 1
"""

TGOLAY11_HSYS = """
1 0 0 0 0 1 2 2 2 1 0
0 1 0 0 0 0 1 2 2 2 1
0 0 1 0 0 2 1 2 0 1 2
0 0 0 1 0 1 1 0 1 1 1
0 0 0 0 1 2 2 2 1 0 1
"""

BCH31_21_HSYS = """
1 0 0 0 0 0 0 0 0 0 1 0 0 1 0 1 0 0 1 0 0 1 1 1 1 0 1 0 1 0 1
0 1 0 0 0 0 0 0 0 0 1 1 0 1 1 1 1 0 1 1 0 1 0 0 0 1 1 1 1 1 1
0 0 1 0 0 0 0 0 0 0 1 1 1 1 1 0 1 1 1 1 1 1 0 1 1 0 0 1 0 1 0
0 0 0 1 0 0 0 0 0 0 0 1 1 1 1 1 0 1 1 1 1 1 1 0 1 1 0 0 1 0 1
0 0 0 0 1 0 0 0 0 0 1 0 1 0 1 0 1 0 0 1 1 0 0 0 1 1 0 0 1 1 1
0 0 0 0 0 1 0 0 0 0 1 1 0 0 0 0 0 1 1 0 1 0 1 1 1 1 0 0 1 1 0
0 0 0 0 0 0 1 0 0 0 0 1 1 0 0 0 0 0 1 1 0 1 0 1 1 1 1 0 0 1 1
0 0 0 0 0 0 0 1 0 0 1 0 1 0 0 1 0 0 1 1 1 1 0 1 0 1 0 1 1 0 0
0 0 0 0 0 0 0 0 1 0 0 1 0 1 0 0 1 0 0 1 1 1 1 0 1 0 1 0 1 1 0
0 0 0 0 0 0 0 0 0 1 0 0 1 0 1 0 0 1 0 0 1 1 1 1 0 1 0 1 0 1 1
"""


def parse(txt):
    return tuple(tuple(int(t) for t in ln.split()) for ln in txt.strip().splitlines())


def main():
    ok = True

    # 1) which (23,12) factor does the printed H_m annihilate?
    hm_rows = parse(GOLAY23_HM)
    from erasure_lab.codes import _bch_like

    for leader in (1, 5):
        code = _bch_like("golay23", 23, 2, [leader], 7)
        pcm = ParityCheckMatrix(hm_rows, GF(2))
        try:
            pcm.attach(code)
            print(f"golay23 leader {leader}: H_m annihilates  k={code.k}")
        except ValueError:
            print(f"golay23 leader {leader}: H_m does NOT annihilate  k={code.k}")

    # 2) RS(8,4,17,2) systematic form
    rs = parse_code_spec("rs8")
    h = systematic_pcm(rs)
    print("rs8 H_sys:")
    for r in h.rows:
        print("  ", r)

    # 3) ternary Golay factor by printed H_sys
    want = parse(TGOLAY11_HSYS)
    for leader in (1, 2):
        code = _bch_like("tgolay11", 11, 3, [leader], 5)
        got = systematic_pcm(code).rows
        print(f"tgolay11 leader {leader}: H_sys match = {got == want}")

    # 4) BCH(31,21,5) H_sys vs printed
    bch = build_code("bch", n=31, designed_distance=5)
    print(f"bch31_21: n={bch.n} k={bch.k} d={bch.d} zeros={bch.zero_exponents}")
    got = systematic_pcm(bch).rows
    want = parse(BCH31_21_HSYS)
    print("bch31_21 H_sys match =", got == want)
    if got != want:
        ok = False
        for r in got:
            print("  ", "".join(str(v) for v in r))

    # 5) extended Golay systematic build sanity
    eg = build_code("egolay24")
    hs = systematic_pcm(eg)
    print(f"egolay24: n={eg.n} k={eg.k} d={eg.d} rows={hs.num_rows} annihilates={hs.annihilates_code()}")

    # 6) LRC zero sets
    for dl in (5, 3):
        lrc = build_code("lrc", n=15, k=8, dual_locality=dl)
        print(f"lrc dl={dl}: zeros={lrc.zero_exponents} d={lrc.d} q={lrc.field.q} k={lrc.k}")

    print("done" if ok else "MISMATCH")


if __name__ == "__main__":
    main()
