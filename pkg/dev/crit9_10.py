"""Time criterion 9 MC runs; settle criterion 10 ternary verdict."""
import math, time
from erasure_lab.codes import ParityCheckMatrix, fixture_path, parse_code_spec
from erasure_lab.analysis import enumerate_patterns, exact_fer, monte_carlo

t0 = time.time()
tg = parse_code_spec("tgolay11")
htg = ParityCheckMatrix.from_text(open(fixture_path("tgolay_Hm.txt")).read()).attach(tg)
for e in (4, 5, 6):
    row = enumerate_patterns(tg, htg, "ml", e)
    print(f"tgolay ml e={e}: {row.failures} of {row.total}", flush=True)
print(f"[{time.time()-t0:.2f}s]", flush=True)

code = parse_code_spec("golay23")
hm = ParityCheckMatrix.from_text(open(fixture_path("golay_Hm.txt")).read()).attach(code)
fbw = {7: 253, 8: 4554, 9: 37950, 10: 194810, 11: 656558}
for e in range(12, 24):
    fbw[e] = math.comb(23, e)
for eps in (0.1, 0.3, 0.5):
    t1 = time.time()
    stats = monte_carlo(code, hm, "ts_agd", eps, 10**6, 20260819)
    ref = exact_fer(23, fbw, eps)
    dev = abs(stats.fer - ref)
    print(
        f"eps={eps}: fer={stats.fer:.6g} exact={ref:.6g} "
        f"|diff|={dev:.3g} hw={stats.fer_halfwidth:.3g} "
        f"within={dev <= stats.fer_halfwidth} [{time.time()-t1:.1f}s]",
        flush=True,
    )
print(f"total [{time.time()-t0:.1f}s]", flush=True)
