"""Search the 55 [HB; 9-of-first-11-HA-rows] stacks for the perfect one."""
import itertools, math, time
import numpy as np
from erasure_lab.codes import (
    ParityCheckMatrix, fixture_path, parse_code_spec,
)
from erasure_lab.analysis import _BLOCK, _BatchFlags, _mask_blocks, failure_test

code = parse_code_spec("egolay24")
ha = ParityCheckMatrix.from_text(open(fixture_path("egolay_HA.txt")).read()).attach(code)
hb = ParityCheckMatrix.from_text(open(fixture_path("egolay_HB.txt")).read()).attach(code)

n, e = 24, 12
total = math.comb(n, e)
t0 = time.time()

mask_cache = []
start = 0
while start < total:
    count = min(_BLOCK, total - start)
    for arr in _mask_blocks(n, e, start, count):
        mask_cache.append(arr)
    start += count
print(f"masks cached: {sum(len(a) for a in mask_cache)} blocks={len(mask_cache)} [{time.time()-t0:.1f}s]", flush=True)

ml = _BatchFlags(code, hb, "ml", 1)
ml_cache = [ml.fails(arr) for arr in mask_cache]
ml_total = int(sum(int(f.sum()) for f in ml_cache))
print(f"ml e=12 failures: {ml_total} [{time.time()-t0:.1f}s]", flush=True)

# scalar cross-check on a slice of block 0
for m, f in zip(mask_cache[0][:1500].tolist(), ml_cache[0][:1500].tolist()):
    assert failure_test(code, hb, "ml", engine="literal")(int(m)) == bool(f), m
print("ml scalar cross-check ok", flush=True)
np.save("/root/pkg/dev/ml_e12.npy", np.concatenate(ml_cache))

survivors = []
for subset in itertools.combinations(range(11), 9):
    rows = hb.rows + tuple(ha.rows[i] for i in subset)
    hc = ParityCheckMatrix(rows, code.field, code, "hc")
    dec = _BatchFlags(code, hc, "ts_agd", 1)
    t1 = time.time()
    bad = None
    for bi, (arr, mlf) in enumerate(zip(mask_cache, ml_cache)):
        df = dec.fails(arr)
        if not np.array_equal(df, mlf):
            bad = (bi, int(df.sum() - mlf.sum()))
            break
    if bad is None:
        survivors.append(subset)
        print(f"subset {subset}: PERFECT at e=12 [{time.time()-t1:.1f}s]", flush=True)
    else:
        print(f"subset {subset}: mismatch block {bad[0]} (+{bad[1]}) [{time.time()-t1:.1f}s]", flush=True)

print(f"survivors: {survivors} [{time.time()-t0:.1f}s total]", flush=True)
if survivors:
    subset = survivors[0]
    rows = hb.rows + tuple(ha.rows[i] for i in subset)
    hc = ParityCheckMatrix(rows, code.field, code, "hc")
    open("/root/pkg/src/erasure_lab/fixtures/egolay_HC.txt", "w").write(hc.to_text())
    print("frozen first survivor", subset, flush=True)
