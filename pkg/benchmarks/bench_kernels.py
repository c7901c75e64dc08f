"""Time the compiled search kernels against the pure-Python versions.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Both backends must return identical answers; the script checks that too.
"""
import argparse
import itertools
import random
import time

from hypercover import _pykernels
from hypercover.oracles import enumerate_cube_flats

try:
    from hypercover import _ckernels
except ImportError:
    _ckernels = None


def multicover_cases():
    """Punctured-cube and symmetric instances that the oracle actually solves."""
    cases = []
    for n, t, budget in [(3, 1, 2), (3, 2, 4), (4, 1, 3), (4, 1, 4)]:
        flats = [f.mask() for f in enumerate_cube_flats(n) if f.points]
        npts = 2 ** n
        need = [0] + [t] * (npts - 1)
        cap = [0] + [-1] * (npts - 1)
        cases.append((f"punctured n={n} t={t} budget={budget}", flats, need, cap, budget))
    flats = [f.mask() for f in enumerate_cube_flats(4) if f.points]
    weights = [bin(q).count("1") for q in range(16)]
    need = [2 if w in (0, 1, 3) else 1 for w in weights]
    cap = [-1 if w in (0, 1, 3) else 1 for w in weights]
    cases.append(("n=4 weights {0,1,3} t=2 ell=1 budget=5", flats, need, cap, 5))
    return cases


def separating_cases(rng):
    cases = []
    for n in (8, 10, 12):
        masks = [sum(1 << i for i in c) for r in range(n + 1) for c in itertools.combinations(range(n), r)]
        pts = rng.sample(range(2 ** n), 64)
        cases.append((f"first_separating n={n} |pts|=64", pts, masks))
    return cases


def best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled kernels are not built; only the Python backend is available")
    rows = []
    for name, flats, need, cap, budget in multicover_cases():
        tp, a = best_of(lambda: _pykernels.multicover_search(flats, need, cap, budget), args.repeat)
        if _ckernels is not None:
            tc, b = best_of(lambda: _ckernels.multicover_search(flats, need, cap, budget), args.repeat)
            assert a == b, name
        else:
            tc = float("nan")
        rows.append((name, tp, tc))
    for name, pts, masks in separating_cases(random.Random(1)):
        tp, a = best_of(lambda: _pykernels.first_separating(pts, masks), args.repeat)
        if _ckernels is not None:
            tc, b = best_of(lambda: _ckernels.first_separating(pts, masks), args.repeat)
            assert a == b, name
        else:
            tc = float("nan")
        rows.append((name, tp, tc))
    width = max(len(r[0]) for r in rows)
    print(f"{'case':<{width}}  {'python s':>10}  {'cython s':>10}  {'speedup':>8}")
    for name, tp, tc in rows:
        sp = tp / tc if tc == tc and tc > 0 else float("nan")
        print(f"{name:<{width}}  {tp:>10.4f}  {tc:>10.4f}  {sp:>7.1f}x")


if __name__ == "__main__":
    main()
