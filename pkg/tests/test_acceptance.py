"""Acceptance gate: one test per criterion, each printing a single PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines inline; they
are also printed through ``capsys.disabled()`` so a plain run shows them.
"""
import itertools
import math
import random
import time
from collections import Counter

import pytest

from hypercover import (
    BlockSymmetricSet,
    CoverSpec,
    Hyperplane,
    HyperplaneFamily,
    PointSet,
    SymmetricSet,
    canonical_weight_window,
    complement_transform,
    lambda_measure,
    product_of_affine,
    separation,
    separation_exhaustive,
    verify_cover,
)
from hypercover.covers import construct_grid_cover, construct_symmetric_cover, family_Hstar
from hypercover.oracles import enumerate_cube_flats, epc_oracle, is_cube_flat
from hypercover.reproduce import emit_report, reproduce

from conftest import all_weight_sets, cube


@pytest.fixture
def report(capsys):
    def emit(k, ok, msg):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {k}: {msg}")
    return emit


def timed(fn, *a, **kw):
    t0 = time.perf_counter()
    out = fn(*a, **kw)
    return out, time.perf_counter() - t0


def statuses(certs):
    return Counter(c.status for c in certs)


def test_c01_alon_furedi(report):
    certs, dt = timed(reproduce, "alon-furedi")
    values_ok = all(c.oracle_value == c.instance["n"] for c in certs)
    kinds = Counter(c.oracle for c in certs)
    ok = (statuses(certs) == {"confirmed": 60} and values_ok and kinds == {"epc": 30, "ehc": 30}
          and dt < 10)
    report(1, ok, f"punctured cube n=1..4, all points, epc=ehc=n on {len(certs)} certificates in {dt:.1f}s")
    assert ok


def test_c02_sauermann_wigderson(report):
    certs, dt = timed(reproduce, "sauermann-wigderson")
    tight = [c for c in certs if c.instance["ell"] == c.instance["t"] - 1]
    loose = [c for c in certs if c.instance["ell"] < c.instance["t"] - 1]
    ok = (
        all(c.status == "confirmed" for c in certs)
        and len(tight) == 12 and len(loose) == 8
        and all(c.oracle_value == c.instance["n"] + 2 * c.instance["t"] - 2 for c in tight)
        and all(c.oracle_value == c.instance["n"] + 2 * c.instance["t"] - 3 for c in loose)
        and all(c.instance["t"] - 1 <= (c.instance["n"] + 1) // 2 for c in loose)
        and dt < 120
    )
    report(2, ok, f"{len(tight)} tight and {len(loose)} loose instances confirmed in {dt:.1f}s")
    assert ok


def test_c03_clifton_huang_small(report):
    certs, dt = timed(reproduce, "clifton-huang-small")
    got = {(c.instance["n"], c.instance["t"]): c.oracle_value for c in certs}
    want = {(n, t): n + t * (t - 1) // 2 for n, t in [(2, 2), (3, 2), (2, 3)]}
    ok = got == want and all(c.status == "confirmed" for c in certs) and dt < 300
    report(3, ok, f"ehc values {got} in {dt:.1f}s")
    assert ok


def test_c04_multiplicity_symmetric(report):
    certs, dt = timed(reproduce, "multiplicity-symmetric")
    per_n = Counter(c.instance["n"] for c in certs)
    full_sweep = all(per_n[n] == (2 ** (n + 1) - 1) * 2 * 2 for n in range(1, 5))
    ok = statuses(certs) == {"confirmed": len(certs)} and full_sweep and dt < 600
    report(4, ok, f"{len(certs)} certificates (construction verified, epc and ehc equal formula) in {dt:.1f}s")
    assert ok


def test_c05_multiplicity_block(report):
    certs, dt = timed(reproduce, "multiplicity-block")
    sizes = {tuple(c.instance["sizes"]) for c in certs}
    want = {(a, b) for a in range(1, 4) for b in range(1, 4) if a + b <= 4}
    ok = statuses(certs) == {"confirmed": len(certs)} and sizes == want
    report(5, ok, f"{len(certs)} 2-block grid certificates, bepc equals the block sum formula, {dt:.1f}s")
    assert ok


def test_c06_inner_outer(report):
    certs, dt = timed(reproduce, "inner-outer")
    total = sum(c.witness["measure"] for c in certs)
    exceptions = sum(len(c.witness["exceptions"]) for c in certs)
    ok = (len(certs) == 10 and exceptions == 0 and total == sum(2 ** (n + 1) - 1 for n in range(1, 11))
          and all(c.status == "confirmed" for c in certs) and dt < 10)
    report(6, ok, f"{total} weight sets n<=10, {exceptions} exceptions, {dt:.2f}s")
    assert ok


def test_c07_index_symmetric(report):
    certs, dt = timed(reproduce, "index-symmetric")
    ok = len(certs) == sum(2 ** (n + 1) - 1 for n in range(1, 6)) and all(
        c.status == "confirmed" and c.oracle_value == c.formula_value for c in certs)
    report(7, ok, f"brute-force index equals out on {len(certs)} sets n<=5, {dt:.1f}s")
    assert ok


def test_c08_index_pdc(report):
    certs, dt = timed(reproduce, "index-pdc")
    layers = [c for c in certs if any(ch["name"] == "k-layer-formula" for ch in c.checks)]
    ok = bool(certs) and all(c.status == "confirmed" for c in certs) and bool(layers)
    report(8, ok, f"{len(certs)} outer-intact PDC sets (k=2, n_j<=3), {len(layers)} layers, {dt:.1f}s")
    assert ok


def test_c09_hamming_ball(report):
    certs, dt = timed(reproduce, "hamming-ball")
    main = [c for c in certs if c.claim == "hamming-ball"]
    gap = [c for c in certs if c.claim == "hyperplanes-exceed-degree"]
    ok = (all(c.status == "confirmed" for c in certs) and len(gap) == 1
          and gap[0].formula_value == 3 and gap[0].oracle_value >= 4
          and all(c.oracle_value == c.witness["measure"] for c in main))
    # outside the range where the punctured w-cube base exists, the degree formula can fail
    outside = []
    for n in range(2, 5):
        for w in range(1, n):
            for t in range(2, (n + 3) // 2 + 1):
                if t - 1 > (w + 1) // 2:
                    v = epc_oracle(CoverSpec(SymmetricSet(n, tuple(range(w))), t, 0)).value
                    if v != w + 2 * t - 3:
                        outside.append((n, w, t, v))
    report(9, ok, f"{len(main)} in-range instances confirmed, ehc={gap[0].oracle_value} > epc=3 on "
                  f"weights {{0,1}} in n=3; out-of-range mismatches (n,w,t,epc): {outside}")
    assert ok


def test_c10_layer_t0(report):
    certs, dt = timed(reproduce, "layer-t0")
    ok = len(certs) == sum(n + 1 for n in range(1, 5)) * 3 and all(
        c.status == "confirmed" and c.oracle_value == c.instance["t"] for c in certs)
    report(10, ok, f"{len(certs)} layer instances with epc = t and verified power covers, {dt:.1f}s")
    assert ok


def test_c11_subcube(report):
    certs, dt = timed(reproduce, "subcube")
    checks_ok = all(ch["ok"] for c in certs for ch in c.checks)
    sizes_ok = all(c.witness["measure"] == c.formula_value for c in certs)
    ok = checks_ok and sizes_ok and all(c.status in ("confirmed", "oracle-skipped") for c in certs)
    st = statuses(certs)
    report(11, ok, f"{len(certs)} lifts round-trip with size preserved ({st['confirmed']} also ehc-confirmed)")
    assert ok


def test_c12_pdc_adjudication(report, tmp_path):
    certs, dt = timed(reproduce, "pdc-discrepancy")
    innext_ok = all(c.instance["formula_innext"] == c.oracle_value for c in certs)
    agree = sum(c.formula_value == c.oracle_value for c in certs)
    table = emit_report(certs, "table")
    (tmp_path / "pdc.txt").write_text(table)
    special = [c for c in certs if c.instance["sizes"] == [1, 1]
               and sorted(map(tuple, c.instance["spec"]["target"]["tuples"])) == [(1, 1)]]
    special_ok = (len(special) == 1 and special[0].formula_value == 2 and special[0].oracle_value == 1
                  and special[0].instance["formula_innext"] == 1)
    ok = innext_ok and special_ok and table.count("\n") >= len(certs)
    report(12, ok, f"innext formula equals bepc on all {len(certs)} instances; literal formula agrees on "
                   f"{agree}; 2x2 instance literal=2 oracle=1 innext=1")
    assert ok


def _cover_implication(rng):
    failures = 0
    checked = 0
    for n in range(1, 5):
        for S in all_weight_sets(n):
            if S.is_empty:
                continue
            for t in (1, 2, 3):
                spec = CoverSpec(S.complement(), t, t - 1)
                fam = construct_symmetric_cover(S, t)
                checked += 1
                failures += verify_cover(fam, spec).ok and not verify_cover(product_of_affine(fam), spec).ok
    for sizes in [(1, 1), (1, 2), (2, 2), (1, 3)]:
        for parts in itertools.product(*(list(all_weight_sets(s))[1:] for s in sizes)):
            grid = BlockSymmetricSet.grid(parts)
            for t in (1, 2, 3):
                spec = CoverSpec(grid.complement(), t, t - 1, "block-exact")
                fam = construct_grid_cover(parts, t)
                checked += 1
                failures += verify_cover(fam, spec).ok and not verify_cover(product_of_affine(fam), spec).ok
    for _ in range(150):
        n = rng.randint(2, 4)
        hs = []
        for _ in range(rng.randint(1, 4)):
            c = tuple(rng.randint(-2, 2) for _ in range(n))
            if any(c):
                hs.append(Hyperplane(c, rng.randint(-2, 2)))
        if not hs:
            continue
        fam = HyperplaneFamily(n, tuple(hs))
        inc = {x: fam.incidence(x) for x in cube(n)}
        for ell in set(inc.values()):
            target = tuple(x for x in cube(n) if inc[x] != ell)
            if not target or len(target) == 2 ** n:
                continue
            t = min(inc[x] for x in target)
            if t <= ell or t > 3:
                continue
            spec = CoverSpec(PointSet(n, target), t, ell)
            checked += 1
            failures += verify_cover(fam, spec).ok and not verify_cover(product_of_affine(fam), spec).ok
    return checked, failures


def test_c13_invariants(report):
    results = {}
    checked, failures = _cover_implication(random.Random(0))
    results["cover-implication"] = failures == 0
    lemma = True
    for n in range(2, 11):
        for i in range(0, math.ceil(n / 2) + 1):
            T = set(canonical_weight_window(n, i).weights)
            fam = family_Hstar(n, i)
            lemma &= len(fam) == i and all((fam.incidence(x) > 0) == (sum(x) in T) for x in cube(n))
    results["window-family"] = lemma
    sep = True
    for n in range(1, 5):
        for p in cube(n):
            zeros = [i for i in range(n) if p[i] == 0]
            ones = [i for i in range(n) if p[i] == 1]
            for I0 in itertools.chain.from_iterable(itertools.combinations(zeros, r) for r in range(len(zeros) + 1)):
                for I1 in itertools.chain.from_iterable(itertools.combinations(ones, r) for r in range(len(ones) + 1)):
                    J = separation(n, p, I0, I1)
                    sep &= J.as_set() == separation_exhaustive(n, p, I0, I1)
                    sep &= (J.a, J.b) == (len(I1) - 1, n - len(I0) + 1)
    results["separation"] = sep
    results["complement-transform"] = all(
        lambda_measure(complement_transform(S)) == lambda_measure(S)
        for n in range(1, 11) for S in all_weight_sets(n) if not S.is_full)
    flats_ok = True
    for n in range(1, 4):
        flats = {f.points for f in enumerate_cube_flats(n)}
        for r in range(2 ** n + 1):
            for Z in itertools.combinations(cube(n), r):
                flats_ok &= (Z in flats) == is_cube_flat(n, Z)
    results["flat-enumeration"] = flats_ok
    ok = all(results.values())
    report(13, ok, f"{results}; cover implication on {checked} family/spec pairs")
    assert ok
