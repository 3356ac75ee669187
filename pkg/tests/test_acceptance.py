"""Acceptance gates, one test (or a family of sub-cases) per criterion.

Every test records its outcome through ``conftest.record`` before asserting,
and the summary prints one PASS/FAIL line per criterion after the run.
"""

import csv
import io
import json
import re
import statistics
import time
from fractions import Fraction
from pathlib import Path

import pytest

import oracles
import test_normal_form as t_nf
import test_perm as t_perm
import test_summit as t_summit
from conftest import B7_WORD, record
from garside import cli
from garside import normal_form as nf
from garside import stats
from garside.fast import AUTO, FAST, Verdict, decide_conjugacy, fast_uss
from garside.stats import RandomBraidSpec, sample_random_braid
from garside.summit import USS, generate_invariant_set, is_cyclically_weighted

DEVIATIONS = Path(__file__).resolve().parent.parent / "DEVIATIONS.md"


def run_cli(capsys, *argv):
    t0 = time.perf_counter()
    code = cli.main(list(argv))
    elapsed = time.perf_counter() - t0
    out, _ = capsys.readouterr()
    return code, out, elapsed


def table_cells(text):
    return {(int(r["k"]), int(r["n"])): r for r in csv.DictReader(io.StringIO(text))}


def documented_deviations():
    cells = set()
    for m in re.finditer(r"^\| (\d+) \| (\d+) \|", DEVIATIONS.read_text(), re.M):
        cells.add((int(m.group(1)), int(m.group(2))))
    return cells


# ---------------------------------------------------------------------------
# 1. k = 2 row to three significant figures


def test_c1_table_k2_row(capsys):
    code, out, elapsed = run_cli(capsys, "dtable", "--k-list", "2")
    cells = table_cells(out)
    want = [stats.format_sig(v) for v in stats.REFERENCE_GRID[2]]
    got = [cells[2, n]["value"] for n in stats.GRID_N]
    ok = code == 0 and got == want and elapsed < 1.0
    record(1, ok, f"{sum(a == b for a, b in zip(got, want))}/10 cells exact, {elapsed:.2f}s")
    assert got == want
    assert elapsed < 1.0


# ---------------------------------------------------------------------------
# 2. full grid within 2%, residuals documented


def test_c2_table_full_grid(capsys):
    code, out, elapsed = run_cli(capsys, "dtable")
    cells = table_cells(out)
    assert code == 0
    assert "suspected-typo" in cells[10, 10]["note"]
    listed = documented_deviations()
    within, off = 0, set()
    for k in stats.GRID_K:
        if k == 2:
            continue
        for n in stats.GRID_N:
            if (k, n) in stats.SUSPECTED_TYPOS:
                continue
            # compare the memoized full-precision value, not the 3-figure rendering
            ref, value = stats.reference_value(n, k), float(stats.d_bound(n, k))
            good = value < 1e-15 if ref is None else abs(value / ref - 1) <= 0.02
            if good:
                within += 1
            else:
                off.add((k, n))
    ok = off == listed and elapsed < 30.0
    record(2, ok, f"{within} cells within 2%, {len(off)} residuals all listed in DEVIATIONS.md, {elapsed:.1f}s")
    assert off == listed
    assert elapsed < 30.0


# ---------------------------------------------------------------------------
# 3. exact two-factor formula against exhaustive enumeration


def test_c3_exact_D2_oracle():
    ok = True
    for n in (2, 3, 4):
        ok &= [stats.exact_D2(n, i) for i in range(1, n)] == oracles.enumerate_D2(n)
    ok &= stats.exact_D2(2, 1) == Fraction(3, 4)
    record(3, ok, "n = 2, 3, 4 exact rational equality")
    assert ok


# ---------------------------------------------------------------------------
# 4. the quasi-reducible braid in B_7


def test_c4_b7_rsss(capsys):
    x = nf.word_to_braid(B7_WORD)
    y = nf.conjugate(x, nf.word_to_braid("n=7; 5"))
    cw = is_cyclically_weighted(x) and is_cyclically_weighted(y)
    code, out, elapsed = run_cli(capsys, "rsss", B7_WORD, "--policy", "restricted")
    orbits = json.loads(out)["orbit_count"]
    ok = cw and code == 0 and orbits == 10 and elapsed < 60.0
    record(4, ok, f"cyclically weighted={cw}, {orbits} orbits, {elapsed:.1f}s")
    assert cw and orbits == 10
    assert elapsed < 60.0


# ---------------------------------------------------------------------------
# 5. fast and exact USS agree in B_4


def test_c5_fast_vs_exact_uss():
    valid = bad = 0
    for t in range(100):
        k = 12 + t % 9
        x, _ = sample_random_braid(RandomBraidSpec(4, k, seed=500, trial=t))
        f = fast_uss(x)
        if not f.valid:
            continue
        valid += 1
        exact = generate_invariant_set(x, USS)
        if f.keys() != exact.keys() or len(f) > 2 * x.canonical_length:
            bad += 1
    record(5, bad == 0, f"{valid}/100 valid fast sets, {bad} mismatches")
    assert bad == 0


# ---------------------------------------------------------------------------
# 6. conjugacy soundness in B_6


def test_c6_conjugacy_soundness():
    auto_ok = fast_ok = 0
    for t in range(200):
        x, _ = sample_random_braid(RandomBraidSpec(6, 16, seed=600, trial=t))
        w, _ = sample_random_braid(RandomBraidSpec(6, 16, delta_power_range=(-2, 2), seed=601, trial=t))
        y = nf.conjugate(x, w)
        a = decide_conjugacy(x, y, mode=AUTO)
        # the witness is checked here too, independently of the library's own check
        auto_ok += a.verdict is Verdict.CONJUGATE and nf.conjugate(x, a.witness) == y
        f = decide_conjugacy(x, y, mode=FAST)
        fast_ok += f.verdict is Verdict.CONJUGATE and nf.conjugate(x, f.witness) == y
    ok = auto_ok == 200 and fast_ok >= 190
    record(6, ok, f"auto {auto_ok}/200, fast {fast_ok}/200")
    assert auto_ok == 200
    assert fast_ok >= 190


# ---------------------------------------------------------------------------
# 7. Monte-Carlo head instability against the tabulated bound

C7_CASES = [
    (6, 5),
    (8, 5),
    # exact instability 0.00782 exceeds 0.003 + 3 SE; see DEVIATIONS.md
    pytest.param(4, 10, marks=pytest.mark.xfail(strict=True, reason="tabulated value below the exact rate at n = 4")),
]


@pytest.mark.parametrize("n,k", C7_CASES)
def test_c7_head_instability(n, k):
    r = stats.mc_experiment("head-stability", n, k, 10_000, seed=700)
    rate = 1 - r.rate
    limit = stats.reference_value(n, k) + 3 * r.stderr
    ok = rate <= limit
    record(7, ok, f"({n},{k}) {rate:.4f} {'<=' if ok else '>'} {limit:.4f}")
    assert ok


# ---------------------------------------------------------------------------
# 8. property suites at the stated sizes


def test_c8_property_suites():
    b7 = nf.word_to_braid(B7_WORD)
    checks = {
        "lattice S4": t_perm.test_lattice_laws_exhaustive_s4,
        "idempotence x1000": t_nf.test_normalize_idempotent_and_valid,
        "group laws x1000": t_nf.test_group_laws,
        "cycling witnesses x200": t_summit.test_cycling_decycling_witnesses,
        "cyclic weighting x50 + B7": lambda: t_summit.test_rsss_elements_cyclically_weighted(b7),
    }
    failed = []
    for name, fn in checks.items():
        try:
            fn()
        except AssertionError:
            failed.append(name)
    record(8, not failed, "all suites green" if not failed else "failed: " + ", ".join(failed))
    assert not failed


# ---------------------------------------------------------------------------
# 9. performance gate at n = 50


def _fast_times(n, k, count, seed):
    times = []
    for t in range(count):
        x, _ = sample_random_braid(RandomBraidSpec(n, k, seed=seed, trial=t))
        w, _ = sample_random_braid(RandomBraidSpec(n, k, seed=seed + 1, trial=t))
        y = nf.conjugate(x, w)
        t0 = time.perf_counter()
        cert = decide_conjugacy(x, y, mode=FAST)
        times.append(time.perf_counter() - t0)
        assert cert.verdict is Verdict.CONJUGATE
    return times


@pytest.mark.slow
def test_c9_performance():
    base = _fast_times(50, 50, 5, seed=900)
    double = _fast_times(50, 100, 3, seed=900)
    ratio = statistics.fmean(double) / statistics.fmean(base)
    # cubic growth is 8x per doubling; 25% slack for timer noise
    ok = max(base) < 1.0 and ratio <= 10.0
    record(9, ok, f"max {max(base):.2f}s per instance at k=50, doubling ratio {ratio:.1f}")
    assert max(base) < 1.0
    assert ratio <= 10.0
