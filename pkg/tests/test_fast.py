import time

import pytest

from conftest import random_braids
from garside import normal_form as nf
from garside.fast import (
    AUTO,
    EXACT,
    FAST,
    Verdict,
    WitnessError,
    _verified,
    certify_uss,
    decide_conjugacy,
    fast_uss,
    runtime_probe,
)
from garside.stats import RandomBraidSpec, sample_random_braid
from garside.summit import USS, cycling, generate_invariant_set


def w(text):
    return nf.word_to_braid(text)


def conjugated_pairs(n, k, count, seed):
    out = []
    for t in range(count):
        x, _ = sample_random_braid(RandomBraidSpec(n, k, seed=seed, trial=t))
        c, _ = sample_random_braid(RandomBraidSpec(n, k, delta_power_range=(-2, 2), seed=seed + 1, trial=t))
        out.append((x, nf.conjugate(x, c)))
    return out


# ---------------------------------------------------------------------------
# fast_uss


def test_fast_uss_examples():
    f = fast_uss(w("n=3; 1 1"))
    assert f.valid and f.certified
    assert f.keys() == {w("n=3; 1 1").key(), w("n=3; 2 2").key()}
    f = fast_uss(w("n=3; 2 1 1"))
    assert f.valid and f.keys() == {nf.delta_power(3, 1).key()}
    d = nf.delta_power(4, 3)
    f = fast_uss(d)
    assert f.valid and f.certified and f.witness(d).is_identity()


def test_fast_uss_witnesses():
    for x in random_braids(6, 16, 10, seed=31):
        f = fast_uss(x)
        for key, (e, _, _) in f.elements.items():
            assert nf.conjugate(x, f.witness(e)) == e


@pytest.mark.parametrize("n,k,seed", [(4, 8, 32), (4, 14, 33), (5, 10, 34)])
def test_valid_fast_sets_equal_exact_uss(n, k, seed):
    for x in random_braids(n, k, 25, seed):
        f = fast_uss(x)
        exact = generate_invariant_set(x, USS)
        # at this size the simple-conjugation certificate decides equality
        if f.certified is not None:
            assert f.certified == (f.keys() == exact.keys())
        if f.valid:
            assert f.keys() == exact.keys()
            assert len(f) <= 2 * x.canonical_length


def test_certificate_rejects_a_partial_set():
    # a single orbit of a two-orbit USS must fail the certificate
    for x in random_braids(4, 10, 40, seed=35):
        exact = generate_invariant_set(x, USS)
        if exact.orbit_count < 2:
            continue
        orb = exact.orbits[0]
        partial = {e.key(): (e, 0, False) for e in orb}
        assert not certify_uss(partial, orb.elements[0])
        full = {e.key(): (e, 0, False) for e in exact.elements}
        assert certify_uss(full, orb.elements[0])
        return
    pytest.skip("no multi-orbit sample")


# ---------------------------------------------------------------------------
# decide_conjugacy


def test_decide_examples():
    x, y = w("n=3; 1 1"), w("n=3; 2 2")
    cert = decide_conjugacy(x, y)
    assert cert.verdict is Verdict.CONJUGATE
    assert nf.conjugate(x, cert.witness) == y
    assert nf.conjugate(x, nf.delta_braid(3)) == y
    cert = decide_conjugacy(x, w("n=3; 1 1 1"))
    assert cert.verdict is Verdict.NOT_CONJUGATE
    assert cert.separation["x"]["sup_c"] != cert.separation["y"]["sup_c"]


def test_decide_rejects_bad_input():
    with pytest.raises(ValueError):
        decide_conjugacy(w("n=3; 1"), w("n=4; 1"))
    with pytest.raises(ValueError):
        decide_conjugacy(w("n=3; 1"), w("n=3; 1"), mode="quick")


def test_witness_verification_catches_tampering():
    x, y = w("n=3; 1 1"), w("n=3; 2 2")
    with pytest.raises(WitnessError):
        _verified(x, y, nf.identity_braid(3))


@pytest.mark.parametrize("mode", [FAST, AUTO, EXACT])
def test_conjugate_pairs_small(mode):
    for x, y in conjugated_pairs(4, 8, 15, seed=36):
        cert = decide_conjugacy(x, y, mode=mode)
        if cert.verdict is Verdict.CONJUGATE:
            assert nf.conjugate(x, cert.witness) == y
        if mode != FAST:
            assert cert.verdict is Verdict.CONJUGATE
        else:
            # fast mode may only be inconclusive, never wrong
            assert cert.verdict in (Verdict.CONJUGATE, Verdict.UNRESOLVED, Verdict.NOT_CONJUGATE_FAST)


def test_conjugacy_invariance_under_cycling():
    for x in random_braids(5, 7, 20, seed=37):
        y, _ = cycling(x)
        assert decide_conjugacy(x, y).verdict is Verdict.CONJUGATE


def test_symmetry_and_fast_exact_agreement():
    xs = random_braids(4, 6, 20, seed=38)
    ys = random_braids(4, 6, 20, seed=39)
    pairs = list(zip(xs, ys)) + conjugated_pairs(4, 6, 10, seed=40)
    for x, y in pairs:
        a = decide_conjugacy(x, y, mode=AUTO)
        b = decide_conjugacy(y, x, mode=AUTO)
        assert a.verdict == b.verdict
        exact = decide_conjugacy(x, y, mode=EXACT)
        assert exact.verdict == a.verdict
        fast = decide_conjugacy(x, y, mode=FAST)
        if fast.verdict is Verdict.CONJUGATE:
            assert exact.verdict is Verdict.CONJUGATE
        if fast.verdict in (Verdict.NOT_CONJUGATE, Verdict.NOT_CONJUGATE_FAST):
            assert exact.verdict is Verdict.NOT_CONJUGATE


def test_certificate_json_shape():
    cert = decide_conjugacy(w("n=3; 1 1"), w("n=3; 2 2"))
    data = cert.to_json()
    assert data["verdict"] == "CONJUGATE"
    assert data["witness"].startswith("n=3;")
    assert set(data) >= {"schema_version", "verdict", "mode", "witness", "separation", "timings"}


# ---------------------------------------------------------------------------
# runtime probe


def test_runtime_probe_report():
    rep = runtime_probe(5, 4, trials=2, seed=1, doublings=1)
    assert [r["k"] for r in rep["rows"]] == [4, 8]
    assert rep["rows"][1]["ratio_vs_half_k"] is not None
    assert runtime_probe(5, 4, trials=2, seed=1, doublings=1)["seed"] == 1
    with pytest.raises(ValueError):
        runtime_probe(5, 4, trials=0)


def test_fast_path_beats_exact_generation_small():
    xs = random_braids(4, 4, 10, seed=41)
    t0 = time.perf_counter()
    for x in xs:
        fast_uss(x)
    t_fast = time.perf_counter() - t0
    t0 = time.perf_counter()
    for x in xs:
        generate_invariant_set(x, USS)
    t_exact = time.perf_counter() - t0
    assert t_fast < t_exact
