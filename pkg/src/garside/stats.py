"""
Random braids and descent statistics.

Random braids are products of k permutation braids drawn uniformly from S_n
with numpy's PCG64 generator; trial ``t`` of a run seeded with ``seed`` uses the
seed sequence ``SeedSequence(seed, spawn_key=(t,))`` so any trial can be
regenerated on its own and runs do not depend on the worker count.

Descent probabilities: ``exact_D2`` and ``d2_upper_bound`` are exact rationals.
The recursive upper bound is evaluated in 50-digit decimal arithmetic; its
rational form is available for small arguments through ``exact=True`` but its
denominators grow far too fast for the full table.
"""

from __future__ import annotations

import csv
import dataclasses
import decimal
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

import numpy as np

from . import normal_form as nf
from .normal_form import CanonicalBraid
from .perm import (
    PermutationBraid,
    all_permutation_braids,
    delta,
    inverse_raw,
    prefixes,
    right_complement,
    tau_raw,
)

PRNG_NAME = "PCG64"
DEFAULT_PRECISION = 50

GRID_N = (4, 6, 8, 10, 15, 20, 30, 50, 75, 100)
GRID_K = (2, 5, 10, 20, 30, 40, 50)

# Reference upper bounds for d(n,k), indexed by k then n; None marks "< 1e-15" cells.
REFERENCE_GRID = {
    2: (6.04e-1, 8.58e-1, 1.06, 1.22, 1.54, 1.78, 2.13, 2.59, 2.97, 3.24),
    5: (9.08e-2, 1.67e-1, 2.01e-1, 2.01e-1, 1.57e-1, 1.18e-1, 7.4e-2, 3.82e-2, 2.17e-2, 1.43e-2),
    10: (3.00e-3, 7.17e-3, 1.19e-2, 1.57e-1, 1.54e-2, 9.33e-3, 3.21e-3, 8.61e-4, 3.22e-4, 1.65e-4),
    20: (2.91e-6, 7.03e-6, 1.21e-5, 1.70e-5, 2.18e-5, 1.70e-5, 6.85e-6, 1.74e-6, 6.25e-7, 3.14e-7),
    30: (2.85e-9, 6.86e-9, 1.18e-8, 1.66e-8, 2.12e-8, 1.66e-8, 6.77e-9, 1.73e-9, 6.20e-10, 3.11e-10),
    40: (2.78e-12, 6.70e-12, 1.16e-11, 1.62e-11, 2.07e-11, 1.62e-11, 6.61e-12, 1.67e-12, 6.08e-13, 2.97e-13),
    50: (3.00e-15, 6.11e-15, 1.24e-14, 1.50e-14, 2.02e-14, 1.48e-14, 6.44e-15, None, None, None),
}
# (k, n) cells known to be misprinted; kept out of golden comparisons
SUSPECTED_TYPOS = {(10, 10): "suspected-typo, excluded from golden"}


def reference_value(n: int, k: int) -> float | None:
    return REFERENCE_GRID[k][GRID_N.index(n)]


# ---------------------------------------------------------------------------
# random braids


@dataclasses.dataclass(frozen=True)
class RandomBraidSpec:
    n: int
    k: int
    delta_power_range: tuple = (0, 0)
    seed: int = 0
    trial: int = 0


def trial_rng(seed: int, trial: int = 0) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(trial,))))


def random_permutation_braid(rng: np.random.Generator, n: int) -> PermutationBraid:
    return PermutationBraid(rng.permutation(n).tolist())


def sample_random_braid(spec: RandomBraidSpec) -> tuple[CanonicalBraid, list]:
    """Delta^u x_1 ... x_k with uniform independent x_i; returns (normal form, raw factors)."""
    if spec.k < 1:
        raise ValueError("k must be >= 1")
    rng = trial_rng(spec.seed, spec.trial)
    lo, hi = spec.delta_power_range
    u = int(rng.integers(lo, hi + 1)) if hi > lo else lo
    factors = [random_permutation_braid(rng, spec.n) for _ in range(spec.k)]
    return nf.from_factors(spec.n, u, factors), factors


# ---------------------------------------------------------------------------
# closed forms and the recursion


def _check_D2_args(n: int, i: int) -> None:
    if n < 2 or not 1 <= i <= n - 1:
        raise ValueError(f"need n >= 2 and 1 <= i <= n-1, got n={n}, i={i}")


def closed_sum_D2(n: int, i: int) -> Fraction:
    """Closed double-sum expression for D(n,2,i).

    It asks x_2 to reverse every pair across the two strand groups, which is
    stronger than needed once n >= 4 and 2 <= i <= n-2, so there it falls short
    of ``exact_D2``. The two agree at i in {1, n-1} and for every i when n <= 3.
    """
    _check_D2_args(n, i)
    total = Fraction(0)
    for gap in range(n - 1):
        inner = sum(
            (Fraction(comb(i - 1, j) * comb(n - i - 1, gap - j), comb(gap + 2, j + 1)) for j in range(gap + 1)),
            Fraction(0),
        )
        total += Fraction(n - gap - 1, comb(n - 2, gap)) * inner
    return Fraction(1, 2) + total / (n * (n - 1))


@lru_cache(maxsize=None)
def _extension_fraction(labels: tuple) -> Fraction:
    """Probability that a random order puts each A above every larger-valued B.

    ``labels`` lists the values p < ... < q of the interval as booleans
    (True = A, strand starting at or left of i).
    """
    m = len(labels)
    below = []
    for v, is_a in enumerate(labels):
        mask = 0
        if is_a:
            for w in range(v + 1, m):
                if not labels[w]:
                    mask |= 1 << w
        below.append(mask)
    ways = [0] * (1 << m)
    ways[0] = 1
    for placed in range(1 << m):
        c = ways[placed]
        if not c:
            continue
        for v in range(m):
            bit = 1 << v
            if not placed & bit and below[v] & placed == below[v]:
                ways[placed | bit] += c
    return Fraction(ways[-1], factorial(m))


def exact_D2(n: int, i: int) -> Fraction:
    """Probability that sigma_i is a descent of a product of two random permutation braids.

    If x_1 crosses strands i, i+1 the answer is yes. Otherwise let p < q be
    their end points; sigma_i divides x_1 x_2 iff x_2 reverses every pair
    (a, b) of values in [p, q] with a < b, a reached from a start <= i and b
    from a start >= i+1. The gap q-p-1, the number of interior values of each
    kind and their arrangement are averaged exactly.
    """
    _check_D2_args(n, i)
    from itertools import combinations

    total = Fraction(0)
    for gap in range(n - 1):
        w_gap = Fraction(n - gap - 1, comb(n, 2))
        for j in range(gap + 1):
            w_j = Fraction(comb(i - 1, j) * comb(n - i - 1, gap - j), comb(n - 2, gap))
            if not w_j:
                continue
            acc = Fraction(0)
            for a_pos in combinations(range(gap), j):
                inner = [False] * gap
                for t in a_pos:
                    inner[t] = True
                acc += _extension_fraction((True, *inner, False))
            total += w_gap * w_j * acc / comb(gap, j)
    return Fraction(1, 2) + total / 2


def d2_upper_bound(n: int) -> Fraction:
    if n < 2:
        raise ValueError("n must be >= 2")
    return sum((Fraction(n - k - 1, k + 2) for k in range(n - 1)), Fraction(0)) / n


class DescentRecursion:
    """Memoized recursive upper bound for D(n,k,1).

    Base cases: D(n,0,1) = 0, D(n,1,1) = 1/2 for n >= 2, and D(1,k,1) = 0 since a
    single strand has no descents. 0**0 is 1 in the inner sum.
    """

    def __init__(self, precision: int = DEFAULT_PRECISION, exact: bool = False):
        self.exact = exact
        self.ctx = decimal.Context(prec=precision)
        self._cache: dict = {}
        if exact:
            self._num = Fraction
        else:
            self._num = lambda v, d=1: self.ctx.divide(decimal.Decimal(v), decimal.Decimal(d))
        self._fact = [self._num(factorial(m)) for m in range(2)]

    def _factorial(self, m: int):
        while len(self._fact) <= m:
            self._fact.append(self._num(factorial(len(self._fact))))
        return self._fact[m]

    def __call__(self, n: int, k: int):
        if n < 1 or k < 0:
            raise ValueError(f"need n >= 1 and k >= 0, got n={n}, k={k}")
        # fill bottom-up to keep recursion depth flat
        for kk in range(k + 1):
            for nn in range(1, n + 1):
                if (nn, kk) not in self._cache:
                    self._cache[nn, kk] = self._eval(nn, kk)
        return self._cache[n, k]

    def _eval(self, n: int, k: int):
        num = self._num
        if k == 0 or n == 1:
            return num(0)
        if k == 1:
            return num(1, 2)
        with decimal.localcontext(self.ctx):
            total = num(0)
            for a in range(n - 1):
                base = self._cache[n - a - 1, k - 2]
                inner = num(0)
                p = num(1)
                for b in range(a + 1):
                    inner += self._factorial(a - b + 1) * self._factorial(b) * p
                    p *= base
                total += num(n - a - 1) / self._factorial(a + 2) * self._cache[n - a, k - 1] * inner
            return num(1, 2) + num(2) / num(n * (n - 1)) * total


@lru_cache(maxsize=None)
def _recursion(precision: int, exact: bool) -> DescentRecursion:
    return DescentRecursion(precision, exact)


def recursive_D_bound(n: int, k: int, exact: bool = False, precision: int = DEFAULT_PRECISION):
    """Upper bound for D(n,k,i); a Fraction with ``exact=True``, else a Decimal."""
    if n < 2:
        raise ValueError("n must be >= 2")
    return _recursion(precision, exact)(n, k)


def d_bound(n: int, k: int, exact: bool = False, precision: int = DEFAULT_PRECISION):
    """(n-1)(D(n,k,1) - D(n,k-1,1)) with the recursive bound, used as an estimate for d(n,k)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    r = _recursion(precision, exact)
    return (n - 1) * (r(n, k) - r(n, k - 1))


def corollary_d3_bound(n: int) -> tuple[float, float]:
    """(bound on D(n,3,1), asymptotic bound on d(n,3))."""
    if n < 2:
        raise ValueError("n must be >= 2")
    ln = math.log(n)
    return 0.5 + ln / (n - 1) + 3 * ln * ln / (n * (n - 1)), 3 * ln * ln / n


def format_sig(value, digits: int = 3) -> str:
    return f"{float(value):.{digits - 1}e}"


# ---------------------------------------------------------------------------
# tables


@dataclasses.dataclass
class DescentRow:
    n: int
    k: int
    value: float
    provenance: str
    samples: int = 0
    seed: int | None = None
    ci_low: float | None = None
    ci_high: float | None = None
    note: str = ""

    @property
    def formatted(self) -> str:
        return format_sig(self.value)


@dataclasses.dataclass
class DescentTable:
    rows: list

    FIELDS = ("n", "k", "value", "provenance", "samples", "seed", "ci_low", "ci_high", "note")

    def get(self, n: int, k: int) -> DescentRow:
        for r in self.rows:
            if r.n == n and r.k == k:
                return r
        raise KeyError((n, k))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.FIELDS)
        for r in self.rows:
            w.writerow([r.n, r.k, r.formatted, r.provenance, r.samples,
                        "" if r.seed is None else r.seed,
                        "" if r.ci_low is None else format_sig(r.ci_low),
                        "" if r.ci_high is None else format_sig(r.ci_high), r.note])
        return buf.getvalue()

    def to_json(self) -> dict:
        return {
            "schema_version": nf.SCHEMA_VERSION,
            "prng": PRNG_NAME,
            "rows": [dict(dataclasses.asdict(r), value_3sf=r.formatted) for r in self.rows],
        }


def d_bound_table(n_list=GRID_N, k_list=GRID_K, precision: int = DEFAULT_PRECISION) -> DescentTable:
    rows = []
    for k in k_list:
        for n in n_list:
            v = d_bound(n, k, precision=precision)
            rows.append(DescentRow(n, k, float(v), "recursive-bound", note=SUSPECTED_TYPOS.get((k, n), "")))
    return DescentTable(rows)


# ---------------------------------------------------------------------------
# Monte-Carlo experiments
#
# Each trial draws x_1 ... x_k (and any extra randomness) from its own seed and
# returns (outcome, typical) where typical records inf = 0 and sup = k for the
# positive product; outcome None marks a trial where the predicate does not apply.


@dataclasses.dataclass
class ExperimentResult:
    name: str
    n: int
    k: int
    samples: int
    seed: int
    successes: int
    used: int
    not_applicable: int
    typical: int
    typical_successes: int
    rate: float
    ci_low: float
    ci_high: float
    conditioned_rate: float | None
    bound: float | None
    bound_kind: str
    clears: bool | None
    stderr: float
    prng: str = PRNG_NAME

    @property
    def atypical(self) -> int:
        return self.samples - self.typical

    def to_json(self) -> dict:
        return dict(dataclasses.asdict(self), schema_version=nf.SCHEMA_VERSION)

    def to_row(self) -> DescentRow:
        return DescentRow(self.n, self.k, self.rate, "empirical", self.samples, self.seed,
                          self.ci_low, self.ci_high, self.name)


def _positive_sample(n, k, seed, trial):
    x, raw = sample_random_braid(RandomBraidSpec(n, k, seed=seed, trial=trial))
    # extra randomness for the trial comes from a disjoint spawn key
    return x, raw, trial_rng(seed, (trial + 1) << 32), x.inf == 0 and x.sup == k


def _meet_head(x: CanonicalBraid) -> tuple:
    """Delta meet x for a positive braid x."""
    if x.inf > 0:
        return tuple(range(x.n - 1, -1, -1))
    return tuple(x.factors[0]) if x.factors else tuple(range(x.n))


def _reverse(raw) -> list:
    # reversing a word turns a permutation braid into its inverse permutation
    return [inverse_raw(p) for p in reversed(raw)]


def _meet_tail(n: int, raw) -> tuple:
    """x meet_R Delta, read off the head of the reversed braid."""
    return tuple(inverse_raw(_meet_head(nf.from_factors(n, 0, _reverse(raw)))))


def _wf_head(x: CanonicalBraid):
    return x.factors[0] if x.factors else None


def _exp_head_stability(n, k, seed, trial):
    x, _, rng, typ = _positive_sample(n, k, seed, trial)
    a = random_permutation_braid(rng, n)
    return _meet_head(x) == _meet_head(nf.multiply(x, nf.from_permutation(a))), typ


def _exp_tail_stability(n, k, seed, trial):
    x, raw, rng, typ = _positive_sample(n, k, seed, trial)
    a = random_permutation_braid(rng, n)
    return _meet_tail(n, raw) == _meet_tail(n, [a] + list(raw)), typ


def _cut_head_pool(rng, n, x):
    if factorial(n) <= 120:
        return list(all_permutation_braids(n))
    # sampled stand-in for "every a": random braids plus the extreme candidates
    pool = [random_permutation_braid(rng, n) for _ in range(32)]
    pool.append(delta(n))
    if x.factors:
        pool.append(right_complement(x.factors[-1]))
    return pool


def _exp_cut_head(n, k, seed, trial):
    x, _, rng, typ = _positive_sample(n, k, seed, trial)
    h = _wf_head(x)
    for a in _cut_head_pool(rng, n, x):
        hy = _wf_head(nf.multiply(x, nf.from_permutation(a)))
        if hy != h and (hy is None or PermutationBraid(tau_raw(hy, 1)) != h):
            return False, typ
    return True, typ


def _random_u(rng, k):
    return int(rng.integers(-k, k + 1))


def _shifted_sample(n, k, seed, trial):
    x, raw, rng, typ = _positive_sample(n, k, seed, trial)
    return nf.from_factors(n, _random_u(rng, k), raw), typ


def _exp_wcw(n, k, seed, trial):
    from .summit import is_weakly_cyclically_weighted
    x, typ = _shifted_sample(n, k, seed, trial)
    return is_weakly_cyclically_weighted(x), typ


def _exp_sss(n, k, seed, trial):
    from .summit import reduce_to_sss
    x, typ = _shifted_sample(n, k, seed, trial)
    y, _ = reduce_to_sss(x)
    return (y.inf, y.sup) == (x.inf, x.sup), typ


def _exp_cw_after_cycling(n, k, seed, trial):
    from .summit import cycling, is_cyclically_weighted
    y, typ = _shifted_sample(n, k, seed, trial)
    for _ in range(k // 2 + 1):
        if is_cyclically_weighted(y):
            return True, typ
        y, _ = cycling(y)
    return False, typ


def _in_uss(z: CanonicalBraid, inf: int, sup: int) -> bool:
    from .summit import _is_periodic, cycling
    return z.inf == inf and z.sup == sup and _is_periodic(z, cycling)


def _exp_minimal_conjugator(n, k, seed, trial):
    from .fast import fast_uss
    from .summit import is_cyclically_weighted
    x, typ = _shifted_sample(n, k, seed, trial)
    f = fast_uss(x)
    y = f.base
    if not y.factors or not is_cyclically_weighted(y):
        return None, typ
    t_full = tau_raw(y.factors[0], y.inf)
    ident = tuple(range(n))
    for t in prefixes(t_full):
        if tuple(t) in (ident, tuple(t_full)):
            continue
        z = nf.from_pieces(n, [(-1, tau_raw(right_complement(t), 1)), (y.inf, None)]
                           + [(0, p) for p in y.factors] + [(0, t)])
        if _in_uss(z, y.inf, y.sup):
            return False, typ
    return True, typ


def _exp_orbit_structure(n, k, seed, trial):
    from .summit import USS, BudgetExhausted, cycling_orbit, generate_invariant_set
    x, typ = _shifted_sample(n, k, seed, trial)
    try:
        uss = generate_invariant_set(x, USS, budget=20_000)
    except BudgetExhausted:
        return None, typ
    y = uss.orbits[0].elements[0]
    pair = {e.key() for e in cycling_orbit(y).elements}
    pair |= {e.key() for e in cycling_orbit(nf.tau_conjugate(y, 1)).elements}
    return set(uss.keys()) == pair, typ


def _exp_descent_count(n, k, seed, trial):
    x, _, _, typ = _positive_sample(n, k, seed, trial)
    h = _meet_head(x)
    return float(sum(1 for i in range(n - 1) if h[i] > h[i + 1])), typ


def _lower(f):
    return lambda n, k: max(0.0, 1 - f(n, k))


def _d(n, k):
    return float(d_bound(n, k))


# name -> (trial function, lower bound on the success rate, minimum k)
EXPERIMENTS = {
    "head-stability": (_exp_head_stability, _lower(lambda n, k: min(_d(n, k), 1.0)), 2),
    "tail-stability": (_exp_tail_stability, _lower(lambda n, k: min(_d(n, k), 1.0)), 2),
    "cut-head": (_exp_cut_head, _lower(lambda n, k: 2 * _d(n, k)), 3),
    "wcw": (_exp_wcw, _lower(lambda n, k: 2 * _d(n, k)), 3),
    "sss": (_exp_sss, _lower(lambda n, k: 4 * _d(n, k)), 3),
    "cw-after-cycling": (_exp_cw_after_cycling, _lower(lambda n, k: 2 * _d(n, k // 4)), 12),
    "minimal-conjugator": (_exp_minimal_conjugator, _lower(lambda n, k: 2 * _d(n, k - 1)), 3),
    "orbit-structure": (_exp_orbit_structure, _lower(lambda n, k: 2 * _d(n, k // 4)), 12),
    "descent-count": (_exp_descent_count, None, 1),
}


# every prefix of a permutation braid is visited, up to n! of them
MAX_N = {"minimal-conjugator": 7}


def _run_chunk(args):
    name, n, k, seed, trials = args
    fn = EXPERIMENTS[name][0]
    return [fn(n, k, seed, t) for t in trials]


def _run_trials(name, n, k, samples, seed, jobs):
    if jobs <= 1:
        return _run_chunk((name, n, k, seed, range(samples)))
    step = max(1, min(500, -(-samples // jobs)))
    chunks = [(name, n, k, seed, range(s, min(s + step, samples))) for s in range(0, samples, step)]
    out = []
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        for part in ex.map(_run_chunk, chunks):
            out.extend(part)
    return out


def _wilson(successes: int, trials: int) -> tuple[float, float]:
    if not trials:
        return float("nan"), float("nan")
    # scipy is slow to import, so keep it off the CLI startup path
    from scipy import stats as sps

    ci = sps.binomtest(successes, trials).proportion_ci(confidence_level=0.95, method="wilson")
    return float(ci.low), float(ci.high)


def mc_experiment(name: str, n: int, k: int, samples: int, seed: int, jobs: int = 1) -> ExperimentResult:
    """Run a registered experiment over seeded random braids.

    The headline rate is over every applicable sample, as the bounds are stated
    for arbitrary random products; the rate restricted to samples with inf = 0
    and sup = k is reported as ``conditioned_rate`` together with the counts.
    ``clears`` is True when the Wilson 95% lower limit is at least the bound.
    For ``descent-count`` the value is a mean, compared against the upper bound
    (n-1) D(n,k,1) from the recursion (exact (n-1)/2 at k = 1).
    """
    if name not in EXPERIMENTS:
        raise KeyError(f"unknown experiment {name!r}; choose from {sorted(EXPERIMENTS)}")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if n < 2:
        raise ValueError("n must be >= 2")
    fn, bound_fn, kmin = EXPERIMENTS[name]
    if k < kmin:
        raise ValueError(f"experiment {name} needs k >= {kmin}")
    if name in MAX_N and n > MAX_N[name]:
        raise ValueError(f"experiment {name} enumerates prefixes of a permutation and needs n <= {MAX_N[name]}")
    outcomes = _run_trials(name, n, k, samples, seed, jobs)
    used = [(o, typ) for o, typ in outcomes if o is not None]
    typical = sum(1 for _, typ in outcomes if typ)
    na = len(outcomes) - len(used)
    m = len(used)
    if name == "descent-count":
        vals = np.array([o for o, _ in used], dtype=float)
        mean = float(vals.mean())
        se = float(vals.std(ddof=1) / math.sqrt(m)) if m > 1 else 0.0
        tv = [o for o, typ in used if typ]
        bound = 0.5 * (n - 1) if k == 1 else float((n - 1) * recursive_D_bound(n, k))
        return ExperimentResult(name, n, k, samples, seed, m, m, na, typical, len(tv), mean,
                                mean - 1.96 * se, mean + 1.96 * se,
                                float(np.mean(tv)) if tv else None, bound, "upper",
                                mean - 1.96 * se <= bound, se)
    succ = sum(1 for o, _ in used if o)
    tsucc = sum(1 for o, typ in used if o and typ)
    tused = sum(1 for _, typ in used if typ)
    rate = succ / m if m else float("nan")
    lo, hi = _wilson(succ, m)
    se = math.sqrt(rate * (1 - rate) / m) if m else float("nan")
    bound = bound_fn(n, k)
    return ExperimentResult(name, n, k, samples, seed, succ, m, na, typical, tsucc, rate, lo, hi,
                            tsucc / tused if tused else None, bound, "lower",
                            None if not m else lo >= bound, se)


def empirical_descent_rates(n: int, k: int, samples: int, seed: int) -> list[tuple[float, float]]:
    """Per-i empirical D(n,k,i) with binomial standard errors, i = 1..n-1."""
    counts = np.zeros(n - 1)
    for t in range(samples):
        x, _ = sample_random_braid(RandomBraidSpec(n, k, seed=seed, trial=t))
        h = _meet_head(x)
        for i in range(n - 1):
            if h[i] > h[i + 1]:
                counts[i] += 1
    rates = counts / samples
    return [(float(p), float(math.sqrt(p * (1 - p) / samples))) for p in rates]


def exact_head_instability(n: int, k: int) -> Fraction:
    """Exact Prob[Delta meet x != Delta meet (x a)] for x = x_1 ... x_k, a uniform.

    Tracks the joint law of the two heads as factors are prepended, which is a
    Markov chain on pairs of permutation braids; feasible for n <= 4.
    """
    if n < 2 or k < 1:
        raise ValueError("need n >= 2 and k >= 1")
    if n > 4:
        raise ValueError("the exact chain has (n!)^2 states; use n <= 4")
    perms = [tuple(p) for p in all_permutation_braids(n)]
    m = len(perms)
    # head of the product p h for permutation braids p, h
    head = {(p, h): _meet_head(nf.from_factors(n, 0, [p, h])) for p in perms for h in perms}
    dist: dict = {}
    w0 = Fraction(1, m * m)
    for xk in perms:
        for a in perms:
            key = (xk, head[xk, a])
            dist[key] = dist.get(key, 0) + w0
    for _ in range(k - 1):
        nxt: dict = {}
        for (h1, h2), wt in dist.items():
            for p in perms:
                key = (head[p, h1], head[p, h2])
                nxt[key] = nxt.get(key, 0) + wt / m
        dist = nxt
    return sum((wt for (h1, h2), wt in dist.items() if h1 != h2), Fraction(0))


def table_json(table: DescentTable) -> str:
    return json.dumps(table.to_json(), indent=2)
