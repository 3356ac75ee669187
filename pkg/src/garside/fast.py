"""
Fast ultra summit set generation for generic braids, and the conjugacy decision
procedure built on top of it.

``fast_uss`` cycles x about half its canonical length, expects a cyclically
weighted braid there, and emits its cycling orbit together with the tau image.
The output is validated (cyclically weighted, closed under cycling and tau).
For n <= CERTIFY_MAX_N the set is also checked for closure under every simple
conjugator, which proves it is the whole USS; ``certified`` records this.
Above that size a valid set is only the full USS with high probability, so a
disjoint pair of uncertified fast sets yields ``NOT_CONJUGATE_FAST`` rather
than a proof.
"""

from __future__ import annotations

import dataclasses
import enum
import statistics
import time

from . import normal_form as nf
from .normal_form import CanonicalBraid, from_pieces
from .perm import all_permutation_braids, right_complement, tau_raw
from .summit import (
    RESTRICTED,
    USS,
    BudgetExhausted,
    Conjugator,
    CyclingOrbit,
    InvariantSetResult,
    _is_periodic,
    cycling,
    generate_invariant_set,
    is_cyclically_weighted,
    summit_bounds,
    to_uss,
)

FAST = "fast"
EXACT = "exact"
AUTO = "auto"

# closure under every simple conjugator is checked exhaustively up to this index
CERTIFY_MAX_N = 5


class Verdict(str, enum.Enum):
    CONJUGATE = "CONJUGATE"
    NOT_CONJUGATE = "NOT_CONJUGATE"
    NOT_CONJUGATE_FAST = "NOT_CONJUGATE_FAST"
    UNRESOLVED = "UNRESOLVED"


@dataclasses.dataclass
class FastUssResult:
    valid: bool
    base: CanonicalBraid
    cyclings_used: int
    extra_cyclings: int
    elements: dict
    reasons: list
    # True: proven equal to the USS; None: not attempted (index too large)
    certified: bool | None = None
    # pieces[:cut] is the witness prefix for an element; flip adds a Delta
    _pieces: list = dataclasses.field(repr=False, default_factory=list)
    _n: int = 0

    def __contains__(self, y: CanonicalBraid) -> bool:
        return y.key() in self.elements

    def __len__(self) -> int:
        return len(self.elements)

    def keys(self) -> set:
        return set(self.elements)

    def witness(self, y: CanonicalBraid) -> CanonicalBraid:
        """w with w^-1 x w = y for any element y of the fast set."""
        _, cut, flip = self.elements[y.key()]
        pieces = self._pieces[:cut]
        if flip:
            pieces = pieces + [(1, None)]
        return from_pieces(self._n, pieces)

    @property
    def base_witness(self) -> CanonicalBraid:
        return self.witness(self.base)

    @property
    def set(self) -> InvariantSetResult:
        """The fast set shaped like an exact invariant-set result."""
        seen = set()
        orbits = []
        for key, (e, _, _) in self.elements.items():
            if key in seen:
                continue
            orbit = [e]
            seen.add(key)
            z = e
            while True:
                z, _ = cycling(z)
                if z.key() == key or z.key() not in self.elements or z.key() in seen:
                    break
                orbit.append(z)
                seen.add(z.key())
            orbits.append(CyclingOrbit(tuple(orbit)))
        witnesses = {k: None for k in self.elements}
        return InvariantSetResult(USS, "fast", self.base.inf, self.base.sup, orbits, witnesses,
                                  {"valid": self.valid, "cyclings_used": self.cyclings_used})


def fast_uss(x: CanonicalBraid, extra_limit: int | None = None, prefix: Conjugator | None = None) -> FastUssResult:
    """Generate USS(x) assuming x is a generic braid; see the module docstring.

    If c^j(x) with j = floor(l/2) is not yet cyclically weighted, up to
    ``extra_limit`` (default l) further cyclings are tried and counted.
    ``prefix`` is a conjugator already applied to reach x; witnesses include it.
    """
    n = x.n
    acc = Conjugator(n, prefix.pieces if prefix is not None else None)
    length = x.canonical_length
    if length == 0:
        return FastUssResult(True, x, 0, 0, {x.key(): (x, len(acc.pieces), False)}, [], True, acc.pieces, n)
    y = x
    j = length // 2
    for _ in range(j):
        y, t = cycling(y)
        acc.times_perm(t)
    extra = 0
    limit = length if extra_limit is None else extra_limit
    while not is_cyclically_weighted(y) and extra < limit:
        y, t = cycling(y)
        acc.times_perm(t)
        extra += 1
    base = y
    pieces = acc.pieces
    reasons = []
    if not is_cyclically_weighted(base):
        reasons.append("base not cyclically weighted")

    elements: dict = {}
    even = base.inf % 2 == 0
    count = length if even else 2 * length
    z = base
    seq = []
    for i in range(count):
        if i:
            z, t = cycling(z)
            pieces.append((0, t))
        seq.append(z)
        elements.setdefault(z.key(), (z, len(pieces), False))
    if even:
        for z, cut in [(e, c) for (e, c, _) in list(elements.values())]:
            tz = nf.tau_conjugate(z, 1)
            elements.setdefault(tz.key(), (tz, cut, True))
    # one further cycling must stay in the set
    last, _ = cycling(seq[-1])
    if last.key() not in elements:
        reasons.append("not closed under cycling")
    if base.factors and nf.tau_conjugate(base, 1).key() not in elements:
        reasons.append("not closed under tau")
    for e, _, _ in elements.values():
        if (e.inf, e.sup) != (base.inf, base.sup):
            reasons.append("inf/sup not constant")
            break
        if not is_cyclically_weighted(e):
            reasons.append("element not cyclically weighted")
            break
    certified = None
    if not reasons and n <= CERTIFY_MAX_N:
        certified = certify_uss(elements, base)
        if not certified:
            reasons.append("not closed under simple conjugation")
    return FastUssResult(not reasons, base, j + extra, extra, elements, reasons, certified, pieces, n)


def _simple_conjugate(z: CanonicalBraid, g) -> CanonicalBraid:
    # g^-1 z g with g^-1 = Delta^-1 tau(g*)
    return from_pieces(z.n, [(-1, tau_raw(right_complement(g), 1)), (z.inf, None)]
                       + [(0, f) for f in z.factors] + [(0, g)])


def certify_uss(elements: dict, base: CanonicalBraid) -> bool:
    """True iff the candidate set is exactly the USS of base.

    The USS is connected under conjugation by simple elements, so a subset of
    the USS that no simple conjugation can leave (within the USS) is all of it.
    All n! simple elements are tried, hence the index cap.
    """
    if summit_bounds(base) != (base.inf, base.sup):
        return False
    for e, _, _ in elements.values():
        if not _is_periodic(e, cycling):
            return False
    simples = [g for g in all_permutation_braids(base.n) if not g.is_identity()]
    for e, _, _ in elements.values():
        for g in simples:
            y = _simple_conjugate(e, g)
            if y.key() in elements or (y.inf, y.sup) != (base.inf, base.sup):
                continue
            if _is_periodic(y, cycling):
                return False
    return True


# ---------------------------------------------------------------------------
# conjugacy decision


@dataclasses.dataclass
class ConjugacyCertificate:
    verdict: Verdict
    mode: str
    witness: CanonicalBraid | None = None
    separation: dict | None = None
    timings: dict = dataclasses.field(default_factory=dict)
    budget: dict | None = None
    notes: list = dataclasses.field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "schema_version": nf.SCHEMA_VERSION,
            "verdict": self.verdict.value,
            "mode": self.mode,
            "witness": None if self.witness is None else nf.format_word(nf.render(self.witness)),
            "separation": self.separation,
            "timings": self.timings,
            "budget": self.budget,
            "notes": self.notes,
        }


class WitnessError(AssertionError):
    """A composed conjugator failed re-verification (internal bug)."""


def _verified(x: CanonicalBraid, y: CanonicalBraid, c: CanonicalBraid) -> CanonicalBraid:
    if not nf.equals(nf.conjugate(x, c), y):
        raise WitnessError("composed conjugator does not conjugate x to y")
    return c


def _fast_match(x, y, fx: FastUssResult, fy: FastUssResult):
    # a^-1 x a = z = b^-1 y b  gives  (a b^-1)^-1 x (a b^-1) = y
    if fy.base in fx:
        a, b = fx.witness(fy.base), fy.base_witness
    elif fx.base in fy:
        a, b = fx.base_witness, fy.witness(fx.base)
    else:
        return None
    return _verified(x, y, nf.multiply(a, nf.invert(b)))


def decide_conjugacy(
    x: CanonicalBraid,
    y: CanonicalBraid,
    mode: str = AUTO,
    policy: str = RESTRICTED,
    budget: int = 50_000,
) -> ConjugacyCertificate:
    """Decide whether x and y are conjugate; CONJUGATE always carries a verified witness."""
    if x.n != y.n:
        raise ValueError(f"braid index mismatch: {x.n} vs {y.n}")
    if mode not in (FAST, EXACT, AUTO):
        raise ValueError(f"unknown mode {mode!r}")
    timings = {}
    notes = []
    fx = fy = None
    if mode in (FAST, AUTO):
        # a verified fast match proves conjugacy, so separation only runs without one
        t1 = time.perf_counter()
        fx, fy = fast_uss(x), fast_uss(y)
        c = _fast_match(x, y, fx, fy)
        timings["fast"] = time.perf_counter() - t1
        if c is not None:
            return ConjugacyCertificate(Verdict.CONJUGATE, FAST, witness=c, timings=timings)

    t0 = time.perf_counter()
    bx, by = summit_bounds(x), summit_bounds(y)
    timings["separation"] = time.perf_counter() - t0
    if bx != by:
        sep = {"x": {"inf_c": bx[0], "sup_c": bx[1]}, "y": {"inf_c": by[0], "sup_c": by[1]}}
        return ConjugacyCertificate(Verdict.NOT_CONJUGATE, mode if mode != AUTO else FAST,
                                    separation=sep, timings=timings)

    if fx is not None:
        if fx.certified and fy.certified:
            return ConjugacyCertificate(Verdict.NOT_CONJUGATE, FAST, timings=timings,
                                        notes=["certified fast sets are disjoint"])
        if fx.valid and fy.valid:
            if mode == FAST:
                return ConjugacyCertificate(Verdict.NOT_CONJUGATE_FAST, FAST, timings=timings)
            notes.append("fast sets disjoint; escalated to exact")
        else:
            why = sorted(set(fx.reasons + fy.reasons))
            if mode == FAST:
                return ConjugacyCertificate(Verdict.UNRESOLVED, FAST, timings=timings,
                                            notes=["fast path invalid: " + ", ".join(why)])
            notes.append("fast path invalid (" + ", ".join(why) + "); escalated to exact")

    t2 = time.perf_counter()
    try:
        uss = generate_invariant_set(x, USS, policy, budget)
    except BudgetExhausted as exc:
        timings["exact"] = time.perf_counter() - t2
        return ConjugacyCertificate(Verdict.UNRESOLVED, EXACT, timings=timings, notes=notes,
                                    budget={"budget": exc.budget, "elements": exc.elements,
                                            "orbits": exc.orbits})
    ry, v = to_uss(y)
    stats = dict(uss.stats, elements=uss.element_count, orbits=uss.orbit_count)
    if ry in uss:
        c = _verified(x, y, nf.multiply(uss.witness(ry), nf.invert(v)))
        timings["exact"] = time.perf_counter() - t2
        return ConjugacyCertificate(Verdict.CONJUGATE, EXACT, witness=c, timings=timings,
                                    budget=stats, notes=notes)
    timings["exact"] = time.perf_counter() - t2
    return ConjugacyCertificate(Verdict.NOT_CONJUGATE, EXACT, timings=timings, budget=stats, notes=notes)


# ---------------------------------------------------------------------------
# runtime probe


def runtime_probe(n: int, k: int, trials: int = 5, seed: int = 0, doublings: int = 2) -> dict:
    """Time fast_uss on seeded random braids at k, 2k, 4k, ... factors."""
    from .stats import RandomBraidSpec, sample_random_braid

    if trials < 1:
        raise ValueError("trials must be >= 1")
    rows = []
    for d in range(doublings + 1):
        kk = k * 2**d
        times = []
        for t in range(trials):
            x, _ = sample_random_braid(RandomBraidSpec(n, kk, seed=seed, trial=t))
            t0 = time.perf_counter()
            fast_uss(x)
            times.append(time.perf_counter() - t0)
        rows.append({"n": n, "k": kk, "mean_s": statistics.fmean(times), "max_s": max(times)})
    for prev, row in zip(rows, rows[1:]):
        row["ratio_vs_half_k"] = row["mean_s"] / prev["mean_s"] if prev["mean_s"] > 0 else None
    return {"n": n, "k": k, "trials": trials, "seed": seed, "prng": "PCG64", "rows": rows}
