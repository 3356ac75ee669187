"""
Cycling, decycling, summit reduction and invariant-set generation.

Every routine that moves a braid inside its conjugacy class also returns a
witness ``w`` with ``w^-1 x w`` equal to the result. Witnesses are built with
:class:`Conjugator`, which collects Delta^e p pieces and normalizes once.
"""

from __future__ import annotations

import dataclasses
import itertools
import math
from typing import Iterator

from . import normal_form as nf
from .normal_form import CanonicalBraid, from_pieces
from .perm import (
    PermutationBraid,
    all_permutation_braids,
    is_weighted_pair,
    prefixes,
    right_complement,
    slide_pair,
    tau_raw,
)

USS = "USS"
RSSS = "RSSS"
FULL = "full"
RESTRICTED = "restricted"

DEFAULT_BUDGET = 200_000


class BudgetExhausted(RuntimeError):
    """Invariant-set generation hit its element budget before closing."""

    def __init__(self, kind: str, budget: int, elements: int, orbits: int):
        super().__init__(f"{kind} generation exceeded budget of {budget} elements")
        self.kind = kind
        self.budget = budget
        self.elements = elements
        self.orbits = orbits


class Conjugator:
    """Accumulates a product of Delta^e p pieces; ``braid()`` normalizes it."""

    def __init__(self, n: int, pieces=None):
        self.n = n
        self.pieces = list(pieces or [])

    def copy(self) -> Conjugator:
        return Conjugator(self.n, self.pieces)

    def times_perm(self, p) -> Conjugator:
        self.pieces.append((0, tuple(p)))
        return self

    def times_perm_inverse(self, p) -> Conjugator:
        # p^-1 = p* Delta^-1 = Delta^-1 tau(p*)
        self.pieces.append((-1, tau_raw(right_complement(p), 1)))
        return self

    def times_delta(self, e: int = 1) -> Conjugator:
        self.pieces.append((e, None))
        return self

    def times(self, b: CanonicalBraid) -> Conjugator:
        self.pieces.append((b.inf, None))
        self.pieces.extend((0, f) for f in b.factors)
        return self

    def braid(self) -> CanonicalBraid:
        return from_pieces(self.n, self.pieces)


# ---------------------------------------------------------------------------
# cycling and decycling


def _append_factor(factors: list, p) -> None:
    factors.append(p)
    i = len(factors) - 2
    while i >= 0:
        res = slide_pair(factors[i], factors[i + 1])
        if res is None:
            break
        factors[i], factors[i + 1] = res
        i -= 1


def _prepend_factor(factors: list, p) -> None:
    factors.insert(0, p)
    for i in range(len(factors) - 1):
        res = slide_pair(factors[i], factors[i + 1])
        if res is None:
            break
        factors[i], factors[i + 1] = res


def _finish(n: int, u: int, factors: list) -> CanonicalBraid:
    top = tuple(range(n - 1, -1, -1))
    bottom = tuple(range(n))
    lo, hi = 0, len(factors)
    while lo < hi and factors[lo] == top:
        lo += 1
    while hi > lo and factors[hi - 1] == bottom:
        hi -= 1
    fs = tuple(f if isinstance(f, PermutationBraid) else PermutationBraid(f) for f in factors[lo:hi])
    return CanonicalBraid(n, u + lo, fs)


def cycling(x: CanonicalBraid) -> tuple[CanonicalBraid, PermutationBraid]:
    """c(x) and the conjugator tau^u(H(x)); a pure Delta power is returned as is."""
    n = x.n
    if not x.factors:
        return x, PermutationBraid(range(n))
    t = PermutationBraid(tau_raw(x.factors[0], x.inf))
    factors = list(x.factors[1:])
    _append_factor(factors, t)
    return _finish(n, x.inf, factors), t


def decycling(x: CanonicalBraid) -> tuple[CanonicalBraid, CanonicalBraid]:
    """d(x) and the conjugator T(x)^-1."""
    y, t = _decycle(x)
    if t is None:
        return y, nf.identity_braid(x.n)
    return y, Conjugator(x.n).times_perm_inverse(t).braid()


def _decycle(x: CanonicalBraid) -> tuple[CanonicalBraid, PermutationBraid | None]:
    n = x.n
    if not x.factors:
        return x, None
    t = x.factors[-1]
    factors = list(x.factors[:-1])
    _prepend_factor(factors, tau_raw(t, x.inf))
    return _finish(n, x.inf, factors), t


# ---------------------------------------------------------------------------
# predicates


def is_cyclically_weighted(x: CanonicalBraid) -> bool:
    """Tail left-weighted against tau^inf(head). Pure Delta powers count as True."""
    if not x.factors:
        return True
    return is_weighted_pair(x.factors[-1], tau_raw(x.factors[0], x.inf))


def is_weakly_cyclically_weighted(x: CanonicalBraid) -> bool:
    """H(x tau^inf(x_1)) = x_1 with no new Delta. Pure Delta powers count as True."""
    if not x.factors:
        return True
    factors = list(x.factors)
    _append_factor(factors, tau_raw(x.factors[0], x.inf))
    y = _finish(x.n, x.inf, factors)
    return y.inf == x.inf and bool(y.factors) and y.factors[0] == x.factors[0]


def is_super_summit(x: CanonicalBraid, summit_inf: int, summit_sup: int) -> bool:
    return x.inf == summit_inf and x.sup == summit_sup


# ---------------------------------------------------------------------------
# reduction into SSS / USS / RSSS


def reduce_to_sss(x: CanonicalBraid) -> tuple[CanonicalBraid, CanonicalBraid]:
    """A super summit conjugate y of x and w with w^-1 x w = y."""
    acc = Conjugator(x.n)
    y = _reduce_to_sss(x, acc)
    return y, acc.braid()


def summit_bounds(x: CanonicalBraid) -> tuple[int, int]:
    """(inf_s, sup_s) of the conjugacy class of x, without building a witness."""
    y = _reduce_to_sss(x, Conjugator(x.n))
    return y.inf, y.sup


def reduce_with_pieces(x: CanonicalBraid) -> tuple[CanonicalBraid, Conjugator]:
    """Like reduce_to_sss, but the witness is left unnormalized."""
    acc = Conjugator(x.n)
    return _reduce_to_sss(x, acc), acc


def _reduce_to_sss(x: CanonicalBraid, acc: Conjugator) -> CanonicalBraid:
    y = x
    while True:
        before = (y.inf, y.sup)
        # cycling raises inf to inf_c; a revisit without progress means inf is maximal
        seen = {y.key()}
        while y.factors:
            z, t = cycling(y)
            acc.times_perm(t)
            if z.inf > y.inf:
                seen = set()
            y = z
            k = y.key()
            if k in seen:
                break
            seen.add(k)
        seen = {y.key()}
        while y.factors:
            z, t = _decycle(y)
            acc.times_perm_inverse(t)
            if z.sup < y.sup:
                seen = set()
            y = z
            k = y.key()
            if k in seen:
                break
            seen.add(k)
        if (y.inf, y.sup) == before:
            return y


def _periodic_entry(y: CanonicalBraid, step) -> tuple[CanonicalBraid, list]:
    """First periodic element of the iteration y -> step(y) and the conjugators to it."""
    index = {y.key(): 0}
    seq = [y]
    conj = []
    while True:
        z, t = step(seq[-1])
        conj.append(t)
        k = z.key()
        if k in index:
            r = index[k]
            return seq[r], conj[:r]
        index[k] = len(seq)
        seq.append(z)


def _is_periodic(y: CanonicalBraid, step) -> bool:
    start = y.key()
    seen = {start}
    z = y
    while True:
        z, _ = step(z)
        k = z.key()
        if k == start:
            return True
        if k in seen:
            return False
        seen.add(k)


def to_uss(x: CanonicalBraid, acc: Conjugator | None = None) -> tuple[CanonicalBraid, CanonicalBraid | None]:
    """An element of USS(x); the witness is returned when no accumulator is passed."""
    own = acc is None
    acc = Conjugator(x.n) if own else acc
    y = _reduce_to_sss(x, acc)
    y = _to_cycling_periodic(y, acc)
    return y, (acc.braid() if own else None)


def _to_cycling_periodic(y: CanonicalBraid, acc: Conjugator) -> CanonicalBraid:
    y, ts = _periodic_entry(y, cycling)
    for t in ts:
        acc.times_perm(t)
    return y


def _to_decycling_periodic(y: CanonicalBraid, acc: Conjugator) -> CanonicalBraid:
    y, ts = _periodic_entry(y, _decycle)
    for t in ts:
        if t is not None:
            acc.times_perm_inverse(t)
    return y


def to_rsss(x: CanonicalBraid, acc: Conjugator | None = None) -> tuple[CanonicalBraid, CanonicalBraid | None]:
    """An element of RSSS(x): periodic under both cycling and decycling."""
    own = acc is None
    acc = Conjugator(x.n) if own else acc
    y = _reduce_to_sss(x, acc)
    states = set()
    while True:
        y = _to_cycling_periodic(y, acc)
        y = _to_decycling_periodic(y, acc)
        if _is_periodic(y, cycling):
            return y, (acc.braid() if own else None)
        if y.key() in states:
            raise RuntimeError("alternating cycling/decycling did not settle")
        states.add(y.key())


# ---------------------------------------------------------------------------
# orbits and invariant sets


@dataclasses.dataclass(frozen=True)
class CyclingOrbit:
    elements: tuple

    @property
    def period(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[CanonicalBraid]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)


def cycling_orbit(y: CanonicalBraid) -> CyclingOrbit:
    """Periodic part of the cycling trajectory of y."""
    start, _ = _periodic_entry(y, cycling)
    return _orbit_from(start)


def _orbit_from(start: CanonicalBraid) -> CyclingOrbit:
    out = [start]
    k0 = start.key()
    z = start
    while True:
        z, _ = cycling(z)
        if z.key() == k0:
            return CyclingOrbit(tuple(out))
        out.append(z)


def _canonical_orbit(orbit: CyclingOrbit) -> CyclingOrbit:
    # rotate to start at the smallest key so output order is reproducible
    keys = [e.key() for e in orbit.elements]
    r = keys.index(min(keys))
    return CyclingOrbit(orbit.elements[r:] + orbit.elements[:r])


@dataclasses.dataclass
class InvariantSetResult:
    kind: str
    policy: str
    summit_inf: int
    summit_sup: int
    orbits: list
    witnesses: dict
    stats: dict = dataclasses.field(default_factory=dict)

    @property
    def orbit_count(self) -> int:
        return len(self.orbits)

    @property
    def element_count(self) -> int:
        return len(self.witnesses)

    @property
    def elements(self) -> list:
        return [e for orb in self.orbits for e in orb]

    def keys(self) -> set:
        return set(self.witnesses)

    def __contains__(self, y: CanonicalBraid) -> bool:
        return y.key() in self.witnesses

    def witness(self, y: CanonicalBraid) -> CanonicalBraid:
        return self.witnesses[y.key()]

    def to_json(self) -> dict:
        return {
            "schema_version": nf.SCHEMA_VERSION,
            "kind": self.kind,
            "policy": self.policy,
            "summit_inf": self.summit_inf,
            "summit_sup": self.summit_sup,
            "orbit_count": self.orbit_count,
            "element_count": self.element_count,
            "orbits": [[nf.to_json(e) for e in orb] for orb in self.orbits],
            "budget": self.stats,
        }


def _candidates(y: CanonicalBraid, policy: str):
    n = y.n
    if policy == FULL:
        return [p for p in all_permutation_braids(n) if not p.is_identity()]
    if policy != RESTRICTED:
        raise ValueError(f"unknown candidate policy {policy!r}")
    # cut-head conjugators sit below tau^inf(H); add-tail ones below T*
    out = {}
    for bound in (tau_raw(y.factors[0], y.inf), right_complement(y.factors[-1])):
        for p in prefixes(bound):
            if not p.is_identity():
                out[p] = None
    return list(out)


def generate_invariant_set(
    x: CanonicalBraid,
    kind: str = USS,
    candidate_policy: str = RESTRICTED,
    budget: int = DEFAULT_BUDGET,
) -> InvariantSetResult:
    """USS(x) or RSSS(x) by closure under simple conjugators, with witnesses.

    Each element is stored with ``w`` such that ``w^-1 x w`` is that element.
    Raises :class:`BudgetExhausted` once more than ``budget`` elements are found.
    """
    if kind == USS:
        project = to_uss
    elif kind == RSSS:
        project = to_rsss
    else:
        raise ValueError(f"unknown invariant set kind {kind!r}")
    n = x.n
    acc = Conjugator(n)
    base, _ = project(x, acc)
    base_witness = acc.braid()

    witnesses: dict = {}
    orbits: list = []
    work: list = []
    stats = {"budget": budget, "conjugations": 0, "projections": 0}

    def add_orbit(start: CanonicalBraid, w: CanonicalBraid):
        orbit = _orbit_from(start)
        pieces = list(Conjugator(n).times(w).pieces)
        cur = w
        for i, e in enumerate(orbit.elements):
            if i:
                pieces.append((0, tau_raw(orbit.elements[i - 1].factors[0], orbit.elements[i - 1].inf)))
                cur = from_pieces(n, pieces)
            witnesses[e.key()] = cur
            work.append(e)
        orbits.append(orbit)
        if len(witnesses) > budget:
            raise BudgetExhausted(kind, budget, len(witnesses), len(orbits))

    add_orbit(base, base_witness)
    while work and base.factors:
        y = work.pop()
        wy = witnesses[y.key()]
        for g in _candidates(y, candidate_policy):
            stats["conjugations"] += 1
            z = from_pieces(n, [(-1, tau_raw(right_complement(g), 1)), (y.inf, None)]
                            + [(0, f) for f in y.factors] + [(0, g)])
            if z.key() in witnesses:
                continue
            stats["projections"] += 1
            acc = Conjugator(n)
            z2, _ = project(z, acc)
            if z2.key() in witnesses:
                continue
            w = Conjugator(n).times(wy).times_perm(g)
            w.pieces.extend(acc.pieces)
            add_orbit(z2, w.braid())

    orbits = sorted((_canonical_orbit(o) for o in orbits), key=lambda o: o.elements[0].key())
    return InvariantSetResult(kind, candidate_policy, base.inf, base.sup, orbits, witnesses, stats)


# ---------------------------------------------------------------------------
# power and cycle


def default_max_power(n: int) -> int:
    d = n * (n - 1) // 2
    return 2 * d * d


def default_max_cyclings(n: int, length: int, cap: int = 100_000) -> int:
    return max(1, min(math.factorial(n) * max(length, 1), cap))


@dataclasses.dataclass(frozen=True)
class PowerCycleResult:
    power: int
    cyclings: int
    braid: CanonicalBraid
    witness: CanonicalBraid

    def to_json(self) -> dict:
        return {
            "schema_version": nf.SCHEMA_VERSION,
            "found": True,
            "M": self.power,
            "N": self.cyclings,
            "y": nf.to_json(self.braid),
            "witness": nf.to_json(self.witness),
        }


def power_and_cycle(
    x: CanonicalBraid,
    max_power: int | None = None,
    max_cyclings: int | None = None,
    cycling_cap: int = 100_000,
) -> PowerCycleResult | None:
    """Least M such that cycling a super summit conjugate of x^M reaches a
    cyclically weighted braid within ``max_cyclings`` steps.

    Returns None when both budgets run out. The returned witness w satisfies
    w^-1 x^M w = y.
    """
    n = x.n
    if max_power is None:
        max_power = default_max_power(n)
    if max_power < 1:
        raise ValueError("max_power must be >= 1")
    xm = nf.identity_braid(n)
    for m in range(1, max_power + 1):
        xm = nf.multiply(xm, x)
        acc = Conjugator(n)
        y = _reduce_to_sss(xm, acc)
        budget = max_cyclings if max_cyclings is not None else default_max_cyclings(n, y.canonical_length, cycling_cap)
        if budget < 1:
            raise ValueError("max_cyclings must be >= 1")
        seen = set()
        for steps in itertools.count():
            if is_cyclically_weighted(y):
                return PowerCycleResult(m, steps, y, acc.braid())
            k = y.key()
            # a revisited state can never reach a new one
            if steps >= budget or k in seen:
                break
            seen.add(k)
            y, t = cycling(y)
            acc.times_perm(t)
    return None
