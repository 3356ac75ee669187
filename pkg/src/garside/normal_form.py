"""
Braid words and the left-weighted (Garside) normal form Delta^u x_1 ... x_k.

Negative letters are rewritten eagerly as sigma_i^-1 = Delta^-1 tau(sigma_i*) and
all Delta powers are pushed to the front, so the sliding core only ever sees
positive permutation braids. Right multiplication by a permutation braid is a
single backward pass of local slides; left multiplication is a forward pass.
"""

from __future__ import annotations

import dataclasses
import json
import re
from typing import Iterable, Sequence

from .perm import (
    PermutationBraid,
    delta,
    generator,
    is_weighted_pair,
    permutation_word,
    right_complement,
    slide_pair,
    tau_raw,
)

DELTA = "D"
DELTA_INV = "D^-1"
SCHEMA_VERSION = 1


class NoFactorsError(ValueError):
    """Head or tail requested from a pure power of Delta."""


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


# ---------------------------------------------------------------------------
# words


@dataclasses.dataclass(frozen=True)
class BraidWord:
    """Raw input: signed generator indices and Delta tokens.

    ``letters`` holds nonzero ints (``-3`` is sigma_3^-1) and the strings
    ``"D"`` / ``"D^-1"``.
    """

    n: int
    letters: tuple = ()

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"braid index must be >= 2, got {self.n}")
        for t in self.letters:
            if t in (DELTA, DELTA_INV):
                continue
            if not isinstance(t, int) or t == 0 or abs(t) > self.n - 1:
                raise ValueError(f"generator {t!r} out of range for n={self.n}")

    def __str__(self) -> str:
        return format_word(self)


_TOKEN = re.compile(r"\S+")


def parse_word(text: str) -> BraidWord:
    """Parse ``n=<int>; tok tok ...`` with tokens signed ints, ``D`` or ``D^-1``."""
    m = re.match(r"\s*n\s*=\s*(-?\d+)\s*;", text)
    if not m:
        raise ParseError("expected header 'n=<int>;'", 1, 1)
    n = int(m.group(1))
    if n < 2:
        raise ParseError(f"braid index must be >= 2, got {n}", 1, m.start(1) + 1)
    letters = []
    for tok in _TOKEN.finditer(text, m.end()):
        line = text.count("\n", 0, tok.start()) + 1
        col = tok.start() - (text.rfind("\n", 0, tok.start()) + 1) + 1
        s = tok.group()
        if s == DELTA:
            letters.append(DELTA)
            continue
        if s == DELTA_INV:
            letters.append(DELTA_INV)
            continue
        try:
            i = int(s)
        except ValueError:
            raise ParseError(f"bad token {s!r}", line, col) from None
        if i == 0 or abs(i) > n - 1:
            raise ParseError(f"generator {i} out of range for n={n}", line, col)
        letters.append(i)
    return BraidWord(n, tuple(letters))


def format_word(w: BraidWord) -> str:
    return f"n={w.n}; " + " ".join(str(t) for t in w.letters)


# ---------------------------------------------------------------------------
# sliding core on lists of raw tuples


def _append(factors: list, p: tuple) -> None:
    """Right-multiply a left-weighted list by a permutation braid, in place."""
    factors.append(p)
    i = len(factors) - 2
    while i >= 0:
        res = slide_pair(factors[i], factors[i + 1])
        if res is None:
            break
        factors[i], factors[i + 1] = res
        i -= 1


def _prepend(factors: list, p: tuple) -> None:
    """Left-multiply a left-weighted list by a permutation braid, in place."""
    factors.insert(0, p)
    for i in range(len(factors) - 1):
        res = slide_pair(factors[i], factors[i + 1])
        if res is None:
            break
        factors[i], factors[i + 1] = res


def _strip(n: int, u: int, factors: list) -> tuple[int, tuple]:
    """Pull leading Deltas into u and drop trailing identities."""
    top = tuple(range(n - 1, -1, -1))
    bottom = tuple(range(n))
    lo, hi = 0, len(factors)
    while lo < hi and factors[lo] == top:
        lo += 1
    while hi > lo and factors[hi - 1] == bottom:
        hi -= 1
    return u + lo, tuple(PermutationBraid(f) for f in factors[lo:hi])


def from_pieces(n: int, pieces: Iterable[tuple[int, Sequence[int]]]) -> CanonicalBraid:
    """Normal form of the product of Delta^e_j p_j over the given pieces."""
    pieces = list(pieces)
    total = 0
    shifted = []
    # p_j picks up tau^(sum of exponents to its right) when Deltas move left
    for e, p in reversed(pieces):
        if p is not None:
            shifted.append(tau_raw(p, total))
        total += e
    factors: list = []
    bottom = tuple(range(n))
    for p in reversed(shifted):
        if p != bottom:
            _append(factors, p)
    u, fs = _strip(n, total, factors)
    return CanonicalBraid(n, u, fs)


# ---------------------------------------------------------------------------
# canonical braids


@dataclasses.dataclass(frozen=True)
class CanonicalBraid:
    """Delta^inf * x_1 ... x_k in left-weighted form."""

    n: int
    inf: int
    factors: tuple = ()

    @property
    def sup(self) -> int:
        return self.inf + len(self.factors)

    @property
    def canonical_length(self) -> int:
        return len(self.factors)

    def head(self) -> PermutationBraid:
        if not self.factors:
            raise NoFactorsError("head of a pure Delta power")
        return self.factors[0]

    def tail(self) -> PermutationBraid:
        if not self.factors:
            raise NoFactorsError("tail of a pure Delta power")
        return self.factors[-1]

    def key(self) -> tuple:
        return (self.inf, self.factors)

    def __mul__(self, other: CanonicalBraid) -> CanonicalBraid:
        return multiply(self, other)

    def inverse(self) -> CanonicalBraid:
        return invert(self)

    def tau(self, power: int = 1) -> CanonicalBraid:
        return tau_conjugate(self, power)

    def is_identity(self) -> bool:
        return self.inf == 0 and not self.factors

    def to_word(self) -> BraidWord:
        return render(self)

    def to_json(self) -> dict:
        return to_json(self)

    def __str__(self) -> str:
        body = " ".join(str(f) for f in self.factors)
        return f"D^{self.inf} {body}".rstrip()


def identity_braid(n: int) -> CanonicalBraid:
    return CanonicalBraid(n, 0, ())


def delta_power(n: int, u: int) -> CanonicalBraid:
    return CanonicalBraid(n, u, ())


def from_permutation(p: Sequence[int]) -> CanonicalBraid:
    n = len(p)
    return from_pieces(n, [(0, tuple(p))])


def from_factors(n: int, u: int, factors: Iterable[Sequence[int]]) -> CanonicalBraid:
    """Normal form of Delta^u p_1 ... p_m for arbitrary permutation braids p_j."""
    return from_pieces(n, [(u, None)] + [(0, tuple(p)) for p in factors])


def normalize(w: BraidWord) -> CanonicalBraid:
    n = w.n
    pieces = []
    for t in w.letters:
        if t == DELTA:
            pieces.append((1, None))
        elif t == DELTA_INV:
            pieces.append((-1, None))
        elif t > 0:
            pieces.append((0, generator(n, t)))
        else:
            # sigma_i^-1 = sigma_i* Delta^-1 = Delta^-1 tau(sigma_i*)
            pieces.append((-1, tau_raw(right_complement(generator(n, -t)), 1)))
    return from_pieces(n, pieces)


def _check_same_n(x: CanonicalBraid, y: CanonicalBraid) -> None:
    if x.n != y.n:
        raise ValueError(f"braid index mismatch: {x.n} vs {y.n}")


def multiply(x: CanonicalBraid, y: CanonicalBraid) -> CanonicalBraid:
    _check_same_n(x, y)
    n = x.n
    # Delta^a X Delta^b Y = Delta^(a+b) tau^b(X) Y
    if len(x.factors) <= len(y.factors):
        factors = list(y.factors)
        for p in reversed(x.factors):
            _prepend(factors, tau_raw(p, y.inf))
    else:
        factors = [tau_raw(p, y.inf) for p in x.factors]
        for p in y.factors:
            _append(factors, p)
    u, fs = _strip(n, x.inf + y.inf, factors)
    return CanonicalBraid(n, u, fs)


def multiply_all(n: int, braids: Iterable[CanonicalBraid]) -> CanonicalBraid:
    out = identity_braid(n)
    for b in braids:
        out = multiply(out, b)
    return out


def invert(x: CanonicalBraid) -> CanonicalBraid:
    n, u, k = x.n, x.inf, len(x.factors)
    # (x_1...x_k)^-1 = x_k* tau(x_{k-1}*) ... tau^(k-1)(x_1*) Delta^-k
    pieces = [(0, tau_raw(right_complement(x.factors[j]), k - 1 - j)) for j in range(k - 1, -1, -1)]
    pieces.append((-k - u, None))
    return from_pieces(n, pieces)


def tau_conjugate(x: CanonicalBraid, power: int = 1) -> CanonicalBraid:
    """Delta^-power x Delta^power, applied factorwise."""
    if power % 2 == 0:
        return x
    return CanonicalBraid(x.n, x.inf, tuple(PermutationBraid(tau_raw(f, 1)) for f in x.factors))


def equals(x: CanonicalBraid, y: CanonicalBraid) -> bool:
    _check_same_n(x, y)
    return x.inf == y.inf and x.factors == y.factors


def conjugate(x: CanonicalBraid, w: CanonicalBraid) -> CanonicalBraid:
    """w^-1 x w."""
    return multiply(multiply(invert(w), x), w)


def power(x: CanonicalBraid, m: int) -> CanonicalBraid:
    if m < 0:
        return power(invert(x), -m)
    out = identity_braid(x.n)
    base = x
    while m:
        if m & 1:
            out = multiply(out, base)
        m >>= 1
        if m:
            base = multiply(base, base)
    return out


# ---------------------------------------------------------------------------
# validation and rendering


def validate(x: CanonicalBraid) -> None:
    """Raise ValueError unless x satisfies every normal-form invariant."""
    n = x.n
    top = tuple(range(n - 1, -1, -1))
    bottom = tuple(range(n))
    for f in x.factors:
        if not isinstance(f, PermutationBraid):
            raise ValueError(f"factor {f!r} is not a PermutationBraid")
        if len(f) != n or sorted(f) != list(bottom):
            raise ValueError(f"factor {f!r} is not a permutation of size {n}")
        if tuple(f) in (top, bottom):
            raise ValueError(f"factor {f} is trivial or Delta")
    for a, b in zip(x.factors, x.factors[1:]):
        if not is_weighted_pair(a, b):
            raise ValueError(f"pair {a} {b} is not left-weighted")


def is_valid(x: CanonicalBraid) -> bool:
    try:
        validate(x)
    except ValueError:
        return False
    return True


def render(x: CanonicalBraid) -> BraidWord:
    """Re-expand to letters: Delta tokens followed by positive factor words."""
    tok = DELTA if x.inf >= 0 else DELTA_INV
    letters = [tok] * abs(x.inf)
    for f in x.factors:
        letters.extend(permutation_word(f))
    return BraidWord(x.n, tuple(letters))


def to_json(x: CanonicalBraid) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "n": x.n,
        "inf": x.inf,
        "factors": [f.one_line() for f in x.factors],
    }


def from_json(data: dict | str) -> CanonicalBraid:
    if isinstance(data, str):
        data = json.loads(data)
    n = int(data["n"])
    x = CanonicalBraid(n, int(data["inf"]), tuple(PermutationBraid.from_one_line(f) for f in data["factors"]))
    validate(x)
    return x


def dumps(x: CanonicalBraid) -> str:
    return json.dumps(to_json(x), separators=(",", ":"))


def word_to_braid(text: str) -> CanonicalBraid:
    return normalize(parse_word(text))


def delta_braid(n: int) -> CanonicalBraid:
    return from_permutation(delta(n))
