"""
Permutation braids of B_n and the lattice structure on them.

A permutation braid is stored as a tuple subclass holding the one-line image of
the underlying permutation, 0-based internally: ``a[i]`` is the final position
of the strand that starts at position ``i``. Text and JSON forms are 1-based.

Products read left to right with positional strand tracking, so the image of a
product ``ab`` is ``b[a[i]]``. Under this convention the inversion set
``{(i, j) : i < j, a[i] > a[j]}`` is exactly the set of strand pairs that cross,
and its size is the word length of the braid.

The hot-path helpers (``slide_pair``, ``compose``, ``tau_raw`` ...) take and return
plain tuples so the canonical-form code can avoid wrapper overhead.
"""

from __future__ import annotations

import bisect
import itertools
from typing import Iterable, Iterator, Sequence

LEFT = "left"
RIGHT = "right"


class PermutationBraid(tuple):
    """A positive braid whose strands cross pairwise at most once.

    The tuple entries are the 0-based one-line images. Use ``from_one_line``
    for the 1-based form and ``one_line`` to get it back.
    """

    __slots__ = ()

    def __new__(cls, images: Iterable[int]):
        return super().__new__(cls, images)

    @classmethod
    def from_one_line(cls, pi: Sequence[int]) -> PermutationBraid:
        p = cls(v - 1 for v in pi)
        if sorted(p) != list(range(len(p))):
            raise ValueError(f"not a permutation of 1..{len(p)}: {list(pi)}")
        return p

    @property
    def n(self) -> int:
        return len(self)

    @property
    def pi(self) -> tuple[int, ...]:
        return tuple(v + 1 for v in self)

    def one_line(self) -> list[int]:
        return [v + 1 for v in self]

    def __repr__(self) -> str:
        return f"PermutationBraid({self.one_line()})"

    def __str__(self) -> str:
        return "[" + ",".join(str(v + 1) for v in self) + "]"

    # tuple's + and * would silently build non-permutations
    def __add__(self, other):
        return NotImplemented

    def __mul__(self, other):
        return NotImplemented

    def __rmul__(self, other):
        return NotImplemented

    @property
    def length(self) -> int:
        return inversion_count(self)

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self))

    def is_delta(self) -> bool:
        n = len(self)
        return all(v == n - 1 - i for i, v in enumerate(self))

    def word(self) -> list[int]:
        """A positive word (1-based generator indices) representing this braid."""
        return permutation_word(self)


# ---------------------------------------------------------------------------
# constructors


def identity(n: int) -> PermutationBraid:
    return PermutationBraid(range(n))


def delta(n: int) -> PermutationBraid:
    return PermutationBraid(range(n - 1, -1, -1))


def generator(n: int, i: int) -> PermutationBraid:
    """The permutation braid of sigma_i (1-based index)."""
    if not 1 <= i <= n - 1:
        raise ValueError(f"generator index {i} out of range for n={n}")
    p = list(range(n))
    p[i - 1], p[i] = p[i], p[i - 1]
    return PermutationBraid(p)


def from_word(n: int, word: Iterable[int]) -> PermutationBraid | None:
    """Permutation braid of a positive word, or None if the word is not one."""
    p = list(range(n))
    length = 0
    for i in word:
        if not 1 <= i <= n - 1:
            raise ValueError(f"generator index {i} out of range for n={n}")
        p = [v + 1 if v == i - 1 else v - 1 if v == i else v for v in p]
        length += 1
    q = PermutationBraid(p)
    return q if inversion_count(q) == length else None


def all_permutation_braids(n: int) -> Iterator[PermutationBraid]:
    for p in itertools.permutations(range(n)):
        yield PermutationBraid(p)


def _check_same_n(a: Sequence[int], b: Sequence[int]) -> None:
    if len(a) != len(b):
        raise ValueError(f"braid index mismatch: {len(a)} vs {len(b)}")


# ---------------------------------------------------------------------------
# raw tuple-level arithmetic


def compose(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """Permutation of the product ab (a first, then b)."""
    return tuple(b[v] for v in a)


def inverse_raw(a: Sequence[int]) -> list[int]:
    inv = [0] * len(a)
    for i, v in enumerate(a):
        inv[v] = i
    return inv


def tau_raw(a: Sequence[int], power: int = 1) -> tuple[int, ...]:
    if power % 2 == 0:
        return tuple(a)
    m = len(a) - 1
    return tuple(m - a[m - i] for i in range(m + 1))


def inversion_count(a: Sequence[int]) -> int:
    """Number of crossings, i.e. the word length of the permutation braid."""
    seen: list[int] = []
    count = 0
    for v in a:
        pos = bisect.bisect(seen, v)
        count += len(seen) - pos
        seen.insert(pos, v)
    return count


def inversion_set(a: Sequence[int]) -> set[tuple[int, int]]:
    """Crossing strand pairs, 1-based starting positions."""
    n = len(a)
    return {(i + 1, j + 1) for i in range(n) for j in range(i + 1, n) if a[i] > a[j]}


def compose_in_Sn(a: PermutationBraid, b: PermutationBraid) -> PermutationBraid | None:
    """The product ab if it is again a permutation braid, else None."""
    _check_same_n(a, b)
    c = PermutationBraid(compose(a, b))
    if inversion_count(c) == inversion_count(a) + inversion_count(b):
        return c
    return None


# ---------------------------------------------------------------------------
# orders, starting and finishing sets


def is_left_subword(a: Sequence[int], b: Sequence[int]) -> bool:
    """a is a prefix of b: b = a z with z positive."""
    _check_same_n(a, b)
    # z = a^-1 b has image z[a[i]] = b[i]
    z = [0] * len(a)
    for i, v in enumerate(a):
        z[v] = b[i]
    return inversion_count(a) + inversion_count(z) == inversion_count(b)


def is_right_subword(a: Sequence[int], b: Sequence[int]) -> bool:
    """a is a suffix of b: b = z a with z positive."""
    _check_same_n(a, b)
    ainv = inverse_raw(a)
    z = [ainv[v] for v in b]
    return inversion_count(a) + inversion_count(z) == inversion_count(b)


def starting_set(a: Sequence[int]) -> set[int]:
    """{i : sigma_i is a prefix of a}, 1-based."""
    return {i + 1 for i in range(len(a) - 1) if a[i] > a[i + 1]}


def finishing_set(a: Sequence[int]) -> set[int]:
    """{i : sigma_i is a suffix of a}, 1-based."""
    inv = inverse_raw(a)
    return {i + 1 for i in range(len(a) - 1) if inv[i] > inv[i + 1]}


def right_complement(a: Sequence[int]) -> PermutationBraid:
    """a* with a a* = Delta."""
    m = len(a) - 1
    c = [0] * len(a)
    for i, v in enumerate(a):
        c[v] = m - i
    return PermutationBraid(c)


def left_complement(a: Sequence[int]) -> PermutationBraid:
    """*a with (*a) a = Delta."""
    m = len(a) - 1
    inv = inverse_raw(a)
    return PermutationBraid(inv[m - i] for i in range(len(a)))


def tau(a: Sequence[int], power: int = 1) -> PermutationBraid:
    """The flip sigma_i -> sigma_{n-i} applied ``power`` times."""
    return PermutationBraid(tau_raw(a, power))


def inverse_permutation(a: Sequence[int]) -> PermutationBraid:
    """Permutation braid of the reversed word (the inverse permutation)."""
    return PermutationBraid(inverse_raw(a))


# ---------------------------------------------------------------------------
# meets and joins


def _left_meet_raw(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    # peel common starting generators off both until none is left
    n = len(a)
    pa, pb = list(a), list(b)
    m = list(range(n))
    minv = list(range(n))
    stack = list(range(n - 1))
    while stack:
        i = stack.pop()
        if pa[i] > pa[i + 1] and pb[i] > pb[i + 1]:
            pa[i], pa[i + 1] = pa[i + 1], pa[i]
            pb[i], pb[i + 1] = pb[i + 1], pb[i]
            # m <- m sigma_i
            p, q = minv[i], minv[i + 1]
            m[p], m[q] = i + 1, i
            minv[i], minv[i + 1] = q, p
            stack.append(i)
            if i > 0:
                stack.append(i - 1)
            if i < n - 2:
                stack.append(i + 1)
    return tuple(m)


def meet(a: Sequence[int], b: Sequence[int], side: str = LEFT) -> PermutationBraid:
    """Greatest common prefix (side='left') or suffix (side='right')."""
    _check_same_n(a, b)
    if side == LEFT:
        return PermutationBraid(_left_meet_raw(a, b))
    if side == RIGHT:
        # word reversal maps suffixes to prefixes and inverts the permutation
        m = _left_meet_raw(inverse_raw(a), inverse_raw(b))
        return PermutationBraid(inverse_raw(m))
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def join(a: Sequence[int], b: Sequence[int], side: str = LEFT) -> PermutationBraid:
    """Least common multiple on the given side. Always exists below Delta."""
    _check_same_n(a, b)
    if side == LEFT:
        # x -> x* reverses the prefix order into the suffix order
        return left_complement(meet(right_complement(a), right_complement(b), RIGHT))
    if side == RIGHT:
        return right_complement(meet(left_complement(a), left_complement(b), LEFT))
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


# ---------------------------------------------------------------------------
# left-weightedness and local sliding


def is_weighted_pair(a: Sequence[int], b: Sequence[int]) -> bool:
    """a|b is left-weighted: every starting generator of b finishes a."""
    _check_same_n(a, b)
    ainv = inverse_raw(a)
    for i in range(len(a) - 1):
        if b[i] > b[i + 1] and ainv[i] < ainv[i + 1]:
            return False
    return True


def is_weighted_pair_by_meet(a: Sequence[int], b: Sequence[int]) -> bool:
    """Same predicate via the definition a* ^ b = e."""
    return meet(right_complement(a), b).is_identity()


def slide_pair(a: Sequence[int], b: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Replace (a, b) by (a s, s^-1 b) with s = a* ^ b.

    Returns None when s is trivial, i.e. the pair is already left-weighted.
    """
    n = len(a)
    pa = list(a)
    ia = [0] * n
    for i, v in enumerate(pa):
        ia[v] = i
    pb = list(b)
    last = n - 2
    stack = [i for i in range(n - 1) if pb[i] > pb[i + 1] and ia[i] < ia[i + 1]]
    if not stack:
        return None
    if n > 16:
        # in long braids the whole of a* or the whole of b usually moves; the
        # starting sets give a cheap necessary test before counting crossings
        top = n * (n - 1) // 2
        if len(stack) == sum(1 for i in range(n - 1) if ia[i] < ia[i + 1]):
            rest = tuple(pb[v] for v in reversed(pa))  # (a*)^-1 b
            if inversion_count(rest) == inversion_count(pb) - top + inversion_count(pa):
                return tuple(range(n - 1, -1, -1)), rest
        if len(stack) == sum(1 for i in range(n - 1) if pb[i] > pb[i + 1]):
            ab = tuple(pb[v] for v in pa)
            if inversion_count(ab) == inversion_count(pa) + inversion_count(pb):
                return ab, tuple(range(n))
    while stack:
        i = stack.pop()
        p, q = ia[i], ia[i + 1]
        if p > q or pb[i] < pb[i + 1]:
            continue
        # a <- a sigma_i, b <- sigma_i^-1 b
        pa[p], pa[q] = i + 1, i
        ia[i], ia[i + 1] = q, p
        bi = pb[i + 1]
        pb[i + 1] = pb[i]
        pb[i] = bi
        # only the neighbouring positions can have become eligible
        if i > 0 and pb[i - 1] > bi and ia[i - 1] < q:
            stack.append(i - 1)
        if i < last and pb[i + 1] > pb[i + 2] and p < ia[i + 2]:
            stack.append(i + 1)
    return tuple(pa), tuple(pb)


# ---------------------------------------------------------------------------
# words and enumeration


def permutation_word(a: Sequence[int]) -> list[int]:
    """Lexicographically greedy positive word for a permutation braid."""
    p = list(a)
    word = []
    n = len(p)
    i = 0
    while i < n - 1:
        if p[i] > p[i + 1]:
            p[i], p[i + 1] = p[i + 1], p[i]
            word.append(i + 1)
            i = max(i - 1, 0)
        else:
            i += 1
    return word


def prefixes(bound: Sequence[int]) -> list[PermutationBraid]:
    """All z with z a left subword of ``bound`` (including e and bound itself).

    Depth-first search over starting generators of the remaining cofactor.
    """
    n = len(bound)
    start = (tuple(range(n)), tuple(bound))
    seen = {start[0]}
    out = [PermutationBraid(start[0])]
    stack = [start]
    while stack:
        z, rest = stack.pop()
        for i in range(n - 1):
            if rest[i] > rest[i + 1]:
                # z <- z sigma_i, rest <- sigma_i^-1 rest
                z2 = tuple(i + 1 if v == i else i if v == i + 1 else v for v in z)
                if z2 in seen:
                    continue
                r2 = list(rest)
                r2[i], r2[i + 1] = r2[i + 1], r2[i]
                seen.add(z2)
                out.append(PermutationBraid(z2))
                stack.append((z2, tuple(r2)))
    return out


def parse_one_line(text: str) -> PermutationBraid:
    """Parse ``[p1,p2,...,pn]`` (1-based)."""
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ValueError(f"expected [p1,...,pn], got {text!r}")
    return PermutationBraid.from_one_line([int(t) for t in body[1:-1].split(",") if t.strip()])
