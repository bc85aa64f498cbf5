"""Cutting period cycles of hyperbolic elements of SL(2, Z).

A hyperbolic ``M`` with positive trace is conjugate in SL(2, Z) to a
positive word ``R^a1 L^a2 ... R^a(2k-1) L^a2k`` with ``R = [[1, 1], [0, 1]]``
and ``L = [[1, 0], [1, 1]]``.  The exponent list is read off the periodic
tail of the continued fraction of the attracting fixed point of ``M``; the
conjugating matrix is the product of the pre-periodic partial quotients.

The word is determined by the conjugacy class up to rotations by an *even*
offset.  An odd rotation swaps the roles of R and L, which corresponds to
conjugating by ``[[0, 1], [1, 0]]`` (determinant -1).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from sympy import factorint

from .lattice import I, Mat2, PreconditionError, TorusFillError, require_sl2z

R = Mat2(1, 1, 0, 1)
L = Mat2(1, 0, 1, 1)


@dataclass(frozen=True, slots=True)
class QuadraticSurd:
    """The real number ``(P + sqrt(D)) / Q`` with ``Q | D - P^2``."""

    P: int
    Q: int
    D: int

    def __post_init__(self):
        if self.Q == 0:
            raise TorusFillError("surd denominator is zero")
        if self.D <= 0 or math.isqrt(self.D) ** 2 == self.D:
            raise TorusFillError(f"D = {self.D} must be a positive non-square")
        if (self.D - self.P * self.P) % self.Q:
            raise TorusFillError("surd is not normalized: Q must divide D - P^2")

    @classmethod
    def normalized(cls, P: int, Q: int, D: int) -> QuadraticSurd:
        """Rescale ``(P + sqrt(D)) / Q`` until ``Q | D - P^2``."""
        if (D - P * P) % Q:
            P, Q, D = P * abs(Q), Q * abs(Q), D * Q * Q
        return cls(P, Q, D)

    def floor(self) -> int:
        r = math.isqrt(self.D)
        # sqrt(D) is irrational, so (P + sqrt(D)) / Q lies strictly between
        # two consecutive multiples of 1/Q away from the integer grid.
        if self.Q > 0:
            return (self.P + r) // self.Q
        return -((self.P + r) // -self.Q) - 1

    def __float__(self) -> float:
        return (self.P + math.sqrt(self.D)) / self.Q

    def __str__(self) -> str:
        return f"({self.P} + sqrt({self.D}))/{self.Q}"


def _square_divisor(h: int, n: int) -> int:
    """Largest ``s`` with ``s | h`` and ``s^2 | n``."""
    s = 1
    for prime, exp in factorint(abs(h)).items():
        k = 0
        while k < exp and n % (prime ** (2 * (k + 1))) == 0:
            k += 1
        s *= prime**k
    return s


def fixed_point_surd(m: Mat2) -> QuadraticSurd:
    """Attracting fixed point of ``x -> (a x + b) / (c x + d)`` for trace > 2."""
    require_sl2z(m)
    if m.trace <= 2:
        raise PreconditionError(f"{m} is not hyperbolic with positive trace")
    if m.c == 0:
        raise PreconditionError("no quadratic fixed point: lower-left entry is zero")
    P, Q, D = m.a - m.d, 2 * m.c, m.trace**2 - 4
    h = math.gcd(P, Q)
    if h > 1:
        s = _square_divisor(h, D)
        P, Q, D = P // s, Q // s, D // (s * s)
    return QuadraticSurd.normalized(P, Q, D)


def cf_expansion(s: QuadraticSurd) -> tuple[list[int], list[int]]:
    """Continued fraction of a quadratic surd as ``(preperiod, period)``."""
    P, Q, D = s.P, s.Q, s.D
    seen: dict[tuple[int, int], int] = {}
    terms: list[int] = []
    while (P, Q) not in seen:
        seen[(P, Q)] = len(terms)
        a = QuadraticSurd(P, Q, D).floor()
        terms.append(a)
        P = a * Q - P
        Q = (D - P * P) // Q
    start = seen[(P, Q)]
    return terms[:start], terms[start:]


def evaluate_rl(word) -> Mat2:
    """``R^a1 L^a2 ... R^a(2k-1) L^a2k`` for an even-length positive word."""
    word = list(word)
    if not word or len(word) % 2:
        raise TorusFillError("RL word must have positive even length")
    if any(a < 1 for a in word):
        raise TorusFillError("RL word entries must be positive")
    result = I
    for i, a in enumerate(word):
        result = result @ (R if i % 2 == 0 else L) ** a
    return result


def _partial_quotient(a: int) -> Mat2:
    # x = a + 1/y as a Moebius map applied to y
    return Mat2(a, 1, 1, 0)


@dataclass(frozen=True, slots=True)
class CuttingCycle:
    """Cycle ``word`` and trace sign with ``witness^-1 (sign M) witness == evaluate_rl(word)``."""

    word: tuple[int, ...]
    sign: int
    witness: Mat2
    source: Mat2

    def __post_init__(self):
        if len(self.word) < 2 or len(self.word) % 2 or min(self.word) < 1:
            raise TorusFillError(f"invalid cutting cycle {list(self.word)}")
        if self.sign not in (1, -1):
            raise TorusFillError("sign must be +1 or -1")
        c = self.witness
        if c.det != 1 or c.inverse() @ self.source.scale(self.sign) @ c != evaluate_rl(self.word):
            raise TorusFillError("witness does not conjugate the source to the RL word")

    @property
    def sign_char(self) -> str:
        return "+" if self.sign > 0 else "-"

    def __str__(self) -> str:
        return f"{format_cycle(self.word)} sign={self.sign_char}"


def _require_hyperbolic(m: Mat2, what: str = "not hyperbolic") -> None:
    require_sl2z(m)
    if abs(m.trace) <= 2:
        raise PreconditionError(f"{m}: {what} (|trace| = {abs(m.trace)})")


def cutting_cycle(m: Mat2) -> CuttingCycle:
    _require_hyperbolic(m)
    sign = 1 if m.trace > 0 else -1
    n = m.scale(sign)
    pre, period = cf_expansion(fixed_point_surd(n))
    pre, period = list(pre), list(period)
    # The conjugator is the product of the pre-periodic quotient matrices,
    # which has determinant (-1)^len(pre); make that length even.
    if len(pre) % 2:
        if len(period) % 2:
            pre += period
        else:
            pre.append(period[0])
            period = period[1:] + period[:1]
    if len(period) % 2:
        period = period * 2
    base = evaluate_rl(period)
    target = n.trace
    word = list(period)
    power = base
    while power.trace < target:
        power = power @ base
        word += period
    if power.trace != target:
        raise TorusFillError(f"trace mismatch while building the cycle of {m}")
    witness = I
    for a in pre:
        witness = witness @ _partial_quotient(a)
    return CuttingCycle(tuple(word), sign, witness, m)


def _rotations(word, step: int = 1):
    n = len(word)
    return [tuple(word[i:]) + tuple(word[:i]) for i in range(0, n, step)]


def canonical_cycle(word) -> tuple[int, ...]:
    """Lexicographically least rotation (all offsets)."""
    return min(_rotations(tuple(word)))


def canonical_cycle_even(word) -> tuple[int, ...]:
    """Lexicographically least rotation by an even offset; an SL(2, Z)-conjugacy invariant."""
    return min(_rotations(tuple(word), 2))


def _is_palindrome(seq) -> bool:
    return seq == seq[::-1]


@dataclass(frozen=True, slots=True)
class BipalindromicSplit:
    rotation: int
    cut: int
    first: tuple[int, ...]
    second: tuple[int, ...]

    def __str__(self) -> str:
        return f"({','.join(map(str, self.first))})|({','.join(map(str, self.second))})"


def is_odd_bipalindromic(word) -> tuple[bool, BipalindromicSplit | None]:
    """Does some rotation split into two nonempty odd-length palindromes?"""
    word = tuple(word)
    n = len(word)
    for r in range(n):
        rot = word[r:] + word[:r]
        for cut in range(1, n, 2):
            first, second = rot[:cut], rot[cut:]
            if len(second) % 2 and _is_palindrome(first) and _is_palindrome(second):
                return True, BipalindromicSplit(r, cut, first, second)
    return False, None


class Realness(enum.Enum):
    REAL = "Real"
    NOT_REAL = "NotReal"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True, slots=True)
class HyperbolicVerdict:
    verdict: Realness
    cycle: CuttingCycle
    split: BipalindromicSplit | None

    @property
    def is_real(self) -> bool:
        return self.verdict is Realness.REAL


def is_real_hyperbolic(m: Mat2) -> HyperbolicVerdict:
    _require_hyperbolic(m, "criterion applies to hyperbolic elements only")
    cyc = cutting_cycle(m)
    ok, split = is_odd_bipalindromic(cyc.word)
    return HyperbolicVerdict(Realness.REAL if ok else Realness.NOT_REAL, cyc, split)


def hyperbolic_conjugate(m: Mat2, n: Mat2) -> bool:
    """SL(2, Z)-conjugacy test for hyperbolic matrices."""
    _require_hyperbolic(m)
    _require_hyperbolic(n)
    cm, cn = cutting_cycle(m), cutting_cycle(n)
    return cm.sign == cn.sign and canonical_cycle_even(cm.word) == canonical_cycle_even(cn.word)


def conjugator(m: Mat2, n: Mat2) -> Mat2 | None:
    """Some ``K`` in SL(2, Z) with ``K m K^-1 == n``, or ``None`` when they are not conjugate."""
    if not hyperbolic_conjugate(m, n):
        return None
    cm, cn = cutting_cycle(m), cutting_cycle(n)
    wm, wn = list(cm.word), list(cn.word)
    # find an even rotation r with rot(wm, r) == wn; rotating R^a1 L^a2 by two
    # letters is conjugation by R^a1 L^a2
    shift = I
    for r in range(0, len(wm), 2):
        if wm[r:] + wm[:r] == wn:
            break
        shift = shift @ evaluate_rl(wm[r:r + 2])
    else:
        raise TorusFillError("cycles matched canonically but no rotation found")
    # wn = shift^-1 wm shift; sign m = cm.w wm cm.w^-1 and likewise for n
    k = cn.witness @ shift.inverse() @ cm.witness.inverse()
    if k @ m @ k.inverse() != n:
        raise TorusFillError("conjugator verification failed")
    return k


def format_cycle(word) -> str:
    return "[" + ",".join(str(a) for a in word) + "]"


def parse_cycle(text: str) -> tuple[int, ...]:
    body = text.strip()
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1]
    try:
        word = tuple(int(tok) for tok in body.split(","))
    except ValueError:
        raise TorusFillError(f"cannot parse cycle {text!r}; expected '[a1,...,an]'") from None
    if not word or any(a < 1 for a in word):
        raise TorusFillError(f"cycle entries must be positive integers: {text!r}")
    return word
