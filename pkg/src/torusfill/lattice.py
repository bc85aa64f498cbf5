"""Exact 2x2 integer matrices, primitive classes on the torus, Dehn twists.

Homology of the torus is identified with Z^2 via a = (1, 0), b = (0, 1).
Matrices act on column vectors.

Composition convention: a factorization ``(w1, ..., wn)`` lists vanishing
cycles in the order they are applied, so its total monodromy is the matrix
product ``twist_matrix(wn) @ ... @ twist_matrix(w1)``.  Generator words are
written the same way as compositions: the word ``A B`` means ``t_a o t_b``
and evaluates to the plain product ``[t_a] @ [t_b]``.
"""

from __future__ import annotations

import math
import operator
import re
from dataclasses import dataclass
from typing import Iterable, Iterator


class TorusFillError(ValueError):
    """Base class for rejected inputs."""


class PreconditionError(TorusFillError):
    """An operation was called outside its domain (wrong determinant, not hyperbolic, ...)."""


@dataclass(frozen=True, slots=True)
class Mat2:
    """Integer matrix ``[[a, b], [c, d]]`` with arbitrary-precision entries."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, operator.index(getattr(self, name)))

    @classmethod
    def identity(cls) -> Mat2:
        return cls(1, 0, 0, 1)

    @classmethod
    def from_rows(cls, rows) -> Mat2:
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> int:
        return self.a + self.d

    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.a, self.b), (self.c, self.d))

    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def height(self) -> int:
        return max(abs(x) for x in self.entries())

    def __matmul__(self, other):
        if isinstance(other, Mat2):
            return Mat2(
                self.a * other.a + self.b * other.c,
                self.a * other.b + self.b * other.d,
                self.c * other.a + self.d * other.c,
                self.c * other.b + self.d * other.d,
            )
        if isinstance(other, PrimitiveClass):
            return PrimitiveClass(*self.apply(other.vector()))
        return NotImplemented

    def __neg__(self) -> Mat2:
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def __add__(self, other: Mat2) -> Mat2:
        return Mat2(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    def __sub__(self, other: Mat2) -> Mat2:
        return Mat2(self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d)

    def scale(self, k: int) -> Mat2:
        return Mat2(k * self.a, k * self.b, k * self.c, k * self.d)

    def __pow__(self, n: int) -> Mat2:
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = Mat2.identity()
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def apply(self, v: tuple[int, int]) -> tuple[int, int]:
        x, y = v
        return (self.a * x + self.b * y, self.c * x + self.d * y)

    def adjugate(self) -> Mat2:
        return Mat2(self.d, -self.b, -self.c, self.a)

    def inverse(self) -> Mat2:
        """Exact inverse; only defined on GL(2, Z)."""
        det = self.det
        if det == 1:
            return self.adjugate()
        if det == -1:
            return -self.adjugate()
        raise PreconditionError(f"matrix {self} is not invertible over Z (det {det})")

    def transpose(self) -> Mat2:
        return Mat2(self.a, self.c, self.b, self.d)

    @property
    def is_gl2z(self) -> bool:
        return self.det in (1, -1)

    @property
    def is_sl2z(self) -> bool:
        return self.det == 1

    def __str__(self) -> str:
        return format_matrix(self)


I = Mat2.identity()
T_A = Mat2(1, 1, 0, 1)
T_B = Mat2(1, 0, -1, 1)


def gl2z(a: int, b: int, c: int, d: int) -> Mat2:
    m = Mat2(a, b, c, d)
    if not m.is_gl2z:
        raise PreconditionError(f"{m} has determinant {m.det}, expected +-1")
    return m


def sl2z(a: int, b: int, c: int, d: int) -> Mat2:
    m = Mat2(a, b, c, d)
    require_sl2z(m)
    return m


def require_sl2z(m: Mat2) -> None:
    if m.det != 1:
        raise PreconditionError(f"{m} has determinant {m.det}, expected 1")


@dataclass(frozen=True, slots=True, order=True)
class PrimitiveClass:
    """Unoriented primitive homology class ``p a + q b``.

    The sign is normalized so that ``q > 0``, or ``q == 0`` and ``p > 0``;
    ``PrimitiveClass(-3, -5) == PrimitiveClass(3, 5)``.
    """

    p: int
    q: int

    def __post_init__(self):
        p, q = operator.index(self.p), operator.index(self.q)
        if math.gcd(p, q) != 1:
            raise TorusFillError(f"({p},{q}) is not a primitive class")
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    def vector(self) -> tuple[int, int]:
        return (self.p, self.q)

    def height(self) -> int:
        return max(abs(self.p), abs(self.q))

    def __str__(self) -> str:
        return f"{self.p},{self.q}"


CLASS_A = PrimitiveClass(1, 0)
CLASS_B = PrimitiveClass(0, 1)


def twist_matrix(w: PrimitiveClass, k: int = 1) -> Mat2:
    """Matrix of the k-th power of the positive Dehn twist about ``w``.

    The twist is ``I + N`` with ``N`` nilpotent, so the power is ``I + k N``.
    """
    p, q = w.p, w.q
    return Mat2(1 - k * p * q, k * p * p, -k * q * q, 1 + k * p * q)


def intersection(w1: PrimitiveClass, w2: PrimitiveClass) -> int:
    """Geometric intersection number ``|p1 q2 - q1 p2|`` of two classes."""
    return abs(w1.p * w2.q - w1.q * w2.p)


def primitive_form(x: tuple[int, int]) -> tuple[PrimitiveClass, int]:
    """Split a nonzero vector as ``+-multiplier * class``."""
    p, q = x
    g = math.gcd(p, q)
    if g == 0:
        raise TorusFillError("no primitive form for the zero vector")
    return PrimitiveClass(p // g, q // g), g


def _isqrt_exact(n: int) -> int | None:
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def recognize_positive_twist(m: Mat2) -> tuple[PrimitiveClass, int] | None:
    """Return ``(w, k)`` when ``m`` is the k-th power (k >= 1) of the positive twist about ``w``."""
    require_sl2z(m)
    # t_w^k - I = k * [[-pq, p^2], [-q^2, pq]]
    n11, n12, n21, n22 = m.a - 1, m.b, m.c, m.d - 1
    if n11 != -n22 or n12 < 0 or n21 > 0:
        return None
    k = math.gcd(n12, n21)
    if k == 0:
        return None
    p = _isqrt_exact(n12 // k)
    q = _isqrt_exact(-n21 // k)
    if p is None or q is None:
        return None
    if n11 > 0:
        q = -q
    w = PrimitiveClass(p, q)
    if twist_matrix(w, k) != m:
        return None
    return w, k


# ---------------------------------------------------------------------------
# Words in the generators t_a, t_b


GENERATORS = {"A": T_A, "B": T_B}


@dataclass(frozen=True, slots=True)
class GeneratorWord:
    """Word in ``t_a``, ``t_b`` stored as syllables ``(letter, exponent)``.

    Syllables are merged and zero exponents dropped, so long powers such as
    ``A^1000000`` stay cheap.
    """

    syllables: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        merged: list[list] = []
        for letter, exp in self.syllables:
            if letter not in GENERATORS:
                raise TorusFillError(f"unknown generator {letter!r}")
            exp = operator.index(exp)
            if merged and merged[-1][0] == letter:
                merged[-1][1] += exp
            else:
                merged.append([letter, exp])
            if merged[-1][1] == 0:
                merged.pop()
        object.__setattr__(self, "syllables", tuple((l, e) for l, e in merged))

    @classmethod
    def from_letters(cls, letters: Iterable[str]) -> GeneratorWord:
        """Build from letters ``A``, ``a`` (= A^-1), ``B``, ``b``."""
        syl = []
        for ch in letters:
            if ch in "AB":
                syl.append((ch, 1))
            elif ch in "ab":
                syl.append((ch.upper(), -1))
            elif not ch.isspace():
                raise TorusFillError(f"unknown letter {ch!r}")
        return cls(tuple(syl))

    def letters(self) -> Iterator[str]:
        for letter, exp in self.syllables:
            ch = letter if exp > 0 else letter.lower()
            for _ in range(abs(exp)):
                yield ch

    @property
    def exponent_sum(self) -> int:
        return sum(e for _, e in self.syllables)

    def __mul__(self, other: GeneratorWord) -> GeneratorWord:
        return GeneratorWord(self.syllables + other.syllables)

    def inverse(self) -> GeneratorWord:
        return GeneratorWord(tuple((l, -e) for l, e in reversed(self.syllables)))

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.syllables)

    def __str__(self) -> str:
        if not self.syllables:
            return "1"
        return " ".join(l if e == 1 else f"{l}^{e}" for l, e in self.syllables)


def evaluate_word(word: GeneratorWord) -> Mat2:
    """Left-to-right product of generator matrices."""
    result = I
    for letter, exp in word.syllables:
        result = result @ GENERATORS[letter] ** exp
    return result


# (t_a t_b)^3 = -I
MINUS_I_WORD = GeneratorWord((("A", 1), ("B", 1)) * 3)


def sl2z_word(m: Mat2) -> GeneratorWord:
    """Express ``m`` in SL(2, Z) as a word in ``t_a``, ``t_b``.

    Euclidean reduction on the first column: ``A^k @ X`` adds ``k`` times the
    second row to the first, ``B^k @ X`` subtracts ``k`` times the first row
    from the second.  The leftover ``+-[[1, n], [0, 1]]`` is ``A^n`` possibly
    preceded by ``(AB)^3 = -I``.
    """
    require_sl2z(m)
    applied: list[tuple[str, int]] = []  # left multipliers, innermost first
    x = m
    while x.c != 0:
        if x.a == 0:
            # det 1 forces c = +-1; A^c makes the top-left entry 1
            k = x.c
            applied.append(("A", k))
            x = GENERATORS["A"] ** k @ x
        elif abs(x.a) > abs(x.c):
            k = -(x.a // x.c)
            applied.append(("A", k))
            x = GENERATORS["A"] ** k @ x
        else:
            k = x.c // x.a
            applied.append(("B", k))
            x = GENERATORS["B"] ** k @ x
    # x = G_n ... G_1 m  =>  m = G_1^-1 ... G_n^-1 x
    undo = GeneratorWord(tuple((l, -e) for l, e in applied))
    if x.a == 1:
        tail = GeneratorWord((("A", x.b),))
    else:
        tail = MINUS_I_WORD * GeneratorWord((("A", -x.b),))
    word = undo * tail
    return word


def deg_mod12(m: Mat2) -> int:
    """Exponent sum of any word for ``m``, reduced mod 12."""
    return sl2z_word(m).exponent_sum % 12


# ---------------------------------------------------------------------------
# Text formats: matrix "a,b;c,d", class "p,q"

_INT = r"\s*([+-]?\d+)\s*"
_MATRIX_RE = re.compile(rf"^{_INT},{_INT};{_INT},{_INT}$")
_CLASS_RE = re.compile(rf"^{_INT},{_INT}$")


def parse_matrix(text: str) -> Mat2:
    m = _MATRIX_RE.match(text)
    if not m:
        raise TorusFillError(f"cannot parse matrix {text!r}; expected 'a,b;c,d'")
    return Mat2(*(int(g) for g in m.groups()))


def parse_class(text: str) -> PrimitiveClass:
    m = _CLASS_RE.match(text)
    if not m:
        raise TorusFillError(f"cannot parse class {text!r}; expected 'p,q'")
    return PrimitiveClass(int(m.group(1)), int(m.group(2)))


def format_matrix(m: Mat2) -> str:
    return f"{m.a},{m.b};{m.c},{m.d}"
