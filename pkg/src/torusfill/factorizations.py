"""Positive Dehn twist factorizations and their Hurwitz classes (length 2)."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Sequence

from .lattice import (
    I,
    Mat2,
    PrimitiveClass,
    TorusFillError,
    intersection,
    parse_class,
    primitive_form,
    recognize_positive_twist,
    require_sl2z,
    twist_matrix,
)
from .real import Involution, solve_structure_preserving, solve_structure_swapping


@dataclass(frozen=True, slots=True)
class TwistFactorization:
    """Vanishing cycles in the order they are applied (first applied first)."""

    cycles: tuple[PrimitiveClass, ...]
    product: Mat2 = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        cycles = tuple(self.cycles)
        object.__setattr__(self, "cycles", cycles)
        m = I
        for w in cycles:
            m = twist_matrix(w) @ m
        object.__setattr__(self, "product", m)

    @classmethod
    def of(cls, *pairs) -> TwistFactorization:
        return cls(tuple(PrimitiveClass(p, q) for p, q in pairs))

    def __len__(self) -> int:
        return len(self.cycles)

    def conjugate(self, k: Mat2) -> TwistFactorization:
        """Apply ``k`` to every cycle (global conjugation by ``k``)."""
        return TwistFactorization(tuple(k @ w for w in self.cycles))

    def __str__(self) -> str:
        return ";".join(str(w) for w in self.cycles)


def total_monodromy(f: TwistFactorization) -> Mat2:
    return f.product


class Direction(enum.Enum):
    L = "L"
    R = "R"


def hurwitz_move(f: TwistFactorization, i: int, direction: Direction | str) -> TwistFactorization:
    """Elementary Hurwitz move at positions ``i, i+1`` (1-based).

    ``L``: ``(x, y) -> (t_x^-1 y, x)``; ``R``: ``(x, y) -> (y, t_y x)``.
    """
    direction = Direction(direction)
    n = len(f.cycles)
    if not 1 <= i < n:
        raise TorusFillError(f"move index {i} out of range for length {n}")
    cyc = list(f.cycles)
    x, y = cyc[i - 1], cyc[i]
    if direction is Direction.L:
        cyc[i - 1], cyc[i] = twist_matrix(x).inverse() @ y, x
    else:
        cyc[i - 1], cyc[i] = y, twist_matrix(y) @ x
    return TwistFactorization(tuple(cyc))


# ---------------------------------------------------------------------------
# Hurwitz equivalence for length 2


@dataclass(frozen=True, slots=True)
class HurwitzWitness:
    """``Q == (P after `moves` L-moves at position 1).conjugate(K)``; ``signs`` as solved."""

    moves: int
    K: Mat2
    signs: tuple[int, int]

    def apply(self, p: TwistFactorization) -> TwistFactorization:
        for _ in range(self.moves):
            p = hurwitz_move(p, 1, Direction.L)
        return p.conjugate(self.K)


@dataclass(frozen=True, slots=True)
class HurwitzVerdict:
    equivalent: bool
    witness: HurwitzWitness | None = None


def _column_matrix(x: PrimitiveClass, y: PrimitiveClass) -> Mat2:
    return Mat2(x.p, y.p, x.q, y.q)


def _conjugators(src: TwistFactorization, dst: TwistFactorization):
    """All ``(K, signs)`` in SL(2, Z) with ``K x = +-x'`` and ``K y = +-y'``."""
    (x, y), (x2, y2) = src.cycles, dst.cycles
    basis = _column_matrix(x, y)
    det = basis.det
    adj = basis.adjugate()
    for s1 in (1, -1):
        for s2 in (1, -1):
            num = Mat2(s1 * x2.p, s2 * y2.p, s1 * x2.q, s2 * y2.q) @ adj
            if any(e % det for e in num.entries()):
                continue
            k = Mat2(*(e // det for e in num.entries()))
            if k.det == 1:
                yield k, (s1, s2)


def pairs_equivalent(p: TwistFactorization, q: TwistFactorization) -> HurwitzVerdict:
    """Decide Hurwitz equivalence (moves plus global conjugation) of two length-2 factorizations.

    Two L-moves compose to conjugation by the inverse product, so every
    factorization in the orbit of ``P`` is ``K P`` or ``K L(P)`` for some
    ``K`` in SL(2, Z) commuting with the product.
    """
    if len(p) != 2 or len(q) != 2:
        raise TorusFillError("pairs_equivalent needs factorizations of length 2")
    if p.product != q.product:
        raise TorusFillError("factorizations have different products")
    candidates = [p, hurwitz_move(p, 1, Direction.L)]
    for moves, cand in enumerate(candidates):
        if cand == q:
            return HurwitzVerdict(True, HurwitzWitness(moves, I, (1, 1)))
    x, y = p.cycles
    if x == y:
        # t_x^2 has the single factorization (x, x)
        return HurwitzVerdict(False)
    if intersection(*p.cycles) != intersection(*q.cycles):
        return HurwitzVerdict(False)
    for moves, cand in enumerate(candidates):
        for k, signs in _conjugators(cand, q):
            witness = HurwitzWitness(moves, k, signs)
            if witness.apply(p) == q:
                return HurwitzVerdict(True, witness)
    return HurwitzVerdict(False)


# ---------------------------------------------------------------------------
# Two-twist factorizations through a binary quadratic equation


@dataclass(frozen=True, slots=True)
class QuadraticEquation:
    """``A x^2 + B x y + C y^2 == rhs``."""

    A: int
    B: int
    C: int
    rhs: int

    def value(self, x: int, y: int) -> int:
        return self.A * x * x + self.B * x * y + self.C * y * y

    def holds(self, x: int, y: int) -> bool:
        return self.value(x, y) == self.rhs

    @property
    def discriminant(self) -> int:
        return self.B * self.B - 4 * self.A * self.C

    def __str__(self) -> str:
        def term(coef, mono):
            if coef == 0:
                return None
            mag = abs(coef)
            body = mono if mag == 1 else f"{mag}{mono}"
            return ("-" if coef < 0 else "+", body)

        parts = [t for t in (term(self.A, "α²"), term(self.B, "αβ"), term(self.C, "β²")) if t]
        if not parts:
            lhs = "0"
        else:
            sign, body = parts[0]
            lhs = ("-" if sign == "-" else "") + body
            for sign, body in parts[1:]:
                lhs += f" {sign} {body}"
        return f"{lhs} = {self.rhs}"


def two_twist_diophantine(m: Mat2) -> QuadraticEquation:
    """Equation on ``(α, β)`` saying ``twist(α, β)^-1 m`` has trace 2."""
    require_sl2z(m)
    return QuadraticEquation(-m.c, m.a - m.d, m.b, 2 - m.trace)


def _classes_up_to(bound: int):
    for q in range(0, bound + 1):
        for p in range(-bound, bound + 1):
            if (q > 0 or p > 0) and math.gcd(p, q) == 1:
                yield PrimitiveClass(p, q)


def _class_key(w: PrimitiveClass):
    return (w.height(), w.q, w.p)


def factorization_key(f: TwistFactorization):
    """Sort key: by the last-applied cycle, then by the rest (small heights first)."""
    return tuple(_class_key(w) for w in reversed(f.cycles))


def two_twist_solutions(m: Mat2, bound: int) -> list[PrimitiveClass]:
    """Primitive classes with entries at most ``bound`` solving the two-twist equation."""
    eq = two_twist_diophantine(m)
    sols = [w for w in _classes_up_to(bound) if eq.holds(w.p, w.q)]
    sols.sort(key=_class_key)
    return sols


def enumerate_two_twist_factorizations(m: Mat2, bound: int) -> list[TwistFactorization]:
    """All ``(w1, w2)`` with ``t_w2 t_w1 == m`` and class entries at most ``bound``.

    Exhaustive within the bound only; solutions of larger height are not
    searched for.
    """
    found = []
    for w2 in two_twist_solutions(m, bound):
        rec = recognize_positive_twist(twist_matrix(w2).inverse() @ m)
        if rec is None:
            continue
        w1, k = rec
        if k == 1 and w1.height() <= bound:
            found.append(TwistFactorization((w1, w2)))
    found.sort(key=factorization_key)
    return found


def commuting_matrices(m: Mat2, bound: int) -> list[Mat2]:
    """Hyperbolic ``S`` in SL(2, Z) commuting with ``m`` with least ``|trace|``.

    Commuting matrices are ``t I + s N`` with ``N = [[(a-d)/g, b/g], [c/g, 0]]``;
    ``s`` ranges over ``1..bound`` (both signs) and ``t`` solves ``det == 1``.
    """
    require_sl2z(m)
    e, f_, h = m.a - m.d, m.b, m.c
    g = math.gcd(e, f_, h)
    if g == 0:
        return []
    e, f_, h = e // g, f_ // g, h // g
    best: list[Mat2] = []
    best_trace = None
    for s in range(1, bound + 1):
        for s_signed in (s, -s):
            # det(t I + s N) = t^2 + t s e - s^2 f h = 1
            disc = (s_signed * e) ** 2 + 4 * (1 + s_signed * s_signed * f_ * h)
            if disc < 0:
                continue
            r = math.isqrt(disc)
            if r * r != disc:
                continue
            for root in {r, -r}:
                num = -s_signed * e + root
                if num % 2:
                    continue
                t = num // 2
                k = Mat2(t + s_signed * e, s_signed * f_, s_signed * h, t)
                if k.det != 1 or abs(k.trace) <= 2:
                    continue
                tr = abs(k.trace)
                if best_trace is None or tr < best_trace:
                    best, best_trace = [k], tr
                elif tr == best_trace and k not in best:
                    best.append(k)
    best.sort(key=lambda k: (k.trace < 0, k.entries()))
    return best


@dataclass(frozen=True, slots=True)
class HurwitzClasses:
    representatives: tuple[TwistFactorization, ...]
    members: tuple[tuple[TwistFactorization, ...], ...]
    commuting: tuple[Mat2, ...]
    closed: bool
    bound: int

    def __len__(self) -> int:
        return len(self.representatives)


def hurwitz_classes_two(m: Mat2, bound: int) -> HurwitzClasses:
    """Hurwitz classes of two-twist factorizations of ``m`` found within ``bound``.

    ``closed`` reports that applying the least hyperbolic commuting matrices
    to each representative lands in the same class, and that they map the
    enumerated set into itself wherever the image stays within the bound.
    """
    facts = enumerate_two_twist_factorizations(m, bound)
    reps: list[TwistFactorization] = []
    groups: list[list[TwistFactorization]] = []
    for f in facts:
        for rep, grp in zip(reps, groups):
            if pairs_equivalent(rep, f).equivalent:
                grp.append(f)
                break
        else:
            reps.append(f)
            groups.append([f])
    commuting = commuting_matrices(m, bound)
    closed = True
    known = set(facts)
    for s in commuting:
        for rep in reps:
            if not pairs_equivalent(rep, rep.conjugate(s)).equivalent:
                closed = False
        for f in facts:
            img = f.conjugate(s)
            if max(w.height() for w in img.cycles) <= bound and img not in known:
                closed = False
    return HurwitzClasses(
        tuple(reps), tuple(tuple(g) for g in groups), tuple(commuting), closed, bound
    )


# ---------------------------------------------------------------------------
# Realness obstruction for a two-twist factorization


class CaseStatus(enum.Enum):
    OBSTRUCTED = "Obstructed"
    OPEN = "Open"
    DEGENERATE = "Degenerate"


class ObstructionVerdict(enum.Enum):
    NOT_REAL = "NotReal"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True, slots=True)
class CaseResult:
    status: CaseStatus
    value: int | None

    def __str__(self) -> str:
        return self.status.value if self.value is None else f"{self.status.value}({self.value})"


@dataclass(frozen=True, slots=True)
class RealObstructionReport:
    """Both ways a real structure could act on the two critical points.

    ``case_invariant``: both vanishing cycles invariant, measured by their
    intersection number.  ``case_swapped``: cycles exchanged, measured by the
    intersection of the primitive forms of ``x + y`` and ``x - y``.  A value
    above 2 rules the case out.  The solver lists give the homological
    structures realising each case, as corroborating evidence.
    """

    case_invariant: CaseResult
    case_swapped: CaseResult
    verdict: ObstructionVerdict
    preserving: tuple[Involution, ...]
    swapping: tuple[Involution, ...]


def factorization_real_obstruction(f: TwistFactorization) -> RealObstructionReport:
    if len(f) != 2:
        raise TorusFillError("obstruction is defined for factorizations of length 2")
    x, y = f.cycles
    inter = intersection(x, y)
    invariant = CaseResult(CaseStatus.OBSTRUCTED if inter > 2 else CaseStatus.OPEN, inter)
    if x == y:
        swapped = CaseResult(CaseStatus.DEGENERATE, None)
        preserving: tuple[Involution, ...] = ()
        swapping: tuple[Involution, ...] = ()
    else:
        values = []
        for sy in (1, -1):
            plus = primitive_form((x.p + sy * y.p, x.q + sy * y.q))[0]
            minus = primitive_form((x.p - sy * y.p, x.q - sy * y.q))[0]
            values.append(intersection(plus, minus))
        low = min(values)
        swapped = CaseResult(CaseStatus.OBSTRUCTED if low > 2 else CaseStatus.OPEN, low)
        preserving = tuple(solve_structure_preserving(x, y))
        swapping = tuple(solve_structure_swapping(x, y))
    obstructed = invariant.status is CaseStatus.OBSTRUCTED and swapped.status in (
        CaseStatus.OBSTRUCTED,
        CaseStatus.DEGENERATE,
    )
    verdict = ObstructionVerdict.NOT_REAL if obstructed else ObstructionVerdict.INCONCLUSIVE
    return RealObstructionReport(invariant, swapped, verdict, preserving, swapping)


def parse_factorization(text: str) -> TwistFactorization:
    """``"p,q;p,q;..."``; the empty string is the empty factorization."""
    text = text.strip()
    if not text:
        return TwistFactorization(())
    return TwistFactorization(tuple(parse_class(part) for part in text.split(";")))


def concatenate(parts: Sequence[TwistFactorization]) -> TwistFactorization:
    cycles: tuple[PrimitiveClass, ...] = ()
    for p in parts:
        cycles += p.cycles
    return TwistFactorization(cycles)
