"""Homological real structures on the torus.

A real structure acts on ``H_1(T^2) = Z^2`` as an involution of determinant
-1.  An element of SL(2, Z) is *real* when it is a product of two such
involutions.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator

from .lattice import (
    I,
    Mat2,
    PrimitiveClass,
    TorusFillError,
    intersection,
    primitive_form,
    require_sl2z,
)

DEFAULT_BOUND = 200


@dataclass(frozen=True, slots=True)
class Involution:
    m: Mat2

    def __post_init__(self):
        m = self.m
        if m.det != -1 or m.trace != 0 or m @ m != I:
            raise TorusFillError(f"{m} is not an involution of determinant -1")

    def __str__(self) -> str:
        return str(self.m)


@dataclass(frozen=True, slots=True)
class RealnessCertificate:
    """``target == c.m @ c_prime.m`` with both factors real structures."""

    c: Involution
    c_prime: Involution
    target: Mat2

    def __post_init__(self):
        if self.c.m @ self.c_prime.m != self.target:
            raise TorusFillError("certificate factors do not multiply to the target")


def check_certificate(target: Mat2, c: Mat2, c_prime: Mat2) -> bool:
    """Accept or reject a claimed decomposition ``target = c @ c_prime``."""
    try:
        RealnessCertificate(Involution(c), Involution(c_prime), target)
    except TorusFillError:
        return False
    return True


class PairingType(enum.Enum):
    SPLIT = "Split"
    NON_SPLIT = "NonSplit"


def _kernel_class(n: Mat2) -> PrimitiveClass:
    # n has rank exactly 1 here
    if n.a or n.b:
        v = (-n.b, n.a)
    else:
        v = (-n.d, n.c)
    return primitive_form(v)[0]


def eigen_lattice_basis(c: Involution) -> tuple[PrimitiveClass, PrimitiveClass]:
    """Generators of the +1 and -1 eigenlattices of ``c``."""
    return _kernel_class(c.m - I), _kernel_class(c.m + I)


def pairing_and_type(c: Involution) -> tuple[int, PairingType]:
    e_plus, e_minus = eigen_lattice_basis(c)
    pairing = intersection(e_plus, e_minus)
    return pairing, PairingType.SPLIT if pairing == 1 else PairingType.NON_SPLIT


def iter_involutions(bound: int) -> Iterator[Involution]:
    """All ``[[p, q], [r, -p]]`` with ``p^2 + q r = 1`` and entries in ``[-bound, bound]``.

    Order is lexicographic in ``(p, q, r)``.
    """
    if bound < 1:
        raise TorusFillError("involution bound must be at least 1")
    span = range(-bound, bound + 1)
    for p in span:
        rest = 1 - p * p
        for q in span:
            if q == 0:
                if rest == 0:
                    for r in span:
                        yield Involution(Mat2(p, 0, r, -p))
                continue
            r, rem = divmod(rest, q)
            if rem == 0 and -bound <= r <= bound:
                yield Involution(Mat2(p, q, r, -p))


def enumerate_involutions(bound: int) -> list[Involution]:
    return list(iter_involutions(bound))


def realness_by_search(m: Mat2, bound: int = DEFAULT_BOUND) -> RealnessCertificate | None:
    """Look for an involution ``c`` with entries in ``[-bound, bound]`` such that ``c m`` is one too.

    ``None`` means nothing was found within the bound; it is not a proof
    that ``m`` is not real.
    """
    require_sl2z(m)
    # For c = [[p, q], [r, -p]], c m c = m^-1 reduces to one linear equation.
    lin_p, lin_q, lin_r = m.a - m.d, m.c, m.b
    for c in iter_involutions(bound):
        x = c.m
        if lin_p * x.a + lin_q * x.b + lin_r * x.c != 0:
            continue
        other = x @ m
        if other @ other == I:
            return RealnessCertificate(c, Involution(other), m)
    return None


def _solve_on_pair(x: PrimitiveClass, y: PrimitiveClass, images) -> list[Involution]:
    """Involutions ``c`` with ``c [x y] = [u v]`` for each ``(u, v)`` in ``images``."""
    basis = Mat2(x.p, y.p, x.q, y.q)
    det = basis.det
    if det == 0:
        raise TorusFillError(f"degenerate pair ({x}), ({y})")
    adj = basis.adjugate()
    found = []
    for u, v in images:
        num = Mat2(u[0], v[0], u[1], v[1]) @ adj
        if any(e % det for e in num.entries()):
            continue
        cand = Mat2(*(e // det for e in num.entries()))
        if cand.det == -1 and cand @ cand == I:
            inv = Involution(cand)
            if inv not in found:
                found.append(inv)
    return found


def solve_structure_preserving(x: PrimitiveClass, y: PrimitiveClass) -> list[Involution]:
    """Involutions mapping ``x`` to ``+-x`` and ``y`` to ``+-y``."""
    xv, yv = x.vector(), y.vector()
    images = [
        ((s1 * xv[0], s1 * xv[1]), (s2 * yv[0], s2 * yv[1]))
        for s1 in (1, -1)
        for s2 in (1, -1)
    ]
    return _solve_on_pair(x, y, images)


def solve_structure_swapping(x: PrimitiveClass, y: PrimitiveClass) -> list[Involution]:
    """Involutions mapping ``x`` to ``+-y`` (and hence ``y`` to ``+-x``)."""
    xv, yv = x.vector(), y.vector()
    images = [
        ((s1 * yv[0], s1 * yv[1]), (s2 * xv[0], s2 * xv[1]))
        for s1 in (1, -1)
        for s2 in (1, -1)
    ]
    return _solve_on_pair(x, y, images)
