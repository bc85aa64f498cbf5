"""Genus-1 Lefschetz fibrations over the disk and their boundary open books.

A boundary mapping class of the once-holed torus is stored as its action on
homology together with its degree (number of positive twists in any
positive factorization).  The degree is only determined mod 12 by the
matrix, because the boundary twist equals ``(t_a t_b)^6`` and acts trivially
on homology; the pair ``(matrix, deg)`` determines the element.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field

from .cutting import (
    HyperbolicVerdict,
    Realness,
    canonical_cycle,
    cutting_cycle,
    format_cycle,
    is_odd_bipalindromic,
    is_real_hyperbolic,
)
from .factorizations import (
    HurwitzClasses,
    ObstructionVerdict,
    RealObstructionReport,
    TwistFactorization,
    commuting_matrices,
    factorization_real_obstruction,
    hurwitz_classes_two,
    pairs_equivalent,
    total_monodromy,
    two_twist_diophantine,
    two_twist_solutions,
)
from .lattice import (
    I,
    Mat2,
    PrimitiveClass,
    TorusFillError,
    deg_mod12,
    recognize_positive_twist,
    require_sl2z,
)
from .real import DEFAULT_BOUND, RealnessCertificate, check_certificate, realness_by_search


class FiberKind(enum.Enum):
    CLOSED_TORUS = "ClosedTorus"
    TORUS_WITH_BOUNDARY = "TorusWithBoundary"


@dataclass(frozen=True, slots=True)
class GenusOneFibration:
    cycles: tuple[PrimitiveClass, ...]
    fiber_kind: FiberKind = FiberKind.TORUS_WITH_BOUNDARY

    def factorization(self) -> TwistFactorization:
        return TwistFactorization(tuple(self.cycles))


@dataclass(frozen=True, slots=True)
class OpenBookMonodromy:
    matrix: Mat2
    deg: int

    def __post_init__(self):
        require_sl2z(self.matrix)
        if (self.deg - deg_mod12(self.matrix)) % 12:
            raise TorusFillError(
                f"deg {self.deg} is inconsistent with the matrix "
                f"(expected {deg_mod12(self.matrix)} mod 12)"
            )

    def __matmul__(self, other: OpenBookMonodromy) -> OpenBookMonodromy:
        return OpenBookMonodromy(self.matrix @ other.matrix, self.deg + other.deg)


BOUNDARY_TWIST = OpenBookMonodromy(I, 12)


def boundary_bundle(f: GenusOneFibration) -> Mat2:
    """Monodromy of the torus bundle over the boundary circle."""
    return total_monodromy(f.factorization())


def boundary_open_book(f: GenusOneFibration) -> OpenBookMonodromy:
    if f.fiber_kind is FiberKind.CLOSED_TORUS:
        raise TorusFillError(
            "closed-fiber boundary is a torus bundle, not an open book; use boundary_bundle"
        )
    return OpenBookMonodromy(total_monodromy(f.factorization()), len(f.cycles))


@dataclass(frozen=True, slots=True)
class OpenBookRealness:
    verdict: Realness
    certificate: RealnessCertificate | None = None
    hyperbolic: HyperbolicVerdict | None = None


def is_open_book_real(ob: OpenBookMonodromy, bound: int = DEFAULT_BOUND) -> OpenBookRealness:
    """Realness of the open book; the degree plays no role."""
    m = ob.matrix
    if abs(m.trace) > 2:
        hv = is_real_hyperbolic(m)
        return OpenBookRealness(hv.verdict, None, hv)
    cert = realness_by_search(m, bound)
    if cert is None:
        return OpenBookRealness(Realness.INCONCLUSIVE)
    return OpenBookRealness(Realness.REAL, cert)


GENUS_NOTE = "only fillings with the same fiber (genus 1, one boundary component) are considered"


@dataclass(frozen=True, slots=True)
class FillingReport:
    fillable: bool
    twist_count: int
    classes: tuple[TwistFactorization, ...]
    per_class_real: tuple[RealObstructionReport | None, ...]
    supported: bool
    notes: tuple[str, ...] = ()
    hurwitz: HurwitzClasses | None = field(default=None, compare=False)


def fillings(ob: OpenBookMonodromy, bound: int = DEFAULT_BOUND) -> FillingReport:
    """Positive factorizations filling ``ob``; every one has exactly ``ob.deg`` twists."""
    n, m = ob.deg, ob.matrix
    notes = [GENUS_NOTE]
    if n < 0:
        notes.append("negative degree: no positive factorization")
        return FillingReport(False, n, (), (), True, tuple(notes))
    if n == 0:
        if m == I:
            return FillingReport(True, 0, (TwistFactorization(()),), (None,), True, tuple(notes))
        return FillingReport(False, 0, (), (), True, tuple(notes))
    if n == 1:
        rec = recognize_positive_twist(m)
        if rec is not None and rec[1] == 1:
            notes.append("realness of single-twist fillings is not decided")
            return FillingReport(
                True, 1, (TwistFactorization((rec[0],)),), (None,), True, tuple(notes)
            )
        return FillingReport(False, 1, (), (), True, tuple(notes))
    if n == 2:
        hc = hurwitz_classes_two(m, bound)
        reps = hc.representatives
        if not hc.closed:
            notes.append("commuting-matrix closure check failed; classes may be incomplete")
        notes.append(f"factorizations searched with class entries up to {bound}")
        return FillingReport(
            bool(reps),
            2,
            reps,
            tuple(factorization_real_obstruction(r) for r in reps),
            True,
            tuple(notes),
            hc,
        )
    notes.append(f"enumeration of {n}-twist factorizations is not supported")
    return FillingReport(False, n, (), (), False, tuple(notes))


class RealFilling(enum.Enum):
    NONE = "none"
    TRIVIAL = "trivial"
    UNDECIDED = "undecided"
    OUT_OF_SCOPE = "out of scope"
    UNSUPPORTED = "unsupported"


@dataclass(frozen=True, slots=True)
class RealFillingVerdict:
    open_book: OpenBookRealness
    filling: FillingReport
    real_filling: RealFilling

    @property
    def summary(self) -> str:
        real = {
            Realness.REAL: "real open book",
            Realness.NOT_REAL: "non-real open book",
            Realness.INCONCLUSIVE: "open book realness undecided",
        }[self.open_book.verdict]
        f = self.filling
        if not f.supported:
            fill = f"fillings with {f.twist_count} twists not enumerated"
        elif not f.fillable:
            fill = "not fillable"
        else:
            k = len(f.classes)
            fill = {1: "one filling", 2: "two fillings"}.get(k, f"{k} fillings")
        rf = self.real_filling
        if rf is RealFilling.NONE:
            tail = "neither real" if len(f.classes) == 2 else "none real"
            if not f.fillable:
                tail = "no real filling"
        elif rf is RealFilling.TRIVIAL:
            tail = "the empty fibration is real"
        else:
            tail = f"real filling {rf.value}"
        return f"{real}; {fill}; {tail}"


def real_filling_verdict(ob: OpenBookMonodromy, bound: int = DEFAULT_BOUND) -> RealFillingVerdict:
    obr = is_open_book_real(ob, bound)
    fr = fillings(ob, bound)
    if not fr.supported:
        rf = RealFilling.UNSUPPORTED
    elif not fr.fillable:
        rf = RealFilling.NONE
    elif fr.twist_count == 0:
        rf = RealFilling.TRIVIAL
    elif fr.twist_count == 1:
        rf = RealFilling.OUT_OF_SCOPE
    elif all(r is not None and r.verdict is ObstructionVerdict.NOT_REAL for r in fr.per_class_real):
        rf = RealFilling.NONE
    else:
        rf = RealFilling.UNDECIDED
    return RealFillingVerdict(obr, fr, rf)


# ---------------------------------------------------------------------------
# The two-singular-fiber example and its checks

EXAMPLE_F = Mat2(-39, 25, -25, 16)
EXAMPLE_U = PrimitiveClass(3, 5)
EXAMPLE_V = PrimitiveClass(1, 0)
EXAMPLE_PAIR = (Mat2(5, -3, 8, -5), Mat2(-120, 77, -187, 120))
EXAMPLE_S = Mat2(-3, 5, -5, 8)
# second filling: cycles b and 5a + 8b, applied in this order
EXAMPLE_CLASSES = (
    TwistFactorization((EXAMPLE_U, EXAMPLE_V)),
    TwistFactorization((PrimitiveClass(5, 8), PrimitiveClass(0, 1))),
)
EXAMPLE_SOLUTIONS = tuple(
    PrimitiveClass(p, q) for p, q in [(1, 0), (0, 1), (3, 5), (5, 8), (16, 25), (25, 39)]
)
ENUMERATION_BOUND = 40


@dataclass(frozen=True, slots=True)
class Check:
    name: str
    passed: bool
    witness: dict[str, str]

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def to_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "witness": dict(self.witness)}


@dataclass(frozen=True, slots=True)
class ScenarioReport:
    checks: tuple[Check, ...]
    verdict: str

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "checks": [c.to_dict() for c in self.checks],
            "passed": self.passed,
            "verdict": self.verdict,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            wit = " ".join(f"{k}={v}" for k, v in c.witness.items())
            out.append(f"{c.status} {c.name}: {wit}")
        out.append(("PASS " if self.passed else "FAIL ") + self.verdict)
        return out


def _fmt_fact(f: TwistFactorization) -> str:
    return "(" + ",".join(f"({w})" for w in f.cycles) + ")"


def _guard(fn):
    try:
        return fn()
    except TorusFillError as exc:
        return exc


def paper_scenario(f_matrix: Mat2 = EXAMPLE_F, bound: int = DEFAULT_BOUND) -> ScenarioReport:
    """Run every computation of the two-singular-fiber example against ``f_matrix``.

    ``f_matrix`` is a test hook: anything other than the true monodromy makes
    at least one check fail.  Checks run in a fixed order and the report is
    deterministic.
    """
    checks: list[Check] = []

    def add(name, passed, **witness):
        checks.append(Check(name, bool(passed), {k: str(v) for k, v in witness.items()}))

    prod = total_monodromy(EXAMPLE_CLASSES[0])
    add("monodromy", prod == f_matrix, cycles=_fmt_fact(EXAMPLE_CLASSES[0]), product=prod)

    fib = GenusOneFibration((EXAMPLE_U, EXAMPLE_V))
    ob = _guard(lambda: OpenBookMonodromy(f_matrix, 2))
    deg_ok = isinstance(ob, OpenBookMonodromy) and boundary_open_book(fib) == ob
    add("deg", deg_ok, deg=2, deg_mod12=_guard(lambda: deg_mod12(f_matrix)))

    c, c2 = EXAMPLE_PAIR
    add("certificate-explicit", check_certificate(f_matrix, c, c2), c=c, c_prime=c2)

    cert = _guard(lambda: realness_by_search(f_matrix, bound))
    found = isinstance(cert, RealnessCertificate)
    add(
        "certificate-search",
        found,
        bound=bound,
        c=cert.c if found else "none",
        c_prime=cert.c_prime if found else "none",
    )

    cyc = _guard(lambda: cutting_cycle(f_matrix))
    if isinstance(cyc, TorusFillError):
        add("cutting-cycle", False, error=cyc)
        add("odd-bipalindromic", False, error=cyc)
    else:
        canon = canonical_cycle(cyc.word)
        add(
            "cutting-cycle",
            canon == (1, 3, 1, 3) and cyc.sign == -1,
            cycle=format_cycle(canon),
            sign=cyc.sign_char,
            witness=cyc.witness,
        )
        ok, split = is_odd_bipalindromic(canon)
        add(
            "odd-bipalindromic",
            ok and split is not None and split.first == (1,) and split.second == (3, 1, 3),
            split=split if split else "none",
        )

    eq = _guard(lambda: two_twist_diophantine(f_matrix))
    eq_ok = not isinstance(eq, TorusFillError) and (eq.A, eq.B, eq.C, eq.rhs) == (25, -55, 25, 25)
    add("diophantine", eq_ok, equation=eq)

    sols = two_twist_solutions(f_matrix, ENUMERATION_BOUND) if eq_ok else []
    commuting = commuting_matrices(f_matrix, bound) if eq_ok else []
    s_ok = any(s in (EXAMPLE_S, -EXAMPLE_S) for s in commuting)
    sol_set = set(sols)
    closed = all(
        (EXAMPLE_S @ w) in sol_set
        for w in sols
        if (EXAMPLE_S @ w).height() <= ENUMERATION_BOUND
    )
    add(
        "solution-orbit",
        eq_ok and set(EXAMPLE_SOLUTIONS) <= sol_set and closed,
        bound=ENUMERATION_BOUND,
        solutions=" ".join(f"({w})" for w in sols),
    )
    add(
        "commuting-S",
        s_ok and EXAMPLE_S @ f_matrix == f_matrix @ EXAMPLE_S,
        S=EXAMPLE_S,
        candidates=" ".join(str(s) for s in commuting) or "none",
    )

    hc = hurwitz_classes_two(f_matrix, ENUMERATION_BOUND) if eq_ok else None
    reps = set(hc.representatives) if hc else set()
    add(
        "hurwitz-classes",
        hc is not None and reps == set(EXAMPLE_CLASSES) and hc.closed,
        classes=" ".join(_fmt_fact(r) for r in (hc.representatives if hc else ())),
    )
    noneq = (
        prod == f_matrix
        and not pairs_equivalent(EXAMPLE_CLASSES[0], EXAMPLE_CLASSES[1]).equivalent
        if hc
        else False
    )
    add("non-equivalence", noneq, first=_fmt_fact(EXAMPLE_CLASSES[0]), second=_fmt_fact(EXAMPLE_CLASSES[1]))

    for label, fact in zip(("obstruction-1", "obstruction-2"), EXAMPLE_CLASSES):
        rep = factorization_real_obstruction(fact)
        add(
            label,
            rep.verdict is ObstructionVerdict.NOT_REAL
            and (rep.case_invariant.value, rep.case_swapped.value) == (5, 10)
            and fact.product == f_matrix,
            factorization=_fmt_fact(fact),
            invariant=rep.case_invariant,
            swapped=rep.case_swapped,
            verdict=rep.verdict.value,
        )

    if isinstance(ob, OpenBookMonodromy):
        rv = real_filling_verdict(ob, bound)
        final_ok = (
            rv.open_book.verdict is Realness.REAL
            and rv.filling.fillable
            and set(rv.filling.classes) == set(EXAMPLE_CLASSES)
            and rv.real_filling is RealFilling.NONE
        )
        summary = rv.summary
    else:
        final_ok, summary = False, f"invalid open book: {ob}"
    add("verdict", final_ok, open_book="(f,2)", summary=summary)
    return ScenarioReport(tuple(checks), summary)
