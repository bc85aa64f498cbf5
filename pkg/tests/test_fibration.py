import json
import random

import pytest

from conftest import F, random_class
from torusfill.cutting import Realness
from torusfill.factorizations import (
    ObstructionVerdict,
    TwistFactorization,
    concatenate,
    pairs_equivalent,
)
from torusfill.fibration import (
    BOUNDARY_TWIST,
    FiberKind,
    GenusOneFibration,
    OpenBookMonodromy,
    RealFilling,
    boundary_bundle,
    boundary_open_book,
    fillings,
    is_open_book_real,
    paper_scenario,
    real_filling_verdict,
)
from torusfill.lattice import I, Mat2, PrimitiveClass, TorusFillError, T_A, deg_mod12

FIRST = TwistFactorization.of((3, 5), (1, 0))
SECOND = TwistFactorization.of((5, 8), (0, 1))


def fib(*pairs, kind=FiberKind.TORUS_WITH_BOUNDARY):
    return GenusOneFibration(tuple(PrimitiveClass(p, q) for p, q in pairs), kind)


# -- open books --------------------------------------------------------------------


@pytest.mark.parametrize(
    "pairs, matrix, deg",
    [(((3, 5), (1, 0)), F, 2), ((), I, 0), (((1, 0),), T_A, 1)],
)
def test_boundary_open_book_examples(pairs, matrix, deg):
    assert boundary_open_book(fib(*pairs)) == OpenBookMonodromy(matrix, deg)


def test_closed_fiber_has_no_open_book():
    closed = fib((3, 5), (1, 0), kind=FiberKind.CLOSED_TORUS)
    with pytest.raises(TorusFillError, match="torus bundle"):
        boundary_open_book(closed)
    assert boundary_bundle(closed) == F


def test_open_book_degree_checked_mod_12():
    OpenBookMonodromy(F, 2)
    OpenBookMonodromy(F, 14)
    OpenBookMonodromy(F, -10)
    for d in (0, 1, 3, 13):
        with pytest.raises(TorusFillError):
            OpenBookMonodromy(F, d)
    with pytest.raises(TorusFillError):
        OpenBookMonodromy(Mat2(1, 1, 1, 1), 0)


def test_open_book_mod_12_on_random_factorizations():
    rng = random.Random(1212)
    for _ in range(200):
        n = rng.randint(0, 9)
        f = TwistFactorization(tuple(random_class(rng, 20) for _ in range(n)))
        ob = OpenBookMonodromy(f.product, n)
        assert deg_mod12(f.product) == n % 12
        with pytest.raises(TorusFillError):
            OpenBookMonodromy(f.product, n + rng.randint(1, 11))
        assert ob == boundary_open_book(GenusOneFibration(f.cycles))


def test_boundary_twist():
    ab = OpenBookMonodromy(Mat2(1, 1, 0, 1) @ Mat2(1, 0, -1, 1), 2)
    six = ab
    for _ in range(5):
        six = six @ ab
    assert six == BOUNDARY_TWIST
    assert (OpenBookMonodromy(F, 2) @ BOUNDARY_TWIST).deg == 14


def test_concatenation_adds_degrees():
    rng = random.Random(4)
    for _ in range(100):
        parts = [
            TwistFactorization(tuple(random_class(rng, 9) for _ in range(rng.randint(0, 3))))
            for _ in range(rng.randint(1, 4))
        ]
        whole = concatenate(parts)
        ob = boundary_open_book(GenusOneFibration(whole.cycles))
        assert ob.deg == sum(len(p) for p in parts)
        expected = OpenBookMonodromy(I, 0)
        for p in parts:
            # later parts act after earlier ones
            expected = boundary_open_book(GenusOneFibration(p.cycles)) @ expected
        assert ob == expected


# -- realness of open books ---------------------------------------------------------


def test_open_book_realness_examples():
    assert is_open_book_real(OpenBookMonodromy(F, 2)).verdict is Realness.REAL
    m = Mat2(12, 5, 7, 3)
    assert is_open_book_real(OpenBookMonodromy(m, deg_mod12(m))).verdict is Realness.NOT_REAL
    ident = is_open_book_real(OpenBookMonodromy(I, 0))
    assert ident.verdict is Realness.REAL and ident.certificate is not None


def test_open_book_realness_ignores_degree():
    for d in (2, 14, 26):
        assert is_open_book_real(OpenBookMonodromy(F, d)).verdict is Realness.REAL


def test_open_book_realness_inconclusive_for_parabolic_without_certificate():
    # -t_a^3 is parabolic; report whatever the search finds, never NotReal
    m = -Mat2(1, 3, 0, 1)
    r = is_open_book_real(OpenBookMonodromy(m, deg_mod12(m)), 3)
    assert r.verdict in (Realness.REAL, Realness.INCONCLUSIVE)


# -- fillings -------------------------------------------------------------------------


def test_fillings_of_f():
    rep = fillings(OpenBookMonodromy(F, 2), 40)
    assert rep.fillable and rep.twist_count == 2 and rep.supported
    assert set(rep.classes) == {FIRST, SECOND}
    assert all(r.verdict is ObstructionVerdict.NOT_REAL for r in rep.per_class_real)
    assert any("genus 1" in n for n in rep.notes)


def test_fillings_small_degrees():
    empty = fillings(OpenBookMonodromy(I, 0))
    assert empty.fillable and empty.classes == (TwistFactorization(()),)
    one = fillings(OpenBookMonodromy(T_A, 1))
    assert one.fillable and one.classes == (TwistFactorization.of((1, 0)),)
    double = Mat2(1, 2, 0, 1)
    assert not fillings(OpenBookMonodromy(double, 2 - 12)).fillable
    twelve = fillings(BOUNDARY_TWIST)
    assert not twelve.supported and twelve.twist_count == 12
    assert not fillings(OpenBookMonodromy(T_A @ T_A, 2 + 12)).supported


def test_filling_twist_count_is_the_degree():
    # the same matrix with another degree is another boundary element
    twelve = fillings(OpenBookMonodromy(I, 12))
    assert twelve.twist_count == 12 and not twelve.supported and twelve.classes == ()
    assert fillings(OpenBookMonodromy(F, 2)).twist_count == 2


def test_fillings_rediscover_short_factorizations():
    rng = random.Random(90)
    for _ in range(30):
        n = rng.randint(1, 2)
        f = TwistFactorization(tuple(random_class(rng, 6) for _ in range(n)))
        if n == 2 and f.cycles[0] == f.cycles[1]:
            continue
        rep = fillings(boundary_open_book(GenusOneFibration(f.cycles)), 40)
        assert rep.fillable
        if n == 1:
            assert rep.classes == (f,)
        else:
            assert any(pairs_equivalent(c, f).equivalent for c in rep.classes)


# -- headline verdicts -----------------------------------------------------------------


def test_real_filling_verdict_examples():
    v = real_filling_verdict(OpenBookMonodromy(F, 2), 200)
    assert v.open_book.verdict is Realness.REAL
    assert v.filling.fillable and len(v.filling.classes) == 2
    assert v.real_filling is RealFilling.NONE
    assert v.summary == "real open book; two fillings; neither real"
    ta = real_filling_verdict(OpenBookMonodromy(T_A, 1))
    assert ta.filling.fillable and ta.real_filling is RealFilling.OUT_OF_SCOPE
    ident = real_filling_verdict(OpenBookMonodromy(I, 0))
    assert ident.open_book.verdict is Realness.REAL
    assert ident.real_filling is RealFilling.TRIVIAL


@pytest.mark.parametrize("bound", [40, 100, 200])
def test_real_filling_verdict_stable_in_bound(bound):
    v = real_filling_verdict(OpenBookMonodromy(F, 2), bound)
    assert v.real_filling is RealFilling.NONE
    assert set(v.filling.classes) == {FIRST, SECOND}


# -- the worked scenario -----------------------------------------------------------------


def test_scenario_passes():
    report = paper_scenario()
    assert report.passed, report.lines()
    assert report.lines()[-1] == "PASS real open book; two fillings; neither real"
    names = [c.name for c in report.checks]
    assert names[:3] == ["monodromy", "deg", "certificate-explicit"]
    assert names[-1] == "verdict"


def test_scenario_is_deterministic():
    assert paper_scenario().to_json() == paper_scenario().to_json()


def test_scenario_json_shape():
    doc = json.loads(paper_scenario().to_json())
    assert doc["schema"] == 1 and doc["passed"] is True
    for check in doc["checks"]:
        assert set(check) == {"name", "status", "witness"}
        assert all(isinstance(v, str) for v in check["witness"].values())


@pytest.mark.parametrize(
    "perturbed",
    [Mat2(-39, 25, -25, 17), Mat2(-40, 25, -25, 16), -F, F.transpose(), Mat2(1, 1, 0, 1)],
)
def test_scenario_detects_perturbations(perturbed):
    report = paper_scenario(perturbed)
    assert not report.passed
    assert any(line.startswith("FAIL") for line in report.lines())
