"""Acceptance criteria, one test each, with their time limits.

Every test prints a single ``criterion N: PASS|FAIL (seconds)`` line; the
conftest hook also lists the outcomes in the terminal summary.
"""

import random
import time
from contextlib import contextmanager

from conftest import F, random_class, random_sl2z
from torusfill.cutting import (
    canonical_cycle,
    canonical_cycle_even,
    cutting_cycle,
    evaluate_rl,
    is_odd_bipalindromic,
    is_real_hyperbolic,
    Realness,
)
from torusfill.factorizations import (
    ObstructionVerdict,
    TwistFactorization,
    commuting_matrices,
    factorization_real_obstruction,
    hurwitz_classes_two,
    hurwitz_move,
    pairs_equivalent,
    total_monodromy,
    two_twist_diophantine,
    two_twist_solutions,
)
from torusfill.fibration import OpenBookMonodromy, RealFilling, real_filling_verdict
from torusfill.lattice import (
    GeneratorWord,
    I,
    Mat2,
    PrimitiveClass,
    TorusFillError,
    deg_mod12,
    evaluate_word,
    recognize_positive_twist,
    twist_matrix,
)
from torusfill.real import (
    Involution,
    RealnessCertificate,
    check_certificate,
    iter_involutions,
    pairing_and_type,
    realness_by_search,
)

FIRST = TwistFactorization.of((3, 5), (1, 0))
SECOND = TwistFactorization.of((5, 8), (0, 1))
S = Mat2(-3, 5, -5, 8)


@contextmanager
def criterion(number, limit):
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        within = elapsed < limit
        status = "PASS" if ok and within else "FAIL"
        print(f"criterion {number}: {status} ({elapsed:.3f}s, limit {limit}s)")
    assert elapsed < limit, f"criterion {number} took {elapsed:.2f}s (limit {limit}s)"


def test_criterion_1_monodromy():
    with criterion(1, 1.0):
        assert total_monodromy(FIRST) == Mat2(-39, 25, -25, 16)


def test_criterion_2_realness_certificate():
    with criterion(2, 5.0):
        c, c2 = Mat2(5, -3, 8, -5), Mat2(-120, 77, -187, 120)
        assert check_certificate(F, c, c2)
        RealnessCertificate(Involution(c), Involution(c2), F)
        cert = realness_by_search(F, 200)
        assert cert is not None
        a, b = cert.c.m, cert.c_prime.m
        assert a @ a == I and b @ b == I and a.det == -1 and b.det == -1 and a @ b == F


def test_criterion_3_cutting_cycle():
    with criterion(3, 1.0):
        cyc = cutting_cycle(F)
        assert canonical_cycle(cyc.word) == (1, 3, 1, 3) and cyc.sign == -1
        assert cyc.witness.inverse() @ (-F) @ cyc.witness == evaluate_rl(cyc.word)
        ok, split = is_odd_bipalindromic(canonical_cycle(cyc.word))
        assert ok and split.first == (1,) and split.second == (3, 1, 3)


def test_criterion_4_diophantine_orbit():
    with criterion(4, 5.0):
        eq = two_twist_diophantine(F)
        assert (eq.A, eq.B, eq.C, eq.rhs) == (25, -55, 25, 25)
        sols = set(two_twist_solutions(F, 40))
        wanted = {PrimitiveClass(*v) for v in [(1, 0), (0, 1), (3, 5), (5, 8), (16, 25), (25, 39)]}
        assert wanted <= sols
        commuting = commuting_matrices(F, 200)
        assert S in commuting or -S in commuting
        assert S @ F == F @ S
        for w in sols:
            for k in (S, -S):
                image = k @ w
                if image.height() <= 40:
                    assert image in sols


def test_criterion_5_hurwitz_classes():
    with criterion(5, 5.0):
        hc = hurwitz_classes_two(F, 40)
        assert set(hc.representatives) == {FIRST, SECOND} and len(hc) == 2
        assert not pairs_equivalent(FIRST, SECOND).equivalent
        assert pairs_equivalent(FIRST, TwistFactorization.of((16, 25), (3, 5))).equivalent


def test_criterion_6_obstructions():
    with criterion(6, 1.0):
        for f in (FIRST, SECOND):
            r = factorization_real_obstruction(f)
            assert r.verdict is ObstructionVerdict.NOT_REAL
            assert (r.case_invariant.value, r.case_swapped.value) == (5, 10)


def test_criterion_7_real_filling_verdict():
    with criterion(7, 10.0):
        v = real_filling_verdict(OpenBookMonodromy(F, 2), 200)
        assert v.open_book.verdict is Realness.REAL
        assert v.filling.fillable and len(v.filling.classes) == 2
        assert v.real_filling is RealFilling.NONE


def _twist_round_trip(rng):
    w = random_class(rng, 500)
    k = rng.randint(1, 6)
    assert recognize_positive_twist(twist_matrix(w) ** k) == (w, k)


def _moves(rng):
    n = rng.randint(2, 6)
    f = TwistFactorization(tuple(random_class(rng, 8) for _ in range(n)))
    i = rng.randint(1, n - 1)
    for d in ("L", "R"):
        assert hurwitz_move(f, i, d).product == f.product
    g = TwistFactorization(f.cycles[:2])
    twice = hurwitz_move(hurwitz_move(g, 1, "L"), 1, "L")
    assert twice == g.conjugate(g.product.inverse())


def _cutting_invariance(rng):
    while True:
        m = random_sl2z(rng, 10)
        if abs(m.trace) > 2:
            break
    k = random_sl2z(rng, 10)
    n = k.inverse() @ m @ k
    cm, cn = cutting_cycle(m), cutting_cycle(n)
    for c, src in ((cm, m), (cn, n)):
        assert c.witness.inverse() @ src.scale(c.sign) @ c.witness == evaluate_rl(c.word)
    assert canonical_cycle_even(cm.word) == canonical_cycle_even(cn.word)


def _deg_word_independence(rng):
    letters = [rng.choice("ABab") for _ in range(rng.randint(0, 16))]
    word = GeneratorWord.from_letters("".join(letters))
    assert deg_mod12(evaluate_word(word)) == word.exponent_sum % 12


def _hyperbolic_agreement(rng):
    while True:
        x, y = random_class(rng, 10), random_class(rng, 10)
        m = twist_matrix(y) @ twist_matrix(x)
        if abs(m.trace) > 2:
            break
    cert = realness_by_search(m, 40)
    if cert is not None:
        assert is_real_hyperbolic(m).is_real


def _open_book_mod12(rng):
    n = rng.randint(0, 8)
    f = TwistFactorization(tuple(random_class(rng, 20) for _ in range(n)))
    OpenBookMonodromy(f.product, n)
    try:
        OpenBookMonodromy(f.product, n + rng.randint(1, 11))
    except TorusFillError:
        return
    raise AssertionError("inconsistent degree accepted")


def test_criterion_8_property_suites():
    with criterion(8, 60.0):
        suites = [
            _twist_round_trip,
            _moves,
            _cutting_invariance,
            _deg_word_independence,
            _hyperbolic_agreement,
            _open_book_mod12,
        ]
        for seed, suite in enumerate(suites):
            rng = random.Random(8000 + seed)
            for _ in range(200):
                suite(rng)
        count = 0
        for c in iter_involutions(30):
            assert pairing_and_type(c)[0] in (1, 2)
            count += 1
        assert count >= 100


def test_criterion_9_negative_control():
    with criterion(9, 10.0):
        m = Mat2(12, 5, 7, 3)
        assert is_real_hyperbolic(m).verdict is Realness.NOT_REAL
        assert realness_by_search(m, 500) is None
