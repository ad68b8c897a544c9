import random
from fractions import Fraction

import pytest

from freepoisson.automorphy import (
    ElementaryAut,
    TameWord,
    delta,
    delta_inverse,
    elem_inverse,
    elem_to_endo,
    invariant_quadratic,
    is_restricted_factor,
    normalize_generators,
    relation_check,
    stable_tameness_word,
    swap_endo,
    transposition_word,
    verify_stable_tameness,
    verify_wildness_witness,
    word_inverse,
    word_to_endo,
)
from freepoisson.poisson import (
    Endomorphism,
    PoissonElement,
    apply_endo,
    compose,
    poisson_bracket,
)
from freepoisson.sampling import (
    random_elementary,
    random_element,
    random_tame_word,
)

x1 = PoissonElement.variable(3, 1)
x2 = PoissonElement.variable(3, 2)
x3 = PoissonElement.variable(3, 3)


def test_elementary_validation():
    with pytest.raises(ValueError):
        ElementaryAut(1, Fraction(0), PoissonElement.zero(3))
    with pytest.raises(ValueError):
        ElementaryAut(4, Fraction(1), PoissonElement.zero(3))
    with pytest.raises(ValueError):
        ElementaryAut(1, Fraction(1), x1 * x2)


def test_elementary_to_endo_and_str():
    sigma = ElementaryAut(2, Fraction(1), x1 * x3)
    phi = elem_to_endo(sigma, 3)
    assert phi.images[1] == x2 + x1 * x3
    assert phi.images[0] == x1 and phi.images[2] == x3
    assert str(sigma) == "sigma(2, 1, x1*x3)"


def test_elementary_inverse():
    rng = random.Random(3)
    for _ in range(50):
        sigma = random_elementary(rng, 3, 2)
        inv = elem_inverse(sigma)
        lhs = compose(elem_to_endo(sigma, 3), elem_to_endo(inv, 3))
        assert lhs == Endomorphism.identity(3)
        rhs = compose(elem_to_endo(inv, 3), elem_to_endo(sigma, 3))
        assert rhs == Endomorphism.identity(3)


def test_word_composition_order():
    # factors act leftmost last: word (f, g) composes to f o g
    f = ElementaryAut(1, Fraction(1), x2)
    g = ElementaryAut(2, Fraction(1), x3)
    word = TameWord((f, g))
    phi = word_to_endo(word, 3)
    expected = compose(elem_to_endo(f, 3), elem_to_endo(g, 3))
    assert phi == expected
    assert phi.images[0] == x1 + x2


def test_word_inverse():
    rng = random.Random(13)
    for _ in range(25):
        word = random_tame_word(rng, 3, rng.randint(1, 4), 2)
        inv = word_inverse(word)
        assert compose(word_to_endo(word, 3), word_to_endo(inv, 3)) == (
            Endomorphism.identity(3)
        )


def test_transposition_word_equals_swap():
    for arity in (2, 3, 4):
        for p in range(1, arity + 1):
            for q in range(1, arity + 1):
                if p == q:
                    continue
                assert word_to_endo(transposition_word(p, q, arity), arity) == (
                    swap_endo(p, q, arity)
                )


def test_swap_endo_is_an_involution():
    s = swap_endo(1, 3, 3)
    assert compose(s, s) == Endomorphism.identity(3)
    assert s.images[0] == x3 and s.images[2] == x1 and s.images[1] == x2


def test_restricted_factor_predicate():
    assert is_restricted_factor(ElementaryAut(1, Fraction(2), x2 * x3))
    assert is_restricted_factor(ElementaryAut(2, Fraction(1), -x1))
    assert is_restricted_factor(ElementaryAut(3, Fraction(1), -x1))
    assert not is_restricted_factor(ElementaryAut(2, Fraction(1), x1))
    assert not is_restricted_factor(ElementaryAut(2, Fraction(2), -x1))
    assert not is_restricted_factor(ElementaryAut(3, Fraction(1), x1 * x1))


def test_normalize_generators_preserves_map_and_restricts():
    rng = random.Random(29)
    for _ in range(20):
        word = random_tame_word(rng, 3, rng.randint(1, 3), 2)
        norm = normalize_generators(word)
        assert word_to_endo(norm, 3) == word_to_endo(word, 3)
        assert all(is_restricted_factor(f) for f in norm.factors)


def test_relation_rule_1_same_index():
    first = ElementaryAut(2, Fraction(2), x1 * x3)
    second = ElementaryAut(2, Fraction(3), x3)
    report = relation_check(1, first=first, second=second)
    assert report.equal
    with pytest.raises(ValueError):
        relation_check(
            1,
            first=ElementaryAut(1, Fraction(1), x2),
            second=ElementaryAut(2, Fraction(1), x3),
        )


def test_relation_rule_2_cross_index():
    outer = ElementaryAut(1, Fraction(2), x3)
    inner = ElementaryAut(2, Fraction(1), x1 * x3)
    report = relation_check(2, outer=outer, inner=inner)
    assert report.equal
    with pytest.raises(ValueError):
        relation_check(
            2,
            outer=ElementaryAut(1, Fraction(1), x2),
            inner=ElementaryAut(2, Fraction(1), x3),
        )


def test_relation_rule_3_transposition():
    sigma = ElementaryAut(1, Fraction(1), x3 * x3)
    report = relation_check(3, p=1, q=2, sigma=sigma)
    assert report.equal
    report = relation_check(3, p=2, q=3, sigma=sigma)
    assert report.equal


def test_invariant_quadratic_form():
    w = invariant_quadratic()
    assert str(w) == "x1*x3 + [x2,x3]"
    assert w == x1 * x3 - poisson_bracket(x3, x2)


def test_delta_images_and_inverse():
    d = delta()
    assert str(d.images[0]) == "x1 - x3*[x1,x3] - [[x2,x3],x3]"
    assert d.images[2] == x3
    assert compose(d, delta_inverse()) == Endomorphism.identity(3)
    assert compose(delta_inverse(), d) == Endomorphism.identity(3)


def test_delta_fixes_the_invariant():
    d = delta()
    w = invariant_quadratic()
    assert apply_endo(d, w) == w


def test_delta_iterates_fix_the_invariant():
    d = delta()
    w = invariant_quadratic()
    square = compose(d, d)
    assert apply_endo(square, w) == w


def test_wildness_witness_report():
    report = verify_wildness_witness()
    assert report.passed
    assert len(report.checks) == 11
    assert all(ok for _, ok in report.checks)
    from freepoisson.envelope import CEnvElement

    assert report.corner_matrix.det() == CEnvElement.one((3,))
    lines = report.lines()
    assert len(lines) == 11
    assert all(line.startswith("PASS ") for line in lines)


def test_stable_tameness_word_shape():
    word = stable_tameness_word()
    assert len(word) == 8
    for f in word.factors:
        assert f.arity == 4
        assert f.alpha == 1


def test_stable_tameness_verification():
    report = verify_stable_tameness()
    assert report.passed
    assert report.stages
    for stage in report.stages:
        assert stage.ok
    assert report.final_equal


def test_stable_tameness_word_restricts_to_delta():
    word = stable_tameness_word()
    phi = word_to_endo(word, 4)
    d = delta(4)
    assert phi == d
