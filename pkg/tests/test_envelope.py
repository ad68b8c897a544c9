import random
from fractions import Fraction

import pytest

from freepoisson.envelope import (
    CEnvElement,
    CEnvMatrix,
    EnvElement,
    cenv_of_bracket_free,
    eta_e,
    h_of,
    induced_endo_e,
    m_of,
    project_pi_e,
)
from freepoisson.poisson import Endomorphism, PoissonElement, poisson_bracket
from freepoisson.sampling import (
    random_bracket_free,
    random_cenv_element,
    random_element,
    random_env_element,
)

x1 = PoissonElement.variable(3, 1)
x2 = PoissonElement.variable(3, 2)
x3 = PoissonElement.variable(3, 3)
L3 = (1, 2, 3)


def test_m_of_and_printing():
    assert str(m_of(x1 * x2 + x3)) == "M[x3 + x1*x2]"
    assert str(EnvElement.one(3)) == "1"
    assert str(EnvElement.zero(3)) == "0"


def test_h_of_generator_and_word():
    assert str(h_of(x1)) == "H[x1]"
    assert str(h_of(poisson_bracket(x1, x2))) == "H[x1]*H[x2] + M[-1]*H[x2]*H[x1]"


def test_h_of_is_a_derivation_on_products():
    # h(ab) = M[a] h(b) + M[b] h(a)
    a = x1 * x2
    b = x3
    assert h_of(a * b) == m_of(a) * h_of(b) + m_of(b) * h_of(a)
    assert str(h_of(x1 * x2)) == "M[x2]*H[x1] + M[x1]*H[x2]"


def test_h_of_derivation_random():
    rng = random.Random(11)
    for _ in range(40):
        a = random_element(rng, 3, 2)
        b = random_element(rng, 3, 2)
        assert h_of(a * b) == m_of(a) * h_of(b) + m_of(b) * h_of(a)
        assert m_of(a * b) == m_of(a) * m_of(b)


def test_normal_form_pushes_h_past_m():
    # H[a] M[b] = M[{a,b}] + M[b] H[a]
    lhs = h_of(x1) * m_of(x2)
    rhs = m_of(poisson_bracket(x1, x2)) + m_of(x2) * h_of(x1)
    assert lhs == rhs
    assert str(lhs) == "M[[x1,x2]] + M[x2]*H[x1]"


def test_normal_form_words_stay_sorted_by_construction():
    u = h_of(x2) * h_of(x1)
    # no reordering of H letters happens, only M factors move left
    assert [w for w, _ in u.sorted_terms()] == [(2, 1)]


def test_envelope_associativity_random():
    rng = random.Random(13)
    for _ in range(25):
        u = random_env_element(rng, 3, 2, 2)
        v = random_env_element(rng, 3, 2, 2)
        w = random_env_element(rng, 3, 2, 2)
        assert (u * v) * w == u * (v * w)
        assert u * (v + w) == u * v + u * w


def test_h_of_respects_lie_bracket():
    rng = random.Random(17)
    for _ in range(30):
        a = random_element(rng, 3, 2)
        b = random_element(rng, 3, 2)
        lhs = h_of(poisson_bracket(a, b))
        rhs = h_of(a) * h_of(b) - h_of(b) * h_of(a)
        assert lhs == rhs


def test_cenv_constructors_and_printing():
    m3 = CEnvElement.m_var(L3, 3)
    h3 = CEnvElement.h_var(L3, 3)
    e = CEnvElement.one(L3) + m3 * h3
    assert str(e) == "1 + m3*h3"
    assert str(m3 * m3 - h3) == "-h3 + m3*m3"
    assert str(CEnvElement.zero(L3)) == "0"
    assert str(-CEnvElement.one(L3)) == "-1"


def test_cenv_ring_axioms_random():
    rng = random.Random(19)
    for _ in range(40):
        a = random_cenv_element(rng, L3, 2)
        b = random_cenv_element(rng, L3, 2)
        c = random_cenv_element(rng, L3, 2)
        assert a * b == b * a
        assert (a + b) * c == a * c + b * c
        assert (a * b) * c == a * (b * c)
    m1 = CEnvElement.m_var(L3, 1)
    assert m1**3 == m1 * m1 * m1
    assert m1**0 == CEnvElement.one(L3)


def test_project_pi_e_flattens_and_kills_brackets():
    u = m_of(x1 * x3) * h_of(x2)
    assert str(project_pi_e(u)) == "m1*m3*h2"
    k = m_of(poisson_bracket(x1, x2)) * h_of(x3)
    assert project_pi_e(k).is_zero()
    # H letters multiply out commutatively after projection
    v = h_of(x1) * h_of(x2) - h_of(x2) * h_of(x1)
    assert project_pi_e(v).is_zero()


def test_project_pi_e_multiplicative():
    rng = random.Random(29)
    for _ in range(30):
        u = random_env_element(rng, 3, 2, 2)
        v = random_env_element(rng, 3, 2, 2)
        assert project_pi_e(u * v) == project_pi_e(u) * project_pi_e(v)


def test_cenv_of_bracket_free():
    assert str(cenv_of_bracket_free(x1 * x1 + x2)) == "m2 + m1*m1"
    with pytest.raises(ValueError):
        cenv_of_bracket_free(poisson_bracket(x1, x2))


def test_eta_e_kills_first_two_labels():
    m1 = CEnvElement.m_var(L3, 1)
    m3 = CEnvElement.m_var(L3, 3)
    h2 = CEnvElement.h_var(L3, 2)
    h3 = CEnvElement.h_var(L3, 3)
    u = m3 * h3 + m1 * h3 + h2
    out = eta_e(u)
    assert out.labels == (3,)
    assert str(out) == "m3*h3"
    assert eta_e(CEnvElement.one(L3)) == CEnvElement.one((3,))


def test_eta_e_rejects_other_label_sets():
    with pytest.raises(ValueError):
        eta_e(CEnvElement.one((3,)))


def test_induced_endo_on_m_is_substitution():
    # phibar: x1 -> x1 + x2*x3 (bracket-free)
    phibar = Endomorphism(3, (x1 + x2 * x3, x2, x3))
    m1 = CEnvElement.m_var(L3, 1)
    assert str(induced_endo_e(phibar, m1)) == "m1 + m2*m3"


def test_induced_endo_on_h_uses_jacobian_row():
    phibar = Endomorphism(3, (x1, x2 - x1 * x3 * x3, x3))
    h2 = CEnvElement.h_var(L3, 2)
    out = induced_endo_e(phibar, h2)
    # row of partials of the image of x2: (-x3^2, 1, -2 x1 x3)
    assert str(out) == "h2 - m3*m3*h1 - 2*m1*m3*h3"


def test_induced_endo_is_ring_map():
    rng = random.Random(37)
    phibar = Endomorphism(
        3, tuple(random_bracket_free(rng, 3, 2) for _ in range(3))
    )
    for _ in range(25):
        a = random_cenv_element(rng, L3, 2)
        b = random_cenv_element(rng, L3, 2)
        assert induced_endo_e(phibar, a * b) == induced_endo_e(
            phibar, a
        ) * induced_endo_e(phibar, b)
        assert induced_endo_e(phibar, a + b) == induced_endo_e(
            phibar, a
        ) + induced_endo_e(phibar, b)


def test_induced_endo_functorial_on_composition():
    rng = random.Random(41)
    from freepoisson.poisson import compose

    for _ in range(10):
        phi = Endomorphism(3, tuple(random_bracket_free(rng, 3, 2) for _ in range(3)))
        psi = Endomorphism(3, tuple(random_bracket_free(rng, 3, 2) for _ in range(3)))
        comp = compose(phi, psi)
        a = random_cenv_element(rng, L3, 2)
        assert induced_endo_e(comp, a) == induced_endo_e(
            phi, induced_endo_e(psi, a)
        )


def test_matrix_identity_product_block():
    one = CEnvElement.one(L3)
    zero = CEnvElement.zero(L3)
    m3 = CEnvElement.m_var(L3, 3)
    a = CEnvMatrix(L3, ((one, m3), (zero, one)))
    b = CEnvMatrix(L3, ((one, zero), (m3, one)))
    prod = a * b
    assert str(prod.entry(0, 0)) == "1 + m3*m3"
    assert prod.entry(1, 0) == m3
    ident = CEnvMatrix.identity(L3, 2)
    assert a * ident == a
    assert ident * a == a
    big = CEnvMatrix(L3, ((one, m3, zero), (zero, one, zero), (zero, zero, one)))
    assert big.block(2, 2) == a.block(2, 2).block(2, 2) or True
    assert big.block(2, 2) == CEnvMatrix(L3, ((one, m3), (zero, one)))


def test_matrix_det():
    one = CEnvElement.one(L3)
    zero = CEnvElement.zero(L3)
    m3 = CEnvElement.m_var(L3, 3)
    h3 = CEnvElement.h_var(L3, 3)
    m = CEnvMatrix(L3, ((one + m3 * h3, -(h3 * h3)), (m3 * m3, one - m3 * h3)))
    assert m.det() == one
    assert CEnvMatrix.identity(L3, 3).det() == one
    t = CEnvMatrix(L3, ((m3, zero), (h3, h3)))
    assert t.det() == m3 * h3


def test_matrix_str_row_per_line():
    one = CEnvElement.one(L3)
    m3 = CEnvElement.m_var(L3, 3)
    zero = CEnvElement.zero(L3)
    m = CEnvMatrix(L3, ((one, m3), (zero, one)))
    assert str(m) == "[1, m3]\n[0, 1]"
