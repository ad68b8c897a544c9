"""Fox derivatives of Poisson elements and the Jacobian matrix calculus.

The derivative of an element with respect to a generator lives in the
enveloping algebra: generators differentiate to 0 or 1, products through
M-operators and brackets through H-operators.  Jacobian matrices collect the
derivatives of an endomorphism's generator images, projected to the
commutative envelope, with row i holding the derivatives of the image of x_i
and column j the derivatives with respect to x_j.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .lyndon import Word, standard_factorization
from .poisson import (
    Endomorphism,
    PoissonElement,
    compose,
    poisson_bracket,
    project_endo,
)
from .envelope import (
    CEnvMatrix,
    EnvElement,
    eta_e,
    h_of,
    induced_endo_e,
    m_of,
    project_pi_e,
)

_FOX_WORD_CACHE: dict[tuple[int, Word, int], EnvElement] = {}


def _fox_word(arity: int, w: Word, j: int) -> EnvElement:
    """Derivative of a basis word: delta on letters, H-rule on composites."""
    got = _FOX_WORD_CACHE.get((arity, w, j))
    if got is None:
        if len(w) == 1:
            got = EnvElement.one(arity) if w[0] == j else EnvElement.zero(arity)
        else:
            u, v = standard_factorization(w)
            hu = h_of(PoissonElement.from_lie(arity, {u: 1}))
            hv = h_of(PoissonElement.from_lie(arity, {v: 1}))
            got = hu * _fox_word(arity, v, j) - hv * _fox_word(arity, u, j)
        _FOX_WORD_CACHE[(arity, w, j)] = got
    return got


def fox_derivative(a: PoissonElement, j: int) -> EnvElement:
    """Derivative of a with respect to x_j, valued in the enveloping algebra."""
    if not 1 <= j <= a.arity:
        raise ValueError(f"generator index x{j} out of range for arity {a.arity}")
    n = a.arity
    total = EnvElement.zero(n)
    for m, c in a.terms.items():
        for i, w in enumerate(m):
            part = _fox_word(n, w, j)
            if not part:
                continue
            rest = PoissonElement.from_terms(n, ((m[:i] + m[i + 1:], c),))
            total = total + m_of(rest) * part
    return total


def iterated_bracket_derivative(elements: Sequence[PoissonElement], j: int) -> EnvElement:
    """Closed-form derivative of the left-nested bracket of the elements.

    For [[..[a1, a2], ..], at] the term differentiating a_p carries the
    factor (-H_{a_t}) ... (-H_{a_{p+1}}) times H of the bracket of the first
    p - 1 elements (absent for p = 1), applied to the derivative of a_p.
    """
    if not elements:
        raise ValueError("need at least one element")
    t = len(elements)
    if t == 1:
        return fox_derivative(elements[0], j)
    n = elements[0].arity
    prefixes = [elements[0]]
    for a in elements[1:]:
        prefixes.append(poisson_bracket(prefixes[-1], a))
    total = EnvElement.zero(n)
    for p in range(1, t + 1):
        factor = EnvElement.one(n)
        for s in range(t, p, -1):
            factor = factor * (-h_of(elements[s - 1]))
        if p >= 2:
            factor = factor * h_of(prefixes[p - 2])
        total = total + factor * fox_derivative(elements[p - 1], j)
    return total


def jacobian(phi: Endomorphism) -> CEnvMatrix:
    """Projected Jacobian: entry (i, j) is the image in the commutative
    envelope of the j-th derivative of the image of x_i."""
    n = phi.arity
    rows = [
        [project_pi_e(fox_derivative(phi.images[i], j)) for j in range(1, n + 1)]
        for i in range(n)
    ]
    return CEnvMatrix(tuple(range(1, n + 1)), rows)


def jacobian2(phi: Endomorphism) -> CEnvMatrix:
    """Upper-left 2x2 corner of the Jacobian of a three-generator endomorphism."""
    if phi.arity != 3:
        raise ValueError("the 2x2 corner is defined for arity 3")
    rows = [
        [project_pi_e(fox_derivative(phi.images[i], j)) for j in (1, 2)]
        for i in range(2)
    ]
    return CEnvMatrix((1, 2, 3), rows)


def eta_jacobian(phi: Endomorphism) -> CEnvMatrix:
    """Jacobian of an arity-3 endomorphism with entries evaluated at x1 = x2 = 0."""
    if phi.arity != 3:
        raise ValueError("the evaluated Jacobian is defined for arity 3")
    return jacobian(phi).map_entries(eta_e)


def induced_matrix(phibar: Endomorphism, mat: CEnvMatrix) -> CEnvMatrix:
    """Entrywise application of the envelope map induced by phibar."""
    return mat.map_entries(lambda e: induced_endo_e(phibar, e))


@dataclass(frozen=True)
class ChainRuleReport:
    """Outcome of a chain rule check, keeping both sides for inspection."""

    composition_equal: bool
    inverse_equal: bool | None
    lhs: CEnvMatrix
    rhs: CEnvMatrix

    @property
    def passed(self) -> bool:
        return self.composition_equal and self.inverse_equal is not False


def chain_rule_check(
    phi: Endomorphism,
    psi: Endomorphism,
    psi_inverse: Endomorphism | None = None,
) -> ChainRuleReport:
    """Check J(phi o psi) against the induced image of J(psi) times J(phi).

    When psi_inverse is supplied, additionally check that the induced image
    of its Jacobian is a two-sided inverse of J(psi).
    """
    lhs = jacobian(compose(phi, psi))
    rhs = induced_matrix(project_endo(phi), jacobian(psi)) * jacobian(phi)
    inverse_equal = None
    if psi_inverse is not None:
        jpsi = jacobian(psi)
        candidate = induced_matrix(project_endo(psi), jacobian(psi_inverse))
        ident = CEnvMatrix.identity(jpsi.labels, phi.arity)
        inverse_equal = jpsi * candidate == ident and candidate * jpsi == ident
    return ChainRuleReport(lhs == rhs, inverse_equal, lhs, rhs)
