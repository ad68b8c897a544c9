"""Elementary 2x2 certificates for evaluated Jacobians of conjugated kernel
automorphisms of the three-generator algebra.

A certificate is a word in the elementary matrices E12(a) and E21(a) over the
one-generator commutative envelope whose product equals the leading 2x2 block
of the evaluated Jacobian of psi o phi o psi^-1, where phi moves one
generator by a kernel element and psi is a restricted tame word.  The builder
follows the inductive structure of the underlying argument and re-checks
every identity it relies on; a failed identity is reported as such, with the
step and the residual, never patched over.

One of those identities, the commuting square relating the evaluation onto
the x3 subalgebra with the outermost conjugating factor, is known to be
unsettled for factors x1 -> alpha x1 + g whose projected shift survives at
x1 = x2 = 0.  Instances violating it surface here as step failures.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .poisson import Endomorphism, PoissonElement, compose, project_pi
from .envelope import CEnvElement, CEnvMatrix, eta_e, project_pi_e
from .fox import eta_jacobian, fox_derivative
from .automorphy import (
    ElementaryAut,
    TameWord,
    elem_inverse,
    elem_to_endo,
    is_restricted_factor,
)

_LABELS = (3,)


@dataclass(frozen=True)
class E2Factor:
    """One elementary factor: kind 'lower' is E21(value), 'upper' is E12(value)."""

    kind: str
    value: CEnvElement

    def __post_init__(self):
        if self.kind not in ("lower", "upper"):
            raise ValueError(f"unknown factor kind {self.kind!r}")
        if self.value.labels != _LABELS:
            raise ValueError("certificate entries live over the one-generator envelope")

    def matrix(self) -> CEnvMatrix:
        one = CEnvElement.one(_LABELS)
        zero = CEnvElement.zero(_LABELS)
        if self.kind == "lower":
            return CEnvMatrix(_LABELS, [[one, zero], [self.value, one]])
        return CEnvMatrix(_LABELS, [[one, self.value], [zero, one]])

    def __str__(self) -> str:
        name = "Lower" if self.kind == "lower" else "Upper"
        return f"{name}({self.value})"


def lower(value: CEnvElement) -> E2Factor:
    return E2Factor("lower", value)


def upper(value: CEnvElement) -> E2Factor:
    return E2Factor("upper", value)


def e2_product(word: Sequence[E2Factor]) -> CEnvMatrix:
    """Product of the factor matrices, left to right; empty words give the identity."""
    out = CEnvMatrix.identity(_LABELS, 2)
    for factor in word:
        out = out * factor.matrix()
    return out


@dataclass(frozen=True)
class CertificateReport:
    """Result of a certificate construction.

    target is the leading 2x2 block of the evaluated Jacobian of the
    conjugated automorphism, computed directly; word multiplies to it when
    the status is verified.  On failure the step label names the identity
    that broke and residual holds the difference it left behind.
    """

    target: CEnvMatrix
    word: tuple[E2Factor, ...] | None
    status: str
    failed_step: str | None
    residual: CEnvMatrix | None
    conjugate: Endomorphism
    full_matrix: CEnvMatrix

    @property
    def verified(self) -> bool:
        return self.status == "verified"

    def lines(self) -> list[str]:
        if self.verified:
            body = ", ".join(str(f) for f in self.word) if self.word else "(empty)"
            return [f"verified: {body}"]
        out = [f"step-failed: {self.failed_step}"]
        if self.residual is not None:
            out.extend("residual " + line for line in str(self.residual).splitlines())
        return out


class _StepFailure(Exception):
    def __init__(self, step: str, residual: CEnvMatrix | None):
        super().__init__(step)
        self.step = step
        self.residual = residual


@dataclass(frozen=True)
class _Level:
    word: tuple[E2Factor, ...]
    full: CEnvMatrix
    endo: Endomorphism


def _eta_pi_derivative(g: PoissonElement, j: int) -> CEnvElement:
    return eta_e(project_pi_e(fox_derivative(g, j)))


def _check_outer_shape(full: CEnvMatrix, step: str) -> None:
    one = CEnvElement.one(_LABELS)
    zero = CEnvElement.zero(_LABELS)
    ok = (
        full.entry(0, 2) == zero
        and full.entry(1, 2) == zero
        and full.entry(2, 2) == one
    )
    if not ok:
        raise _StepFailure(f"{step}: third column is not (0, 0, 1)", None)


def _base_level(phi: ElementaryAut) -> _Level:
    endo = elem_to_endo(phi, 3)
    full = eta_jacobian(endo)
    _check_outer_shape(full, "base")
    word: tuple[E2Factor, ...] = ()
    if phi.i == 1:
        value = full.entry(0, 1)
        if value:
            word = (upper(value),)
    elif phi.i == 2:
        value = full.entry(1, 0)
        if value:
            word = (lower(value),)
    got = e2_product(word)
    want = full.block(2, 2)
    if got != want:
        raise _StepFailure("base: block does not match its single factor", _diff(want, got))
    return _Level(word, full, endo)


def _diff(a: CEnvMatrix, b: CEnvMatrix) -> CEnvMatrix:
    rows = [
        [a.entry(i, j) - b.entry(i, j) for j in range(a.shape[1])]
        for i in range(a.shape[0])
    ]
    return CEnvMatrix(a.labels, rows)


def _conjugation_level(step: int, psi1: ElementaryAut, inner: _Level) -> _Level:
    psi1_endo = elem_to_endo(psi1, 3)
    psi1_inv_endo = elem_to_endo(elem_inverse(psi1), 3)
    conj = compose(psi1_endo, compose(inner.endo, psi1_inv_endo))
    full = eta_jacobian(conj)
    prefix = f"factor {step}"
    _check_outer_shape(full, prefix)

    # the square: conjugating the inner matrix by the factor's Jacobian must
    # reproduce the direct computation, which encodes that the evaluation
    # onto the x3 subalgebra interacts trivially with this factor
    outer_jac = eta_jacobian(psi1_endo)
    outer_inv_jac = eta_jacobian(psi1_inv_endo)
    ident = CEnvMatrix.identity(_LABELS, 3)
    if outer_jac * outer_inv_jac != ident or outer_inv_jac * outer_jac != ident:
        raise _StepFailure(f"{prefix}: factor Jacobians are not mutually inverse", None)
    sandwich = outer_inv_jac * inner.full * outer_jac
    if sandwich != full:
        raise _StepFailure(
            f"{prefix}: evaluation square fails for {psi1}", _diff(full, sandwich)
        )

    x1 = PoissonElement.variable(3, 1)
    if psi1.i == 2:
        # shear x2 -> x2 - x1: conjugate the block by E21(1)
        if psi1.alpha != 1 or psi1.f != -x1:
            raise _StepFailure(f"{prefix}: unsupported factor {psi1}", None)
        one = CEnvElement.one(_LABELS)
        word = (lower(one),) + inner.word + (lower(-one),)
    elif psi1.i == 3:
        # shear x3 -> x3 - x1: invisible after evaluation
        if psi1.alpha != 1 or psi1.f != -x1:
            raise _StepFailure(f"{prefix}: unsupported factor {psi1}", None)
        word = inner.word
    else:
        word = _first_index_word(prefix, psi1, inner)

    got = e2_product(word)
    want = full.block(2, 2)
    if got != want:
        raise _StepFailure(f"{prefix}: assembled word misses the block", _diff(want, got))
    return _Level(word, full, conj)


def _first_index_word(
    prefix: str, psi1: ElementaryAut, inner: _Level
) -> tuple[E2Factor, ...]:
    """Word for a factor x1 -> alpha x1 + g, from the inner word.

    The factor's evaluated Jacobian is upper triangular with row (alpha, w1,
    w2); sandwiching the inner matrix and clearing the scale gives the inner
    word with rescaled entries, framed by upper factors, provided the inner
    matrix annihilates w2 through its lower-left corner entry.
    """
    w1 = _eta_pi_derivative(psi1.f, 2)
    w2 = _eta_pi_derivative(psi1.f, 3)
    v1 = inner.full.entry(2, 0)
    v2 = inner.full.entry(2, 1)
    if v1 * w2:
        raise _StepFailure(
            f"{prefix}: shift derivative does not clear the corner row", None
        )

    # row-recombination identity for the last column of the inverse factor
    inv_alpha = Fraction(1) / psi1.alpha
    u = inner.full.block(2, 2)
    yug_top = inv_alpha * (u.entry(0, 0) * w2) - inv_alpha * w1 * (u.entry(1, 0) * w2)
    yug_bottom = u.entry(1, 0) * w2
    if yug_top != w2 * inv_alpha or yug_bottom:
        raise _StepFailure(f"{prefix}: inverse-column identity fails", None)

    scaled = []
    for factor in inner.word:
        if factor.kind == "upper":
            scaled.append(upper(factor.value * inv_alpha))
        else:
            scaled.append(lower(factor.value * psi1.alpha))
    word = [upper(-w1 * inv_alpha)] + scaled
    closing = -w2 * v2 * inv_alpha
    if closing:
        word.append(upper(closing))
    if w1:
        word.append(upper(w1 * inv_alpha))
    return tuple(f for f in word if f.value)


def conjugation_certificate(psi: TameWord, phi: ElementaryAut) -> CertificateReport:
    """Build and verify an elementary word for the evaluated Jacobian block of
    psi o phi o psi^-1.

    phi must move one generator by a kernel element with scale one, and every
    factor of psi must be restricted.  Each inductive step re-validates the
    identities the construction depends on; if one fails, the report carries
    the step and residual while the target block is still computed directly.
    """
    if phi.arity != 3:
        raise ValueError("certificates are built at arity 3")
    if phi.alpha != 1:
        raise ValueError("the conjugated automorphism must have scale one")
    if project_pi(phi.f):
        raise ValueError("the conjugated automorphism must shift by a kernel element")
    for sigma in psi.factors:
        if not is_restricted_factor(sigma):
            raise ValueError(f"word factor is not restricted: {sigma}")

    try:
        level = _base_level(phi)
        for step, psi1 in enumerate(reversed(psi.factors), 1):
            level = _conjugation_level(step, psi1, level)
        return CertificateReport(
            target=level.full.block(2, 2),
            word=level.word,
            status="verified",
            failed_step=None,
            residual=None,
            conjugate=level.endo,
            full_matrix=level.full,
        )
    except _StepFailure as failure:
        endo = elem_to_endo(phi, 3)
        psi_endo = Endomorphism.identity(3)
        for sigma in psi.factors:
            psi_endo = compose(psi_endo, elem_to_endo(sigma, 3))
        psi_inv = Endomorphism.identity(3)
        for sigma in reversed(psi.factors):
            psi_inv = compose(psi_inv, elem_to_endo(elem_inverse(sigma), 3))
        conj = compose(psi_endo, compose(endo, psi_inv))
        full = eta_jacobian(conj)
        return CertificateReport(
            target=full.block(2, 2),
            word=None,
            status="step-failed",
            failed_step=failure.step,
            residual=failure.residual,
            conjugate=conj,
            full_matrix=full,
        )


def certificate_product(reports: Sequence[CertificateReport]) -> CertificateReport:
    """Certificate for a product of certified automorphisms.

    The inputs list the factors leftmost first; their words concatenate in
    the reverse order, matching the reversal of Jacobians under composition.
    Every input must be verified.
    """
    if not reports:
        raise ValueError("need at least one certificate")
    for r in reports:
        if not r.verified:
            raise ValueError("cannot multiply unverified certificates")
    word: tuple[E2Factor, ...] = ()
    target = CEnvMatrix.identity(_LABELS, 2)
    for r in reversed(reports):
        word = word + r.word
        target = target * r.target
    composite = Endomorphism.identity(3)
    for r in reports:
        composite = compose(composite, r.conjugate)
    full = eta_jacobian(composite)
    direct = full.block(2, 2)
    if e2_product(word) != target or target != direct:
        return CertificateReport(
            target=direct,
            word=None,
            status="step-failed",
            failed_step="product: concatenated word misses the composite block",
            residual=_diff(direct, e2_product(word)),
            conjugate=composite,
            full_matrix=full,
        )
    return CertificateReport(
        target=direct,
        word=word,
        status="verified",
        failed_step=None,
        residual=None,
        conjugate=composite,
        full_matrix=full,
    )
