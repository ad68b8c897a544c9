"""Exact computer algebra for free Poisson algebras and their envelopes.

The package provides the free Poisson algebra on x1..xn over the rationals
in a Lyndon word basis, its multiplicative enveloping algebra with a
normal form, Fox derivatives and Jacobian matrices over the commutative
envelope, and verification pipelines for tame words, elementary matrix
certificates, and the distinguished wild automorphism at arity three.
"""

from .lyndon import (
    LieElement,
    Word,
    basis_bracket,
    bracket_text,
    is_lyndon,
    lie_bracket,
    lyndon_normalize,
    lyndon_words,
    standard_factorization,
)
from .poisson import (
    Endomorphism,
    Monomial,
    PoissonElement,
    apply_endo,
    bracket_free_partial,
    compose,
    poisson_bracket,
    project_endo,
    project_pi,
    split_kernel,
)
from .envelope import (
    CEnvElement,
    CEnvMatrix,
    EnvElement,
    HWord,
    cenv_of_bracket_free,
    eta_e,
    h_of,
    induced_endo_e,
    m_of,
    project_pi_e,
)
from .fox import (
    ChainRuleReport,
    chain_rule_check,
    eta_jacobian,
    fox_derivative,
    induced_matrix,
    iterated_bracket_derivative,
    jacobian,
    jacobian2,
)
from .automorphy import (
    ElementaryAut,
    RelationReport,
    StableTamenessReport,
    TameWord,
    WitnessReport,
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
from .certificates import (
    CertificateReport,
    E2Factor,
    certificate_product,
    conjugation_certificate,
    e2_product,
    lower,
    upper,
)
from .exprio import (
    ExprSyntaxError,
    canonical_json,
    elaborate,
    parse_element,
    parse_elementary,
    parse_endomorphism,
    parse_expr,
    parse_tame_word,
)
from .verify import SUITES, SuiteReport, run_suite

__version__ = "0.1.0"
