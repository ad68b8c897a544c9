"""Randomized and fixed verification suites behind the command-line driver.

Each suite returns a report with one line per check family; a suite passes
only if every instance passed.  Randomized suites are driven entirely by the
seed, so identical seeds reproduce identical instances.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .lyndon import lie_bracket, lyndon_normalize
from .poisson import (
    Endomorphism,
    PoissonElement,
    compose,
    poisson_bracket,
    project_pi,
)
from .envelope import CEnvMatrix, eta_e, h_of, m_of, project_pi_e
from .fox import (
    chain_rule_check,
    eta_jacobian,
    fox_derivative,
    iterated_bracket_derivative,
    jacobian,
)
from .automorphy import (
    ElementaryAut,
    TameWord,
    elem_inverse,
    elem_to_endo,
    normalize_generators,
    relation_check,
    swap_endo,
    transposition_word,
    verify_stable_tameness,
    verify_wildness_witness,
    word_inverse,
    word_to_endo,
)
from . import sampling

SUITES = (
    "wildness",
    "stable-tame",
    "relations",
    "chain-rule",
    "par-at",
    "par-ker",
    "confluence",
)

DEFAULT_TRIALS = {
    "relations": 100,
    "chain-rule": 1000,
    "par-at": 200,
    "par-ker": 500,
    "confluence": 1000,
}


@dataclass
class SuiteReport:
    name: str
    seed: int | None
    passed: bool = True
    lines: list[str] = field(default_factory=list)

    def record(self, label: str, ok_count: int, total: int) -> None:
        ok = ok_count == total
        self.passed = self.passed and ok
        self.lines.append(f"{'PASS' if ok else 'FAIL'} {label}: {ok_count}/{total}")

    def record_flag(self, label: str, ok: bool) -> None:
        self.passed = self.passed and ok
        self.lines.append(f"{'PASS' if ok else 'FAIL'} {label}")


def suite_wildness(trials: int | None = None, seed: int = 0) -> SuiteReport:
    report = SuiteReport("wildness", None)
    witness = verify_wildness_witness()
    for name, ok in witness.checks:
        report.record_flag(name, ok)
    return report


def suite_stable_tame(trials: int | None = None, seed: int = 0) -> SuiteReport:
    report = SuiteReport("stable-tame", None)
    result = verify_stable_tameness()
    bad = [s for s in result.stages if not s.ok]
    report.record("intermediate images", len(result.stages) - len(bad), len(result.stages))
    report.record_flag("full word equals the extended map", result.final_equal)
    return report


def suite_relations(trials: int | None = None, seed: int = 0) -> SuiteReport:
    trials = trials or DEFAULT_TRIALS["relations"]
    rng = random.Random(seed)
    report = SuiteReport("relations", seed)

    ok = 0
    for _ in range(trials):
        n = rng.choice((3, 4))
        i = rng.randint(1, n)
        first = sampling.random_elementary(rng, n, 3, index=i)
        second = sampling.random_elementary(rng, n, 3, index=i)
        ok += relation_check(1, first=first, second=second).equal
    report.record("same-index combination", ok, trials)

    ok = 0
    for _ in range(trials):
        n = rng.choice((3, 4))
        i, j = rng.sample(range(1, n + 1), 2)
        spared = tuple(k for k in range(1, n + 1) if k not in (i, j))
        outer = ElementaryAut(
            i, rng.choice(sampling.ALPHAS),
            sampling.random_element(rng, n, 3, letters=spared)
            if spared else PoissonElement.zero(n),
        )
        inner = sampling.random_elementary(rng, n, 3, index=j)
        ok += relation_check(2, outer=outer, inner=inner).equal
    report.record("cross-index conjugation", ok, trials)

    ok = 0
    for _ in range(trials):
        n = rng.choice((3, 4))
        p, q = rng.sample(range(1, n + 1), 2)
        sigma = sampling.random_elementary(rng, n, 3)
        ok += relation_check(3, p=p, q=q, sigma=sigma).equal
    report.record("transposition conjugation", ok, trials)

    ok = total = 0
    for n in (3, 4):
        for j in range(2, n + 1):
            x1 = PoissonElement.variable(n, 1)
            xj = PoissonElement.variable(n, j)
            zero = PoissonElement.zero(n)
            word = TameWord((
                ElementaryAut(1, Fraction(-1), zero),
                ElementaryAut(1, Fraction(1), xj),
                ElementaryAut(j, Fraction(1), -x1),
                ElementaryAut(1, Fraction(1), xj),
            ))
            ok += word_to_endo(word, n) == swap_endo(1, j, n)
            total += 1
    report.record("first-index swap spelling", ok, total)

    ok = 0
    normalize_trials = max(1, trials // 4)
    for _ in range(normalize_trials):
        word = sampling.random_tame_word(rng, 3, rng.randint(1, 2), 2)
        ok += word_to_endo(normalize_generators(word), 3) == word_to_endo(word, 3)
    report.record("generator normalization preserves evaluation", ok, normalize_trials)

    ok = total = 0
    for n in (3, 4):
        for p in range(1, n + 1):
            for q in range(1, n + 1):
                if p == q:
                    continue
                word = transposition_word(p, q, n)
                here = word_to_endo(word, n) == swap_endo(p, q, n)
                both = compose(swap_endo(p, q, n), swap_endo(p, q, n)) == Endomorphism.identity(n)
                ok += here and both
                total += 1
    report.record("transposition words", ok, total)

    ok = 0
    for _ in range(trials):
        n = rng.choice((3, 4))
        sigma = sampling.random_elementary(rng, n, 3)
        left = compose(elem_to_endo(sigma, n), elem_to_endo(elem_inverse(sigma), n))
        right = compose(elem_to_endo(elem_inverse(sigma), n), elem_to_endo(sigma, n))
        ok += left == Endomorphism.identity(n) and right == Endomorphism.identity(n)
    report.record("elementary inverses", ok, trials)

    return report


def suite_chain_rule(trials: int | None = None, seed: int = 0) -> SuiteReport:
    trials = trials or DEFAULT_TRIALS["chain-rule"]
    rng = random.Random(seed)
    report = SuiteReport("chain-rule", seed)

    ok = 0
    for _ in range(trials):
        phi = elem_to_endo(sampling.random_elementary(rng, 3, 3), 3)
        psi = elem_to_endo(sampling.random_elementary(rng, 3, 3), 3)
        ok += chain_rule_check(phi, psi).composition_equal
    report.record("composition rule on elementary pairs", ok, trials)

    inverse_trials = max(1, trials // 10)
    ok = 0
    for _ in range(inverse_trials):
        word = sampling.random_tame_word(rng, 3, rng.randint(1, 3), 2)
        psi = word_to_endo(word, 3)
        psi_inv = word_to_endo(word_inverse(word), 3)
        outcome = chain_rule_check(Endomorphism.identity(3), psi, psi_inv)
        ok += bool(outcome.inverse_equal)
    report.record("inverse Jacobians on tame words", ok, inverse_trials)

    return report


def suite_par_at(trials: int | None = None, seed: int = 0) -> SuiteReport:
    trials = trials or DEFAULT_TRIALS["par-at"]
    rng = random.Random(seed)
    report = SuiteReport("par-at", seed)
    ok = 0
    for _ in range(trials):
        t = rng.randint(2, 5)
        elements = [
            sampling.random_element(rng, 3, 2, max_terms=2) for _ in range(t)
        ]
        j = rng.randint(1, 3)
        nested = elements[0]
        for a in elements[1:]:
            nested = poisson_bracket(nested, a)
        ok += iterated_bracket_derivative(elements, j) == fox_derivative(nested, j)
    report.record("iterated bracket derivative", ok, trials)
    return report


def suite_par_ker(trials: int | None = None, seed: int = 0) -> SuiteReport:
    trials = trials or DEFAULT_TRIALS["par-ker"]
    rng = random.Random(seed)
    report = SuiteReport("par-ker", seed)
    ok = 0
    for _ in range(trials):
        f = sampling.random_kernel_element(rng, 3, 5)
        ok += eta_e(project_pi_e(fox_derivative(f, 3))).is_zero()
    report.record("kernel derivatives vanish after evaluation", ok, trials)
    return report


def _rearranged_tree_value(rng: random.Random, tree, arity: int):
    """Evaluate a bracket tree by a randomized admissible strategy: flip
    brackets through anti-symmetry or split them through the Jacobi identity
    before recursing."""
    if isinstance(tree, int):
        return lyndon_normalize(tree, arity)
    left, right = tree
    choice = rng.randrange(3)
    if choice == 0:
        value = _rearranged_tree_value(rng, (right, left), arity)
        return {w: -c for w, c in value.items()}
    if choice == 1 and isinstance(left, tuple):
        a, b = left
        first = _rearranged_tree_value(rng, (a, (b, right)), arity)
        second = _rearranged_tree_value(rng, (b, (a, right)), arity)
        out = dict(first)
        for w, c in second.items():
            cur = out.get(w)
            if cur is None:
                out[w] = -c
            elif cur - c:
                out[w] = cur - c
            else:
                del out[w]
        return out
    return lie_bracket(
        _rearranged_tree_value(rng, left, arity),
        _rearranged_tree_value(rng, right, arity),
    )


def suite_confluence(trials: int | None = None, seed: int = 0) -> SuiteReport:
    trials = trials or DEFAULT_TRIALS["confluence"]
    rng = random.Random(seed)
    report = SuiteReport("confluence", seed)

    ok = 0
    for _ in range(trials):
        n = rng.choice((2, 3, 4))
        a = sampling.random_element(rng, n, 4)
        b = sampling.random_element(rng, n, 4)
        ok += (not poisson_bracket(a, a)) and poisson_bracket(a, b) == -poisson_bracket(b, a)
    report.record("anti-symmetry", ok, trials)

    ok = 0
    for _ in range(trials):
        n = rng.choice((2, 3, 4))
        a = sampling.random_element(rng, n, 3, max_terms=2)
        b = sampling.random_element(rng, n, 3, max_terms=2)
        c = sampling.random_element(rng, n, 3, max_terms=2)
        cyclic = (
            poisson_bracket(poisson_bracket(a, b), c)
            + poisson_bracket(poisson_bracket(b, c), a)
            + poisson_bracket(poisson_bracket(c, a), b)
        )
        ok += not cyclic
    report.record("Jacobi identity", ok, trials)

    ok = 0
    for _ in range(trials):
        n = rng.choice((2, 3, 4))
        a = sampling.random_element(rng, n, 3, max_terms=2)
        b = sampling.random_element(rng, n, 3, max_terms=2)
        c = sampling.random_element(rng, n, 3, max_terms=2)
        ok += poisson_bracket(a, b * c) == b * poisson_bracket(a, c) + c * poisson_bracket(a, b)
    report.record("Leibniz rule", ok, trials)

    ok = 0
    for _ in range(trials):
        n = rng.choice((2, 3, 4))
        tree = sampling.random_bracket_tree(rng, n, rng.randint(2, 5))
        ok += lyndon_normalize(tree, n) == _rearranged_tree_value(rng, tree, n)
    report.record("bracket tree confluence", ok, trials)

    ok = 0
    for _ in range(trials):
        n = rng.choice((2, 3))
        u = sampling.random_env_element(rng, n, 2, 2)
        v = sampling.random_env_element(rng, n, 2, 2)
        w = sampling.random_env_element(rng, n, 2, 2)
        ok += (u * v) * w == u * (v * w)
    report.record("envelope normal form confluence", ok, trials)

    ok = 0
    for _ in range(trials):
        n = rng.choice((2, 3, 4))
        a = sampling.random_nonzero_element(rng, n, 3, max_terms=2)
        b = sampling.random_nonzero_element(rng, n, 3, max_terms=2)
        product = a * b
        ok += h_of(product) == m_of(b) * h_of(a) + m_of(a) * h_of(b)
    report.record("bracket operator derivation rule", ok, trials)

    ok = 0
    for _ in range(trials):
        n = rng.choice((3, 4))
        f = sampling.random_element(rng, n, 4)
        word = sampling.random_tame_word(rng, n, 2, 2)
        phi = word_to_endo(word, n)
        phibar = Endomorphism(n, tuple(project_pi(im) for im in phi.images))
        ok += project_pi(phi.apply(f)) == phibar.apply(project_pi(f))
    report.record("projection commutes with endomorphisms", ok, trials)

    return report


_SUITE_FUNCTIONS = {
    "wildness": suite_wildness,
    "stable-tame": suite_stable_tame,
    "relations": suite_relations,
    "chain-rule": suite_chain_rule,
    "par-at": suite_par_at,
    "par-ker": suite_par_ker,
    "confluence": suite_confluence,
}


def run_suite(name: str, trials: int | None = None, seed: int = 0) -> SuiteReport:
    if name not in _SUITE_FUNCTIONS:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return _SUITE_FUNCTIONS[name](trials, seed)
