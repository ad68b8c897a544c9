"""Seeded random generators for elements, automorphisms, and words.

Shared by the property suites and the command-line driver so a given seed
selects the same instances everywhere.  All functions take an explicit
random.Random; nothing here touches global state.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .lyndon import Word, is_lyndon
from .poisson import PoissonElement, monomial, poisson_bracket
from .envelope import CEnvElement, EnvElement, h_of, m_of
from .automorphy import ElementaryAut, TameWord

COEFFS = (
    Fraction(1), Fraction(-1), Fraction(2), Fraction(-2),
    Fraction(3), Fraction(1, 2), Fraction(-1, 2), Fraction(1, 3),
)

ALPHAS = (Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 2), Fraction(-3))


def random_lyndon_word(rng: random.Random, letters: tuple[int, ...], max_len: int) -> Word:
    """A Lyndon word over the given letters, biased toward short lengths."""
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    weights = [4] + [2] * (max_len - 1)
    length = rng.choices(range(1, max_len + 1), weights=weights)[0]
    if length > 1 and len(letters) > 1:
        for _ in range(30):
            w = tuple(rng.choice(letters) for _ in range(length))
            if is_lyndon(w):
                return w
    return (rng.choice(letters),)


def random_monomial(
    rng: random.Random,
    letters: tuple[int, ...],
    max_degree: int,
    allow_brackets: bool = True,
) -> tuple[Word, ...]:
    words: list[Word] = []
    budget = rng.randint(0, max_degree)
    while budget > 0:
        cap = budget if allow_brackets else 1
        w = random_lyndon_word(rng, letters, cap)
        words.append(w)
        budget -= len(w)
    return monomial(words)


def random_element(
    rng: random.Random,
    arity: int,
    max_degree: int,
    max_terms: int = 3,
    letters: tuple[int, ...] | None = None,
    allow_brackets: bool = True,
) -> PoissonElement:
    if letters is None:
        letters = tuple(range(1, arity + 1))
    items = []
    for _ in range(rng.randint(1, max_terms)):
        m = random_monomial(rng, letters, max_degree, allow_brackets)
        items.append((m, rng.choice(COEFFS)))
    return PoissonElement.from_terms(arity, items)


def random_nonzero_element(rng: random.Random, arity: int, max_degree: int, **kwargs) -> PoissonElement:
    for _ in range(50):
        e = random_element(rng, arity, max_degree, **kwargs)
        if e:
            return e
    return PoissonElement.variable(arity, kwargs.get("letters", (1,))[0])


def random_bracket_free(
    rng: random.Random, arity: int, max_degree: int, max_terms: int = 3,
    letters: tuple[int, ...] | None = None,
) -> PoissonElement:
    return random_element(rng, arity, max_degree, max_terms, letters, allow_brackets=False)


def random_kernel_element(
    rng: random.Random,
    arity: int,
    max_degree: int,
    letters: tuple[int, ...] | None = None,
) -> PoissonElement:
    """A product g * [x_a, x_b] * h, always killed by the bracket-free quotient."""
    if letters is None:
        letters = tuple(range(1, arity + 1))
    if len(letters) < 2 or max_degree < 2:
        raise ValueError("kernel elements need two letters and degree 2")
    a, b = rng.sample(letters, 2)
    core = poisson_bracket(
        PoissonElement.variable(arity, a), PoissonElement.variable(arity, b)
    )
    room = max_degree - 2
    left_room = rng.randint(0, room)
    g = random_element(rng, arity, left_room, 2, letters) if left_room else PoissonElement.one(arity)
    right_room = room - left_room
    h = random_element(rng, arity, right_room, 2, letters) if right_room else PoissonElement.one(arity)
    out = g * core * h
    if not out:
        return core
    return out


def random_elementary(
    rng: random.Random,
    arity: int,
    max_degree: int,
    index: int | None = None,
    unit_scale: bool = False,
    kernel_shift: bool = False,
) -> ElementaryAut:
    i = index if index is not None else rng.randint(1, arity)
    letters = tuple(k for k in range(1, arity + 1) if k != i)
    alpha = Fraction(1) if unit_scale else rng.choice(ALPHAS)
    if kernel_shift:
        f = random_kernel_element(rng, arity, max_degree, letters)
    else:
        f = random_element(rng, arity, max_degree, letters=letters)
    return ElementaryAut(i, alpha, f)


def random_tame_word(
    rng: random.Random, arity: int, length: int, max_degree: int, **kwargs
) -> TameWord:
    return TameWord(tuple(
        random_elementary(rng, arity, max_degree, **kwargs) for _ in range(length)
    ))


def random_restricted_factor(
    rng: random.Random, max_degree: int, safe: bool = False
) -> ElementaryAut:
    """A factor the certificate recursion accepts.

    With safe=True, first-index factors get shifts whose bracket-free part
    vanishes at x1 = x2 = 0, keeping the evaluation square valid.
    """
    x1 = PoissonElement.variable(3, 1)
    kind = rng.randrange(4)
    if kind == 0:
        return ElementaryAut(2, Fraction(1), -x1)
    if kind == 1:
        return ElementaryAut(3, Fraction(1), -x1)
    alpha = rng.choice(ALPHAS)
    for _ in range(50):
        g = random_element(rng, 3, max_degree, letters=(2, 3))
        if not safe:
            return ElementaryAut(1, alpha, g)
        free = {
            m for m in g.terms if all(len(w) == 1 for w in m)
        }
        if all(((2,) in m) for m in free):
            return ElementaryAut(1, alpha, g)
    x2 = PoissonElement.variable(3, 2)
    return ElementaryAut(1, alpha, x2)


def random_restricted_word(
    rng: random.Random, length: int, max_degree: int, safe: bool = False
) -> TameWord:
    return TameWord(tuple(
        random_restricted_factor(rng, max_degree, safe) for _ in range(length)
    ))


def random_bracket_tree(rng: random.Random, arity: int, leaves: int):
    """A random binary bracket tree with the given number of leaves."""
    if leaves == 1:
        return rng.randint(1, arity)
    split = rng.randint(1, leaves - 1)
    return (
        random_bracket_tree(rng, arity, split),
        random_bracket_tree(rng, arity, leaves - split),
    )


def random_env_element(
    rng: random.Random, arity: int, max_degree: int, max_h_len: int, max_terms: int = 2
) -> EnvElement:
    out = EnvElement.zero(arity)
    for _ in range(rng.randint(1, max_terms)):
        coeff = m_of(random_element(rng, arity, max_degree))
        for _ in range(rng.randint(0, max_h_len)):
            coeff = coeff * h_of(PoissonElement.variable(arity, rng.randint(1, arity)))
        out = out + coeff
    return out


def random_cenv_element(
    rng: random.Random, labels: tuple[int, ...], max_degree: int, max_terms: int = 3
) -> CEnvElement:
    width = 2 * len(labels)
    acc: dict[tuple[int, ...], Fraction] = {}
    for _ in range(rng.randint(1, max_terms)):
        exps = [0] * width
        for _ in range(rng.randint(0, max_degree)):
            exps[rng.randrange(width)] += 1
        key = tuple(exps)
        acc[key] = acc.get(key, Fraction(0)) + rng.choice(COEFFS)
    return CEnvElement(labels, {k: v for k, v in acc.items() if v})
