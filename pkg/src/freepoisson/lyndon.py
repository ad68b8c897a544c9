"""Lyndon-Shirshov words and free Lie algebra arithmetic in the Lyndon basis.

Words are tuples of generator indices (1-based).  A word is Lyndon when it is
strictly smaller than every proper rotation of itself; the Lyndon words over
x1 < x2 < ... index a linear basis of the free Lie algebra, the basis element
of a word w of length >= 2 being the bracket [b(u), b(v)] of the standard
factorization w = uv.  A Lie element is a sparse map from Lyndon words to
rational coefficients; zero coefficients are never stored.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

Word = tuple[int, ...]
LieElement = dict[Word, Fraction]

_ONE = Fraction(1)


@lru_cache(maxsize=None)
def is_lyndon(word: Word) -> bool:
    """True if the word is strictly smaller than all of its proper rotations."""
    if not word:
        return False
    return all(word < word[k:] + word[:k] for k in range(1, len(word)))


@lru_cache(maxsize=None)
def standard_factorization(word: Word) -> tuple[Word, Word]:
    """Split a Lyndon word of length >= 2 as (u, v) with v the longest proper
    Lyndon suffix.

    Both halves are again Lyndon and u < v; the basis element of the word is
    the bracket of the basis elements of the halves.
    """
    if len(word) < 2 or not is_lyndon(word):
        raise ValueError(f"not a composite Lyndon word: {word!r}")
    for k in range(1, len(word)):
        if is_lyndon(word[k:]):
            return word[:k], word[k:]
    raise AssertionError("every Lyndon word of length >= 2 has a proper Lyndon suffix")


def word_key(word: Word) -> tuple[int, Word]:
    """Sort key ordering words by length, then lexicographically."""
    return (len(word), word)


def _accumulate(acc: LieElement, key: Word, c: Fraction) -> None:
    cur = acc.get(key)
    if cur is None:
        if c:
            acc[key] = c
    else:
        cur += c
        if cur:
            acc[key] = cur
        else:
            del acc[key]


@lru_cache(maxsize=None)
def basis_bracket(u: Word, v: Word) -> tuple[tuple[Word, Fraction], ...]:
    """The bracket [b(u), b(v)] of two basis elements, expanded in the basis.

    For u < v the bracket is b(uv) outright when either u is a single letter
    or the second half of u's standard factorization is >= v, since (u, v) is
    then the standard factorization of uv.  Otherwise u = u1 u2 splits and the
    Jacobi identity trades [b(u), b(v)] for [[b(u1), b(v)], b(u2)] plus
    [b(u1), [b(u2), b(v)]], whose inner pairs are closer to the good case; the
    rewriting terminates and the result is b(uv) plus a combination of
    lexicographically larger words of the same multidegree.

    Returned as an immutable term tuple so the cache is safe to share.
    """
    if u == v:
        return ()
    if u > v:
        return tuple((w, -c) for w, c in basis_bracket(v, u))
    if len(u) == 1 or standard_factorization(u)[1] >= v:
        return ((u + v, _ONE),)
    u1, u2 = standard_factorization(u)
    acc: LieElement = {}
    for w, c in basis_bracket(u1, v):
        for w2, c2 in basis_bracket(w, u2):
            _accumulate(acc, w2, c * c2)
    for w, c in basis_bracket(u2, v):
        for w2, c2 in basis_bracket(u1, w):
            _accumulate(acc, w2, c * c2)
    return tuple(sorted(acc.items()))


def lie_bracket(a: LieElement, b: LieElement) -> LieElement:
    """Bilinear extension of the basis bracket."""
    out: LieElement = {}
    for u, cu in a.items():
        for v, cv in b.items():
            c = cu * cv
            for w, cw in basis_bracket(u, v):
                _accumulate(out, w, c * cw)
    return out


def lyndon_normalize(tree, arity: int) -> LieElement:
    """Expand a binary bracket tree over generators in the Lyndon basis.

    A tree is either a generator index or a pair (left, right) standing for
    the bracket of its subtrees.  The result does not depend on the order in
    which nested brackets are eliminated; only leaf indices are checked
    against the arity.
    """
    if isinstance(tree, int):
        if not 1 <= tree <= arity:
            raise ValueError(f"generator index x{tree} out of range for arity {arity}")
        return {(tree,): _ONE}
    if isinstance(tree, tuple) and len(tree) == 2:
        left = lyndon_normalize(tree[0], arity)
        right = lyndon_normalize(tree[1], arity)
        return lie_bracket(left, right)
    raise ValueError(f"malformed bracket tree node: {tree!r}")


def lyndon_words(arity: int, max_len: int) -> list[Word]:
    """All Lyndon words over 1..arity of length <= max_len, in (length, lex) order."""
    alphabet = range(1, arity + 1)
    out: list[Word] = []
    for length in range(1, max_len + 1):
        out.extend(w for w in itertools.product(alphabet, repeat=length) if is_lyndon(w))
    return out


def bracket_text(word: Word) -> str:
    """Render a basis word as a nested bracket expression over the generators."""
    if len(word) == 1:
        return f"x{word[0]}"
    u, v = standard_factorization(word)
    return f"[{bracket_text(u)},{bracket_text(v)}]"
