"""Elements, brackets, and endomorphisms of free Poisson algebras.

The free Poisson algebra on x1..xn over the rationals is, as a commutative
algebra, the polynomial algebra whose variables are the Lyndon basis elements
of the free Lie algebra on the same generators.  A monomial is therefore a
multiset of Lyndon words, an element a sparse rational combination of
monomials, and the Poisson bracket extends the Lie bracket of basis words to
products by the Leibniz rule.

Values are immutable once constructed; all operations return fresh objects
and reject operands of mismatched arity.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .lyndon import (
    Word,
    LieElement,
    basis_bracket,
    bracket_text,
    standard_factorization,
    word_key,
)

Monomial = tuple[Word, ...]
Scalar = Fraction


def as_scalar(value) -> Fraction:
    """Coerce an int or Fraction to an exact scalar."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"not an exact scalar: {value!r}")


def monomial(words: Iterable[Word]) -> Monomial:
    """Canonical form of a factor multiset: sorted by (length, lex)."""
    return tuple(sorted(words, key=word_key))


def monomial_degree(m: Monomial) -> int:
    return sum(len(w) for w in m)


def monomial_key(m: Monomial):
    """Graded-lexicographic key used for deterministic term iteration."""
    return (monomial_degree(m), tuple(word_key(w) for w in m))


def _accumulate(acc: dict, key, c) -> None:
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


class PoissonElement:
    """Immutable sparse element of the free Poisson algebra of a fixed arity."""

    __slots__ = ("arity", "terms")

    def __init__(self, arity: int, terms: dict[Monomial, Fraction]):
        # terms must already be canonical: sorted factor tuples, no zeros
        if arity < 1:
            raise ValueError(f"arity must be positive, got {arity}")
        self.arity = arity
        self.terms = terms

    @classmethod
    def from_terms(cls, arity: int, items: Iterable[tuple[Iterable[Word], Scalar]]):
        acc: dict[Monomial, Fraction] = {}
        for words, c in items:
            m = monomial(words)
            for w in m:
                for letter in w:
                    if not 1 <= letter <= arity:
                        raise ValueError(
                            f"generator index x{letter} out of range for arity {arity}"
                        )
            _accumulate(acc, m, as_scalar(c))
        return cls(arity, acc)

    @classmethod
    def zero(cls, arity: int):
        return cls(arity, {})

    @classmethod
    def one(cls, arity: int):
        return cls(arity, {(): Fraction(1)})

    @classmethod
    def constant(cls, arity: int, value):
        c = as_scalar(value)
        return cls(arity, {(): c} if c else {})

    @classmethod
    def variable(cls, arity: int, index: int):
        if not 1 <= index <= arity:
            raise ValueError(f"generator index x{index} out of range for arity {arity}")
        return cls(arity, {((index,),): Fraction(1)})

    @classmethod
    def from_lie(cls, arity: int, lie: LieElement):
        """Embed a Lie element, each basis word becoming a degree-one factor."""
        return cls.from_terms(arity, (((w,), c) for w, c in lie.items()))

    def _check_arity(self, other: "PoissonElement") -> None:
        if self.arity != other.arity:
            raise ValueError(f"arity mismatch: {self.arity} vs {other.arity}")

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PoissonElement):
            return NotImplemented
        return self.arity == other.arity and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.arity, frozenset(self.terms.items())))

    def __add__(self, other: "PoissonElement"):
        self._check_arity(other)
        acc = dict(self.terms)
        for m, c in other.terms.items():
            _accumulate(acc, m, c)
        return PoissonElement(self.arity, acc)

    def __sub__(self, other: "PoissonElement"):
        self._check_arity(other)
        acc = dict(self.terms)
        for m, c in other.terms.items():
            _accumulate(acc, m, -c)
        return PoissonElement(self.arity, acc)

    def __neg__(self):
        return PoissonElement(self.arity, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, PoissonElement):
            return NotImplemented
        self._check_arity(other)
        acc: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                _accumulate(acc, monomial(m1 + m2), c1 * c2)
        return PoissonElement(self.arity, acc)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, value) -> "PoissonElement":
        c = as_scalar(value)
        if not c:
            return PoissonElement.zero(self.arity)
        return PoissonElement(self.arity, {m: c * cm for m, cm in self.terms.items()})

    def degree(self) -> int:
        """Total degree (letters counted with multiplicity); zero has degree 0."""
        if not self.terms:
            return 0
        return max(monomial_degree(m) for m in self.terms)

    def is_bracket_free(self) -> bool:
        """True if no monomial contains a factor of length >= 2."""
        return all(len(w) == 1 for m in self.terms for w in m)

    def uses_generator(self, index: int) -> bool:
        """True if x_index occurs anywhere, including inside bracket factors."""
        return any(index in w for m in self.terms for w in m)

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: monomial_key(kv[0]))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        chunks: list[str] = []
        for m, c in self.sorted_terms():
            sign = "-" if c < 0 else "+"
            body = _term_text(-c if c < 0 else c, m)
            if not chunks:
                chunks.append(body if sign == "+" else "-" + body)
            else:
                chunks.append(f" {sign} {body}")
        return "".join(chunks)

    def __repr__(self) -> str:
        return f"PoissonElement({self.arity}, {self})"


def _term_text(magnitude: Fraction, m: Monomial) -> str:
    factors = [bracket_text(w) for w in m]
    if not factors:
        return str(magnitude)
    if magnitude != 1:
        factors.insert(0, str(magnitude))
    return "*".join(factors)


def poisson_bracket(a: PoissonElement, b: PoissonElement) -> PoissonElement:
    """Poisson bracket, the Leibniz extension of the basis-word Lie bracket."""
    a._check_arity(b)
    acc: dict[Monomial, Fraction] = {}
    for m1, c1 in a.terms.items():
        for m2, c2 in b.terms.items():
            c12 = c1 * c2
            for i, w1 in enumerate(m1):
                rest1 = m1[:i] + m1[i + 1:]
                for j, w2 in enumerate(m2):
                    terms = basis_bracket(w1, w2)
                    if not terms:
                        continue
                    rest = rest1 + m2[:j] + m2[j + 1:]
                    for w, cw in terms:
                        _accumulate(acc, monomial(rest + (w,)), c12 * cw)
    return PoissonElement(a.arity, acc)


def project_pi(a: PoissonElement) -> PoissonElement:
    """Quotient map killing all brackets: drop monomials with a composite factor."""
    kept = {m: c for m, c in a.terms.items() if all(len(w) == 1 for w in m)}
    return PoissonElement(a.arity, kept)


def split_kernel(a: PoissonElement) -> tuple[PoissonElement, PoissonElement]:
    """Split a as (bracket-free part, kernel part); the parts sum back to a."""
    free = project_pi(a)
    return free, a - free


def bracket_free_partial(a: PoissonElement, index: int) -> PoissonElement:
    """Formal partial derivative of a bracket-free element in x_index."""
    if not a.is_bracket_free():
        raise ValueError("partial derivative requires a bracket-free element")
    if not 1 <= index <= a.arity:
        raise ValueError(f"generator index x{index} out of range for arity {a.arity}")
    acc: dict[Monomial, Fraction] = {}
    target = (index,)
    for m, c in a.terms.items():
        count = m.count(target)
        if not count:
            continue
        pos = m.index(target)
        _accumulate(acc, m[:pos] + m[pos + 1:], c * count)
    return PoissonElement(a.arity, acc)


class Endomorphism:
    """Poisson algebra endomorphism determined by the images of the generators."""

    __slots__ = ("arity", "images", "_word_cache")

    def __init__(self, arity: int, images: Iterable[PoissonElement]):
        images = tuple(images)
        if len(images) != arity:
            raise ValueError(f"expected {arity} generator images, got {len(images)}")
        for f in images:
            if f.arity != arity:
                raise ValueError("generator image has mismatched arity")
        self.arity = arity
        self.images = images
        self._word_cache: dict[Word, PoissonElement] = {}

    @classmethod
    def identity(cls, arity: int):
        return cls(arity, tuple(PoissonElement.variable(arity, i) for i in range(1, arity + 1)))

    def _image_of_word(self, w: Word) -> PoissonElement:
        got = self._word_cache.get(w)
        if got is None:
            if len(w) == 1:
                got = self.images[w[0] - 1]
            else:
                u, v = standard_factorization(w)
                got = poisson_bracket(self._image_of_word(u), self._image_of_word(v))
            self._word_cache[w] = got
        return got

    def apply(self, a: PoissonElement) -> PoissonElement:
        if a.arity != self.arity:
            raise ValueError(f"arity mismatch: {self.arity} vs {a.arity}")
        acc: dict[Monomial, Fraction] = {}
        for m, c in a.terms.items():
            prod = PoissonElement.one(self.arity)
            for w in m:
                prod = prod * self._image_of_word(w)
            for mm, cc in prod.terms.items():
                _accumulate(acc, mm, c * cc)
        return PoissonElement(self.arity, acc)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Endomorphism):
            return NotImplemented
        return self.arity == other.arity and self.images == other.images

    def __hash__(self) -> int:
        return hash((self.arity, self.images))

    def __str__(self) -> str:
        return "\n".join(f"x{i + 1} -> {im}" for i, im in enumerate(self.images))

    def __repr__(self) -> str:
        body = "; ".join(f"x{i + 1} -> {im}" for i, im in enumerate(self.images))
        return f"Endomorphism({self.arity}: {body})"


def apply_endo(phi: Endomorphism, a: PoissonElement) -> PoissonElement:
    return phi.apply(a)


def compose(phi: Endomorphism, psi: Endomorphism) -> Endomorphism:
    """The endomorphism sending each generator to phi(psi(x_i))."""
    if phi.arity != psi.arity:
        raise ValueError(f"arity mismatch: {phi.arity} vs {psi.arity}")
    return Endomorphism(phi.arity, tuple(phi.apply(f) for f in psi.images))


def project_endo(phi: Endomorphism) -> Endomorphism:
    """The induced endomorphism of the bracket-free quotient (images projected)."""
    return Endomorphism(phi.arity, tuple(project_pi(f) for f in phi.images))
