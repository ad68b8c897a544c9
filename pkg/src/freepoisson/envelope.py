"""The multiplicative enveloping algebra of a free Poisson algebra, and the
commutative envelope of its bracket-free quotient.

An enveloping element is kept in normal form: a sparse map from words in the
bracket operators H_{x_i} to coefficients that are elements of the underlying
Poisson algebra (collected multiplication operators M_a).  The product
normalizes by pushing an H generator through an M coefficient with the
commutation rule H_a M_b = M_[a,b] + M_b H_a, which strictly shortens the
H-word still to be moved, so rewriting terminates; associativity tests double
as uniqueness checks for the normal form.

The commutative envelope is a plain polynomial ring: for each generator label
k there are two commuting variables, m<k> (multiplication image) and h<k>
(bracket image).  Matrices over it carry the Jacobian calculus.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .lyndon import Word, standard_factorization
from .poisson import (
    Endomorphism,
    PoissonElement,
    as_scalar,
    bracket_free_partial,
    poisson_bracket,
    project_pi,
)

HWord = tuple[int, ...]


def _acc_poisson(acc: dict, key, value: PoissonElement) -> None:
    cur = acc.get(key)
    if cur is None:
        if value:
            acc[key] = value
    else:
        cur = cur + value
        if cur:
            acc[key] = cur
        else:
            del acc[key]


class EnvElement:
    """Normal-form element of the enveloping algebra of a fixed arity."""

    __slots__ = ("arity", "terms")

    def __init__(self, arity: int, terms: dict[HWord, PoissonElement]):
        self.arity = arity
        self.terms = terms

    @classmethod
    def zero(cls, arity: int):
        return cls(arity, {})

    @classmethod
    def one(cls, arity: int):
        return cls(arity, {(): PoissonElement.one(arity)})

    def _check_arity(self, other: "EnvElement") -> None:
        if self.arity != other.arity:
            raise ValueError(f"arity mismatch: {self.arity} vs {other.arity}")

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, EnvElement):
            return NotImplemented
        return self.arity == other.arity and self.terms == other.terms

    def __add__(self, other: "EnvElement"):
        self._check_arity(other)
        acc = dict(self.terms)
        for w, a in other.terms.items():
            _acc_poisson(acc, w, a)
        return EnvElement(self.arity, acc)

    def __sub__(self, other: "EnvElement"):
        return self + (-other)

    def __neg__(self):
        return EnvElement(self.arity, {w: -a for w, a in self.terms.items()})

    def scale(self, value) -> "EnvElement":
        c = as_scalar(value)
        if not c:
            return EnvElement.zero(self.arity)
        return EnvElement(self.arity, {w: a.scale(c) for w, a in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, EnvElement):
            return NotImplemented
        self._check_arity(other)
        acc: dict[HWord, PoissonElement] = {}
        for w1, a in self.terms.items():
            for w2, b in other.terms.items():
                for w, coeff in _word_past_m(self.arity, w1, b).items():
                    _acc_poisson(acc, w + w2, a * coeff)
        return EnvElement(self.arity, acc)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def sorted_terms(self) -> list[tuple[HWord, PoissonElement]]:
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        one = PoissonElement.one(self.arity)
        for w, a in self.sorted_terms():
            factors = []
            if a != one or not w:
                factors.append("1" if a == one else f"M[{a}]")
            factors.extend(f"H[x{i}]" for i in w)
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"EnvElement({self.arity}, {self})"


def _word_past_m(arity: int, w: HWord, b: PoissonElement) -> dict[HWord, PoissonElement]:
    """Normal form of (H-word w) * M_b, peeling the H generator next to M_b."""
    if not w:
        return {(): b}
    head, last = w[:-1], w[-1]
    out: dict[HWord, PoissonElement] = {}
    moved = poisson_bracket(PoissonElement.variable(arity, last), b)
    if moved:
        for ww, coeff in _word_past_m(arity, head, moved).items():
            _acc_poisson(out, ww, coeff)
    for ww, coeff in _word_past_m(arity, head, b).items():
        _acc_poisson(out, ww + (last,), coeff)
    return out


def m_of(a: PoissonElement) -> EnvElement:
    """The multiplication operator by a, already in normal form."""
    if not a:
        return EnvElement.zero(a.arity)
    return EnvElement(a.arity, {(): a})


_H_WORD_CACHE: dict[tuple[int, Word], EnvElement] = {}


def _h_word(arity: int, w: Word) -> EnvElement:
    """H of a Lyndon basis word; composite words expand through the bracket."""
    got = _H_WORD_CACHE.get((arity, w))
    if got is None:
        if len(w) == 1:
            got = EnvElement(arity, {(w[0],): PoissonElement.one(arity)})
        else:
            u, v = standard_factorization(w)
            hu = _h_word(arity, u)
            hv = _h_word(arity, v)
            got = hu * hv - hv * hu
        _H_WORD_CACHE[(arity, w)] = got
    return got


def h_of(a: PoissonElement) -> EnvElement:
    """The bracket operator H_a in normal form.

    Linear in a, with H of a constant equal to zero; on a monomial the
    derivation rule H_{bc} = M_b H_c + M_c H_b singles out each factor in
    turn, and composite basis words expand via H_[b,c] = H_b H_c - H_c H_b.
    """
    n = a.arity
    acc: dict[HWord, PoissonElement] = {}
    for m, c in a.terms.items():
        for i, w in enumerate(m):
            rest = PoissonElement.from_terms(n, ((m[:i] + m[i + 1:], c),))
            part = m_of(rest) * _h_word(n, w)
            for hw, coeff in part.terms.items():
                _acc_poisson(acc, hw, coeff)
    return EnvElement(n, acc)


class CEnvElement:
    """Polynomial in the commuting variables m<k>, h<k> for each label k.

    Labels name the generators still present: the full commutative envelope
    of the arity-n algebra has labels (1, ..., n), while the image of the
    evaluation onto the subalgebra generated by x3 keeps the single label 3.
    Exponent tuples store the m block before the h block.
    """

    __slots__ = ("labels", "terms")

    def __init__(self, labels: tuple[int, ...], terms: dict[tuple[int, ...], Fraction]):
        self.labels = labels
        self.terms = terms

    @classmethod
    def zero(cls, labels: tuple[int, ...]):
        return cls(labels, {})

    @classmethod
    def constant(cls, labels: tuple[int, ...], value):
        c = as_scalar(value)
        width = 2 * len(labels)
        return cls(labels, {(0,) * width: c} if c else {})

    @classmethod
    def one(cls, labels: tuple[int, ...]):
        return cls.constant(labels, 1)

    @classmethod
    def m_var(cls, labels: tuple[int, ...], label: int):
        exps = [0] * (2 * len(labels))
        exps[labels.index(label)] = 1
        return cls(labels, {tuple(exps): Fraction(1)})

    @classmethod
    def h_var(cls, labels: tuple[int, ...], label: int):
        exps = [0] * (2 * len(labels))
        exps[len(labels) + labels.index(label)] = 1
        return cls(labels, {tuple(exps): Fraction(1)})

    def _check_labels(self, other: "CEnvElement") -> None:
        if self.labels != other.labels:
            raise ValueError(f"label mismatch: {self.labels} vs {other.labels}")

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, CEnvElement):
            return NotImplemented
        return self.labels == other.labels and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.labels, frozenset(self.terms.items())))

    def __add__(self, other: "CEnvElement"):
        self._check_labels(other)
        acc = dict(self.terms)
        for e, c in other.terms.items():
            cur = acc.get(e)
            if cur is None:
                acc[e] = c
            elif cur + c:
                acc[e] = cur + c
            else:
                del acc[e]
        return CEnvElement(self.labels, acc)

    def __sub__(self, other: "CEnvElement"):
        return self + (-other)

    def __neg__(self):
        return CEnvElement(self.labels, {e: -c for e, c in self.terms.items()})

    def scale(self, value) -> "CEnvElement":
        c = as_scalar(value)
        if not c:
            return CEnvElement.zero(self.labels)
        return CEnvElement(self.labels, {e: c * ce for e, ce in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, CEnvElement):
            return NotImplemented
        self._check_labels(other)
        acc: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                cur = acc.get(key)
                if cur is None:
                    acc[key] = c
                elif cur + c:
                    acc[key] = cur + c
                else:
                    del acc[key]
        return CEnvElement(self.labels, acc)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError("negative powers are not defined here")
        out = CEnvElement.one(self.labels)
        for _ in range(exponent):
            out = out * self
        return out

    def substitute(
        self,
        m_images: dict[int, "CEnvElement"],
        h_images: dict[int, "CEnvElement"],
    ) -> "CEnvElement":
        """Evaluate under a ring map given by images of every m and h variable."""
        k = len(self.labels)
        sample = next(iter(m_images.values()), None)
        labels_out = sample.labels if sample is not None else self.labels
        out = CEnvElement.zero(labels_out)
        for exps, c in self.terms.items():
            term = CEnvElement.constant(labels_out, c)
            for pos, e in enumerate(exps):
                if not e:
                    continue
                label = self.labels[pos % k]
                image = m_images[label] if pos < k else h_images[label]
                term = term * image**e
            out = out + term
        return out

    def degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        k = len(self.labels)
        chunks: list[str] = []
        for exps, c in self.sorted_terms():
            factors = []
            for pos, e in enumerate(exps):
                name = ("m" if pos < k else "h") + str(self.labels[pos % k])
                factors.extend([name] * e)
            mag = -c if c < 0 else c
            if mag != 1 or not factors:
                factors.insert(0, str(mag))
            body = "*".join(factors)
            sign = "-" if c < 0 else "+"
            if not chunks:
                chunks.append(body if sign == "+" else "-" + body)
            else:
                chunks.append(f" {sign} {body}")
        return "".join(chunks)

    def __repr__(self) -> str:
        return f"CEnvElement({self.labels}, {self})"


def project_pi_e(u: EnvElement) -> CEnvElement:
    """Image of an enveloping element in the commutative envelope.

    Poisson coefficients lose their bracket monomials, surviving letters
    become m variables, and each H-word letter becomes an h variable.
    """
    n = u.arity
    labels = tuple(range(1, n + 1))
    acc: dict[tuple[int, ...], Fraction] = {}
    for hw, a in u.terms.items():
        h_exps = [0] * n
        for i in hw:
            h_exps[i - 1] += 1
        for m, c in project_pi(a).terms.items():
            m_exps = [0] * n
            for (letter,) in m:
                m_exps[letter - 1] += 1
            key = tuple(m_exps) + tuple(h_exps)
            cur = acc.get(key)
            if cur is None:
                acc[key] = c
            elif cur + c:
                acc[key] = cur + c
            else:
                del acc[key]
    return CEnvElement(labels, acc)


def eta_e(u: CEnvElement) -> CEnvElement:
    """Evaluation of the three-generator commutative envelope onto the
    envelope of the subalgebra generated by x3 (x1 and x2 sent to zero)."""
    if u.labels != (1, 2, 3):
        raise ValueError(f"expected labels (1, 2, 3), got {u.labels}")
    acc: dict[tuple[int, ...], Fraction] = {}
    for exps, c in u.terms.items():
        m1, m2, m3, h1, h2, h3 = exps
        if m1 or m2 or h1 or h2:
            continue
        acc[(m3, h3)] = c
    return CEnvElement((3,), acc)


def cenv_of_bracket_free(a: PoissonElement) -> CEnvElement:
    """A bracket-free element as a polynomial in the m variables."""
    if not a.is_bracket_free():
        raise ValueError("element has bracket factors")
    n = a.arity
    labels = tuple(range(1, n + 1))
    acc: dict[tuple[int, ...], Fraction] = {}
    for m, c in a.terms.items():
        exps = [0] * (2 * n)
        for (letter,) in m:
            exps[letter - 1] += 1
        acc[tuple(exps)] = c
    return CEnvElement(labels, acc)


def induced_endo_e(phibar: Endomorphism, u: CEnvElement) -> CEnvElement:
    """Apply the envelope ring map induced by a bracket-free endomorphism.

    Each m variable goes to the polynomial of the corresponding generator
    image g, and each h variable to the expansion of H_g in terms of the
    formal partials of g.
    """
    n = phibar.arity
    if u.labels != tuple(range(1, n + 1)):
        raise ValueError(f"label mismatch: expected 1..{n}, got {u.labels}")
    labels = u.labels
    m_images: dict[int, CEnvElement] = {}
    h_images: dict[int, CEnvElement] = {}
    for i in range(1, n + 1):
        g = phibar.images[i - 1]
        m_images[i] = cenv_of_bracket_free(g)
        h_img = CEnvElement.zero(labels)
        for j in range(1, n + 1):
            part = bracket_free_partial(g, j)
            if part:
                h_img = h_img + cenv_of_bracket_free(part) * CEnvElement.h_var(labels, j)
        h_images[i] = h_img
    return u.substitute(m_images, h_images)


class CEnvMatrix:
    """Rectangular matrix over a commutative envelope with fixed labels."""

    __slots__ = ("labels", "rows")

    def __init__(self, labels: tuple[int, ...], rows: Sequence[Sequence[CEnvElement]]):
        rows = tuple(tuple(r) for r in rows)
        if not rows or not rows[0]:
            raise ValueError("matrix must have at least one row and column")
        width = len(rows[0])
        for r in rows:
            if len(r) != width:
                raise ValueError("ragged matrix rows")
            for entry in r:
                if entry.labels != labels:
                    raise ValueError("entry labels do not match the matrix labels")
        self.labels = labels
        self.rows = rows

    @classmethod
    def identity(cls, labels: tuple[int, ...], size: int):
        one = CEnvElement.one(labels)
        zero = CEnvElement.zero(labels)
        return cls(labels, [[one if i == j else zero for j in range(size)] for i in range(size)])

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), len(self.rows[0]))

    def entry(self, i: int, j: int) -> CEnvElement:
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, CEnvMatrix):
            return NotImplemented
        return self.labels == other.labels and self.rows == other.rows

    def __mul__(self, other: "CEnvMatrix"):
        if not isinstance(other, CEnvMatrix):
            return NotImplemented
        if self.labels != other.labels:
            raise ValueError("label mismatch in matrix product")
        n, k = self.shape
        k2, m = other.shape
        if k != k2:
            raise ValueError(f"shape mismatch: {self.shape} by {other.shape}")
        rows = []
        for i in range(n):
            row = []
            for j in range(m):
                acc = CEnvElement.zero(self.labels)
                for t in range(k):
                    acc = acc + self.rows[i][t] * other.rows[t][j]
                row.append(acc)
            rows.append(row)
        return CEnvMatrix(self.labels, rows)

    def block(self, row_stop: int, col_stop: int) -> "CEnvMatrix":
        """Leading block with the given numbers of rows and columns."""
        return CEnvMatrix(self.labels, [r[:col_stop] for r in self.rows[:row_stop]])

    def map_entries(self, fn: Callable[[CEnvElement], CEnvElement]) -> "CEnvMatrix":
        mapped = [[fn(entry) for entry in row] for row in self.rows]
        return CEnvMatrix(mapped[0][0].labels, mapped)

    def det(self) -> CEnvElement:
        """Determinant by cofactor expansion along the first row."""
        n, m = self.shape
        if n != m:
            raise ValueError("determinant of a non-square matrix")
        if n == 1:
            return self.rows[0][0]
        total = CEnvElement.zero(self.labels)
        for j in range(m):
            entry = self.rows[0][j]
            if not entry:
                continue
            minor = CEnvMatrix(self.labels, [row[:j] + row[j + 1:] for row in self.rows[1:]])
            term = entry * minor.det()
            total = total + (term if j % 2 == 0 else -term)
        return total

    def __str__(self) -> str:
        return "\n".join("[" + ", ".join(str(e) for e in row) + "]" for row in self.rows)

    def __repr__(self) -> str:
        return f"CEnvMatrix({self.labels}, shape={self.shape})"
