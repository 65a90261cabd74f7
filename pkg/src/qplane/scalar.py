"""Exact Laurent polynomials in ``q`` with rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Union

Number = Union[int, Fraction]


class QScalar:
    """An element of Q[q, q^-1], stored as a sorted tuple of (exponent, coefficient).

    Zero coefficients are never stored, so structural equality is equality
    of Laurent polynomials.

    >>> q = QScalar.q()
    >>> (q - 1) + 1 == q
    True
    >>> q * q.inverse_monomial() == QScalar.one()
    True
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Number] | Iterable[tuple[int, Number]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, Fraction] = {}
        for exp, coeff in items:
            acc[int(exp)] = acc.get(int(exp), 0) + Fraction(coeff)
        self._terms = tuple(sorted((e, c) for e, c in acc.items() if c != 0))
        self._hash = None

    @classmethod
    def _from_sorted(cls, terms: tuple[tuple[int, Fraction], ...]) -> "QScalar":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls) -> "QScalar":
        return _ZERO

    @classmethod
    def one(cls) -> "QScalar":
        return _ONE

    @classmethod
    def q(cls, power: int = 1) -> "QScalar":
        return cls._from_sorted(((int(power), Fraction(1)),))

    @classmethod
    def const(cls, value: Number) -> "QScalar":
        value = Fraction(value)
        if value == 0:
            return _ZERO
        return cls._from_sorted(((0, value),))

    @classmethod
    def coerce(cls, value) -> "QScalar":
        if isinstance(value, QScalar):
            return value
        if isinstance(value, (int, Rational)):
            return cls.const(Fraction(value))
        raise TypeError(f"cannot interpret {value!r} as a QScalar")

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def items(self) -> tuple[tuple[int, Fraction], ...]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def __bool__(self) -> bool:
        return bool(self._terms)

    # arithmetic

    def __add__(self, other) -> "QScalar":
        if not isinstance(other, QScalar):
            try:
                other = QScalar.coerce(other)
            except TypeError:
                return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        acc = dict(self._terms)
        for e, c in other._terms:
            s = acc.get(e, 0) + c
            if s:
                acc[e] = s
            else:
                acc.pop(e, None)
        return QScalar._from_sorted(tuple(sorted(acc.items())))

    __radd__ = __add__

    def __neg__(self) -> "QScalar":
        return QScalar._from_sorted(tuple((e, -c) for e, c in self._terms))

    def __sub__(self, other) -> "QScalar":
        if not isinstance(other, QScalar):
            try:
                other = QScalar.coerce(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "QScalar":
        return QScalar.coerce(other) - self

    def __mul__(self, other) -> "QScalar":
        if not isinstance(other, QScalar):
            try:
                other = QScalar.coerce(other)
            except TypeError:
                return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return _ZERO
        if len(a) == 1 and len(b) == 1:
            return QScalar._from_sorted(((a[0][0] + b[0][0], a[0][1] * b[0][1]),))
        acc: dict[int, Fraction] = {}
        for e1, c1 in a:
            for e2, c2 in b:
                e = e1 + e2
                acc[e] = acc.get(e, 0) + c1 * c2
        return QScalar._from_sorted(tuple(sorted((e, c) for e, c in acc.items() if c)))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "QScalar":
        if n < 0:
            if not self.is_monomial():
                raise ValueError("only monomials in q are invertible")
            return self.inverse_monomial() ** (-n)
        out = _ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse_monomial(self) -> "QScalar":
        if not self.is_monomial():
            raise ValueError("only monomials in q are invertible")
        (e, c), = self._terms
        return QScalar._from_sorted(((-e, 1 / c),))

    def eval_at(self, q0) -> Fraction:
        """Substitute ``q = q0`` and return the exact rational value."""
        q0 = Fraction(q0)
        if q0 == 0:
            raise ValueError("q must be nonzero")
        return sum((c * q0 ** e for e, c in self._terms), Fraction(0))

    # comparison / hashing

    def __eq__(self, other) -> bool:
        if isinstance(other, QScalar):
            return self._terms == other._terms
        if isinstance(other, (int, Rational)):
            return self._terms == QScalar.const(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def __repr__(self) -> str:
        return f"QScalar({self})"

    def __str__(self) -> str:
        return render_scalar(self)


def _render_monomial(exp: int, coeff: Fraction) -> str:
    # coeff assumed positive
    if exp == 0:
        return str(coeff)
    qpart = "q" if exp == 1 else f"q^{exp}"
    if coeff == 1:
        return qpart
    return f"{coeff}*{qpart}"


def render_scalar(s: QScalar) -> str:
    """Render as e.g. ``q^-1 - 1`` (ascending powers of q)."""
    if not s._terms:
        return "0"
    parts = []
    for i, (e, c) in enumerate(s._terms):
        body = _render_monomial(e, abs(c))
        if i == 0:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append((" + " if c > 0 else " - ") + body)
    return "".join(parts)


_ZERO = QScalar._from_sorted(())
_ONE = QScalar._from_sorted(((0, Fraction(1)),))

ZERO = _ZERO
ONE = _ONE
Q = QScalar.q(1)
QINV = QScalar.q(-1)


def add(a: QScalar, b: QScalar) -> QScalar:
    return a + b


def mul(a: QScalar, b: QScalar) -> QScalar:
    return a * b


def neg(a: QScalar) -> QScalar:
    return -a


def eval_at(a: QScalar, q0) -> Fraction:
    return a.eval_at(q0)
