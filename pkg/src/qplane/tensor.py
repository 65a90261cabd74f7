"""Graded tensor products of presented algebras.

Multiplication carries the Koszul sign: moving a factor of degree ``m`` past
one of degree ``n`` costs ``(-1)^(m*n)``. Slots are numbered from 1 in the
public API, matching the usual ``(f (x) id)`` notation.
"""

from __future__ import annotations

import itertools
from typing import Callable, Sequence

from .algebra import Element, Presentation, PresentationMismatch, _accumulate
from .presentations import SCALARS
from .scalar import ONE, QScalar


class TensorError(ValueError):
    pass


class TensorElement:
    """Sum of coefficient-weighted tuples of canonical words."""

    __slots__ = ("terms", "slots")

    def __init__(self, terms: dict, slots: Sequence[Presentation]):
        self.slots = tuple(slots)
        clean = {}
        for ws, c in terms.items():
            ws = tuple(tuple(w) for w in ws)
            if len(ws) != len(self.slots):
                raise TensorError("word tuple arity does not match slots")
            c = QScalar.coerce(c)
            if c:
                clean[ws] = c
        self.terms: dict[tuple, QScalar] = clean

    @classmethod
    def _wrap(cls, terms: dict, slots: tuple) -> "TensorElement":
        obj = cls.__new__(cls)
        obj.terms = terms
        obj.slots = slots
        return obj

    @classmethod
    def zero(cls, slots: Sequence[Presentation]) -> "TensorElement":
        return cls._wrap({}, tuple(slots))

    @classmethod
    def unit(cls, slots: Sequence[Presentation]) -> "TensorElement":
        slots = tuple(slots)
        return cls._wrap({((),) * len(slots): ONE}, slots)

    @property
    def arity(self) -> int:
        return len(self.slots)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def slot_degrees(self, ws: tuple) -> tuple:
        return tuple(p.word_degree(w) for p, w in zip(self.slots, ws))

    def sorted_terms(self) -> list:
        def key(item):
            ws = item[0]
            return (
                sum(self.slot_degrees(ws)),
                sum(len(w) for w in ws),
                tuple(p.order_key(w) for p, w in zip(self.slots, ws)),
            )

        return sorted(self.terms.items(), key=key)

    def with_slots(self, slots: Sequence[Presentation]) -> "TensorElement":
        """Reinterpret the words in (larger) presentations, e.g. A -> Gamma."""
        slots = tuple(slots)
        if len(slots) != self.arity:
            raise TensorError("arity mismatch")
        for ws in self.terms:
            for p, w in zip(slots, ws):
                for s in w:
                    p.check_symbol(s)
        return TensorElement._wrap(dict(self.terms), slots)

    def _check_compatible(self, other: "TensorElement") -> None:
        if self.arity != other.arity:
            raise TensorError(f"arity mismatch: {self.arity} vs {other.arity}")
        if self.terms and other.terms and self.slots != other.slots:
            raise PresentationMismatch(
                f"slot presentations differ: {_names(self.slots)} vs {_names(other.slots)}"
            )

    def __add__(self, other: "TensorElement") -> "TensorElement":
        if not isinstance(other, TensorElement):
            return NotImplemented
        self._check_compatible(other)
        out = dict(self.terms)
        for ws, c in other.terms.items():
            _accumulate(out, ws, c)
        slots = self.slots if self.terms or not other.terms else other.slots
        return TensorElement._wrap(out, slots)

    def __neg__(self) -> "TensorElement":
        return TensorElement._wrap({ws: -c for ws, c in self.terms.items()}, self.slots)

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "TensorElement":
        c = QScalar.coerce(c)
        if not c:
            return TensorElement.zero(self.slots)
        return TensorElement._wrap({ws: c * v for ws, v in self.terms.items()}, self.slots)

    def __mul__(self, other):
        if isinstance(other, TensorElement):
            return tensor_multiply(self, other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorElement):
            return NotImplemented
        if not self.terms and not other.terms:
            return True
        return self.slots == other.slots and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        return f"TensorElement({self}, {_names(self.slots)})"

    def __str__(self) -> str:
        from .render import render_tensor

        return render_tensor(self)


def _names(slots) -> str:
    return "(x)".join(p.name for p in slots)


def tensor(*factors: Element) -> TensorElement:
    """Outer product ``a (x) b (x) ...`` of canonical elements."""
    if len(factors) < 1:
        raise TensorError("need at least one factor")
    slots = tuple(f.presentation for f in factors)
    out: dict = {}
    for combo in itertools.product(*(f.terms.items() for f in factors)):
        c = ONE
        for _, fc in combo:
            c = c * fc
        _accumulate(out, tuple(w for w, _ in combo), c)
    return TensorElement._wrap(out, slots)


def koszul_exponent(left_degrees: Sequence[int], right_degrees: Sequence[int]) -> int:
    """``sum_{i>j} deg(a_i) deg(b_j)`` for ``(a_1 (x) ...)(b_1 (x) ...)``."""
    total = 0
    running = 0
    for i in range(len(left_degrees)):
        # running = deg(b_1) + ... + deg(b_{i-1})
        total += left_degrees[i] * running
        running += right_degrees[i]
    return total


def tensor_multiply(a: TensorElement, b: TensorElement, koszul: bool = True) -> TensorElement:
    a._check_compatible(b)
    slots = a.slots if a.terms else b.slots
    if not a.terms or not b.terms:
        return TensorElement.zero(slots)
    out: dict = {}
    nfs = [p.normal_form for p in slots]
    degs_b = {ws: b.slot_degrees(ws) for ws in b.terms}
    for wa, ca in a.terms.items():
        da = a.slot_degrees(wa)
        for wb, cb in b.terms.items():
            c = ca * cb
            if koszul and koszul_exponent(da, degs_b[wb]) % 2:
                c = -c
            parts = [nf(x + y) for nf, x, y in zip(nfs, wa, wb)]
            for combo in itertools.product(*parts):
                cc = c
                for _, pc in combo:
                    cc = cc * pc
                _accumulate(out, tuple(w for w, _ in combo), cc)
    return TensorElement._wrap(out, slots)


def _as_tensor(result, slots_hint=None) -> TensorElement:
    if isinstance(result, TensorElement):
        return result
    if isinstance(result, Element):
        return TensorElement._wrap(
            {(w,): c for w, c in result.terms.items()}, (result.presentation,)
        )
    if isinstance(result, QScalar) or isinstance(result, int):
        c = QScalar.coerce(result)
        return TensorElement._wrap({((),): c} if c else {}, (SCALARS,))
    raise TypeError(f"slot map returned {type(result).__name__}")


def apply_in_slot(f: Callable, slot: int, t: TensorElement, parity: int = 0) -> TensorElement:
    """Apply ``f`` to slot ``slot`` (1-based) of ``t``, linearly.

    ``f`` receives a single-word Element and may return an Element (arity
    unchanged), a TensorElement (its slots are spliced in) or a QScalar (the
    slot becomes a ground-field slot). An odd ``parity`` marks a degree-1 map
    such as ``d``, which picks up the sign ``(-1)^(degree of earlier slots)``.
    """
    if not 1 <= slot <= t.arity:
        raise TensorError(f"slot {slot} out of range for arity {t.arity}")
    i = slot - 1
    p = t.slots[i]
    out: dict = {}
    new_slots = None
    for ws, c in t.terms.items():
        img = _as_tensor(f(Element._wrap({ws[i]: ONE}, p)))
        if new_slots is None:
            new_slots = t.slots[:i] + img.slots + t.slots[i + 1:]
        elif t.slots[:i] + img.slots + t.slots[i + 1:] != new_slots and img.terms:
            raise PresentationMismatch("slot map changed codomain between terms")
        if parity % 2 and sum(t.slots[j].word_degree(ws[j]) for j in range(i)) % 2:
            c = -c
        for iws, ic in img.terms.items():
            _accumulate(out, ws[:i] + iws + ws[i + 1:], c * ic)
    if new_slots is None:
        img = _as_tensor(f(Element.unit(p)))
        new_slots = t.slots[:i] + img.slots + t.slots[i + 1:]
    return TensorElement._wrap(out, new_slots)


def flatten_mul(t: TensorElement) -> Element:
    """The multiplication map ``m(a (x) b) = ab``."""
    if t.arity != 2:
        raise TensorError("flatten_mul needs arity 2")
    p, p2 = t.slots
    if p is not p2:
        if t.terms:
            raise PresentationMismatch(f"mixed presentations {_names(t.slots)}")
    out: dict = {}
    for (w1, w2), c in t.terms.items():
        for nw, nc in p.normal_form(w1 + w2):
            _accumulate(out, nw, c * nc)
    return Element._wrap(out, p)


def scalar_flatten(t: TensorElement):
    """Absorb the ground-field slot: ``k (x) u -> k u`` and ``u (x) k -> k u``."""
    idx = [i for i, p in enumerate(t.slots) if p is SCALARS]
    if not idx:
        raise TensorError("no scalar slot to absorb")
    i = idx[0]
    slots = t.slots[:i] + t.slots[i + 1:]
    out: dict = {}
    for ws, c in t.terms.items():
        _accumulate(out, ws[:i] + ws[i + 1:], c)
    if len(slots) == 1:
        return Element._wrap({ws[0]: c for ws, c in out.items()}, slots[0])
    if not slots:
        return out.get((), QScalar.zero())
    return TensorElement._wrap(out, slots)
