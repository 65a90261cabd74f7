"""Graded free-algebra words, presentations by two-letter rewrite rules, and
canonical forms.

A word is a tuple of generator names. An :class:`Element` is a finite sum of
words with :class:`~qplane.scalar.QScalar` coefficients attached to a
:class:`Presentation`. Canonical forms are the fixpoints of the rewrite
system; the shipped presentations live in :mod:`qplane.presentations`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .scalar import ONE, ZERO, QScalar

Word = tuple  # tuple[str, ...]

STEP_BUDGET = 10**6


class AlgebraError(ValueError):
    pass


class UnknownGeneratorError(AlgebraError):
    pass


class ReductionBudgetExceeded(AlgebraError):
    pass


class PresentationMismatch(AlgebraError):
    pass


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    order_index: int


@dataclass(frozen=True)
class RewriteRule:
    """``lhs -> rhs`` where ``lhs`` is a two-letter word and ``rhs`` is a
    tuple of ``(word, coefficient)`` pairs (empty for zero)."""

    lhs: Word
    rhs: tuple

    def __str__(self) -> str:
        from .render import render_terms

        return f"{'*'.join(self.lhs)} -> {render_terms(dict(self.rhs))}"


class Presentation:
    """Generators with degrees and a canonical order, plus oriented rules.

    Every pair ``(a, b)`` with ``a`` after ``b`` in the generator order must
    have a rule; additional rules (inverse pairs, nilpotent squares) are
    allowed on in-order pairs.
    """

    def __init__(
        self,
        name: str,
        generators: Sequence[tuple[str, int]],
        rules: Iterable[tuple[Sequence[str], Mapping[Word, object] | Iterable]],
        inverse_pairs: Sequence[tuple[str, str]] = (),
        validate: bool = True,
    ):
        self.name = name
        self.generators = tuple(
            Generator(n, d, i) for i, (n, d) in enumerate(generators)
        )
        self._gen = {g.name: g for g in self.generators}
        if len(self._gen) != len(self.generators):
            raise AlgebraError("generator names must be unique")
        self.inverse_pairs = tuple(inverse_pairs)
        self.inverse = {}
        for a, b in self.inverse_pairs:
            self.inverse[a] = b
            self.inverse[b] = a
        table: dict[Word, RewriteRule] = {}
        for lhs, rhs in rules:
            lhs = tuple(lhs)
            if len(lhs) != 2:
                raise AlgebraError(f"rule lhs must have two letters: {lhs}")
            if lhs in table:
                raise AlgebraError(f"duplicate rule for {lhs}")
            items = rhs.items() if isinstance(rhs, Mapping) else rhs
            terms: dict[Word, QScalar] = {}
            for w, c in items:
                w = tuple(w)
                terms[w] = terms.get(w, ZERO) + QScalar.coerce(c)
            table[lhs] = RewriteRule(
                lhs, tuple((w, c) for w, c in terms.items() if c)
            )
        self.rules = table
        self._nf_cache: dict[Word, tuple] = {}
        if validate:
            self._validate()

    def _validate(self) -> None:
        for lhs, rule in self.rules.items():
            for s in lhs:
                self.check_symbol(s)
            dl = self.word_degree(lhs)
            for w, _ in rule.rhs:
                for s in w:
                    self.check_symbol(s)
                if self.word_degree(w) != dl:
                    raise AlgebraError(f"rule {rule} is not degree-homogeneous")
                if self.find_redex(w) is not None:
                    raise AlgebraError(f"rule {rule} has a reducible right side")
        for a, b in itertools.product(self.generators, repeat=2):
            if a.order_index > b.order_index and (a.name, b.name) not in self.rules:
                raise AlgebraError(
                    f"out-of-order pair {a.name}*{b.name} has no rule in {self.name}"
                )

    def __repr__(self) -> str:
        return f"Presentation({self.name!r})"

    # symbols

    @property
    def generator_names(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    def has_symbol(self, name: str) -> bool:
        return name in self._gen

    def check_symbol(self, name: str) -> Generator:
        try:
            return self._gen[name]
        except KeyError:
            raise UnknownGeneratorError(
                f"unknown generator {name!r} for presentation {self.name}"
            ) from None

    def degree(self, name: str) -> int:
        return self.check_symbol(name).degree

    def word_degree(self, word: Word) -> int:
        gen = self._gen
        return sum(gen[s].degree for s in word)

    def order_key(self, word: Word) -> tuple:
        gen = self._gen
        return tuple(gen[s].order_index for s in word)

    def sort_key(self, word: Word) -> tuple:
        return (self.word_degree(word), len(word), self.order_key(word))

    # rewriting

    def find_redex(self, word: Word, start: int = 0):
        rules = self.rules
        for i in range(max(start, 0), len(word) - 1):
            rule = rules.get((word[i], word[i + 1]))
            if rule is not None:
                return i, rule
        return None

    def is_normal(self, word: Word) -> bool:
        return self.find_redex(word) is None

    def normal_form(self, word: Word, budget: int = STEP_BUDGET) -> tuple:
        """Canonical form of a single word as a tuple of (word, coeff)."""
        word = tuple(word)
        cached = self._nf_cache.get(word)
        if cached is not None:
            return cached
        for s in word:
            self.check_symbol(s)
        result = self._reduce({word: ONE}, budget)
        out = tuple(result.items())
        self._nf_cache[word] = out
        return out

    def _reduce(self, pending: dict, budget: int) -> dict:
        result: dict[Word, QScalar] = {}
        steps = 0
        cache = self._nf_cache
        while pending:
            w, c = pending.popitem()
            cached = cache.get(w)
            if cached is not None:
                for nw, nc in cached:
                    _accumulate(result, nw, c * nc)
                continue
            hit = self.find_redex(w)
            if hit is None:
                _accumulate(result, w, c)
                continue
            steps += 1
            if steps > budget:
                raise ReductionBudgetExceeded(
                    f"reduction in {self.name} exceeded {budget} steps"
                )
            i, rule = hit
            head, tail = w[:i], w[i + 2:]
            for rw, rc in rule.rhs:
                _accumulate(pending, head + rw + tail, c * rc)
        return result

    def rewrite_at(self, word: Word, i: int) -> dict:
        """Apply the rule at position ``i`` once (no further reduction)."""
        rule = self.rules[(word[i], word[i + 1])]
        return {word[:i] + rw + word[i + 2:]: rc for rw, rc in rule.rhs}


def _accumulate(acc: dict, key, coeff: QScalar) -> None:
    if not coeff:
        return
    s = acc.get(key)
    if s is None:
        acc[key] = coeff
    else:
        s = s + coeff
        if s:
            acc[key] = s
        else:
            del acc[key]


class Element:
    """A finite linear combination of words in one presentation.

    Elements produced by the public operations are canonical. ``Element(...)``
    itself does not normalize, which is what relation checks need: structure
    maps are applied to free-algebra words, then compared after normalizing.
    """

    __slots__ = ("terms", "presentation")

    def __init__(self, terms: Mapping[Word, object], presentation: Presentation):
        clean = {}
        for w, c in terms.items():
            c = QScalar.coerce(c)
            if c:
                clean[tuple(w)] = c
        self.terms: dict[Word, QScalar] = clean
        self.presentation = presentation

    @classmethod
    def _wrap(cls, terms: dict, presentation: Presentation) -> "Element":
        obj = cls.__new__(cls)
        obj.terms = terms
        obj.presentation = presentation
        return obj

    @classmethod
    def zero(cls, p: Presentation) -> "Element":
        return cls._wrap({}, p)

    @classmethod
    def unit(cls, p: Presentation, coeff=ONE) -> "Element":
        return cls({(): coeff}, p)

    @classmethod
    def word(cls, word: Sequence[str] | str, p: Presentation, coeff=ONE) -> "Element":
        """Raw (unnormalized) single-word element; ``word`` may be space- or
        ``*``-separated text."""
        if isinstance(word, str):
            word = [s for s in word.replace("*", " ").split() if s]
        for s in word:
            p.check_symbol(s)
        return cls({tuple(word): coeff}, p)

    @classmethod
    def gen(cls, name: str, p: Presentation) -> "Element":
        p.check_symbol(name)
        return cls._wrap({(name,): ONE}, p)

    def __iter__(self) -> Iterator[tuple[Word, QScalar]]:
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def coefficient(self, word) -> QScalar:
        if isinstance(word, str):
            word = tuple(s for s in word.replace("*", " ").split() if s)
        return self.terms.get(tuple(word), ZERO)

    def is_canonical(self) -> bool:
        p = self.presentation
        return all(p.is_normal(w) for w in self.terms)

    def sorted_terms(self) -> list[tuple[Word, QScalar]]:
        key = self.presentation.sort_key
        return sorted(self.terms.items(), key=lambda t: key(t[0]))

    def with_presentation(self, p: Presentation) -> "Element":
        """Reinterpret the same words in a presentation that contains them."""
        for w in self.terms:
            for s in w:
                p.check_symbol(s)
        return Element._wrap(dict(self.terms), p)

    # arithmetic

    def _coerce_other(self, other) -> "Element":
        if isinstance(other, Element):
            if other.presentation is not self.presentation and other.terms and self.terms:
                raise PresentationMismatch(
                    f"{self.presentation.name} vs {other.presentation.name}"
                )
            return other
        return Element.unit(self.presentation, QScalar.coerce(other))

    def __add__(self, other) -> "Element":
        try:
            other = self._coerce_other(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for w, c in other.terms.items():
            _accumulate(out, w, c)
        p = self.presentation if self.terms or not other.terms else other.presentation
        return Element._wrap(out, p)

    __radd__ = __add__

    def __neg__(self) -> "Element":
        return Element._wrap({w: -c for w, c in self.terms.items()}, self.presentation)

    def __sub__(self, other) -> "Element":
        try:
            other = self._coerce_other(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Element":
        return (-self) + other

    def scale(self, c) -> "Element":
        c = QScalar.coerce(c)
        if not c:
            return Element.zero(self.presentation)
        return Element._wrap({w: c * v for w, v in self.terms.items()}, self.presentation)

    def __mul__(self, other) -> "Element":
        if isinstance(other, Element):
            return multiply(self, other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other) -> "Element":
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __pow__(self, n: int) -> "Element":
        if n < 0:
            raise ValueError("negative powers of elements are not supported")
        out = Element.unit(self.presentation)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, Element):
            if not self.terms and not other.terms:
                return True
            return self.presentation is other.presentation and self.terms == other.terms
        if isinstance(other, (int, Fraction, QScalar)):
            return self.terms == Element.unit(self.presentation, other).terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        return f"Element({self}, {self.presentation.name})"

    def __str__(self) -> str:
        from .render import render

        return render(self)


# operations


def normalize(e: Element, p: Presentation | None = None) -> Element:
    """Return the canonical form of ``e`` under ``p`` (default: its own)."""
    p = p or e.presentation
    out: dict[Word, QScalar] = {}
    for w, c in e.terms.items():
        for nw, nc in p.normal_form(w):
            _accumulate(out, nw, c * nc)
    return Element._wrap(out, p)


def multiply(a: Element, b: Element, p: Presentation | None = None) -> Element:
    p = p or a.presentation
    if a.terms and a.presentation is not p:
        raise PresentationMismatch(f"{a.presentation.name} vs {p.name}")
    if b.terms and b.presentation is not p:
        raise PresentationMismatch(f"{b.presentation.name} vs {p.name}")
    out: dict[Word, QScalar] = {}
    nf = p.normal_form
    for w1, c1 in a.terms.items():
        for w2, c2 in b.terms.items():
            c = c1 * c2
            for nw, nc in nf(w1 + w2):
                _accumulate(out, nw, c * nc)
    return Element._wrap(out, p)


def add(a: Element, b: Element) -> Element:
    return a + b


def scale(c, a: Element) -> Element:
    return a.scale(c)


MIXED = "mixed"


def degree_of(e: Element):
    """Common degree of the words of ``e``; ``MIXED`` if inhomogeneous,
    ``None`` for zero."""
    degs = {e.presentation.word_degree(w) for w in e.terms}
    if not degs:
        return None
    if len(degs) > 1:
        return MIXED
    return degs.pop()


def homogeneous_components(e: Element) -> dict[int, Element]:
    out: dict[int, dict] = {}
    for w, c in e.terms.items():
        out.setdefault(e.presentation.word_degree(w), {})[w] = c
    return {d: Element._wrap(t, e.presentation) for d, t in sorted(out.items())}


def classical_limit(e: Element) -> dict[tuple[int, int], Fraction]:
    """Set ``q = 1``: returns ``{(deg_x, deg_y): coefficient}``.

    Only defined on elements built from ``x`` and ``y`` (no inverse)."""
    out: dict[tuple[int, int], Fraction] = {}
    for w, c in e.terms.items():
        a = b = 0
        for s in w:
            if s == "x":
                a += 1
            elif s == "y":
                b += 1
            else:
                raise AlgebraError(f"classical limit undefined for generator {s!r}")
        v = out.get((a, b), Fraction(0)) + c.eval_at(1)
        if v:
            out[(a, b)] = v
        else:
            out.pop((a, b), None)
    return out


# critical pairs


@dataclass
class CriticalPair:
    word: Word
    left: Element
    right: Element

    @property
    def convergent(self) -> bool:
        return self.left == self.right


@dataclass
class ConfluenceReport:
    presentation: str
    pairs: list = field(default_factory=list)

    @property
    def divergent(self) -> list:
        return [cp for cp in self.pairs if not cp.convergent]

    @property
    def ok(self) -> bool:
        return not self.divergent

    def summary(self) -> str:
        return (
            f"{self.presentation}: {len(self.pairs)} critical pairs, "
            f"{len(self.divergent)} divergent"
        )


def check_local_confluence(p: Presentation, max_overlap_len: int = 3) -> ConfluenceReport:
    """Resolve every overlap ``g1 g2 g3`` of two rule left sides both ways.

    Rule left sides have two letters, so all overlaps have length three; the
    bound is validated but cannot admit longer ones.
    """
    if max_overlap_len < 3:
        raise ValueError("max_overlap_len must be at least 3")
    report = ConfluenceReport(p.name)
    names = p.generator_names
    for g1, g2, g3 in itertools.product(names, repeat=3):
        if (g1, g2) not in p.rules or (g2, g3) not in p.rules:
            continue
        w = (g1, g2, g3)
        left = normalize(Element(p.rewrite_at(w, 0), p), p)
        right = normalize(Element(p.rewrite_at(w, 1), p), p)
        report.pairs.append(CriticalPair(w, left, right))
    return report


# enumeration helpers


def words(p: Presentation, max_len: int, min_len: int = 0) -> Iterator[Word]:
    """All free words over the generators with length in [min_len, max_len]."""
    names = p.generator_names
    for n in range(min_len, max_len + 1):
        yield from itertools.product(names, repeat=n)


def normal_words(p: Presentation, max_len: int) -> list[Word]:
    return [w for w in words(p, max_len) if p.is_normal(w)]


def random_element(p: Presentation, rng, max_len: int = 3, n_terms: int = 3,
                   symbols: Sequence[str] | None = None, degree: int | None = None) -> Element:
    """Canonical element from a few random words with small random scalar
    coefficients. ``degree`` restricts to homogeneous words of that degree."""
    names = list(symbols or p.generator_names)
    out = Element.zero(p)
    attempts = 0
    while len(out.terms) < n_terms and attempts < 50 * n_terms:
        attempts += 1
        n = rng.randint(0, max_len)
        w = tuple(rng.choice(names) for _ in range(n))
        if degree is not None and p.word_degree(w) != degree:
            continue
        c = QScalar({rng.randint(-2, 2): rng.choice([1, -1, 2, -3, Fraction(1, 2)])})
        out = out + normalize(Element({w: c}, p), p)
    return out
