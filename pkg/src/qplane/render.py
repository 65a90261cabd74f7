"""Canonical text rendering of elements and tensors (inverse of the parser)."""

from __future__ import annotations

from .scalar import QScalar, _render_monomial, render_scalar


def render_word(word) -> str:
    if not word:
        return ""
    parts = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        n = j - i
        parts.append(word[i] if n == 1 else f"{word[i]}^{n}")
        i = j
    return "*".join(parts)


def _term(coeff: QScalar, body: str, first: bool, lone: bool) -> str:
    """One summand: ``body`` is the rendered word(s), possibly empty."""
    if coeff.is_monomial():
        (e, c), = coeff.items()
        negative = c < 0
        mag = _render_monomial(e, abs(c))
        if not body:
            text = mag
        elif mag == "1":
            text = body
        else:
            text = f"{mag}*{body}"
    else:
        negative = False
        s = render_scalar(coeff)
        if not body:
            text = s if lone else f"({s})"
        else:
            text = f"({s})*{body}"
    if first:
        return "-" + text if negative else text
    return (" - " if negative else " + ") + text


def render_terms(terms: dict, sort_key=None) -> str:
    items = list(terms.items())
    if sort_key is not None:
        items.sort(key=lambda t: sort_key(t[0]))
    if not items:
        return "0"
    lone = len(items) == 1
    return "".join(
        _term(c, render_word(w), i == 0, lone) for i, (w, c) in enumerate(items)
    )


def render_element(e) -> str:
    return render_terms(e.terms, e.presentation.sort_key)


def render_tensor(t) -> str:
    items = t.sorted_terms()
    if not items:
        return "0"
    out = []
    for i, (ws, c) in enumerate(items):
        slots = [render_word(w) or "1" for w in ws]
        head = slots[0] if ws[0] else ""
        first = _term(c, head, i == 0, False)
        out.append(" (x) ".join([first] + slots[1:]))
    return "".join(out)


def render(obj) -> str:
    """Render an Element, TensorElement or QScalar."""
    from .algebra import Element
    from .tensor import TensorElement

    if isinstance(obj, Element):
        return render_element(obj)
    if isinstance(obj, TensorElement):
        return render_tensor(obj)
    if isinstance(obj, QScalar):
        return render_scalar(obj)
    raise TypeError(f"cannot render {type(obj).__name__}")
