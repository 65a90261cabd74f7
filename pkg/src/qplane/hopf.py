"""Hopf structure maps on A, Gamma, Omega and Borel.

Coproducts and coactions extend their generator images multiplicatively into
the Koszul-signed tensor product; antipodes extend as graded
antihomomorphisms; the exterior derivative extends by the graded Leibniz
rule. All maps accept raw (unnormalized) elements, which is what the
relation checks rely on.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Mapping

from .algebra import AlgebraError, Element, Presentation, _accumulate, normalize
from .presentations import BOREL, GAMMA, OMEGA, A
from .scalar import ONE, ZERO, QScalar
from .tensor import TensorElement, apply_in_slot, tensor_multiply


class MissingImageError(AlgebraError):
    pass


def _el(p: Presentation, text: str) -> Element:
    from .parser import parse

    return parse(text, p)


def _tens(slots, text: str) -> TensorElement:
    from .parser import parse

    return parse(text, slots[0], slots=slots)


def _tensor_hom(images: Mapping[str, TensorElement], word, slots, koszul: bool) -> TensorElement:
    out = TensorElement.unit(slots)
    for s in word:
        try:
            img = images[s]
        except KeyError:
            raise MissingImageError(f"no image for generator {s!r}") from None
        out = tensor_multiply(out, img, koszul=koszul)
    return out


@dataclass(frozen=True, eq=False)
class StructureMaps:
    """Generator images of the coproduct, counit and antipode of one algebra.

    ``koszul`` and ``graded_antipode`` select the sign conventions; both are
    on for the real structures and exist so the sign sensitivity of the
    axioms can be demonstrated.
    """

    algebra: Presentation
    coproduct_images: Mapping[str, TensorElement]
    counit_images: Mapping[str, QScalar]
    antipode_images: Mapping[str, Element]
    koszul: bool = True
    graded_antipode: bool = True
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        p = self.algebra
        for a, b in p.inverse_pairs:
            if a not in self.antipode_images or b not in self.antipode_images:
                continue
            sa, sb = self.antipode_images[a], self.antipode_images[b]
            if normalize(sb * sa) != Element.unit(p) or normalize(sa * sb) != Element.unit(p):
                raise AlgebraError(f"antipode images of {a}, {b} are not mutually inverse")

    def variant(self, **changes) -> "StructureMaps":
        return replace(self, _cache={}, **changes)

    @property
    def name(self) -> str:
        return self.algebra.name

    def coproduct_word(self, word) -> TensorElement:
        key = ("D", word)
        hit = self._cache.get(key)
        if hit is None:
            hit = _tensor_hom(self.coproduct_images, word, (self.algebra,) * 2, self.koszul)
            self._cache[key] = hit
        return hit

    def counit_word(self, word) -> QScalar:
        out = ONE
        for s in word:
            try:
                out = out * self.counit_images[s]
            except KeyError:
                raise MissingImageError(f"no counit image for {s!r}") from None
            if not out:
                break
        return out

    def antipode_word(self, word) -> Element:
        key = ("S", word)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        p = self.algebra
        out = Element.unit(p)
        for s in reversed(word):
            try:
                out = out * self.antipode_images[s]
            except KeyError:
                raise MissingImageError(f"no antipode image for {s!r}") from None
        if self.graded_antipode:
            degs = [p.degree(s) for s in word]
            sign = 0
            running = 0
            for d in degs:
                sign += d * running
                running += d
            if sign % 2:
                out = -out
        self._cache[key] = out
        return out


# extension to elements


def coproduct(e: Element, maps: StructureMaps) -> TensorElement:
    out: dict = {}
    for w, c in e.terms.items():
        for ws, tc in maps.coproduct_word(w).terms.items():
            _accumulate(out, ws, c * tc)
    return TensorElement._wrap(out, (maps.algebra,) * 2)


def counit(e: Element, maps: StructureMaps) -> QScalar:
    out = ZERO
    for w, c in e.terms.items():
        out = out + c * maps.counit_word(w)
    return out


def antipode(e: Element, maps: StructureMaps) -> Element:
    out = Element.zero(maps.algebra)
    for w, c in e.terms.items():
        out = out + maps.antipode_word(w).scale(c)
    return out


# ----------------------------------------------------------------- A and Borel


def _qplane_maps(p: Presentation, x: str, xi: str, y: str) -> StructureMaps:
    slots = (p, p)
    return StructureMaps(
        algebra=p,
        coproduct_images={
            x: _tens(slots, f"{x} (x) {x}"),
            xi: _tens(slots, f"{xi} (x) {xi}"),
            y: _tens(slots, f"{y} (x) 1 + {x} (x) {y}"),
        },
        counit_images={x: ONE, xi: ONE, y: ZERO},
        antipode_images={
            x: _el(p, xi),
            xi: _el(p, x),
            y: _el(p, f"-{xi}*{y}"),
        },
    )


A_MAPS = _qplane_maps(A, "x", "xi", "y")
BOREL_MAPS = _qplane_maps(BOREL, "K", "Ki", "X")


# -------------------------------------------------------------------- Gamma

_D_IMAGES = {
    "x": "dx",
    "y": "dy",
    "xi": "-xi*dx*xi",
    "dx": "0",
    "dy": "0",
}
D_IMAGES = {s: _el(GAMMA, t) for s, t in _D_IMAGES.items()}


def differential(e: Element) -> Element:
    """Exterior derivative on Gamma (graded Leibniz, ``d(dx) = d(dy) = 0``)."""
    p = e.presentation
    if p is A:
        e = e.with_presentation(GAMMA)
    elif p is not GAMMA:
        raise AlgebraError(f"d is defined on Gamma, not {p.name}")
    out: dict = {}
    for w, c in e.terms.items():
        for nw, nc in _d_word(w).terms.items():
            _accumulate(out, nw, c * nc)
    return Element._wrap(out, GAMMA)


_d_cache: dict = {}


def _d_word(word) -> Element:
    hit = _d_cache.get(word)
    if hit is not None:
        return hit
    out = Element.zero(GAMMA)
    prefix_degree = 0
    for i, s in enumerate(word):
        img = D_IMAGES[s]
        if img:
            left = Element._wrap({word[:i]: ONE}, GAMMA)
            right = Element._wrap({word[i + 1:]: ONE}, GAMMA)
            term = left * img * right
            out = out - term if prefix_degree % 2 else out + term
        prefix_degree += GAMMA.degree(s)
    _d_cache[word] = out
    return out


# right coaction Gamma -> Gamma (x) A, images as printed for dx, dy
_GA = (GAMMA, A)
_AG = (A, GAMMA)
PHI_R_IMAGES = {
    "x": _tens(_GA, "x (x) x"),
    "xi": _tens(_GA, "xi (x) xi"),
    "y": _tens(_GA, "y (x) 1 + x (x) y"),
    "dx": _tens(_GA, "dx (x) x"),
    "dy": _tens(_GA, "dy (x) 1 + dx (x) y"),
}


def _phi_left_images() -> dict:
    # phi_L o d = (id (x) d) o Delta, on the coordinate generators
    images = {
        "x": _tens(_AG, "x (x) x"),
        "xi": _tens(_AG, "xi (x) xi"),
        "y": _tens(_AG, "y (x) 1 + x (x) y"),
    }
    for v, dv in (("x", "dx"), ("y", "dy")):
        images[dv] = apply_in_slot(differential, 2, coproduct(Element.gen(v, A), A_MAPS), parity=1)
    return images


PHI_L_IMAGES = _phi_left_images()


def _coaction(e: Element, images, slots) -> TensorElement:
    if e.presentation is A:
        e = e.with_presentation(GAMMA)
    out: dict = {}
    for w, c in e.terms.items():
        for ws, tc in _tensor_hom(images, w, slots, True).terms.items():
            _accumulate(out, ws, c * tc)
    return TensorElement._wrap(out, slots)


def coaction_right(e: Element) -> TensorElement:
    """Delta_R : Gamma -> Gamma (x) A."""
    return _coaction(e, PHI_R_IMAGES, _GA)


def coaction_left(e: Element) -> TensorElement:
    """Delta_L : Gamma -> A (x) Gamma."""
    return _coaction(e, PHI_L_IMAGES, _AG)


def _gamma_maps() -> StructureMaps:
    gg = (GAMMA, GAMMA)
    images = {
        "x": _tens(gg, "x (x) x"),
        "xi": _tens(gg, "xi (x) xi"),
        "y": _tens(gg, "y (x) 1 + x (x) y"),
    }
    # on differentials the coproduct is Delta_R + Delta_L
    for dv in ("dx", "dy"):
        images[dv] = PHI_R_IMAGES[dv].with_slots(gg) + PHI_L_IMAGES[dv].with_slots(gg)
    return StructureMaps(
        algebra=GAMMA,
        coproduct_images=images,
        counit_images={"x": ONE, "xi": ONE, "y": ZERO, "dx": ZERO, "dy": ZERO},
        antipode_images={
            "x": _el(GAMMA, "xi"),
            "xi": _el(GAMMA, "x"),
            "y": _el(GAMMA, "-xi*y"),
            "dx": _el(GAMMA, "-xi*dx*xi"),
            "dy": _el(GAMMA, "xi*dx*xi*y - xi*dy"),
        },
    )


GAMMA_MAPS = _gamma_maps()


# -------------------------------------------------------------------- Omega

OMEGA_MAPS = StructureMaps(
    algebra=OMEGA,
    coproduct_images={
        "x": _tens((OMEGA, OMEGA), "x (x) x"),
        "xi": _tens((OMEGA, OMEGA), "xi (x) xi"),
        "y": _tens((OMEGA, OMEGA), "y (x) 1 + x (x) y"),
        "theta": _tens((OMEGA, OMEGA), "theta (x) 1 + 1 (x) theta"),
        "phi": _tens((OMEGA, OMEGA), "phi (x) 1 + x (x) phi - y (x) theta"),
    },
    counit_images={"x": ONE, "xi": ONE, "y": ZERO, "theta": ZERO, "phi": ZERO},
    antipode_images={
        "x": _el(OMEGA, "xi"),
        "xi": _el(OMEGA, "x"),
        "y": _el(OMEGA, "-xi*y"),
        "theta": _el(OMEGA, "-theta"),
        "phi": _el(OMEGA, "-q^-1*phi*xi - theta*xi*y"),
    },
)

FORM_IMAGES = {
    "x": _el(GAMMA, "x"),
    "xi": _el(GAMMA, "xi"),
    "y": _el(GAMMA, "y"),
    "theta": _el(GAMMA, "dx*xi"),
    "phi": _el(GAMMA, "dy - dx*xi*y"),
}


def embed_forms(e: Element) -> Element:
    """Algebra map Omega -> Gamma sending the forms to their expressions in
    dx, dy and the coordinates."""
    if e.presentation is not OMEGA and e.terms:
        raise AlgebraError(f"embed_forms expects an Omega element, got {e.presentation.name}")
    out = Element.zero(GAMMA)
    for w, c in e.terms.items():
        img = Element.unit(GAMMA)
        for s in w:
            img = img * FORM_IMAGES[s]
        out = out + img.scale(c)
    return out


# ------------------------------------------------------------ renaming to Borel

BOREL_RENAMING = {"x": "K", "xi": "Ki", "y": "X"}
_BOREL_INVERSE = {v: k for k, v in BOREL_RENAMING.items()}


def rename(e: Element, mapping: Mapping[str, str], target: Presentation) -> Element:
    terms = {tuple(mapping[s] for s in w): c for w, c in e.terms.items()}
    return Element(terms, target)


def borel_rename(e: Element) -> Element:
    """x -> K, xi -> Ki, y -> X."""
    if e.presentation is not A and e.terms:
        raise AlgebraError("borel_rename expects an element of A")
    return rename(e, BOREL_RENAMING, BOREL)


def borel_unrename(e: Element) -> Element:
    if e.presentation is not BOREL and e.terms:
        raise AlgebraError("borel_unrename expects an element of Borel")
    return rename(e, _BOREL_INVERSE, A)


def rename_tensor(t: TensorElement, mapping: Mapping[str, str], target: Presentation) -> TensorElement:
    terms = {tuple(tuple(mapping[s] for s in w) for w in ws): c for ws, c in t.terms.items()}
    return TensorElement(terms, (target,) * t.arity)


# ---------------------------------------------------------------- S^-1 probe


@dataclass
class ProbeResult:
    generator: str
    exponent: int
    inverse_image: Element
    antipode_squared: Element
    printed_exponent: int

    @property
    def agrees(self) -> bool:
        return self.exponent == self.printed_exponent


# the printed inverse antipode: S^-1(x) = S(x), S^-1(y) = q^-1 S(y)
PRINTED_INVERSE_EXPONENTS = {"x": 0, "y": -1}


def antipode_inverse_probe(g: str, maps: StructureMaps = A_MAPS, window=range(-2, 3)) -> ProbeResult:
    """Find the unique ``k`` in ``window`` with ``S(q^k S(g)) = g``."""
    p = maps.algebra
    if g not in PRINTED_INVERSE_EXPONENTS:
        raise ValueError(f"probe is defined for x and y, not {g!r}")
    target = Element.gen(g, p)
    s_g = antipode(target, maps)
    hits = [k for k in window if antipode(s_g.scale(QScalar.q(k)), maps) == target]
    if len(hits) != 1:
        raise AlgebraError(f"expected one q-power inverting S on {g}, found {hits}")
    k = hits[0]
    return ProbeResult(
        generator=g,
        exponent=k,
        inverse_image=s_g.scale(QScalar.q(k)),
        antipode_squared=antipode(s_g, maps),
        printed_exponent=PRINTED_INVERSE_EXPONENTS[g],
    )


MAPS = {"A": A_MAPS, "Gamma": GAMMA_MAPS, "Omega": OMEGA_MAPS, "Borel": BOREL_MAPS}

__all__ = [
    "StructureMaps", "coproduct", "counit", "antipode", "differential",
    "coaction_right", "coaction_left", "embed_forms", "borel_rename",
    "borel_unrename", "antipode_inverse_probe", "ProbeResult",
    "A_MAPS", "GAMMA_MAPS", "OMEGA_MAPS", "BOREL_MAPS", "MAPS",
]
