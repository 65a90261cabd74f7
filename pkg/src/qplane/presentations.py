"""The shipped presentations: the extended quantum plane ``A``, its
differential calculus ``Gamma``, the forms algebra ``Omega`` and the Borel
form ``Borel`` (generators ``K = q^{H/2}``, ``X``).

Canonical words put degree-1 generators first, then powers of the invertible
coordinate, then powers of the other coordinate. Inverses are spelled ``xi``
and ``Ki``.
"""

from __future__ import annotations

from .algebra import Presentation
from .scalar import ONE, QINV, Q

_UNIT = ()


def _qplane_rules(x: str, xi: str, y: str) -> list:
    return [
        ((y, x), {(x, y): QINV}),
        ((x, xi), {_UNIT: ONE}),
        ((xi, x), {_UNIT: ONE}),
        ((y, xi), {(xi, y): Q}),
    ]


def _gamma_rules(drop_inhomogeneous_term: bool = False) -> list:
    y_dx = {("dx", "y"): QINV}
    if not drop_inhomogeneous_term:
        y_dx[("dy", "x")] = QINV - 1
    return _qplane_rules("x", "xi", "y") + [
        (("x", "dx"), {("dx", "x"): QINV}),
        (("x", "dy"), {("dy", "x"): ONE}),
        (("y", "dx"), y_dx),
        (("y", "dy"), {("dy", "y"): QINV}),
        (("dx", "dx"), {}),
        (("dy", "dx"), {("dx", "dy"): -ONE}),
        (("dy", "dy"), {}),
        (("xi", "dx"), {("dx", "xi"): Q}),
        (("xi", "dy"), {("dy", "xi"): ONE}),
    ]


def _omega_rules() -> list:
    return _qplane_rules("x", "xi", "y") + [
        (("x", "theta"), {("theta", "x"): QINV}),
        (("y", "theta"), {("theta", "y"): QINV, ("phi",): QINV - 1}),
        (("x", "phi"), {("phi", "x"): ONE}),
        (("y", "phi"), {("phi", "y"): ONE}),
        (("theta", "theta"), {}),
        (("phi", "theta"), {("theta", "phi"): -QINV}),
        (("phi", "phi"), {}),
        (("xi", "theta"), {("theta", "xi"): Q}),
        (("xi", "phi"), {("phi", "xi"): ONE}),
    ]


A = Presentation(
    "A",
    [("x", 0), ("xi", 0), ("y", 0)],
    _qplane_rules("x", "xi", "y"),
    inverse_pairs=[("x", "xi")],
)

GAMMA = Presentation(
    "Gamma",
    [("dx", 1), ("dy", 1), ("x", 0), ("xi", 0), ("y", 0)],
    _gamma_rules(),
    inverse_pairs=[("x", "xi")],
)

OMEGA = Presentation(
    "Omega",
    [("theta", 1), ("phi", 1), ("x", 0), ("xi", 0), ("y", 0)],
    _omega_rules(),
    inverse_pairs=[("x", "xi")],
)

BOREL = Presentation(
    "Borel",
    [("K", 0), ("Ki", 0), ("X", 0)],
    _qplane_rules("K", "Ki", "X"),
    inverse_pairs=[("K", "Ki")],
)

# ground field, used as the slot type of counit outputs inside tensors
SCALARS = Presentation("k", [], [])

SHIPPED = {"A": A, "Gamma": GAMMA, "Omega": OMEGA, "Borel": BOREL}

_ALIASES = {
    "a": "A",
    "gamma": "Gamma",
    "omega": "Omega",
    "borel": "Borel",
}


def get(name: str) -> Presentation:
    """Look up a shipped presentation by (case-insensitive) name."""
    try:
        return SHIPPED[_ALIASES[name.lower()]]
    except KeyError:
        raise KeyError(f"unknown algebra {name!r}; expected one of {sorted(SHIPPED)}") from None


def corrupted_gamma() -> Presentation:
    """Gamma with the ``(q^-1 - 1) dy*x`` term dropped from the ``y*dx`` rule.

    Negative control for the confluence checker; not a valid calculus.
    """
    return Presentation(
        "Gamma-corrupted",
        [("dx", 1), ("dy", 1), ("x", 0), ("xi", 0), ("y", 0)],
        _gamma_rules(drop_inhomogeneous_term=True),
        inverse_pairs=[("x", "xi")],
    )
