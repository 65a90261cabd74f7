"""Exact computer algebra for the extended quantum plane, its differential
calculus and the algebra of forms, with mechanical Hopf-axiom checks."""

__version__ = "0.1.0"

from .algebra import (  # noqa: E402
    Element,
    Presentation,
    check_local_confluence,
    classical_limit,
    degree_of,
    multiply,
    normalize,
)
from .hopf import (  # noqa: E402
    A_MAPS,
    BOREL_MAPS,
    GAMMA_MAPS,
    OMEGA_MAPS,
    antipode,
    antipode_inverse_probe,
    borel_rename,
    coaction_left,
    coaction_right,
    coproduct,
    counit,
    differential,
    embed_forms,
)
from .parser import ParseError, parse, render  # noqa: E402
from .presentations import BOREL, GAMMA, OMEGA, A  # noqa: E402
from .scalar import QScalar  # noqa: E402
from .tensor import (  # noqa: E402
    TensorElement,
    apply_in_slot,
    flatten_mul,
    scalar_flatten,
    tensor,
    tensor_multiply,
)

__all__ = [
    "QScalar", "Element", "Presentation", "check_local_confluence", "classical_limit",
    "degree_of", "multiply", "normalize", "A", "BOREL", "GAMMA", "OMEGA",
    "TensorElement", "apply_in_slot", "flatten_mul", "scalar_flatten", "tensor",
    "tensor_multiply", "ParseError", "parse", "render", "A_MAPS", "BOREL_MAPS",
    "GAMMA_MAPS", "OMEGA_MAPS", "antipode", "antipode_inverse_probe", "borel_rename",
    "coaction_left", "coaction_right", "coproduct", "counit", "differential", "embed_forms",
]
