import random

import pytest

from qplane.algebra import Element, PresentationMismatch, random_element
from qplane.hopf import OMEGA_MAPS, coproduct, counit
from qplane.parser import parse
from qplane.presentations import GAMMA, OMEGA, SCALARS, A
from qplane.scalar import QINV, QScalar
from qplane.tensor import (
    TensorElement,
    TensorError,
    apply_in_slot,
    flatten_mul,
    koszul_exponent,
    scalar_flatten,
    tensor,
    tensor_multiply,
)


def T(text, p, arity=2):
    return parse(text, p, slots=(p,) * arity)


def test_koszul_signs_on_forms():
    t1 = T("theta (x) 1", OMEGA)
    t2 = T("1 (x) theta", OMEGA)
    assert t1 * t2 == T("theta (x) theta", OMEGA)
    assert t2 * t1 == -T("theta (x) theta", OMEGA)


def test_unsigned_product_differs_on_odd_slots():
    t1 = T("theta (x) 1", OMEGA)
    t2 = T("1 (x) theta", OMEGA)
    assert tensor_multiply(t2, t1, koszul=False) == T("theta (x) theta", OMEGA)


def test_degree_zero_slots_multiply_slotwise():
    assert T("x (x) x", GAMMA) * T("dx (x) x", GAMMA) == T("q^-1*dx*x (x) x^2", GAMMA)
    rng = random.Random(11)
    for _ in range(30):
        a, b, c, d = (random_element(A, rng, 3, 2) for _ in range(4))
        assert tensor(a, b) * tensor(c, d) == tensor(a * c, b * d)


def test_koszul_exponent():
    assert koszul_exponent((0, 1), (1, 0)) == 1
    assert koszul_exponent((1, 0), (0, 1)) == 0
    assert koszul_exponent((1, 1, 1), (1, 1, 1)) == 3


@pytest.mark.parametrize("p", [GAMMA, OMEGA], ids=lambda p: p.name)
def test_tensor_product_is_associative(p):
    rng = random.Random(f"tensor-{p.name}")
    for _ in range(25):
        a, b, c = (
            tensor(random_element(p, rng, 2, 2), random_element(p, rng, 2, 2)) for _ in range(3)
        )
        assert (a * b) * c == a * (b * c)


def test_coproducts_of_forms_square_to_zero():
    for g in ("theta", "phi"):
        dg = coproduct(Element.gen(g, OMEGA), OMEGA_MAPS)
        assert (dg * dg).is_zero()


def test_zero_tensors_compare_equal_across_slots():
    assert TensorElement.zero((A, A)) == TensorElement.zero((GAMMA, GAMMA))
    assert TensorElement.unit((A, A)).arity == 2


def test_mismatched_slots_rejected():
    with pytest.raises(Exception):
        T("x (x) x", A) * T("x (x) x", GAMMA)
    with pytest.raises(TensorError):
        TensorElement({(("x",),): 1}, (A, A))


def test_apply_in_slot_with_element_map():
    t = T("y (x) y", A)
    out = apply_in_slot(lambda u: u * Element.gen("x", A), 2, t)
    assert out == T("q^-1*y (x) x*y", A)


def test_apply_in_slot_splices_tensor_output():
    t = T("y (x) x", A)
    out = apply_in_slot(lambda u: tensor(u, u), 1, t)
    assert out.arity == 3
    assert out == parse("y (x) y (x) x", A, slots=(A, A, A))


def test_apply_in_slot_counit_then_scalar_flatten():
    from qplane.hopf import A_MAPS

    d = coproduct(Element.gen("y", A), A_MAPS)
    left = apply_in_slot(lambda u: counit(u, A_MAPS), 1, d)
    assert left.slots == (SCALARS, A)
    assert scalar_flatten(left) == Element.gen("y", A)


def test_odd_map_picks_up_sign_from_earlier_slots():
    t = T("dx (x) x", GAMMA)
    from qplane.hopf import differential

    assert apply_in_slot(differential, 2, t, parity=1) == -T("dx (x) dx", GAMMA)
    assert apply_in_slot(differential, 2, t, parity=0) == T("dx (x) dx", GAMMA)


def test_apply_in_slot_range():
    with pytest.raises(TensorError):
        apply_in_slot(lambda u: u, 3, T("x (x) x", A))


def test_flatten_mul():
    assert flatten_mul(T("y (x) x", A)) == Element({("x", "y"): QINV}, A)
    with pytest.raises(TensorError):
        flatten_mul(parse("x (x) x (x) x", A, slots=(A, A, A)))
    with pytest.raises(PresentationMismatch):
        flatten_mul(parse("x (x) x", A, slots=(A, GAMMA)))


def test_scalar_flatten_requires_scalar_slot():
    with pytest.raises(TensorError):
        scalar_flatten(T("x (x) x", A))


def test_scalar_flatten_of_pure_scalar():
    t = TensorElement({((),): QScalar.q(2)}, (SCALARS,))
    assert scalar_flatten(t) == QScalar.q(2)


def test_slot_map_examples_from_structure_maps():
    from qplane.hopf import A_MAPS, antipode

    xy = T("x (x) y", A)
    eps2 = apply_in_slot(lambda u: counit(u, A_MAPS), 2, xy)
    assert scalar_flatten(eps2).is_zero()
    assert apply_in_slot(lambda u: coproduct(u, A_MAPS), 1, xy) == parse(
        "x (x) x (x) y", A, slots=(A, A, A))
    assert apply_in_slot(lambda u: u, 1, xy) == xy

    assert flatten_mul(T("xi (x) x", A)) == Element.unit(A)
    assert flatten_mul(T("1 (x) 1", A)) == Element.unit(A)
    dy = coproduct(Element.gen("y", A), A_MAPS)
    assert flatten_mul(apply_in_slot(lambda u: antipode(u, A_MAPS), 1, dy)).is_zero()

    dx = coproduct(Element.gen("x", A), A_MAPS)
    assert scalar_flatten(apply_in_slot(lambda u: counit(u, A_MAPS), 1, dx)) == Element.gen("x", A)
    assert scalar_flatten(TensorElement.zero((SCALARS, A))).is_zero()
