"""Groebner engine: S-pair certificates, normal forms, resource caps."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conekit.fields import DEFAULT_PRIME, PrimeField, QQ
from conekit.groebner import (
    DEFAULT_CAPS,
    ResourceCapExceeded,
    ResourceCaps,
    buchberger,
    is_groebner_basis,
    normal_form,
)
from conekit.ring import AmbientSpace, BlockElimOrder, GrevlexOrder, LexOrder, PolyRing

FP = PrimeField(DEFAULT_PRIME)
R = PolyRing(AmbientSpace.product(("x", 4)), FP)
ORDER = GrevlexOrder(4)


def small_polys(nvars=4, max_terms=3, max_exp=3):
    ring = R
    monos = st.tuples(*[st.integers(0, max_exp)] * nvars)
    coeffs = st.integers(1, DEFAULT_PRIME - 1)
    pairs = st.lists(st.tuples(monos, coeffs), min_size=1, max_size=max_terms)
    return pairs.map(lambda ps: ring.from_terms({m: c for m, c in ps}))


@settings(max_examples=25, deadline=None)
@given(gens=st.lists(small_polys(), min_size=1, max_size=3))
def test_buchberger_output_is_groebner(gens):
    basis = buchberger(gens, ORDER, DEFAULT_CAPS)
    assert is_groebner_basis(basis, ORDER, DEFAULT_CAPS)
    # every input generator reduces to zero against the basis
    for g in gens:
        assert normal_form(g, basis, ORDER).is_zero()


@settings(max_examples=25, deadline=None)
@given(gens=st.lists(small_polys(), min_size=1, max_size=3), p=small_polys())
def test_normal_form_is_stable(gens, p):
    basis = buchberger(gens, ORDER, DEFAULT_CAPS)
    r = normal_form(p, basis, ORDER)
    assert normal_form(r, basis, ORDER) == r


def test_twisted_cubic_elimination():
    """Lex basis of the twisted cubic contains the three classical minors."""
    x0, x1, x2, x3 = R.gens()
    gens = [x1 * x1 - x0 * x2, x2 * x2 - x1 * x3, x1 * x2 - x0 * x3]
    basis = buchberger(gens, LexOrder(4), DEFAULT_CAPS)
    assert is_groebner_basis(basis, LexOrder(4), DEFAULT_CAPS)
    for g in gens:
        assert normal_form(g, basis, LexOrder(4)).is_zero()


def test_elimination_order_projects():
    # eliminate t from (x - t^2, y - t^3): the image is the cuspidal cubic
    amb = AmbientSpace.product(("t", 1), ("v", 2), affine=("t", "v"))
    ring = PolyRing(amb, QQ)
    t, x, y = ring.var("t0"), ring.var("v0"), ring.var("v1")
    order = BlockElimOrder.for_blocks(amb, ["t"])
    basis = buchberger([x - t * t, y - t * t * t], order, DEFAULT_CAPS)
    t_free = [g for g in basis if all(m[0] == 0 for m in g.terms)]
    target = y * y - x * x * x
    assert any(g == target or g == -target for g in t_free)


def test_reduced_basis_is_monic_and_autoreduced():
    x0, x1, x2, x3 = R.gens()
    basis = buchberger([x0 * x0 + x1 * x1, x0 * x1], ORDER, DEFAULT_CAPS)
    for i, g in enumerate(basis):
        assert g.lead(ORDER)[1] == FP.one
        others = basis[:i] + basis[i + 1:]
        assert normal_form(g, others, ORDER) == g


def test_unit_ideal_detection():
    x0, x1, x2, x3 = R.gens()
    basis = buchberger([x0, x0 + R.one()], ORDER, DEFAULT_CAPS)
    assert len(basis) == 1 and basis[0] == R.one()


def test_reduction_step_cap_raises():
    caps = ResourceCaps(max_basis=4000, max_pairs=200000,
                        max_coeff_bits=100000, max_reduction_steps=10)
    x0, x1, x2, x3 = R.gens()
    with pytest.raises(ResourceCapExceeded):
        buchberger([x0 ** 5 - x1 * x2 * x3, x1 ** 4 - x2 * x3 ** 2,
                    x2 ** 3 - x0 * x3 * x1], ORDER, caps)


def test_coefficient_bit_cap_raises():
    ring = PolyRing(AmbientSpace.product(("x", 2), affine=("x",)), QQ)
    x, y = ring.gens()
    caps = ResourceCaps(max_basis=4000, max_pairs=200000,
                        max_coeff_bits=8, max_reduction_steps=4_000_000)
    big = ring.const(QQ.from_int(10**9))
    with pytest.raises(ResourceCapExceeded):
        buchberger([x * x - big * y, x * y - big * big * x + y], GrevlexOrder(2), caps)
