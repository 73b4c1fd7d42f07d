"""Ideal operations: saturation, elimination, intersection, Hilbert data."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conekit.fields import DEFAULT_PRIME, PrimeField, QQ
from conekit.ideals import (
    EngineContext,
    Ideal,
    contains,
    contains_ideal,
    eliminate,
    hilbert_data,
    ideal_equal,
    intersect,
    is_unit_ideal,
    linear_forms_in,
    multisaturate,
    quotient_by_poly,
    radical_equal,
    radical_member,
    saturate,
    saturate_by_linear_form,
    saturate_by_poly,
    saturate_by_poly_iterated,
    saturate_by_var,
    saturate_block,
    zero_dim_count,
)
from conekit.ring import AmbientSpace, PolyRing

FP = PrimeField(DEFAULT_PRIME)
CTX = EngineContext(seed=0)


def ring_p3(field=FP):
    return PolyRing(AmbientSpace.product(("x", 4)), field)


def test_membership_and_equality():
    R = ring_p3()
    x0, x1, x2, x3 = R.gens()
    I = Ideal(R, [x0 * x1, x0 * x2])
    assert contains(I, x0 * x0 * x1 + x0 * x2 * x3, CTX)
    assert not contains(I, x0, CTX)
    J = Ideal(R, [x0 * x2, x0 * x1, x0 * x1 + x0 * x2])
    assert ideal_equal(I, J, CTX)


def test_saturation_bayer_matches_iterated_colon():
    R = ring_p3()
    x0, x1, x2, x3 = R.gens()
    I = Ideal(R, [x0 * x2, x1 * x2])
    expect = Ideal(R, [x0, x1])
    assert ideal_equal(saturate_by_var(I, "x2", CTX), expect, CTX)
    assert ideal_equal(saturate_by_poly(I, x2, CTX), expect, CTX)
    assert ideal_equal(saturate_by_poly_iterated(I, x2, CTX), expect, CTX)
    assert ideal_equal(saturate_by_linear_form(I, x2, CTX), expect, CTX)


@settings(max_examples=10, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_block_saturation_linear_matches_exact(seed):
    R = ring_p3()
    x0, x1, x2, x3 = R.gens()
    ctx = EngineContext(seed=seed)
    I = Ideal(R, [x0 * x1, x0 * x2, x0 * x3 * x3])
    a = saturate_block(I, "x", ctx, method="linear")
    b = saturate_block(I, "x", ctx, method="exact")
    assert ideal_equal(a, b, ctx)


def test_general_saturation_random_matches_exact():
    R = ring_p3()
    x0, x1, x2, x3 = R.gens()
    I = Ideal(R, [x0 * x1, x0 * x2])
    J = Ideal(R, [x1, x2])
    a = saturate(I, J, CTX, method="random")
    b = saturate(I, J, CTX, method="exact")
    expect = Ideal(R, [x0])
    assert ideal_equal(a, expect, CTX) and ideal_equal(b, expect, CTX)


def test_quotient_vs_saturation():
    # (x0^2 x1 : x0) = (x0 x1) but (x0^2 x1 : x0^inf) = (x1)
    R = ring_p3()
    x0, x1, x2, x3 = R.gens()
    I = Ideal(R, [x0 * x0 * x1])
    assert ideal_equal(quotient_by_poly(I, x0, CTX), Ideal(R, [x0 * x1]), CTX)
    assert ideal_equal(saturate_by_poly(I, x0, CTX), Ideal(R, [x1]), CTX)


def test_intersection_oracle():
    R = ring_p3()
    x0, x1, x2, x3 = R.gens()
    got = intersect(Ideal(R, [x0]), Ideal(R, [x1, x2]), CTX)
    expect = Ideal(R, [x0 * x1, x0 * x2])
    assert ideal_equal(got, expect, CTX)


def test_eliminate_twisted_cubic_image():
    # image of P1 -> P3 by (s^3, s^2 t, s t^2, t^3): the classical minors
    amb = AmbientSpace.product(("s", 2), ("x", 4))
    R = PolyRing(amb, FP)
    s0, s1 = R.block_vars("s")
    x = R.block_vars("x")
    I = Ideal(R, [x[0] - s0 ** 3, x[1] - s0 ** 2 * s1,
                  x[2] - s0 * s1 ** 2, x[3] - s1 ** 3])
    # affine graph forms suffice here: eliminate the parameter block
    out = eliminate(I, ["s"], CTX)
    Rx = out.ring
    y = Rx.gens()
    for m in (y[1] * y[1] - y[0] * y[2], y[2] * y[2] - y[1] * y[3],
              y[1] * y[2] - y[0] * y[3]):
        assert contains(out, m, CTX)


def test_projective_elimination_requires_presaturation():
    # graph of identity P1 -> P1; dropping the source without saturating
    # would pick up the irrelevant cone
    amb = AmbientSpace.product(("s", 2), ("y", 2))
    R = PolyRing(amb, FP)
    s0, s1 = R.block_vars("s")
    y0, y1 = R.block_vars("y")
    I = Ideal(R, [s0 * y1 - s1 * y0])
    sat = multisaturate(I, CTX, blocks=["s"])
    out = eliminate(sat, ["s"], CTX)
    assert not out.gens  # the image is all of P1


def test_radical_membership():
    R = ring_p3()
    x0, x1, x2, x3 = R.gens()
    I = Ideal(R, [x0 * x0, x1 ** 3])
    assert radical_member(x0, I, CTX)
    assert radical_member(x0 + x1, I, CTX)
    assert not radical_member(x2, I, CTX)
    assert radical_equal(I, Ideal(R, [x0, x1]), CTX)


def test_unit_ideal():
    R = ring_p3()
    x0, x1, x2, x3 = R.gens()
    assert is_unit_ideal(Ideal(R, [x0, x0 + R.one()]), CTX)
    assert not is_unit_ideal(Ideal(R, [x0]), CTX)


@pytest.mark.parametrize("gens,dim,deg", [
    (["x0^2 - x1*x2"], 1, 2),          # conic in P2 (uses x0,x1,x2)
    (["x0", "x1"], 0, 1),              # point
    (["x1^2 - x0*x2", "x2^2 - x1*x0"], 0, 4),  # two conics meet in 4 points
])
def test_hilbert_dimension_degree(gens, dim, deg):
    R = PolyRing(AmbientSpace.product(("x", 3)), FP)
    I = Ideal(R, [R.parse(g) for g in gens])
    hd = hilbert_data(I, CTX)
    assert (hd.dimension, hd.degree) == (dim, deg)


def test_hilbert_twisted_cubic():
    R = ring_p3()
    I = Ideal(R, [R.parse(g) for g in
                  ("x1^2 - x0*x2", "x2^2 - x1*x3", "x1*x2 - x0*x3")])
    hd = hilbert_data(I, CTX)
    assert (hd.dimension, hd.degree) == (1, 3)


def test_hilbert_unit_and_zero():
    R = ring_p3()
    assert hilbert_data(Ideal(R, [R.one()]), CTX).dimension == -1
    hd = hilbert_data(Ideal(R, []), CTX)
    assert (hd.dimension, hd.degree) == (3, 1)


def test_hilbert_multiplicity_counts():
    # a double point in P2
    R = PolyRing(AmbientSpace.product(("x", 3)), FP)
    I = Ideal(R, [R.parse("x1^2"), R.parse("x2")])
    hd = hilbert_data(I, CTX)
    assert (hd.dimension, hd.degree) == (0, 2)


def test_zero_dim_count_bezout():
    # generic-enough plane curves of degrees 2 and 3 meet in 6 points
    R = PolyRing(AmbientSpace.product(("x", 3)), FP)
    f = R.parse("x0^2 + 2*x1^2 + 3*x0*x2 + x2^2")
    g = R.parse("x0^3 + 5*x1^3 + x2^3 + x0*x1*x2")
    chart = Ideal(R, [f, g, R.parse("x2") - R.one()])
    assert zero_dim_count(chart, CTX) == 6


def test_linear_forms_in_block():
    amb = AmbientSpace.product(("x", 3), ("y", 2))
    R = PolyRing(amb, FP)
    x = R.block_vars("x")
    y = R.block_vars("y")
    I = Ideal(R, [x[0] + x[1], x[2] * y[0]])
    forms = linear_forms_in(I, "x", CTX)
    assert len(forms) == 1
    assert contains(I, forms[0], CTX)


def test_contains_ideal_and_multisaturate():
    amb = AmbientSpace.product(("x", 2), ("y", 2))
    R = PolyRing(amb, FP)
    x = R.block_vars("x")
    y = R.block_vars("y")
    # irrelevant-supported junk disappears under multisaturation
    I = Ideal(R, [x[0] * y[0], x[0] * y[1]])
    sat = multisaturate(I, CTX)
    assert ideal_equal(sat, Ideal(R, [x[0]]), CTX)
    assert contains_ideal(sat, I, CTX)
