"""Subschemes: graph closures, fibers, components, multiplicities, joins."""

from fractions import Fraction

import pytest

from conekit.fields import DEFAULT_PRIME, PrimeField
from conekit.ideals import EngineContext, Ideal, contains, ideal_equal
from conekit.ring import AmbientSpace, Block, PolyRing, poly_str
from conekit.scheme import (
    RationalMapSpec,
    SchemeError,
    Subscheme,
    component_multiplicity,
    fiber,
    graph_closure,
    is_component,
    join,
    random_point,
    union_certify,
)

FP = PrimeField(DEFAULT_PRIME)
CTX = EngineContext(seed=0)


def scheme(ring, *texts, raw=False):
    I = Ideal(ring, [ring.parse(t) for t in texts])
    return Subscheme.raw(I) if raw else Subscheme.saturated(I, CTX)


def test_subscheme_saturation_removes_irrelevant_junk():
    amb = AmbientSpace.product(("x", 2), ("y", 2))
    R = PolyRing(amb, FP)
    S = scheme(R, "x0*y0", "x0*y1")
    assert ideal_equal(S.ideal, Ideal(R, [R.parse("x0")]), CTX)


def test_graph_closure_of_identity_is_diagonal():
    amb = AmbientSpace.product(("x", 2))
    R = PolyRing(amb, FP)
    src = scheme(R)  # all of P1
    spec = RationalMapSpec(src, Block("y", 2, projective=True),
                           [R.parse("x0"), R.parse("x1")])
    G = graph_closure(spec, CTX)
    assert contains(G.ideal, G.ring.parse("x0*y1 - x1*y0"), CTX)
    assert G.dimension(CTX) == 1


def test_graph_closure_saturates_base_locus():
    # projection P2 --> P1 away from (0:0:1); the graph over the base point
    # must not contain the whole fiber plane
    amb = AmbientSpace.product(("x", 3))
    R = PolyRing(amb, FP)
    src = scheme(R)
    spec = RationalMapSpec(src, Block("y", 2, projective=True),
                           [R.parse("x0"), R.parse("x1")])
    G = graph_closure(spec, CTX)
    hd = G.hilbert(CTX)
    assert (hd.dimension, hd.degree) == (2, 2)  # blow-up of P2 at a point


def test_fiber_with_projection():
    # graph of the squaring map P1 -> P1; fiber over y=(1:1) projects to
    # the two square roots x0^2 = x1^2
    amb = AmbientSpace.product(("x", 2), ("y", 2))
    R = PolyRing(amb, FP)
    G = scheme(R, "x0^2*y1 - x1^2*y0")
    F = fiber(G, {"y": (1, 1)}, CTX, project=True)
    assert F.dimension(CTX) == 0
    assert F.degree(CTX) == 2
    assert contains(F.ideal, F.ring.parse("x0^2 - x1^2"), CTX)


def test_fiber_keeps_other_blocks():
    amb = AmbientSpace.product(("x", 2), ("y", 2))
    R = PolyRing(amb, FP)
    G = scheme(R, "x0*y1 - x1*y0")
    F = fiber(G, {"x": (1, 2)}, CTX)
    assert contains(F.ideal, R.parse("y1 - 2*y0"), CTX)


def test_is_component():
    R = PolyRing(AmbientSpace.product(("x", 3)), FP)
    S = scheme(R, "x0*x1")  # union of two lines in P2
    line0 = scheme(R, "x0")
    line2 = scheme(R, "x2")
    assert is_component(S, line0, CTX)
    assert not is_component(S, line2, CTX)
    # a point on V(x0) lies in S but is not a maximal piece
    point = scheme(R, "x0", "x1")
    assert not is_component(S, point, CTX)


def test_union_certify():
    R = PolyRing(AmbientSpace.product(("x", 3)), FP)
    S = scheme(R, "x0*x1")
    a, b = scheme(R, "x0"), scheme(R, "x1")
    assert union_certify(S, [a, b], CTX)
    assert not union_certify(S, [a], CTX)
    # radical comparison: the doubled line still unions correctly
    thick = scheme(R, "x0^2*x1")
    assert union_certify(thick, [a, b], CTX)


def test_component_multiplicity_double_line():
    R = PolyRing(AmbientSpace.product(("x", 3)), FP)
    S = Subscheme.raw(Ideal(R, [R.parse("x0^2*x1")]))
    line = scheme(R, "x0")
    other = scheme(R, "x1")
    rep = component_multiplicity(S, line, [other], CTX)
    assert rep.multiplicity == Fraction(2)
    assert rep.integral
    assert rep.total_degree == 3
    assert rep.residual_degree == 1


def test_component_multiplicity_reduced():
    R = PolyRing(AmbientSpace.product(("x", 3)), FP)
    S = scheme(R, "x0*x1")
    rep = component_multiplicity(S, scheme(R, "x0"), [scheme(R, "x1")], CTX)
    assert rep.multiplicity == Fraction(1)


def test_join_two_points_is_their_line():
    R = PolyRing(AmbientSpace.product(("x", 4)), FP)
    p = scheme(R, "x1", "x2", "x3")          # (1:0:0:0)
    q = scheme(R, "x0", "x2", "x3")          # (0:1:0:0)
    L = join(p, q, CTX)
    assert ideal_equal(L.ideal, Ideal(R, [R.parse("x2"), R.parse("x3")]), CTX)


def test_join_line_and_point_is_plane():
    R = PolyRing(AmbientSpace.product(("x", 4)), FP)
    L = scheme(R, "x2", "x3")
    p = scheme(R, "x0", "x1", "x2")          # (0:0:0:1)
    P = join(L, p, CTX)
    assert ideal_equal(P.ideal, Ideal(R, [R.parse("x2")]), CTX)


def test_random_point_lands_on_scheme():
    R = PolyRing(AmbientSpace.product(("x", 4)), FP)
    S = scheme(R, "x0*x3 - x1*x2")
    w = random_point(S, CTX)
    assert w is not None
    subs = {"x%d" % i: R.const(FP.from_int(c)) for i, c in enumerate(w.coords)}
    for g in S.ideal.gens:
        assert g.substitute(subs).is_zero()
    assert any(c % DEFAULT_PRIME for c in w.coords)


def test_random_point_is_deterministic():
    R = PolyRing(AmbientSpace.product(("x", 4)), FP)
    S = scheme(R, "x0*x3 - x1*x2")
    a = random_point(S, EngineContext(seed=7))
    b = random_point(S, EngineContext(seed=7))
    assert a == b


def test_random_point_empty_scheme():
    R = PolyRing(AmbientSpace.product(("x", 3)), FP)
    S = Subscheme.raw(Ideal(R, [R.one()]))
    assert random_point(S, CTX) is None


def test_join_rejects_multi_factor_ambient():
    amb = AmbientSpace.product(("x", 2), ("y", 2))
    R = PolyRing(amb, FP)
    S = scheme(R, "x0")
    with pytest.raises(SchemeError):
        join(S, S, CTX)
