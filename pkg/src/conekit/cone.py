"""The degeneration-specific layer: instance data (a smooth hypersurface
plus a twisting subspace family), the named schemes built from it, and
the certification routines the verification checks call into.

Coordinate conventions used throughout:
  t block (size 2): family parameter, affine t = t1/t0, so t=1 is (1:1),
      t=0 is (1:0), t=infinity is (0:1).
  z block (size 2): subspace parameter, affine z = z1/z0; the exceptional
      ("unsteady") z=0 is (1:0).
  x, y blocks (size n+2): source and target copies of P^{n+1}.
The twisted hyperplane combination is pi_x = z1*x0 + z0*x_{n+2-h}.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .fields import Field, FieldConfig, PrimeField
from .ideals import (
    EngineContext,
    Ideal,
    contains_ideal,
    eliminate,
    hilbert_data,
    ideal_equal,
    linear_forms_in,
    multisaturate,
    radical_member,
    saturate,
    saturate_by_poly,
)
from .linalg import determinant
from .ring import AmbientSpace, Block, Poly, PolyRing
from .scheme import (
    Cycle,
    MultiplicityReport,
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


class ConeDataError(Exception):
    pass


@dataclass(frozen=True)
class ConeData:
    """One verification instance: dimensions, the hypersurface, the field."""

    n: int
    h: int
    f_text: str
    field_cfg: FieldConfig
    label: str = "custom"

    def __post_init__(self):
        if self.n < 2:
            raise ConeDataError("need n >= 2")
        if not 1 <= self.h <= self.n:
            raise ConeDataError("need 1 <= h <= n")

    # ambient spaces -------------------------------------------------------

    @property
    def nx(self) -> int:
        return self.n + 2  # x/y block size

    @property
    def pivot(self) -> int:
        """Index of the twisted coordinate x_{n+2-h}."""
        return self.n + 2 - self.h

    def ambient_master(self) -> AmbientSpace:
        return AmbientSpace.product(("t", 2), ("z", 2), ("x", self.nx), ("y", self.nx))

    def ambient_xy(self) -> AmbientSpace:
        return AmbientSpace.product(("x", self.nx), ("y", self.nx))

    def ambient_x(self) -> AmbientSpace:
        return AmbientSpace.product(("x", self.nx))

    def ambient_zx(self) -> AmbientSpace:
        return AmbientSpace.product(("z", 2), ("x", self.nx))

    def ambient_operator(self) -> AmbientSpace:
        """z  x  target projective subspace (y, size n+2-h)."""
        return AmbientSpace.product(("z", 2), ("x", self.nx), ("y", self.nx - self.h))

    def ring(self, ambient: AmbientSpace, field: Optional[Field] = None) -> PolyRing:
        return PolyRing(ambient, field if field is not None else self.field_cfg.field())

    def f_in(self, ring: PolyRing) -> Poly:
        return ring.parse(self.f_text)

    def f_deg(self) -> int:
        probe = self.ring(self.ambient_x())
        return self.f_in(probe).total_degree()

    def f_on_block(self, ring: PolyRing, block: str) -> Poly:
        """f with x_i renamed to the i-th variable of `block` (same size)."""
        src = self.ring(self.ambient_x(), ring.field)
        renames = {"x%d" % i: "%s%d" % (block, i) for i in range(self.nx)}
        return self.f_in(src).map_vars(renames, ring)

    def section_form(self, ring: PolyRing, block: str) -> Poly:
        """f restricted to the subspace x_{n+2-h} = ... = x_{n+1} = 0,
        written in the first n+2-h variables of `block`."""
        src = self.ring(self.ambient_x(), ring.field)
        f = self.f_in(src)
        zeroed = f.substitute({"x%d" % i: 0 for i in range(self.pivot, self.nx)})
        renames = {"x%d" % i: "%s%d" % (block, i) for i in range(self.pivot)}
        return zeroed.map_vars(renames, ring)


PRESETS: Dict[str, dict] = {
    "quadric-s2-h1": dict(n=2, h=1, f_text="x0*x3 - x1*x2"),
    "cubic-3f-h1": dict(n=3, h=1, f_text="x0^3 + x1^3 + x2^3 + x3^3 + x4^3"),
    "cubic-3f-h2": dict(n=3, h=2, f_text="x0^3 + x1^3 + x2^3 + x3^3 + x4^3"),
}


def preset(name: str, field_cfg: Optional[FieldConfig] = None) -> ConeData:
    if name not in PRESETS:
        raise ConeDataError("unknown preset %r (have: %s)" % (name, ", ".join(sorted(PRESETS))))
    cfg = field_cfg if field_cfg is not None else FieldConfig()
    return ConeData(field_cfg=cfg, label=name, **PRESETS[name])


# ---------------------------------------------------------------------------
# the one-parameter linear twist


def twist_matrix(cd: ConeData, t, z) -> List[List[object]]:
    """Matrix of the twist on the n+2 coordinates, at affine t != 0, steady z.

    Fixes e_0..e_{n+1-h}, sends e_{n+2-h} to t*(z*e_{n+2-h} - e_0), and
    scales e_i by t for i >= n+3-h.
    """
    F = cd.field_cfg.field()
    t = F.from_int(t) if isinstance(t, int) else t
    z = F.from_int(z) if isinstance(z, int) else z
    if F.is_zero(t):
        raise ConeDataError("twist is undefined at t = 0")
    if F.is_zero(z):
        raise ConeDataError("twist is undefined at the unsteady point z = 0")
    m = cd.nx
    p = cd.pivot
    mat = [[F.zero] * m for _ in range(m)]
    for i in range(p):
        mat[i][i] = F.one
    # column convention: column j holds the image of e_j
    mat[p][p] = F.mul(t, z)
    mat[0][p] = F.neg(t)
    for i in range(p + 1, m):
        mat[i][i] = t
    return mat


def twist_determinant(cd: ConeData, t, z):
    return determinant(cd.field_cfg.field(), twist_matrix(cd, t, z))


def twist_map_spec(cd: ConeData, ring_tzx: Optional[PolyRing] = None) -> RationalMapSpec:
    """The rational map (t, z, x) -> twisted x, as graph-closure input."""
    ring = ring_tzx if ring_tzx is not None else cd.ring(
        AmbientSpace.product(("t", 2), ("z", 2), ("x", cd.nx))
    )
    t0, t1 = ring.block_vars("t")
    z0, z1 = ring.block_vars("z")
    x = ring.block_vars("x")
    p = cd.pivot
    forms = [t0 * z1 * x[0] + (t0 - t1) * z0 * x[p]]
    for i in range(1, p):
        forms.append(t0 * z1 * x[i])
    forms.append(t1 * z1 * x[p])
    for i in range(p + 1, cd.nx):
        forms.append(t1 * z1 * x[i])
    return RationalMapSpec(ring, Block("y", cd.nx), tuple(forms))


def projection_map_spec(cd: ConeData, ring_zx: Optional[PolyRing] = None) -> RationalMapSpec:
    """The z-twisted projection (z, x) -> first factor of the decomposition."""
    ring = ring_zx if ring_zx is not None else cd.ring(cd.ambient_zx())
    z0, z1 = ring.block_vars("z")
    x = ring.block_vars("x")
    p = cd.pivot
    forms = [z1 * x[0] + z0 * x[p]]
    for i in range(1, p):
        forms.append(z1 * x[i])
    return RationalMapSpec(ring, Block("y", cd.nx - cd.h), tuple(forms))


# ---------------------------------------------------------------------------
# named scheme builders


def graph_equations(cd: ConeData, ring: PolyRing) -> List[Poly]:
    """The explicit multihomogeneous system cutting the twist's graph
    closure in t x z x x x y (before saturation)."""
    t0, t1 = ring.block_vars("t")
    z0, z1 = ring.block_vars("z")
    x = ring.block_vars("x")
    y = ring.block_vars("y")
    p = cd.pivot
    m = cd.nx
    pix = z1 * x[0] + z0 * x[p]
    piy = z1 * y[0] + z0 * y[p]
    gens: List[Poly] = []
    for i in range(1, p):
        for j in range(i + 1, p):
            gens.append(x[i] * y[j] - x[j] * y[i])
    for i in range(p, m):
        for j in range(i + 1, m):
            gens.append(x[i] * y[j] - x[j] * y[i])
    for i in range(p, m):
        for j in range(1, p):
            gens.append(x[i] * y[j] * t1 - y[i] * x[j] * t0)
    for j in range(1, p):
        gens.append(pix * y[j] - piy * x[j])
    for j in range(p, m):
        gens.append(x[j] * piy * t1 - y[j] * pix * t0)
    return [g for g in gens if not g.is_zero()]


def build_graph_scheme(cd: ConeData, ctx: EngineContext) -> Subscheme:
    """The twist's graph closure from its explicit equations, saturated."""
    ring = cd.ring(cd.ambient_master())
    return Subscheme.saturated(Ideal(ring, graph_equations(cd, ring)), ctx)


def build_graph_scheme_from_map(cd: ConeData, ctx: EngineContext) -> Subscheme:
    """The same scheme, independently, as a rational-map graph closure."""
    return graph_closure(twist_map_spec(cd), ctx)


def build_fiber_product_scheme(cd: ConeData, r: int, ctx: EngineContext) -> Subscheme:
    """Closure of the doubled projection-from-e0 fiber product, for r in {0, h}.

    r=0: all minors x_i*y_j - x_j*y_i with 1 <= i < j <= n+1.
    r=h: same minors up to n+1-h, plus x_i = y_i = 0 beyond.
    """
    if r not in (0, cd.h):
        raise ConeDataError("only r = 0 and r = h are supported")
    ring = cd.ring(cd.ambient_xy())
    x = ring.block_vars("x")
    y = ring.block_vars("y")
    top = cd.nx - 1 - r  # largest index kept in the minors
    gens: List[Poly] = []
    for i in range(1, top + 1):
        for j in range(i + 1, top + 1):
            gens.append(x[i] * y[j] - x[j] * y[i])
    for i in range(top + 1, cd.nx):
        gens.append(x[i])
        gens.append(y[i])
    return Subscheme.saturated(Ideal(ring, gens), ctx)


def diagonal_component_ideal(cd: ConeData, ring: PolyRing) -> Ideal:
    """Ideal of {t=1} x (z line) x (diagonal of the hypersurface)."""
    t0, t1 = ring.block_vars("t")
    x = ring.block_vars("x")
    y = ring.block_vars("y")
    gens = [t0 - t1]
    for i in range(cd.nx):
        for j in range(i + 1, cd.nx):
            gens.append(x[i] * y[j] - x[j] * y[i])
    gens.append(cd.f_on_block(ring, "x"))
    return Ideal(ring, gens)


@dataclass
class PencilReport:
    """First-order data of the twisted family along t at t=1."""

    first_order: Poly  # z-homogenized first expansion coefficient, in (z, x)
    coeff_at_unsteady: Poly  # the z0-part
    coeff_at_steady: Poly  # the z1-part
    nonzero: bool
    z_dependent: bool

    @property
    def degenerate(self) -> bool:
        return not (self.nonzero and self.z_dependent)


def expansion_pencil(cd: ConeData) -> PencilReport:
    """The t-derivative of f along the twist at t=1, as a pencil in z.

    In the decomposition coordinates it is (up to sign)
    x_{n+2-h} * df/dx_0 / z  -  sum_{i >= n+2-h} x_i * df/dx_i,
    cleared to the z-homogeneous  z0*A - z1*B  with
    A = x_{n+2-h} * df/dx_0 and B = sum x_i * df/dx_i.
    """
    ring = cd.ring(cd.ambient_zx())
    z0, z1 = ring.block_vars("z")
    x = ring.block_vars("x")
    f = cd.f_on_block(ring, "x")
    p = cd.pivot

    def partial(g: Poly, idx: int) -> Poly:
        F = ring.field
        out = {}
        vi = ring.ambient.var_index("x%d" % idx)
        for m, c in g.terms.items():
            e = m[vi]
            if e:
                nm = list(m)
                nm[vi] = e - 1
                key = tuple(nm)
                add = F.mul(c, F.from_int(e))
                out[key] = F.add(out.get(key, F.zero), add)
        return ring.from_terms(out)

    A = x[p] * partial(f, 0)
    B = ring.zero()
    for i in range(p, cd.nx):
        B = B + x[i] * partial(f, i)
    pencil = z0 * A - z1 * B
    nonzero = not pencil.is_zero()
    if A.is_zero() or B.is_zero():
        z_dep = False
    else:
        z_dep = A.monic(ring.order) != B.monic(ring.order)
    return PencilReport(
        first_order=pencil,
        coeff_at_unsteady=A,
        coeff_at_steady=B,
        nonzero=nonzero,
        z_dependent=z_dep,
    )


def expansion_pencil_taylor(cd: ConeData) -> Poly:
    """Oracle route to the same pencil: literal (t-1)-coefficient of
    f(twist(x)) pushed through the decomposition, z-cleared.

    Returned in the (z, x) ring, for cross-checking expansion_pencil up
    to a unit and powers of the twisted hyperplane combination.
    """
    from .ring import taylor_shift_coefficient

    amb = AmbientSpace.product(("t", 1), ("w", 1), ("x", cd.nx), affine=("t", "w"))
    ring = cd.ring(amb)
    t = ring.var("t0")
    w = ring.var("w0")
    x = ring.block_vars("x")
    p = cd.pivot
    # twist in affine (t, w): e0-part x0 - t*x_p is wrong chart; use the
    # direct coordinate images of the twist matrix
    sub = {"x0": x[0] - t * x[p], ("x%d" % p): t * w * x[p]}
    for i in range(p + 1, cd.nx):
        sub["x%d" % i] = t * x[i]
    f = cd.f_on_block(ring, "x")
    moved = f.substitute(sub)
    return taylor_shift_coefficient(moved, "t0", 1)


@dataclass
class GenericityReport:
    hypersurface_smooth: bool
    section_h_smooth: bool
    section_rest_smooth: bool
    pencil: PencilReport
    # hard gate: smooth hypersurface + nondegenerate pencil
    rejected: bool
    notes: List[str] = dc_field(default_factory=list)


def _section_smooth(cd: ConeData, kept: Sequence[int], ctx: EngineContext) -> bool:
    """Smoothness of f restricted to the subspace of the kept coordinates."""
    amb = AmbientSpace.product(("x", len(kept)))
    ring = cd.ring(amb)
    src = cd.ring(cd.ambient_x(), ring.field)
    f = cd.f_in(src)
    zero_sub = {"x%d" % i: 0 for i in range(cd.nx) if i not in kept}
    renames = {"x%d" % i: "x%d" % k for k, i in enumerate(kept)}
    g = f.substitute(zero_sub).map_vars(renames, ring)
    if g.is_zero():
        return False
    gens = [g]
    for i in range(len(kept)):
        gens.append(_partial(ring, g, i))
    return hilbert_data(Ideal(ring, gens), ctx).dimension < 0


def _partial(ring: PolyRing, g: Poly, idx: int) -> Poly:
    F = ring.field
    out = {}
    for m, c in g.terms.items():
        e = m[idx]
        if e:
            nm = list(m)
            nm[idx] = e - 1
            key = tuple(nm)
            out[key] = F.add(out.get(key, F.zero), F.mul(c, F.from_int(e)))
    return ring.from_terms(out)


def certify_genericity(cd: ConeData, ctx: EngineContext) -> GenericityReport:
    """Gate the instance: the hypersurface must be smooth and the twist's
    first-order behaviour nondegenerate; the two plane sections are
    checked and recorded but only noted when they fail."""
    ring = cd.ring(cd.ambient_x())
    f = cd.f_in(ring)
    gens = [f] + [_partial(ring, f, i) for i in range(cd.nx)]
    smooth = hilbert_data(Ideal(ring, gens), ctx).dimension < 0
    sec_h = _section_smooth(cd, list(range(cd.pivot)), ctx)
    sec_rest = _section_smooth(cd, [0] + list(range(cd.pivot, cd.nx)), ctx)
    pencil = expansion_pencil(cd)
    notes = []
    if not sec_h:
        notes.append("codim-h plane section is singular or degenerate")
    if not sec_rest:
        notes.append("complementary plane section is singular or degenerate")
    # small characteristics dividing deg f break the multiplicity accounting
    bad_char = False
    F = cd.field_cfg.field()
    if isinstance(F, PrimeField) and cd.f_deg() % F.p == 0:
        bad_char = True
        notes.append("field characteristic divides the hypersurface degree")
    return GenericityReport(
        hypersurface_smooth=smooth,
        section_h_smooth=sec_h,
        section_rest_smooth=sec_rest,
        pencil=pencil,
        rejected=(not smooth) or pencil.degenerate or bad_char,
        notes=notes,
    )


# ---------------------------------------------------------------------------
# lazily built scheme collection


class ConeSchemes:
    """Shared, lazily computed schemes for one instance + engine context."""

    def __init__(self, cd: ConeData, ctx: EngineContext):
        self.cd = cd
        self.ctx = ctx
        self._cache: Dict[str, object] = {}

    def _get(self, key: str, build):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    @property
    def master_ring(self) -> PolyRing:
        return self._get("master_ring", lambda: self.cd.ring(self.cd.ambient_master()))

    @property
    def omega(self) -> Subscheme:
        return self._get("omega", lambda: build_graph_scheme(self.cd, self.ctx))

    @property
    def omega_from_map(self) -> Subscheme:
        return self._get(
            "omega_map", lambda: build_graph_scheme_from_map(self.cd, self.ctx)
        )

    @property
    def sigma(self) -> Subscheme:
        def build():
            ring = self.omega.ring
            fx = self.cd.f_on_block(ring, "x")
            fy = self.cd.f_on_block(ring, "y")
            return Subscheme.saturated(self.omega.ideal.with_extra([fx, fy]), self.ctx)

        return self._get("sigma", build)

    @property
    def diagonal_part(self) -> Subscheme:
        return self._get(
            "diag",
            lambda: Subscheme.saturated(
                diagonal_component_ideal(self.cd, self.sigma.ring), self.ctx
            ),
        )

    @property
    def theta(self) -> Subscheme:
        def build():
            sat = saturate(self.sigma.ideal, self.diagonal_part.ideal, self.ctx)
            return Subscheme.saturated(sat, self.ctx)

        return self._get("theta", build)

    @property
    def projection_graph(self) -> Subscheme:
        return self._get(
            "proj_graph", lambda: graph_closure(projection_map_spec(self.cd), self.ctx)
        )

    @property
    def operator_ideal(self) -> Ideal:
        def build():
            G = self.projection_graph
            ring = G.ring
            fx = self.cd.f_on_block(ring, "x")
            fy = self.cd.section_form(ring, "y")
            return G.ideal.with_extra([fx, fy])

        return self._get("operator_ideal", build)

    @property
    def hypersurface(self) -> Subscheme:
        def build():
            ring = self.cd.ring(self.cd.ambient_x())
            return Subscheme.saturated(Ideal(ring, [self.cd.f_in(ring)]), self.ctx)

        return self._get("hypersurface", build)


# ---------------------------------------------------------------------------
# verification computations


def verify_graph_consistency(schemes: ConeSchemes) -> bool:
    """The explicit equation system and the independent map-graph closure
    cut the same saturated ideal."""
    return ideal_equal(
        schemes.omega.ideal, schemes.omega_from_map.ideal, schemes.ctx
    )


def projected_fiber_matches_fiber_product(schemes: ConeSchemes) -> bool:
    """The graph's fiber over (t, z) = (1, unsteady), projected to x x y,
    equals the r=0 fiber-product scheme."""
    cd, ctx = schemes.cd, schemes.ctx
    fib = fiber(schemes.omega, {"t": (1, 1), "z": (1, 0)}, ctx, project=True)
    e0 = build_fiber_product_scheme(cd, 0, ctx)
    target = Ideal(fib.ring, [fib.ring.convert(g) for g in e0.ideal.gens])
    return ideal_equal(fib.ideal, target, ctx)


def verify_diagonal_is_component(schemes: ConeSchemes) -> bool:
    """At t=1 the pulled-back graph contains the twisted diagonal as a
    genuine component."""
    ctx = schemes.ctx
    sigma1 = fiber(schemes.sigma, {"t": (1, 1)}, ctx)
    return is_component(sigma1, schemes.diagonal_part, ctx)


def theta_removal_idempotent(schemes: ConeSchemes) -> bool:
    ctx = schemes.ctx
    again = saturate(schemes.theta.ideal, schemes.diagonal_part.ideal, ctx)
    return contains_ideal(schemes.theta.ideal, again, ctx) and contains_ideal(
        again, schemes.theta.ideal, ctx
    )


@dataclass
class CoveringReport:
    expected: int
    counts: List[int]
    points: List[Tuple[int, ...]]
    sampled: int

    @property
    def agree(self) -> bool:
        return bool(self.counts) and all(c == self.expected for c in self.counts)


def pencil_scheme(cd: ConeData, ctx: EngineContext) -> Subscheme:
    """V(f, first-order pencil) in z x x: the closure swept by the t=1
    specializations as z moves."""
    rep = expansion_pencil(cd)
    ring = rep.first_order.ring
    f = cd.f_on_block(ring, "x")
    return Subscheme.saturated(Ideal(ring, [f, rep.first_order]), ctx)


def covering_degree_report(
    cd: ConeData, ctx: EngineContext, samples: int = 3, trials: int = 40
) -> Optional[CoveringReport]:
    """z-fiber counts of the pencil scheme over random hypersurface points.

    Returns None when not enough rational sample points were found.
    """
    W = pencil_scheme(cd, ctx)
    ring_x = cd.ring(cd.ambient_x())
    X = Subscheme.saturated(Ideal(ring_x, [cd.f_in(ring_x)]), ctx)
    counts: List[int] = []
    pts: List[Tuple[int, ...]] = []
    seen = set()
    for k in range(samples * 6):
        if len(counts) >= samples:
            break
        probe_ctx = EngineContext(caps=ctx.caps, cache=ctx.cache, seed=ctx.seed + 1000 + k)
        pt = random_point(X, probe_ctx, trials=trials)
        if pt is None or pt.coords in seen:
            continue
        seen.add(pt.coords)
        zfib = fiber(W, {"x": pt.coords}, ctx, project=True)
        hd = zfib.hilbert(ctx)
        if hd.dimension != 0:
            continue  # degenerate sample: fiber not finite
        counts.append(hd.degree)
        pts.append(pt.coords)
    if len(counts) < samples:
        return None
    return CoveringReport(expected=cd.f_deg(), counts=counts, points=pts, sampled=len(counts))


@dataclass
class FamilyEndResult:
    support: Subscheme  # in the final y-block copy of P^{n+1}
    dominance_residual: Ideal  # in the t-block; must be zero for validity
    dominant: bool


def cone_family_end(
    schemes: ConeSchemes, delta_x: Ideal, t_value: str
) -> FamilyEndResult:
    """End of the one-parameter family through delta: intersect the moved
    family with delta on the source copy, keep only the part dominating
    the t-line, specialize t, project to the target copy.

    t_value: "0" or "1".
    """
    cd, ctx = schemes.cd, schemes.ctx
    ring = schemes.theta.ring
    moved = schemes.theta.ideal.with_extra(
        [ring.convert(g) for g in delta_x.gens]
    )
    t0, t1 = ring.block_vars("t")
    # drop the parts sitting inside the three distinguished parameter fibers
    for form in (t1, t0 - t1, t0):
        moved = saturate_by_poly(moved, form, ctx)
    # certify what is left dominates the parameter line
    sat_all = multisaturate(moved, ctx)
    residual = eliminate(sat_all, ["z", "x", "y"], ctx)
    dominant = not residual.gens
    S = Subscheme.saturated(moved, ctx)
    at = {"t": (1, 0) if t_value == "0" else (1, 1)}
    fib = fiber(S, at, ctx, project=True)
    # project to the last factor
    support = Subscheme.saturated(
        eliminate(
            multisaturate(fib.ideal, ctx, blocks=["z", "x"]), ["z", "x"], ctx
        ),
        ctx,
    )
    return FamilyEndResult(support=support, dominance_residual=residual, dominant=dominant)


def cone_operator_image(schemes: ConeSchemes, delta_y: Ideal) -> Subscheme:
    """Image in the x copy of the correspondence applied to delta (given in
    the target subspace coordinates y0..y_{n+1-h})."""
    cd, ctx = schemes.cd, schemes.ctx
    I = schemes.operator_ideal
    ring = I.ring
    combined = I.with_extra([ring.convert(g) for g in delta_y.gens])
    sat = multisaturate(combined, ctx, blocks=["z", "y"])
    out = eliminate(sat, ["z", "y"], ctx)
    return Subscheme.saturated(out, ctx)


@dataclass
class SplitReport:
    certified: bool
    gamma_dim_ok: bool
    mult_diag: Optional[Fraction]
    mult_special: Optional[Fraction]
    dominance_ok: bool
    dims: Tuple[int, int]


def verify_split_components(schemes: ConeSchemes) -> SplitReport:
    """The projection graph restricted to the smaller source subspace
    splits into the parameter-line diagonal piece and the unsteady-fiber
    piece, both reduced of the right dimension."""
    cd, ctx = schemes.cd, schemes.ctx
    G = schemes.projection_graph
    ring = G.ring
    x = ring.block_vars("x")
    y = ring.block_vars("y")
    z0, z1 = ring.block_vars("z")
    p = cd.pivot
    cut = [x[i] for i in range(p, cd.nx)]
    gamma = Subscheme.saturated(G.ideal.with_extra(cut), ctx)
    # expected components
    g1_gens = list(cut)
    for i in range(0, p):
        for j in range(i + 1, p):
            g1_gens.append(x[i] * y[j] - x[j] * y[i])
    gamma1 = Subscheme.saturated(Ideal(ring, g1_gens), ctx)
    g2_gens = [z1] + list(cut)
    for i in range(1, p):
        for j in range(i + 1, p):
            g2_gens.append(x[i] * y[j] - x[j] * y[i])
    gamma2 = Subscheme.saturated(Ideal(ring, g2_gens), ctx)
    certified = union_certify(gamma, [gamma1, gamma2], ctx)
    want = cd.n + 2 - cd.h
    d1, d2 = gamma1.dimension(ctx), gamma2.dimension(ctx)
    dims_ok = d1 == want and d2 == want
    m1 = m2 = None
    try:
        m1 = component_multiplicity(gamma, gamma1, [gamma2], ctx).multiplicity
        m2 = component_multiplicity(gamma, gamma2, [gamma1], ctx).multiplicity
    except SchemeError:
        pass
    # dominance over the parameter line: gamma1 onto, gamma2 over z=0 only
    e1 = eliminate(gamma1.ideal, ["x", "y"], ctx)
    e2 = eliminate(gamma2.ideal, ["x", "y"], ctx)
    zr = e2.ring
    dom_ok = (not e1.gens) and ideal_equal(e2, Ideal(zr, [zr.var("z1")]), ctx)
    return SplitReport(
        certified=certified,
        gamma_dim_ok=dims_ok,
        mult_diag=m1,
        mult_special=m2,
        dominance_ok=dom_ok,
        dims=(d1, d2),
    )


@dataclass
class OperatorDegreeReport:
    delta_multiplicity: Optional[Fraction]
    residual_degree: int
    residual_in_plane_section: Optional[bool]
    split_ok: bool
    total_degree: int
    witness: Optional[str] = None


def verify_operator_degree_split(
    schemes: ConeSchemes, delta_y: Ideal
) -> OperatorDegreeReport:
    """Intersect the operator image with the codim-h plane section and
    split it into the delta part (expected multiplicity deg f) and a
    residual supported in a linear section."""
    cd, ctx = schemes.cd, schemes.ctx
    img = cone_operator_image(schemes, delta_y)
    ring = img.ring
    x = ring.block_vars("x")
    p = cd.pivot
    cut = [x[i] for i in range(p, cd.nx)]
    S = Subscheme.saturated(img.ideal.with_extra(cut), ctx)
    # delta moved to the x coordinates, inside the plane section
    renames = {"y%d" % i: "x%d" % i for i in range(p)}
    target = cd.ring(cd.ambient_x())
    dgens = [g.map_vars(renames, target) for g in delta_y.gens]
    dgens = [ring.convert(target.convert(g)) if g.ring != ring else g for g in dgens]
    dgens += cut + [cd.f_on_block(ring, "x")]
    D = Subscheme.saturated(Ideal(ring, dgens), ctx)
    residual = saturate(S.ideal, D.ideal, ctx)
    res_scheme = Subscheme.saturated(residual, ctx)
    res_h = res_scheme.hilbert(ctx)
    res_deg = res_h.degree if res_h.dimension >= 0 else 0
    split_ok = union_certify(S, [D, res_scheme], ctx) if res_h.dimension >= 0 else union_certify(S, [D], ctx)
    mult = None
    witness = None
    try:
        others = [res_scheme] if res_h.dimension >= 0 else []
        mult = component_multiplicity(S, D, others, ctx).multiplicity
    except SchemeError as exc:
        witness = str(exc)
    in_plane = None
    if res_h.dimension >= 0:
        # codimension of the residual inside the ambient projective space
        need = (cd.nx - 1) - res_h.dimension - 1  # linear forms to pin a plane of dim+1
        forms = linear_forms_in(res_scheme.ideal, "x", ctx)
        in_plane = len(forms) >= max(need, 0)
    return OperatorDegreeReport(
        delta_multiplicity=mult,
        residual_degree=res_deg,
        residual_in_plane_section=in_plane,
        split_ok=split_ok,
        total_degree=S.degree(ctx),
        witness=witness,
    )


def verify_image_in_linear_section(
    schemes: ConeSchemes, delta_x: Ideal, codim: int
) -> Tuple[bool, Ideal]:
    """Push delta through the r=0 correspondence and certify the image's
    support sits inside a linear section of matching codimension."""
    cd, ctx = schemes.cd, schemes.ctx
    e0 = build_fiber_product_scheme(cd, 0, ctx)
    ring = e0.ring
    combined = e0.ideal.with_extra([ring.convert(g) for g in delta_x.gens])
    sat = multisaturate(combined, ctx, blocks=["x"])
    img = eliminate(sat, ["x"], ctx)
    forms = linear_forms_in(img, "y", ctx)
    return len(forms) >= codim, img


def join_support_matches_operator(
    schemes: ConeSchemes, delta_y: Ideal
) -> Tuple[bool, Subscheme, Subscheme]:
    """Operator image of delta vs the hypersurface sliced with the join of
    (delta inside projective space) and the twist line: same support."""
    cd, ctx = schemes.cd, schemes.ctx
    img = cone_operator_image(schemes, delta_y)
    ring_x = cd.ring(cd.ambient_x())
    x = ring_x.gens()
    p = cd.pivot
    # delta embedded in the big projective space
    renames = {"y%d" % i: "x%d" % i for i in range(p)}
    dgens = [g.map_vars(renames, ring_x) for g in delta_y.gens]
    dgens += [x[i] for i in range(p, cd.nx)]
    delta_big = Subscheme.saturated(Ideal(ring_x, dgens), ctx)
    # the twist line: closure of the span of e0 and the pivot directions
    line_gens = [x[i] for i in range(1, cd.nx) if i != p]
    if cd.h != 1:
        raise ConeDataError("join comparison is defined for h = 1")
    line = Subscheme.saturated(Ideal(ring_x, line_gens), ctx)
    joined = join(delta_big, line, ctx)
    sliced = Subscheme.saturated(
        joined.ideal.with_extra([cd.f_in(ring_x)]), ctx
    )
    from .ideals import radical_equal

    same = radical_equal(img.ideal, sliced.ideal, ctx)
    return same, img, sliced


# ---------------------------------------------------------------------------
# concrete delta builders


def delta_point_on(
    S: Subscheme, ctx: EngineContext, trials: int = 40
) -> Optional[Ideal]:
    """Ideal of one rational point of S, in S's own ring."""
    pt = random_point(S, ctx, trials=trials)
    if pt is None:
        return None
    ring = S.ring
    F = ring.field
    blk = S.ambient.blocks[0].name
    vals = [F.from_int(c) if isinstance(c, int) else c for c in pt.coords]
    gens = []
    idx = list(S.ambient.block_range(blk))
    for a in range(len(idx)):
        for b in range(a + 1, len(idx)):
            g = ring.var_by_index(idx[a]).scale(vals[b]) - ring.var_by_index(idx[b]).scale(vals[a])
            if not g.is_zero():
                gens.append(g)
    return Ideal(ring, gens)


def line_on_surface(S: Subscheme, ctx: EngineContext) -> Optional[Ideal]:
    """A line contained in a hypersurface S = V(g) in P^3, or None.

    Searches lines of the shape {v_i - a*v_j = v_k - b*v_l = 0} over all
    coordinate pairings, solving for (a, b) by exact root enumeration over
    the prime field.  Sufficient for the diagonal-type surfaces used in
    the preset scenarios; returns None when no such line exists.
    """
    from .fields import PrimeField
    from .scheme import _univariate_roots

    ring = S.ring
    F = ring.field
    if ring.nvars != 4 or len(S.ideal.gens) != 1 or not isinstance(F, PrimeField):
        return None
    g = S.ideal.gens[0]
    amb = AmbientSpace.product(("a", 1), ("b", 1), ("s", 1), ("t", 1), affine=("a", "b", "s", "t"))
    work = PolyRing(amb, F)
    a, b, s, t = (work.var(n) for n in ("a0", "b0", "s0", "t0"))
    names = ring.ambient.varnames
    pairings = [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))]
    ia, ib, is_, it = (amb.var_index(n) for n in ("a0", "b0", "s0", "t0"))

    def coeff_polys(moved: Poly) -> Dict[Tuple[int, int], Poly]:
        groups: Dict[Tuple[int, int], Dict] = {}
        for m, c in moved.terms.items():
            st = (m[is_], m[it])
            nm = list(m)
            nm[is_] = nm[it] = 0
            groups.setdefault(st, {})[tuple(nm)] = c
        return {k: Poly(work, v) for k, v in groups.items()}

    def univariate(p: Poly, idx: int) -> Optional[List[int]]:
        coeffs: Dict[int, int] = {}
        for m, c in p.terms.items():
            if any(e and i != idx for i, e in enumerate(m)):
                return None
            coeffs[m[idx]] = c
        d = max(coeffs) if coeffs else 0
        return [coeffs.get(i, 0) for i in range(d + 1)]

    for (i, j), (k, l) in pairings:
        moved = g.map_vars(
            {names[i]: "a0", names[j]: "s0", names[k]: "b0", names[l]: "t0"}, work
        ).substitute({"a0": a * s, "b0": b * t})
        coeffs = coeff_polys(moved)
        a_cands: Optional[set] = None
        for p in coeffs.values():
            ua = univariate(p, ia)
            if ua is not None and any(ua):
                roots = set(_univariate_roots(F, ua))
                a_cands = roots if a_cands is None else (a_cands & roots)
        if a_cands is None or not a_cands:
            continue
        for a0 in sorted(a_cands):
            b_cands: Optional[set] = None
            ok = True
            for p in coeffs.values():
                q = p.substitute({"a0": work.const(F.from_int(a0))})
                if q.is_zero():
                    continue
                ub = univariate(q, ib)
                if ub is None:
                    ok = False
                    break
                if not any(ub):
                    continue
                if len(ub) == 1:
                    ok = False  # nonzero constant: no b works
                    break
                roots = set(_univariate_roots(F, ub))
                b_cands = roots if b_cands is None else (b_cands & roots)
            if not ok or b_cands is None or not b_cands:
                continue
            b0 = sorted(b_cands)[0]
            v = ring.gens()
            cand = Ideal(
                ring,
                [v[i] - v[j].scale(F.from_int(a0)), v[k] - v[l].scale(F.from_int(b0))],
            )
            from .ideals import contains

            if all(contains(cand, h, ctx) for h in S.ideal.gens):
                return cand
    return None


def section_scheme(cd: ConeData, ctx: EngineContext, which: str = "h") -> Subscheme:
    """The codim-h plane section of the hypersurface, inside its own
    projective subspace ("h"), or the complementary one ("rest")."""
    if which == "h":
        kept = list(range(cd.pivot))
    else:
        kept = [0] + list(range(cd.pivot, cd.nx))
    amb = AmbientSpace.product(("y", len(kept)))
    ring = cd.ring(amb)
    src = cd.ring(cd.ambient_x(), ring.field)
    f = cd.f_in(src)
    zeroed = f.substitute({"x%d" % i: 0 for i in range(cd.nx) if i not in kept})
    renames = {"x%d" % i: "y%d" % k for k, i in enumerate(kept)}
    g = zeroed.map_vars(renames, ring)
    return Subscheme.saturated(Ideal(ring, [g]), ctx)
