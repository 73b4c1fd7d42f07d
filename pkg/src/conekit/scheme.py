"""Geometry vocabulary over the engine: subschemes of products of
projective spaces, graph closures of rational maps, fibers, component
certification, cycles with multiplicities, joins, and point search.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .fields import PrimeField
from .ideals import (
    EngineContext,
    HilbertData,
    Ideal,
    IdealError,
    contains_ideal,
    eliminate,
    hilbert_data,
    intersect,
    multisaturate,
    radical_equal,
    radical_member,
    saturate,
    zero_dim_count,
)
from .ring import AmbientSpace, Block, LexOrder, Poly, PolyRing, RingError


class SchemeError(Exception):
    pass


class Subscheme:
    """A closed subscheme of a product of projective spaces.

    The defining ideal is kept irrelevant-saturated and multihomogeneous;
    Hilbert data is computed lazily and cached on the instance.
    """

    __slots__ = ("ideal", "_hilbert")

    def __init__(self, ideal: Ideal, presaturated: bool = False):
        if not ideal.is_multihomogeneous():
            raise SchemeError("subscheme ideal must be multihomogeneous")
        if not presaturated:
            raise SchemeError("construct via Subscheme.saturated(...)")
        self.ideal = ideal
        self._hilbert: Optional[HilbertData] = None

    @classmethod
    def saturated(cls, ideal: Ideal, ctx: EngineContext) -> "Subscheme":
        """Saturate by every projective block's irrelevant ideal, then wrap."""
        return cls(multisaturate(ideal, ctx), presaturated=True)

    @classmethod
    def raw(cls, ideal: Ideal) -> "Subscheme":
        """Wrap an ideal already known to be saturated (named generators)."""
        return cls(ideal, presaturated=True)

    @property
    def ring(self) -> PolyRing:
        return self.ideal.ring

    @property
    def ambient(self) -> AmbientSpace:
        return self.ideal.ambient

    def hilbert(self, ctx: EngineContext) -> HilbertData:
        if self._hilbert is None:
            self._hilbert = hilbert_data(self.ideal, ctx)
        return self._hilbert

    def dimension(self, ctx: EngineContext) -> int:
        return self.hilbert(ctx).dimension

    def degree(self, ctx: EngineContext) -> int:
        return self.hilbert(ctx).degree

    def is_empty(self, ctx: EngineContext) -> bool:
        return self.dimension(ctx) < 0

    def to_record(self, ctx: Optional[EngineContext] = None) -> dict:
        rec = {
            "ambient": [[b.name, b.size, b.projective] for b in self.ambient.blocks],
            "generators": self.ideal.gen_strs(),
        }
        if ctx is not None:
            rec["dimension"] = self.dimension(ctx)
            rec["degree"] = self.degree(ctx)
        return rec

    def __repr__(self):
        return "Subscheme(%d gens in %r)" % (len(self.ideal.gens), self.ambient)


@dataclass(frozen=True)
class RationalMapSpec:
    """A rational map to a projective space, one form per target coordinate."""

    source: object  # PolyRing, or a Subscheme to restrict the graph to
    target_block: Block
    forms: Tuple[Poly, ...]

    @property
    def source_ring(self) -> PolyRing:
        return self.source if isinstance(self.source, PolyRing) else self.source.ring

    @property
    def source_gens(self) -> Tuple[Poly, ...]:
        if isinstance(self.source, PolyRing):
            return ()
        return tuple(self.source.ideal.gens)

    def __post_init__(self):
        if len(self.forms) != self.target_block.size:
            raise SchemeError("need one form per target coordinate")
        if all(f.is_zero() for f in self.forms):
            raise SchemeError("map forms are all zero")
        degs = [f.multidegree() for f in self.forms if not f.is_zero()]
        if any(d is None for d in degs) or any(d != degs[0] for d in degs):
            raise SchemeError("map forms must share one multidegree")


@dataclass
class Cycle:
    """Formal sum of subschemes with rational multiplicities, equidimensional."""

    components: List[Tuple[Subscheme, Fraction]]
    dimension: int

    def degree(self, ctx: EngineContext) -> Fraction:
        return sum((m * c.degree(ctx) for c, m in self.components), Fraction(0))

    def is_empty(self) -> bool:
        return not self.components


@dataclass
class MultiplicityReport:
    """How many times one component appears inside a scheme's top cycle."""

    component: Subscheme
    multiplicity: Fraction
    total_degree: int
    residual_degree: int

    @property
    def integral(self) -> bool:
        return self.multiplicity.denominator == 1


# ---------------------------------------------------------------------------
# graph closure


def graph_closure(spec: RationalMapSpec, ctx: EngineContext) -> Subscheme:
    """Closure of the graph of the map over its regular locus.

    The graph ideal is generated by the 2x2 minors of [target coords;
    forms]; saturating by the base-locus ideal removes everything the
    minors pick up where all forms vanish.
    """
    src = spec.source_ring
    ext = src.ambient.extend(spec.target_block)
    ring = PolyRing(ext, src.field)
    forms = [ring.convert(f) for f in spec.forms]
    tvars = ring.block_vars(spec.target_block.name)
    gens = [ring.convert(g) for g in spec.source_gens]
    k = len(forms)
    for i in range(k):
        for j in range(i + 1, k):
            g = tvars[i] * forms[j] - tvars[j] * forms[i]
            if not g.is_zero():
                gens.append(g)
    graph = Ideal(ring, gens)
    base_locus = Ideal(ring, forms)
    sat = saturate(graph, base_locus, ctx)
    return Subscheme.saturated(sat, ctx)


# ---------------------------------------------------------------------------
# fibers


def _point_forms(ring: PolyRing, block: str, coords: Sequence) -> List[Poly]:
    """Linear forms cutting out one point of the named block."""
    F = ring.field
    vals = [c if not isinstance(c, int) else F.from_int(c) for c in coords]
    idx = list(ring.ambient.block_range(block))
    if len(vals) != len(idx):
        raise SchemeError("point has %d coordinates, block %r has %d" % (len(vals), block, len(idx)))
    blk = ring.ambient.block(block)
    out = []
    if blk.projective:
        if all(F.is_zero(v) for v in vals):
            raise SchemeError("all-zero projective point")
        for a in range(len(idx)):
            for b in range(a + 1, len(idx)):
                g = ring.var_by_index(idx[a]).scale(vals[b]) - ring.var_by_index(idx[b]).scale(vals[a])
                if not g.is_zero():
                    out.append(g)
    else:
        for a in range(len(idx)):
            out.append(ring.var_by_index(idx[a]) - ring.const(vals[a]))
    return out


def fiber(
    S: Subscheme,
    at: Dict[str, Sequence],
    ctx: EngineContext,
    project: bool = False,
) -> Subscheme:
    """Fiber of S over assigned block points, re-saturated.

    With project=True the assigned blocks are eliminated afterwards, so
    the result lives in the remaining factors.
    """
    if not at:
        return S
    ring = S.ring
    forms = []
    for block, coords in at.items():
        forms.extend(_point_forms(ring, block, coords))
    cut = S.ideal.with_extra(forms)
    if project:
        # saturate the blocks being dropped first, else the image closure
        # picks up the cone over their zero locus
        drop = [b for b in at if S.ambient.block(b).projective]
        cut = multisaturate(cut, ctx, blocks=drop)
        projected = eliminate(cut, list(at.keys()), ctx)
        return Subscheme.saturated(projected, ctx)
    return Subscheme.saturated(cut, ctx)


# ---------------------------------------------------------------------------
# components and multiplicities


def is_component(S: Subscheme, C: Subscheme, ctx: EngineContext) -> bool:
    """True when V(C) is a maximal-dimensional piece of V(S) inside V(C).

    Certified by: V(C) ⊆ V(S) (radical membership of generators),
    saturation by C actually removes something, and what is removed has
    the dimension of C itself.
    """
    if S.ambient != C.ambient:
        raise SchemeError("component test across different ambients")
    for g in S.ideal.gens:
        if not radical_member(g, C.ideal, ctx):
            return False
    kept = saturate(S.ideal, C.ideal, ctx)
    if contains_ideal(S.ideal, kept, ctx):
        return False  # saturation removed nothing
    removed = saturate(S.ideal, kept, ctx) if kept.gens else S.ideal
    return hilbert_data(removed, ctx).dimension == C.dimension(ctx)


def union_certify(S: Subscheme, parts: Sequence[Subscheme], ctx: EngineContext) -> bool:
    """True iff S and the union of the parts agree up to radical."""
    if not parts:
        raise SchemeError("empty part list")
    meet = parts[0].ideal
    for p in parts[1:]:
        meet = intersect(meet, p.ideal, ctx)
    return radical_equal(S.ideal, meet, ctx)


def component_multiplicity(
    S: Subscheme,
    C: Subscheme,
    others: Sequence[Subscheme],
    ctx: EngineContext,
) -> MultiplicityReport:
    """Multiplicity of C in S: degree of S minus all other parts, over deg C.

    The division is exact for generically reduced components; a
    non-integral value is reported as-is so callers can flag it.
    """
    if others:
        rest = others[0].ideal
        for p in others[1:]:
            rest = intersect(rest, p.ideal, ctx)
        part = saturate(S.ideal, rest, ctx)
    else:
        part = S.ideal
    part_h = hilbert_data(part, ctx)
    c_h = C.hilbert(ctx)
    if c_h.degree == 0:
        raise SchemeError("component has degree 0")
    if part_h.dimension != c_h.dimension:
        raise SchemeError(
            "isolated part has dimension %d, component has %d"
            % (part_h.dimension, c_h.dimension)
        )
    residual = saturate(S.ideal, C.ideal, ctx)
    res_h = hilbert_data(residual, ctx) if residual.gens else None
    res_deg = res_h.degree if res_h is not None and res_h.dimension >= 0 else 0
    return MultiplicityReport(
        component=C,
        multiplicity=Fraction(part_h.degree, c_h.degree),
        total_degree=hilbert_data(S.ideal, ctx).degree,
        residual_degree=res_deg,
    )


def cycle_degree(c: Cycle, ctx: EngineContext) -> Fraction:
    return c.degree(ctx)


# ---------------------------------------------------------------------------
# join


def join(A: Subscheme, B: Subscheme, ctx: EngineContext) -> Subscheme:
    """Closure of the union of lines meeting A and B in one projective space.

    Built from the incidence ideal: x collinear with p ∈ A and q ∈ B
    (3x3 minors of the stacked coordinate matrix), then p, q eliminated.
    """
    if A.ambient != B.ambient:
        raise SchemeError("join across different ambients")
    amb = A.ambient
    if len(amb.blocks) != 1 or not amb.blocks[0].projective:
        raise SchemeError("join needs a single projective factor")
    blk = amb.blocks[0]
    n = blk.size
    p_name = _unique_name(amb, "jp")
    q_name = _unique_name(amb, "jq")
    big = AmbientSpace(
        (blk, Block(p_name, n, projective=True), Block(q_name, n, projective=True))
    )
    ring = PolyRing(big, A.ring.field)
    x = ring.block_vars(blk.name)
    p = ring.block_vars(p_name)
    q = ring.block_vars(q_name)
    gens: List[Poly] = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                gens.append(_det3(x, p, q, (i, j, k)))
    rename_p = {blk.name + str(i): p_name + str(i) for i in range(n)}
    rename_q = {blk.name + str(i): q_name + str(i) for i in range(n)}
    gens += [g.map_vars(rename_p, ring) for g in A.ideal.gens]
    gens += [g.map_vars(rename_q, ring) for g in B.ideal.gens]
    incidence = Ideal(ring, gens)
    # remove the degenerate locus where the two endpoint points coincide
    # (there every x satisfies the minors), then the endpoint block cones
    diag = Ideal(
        ring,
        [p[i] * q[j] - p[j] * q[i] for i in range(n) for j in range(i + 1, n)],
    )
    incidence = saturate(incidence, diag, ctx)
    incidence = multisaturate(incidence, ctx, blocks=[p_name, q_name])
    out = eliminate(incidence, [p_name, q_name], ctx)
    target = PolyRing(amb, A.ring.field)
    return Subscheme.saturated(
        Ideal(target, [target.convert(g) for g in out.gens]), ctx
    )


def _unique_name(amb: AmbientSpace, base: str) -> str:
    names = {b.name for b in amb.blocks}
    name = base
    while name in names:
        name += "_"
    return name


def _det3(r0: List[Poly], r1: List[Poly], r2: List[Poly], cols: Tuple[int, int, int]) -> Poly:
    i, j, k = cols
    return (
        r0[i] * (r1[j] * r2[k] - r1[k] * r2[j])
        - r0[j] * (r1[i] * r2[k] - r1[k] * r2[i])
        + r0[k] * (r1[i] * r2[j] - r1[j] * r2[i])
    )


# ---------------------------------------------------------------------------
# point search over a prime field


@dataclass(frozen=True)
class PointWitness:
    """A rational point, as projective coordinates in the block's order."""

    block: str
    coords: Tuple[int, ...]
    field_name: str


def _univariate_roots(field: PrimeField, coeffs: List[int]) -> List[int]:
    """Roots in F_p of sum coeffs[i] * v^i, by direct scan (p is small)."""
    while coeffs and coeffs[-1] == 0:
        coeffs = coeffs[:-1]
    if not coeffs:
        raise SchemeError("zero polynomial has every root")
    p = field.p
    roots = []
    for v in range(p):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * v + c) % p
        if acc == 0:
            roots.append(v)
    return roots


def _solve_zero_dim(ideal: Ideal, ctx: EngineContext, limit: int = 64) -> List[Dict[int, int]]:
    """All F_p points of a zero-dimensional affine-chart system.

    Back-substitutes through a lex basis: in lex, every variable owns a
    basis element using only that variable and later ones, so repeated
    substitution always yields univariate conditions.
    """
    ring = ideal.ring
    F = ring.field
    if not isinstance(F, PrimeField):
        raise SchemeError("point solving needs a prime field")
    basis = ctx.groebner(ideal, LexOrder(ring.nvars))
    if any(b.is_constant() and not b.is_zero() for b in basis):
        return []
    nv = ring.nvars
    solutions: List[Dict[int, int]] = []

    def substitute_known(p: Poly, known: Dict[int, int]) -> Dict[Tuple[int, ...], int]:
        out: Dict[Tuple[int, ...], int] = {}
        for m, c in p.terms.items():
            val = c
            nm = list(m)
            for i, v in known.items():
                if nm[i]:
                    val = val * pow(v, nm[i], F.p) % F.p
                    nm[i] = 0
            key = tuple(nm)
            out[key] = (out.get(key, 0) + val) % F.p
        return {m: c for m, c in out.items() if c}

    def walk(var: int, known: Dict[int, int]):
        if len(solutions) >= limit:
            return
        if var < 0:
            solutions.append(dict(known))
            return
        candidates: Optional[set] = None
        for b in basis:
            reduced = substitute_known(b, known)
            support = {i for m in reduced for i, e in enumerate(m) if e}
            if not reduced:
                continue
            if not support:
                return  # nonzero constant: dead branch
            if support == {var}:
                deg = max(m[var] for m in reduced)
                coeffs = [0] * (deg + 1)
                for m, c in reduced.items():
                    coeffs[m[var]] = c
                roots = set(_univariate_roots(F, coeffs))
                candidates = roots if candidates is None else candidates & roots
        if candidates is None:
            return  # free variable: system is not zero-dimensional here
        for r in sorted(candidates):
            known[var] = r
            walk(var - 1, known)
            del known[var]
            if len(solutions) >= limit:
                return

    walk(nv - 1, {})
    return solutions


def random_point(
    S: Subscheme, ctx: EngineContext, trials: int = 30
) -> Optional[PointWitness]:
    """A rational point of S over its prime field, or None after all trials.

    Slices S with random hyperplanes down to dimension 0 and solves the
    resulting system chart by chart; deterministic under the context seed.
    """
    amb = S.ambient
    if len(amb.projective_blocks) != 1 or len(amb.blocks) != 1:
        raise SchemeError("point search needs a single projective factor")
    blk = amb.blocks[0]
    ring = S.ring
    F = ring.field
    if not isinstance(F, PrimeField):
        raise SchemeError("point search needs a prime field")
    dim = S.dimension(ctx)
    if dim < 0:
        return None
    n = blk.size
    for trial in range(trials):
        rng = ctx.rng("random-point", S.ideal.key(), trial)
        slices = []
        for _ in range(dim):
            coeffs = [F.sample(rng) for _ in range(n)]
            form = ring.zero()
            for i, c in enumerate(coeffs):
                form = form + ring.var_by_index(amb.block_range(blk.name)[i]).scale(c)
            if not form.is_zero():
                slices.append(form)
        sliced = S.ideal.with_extra(slices)
        for chart in range(n):
            vname = blk.name + str(chart)
            chart_ideal = sliced.with_extra([ring.var(vname) - ring.one()])
            sols = _solve_zero_dim(chart_ideal, ctx, limit=4)
            if sols:
                sol = sols[0]
                coords = tuple(
                    sol.get(amb.block_range(blk.name)[i], 0) for i in range(n)
                )
                return PointWitness(block=blk.name, coords=coords, field_name=F.name)
    return None
