"""Ideal-level operations: elimination, saturation, intersection, Hilbert data.

An Ideal is a ring plus a generator tuple.  All derived computations go
through an EngineContext, which owns the resource caps, the seeded RNG
streams for randomized reductions, an in-process memo, and (optionally)
the on-disk basis cache.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .cache import BasisCache, basis_request_key
from .groebner import (
    DEFAULT_CAPS,
    ResourceCapExceeded,
    ResourceCaps,
    buchberger,
    normal_form,
)
from .linalg import kernel_basis
from .ring import (
    AmbientSpace,
    Block,
    BlockElimOrder,
    GrevlexOrder,
    MonomialOrder,
    PermutedGrevlexOrder,
    Poly,
    PolyRing,
    RingError,
    poly_str,
)


class IdealError(Exception):
    pass


class Ideal:
    """Finitely generated ideal in a PolyRing; zero generators are dropped."""

    __slots__ = ("ring", "gens")

    def __init__(self, ring: PolyRing, gens: Iterable[Poly]):
        clean = []
        for g in gens:
            if g.ring != ring:
                raise IdealError("generator lives in a different ring")
            if not g.is_zero():
                clean.append(g)
        # normalize to monic and dedupe, preserving first occurrence
        seen = set()
        uniq = []
        for g in clean:
            g = g.monic(ring.order)
            key = frozenset(g.terms.items())
            if key not in seen:
                seen.add(key)
                uniq.append(g)
        self.ring = ring
        self.gens: Tuple[Poly, ...] = tuple(uniq)

    @classmethod
    def of(cls, ring: PolyRing, *gens: Poly) -> "Ideal":
        return cls(ring, gens)

    @property
    def ambient(self) -> AmbientSpace:
        return self.ring.ambient

    def __add__(self, other: "Ideal") -> "Ideal":
        if isinstance(other, Ideal):
            if other.ring != self.ring:
                raise IdealError("ideal sum across different rings")
            return Ideal(self.ring, self.gens + other.gens)
        return NotImplemented

    def with_extra(self, extra: Iterable[Poly]) -> "Ideal":
        return Ideal(self.ring, self.gens + tuple(extra))

    def is_zero(self) -> bool:
        return not self.gens

    def is_multihomogeneous(self) -> bool:
        return all(g.is_multihomogeneous() for g in self.gens)

    def is_homogeneous(self) -> bool:
        """Homogeneous for the total grading."""
        for g in self.gens:
            degs = {sum(m) for m in g.terms}
            if len(degs) > 1:
                return False
        return True

    def gen_strs(self) -> List[str]:
        return [poly_str(g) for g in self.gens]

    def key(self) -> tuple:
        return (self.ring.key(), tuple(sorted(self.gen_strs())))

    def __repr__(self):
        return "Ideal(%d gens in %r)" % (len(self.gens), self.ring.ambient)


@dataclass
class EngineContext:
    """Caps + deterministic randomness + caching for one verification run."""

    caps: ResourceCaps = DEFAULT_CAPS
    cache: Optional[BasisCache] = None
    seed: int = 0
    _memo: Dict[tuple, List[Poly]] = dc_field(default_factory=dict, repr=False)

    def rng(self, *tag) -> random.Random:
        # hash() on strings is salted per process; derive a stable seed
        import hashlib

        digest = hashlib.sha256(repr((self.seed,) + tag).encode()).digest()
        return random.Random(int.from_bytes(digest[:8], "big"))

    def groebner(self, ideal: Ideal, order: Optional[MonomialOrder] = None) -> List[Poly]:
        """Reduced Groebner basis, memoized in-process and on disk."""
        ring = ideal.ring
        if order is None:
            order = GrevlexOrder(ring.nvars)
        memo_key = (ideal.key(), order.name)
        hit = self._memo.get(memo_key)
        if hit is not None:
            return hit
        disk_key = None
        if self.cache is not None:
            disk_key = basis_request_key(ring, order.name, ideal.gen_strs())
            cached = self.cache.get(disk_key, ring)
            if cached is not None:
                self._memo[memo_key] = cached
                return cached
        basis = buchberger(ideal.gens, order, self.caps)
        self._memo[memo_key] = basis
        if self.cache is not None:
            self.cache.put(disk_key, [poly_str(b) for b in basis])
        return basis

    def nf(self, p: Poly, ideal: Ideal, order: Optional[MonomialOrder] = None) -> Poly:
        if order is None:
            order = GrevlexOrder(ideal.ring.nvars)
        return normal_form(p, self.groebner(ideal, order), order, self.caps)


DEFAULT_CONTEXT = EngineContext()


# ---------------------------------------------------------------------------
# membership / equality


def contains(ideal: Ideal, p: Poly, ctx: EngineContext = DEFAULT_CONTEXT) -> bool:
    if p.is_zero():
        return True
    return ctx.nf(p, ideal).is_zero()


def contains_ideal(big: Ideal, small: Ideal, ctx: EngineContext = DEFAULT_CONTEXT) -> bool:
    return all(contains(big, g, ctx) for g in small.gens)


def ideal_equal(a: Ideal, b: Ideal, ctx: EngineContext = DEFAULT_CONTEXT) -> bool:
    return contains_ideal(a, b, ctx) and contains_ideal(b, a, ctx)


def is_unit_ideal(ideal: Ideal, ctx: EngineContext = DEFAULT_CONTEXT) -> bool:
    basis = ctx.groebner(ideal)
    return any(b.is_constant() and not b.is_zero() for b in basis)


# ---------------------------------------------------------------------------
# ring plumbing: fresh auxiliary variables, moving ideals between rings


def _fresh_block_name(ambient: AmbientSpace, base: str) -> str:
    names = {b.name for b in ambient.blocks}
    name = base
    while name in names:
        name += "_"
    return name


def _with_aux_var(ring: PolyRing, base: str) -> Tuple[PolyRing, Poly, str]:
    """Extend by one affine auxiliary variable; return (ring, var, block name)."""
    name = _fresh_block_name(ring.ambient, base)
    ext = ring.ambient.extend(Block(name, 1, projective=False))
    ring2 = PolyRing(ext, ring.field)
    return ring2, ring2.var(name + "0"), name


def move_ideal(ideal: Ideal, target: PolyRing) -> Ideal:
    return Ideal(target, [target.convert(g) for g in ideal.gens])


# ---------------------------------------------------------------------------
# elimination


def eliminate(
    ideal: Ideal, drop_blocks: Sequence[str], ctx: EngineContext = DEFAULT_CONTEXT
) -> Ideal:
    """Intersect with the subring omitting the named blocks."""
    ring = ideal.ring
    order = BlockElimOrder.for_blocks(ring.ambient, drop_blocks)
    basis = ctx.groebner(ideal, order)
    drop_idx = set(order.elim)
    sub_ambient = ring.ambient.without(drop_blocks)
    sub_ring = PolyRing(sub_ambient, ring.field)
    keep_idx = [i for i in range(ring.nvars) if i not in drop_idx]
    kept = []
    for b in basis:
        if all(m[i] == 0 for m in b.terms for i in drop_idx):
            terms = {tuple(m[i] for i in keep_idx): c for m, c in b.terms.items()}
            kept.append(Poly(sub_ring, terms))
    return Ideal(sub_ring, kept)


# ---------------------------------------------------------------------------
# intersection and quotients


def intersect(a: Ideal, b: Ideal, ctx: EngineContext = DEFAULT_CONTEXT) -> Ideal:
    """a ∩ b via the one-variable trick: eliminate u from u*a + (1-u)*b."""
    if a.ring != b.ring:
        raise IdealError("intersection across different rings")
    ring = a.ring
    ring2, u, block = _with_aux_var(ring, "u")
    gens = [u * ring2.convert(g) for g in a.gens]
    one_minus_u = ring2.one() - u
    gens += [one_minus_u * ring2.convert(g) for g in b.gens]
    elim = eliminate(Ideal(ring2, gens), [block], ctx)
    return move_ideal(elim, ring)


def exact_div(p: Poly, g: Poly) -> Poly:
    """Quotient p/g when g divides p exactly; raises IdealError otherwise."""
    if g.is_zero():
        raise IdealError("division by the zero polynomial")
    ring = p.ring
    order = ring.order
    F = ring.field
    lg_m, lg_c = g.lead(order)
    q = ring.zero()
    rem = p
    while not rem.is_zero():
        lm, lc = rem.lead(order)
        if any(a < b for a, b in zip(lm, lg_m)):
            raise IdealError("polynomial is not divisible")
        qm = tuple(a - b for a, b in zip(lm, lg_m))
        qc = F.div(lc, lg_c)
        qt = Poly(ring, {qm: qc})
        q = q + qt
        rem = rem - qt * g
    return q


def quotient_by_poly(ideal: Ideal, g: Poly, ctx: EngineContext = DEFAULT_CONTEXT) -> Ideal:
    """Colon ideal (I : g) = (I ∩ (g)) / g."""
    if g.is_zero():
        raise IdealError("colon by zero")
    meet = intersect(ideal, Ideal(ideal.ring, [g]), ctx)
    return Ideal(ideal.ring, [exact_div(h, g) for h in meet.gens])


def saturate_by_poly(ideal: Ideal, g: Poly, ctx: EngineContext = DEFAULT_CONTEXT) -> Ideal:
    """(I : g^∞) in one elimination: drop u from I + (1 - u*g)."""
    if g.is_zero():
        raise IdealError("saturation by zero")
    ring = ideal.ring
    ring2, u, block = _with_aux_var(ring, "u")
    gens = [ring2.convert(h) for h in ideal.gens]
    gens.append(ring2.one() - u * ring2.convert(g))
    elim = eliminate(Ideal(ring2, gens), [block], ctx)
    return move_ideal(elim, ring)


def saturate_by_poly_iterated(
    ideal: Ideal, g: Poly, ctx: EngineContext = DEFAULT_CONTEXT
) -> Ideal:
    """(I : g^∞) by iterating the colon until it stabilizes (oracle route)."""
    cur = ideal
    while True:
        nxt = quotient_by_poly(cur, g, ctx)
        if contains_ideal(cur, nxt, ctx):
            return cur
        cur = nxt


def _var_power_content(p: Poly, idx: int) -> int:
    return min(m[idx] for m in p.terms)


def _divide_out_var(p: Poly, idx: int, power: int) -> Poly:
    if power == 0:
        return p
    out = {}
    for m, c in p.terms.items():
        nm = list(m)
        nm[idx] -= power
        out[tuple(nm)] = c
    return Poly(p.ring, out)


def saturate_by_var(ideal: Ideal, varname: str, ctx: EngineContext = DEFAULT_CONTEXT) -> Ideal:
    """(I : v^∞) for a variable v.

    For ideals homogeneous in the total grading this uses the one-pass
    divide-out trick: compute a basis under grevlex with v globally
    smallest, then strip the v-power content of each element.
    """
    ring = ideal.ring
    idx = ring.ambient.var_index(varname)
    if not ideal.is_homogeneous():
        return saturate_by_poly(ideal, ring.var(varname), ctx)
    order = PermutedGrevlexOrder.with_last(ring.nvars, idx)
    basis = ctx.groebner(ideal, order)
    stripped = [_divide_out_var(b, idx, _var_power_content(b, idx)) for b in basis]
    return Ideal(ring, stripped)


def _random_block_linear(ring: PolyRing, block: str, rng: random.Random) -> Poly:
    F = ring.field
    idx = list(ring.ambient.block_range(block))
    terms = {}
    for i in idx:
        c = F.sample(rng)
        if not F.is_zero(c):
            m = [0] * ring.nvars
            m[i] = 1
            terms[tuple(m)] = c
    p = Poly(ring, terms)
    if p.is_zero():
        return _random_block_linear(ring, block, rng)
    return p


def saturate_by_linear_form(
    ideal: Ideal, form: Poly, ctx: EngineContext = DEFAULT_CONTEXT
) -> Ideal:
    """(I : ℓ^∞) for a linear form supported on one block.

    Change coordinates inside the block so ℓ becomes a variable, apply
    the divide-out trick, change back.
    """
    ring = ideal.ring
    F = ring.field
    support = sorted(form.variables())
    if form.total_degree() != 1 or len({ring.ambient.block_of_index(i).name for i in support}) != 1:
        raise IdealError("need a linear form supported on a single block")
    # pick the pivot variable: the largest-index one with nonzero coefficient
    pivot = support[-1]
    pname = ring.ambient.varnames[pivot]
    coeffs = {i: form.coeff_of_var_power(i, 1).terms.get(ring._zero_mono) for i in support}
    c_p = coeffs[pivot]
    if len(support) == 1:
        return saturate_by_var(ideal, pname, ctx)
    # forward substitution sends v_p to (v_p - sum_{i != p} c_i v_i)/c_p, so ℓ -> v_p
    inv_cp = F.inv(c_p)
    fwd = ring.var(pname).scale(inv_cp)
    back = ring.var(pname).scale(c_p)
    for i in support:
        if i == pivot:
            continue
        vi = ring.var_by_index(i)
        fwd = fwd - vi.scale(F.mul(coeffs[i], inv_cp))
        back = back + vi.scale(coeffs[i])
    moved = Ideal(ring, [g.substitute({pname: fwd}) for g in ideal.gens])
    sat = saturate_by_var(moved, pname, ctx)
    return Ideal(ring, [g.substitute({pname: back}) for g in sat.gens])


def saturate_block(
    ideal: Ideal,
    block: str,
    ctx: EngineContext = DEFAULT_CONTEXT,
    method: str = "linear",
) -> Ideal:
    """Saturation by the irrelevant ideal of one block, (I : (v_0..v_k)^∞).

    method="linear": one divide-out pass against a seeded random linear
    form of the block — equal to the true block saturation with high
    probability (the form must avoid every associated prime that does
    not contain the whole block).
    method="exact": the intersection ∩_i (I : v_i^∞), which is exact.
    """
    ring = ideal.ring
    names = [ring.ambient.varnames[i] for i in ring.ambient.block_range(block)]
    if len(names) == 1:
        return saturate_by_var(ideal, names[0], ctx)
    if method == "exact":
        out = saturate_by_var(ideal, names[0], ctx)
        for n in names[1:]:
            out = intersect(out, saturate_by_var(ideal, n, ctx), ctx)
        return out
    if method != "linear":
        raise IdealError("unknown saturation method %r" % method)
    rng = ctx.rng("saturate-block", block, ideal.key())
    form = _random_block_linear(ring, block, rng)
    return saturate_by_linear_form(ideal, form, ctx)


def multisaturate(
    ideal: Ideal,
    ctx: EngineContext = DEFAULT_CONTEXT,
    blocks: Optional[Sequence[str]] = None,
    method: str = "linear",
) -> Ideal:
    """Saturate by the irrelevant ideal of every (listed) projective block."""
    if blocks is None:
        blocks = [b.name for b in ideal.ambient.projective_blocks]
    cur = ideal
    for b in blocks:
        cur = saturate_block(cur, b, ctx, method=method)
    return cur


def _equalize_multidegree(
    gens: Sequence[Poly], ctx: EngineContext, tag: tuple
) -> Optional[List[Poly]]:
    """Raise each generator to a common multidegree with random block-linear factors."""
    ring = gens[0].ring
    degs = [g.multidegree() for g in gens]
    if any(d is None for d in degs):
        return None
    target = {b.name: max(d[b.name] for d in degs) for b in ring.ambient.blocks}
    out = []
    for k, (g, d) in enumerate(zip(gens, degs)):
        for b in ring.ambient.blocks:
            deficit = target[b.name] - d[b.name]
            if deficit == 0:
                continue
            if not b.projective and b.size == 1:
                return None  # cannot homogeneously raise degree in an affine line
            rng = ctx.rng(*(tag + ("equalize", k, b.name)))
            for _ in range(deficit):
                g = g * _random_block_linear(ring, b.name, rng)
        out.append(g)
    return out


def saturate(
    ideal: Ideal,
    target: Ideal,
    ctx: EngineContext = DEFAULT_CONTEXT,
    method: str = "random",
) -> Ideal:
    """(I : J^∞) for an arbitrary finitely generated J.

    method="random": saturate by a single random J-combination of common
    multidegree, then confirm stability against a second combination
    (correct with high probability; an independent draw that still
    moves the ideal restarts the loop).
    method="exact": ∩_g (I : g^∞) over the generators of J.
    """
    if target.is_zero():
        raise IdealError("saturation by the zero ideal")
    gens = list(target.gens)
    if len(gens) == 1:
        return saturate_by_poly(ideal, gens[0], ctx)
    if method == "exact":
        out = saturate_by_poly(ideal, gens[0], ctx)
        for g in gens[1:]:
            out = intersect(out, saturate_by_poly(ideal, g, ctx), ctx)
        return out
    if method != "random":
        raise IdealError("unknown saturation method %r" % method)
    F = ideal.ring.field
    tag = ("saturate", ideal.key(), target.key())

    def combo(round_no: int) -> Poly:
        raised = _equalize_multidegree(gens, ctx, tag + (round_no,))
        pool = raised if raised is not None else gens
        rng = ctx.rng(*(tag + ("combo", round_no)))
        acc = ideal.ring.zero()
        for g in pool:
            acc = acc + g.scale(F.sample_nonzero(rng))
        return acc

    cur = saturate_by_poly(ideal, combo(0), ctx)
    round_no = 1
    while True:
        probe = combo(round_no)
        nxt = quotient_by_poly(cur, probe, ctx)
        if contains_ideal(cur, nxt, ctx):
            return cur
        cur = saturate_by_poly(cur, probe, ctx)
        round_no += 1


# ---------------------------------------------------------------------------
# radical membership


def radical_member(p: Poly, ideal: Ideal, ctx: EngineContext = DEFAULT_CONTEXT) -> bool:
    """p ∈ √I, tested by forcing 1 - u*p to be a unit modulo I."""
    if p.is_zero():
        return True
    ring = ideal.ring
    ring2, u, _ = _with_aux_var(ring, "u")
    gens = [ring2.convert(g) for g in ideal.gens]
    gens.append(ring2.one() - u * ring2.convert(p))
    return is_unit_ideal(Ideal(ring2, gens), ctx)


def radical_contains_ideal(
    big: Ideal, small: Ideal, ctx: EngineContext = DEFAULT_CONTEXT
) -> bool:
    """small ⊆ √big, generator by generator."""
    return all(radical_member(g, big, ctx) for g in small.gens)


def radical_equal(a: Ideal, b: Ideal, ctx: EngineContext = DEFAULT_CONTEXT) -> bool:
    """√a = √b via mutual radical membership of generators."""
    return radical_contains_ideal(a, b, ctx) and radical_contains_ideal(b, a, ctx)


# ---------------------------------------------------------------------------
# Hilbert series data: dimension and degree


@dataclass(frozen=True)
class HilbertData:
    """Summary of the total-degree Hilbert series of R/I.

    krull_dim is the dimension of the affine multicone; dimension is the
    product-projective dimension (krull_dim minus one per projective
    block); degree is the numerator of the reduced series evaluated at 1.
    """

    krull_dim: int
    dimension: int
    degree: int
    numerator: Tuple[int, ...]


def _poly1_mul(a: List[int], b: List[int]) -> List[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly1_add_shifted(a: List[int], b: List[int], shift: int) -> List[int]:
    n = max(len(a), shift + len(b))
    out = a + [0] * (n - len(a))
    for j, y in enumerate(b):
        out[shift + j] += y
    return out


def _trim(a: List[int]) -> List[int]:
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _minimalize_monomials(leads: Sequence[Tuple[int, ...]]) -> List[Tuple[int, ...]]:
    leads = sorted(set(leads), key=sum)
    out: List[Tuple[int, ...]] = []
    for m in leads:
        if not any(all(x <= y for x, y in zip(o, m)) for o in out):
            out.append(m)
    return out


def hilbert_numerator(leads: Sequence[Tuple[int, ...]], nvars: int) -> List[int]:
    """Numerator of the Hilbert series of R/(lead monomials) over (1-t)^nvars."""
    memo: Dict[frozenset, Tuple[int, ...]] = {}

    def rec(mons: List[Tuple[int, ...]]) -> List[int]:
        if not mons:
            return [1]
        if any(sum(m) == 0 for m in mons):
            return [0]
        key = frozenset(mons)
        hit = memo.get(key)
        if hit is not None:
            return list(hit)
        # pairwise-coprime monomials form a regular sequence: product formula
        supports = [tuple(i for i, e in enumerate(m) if e) for m in mons]
        flat = [i for s in supports for i in s]
        if len(flat) == len(set(flat)):
            acc = [1]
            for m in mons:
                acc = _poly1_mul(acc, _one_minus_t_pow(sum(m)))
            memo[key] = tuple(acc)
            return acc
        # pivot on the most shared variable
        counts = [0] * nvars
        for m in mons:
            for i, e in enumerate(m):
                if e:
                    counts[i] += 1
        v = max(range(nvars), key=lambda i: counts[i])
        # I + (v): generators divisible by v become redundant
        plus = _minimalize_monomials(
            [m for m in mons if m[v] == 0] + [_unit_at(nvars, v)]
        )
        # I : v -- drop one power of v where present
        colon = _minimalize_monomials([_dec_at(m, v) if m[v] else m for m in mons])
        n_plus = rec(plus)
        n_colon = rec(colon)
        acc = _trim(_poly1_add_shifted(n_plus, n_colon, 1))
        memo[key] = tuple(acc)
        return acc

    return rec(_minimalize_monomials(leads))


def _one_minus_t_pow(d: int) -> List[int]:
    out = [0] * (d + 1)
    out[0] = 1
    out[d] = -1
    return out


def _unit_at(n: int, i: int) -> Tuple[int, ...]:
    lm = [0] * n
    lm[i] = 1
    return tuple(lm)


def _dec_at(m: Tuple[int, ...], i: int) -> Tuple[int, ...]:
    lm = list(m)
    lm[i] -= 1
    return tuple(lm)


def hilbert_data(ideal: Ideal, ctx: EngineContext = DEFAULT_CONTEXT) -> HilbertData:
    """Dimension and total-grading degree of R/I from the lead-term ideal.

    Requires I homogeneous in the total grading (so the series is the
    honest Hilbert series, not just a staircase statistic).
    """
    if not ideal.is_homogeneous():
        raise IdealError("hilbert data needs a homogeneous ideal")
    ring = ideal.ring
    nproj = len(ring.ambient.projective_blocks)
    basis = ctx.groebner(ideal)
    order = GrevlexOrder(ring.nvars)
    leads = [b.lead(order)[0] for b in basis]
    num = hilbert_numerator(leads, ring.nvars)
    # cancel (1 - t) factors against the (1-t)^nvars denominator
    cancels = 0
    num = _trim(list(num))
    while len(num) > 1 or num[0] != 0:
        if sum(num) != 0:
            break
        # divide by (1 - t): q[i] = sum_{j<=i} num[j]
        q = []
        acc = 0
        for c in num[:-1]:
            acc += c
            q.append(acc)
        num = _trim(q if q else [0])
        cancels += 1
    if num == [0]:
        return HilbertData(krull_dim=-1, dimension=-1, degree=0, numerator=(0,))
    krull = ring.nvars - cancels  # remaining denominator power = Krull dim of R/I
    return HilbertData(
        krull_dim=krull,
        dimension=krull - nproj,
        degree=sum(num),
        numerator=tuple(num),
    )


def dimension(ideal: Ideal, ctx: EngineContext = DEFAULT_CONTEXT) -> int:
    return hilbert_data(ideal, ctx).dimension


def degree(ideal: Ideal, ctx: EngineContext = DEFAULT_CONTEXT) -> int:
    return hilbert_data(ideal, ctx).degree


# ---------------------------------------------------------------------------
# zero-dimensional counting


def zero_dim_count(ideal: Ideal, ctx: EngineContext = DEFAULT_CONTEXT) -> Optional[int]:
    """dim_k R/I when finite (the staircase is bounded), else None.

    Counts standard monomials, i.e. solutions with multiplicity over the
    algebraic closure for a zero-dimensional affine system.
    """
    ring = ideal.ring
    basis = ctx.groebner(ideal)
    if any(b.is_constant() and not b.is_zero() for b in basis):
        return 0
    order = GrevlexOrder(ring.nvars)
    leads = [b.lead(order)[0] for b in basis]
    leads = _minimalize_monomials(leads)
    bounds = [None] * ring.nvars
    for m in leads:
        support = [i for i, e in enumerate(m) if e]
        if len(support) == 1:
            i = support[0]
            if bounds[i] is None or m[i] < bounds[i]:
                bounds[i] = m[i]
    if any(b is None for b in bounds):
        return None
    count = 0
    cur = [0] * ring.nvars

    def blocked(upto: int) -> bool:
        for m in leads:
            if all(m[i] <= cur[i] if i <= upto else m[i] == 0 for i in range(ring.nvars)):
                return True
        return False

    def walk(i: int):
        nonlocal count
        if i == ring.nvars:
            count += 1
            return
        for e in range(bounds[i]):
            cur[i] = e
            if not blocked(i):
                walk(i + 1)
        cur[i] = 0

    walk(0)
    return count


# ---------------------------------------------------------------------------
# linear part of an ideal inside one block


def linear_forms_in(
    ideal: Ideal, block: str, ctx: EngineContext = DEFAULT_CONTEXT
) -> List[Poly]:
    """Basis of the space of block-linear forms contained in the ideal."""
    ring = ideal.ring
    F = ring.field
    idx = list(ring.ambient.block_range(block))
    nfs = [ctx.nf(ring.var_by_index(i), ideal) for i in idx]
    monos = sorted({m for p in nfs for m in p.terms})
    rows = [[p.terms.get(m, F.zero) for p in nfs] for m in monos]
    forms = []
    for vec in kernel_basis(F, rows, len(idx)):
        acc = ring.zero()
        for c, i in zip(vec, idx):
            if not F.is_zero(c):
                acc = acc + ring.var_by_index(i).scale(c)
        forms.append(acc)
    return forms
