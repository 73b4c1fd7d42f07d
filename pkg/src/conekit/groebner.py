"""Buchberger's algorithm with the Gebauer-Moeller pair update.

Everything operates on the sparse Poly type; inside the hot loop
polynomials are handled as lists of (monomial, coefficient) sorted
descending under the active order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .ring import Monomial, MonomialOrder, Poly, PolyRing


class ResourceCapExceeded(Exception):
    """A computation outgrew its configured ceiling; never a verdict."""

    def __init__(self, what: str, detail: str = ""):
        self.what = what
        self.detail = detail
        super().__init__("%s cap exceeded%s" % (what, (": " + detail) if detail else ""))


@dataclass(frozen=True)
class ResourceCaps:
    max_basis: int = 4000
    max_pairs: int = 200000
    max_coeff_bits: int = 100000
    max_reduction_steps: int = 4_000_000

    def scaled(self, factor: float) -> "ResourceCaps":
        return ResourceCaps(
            max_basis=int(self.max_basis * factor),
            max_pairs=int(self.max_pairs * factor),
            max_coeff_bits=int(self.max_coeff_bits * factor),
            max_reduction_steps=int(self.max_reduction_steps * factor),
        )


DEFAULT_CAPS = ResourceCaps()


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def _mono_divides(a: Monomial, b: Monomial) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def _mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x > y else y for x, y in zip(a, b))


def _mono_coprime(a: Monomial, b: Monomial) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


class _Work:
    """Mutable reduction workspace for one Groebner run."""

    def __init__(self, ring: PolyRing, order: MonomialOrder, caps: ResourceCaps):
        self.ring = ring
        self.order = order
        self.caps = caps
        self.field = ring.field
        self.steps = 0

    def tick(self, n: int = 1):
        self.steps += n
        if self.steps > self.caps.max_reduction_steps:
            raise ResourceCapExceeded("reduction-steps", str(self.steps))

    def to_list(self, p: Poly) -> List[Tuple[Monomial, object]]:
        hk = self.order.heapkey
        return sorted(p.terms.items(), key=lambda t: hk(t[0]))

    def to_poly(self, terms: List[Tuple[Monomial, object]]) -> Poly:
        return Poly(self.ring, dict(terms))

    def check_bits(self, terms):
        F = self.field
        cap = self.caps.max_coeff_bits
        for _, c in terms:
            if F.coeff_bits(c) > cap:
                raise ResourceCapExceeded("coefficient-bits")

    def reduce_full(
        self,
        terms: List[Tuple[Monomial, object]],
        basis: Sequence[List[Tuple[Monomial, object]]],
        leads: Sequence[Monomial],
    ) -> List[Tuple[Monomial, object]]:
        """Full normal form of `terms` modulo `basis`; result sorted, monic not enforced."""
        F = self.field
        work: Dict[Monomial, object] = dict(terms)
        out: Dict[Monomial, object] = {}
        # max-heap of candidate monomials with lazy deletion; `work` is
        # authoritative, stale heap entries are skipped on pop
        import heapq

        hk = self.order.heapkey
        keys: Dict[Monomial, object] = {}

        def kneg(m):
            k = keys.get(m)
            if k is None:
                k = hk(m)
                keys[m] = k
            return k

        heap = [(kneg(m), m) for m in work]
        heapq.heapify(heap)
        while heap:
            _, m = heapq.heappop(heap)
            c = work.pop(m, None)
            if c is None or F.is_zero(c):
                continue
            self.tick()
            for gi, lm in enumerate(leads):
                if _mono_divides(lm, m):
                    g = basis[gi]
                    q = _mono_div(m, lm)
                    factor = F.div(c, g[0][1])
                    # work -= factor * q * g
                    for gm, gc in g:
                        mm = _mono_mul(gm, q)
                        sub = F.mul(factor, gc)
                        if mm == m:
                            continue  # head cancels by construction
                        cur = work.get(mm)
                        if cur is None:
                            nv = F.neg(sub)
                            if not F.is_zero(nv):
                                work[mm] = nv
                                heapq.heappush(heap, (kneg(mm), mm))
                        else:
                            nv = F.sub(cur, sub)
                            if F.is_zero(nv):
                                del work[mm]
                            else:
                                work[mm] = nv
                    self.tick(len(g))
                    break
            else:
                out[m] = c
        result = sorted(out.items(), key=lambda t: hk(t[0]))
        self.check_bits(result)
        return result


def _spoly(f, g, W: _Work):
    F = W.field
    lmf, lcf = f[0]
    lmg, lcg = g[0]
    lcm = _mono_lcm(lmf, lmg)
    qf = _mono_div(lcm, lmf)
    qg = _mono_div(lcm, lmg)
    terms: Dict[Monomial, object] = {}
    inv_f = F.inv(lcf)
    inv_g = F.inv(lcg)
    for m, c in f:
        mm = _mono_mul(m, qf)
        terms[mm] = F.mul(c, inv_f)
    for m, c in g:
        mm = _mono_mul(m, qg)
        cur = terms.get(mm)
        v = F.mul(c, inv_g)
        if cur is None:
            terms[mm] = F.neg(v)
        else:
            nv = F.sub(cur, v)
            if F.is_zero(nv):
                del terms[mm]
            else:
                terms[mm] = nv
    hk = W.order.heapkey
    return sorted(terms.items(), key=lambda t: hk(t[0]))


def buchberger(
    gens: Sequence[Poly],
    order: MonomialOrder,
    caps: ResourceCaps = DEFAULT_CAPS,
) -> List[Poly]:
    """Reduced Groebner basis of the ideal generated by `gens` under `order`.

    Returns monic generators sorted descending by lead monomial.
    Raises ResourceCapExceeded when a ceiling is hit.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    ring = gens[0].ring
    W = _Work(ring, order, caps)
    F = ring.field
    key = order.key

    G: List[List[Tuple[Monomial, object]]] = []
    leads: List[Monomial] = []

    pairs: List[Tuple[Monomial, int, int]] = []  # (lcm, i, j)

    def update(new_terms):
        """Gebauer-Moeller: install new element, prune pair set."""
        t = len(G)
        lm_new = new_terms[0][0]
        # build candidate pairs with existing elements
        cand = []
        for i in range(t):
            cand.append((_mono_lcm(leads[i], lm_new), i))
        # discard old pairs whose lcm is a proper multiple of new lead
        kept = []
        for lcm, i, j in pairs:
            if (
                _mono_divides(lm_new, lcm)
                and _mono_lcm(leads[i], lm_new) != lcm
                and _mono_lcm(leads[j], lm_new) != lcm
            ):
                continue
            kept.append((lcm, i, j))
        pairs[:] = kept
        # prune candidates: criterion M (lcm strictly divisible by another cand lcm)
        cand.sort(key=lambda t2: key(t2[0]))
        pruned = []
        for idx, (lcm, i) in enumerate(cand):
            redundant = False
            for lcm2, i2 in pruned:
                if lcm2 != lcm and _mono_divides(lcm2, lcm):
                    redundant = True
                    break
            if not redundant:
                pruned.append((lcm, i))
        # criterion F: among equal lcm keep one
        seen = {}
        for lcm, i in pruned:
            if lcm not in seen:
                seen[lcm] = i
        # criterion B (product criterion): drop coprime-lead pairs
        for lcm, i in seen.items():
            if not _mono_coprime(leads[i], lm_new):
                pairs.append((lcm, i, t))
        G.append(new_terms)
        leads.append(lm_new)
        if len(G) > caps.max_basis:
            raise ResourceCapExceeded("basis-size", str(len(G)))
        if len(pairs) > caps.max_pairs:
            raise ResourceCapExceeded("pair-count", str(len(pairs)))

    # seed with interreduced inputs (cheap: just normal forms against earlier)
    for g in sorted(gens, key=lambda p: key(p.lead(order)[0])):
        terms = W.reduce_full(W.to_list(g), G, leads)
        if terms:
            update(terms)

    while pairs:
        # normal selection: smallest lcm in the order
        idx = min(range(len(pairs)), key=lambda k: key(pairs[k][0]))
        lcm, i, j = pairs.pop(idx)
        s = _spoly(G[i], G[j], W)
        if not s:
            continue
        r = W.reduce_full(s, G, leads)
        if r:
            update(r)

    return _interreduce(G, W)


def _interreduce(G: List[List[Tuple[Monomial, object]]], W: _Work) -> List[Poly]:
    """Minimal then reduced basis; monic, sorted descending by lead."""
    key = W.order.key
    F = W.field
    # minimalize: drop elements whose lead is divisible by another lead
    G = sorted(G, key=lambda g: key(g[0][0]))
    minimal: List[List[Tuple[Monomial, object]]] = []
    for g in G:
        lm = g[0][0]
        if any(_mono_divides(h[0][0], lm) for h in minimal):
            continue
        minimal.append(g)
    # tail-reduce each against the others
    reduced: List[Poly] = []
    leads = [g[0][0] for g in minimal]
    for k, g in enumerate(minimal):
        others = [minimal[i] for i in range(len(minimal)) if i != k]
        other_leads = [leads[i] for i in range(len(minimal)) if i != k]
        r = W.reduce_full(g, others, other_leads)
        if not r:
            continue
        inv = F.inv(r[0][1])
        r = [(m, F.mul(c, inv)) for m, c in r]
        reduced.append(W.to_poly(r))
    hk = W.order.heapkey
    reduced.sort(key=lambda p: hk(p.lead(W.order)[0]))
    return reduced


def normal_form(
    p: Poly,
    basis: Sequence[Poly],
    order: MonomialOrder,
    caps: ResourceCaps = DEFAULT_CAPS,
) -> Poly:
    """Remainder of p modulo `basis` under `order`; no term divisible by a lead."""
    if p.is_zero() or not basis:
        return p
    W = _Work(p.ring, order, caps)
    blists = [W.to_list(b) for b in basis]
    leads = [b[0][0] for b in blists]
    return W.to_poly(W.reduce_full(W.to_list(p), blists, leads))


def spolynomial(f: Poly, g: Poly, order: MonomialOrder) -> Poly:
    W = _Work(f.ring, order, DEFAULT_CAPS)
    return W.to_poly(_spoly(W.to_list(f), W.to_list(g), W))


def is_groebner_basis(
    basis: Sequence[Poly], order: MonomialOrder, caps: ResourceCaps = DEFAULT_CAPS
) -> bool:
    """Independent S-pair certificate: every S-polynomial reduces to zero."""
    basis = [b for b in basis if not b.is_zero()]
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            s = spolynomial(basis[i], basis[j], order)
            if not normal_form(s, basis, order, caps).is_zero():
                return False
    return True
