"""Block-structured multivariate polynomials over an exact field.

Variables come in named blocks (t | z | x | y | affine aux blocks), one
block per projective factor of the ambient product.  Monomials are
exponent tuples; polynomials are immutable term dicts tagged with their
ring.  Orders include grevlex, lex, and block elimination orders.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .fields import Field

Monomial = Tuple[int, ...]


class RingError(Exception):
    pass


class AmbientMismatch(RingError):
    pass


@dataclass(frozen=True)
class Block:
    name: str
    size: int
    projective: bool = True


class AmbientSpace:
    """An ordered list of variable blocks; projective blocks model P^(size-1)."""

    def __init__(self, blocks: Sequence[Block]):
        names = [b.name for b in blocks]
        if len(set(names)) != len(names):
            raise RingError("duplicate block names: %r" % names)
        if any(b.size < 1 for b in blocks):
            raise RingError("blocks need at least one variable")
        self.blocks: Tuple[Block, ...] = tuple(blocks)
        self.varnames: Tuple[str, ...] = tuple(
            "%s%d" % (b.name, i) for b in blocks for i in range(b.size)
        )
        self.nvars = len(self.varnames)
        self._index = {n: i for i, n in enumerate(self.varnames)}
        self._ranges: Dict[str, range] = {}
        start = 0
        for b in blocks:
            self._ranges[b.name] = range(start, start + b.size)
            start += b.size

    @classmethod
    def product(cls, *spec: Tuple[str, int], affine: Sequence[str] = ()) -> "AmbientSpace":
        return cls([Block(n, s, projective=n not in affine) for n, s in spec])

    def block(self, name: str) -> Block:
        for b in self.blocks:
            if b.name == name:
                return b
        raise RingError("no block %r" % name)

    def block_range(self, name: str) -> range:
        return self._ranges[name]

    def var_index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise RingError("unknown variable %r" % name)

    def block_of_index(self, i: int) -> Block:
        for b in self.blocks:
            if i in self._ranges[b.name]:
                return b
        raise RingError("index out of range")

    @property
    def projective_blocks(self) -> Tuple[Block, ...]:
        return tuple(b for b in self.blocks if b.projective)

    def without(self, drop: Iterable[str]) -> "AmbientSpace":
        drop = set(drop)
        kept = [b for b in self.blocks if b.name not in drop]
        if not kept:
            raise RingError("cannot drop every block")
        return AmbientSpace(kept)

    def extend(self, block: Block, front: bool = False) -> "AmbientSpace":
        return AmbientSpace((block,) + self.blocks if front else self.blocks + (block,))

    def index_map_to(self, other: "AmbientSpace") -> List[int]:
        """For each of our variables, its index in `other` (shared names required)."""
        return [other.var_index(n) for n in self.varnames]

    def key(self) -> tuple:
        return tuple((b.name, b.size, b.projective) for b in self.blocks)

    def __eq__(self, other):
        return isinstance(other, AmbientSpace) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "Ambient(%s)" % " x ".join(
            "%s:%d%s" % (b.name, b.size, "" if b.projective else "(aff)")
            for b in self.blocks
        )


def family_ambient(n: int) -> AmbientSpace:
    """P^1(t) x Upsilon(z) x P^(n+1)(x) x P^(n+1)(y)."""
    return AmbientSpace.product(("t", 2), ("z", 2), ("x", n + 2), ("y", n + 2))


# ---------------------------------------------------------------------------
# Monomial orders


class MonomialOrder:
    """Total multiplicative well-order on monomials, via a sort key.

    Larger key means larger monomial.
    """

    name = "order"

    def key(self, m: Monomial):
        raise NotImplementedError

    def heapkey(self, m: Monomial):
        """Order-reversing key: ascending heapkey = descending order."""

        def neg(k):
            return tuple(neg(x) for x in k) if isinstance(k, tuple) else -k

        return neg(self.key(m))

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.name == other.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return self.name


class GrevlexOrder(MonomialOrder):
    def __init__(self, nvars: int):
        self.nvars = nvars
        self.name = "grevlex"

    def key(self, m):
        return (sum(m), tuple(-e for e in reversed(m)))

    def heapkey(self, m):
        return (-sum(m), m[::-1])


class LexOrder(MonomialOrder):
    def __init__(self, nvars: int):
        self.nvars = nvars
        self.name = "lex"

    def key(self, m):
        return m

    def heapkey(self, m):
        return tuple(-e for e in m)


class PermutedGrevlexOrder(MonomialOrder):
    """Grevlex after permuting variables; perm[i] = source index of slot i.

    With a chosen variable in the last slot this is the order used by the
    divide-out saturation trick for homogeneous ideals.
    """

    def __init__(self, perm: Sequence[int]):
        self.perm = tuple(perm)
        self.name = "grevlex-perm:%s" % (",".join(map(str, self.perm)))

    @classmethod
    def with_last(cls, nvars: int, last: int) -> "PermutedGrevlexOrder":
        perm = [i for i in range(nvars) if i != last] + [last]
        return cls(perm)

    def key(self, m):
        pm = tuple(m[i] for i in self.perm)
        return (sum(pm), tuple(-e for e in reversed(pm)))

    def heapkey(self, m):
        pm = tuple(m[i] for i in self.perm)
        return (-sum(pm), pm[::-1])


class BlockElimOrder(MonomialOrder):
    """Eliminates a variable subset: any monomial meeting it beats all others."""

    def __init__(self, elim_indices: Sequence[int], nvars: int):
        self.elim = tuple(sorted(elim_indices))
        self.rest = tuple(i for i in range(nvars) if i not in set(self.elim))
        self.name = "elim:%s" % ",".join(map(str, self.elim))

    @classmethod
    def for_blocks(cls, ambient: AmbientSpace, blocks: Iterable[str]) -> "BlockElimOrder":
        idx = [i for b in blocks for i in ambient.block_range(b)]
        return cls(idx, ambient.nvars)

    def key(self, m):
        a = tuple(m[i] for i in self.elim)
        b = tuple(m[i] for i in self.rest)
        return (
            sum(a),
            tuple(-e for e in reversed(a)),
            sum(b),
            tuple(-e for e in reversed(b)),
        )

    def heapkey(self, m):
        a = tuple(m[i] for i in self.elim)
        b = tuple(m[i] for i in self.rest)
        return (-sum(a), a[::-1], -sum(b), b[::-1])


# ---------------------------------------------------------------------------
# Polynomials


class PolyRing:
    """Polynomial ring over `field` on an AmbientSpace."""

    def __init__(self, ambient: AmbientSpace, field: Field):
        self.ambient = ambient
        self.field = field
        self.nvars = ambient.nvars
        self._zero_mono = (0,) * self.nvars
        self.order = GrevlexOrder(self.nvars)  # canonical print/sort order

    def key(self):
        return (self.ambient.key(), self.field.name)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "PolyRing(%r, %s)" % (self.ambient, self.field.name)

    # constructors -------------------------------------------------------

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(self.field.one)

    def const(self, c) -> "Poly":
        if self.field.is_zero(c):
            return self.zero()
        return Poly(self, {self._zero_mono: c})

    def var(self, name: str) -> "Poly":
        return self.var_by_index(self.ambient.var_index(name))

    def var_by_index(self, i: int) -> "Poly":
        m = [0] * self.nvars
        m[i] = 1
        return Poly(self, {tuple(m): self.field.one})

    def from_terms(self, terms: Dict[Monomial, object]) -> "Poly":
        clean = {m: c for m, c in terms.items() if not self.field.is_zero(c)}
        return Poly(self, clean)

    def from_int_terms(self, terms: Dict[Monomial, int]) -> "Poly":
        return self.from_terms({m: self.field.from_int(c) for m, c in terms.items()})

    def gens(self) -> List["Poly"]:
        return [self.var_by_index(i) for i in range(self.nvars)]

    def block_vars(self, block: str) -> List["Poly"]:
        return [self.var_by_index(i) for i in self.ambient.block_range(block)]

    # conversion ---------------------------------------------------------

    def convert(self, p: "Poly") -> "Poly":
        """Map a polynomial from a ring with name-compatible variables."""
        if p.ring is self or p.ring == self:
            if p.ring.field == self.field:
                return Poly(self, dict(p.terms))
        idx = p.ring.ambient.index_map_to(self.ambient)
        same_field = p.ring.field == self.field
        out: Dict[Monomial, object] = {}
        for m, c in p.terms.items():
            nm = [0] * self.nvars
            for i, e in enumerate(m):
                if e:
                    nm[idx[i]] = e
            if not same_field:
                raise AmbientMismatch("cannot convert between different fields")
            out[tuple(nm)] = c
        return Poly(self, out)

    def parse(self, text: str) -> "Poly":
        return parse_poly(self, text)


class Poly:
    """Immutable sparse polynomial: dict monomial -> nonzero coefficient."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Dict[Monomial, object]):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.ring._zero_mono in self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    # arithmetic ---------------------------------------------------------

    def _check(self, other: "Poly"):
        if self.ring != other.ring:
            raise AmbientMismatch("operands live in different rings")

    def __add__(self, other):
        if isinstance(other, int):
            other = self.ring.const(self.ring.field.from_int(other))
        self._check(other)
        F = self.ring.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            if m in out:
                s = F.add(out[m], c)
                if F.is_zero(s):
                    del out[m]
                else:
                    out[m] = s
            else:
                out[m] = c
        return Poly(self.ring, out)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        F = self.ring.field
        return Poly(self.ring, {m: F.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = self.ring.const(self.ring.field.from_int(other))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            other = self.ring.const(self.ring.field.from_int(other))
        self._check(other)
        F = self.ring.field
        out: Dict[Monomial, object] = {}
        small, big = (self.terms, other.terms) if len(self.terms) <= len(other.terms) else (other.terms, self.terms)
        for m1, c1 in small.items():
            for m2, c2 in big.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                c = F.mul(c1, c2)
                if m in out:
                    s = F.add(out[m], c)
                    if F.is_zero(s):
                        del out[m]
                    else:
                        out[m] = s
                else:
                    out[m] = c
        return Poly(self.ring, out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, e: int):
        if e < 0:
            raise RingError("negative exponent")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def scale(self, c) -> "Poly":
        F = self.ring.field
        if F.is_zero(c):
            return self.ring.zero()
        return Poly(self.ring, {m: F.mul(c, v) for m, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.key(), frozenset(self.terms.items())))
        return self._hash

    # structure ----------------------------------------------------------

    def sorted_terms(self, order: Optional[MonomialOrder] = None) -> List[Tuple[Monomial, object]]:
        order = order or self.ring.order
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def lead(self, order: MonomialOrder) -> Tuple[Monomial, object]:
        if not self.terms:
            raise RingError("zero polynomial has no lead term")
        m = min(self.terms, key=order.heapkey)
        return m, self.terms[m]

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def degree_in(self, indices: Sequence[int]) -> int:
        if not self.terms:
            return -1
        return max(sum(m[i] for i in indices) for m in self.terms)

    def block_degree(self, block: str) -> int:
        return self.degree_in(list(self.ring.ambient.block_range(block)))

    def variables(self) -> set:
        out = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    out.add(i)
        return out

    def multidegree(self) -> Optional[Dict[str, int]]:
        """Per-block degree vector if every term agrees, else None."""
        amb = self.ring.ambient
        if not self.terms:
            return {b.name: 0 for b in amb.blocks}
        ranges = [(b.name, list(amb.block_range(b.name))) for b in amb.blocks]
        result = None
        for m in self.terms:
            vec = {name: sum(m[i] for i in idx) for name, idx in ranges}
            if result is None:
                result = vec
            elif result != vec:
                return None
        return result

    def is_multihomogeneous(self) -> bool:
        return self.multidegree() is not None

    def coeff_of_var_power(self, var: int, e: int) -> "Poly":
        """Coefficient of var^e, a polynomial not involving var."""
        out = {}
        for m, c in self.terms.items():
            if m[var] == e:
                nm = list(m)
                nm[var] = 0
                out[tuple(nm)] = c
        return Poly(self.ring, out)

    def monic(self, order: MonomialOrder) -> "Poly":
        if not self.terms:
            return self
        _, c = self.lead(order)
        F = self.ring.field
        return self.scale(F.inv(c))

    def max_coeff_bits(self) -> int:
        F = self.ring.field
        if not self.terms:
            return 0
        return max(F.coeff_bits(c) for c in self.terms.values())

    # substitution -------------------------------------------------------

    def substitute(self, assignment: Dict[str, "Poly"]) -> "Poly":
        """Substitute polynomials for variables named in `assignment`.

        Values must live in this ring (convert beforehand if needed).
        """
        ring = self.ring
        idx_assignment: Dict[int, Poly] = {}
        for name, val in assignment.items():
            if isinstance(val, int):
                val = ring.const(ring.field.from_int(val))
            if val.ring != ring:
                val = ring.convert(val)
            idx_assignment[ring.ambient.var_index(name)] = val
        if not idx_assignment:
            return self
        result = ring.zero()
        pow_cache: Dict[Tuple[int, int], Poly] = {}

        def vpow(i: int, e: int) -> Poly:
            key = (i, e)
            if key not in pow_cache:
                pow_cache[key] = idx_assignment[i] ** e
            return pow_cache[key]

        for m, c in self.terms.items():
            base = [0] * ring.nvars
            factors = []
            for i, e in enumerate(m):
                if not e:
                    continue
                if i in idx_assignment:
                    factors.append(vpow(i, e))
                else:
                    base[i] = e
            term = Poly(ring, {tuple(base): c})
            for f in factors:
                term = term * f
            result = result + term
        return result

    def map_vars(self, renames: Dict[str, str], target: PolyRing) -> "Poly":
        """Move to `target` ring sending variable name -> name."""
        src = self.ring.ambient
        used = {i for m in self.terms for i, e in enumerate(m) if e}
        mapping: List[int] = []
        for i, n in enumerate(src.varnames):
            if i in used:
                mapping.append(target.ambient.var_index(renames.get(n, n)))
            else:
                mapping.append(-1)  # variable absent from this polynomial
        out: Dict[Monomial, object] = {}
        for m, c in self.terms.items():
            nm = [0] * target.nvars
            for i, e in enumerate(m):
                if e:
                    nm[mapping[i]] += e
            key = tuple(nm)
            if key in out:
                c2 = target.field.add(out[key], c)
                if target.field.is_zero(c2):
                    del out[key]
                else:
                    out[key] = c2
            else:
                out[key] = c
        return Poly(target, out)

    # printing -----------------------------------------------------------

    def __repr__(self):
        return poly_str(self)


# ---------------------------------------------------------------------------
# taylor shift in the affine t coordinate


def taylor_shift_coefficient(p: Poly, tvar: str, r: int) -> Poly:
    """Exact coefficient of (t-1)^r when p is expanded around t = 1.

    `tvar` is the affine chart coordinate; p must be polynomial in it.
    """
    if r < 0:
        raise RingError("negative expansion order")
    ring = p.ring
    i = ring.ambient.var_index(tvar)
    # p(t) = sum_e c_e(x) t^e ;  substitute t = 1 + s, expand, read coeff of s^r
    maxdeg = 0
    for m in p.terms:
        maxdeg = max(maxdeg, m[i])
    from math import comb

    F = ring.field
    out: Dict[Monomial, object] = {}
    for m, c in p.terms.items():
        e = m[i]
        if e < r:
            continue
        k = comb(e, r)
        nm = list(m)
        nm[i] = 0
        key = tuple(nm)
        add = F.mul(c, F.from_int(k))
        if key in out:
            s = F.add(out[key], add)
            if F.is_zero(s):
                del out[key]
            else:
                out[key] = s
        else:
            if not F.is_zero(add):
                out[key] = add
    return Poly(ring, out)


def taylor_reconstruct(p: Poly, tvar: str) -> Poly:
    """sum_r (t-1)^r * shift_r(p); identity used as a self-check."""
    ring = p.ring
    t = ring.var(tvar)
    i = ring.ambient.var_index(tvar)
    maxdeg = max((m[i] for m in p.terms), default=0)
    acc = ring.zero()
    tm1 = t - ring.one()
    power = ring.one()
    for r in range(maxdeg + 1):
        acc = acc + power * taylor_shift_coefficient(p, tvar, r)
        power = power * tm1
    return acc


# ---------------------------------------------------------------------------
# text grammar: variables, integer or a/b coefficients, + - * ^, parentheses


_TOKEN = re.compile(r"\s*(?:(\d+/\d+|\d+)|([A-Za-z_][A-Za-z_0-9]*)|([-+*^()]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise RingError("cannot tokenize %r" % text[pos : pos + 20])
        num, name, op = m.groups()
        if num is not None:
            tokens.append(("num", num))
        elif name is not None:
            tokens.append(("var", name))
        else:
            tokens.append(("op", op))
        pos = m.end()
    tokens.append(("end", ""))
    return tokens


class _Parser:
    def __init__(self, ring: PolyRing, tokens):
        self.ring = ring
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse_expr(self) -> Poly:
        # expr := ['+'|'-'] term (('+'|'-') term)*
        sign = 1
        if self.peek() == ("op", "+"):
            self.next()
        elif self.peek() == ("op", "-"):
            self.next()
            sign = -1
        acc = self.parse_term()
        if sign < 0:
            acc = -acc
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.next()[1]
            term = self.parse_term()
            acc = acc + term if op == "+" else acc - term
        return acc

    def parse_term(self) -> Poly:
        acc = self.parse_factor()
        while self.peek() == ("op", "*"):
            self.next()
            acc = acc * self.parse_factor()
        return acc

    def parse_factor(self) -> Poly:
        base = self.parse_atom()
        if self.peek() == ("op", "^"):
            self.next()
            kind, val = self.next()
            if kind != "num" or "/" in val:
                raise RingError("exponent must be a nonnegative integer")
            return base ** int(val)
        return base

    def parse_atom(self) -> Poly:
        kind, val = self.next()
        if kind == "num":
            return self.ring.const(self.ring.field.coeff_parse(val))
        if kind == "var":
            return self.ring.var(val)
        if (kind, val) == ("op", "("):
            inner = self.parse_expr()
            if self.next() != ("op", ")"):
                raise RingError("missing closing parenthesis")
            return inner
        raise RingError("unexpected token %r" % ((kind, val),))


def parse_poly(ring: PolyRing, text: str) -> Poly:
    parser = _Parser(ring, _tokenize(text))
    p = parser.parse_expr()
    if parser.peek()[0] != "end":
        raise RingError("trailing input at token %d" % parser.i)
    return p


def poly_str(p: Poly) -> str:
    """Canonical printing; parse(poly_str(p)) == p bit-exactly."""
    if not p.terms:
        return "0"
    F = p.ring.field
    names = p.ring.ambient.varnames
    parts = []
    for m, c in p.sorted_terms():
        cs = F.coeff_str(c)
        neg = cs.startswith("-")
        if neg:
            cs = cs[1:]
        factors = []
        if cs != "1" or not any(m):
            factors.append(cs)
        for i, e in enumerate(m):
            if e == 1:
                factors.append(names[i])
            elif e > 1:
                factors.append("%s^%d" % (names[i], e))
        body = "*".join(factors)
        if not parts:
            parts.append("-" + body if neg else body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)
