"""Exact coefficient fields: arbitrary-precision rationals and prime fields.

All arithmetic is exact.  Elements are plain Python values (``Fraction``
for the rationals, ``int`` residues for prime fields) and the field
objects carry the operations, so polynomials stay lightweight.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction


class FieldError(Exception):
    pass


class MixedFieldError(FieldError):
    pass


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for n < 3.3e24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Field:
    """Common interface; concrete fields below."""

    name: str

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def div(self, a, b):
        if self.is_zero(b):
            raise ZeroDivisionError("division by zero in %s" % self.name)
        return self.mul(a, self.inv(b))

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def is_zero(self, a) -> bool:
        raise NotImplementedError

    def from_int(self, n: int):
        raise NotImplementedError

    def from_fraction(self, fr: Fraction):
        return self.div(self.from_int(fr.numerator), self.from_int(fr.denominator))

    @property
    def zero(self):
        return self.from_int(0)

    @property
    def one(self):
        return self.from_int(1)

    def sample(self, rng: random.Random):
        raise NotImplementedError

    def sample_nonzero(self, rng: random.Random):
        while True:
            a = self.sample(rng)
            if not self.is_zero(a):
                return a

    def coeff_str(self, a) -> str:
        return str(a)

    def coeff_parse(self, s: str):
        if "/" in s:
            num, den = s.split("/")
            return self.from_fraction(Fraction(int(num), int(den)))
        return self.from_int(int(s))

    def coeff_bits(self, a) -> int:
        return 1

    def __eq__(self, other):
        return isinstance(other, Field) and self.name == other.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return self.name


class RationalField(Field):
    """Q with Fraction elements (auto-canonical: gcd-reduced, positive denominator)."""

    name = "Q"

    # height bound for sampled rationals, |num|,|den| <= 2**16
    SAMPLE_HEIGHT = 1 << 16

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in Q")
        return 1 / Fraction(a)

    def is_zero(self, a):
        return a == 0

    def from_int(self, n):
        return Fraction(n)

    def from_fraction(self, fr):
        return Fraction(fr)

    def sample(self, rng):
        num = rng.randint(-self.SAMPLE_HEIGHT, self.SAMPLE_HEIGHT)
        den = rng.randint(1, self.SAMPLE_HEIGHT)
        return Fraction(num, den)

    def coeff_str(self, a):
        if a.denominator == 1:
            return str(a.numerator)
        return "%d/%d" % (a.numerator, a.denominator)

    def coeff_bits(self, a):
        return a.numerator.bit_length() + a.denominator.bit_length()


class PrimeField(Field):
    """F_p with int residues in [0, p)."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise FieldError("modulus %d is not prime" % p)
        self.p = p
        self.name = "Fp:%d" % p

    def add(self, a, b):
        c = a + b
        return c - self.p if c >= self.p else c

    def sub(self, a, b):
        c = a - b
        return c + self.p if c < 0 else c

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return self.p - a if a else 0

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in %s" % self.name)
        return pow(a, self.p - 2, self.p)

    def is_zero(self, a):
        return a == 0

    def from_int(self, n):
        return n % self.p

    def sample(self, rng):
        return rng.randrange(self.p)

    def coeff_parse(self, s):
        if "/" in s:
            num, den = s.split("/")
            return self.div(self.from_int(int(num)), self.from_int(int(den)))
        return self.from_int(int(s))


class QuadraticExtension(Field):
    """F_{p^2} = F_p[s]/(s^2 - nonresidue); elements are (a, b) = a + b*s.

    Only what zero-dimensional point finding needs.
    """

    def __init__(self, base: PrimeField):
        self.base = base
        self.p = base.p
        self.nonresidue = self._find_nonresidue()
        self.name = "Fp2:%d" % base.p

    def _find_nonresidue(self) -> int:
        p = self.p
        if p == 2:
            raise FieldError("F_4 not supported")
        for c in range(2, p):
            if pow(c, (p - 1) // 2, p) == p - 1:
                return c
        raise FieldError("no quadratic nonresidue found")

    def embed(self, a: int):
        return (a, 0)

    def sqrt_of(self, a: int):
        """A square root of base element a, always exists in F_{p^2}."""
        p = self.p
        if a == 0:
            return (0, 0)
        if pow(a, (p - 1) // 2, p) == 1:
            return (self._base_sqrt(a), 0)
        # a = nonresidue * square
        b = a * pow(self.nonresidue, p - 2, p) % p
        return (0, self._base_sqrt(b))

    def _base_sqrt(self, a: int) -> int:
        # Tonelli-Shanks
        p = self.p
        if p % 4 == 3:
            return pow(a, (p + 1) // 4, p)
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = self.nonresidue
        m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
        return r

    def add(self, a, b):
        return ((a[0] + b[0]) % self.p, (a[1] + b[1]) % self.p)

    def sub(self, a, b):
        return ((a[0] - b[0]) % self.p, (a[1] - b[1]) % self.p)

    def mul(self, a, b):
        p, ns = self.p, self.nonresidue
        return (
            (a[0] * b[0] + ns * a[1] * b[1]) % p,
            (a[0] * b[1] + a[1] * b[0]) % p,
        )

    def neg(self, a):
        return ((-a[0]) % self.p, (-a[1]) % self.p)

    def inv(self, a):
        p, ns = self.p, self.nonresidue
        n = (a[0] * a[0] - ns * a[1] * a[1]) % p
        if n == 0:
            if a == (0, 0):
                raise ZeroDivisionError("inverse of zero in %s" % self.name)
            raise FieldError("norm zero for nonzero element (bad nonresidue?)")
        ninv = pow(n, p - 2, p)
        return (a[0] * ninv % p, (-a[1]) * ninv % p)

    def is_zero(self, a):
        return a == (0, 0)

    def from_int(self, n):
        return (n % self.p, 0)

    def sample(self, rng):
        return (rng.randrange(self.p), rng.randrange(self.p))

    def coeff_str(self, a):
        return "%d+%d*s" % a


DEFAULT_PRIME = 31991
SECOND_PRIME = 32003

QQ = RationalField()


@dataclass(frozen=True)
class FieldConfig:
    """Scenario-level field selection plus the RNG seed for sampling."""

    kind: str = "prime-field"  # "rationals" | "prime-field"
    p: int = DEFAULT_PRIME
    seed: int = 0

    def __post_init__(self):
        if self.kind not in ("rationals", "prime-field"):
            raise FieldError("unknown field kind %r" % self.kind)
        if self.kind == "prime-field" and not is_prime(self.p):
            raise FieldError("modulus %d is not prime" % self.p)

    @classmethod
    def parse(cls, spec: str, seed: int = 0) -> "FieldConfig":
        """Parse 'Q' or 'Fp:31991'."""
        if spec == "Q":
            return cls(kind="rationals", seed=seed)
        if spec.startswith("Fp:"):
            return cls(kind="prime-field", p=int(spec[3:]), seed=seed)
        raise FieldError("unknown field spec %r" % spec)

    def field(self) -> Field:
        if self.kind == "rationals":
            return QQ
        return PrimeField(self.p)

    def rng(self, *tag) -> random.Random:
        """Deterministic per-purpose stream, decoupled from other draws."""
        # hash() on strings is salted per process; derive a stable seed
        import hashlib

        digest = hashlib.sha256(repr((self.seed,) + tag).encode()).digest()
        return random.Random(int.from_bytes(digest[:8], "big"))

    @property
    def spec(self) -> str:
        return "Q" if self.kind == "rationals" else "Fp:%d" % self.p


def field_arith(field: Field, a, b, op: str):
    """Dispatch a binary field operation by name."""
    if op == "add":
        return field.add(a, b)
    if op == "sub":
        return field.sub(a, b)
    if op == "mul":
        return field.mul(a, b)
    if op == "div":
        return field.div(a, b)
    raise ValueError("unknown op %r" % op)


def sample_scalar(cfg: FieldConfig, stream: random.Random = None):
    """One deterministic draw from the configured field."""
    rng = stream if stream is not None else cfg.rng("sample")
    return cfg.field().sample(rng)
