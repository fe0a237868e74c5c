"""Exact coefficient arithmetic over the admitted 2-torsion-free rings.

Two rings are supported: the rationals (backed by ``fractions.Fraction``,
so arbitrary-precision and always canonical) and prime fields F_p with p an
odd prime (residues stored as ints in ``[0, p)``).  Characteristic 2 is
refused at construction unless explicitly overridden; everything downstream
relies on ``2a = 0  =>  a = 0``.

Only fields are admitted even though the underlying theory allows general
2-torsion-free commutative rings: solution-space computations need exact
division.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import CharTwoRejected, DivisionByNonUnit, ParseError, ZeroDenominator

_SCALAR_RE = re.compile(r"^([+-]?\d+)(?:/([+-]?\d+))?$")


@dataclass(frozen=True)
class Rationals:
    """The field Q.  Values are ``Fraction`` instances (auto-reduced)."""

    kind: str = "rationals"

    @property
    def characteristic(self) -> int:
        return 0

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n: int):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def div(self, a, b):
        if b == 0:
            raise DivisionByNonUnit("division by zero in the rationals")
        return a / b

    def is_zero(self, a) -> bool:
        return a == 0

    def parse(self, text: str):
        m = _SCALAR_RE.match(text.strip())
        if not m:
            raise ParseError(f"bad rational literal: {text!r}")
        num = int(m.group(1))
        den = m.group(2)
        if den is None:
            return Fraction(num)
        den = int(den)
        if den == 0:
            raise ZeroDenominator(f"zero denominator in {text!r}")
        return Fraction(num, den)

    def format(self, a) -> str:
        return str(a)

    def __str__(self):
        return "rationals"


@dataclass(frozen=True)
class PrimeField:
    """The field F_p, p an odd prime.  Values are ints in ``[0, p)``.

    ``unsafe_allow_char_two`` exists solely so the CLI can explore what
    breaks without the 2-torsion-free hypothesis; such runs are marked
    nonconforming by the caller.
    """

    p: int
    unsafe_allow_char_two: bool = False

    def __post_init__(self):
        if self.p == 2 and not self.unsafe_allow_char_two:
            raise CharTwoRejected(
                "characteristic 2 rejected: the toolkit's guarantees assume a "
                "2-torsion-free ring (pass the explicit unsafe flag to override)"
            )
        if self.p < 2 or not _is_prime(self.p):
            raise ParseError(f"prime field modulus must be prime, got {self.p}")

    @property
    def kind(self) -> str:
        return f"fp:{self.p}"

    @property
    def characteristic(self) -> int:
        return self.p

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n: int):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def div(self, a, b):
        if b % self.p == 0:
            raise DivisionByNonUnit(f"division by 0 in F_{self.p}")
        return (a * pow(b, -1, self.p)) % self.p

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def parse(self, text: str):
        m = _SCALAR_RE.match(text.strip())
        if not m:
            raise ParseError(f"bad residue literal: {text!r}")
        num = int(m.group(1)) % self.p
        den = m.group(2)
        if den is None:
            return num
        den = int(den)
        if den == 0:
            raise ZeroDenominator(f"zero denominator in {text!r}")
        return self.div(num, den % self.p)

    def format(self, a) -> str:
        return str(a % self.p)

    def __str__(self):
        return self.kind


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def ring_from_text(text: str, allow_char_two: bool = False):
    """Parse a ring spec: ``rationals`` (or ``qq``) or ``fp:<p>``."""
    t = text.strip().lower()
    if t in ("rationals", "qq", "q"):
        return Rationals()
    if t.startswith("fp:"):
        try:
            p = int(t[3:])
        except ValueError:
            raise ParseError(f"bad prime field spec: {text!r}") from None
        return PrimeField(p, unsafe_allow_char_two=allow_char_two)
    raise ParseError(f"unknown ring spec: {text!r}")


def parse_scalar(text: str, ring):
    """Parse ``a`` or ``a/b`` into a canonical scalar of ``ring``."""
    return ring.parse(text)


def format_scalar(value, ring) -> str:
    """Inverse of :func:`parse_scalar`: ``parse(format(v)) == v`` bit-exactly."""
    return ring.format(value)


def arith(a, b, op: str, ring):
    """Exact ring arithmetic; ``op`` is one of add, sub, mul, div."""
    if op == "add":
        return ring.add(a, b)
    if op == "sub":
        return ring.sub(a, b)
    if op == "mul":
        return ring.mul(a, b)
    if op == "div":
        return ring.div(a, b)
    raise ParseError(f"unknown arithmetic op: {op!r}")
