"""Exact scalar arithmetic over the rationals Q and prime fields F_p.

Scalars are plain Python values: `fractions.Fraction` over the rationals
(always stored reduced with positive denominator) and `int` residues in
[0, p) over a prime field.  A :class:`FieldSpec` bundles the arithmetic,
parsing and rendering for one field; every other module carries a spec
alongside its raw values.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import DivisionByZero, FieldMismatch, ParseError

_MAX_MODULUS = 2**31
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_RATIONAL_RE = re.compile(r"^-?\d+(/\d+)?$")
_ARITH_OPS = ("add", "sub", "mul", "div")


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact for every modulus we accept (< 2^31)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
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


class FieldSpec:
    """Arithmetic contract shared by :class:`Rationals` and :class:`PrimeField`."""

    __slots__ = ()

    def characteristic(self) -> int:
        raise NotImplementedError

    def arith(self, a, b, op: str):
        """Binary field operation; `op` is one of add/sub/mul/div."""
        if op not in _ARITH_OPS:
            raise ValueError(f"unknown operation {op!r}")
        self.check(a)
        self.check(b)
        return getattr(self, op)(a, b)

    def check(self, x) -> None:
        """Raise FieldMismatch unless `x` is a canonical scalar of this field."""
        raise NotImplementedError

    def name(self) -> str:
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"FieldSpec({self.name()})"


class Rationals(FieldSpec):
    """The field Q, scalars are reduced `Fraction` values."""

    __slots__ = ()

    zero = Fraction(0)
    one = Fraction(1)

    def characteristic(self) -> int:
        return 0

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def div(self, a, b):
        if not b:
            raise DivisionByZero("division by zero in Q")
        return a / b

    def neg(self, a):
        return -a

    def inv(self, a):
        if not a:
            raise DivisionByZero("inverse of zero in Q")
        return 1 / a

    def coerce(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return self.parse_scalar(x)
        raise FieldMismatch(f"cannot coerce {x!r} into Q")

    def check(self, x) -> None:
        if not isinstance(x, Fraction):
            raise FieldMismatch(f"{x!r} is not a rational scalar")

    def parse_scalar(self, text: str) -> Fraction:
        text = text.strip()
        if not _RATIONAL_RE.match(text):
            raise ParseError(f"malformed rational scalar {text!r}")
        return Fraction(text)

    def render_scalar(self, x) -> str:
        return str(x)

    def name(self) -> str:
        return "Q"

    def __eq__(self, other) -> bool:
        return isinstance(other, Rationals)

    def __hash__(self) -> int:
        return hash(("field", 0))


class PrimeField(FieldSpec):
    """The field F_p for a prime modulus, scalars are residues in [0, p)."""

    __slots__ = ("modulus", "zero", "one")

    def __init__(self, modulus: int):
        if not isinstance(modulus, int) or not 2 <= modulus < _MAX_MODULUS:
            raise ParseError(f"prime-field modulus out of range: {modulus!r}")
        if not is_prime(modulus):
            raise ParseError(f"prime-field modulus is not prime: {modulus}")
        self.modulus = modulus
        self.zero = 0
        self.one = 1 % modulus

    def characteristic(self) -> int:
        return self.modulus

    def add(self, a, b):
        return (a + b) % self.modulus

    def sub(self, a, b):
        return (a - b) % self.modulus

    def mul(self, a, b):
        return (a * b) % self.modulus

    def div(self, a, b):
        if b % self.modulus == 0:
            raise DivisionByZero(f"division by zero in F_{self.modulus}")
        return a * pow(b, -1, self.modulus) % self.modulus

    def neg(self, a):
        return -a % self.modulus

    def inv(self, a):
        if a % self.modulus == 0:
            raise DivisionByZero(f"inverse of zero in F_{self.modulus}")
        return pow(a, -1, self.modulus)

    def coerce(self, x) -> int:
        if isinstance(x, int):
            return x % self.modulus
        if isinstance(x, str):
            return self.parse_scalar(x)
        if isinstance(x, Fraction) and x.denominator == 1:
            return x.numerator % self.modulus
        raise FieldMismatch(f"cannot coerce {x!r} into F_{self.modulus}")

    def check(self, x) -> None:
        if not isinstance(x, int) or not 0 <= x < self.modulus:
            raise FieldMismatch(f"{x!r} is not a canonical F_{self.modulus} residue")

    def parse_scalar(self, text: str) -> int:
        try:
            value = int(text.strip(), 10)
        except ValueError as exc:
            raise ParseError(f"malformed F_{self.modulus} scalar {text!r}") from exc
        return value % self.modulus

    def render_scalar(self, x) -> str:
        return str(x)

    def name(self) -> str:
        if self.modulus in (2, 3):
            return f"F{self.modulus}"
        return f"Fp:{self.modulus}"

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.modulus == self.modulus

    def __hash__(self) -> int:
        return hash(("field", self.modulus))


QQ = Rationals()
GF2 = PrimeField(2)
GF3 = PrimeField(3)


def parse_field(text: str) -> FieldSpec:
    """Parse a field name: "Q", "F<p>", or "Fp:<p>"."""
    text = text.strip()
    if text == "Q":
        return QQ
    if text.startswith("Fp:"):
        body = text[3:]
    elif text.startswith("F"):
        body = text[1:]
    else:
        raise ParseError(f"unknown field {text!r}")
    try:
        p = int(body, 10)
    except ValueError as exc:
        raise ParseError(f"unknown field {text!r}") from exc
    return PrimeField(p)
