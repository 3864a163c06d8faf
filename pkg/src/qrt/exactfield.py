"""Exact scalar fields: the rationals and prime fields.

Rational scalars are plain :class:`fractions.Fraction` values.  Prime field
scalars are instances of a small per-prime class with overloaded operators,
so the same elimination code runs unchanged over both.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

_SCALAR_RE = re.compile(r"^(-?[0-9]+)(?:/([0-9]+))?$")

MAX_PRIME = 2**31


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
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


class _FpElement:
    """Residue modulo the class attribute ``p``."""

    __slots__ = ("v",)
    p: int = 2

    def __init__(self, v: int = 0):
        self.v = v % self.p

    def _coerce(self, other):
        if type(other) is type(self):
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            if other.denominator % self.p == 0:
                raise FieldError(f"denominator divisible by {self.p}")
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return type(self)(self.v + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return type(self)(self.v - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return type(self)(o - self.v)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return type(self)(self.v * o)

    __rmul__ = __mul__

    def __neg__(self):
        return type(self)(-self.v)

    def __pos__(self):
        return self

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return type(self)(self.v * pow(o, -1, self.p))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.v == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return type(self)(o * pow(self.v, -1, self.p))

    def __pow__(self, e: int):
        if e < 0:
            if self.v == 0:
                raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
            return type(self)(pow(pow(self.v, -1, self.p), -e, self.p))
        return type(self)(pow(self.v, e, self.p))

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return (self.v - o) % self.p == 0

    def __hash__(self):
        return hash((self.p, self.v))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"{self.v} (mod {self.p})"

    def __str__(self):
        return str(self.v)


@lru_cache(maxsize=None)
def _fp_class(p: int) -> type:
    return type(f"GF{p}Element", (_FpElement,), {"__slots__": (), "p": p})


@dataclass(frozen=True)
class FieldSpec:
    """Either the rationals (``kind == "Q"``) or GF(p) (``kind == "Fp"``)."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind == "Q":
            if self.p is not None:
                raise FieldError("the rationals take no modulus")
        elif self.kind == "Fp":
            if self.p is None or not (2 <= self.p < MAX_PRIME) or not is_prime(self.p):
                raise FieldError(f"invalid prime modulus {self.p!r}")
        else:
            raise FieldError(f"unknown field kind {self.kind!r}")

    # construction and basic elements

    @property
    def is_prime_field(self) -> bool:
        return self.kind == "Fp"

    @property
    def size(self) -> int | None:
        """Number of elements, or None when infinite."""
        return self.p if self.kind == "Fp" else None

    def __call__(self, x):
        if self.kind == "Q":
            if isinstance(x, _FpElement):
                raise FieldError("cannot coerce a prime field element into Q")
            return Fraction(x)
        cls = _fp_class(self.p)
        if isinstance(x, cls):
            return x
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise FieldError(f"denominator divisible by {self.p}")
            return cls(x.numerator * pow(x.denominator, -1, self.p))
        if isinstance(x, _FpElement):
            raise FieldError("elements of different prime fields do not mix")
        return cls(int(x))

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def elements(self):
        """All elements of a finite field in the order 0, 1, ..., p-1."""
        if self.kind != "Fp":
            raise FieldError("the rationals are infinite")
        cls = _fp_class(self.p)
        return [cls(v) for v in range(self.p)]

    def to_json(self) -> dict:
        return {"kind": "Q"} if self.kind == "Q" else {"kind": "Fp", "p": self.p}

    @classmethod
    def from_json(cls, obj: dict) -> "FieldSpec":
        if obj.get("kind") == "Q":
            return QQ
        if obj.get("kind") == "Fp":
            return GF(int(obj["p"]))
        raise FieldError(f"bad field description {obj!r}")

    def __str__(self):
        return "Q" if self.kind == "Q" else f"GF({self.p})"


QQ = FieldSpec("Q")


@lru_cache(maxsize=None)
def GF(p: int) -> FieldSpec:
    return FieldSpec("Fp", p)


def parse_scalar(text: str, field: FieldSpec):
    m = _SCALAR_RE.match(text.strip()) if isinstance(text, str) else None
    if m is None:
        raise FieldError(f"malformed scalar {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise FieldError("zero denominator")
    if field.kind == "Fp" and den % field.p == 0:
        raise FieldError(f"denominator divisible by {field.p}")
    return field(Fraction(num, den))


def render_scalar(x) -> str:
    """Canonical text: ``n`` or ``n/d`` with d > 1 for Q, ``0..p-1`` for GF(p)."""
    if isinstance(x, _FpElement):
        return str(x.v)
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def field_inverse(x):
    if x == 0:
        raise ZeroDivisionError("zero has no inverse")
    return 1 / x


def field_of(x) -> FieldSpec:
    if isinstance(x, _FpElement):
        return GF(x.p)
    return QQ
