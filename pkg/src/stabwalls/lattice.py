"""The algebraic Mukai lattice of an abelian surface with NS(X) = ZH.

A vector (r, d, a) means r + dH + a*rho, paired by
<v, w> = 2n*d_v*d_w - (r_v*a_w + r_w*a_v) where n = (H^2)/2.

The d-component is stored as the rational H-coefficient; with Picard rank 1
this is lossless and the component orthogonal to H is identically zero, so
it is not modeled.  Twisted vectors (rational d, a) are first-class values;
`is_integral` gates the operations that need honest lattice points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import NonIntegral

RatLike = Union[int, Fraction]


def _frac(x: RatLike) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class Context:
    """n = (H^2)/2 for the fixed polarization H."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be a positive integer")


@dataclass(frozen=True)
class MukaiVector:
    r: int
    d: Fraction
    a: Fraction

    def __init__(self, r: int, d: RatLike, a: RatLike):
        object.__setattr__(self, "r", int(r))
        object.__setattr__(self, "d", _frac(d))
        object.__setattr__(self, "a", _frac(a))

    @property
    def is_integral(self) -> bool:
        return self.d.denominator == 1 and self.a.denominator == 1

    def is_zero(self) -> bool:
        return self.r == 0 and self.d == 0 and self.a == 0

    def __add__(self, other: "MukaiVector") -> "MukaiVector":
        return MukaiVector(self.r + other.r, self.d + other.d, self.a + other.a)

    def __sub__(self, other: "MukaiVector") -> "MukaiVector":
        return MukaiVector(self.r - other.r, self.d - other.d, self.a - other.a)

    def __neg__(self) -> "MukaiVector":
        return MukaiVector(-self.r, -self.d, -self.a)

    def scale(self, k: int) -> "MukaiVector":
        return MukaiVector(k * self.r, k * self.d, k * self.a)

    def __str__(self):
        return f"{self.r},{self.d},{self.a}"

    __repr__ = __str__

    @staticmethod
    def parse(text: str) -> "MukaiVector":
        parts = text.split(",")
        if len(parts) != 3:
            raise ValueError(f"expected 'r,d,a', got {text!r}")
        r = Fraction(parts[0].strip())
        if r.denominator != 1:
            raise ValueError("rank must be an integer")
        return MukaiVector(int(r), Fraction(parts[1].strip()), Fraction(parts[2].strip()))


RHO = MukaiVector(0, 0, 1)
UNIT = MukaiVector(1, 0, 0)


def pairing(v: MukaiVector, w: MukaiVector, ctx: Context) -> Fraction:
    return 2 * ctx.n * v.d * w.d - (v.r * w.a + w.r * v.a)


def self_pairing(v: MukaiVector, ctx: Context) -> Fraction:
    return pairing(v, v, ctx)


def twist(v: MukaiVector, s: RatLike, ctx: Context) -> MukaiVector:
    """v * e^{sH}: the pairing-preserving twist."""
    s = _frac(s)
    n = ctx.n
    return MukaiVector(v.r, v.d + v.r * s, v.a + 2 * n * v.d * s + n * v.r * s * s)


def beta_data(v: MukaiVector, s: RatLike, ctx: Context) -> tuple[int, Fraction, Fraction]:
    """(r_b, d_b, a_b) of v at beta = sH: r, d - r*s, a - 2n*d*s + n*r*s^2."""
    s = _frac(s)
    n = ctx.n
    return (v.r, v.d - v.r * s, v.a - 2 * n * v.d * s + n * v.r * s * s)


def exp_vector(s: RatLike, ctx: Context) -> MukaiVector:
    """e^{sH} = (1, s, n*s^2)."""
    s = _frac(s)
    return MukaiVector(1, s, ctx.n * s * s)


def is_positive(v: MukaiVector) -> bool:
    """Positivity: r>0, or r=0 and dH effective (d>0), or r=d=0 and a>0."""
    if v.is_zero():
        return False
    if v.r > 0:
        return True
    if v.r == 0 and v.d > 0:
        return True
    return v.r == 0 and v.d == 0 and v.a > 0


def is_isotropic(v: MukaiVector, ctx: Context) -> bool:
    return self_pairing(v, ctx) == 0


def is_primitive(v: MukaiVector) -> bool:
    if not v.is_integral:
        raise NonIntegral(f"primitivity undefined for non-integral {v}")
    g = math.gcd(abs(v.r), math.gcd(abs(v.d.numerator), abs(v.a.numerator)))
    return g == 1


def proportional(v: MukaiVector, w: MukaiVector) -> bool:
    """w in Q*v (as triples), i.e. all 2x2 minors vanish."""
    return (
        v.r * w.d == w.r * v.d
        and v.r * w.a == w.r * v.a
        and v.d * w.a == w.d * v.a
    )


@dataclass(frozen=True)
class Sym2Form:
    """The matrix (x, y*sqrt(n); y*sqrt(n), z), image of (x, yH, z)."""

    x: int
    y: int
    z: int


def to_sym2(v: MukaiVector, ctx: Context) -> Sym2Form:
    if not v.is_integral:
        raise NonIntegral(f"cannot embed non-integral {v}")
    return Sym2Form(v.r, int(v.d), int(v.a))


def from_sym2(f: Sym2Form) -> MukaiVector:
    return MukaiVector(f.x, f.y, f.z)


def sym2_pairing(f1: Sym2Form, f2: Sym2Form, ctx: Context) -> Fraction:
    """B(X1, X2) = 2n*y1*y2 - (x1*z2 + z1*x2)."""
    return Fraction(2 * ctx.n * f1.y * f2.y - (f1.x * f2.z + f1.z * f2.x))
