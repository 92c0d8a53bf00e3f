"""Exact scalar arithmetic: pure surds q*sqrt(m), the field Q(sqrt(n)),
and complex numbers over it.

All comparisons are exact (sign analysis and squaring); no floats enter
any predicate.  Floats are available only through the to_float helpers
for display.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import MixedRadicand

RatLike = Union[int, Fraction]


def squarefree_decompose(m: int) -> tuple[int, int]:
    """m = k^2 * d with d squarefree; returns (k, d). m must be positive."""
    if m <= 0:
        raise ValueError("radicand must be positive")
    k, d = 1, 1
    rest = m
    p = 2
    while p * p <= rest:
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            k *= p ** (e // 2)
            if e % 2:
                d *= p
        p += 1 if p == 2 else 2
    d *= rest
    return k, d


def is_perfect_square(m: int) -> bool:
    return m >= 0 and math.isqrt(m) ** 2 == m


def _frac(x: RatLike) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class Surd:
    """The real number coef * sqrt(rad), rad a positive squarefree integer.

    Canonical form: rad squarefree, and coef == 0 implies rad == 1.
    """

    coef: Fraction
    rad: int = 1

    def __init__(self, coef: RatLike, rad: int = 1):
        coef = _frac(coef)
        k, d = squarefree_decompose(rad)
        coef *= k
        if coef == 0:
            d = 1
        object.__setattr__(self, "coef", coef)
        object.__setattr__(self, "rad", d)

    def is_zero(self) -> bool:
        return self.coef == 0

    def is_rational(self) -> bool:
        return self.rad == 1

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self.coef

    def square(self) -> Fraction:
        return self.coef * self.coef * self.rad

    def __mul__(self, other):
        if isinstance(other, Surd):
            return Surd(self.coef * other.coef, self.rad * other.rad)
        return Surd(self.coef * _frac(other), self.rad)

    __rmul__ = __mul__

    def __add__(self, other: "Surd") -> "Surd":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.rad != other.rad:
            raise MixedRadicand(f"cannot add {self} and {other}")
        return Surd(self.coef + other.coef, self.rad)

    def __neg__(self) -> "Surd":
        return Surd(-self.coef, self.rad)

    def __sub__(self, other: "Surd") -> "Surd":
        return self + (-other)

    def sign(self) -> int:
        return (self.coef > 0) - (self.coef < 0)

    def compare(self, other: "Surd") -> int:
        """Exact three-way comparison of real values."""
        ss, so = self.sign(), other.sign()
        if ss != so:
            return (ss > so) - (ss < so)
        if ss == 0:
            return 0
        # same nonzero sign: compare squares, orientation flips if negative
        a, b = self.square(), other.square()
        return ss * ((a > b) - (a < b))

    def __lt__(self, other):
        return self.compare(_surd(other)) < 0

    def __le__(self, other):
        return self.compare(_surd(other)) <= 0

    def __gt__(self, other):
        return self.compare(_surd(other)) > 0

    def __ge__(self, other):
        return self.compare(_surd(other)) >= 0

    def to_float(self) -> float:
        return float(self.coef) * math.sqrt(self.rad)

    def __str__(self):
        if self.rad == 1:
            return str(self.coef)
        if self.coef == 1:
            return f"sqrt({self.rad})"
        if self.coef == -1:
            return f"-sqrt({self.rad})"
        return f"{self.coef}*sqrt({self.rad})"

    __repr__ = __str__


def _surd(x) -> Surd:
    if isinstance(x, Surd):
        return x
    return Surd(_frac(x))


def sqrt_of_fraction(x: Fraction) -> Surd:
    """Exact sqrt(x) for x >= 0 as a surd: sqrt(p/q) = sqrt(p*q)/q."""
    if x < 0:
        raise ValueError("negative radicand")
    if x == 0:
        return Surd(0)
    return Surd(Fraction(1, x.denominator), x.numerator * x.denominator)


@dataclass(frozen=True)
class QnNumber:
    """u + v*sqrt(n), the scalar field for Moebius arithmetic.

    If n is a perfect square the field degenerates to Q: the constructor
    folds v*sqrt(n) into u rather than erroring.
    """

    u: Fraction
    v: Fraction
    n: int

    def __init__(self, u: RatLike, v: RatLike, n: int):
        if n < 1:
            raise ValueError("n must be a positive integer")
        u, v = _frac(u), _frac(v)
        root = math.isqrt(n)
        if root * root == n:
            u, v = u + v * root, Fraction(0)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "n", n)

    def _check(self, other: "QnNumber"):
        if self.n != other.n:
            raise ValueError("mixed Q(sqrt n) fields")

    def __add__(self, other: "QnNumber") -> "QnNumber":
        self._check(other)
        return QnNumber(self.u + other.u, self.v + other.v, self.n)

    def __sub__(self, other: "QnNumber") -> "QnNumber":
        self._check(other)
        return QnNumber(self.u - other.u, self.v - other.v, self.n)

    def __neg__(self) -> "QnNumber":
        return QnNumber(-self.u, -self.v, self.n)

    def __mul__(self, other) -> "QnNumber":
        if not isinstance(other, QnNumber):
            f = _frac(other)
            return QnNumber(self.u * f, self.v * f, self.n)
        self._check(other)
        return QnNumber(
            self.u * other.u + self.n * self.v * other.v,
            self.u * other.v + self.v * other.u,
            self.n,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QnNumber":
        norm = self.u * self.u - self.n * self.v * self.v
        if norm == 0:
            raise ZeroDivisionError("inverse of zero in Q(sqrt n)")
        return QnNumber(self.u / norm, -self.v / norm, self.n)

    def __truediv__(self, other: "QnNumber") -> "QnNumber":
        return self * other.inverse()

    def is_zero(self) -> bool:
        return self.u == 0 and self.v == 0

    def sign(self) -> int:
        """Exact sign of the real value u + v*sqrt(n)."""
        if self.v == 0:
            return (self.u > 0) - (self.u < 0)
        if self.u == 0:
            return (self.v > 0) - (self.v < 0)
        su = 1 if self.u > 0 else -1
        sv = 1 if self.v > 0 else -1
        if su == sv:
            return su
        # opposite signs: |u| vs |v|sqrt(n)
        lhs, rhs = self.u * self.u, self.n * self.v * self.v
        if lhs == rhs:
            return 0
        return su if lhs > rhs else sv

    def to_float(self) -> float:
        return float(self.u) + float(self.v) * math.sqrt(self.n)

    def __str__(self):
        if self.v == 0:
            return str(self.u)
        return f"{self.u}+{self.v}*sqrt({self.n})"

    __repr__ = __str__


def qn(u: RatLike, v: RatLike, n: int) -> QnNumber:
    return QnNumber(u, v, n)


def qn_rat(u: RatLike, n: int) -> QnNumber:
    return QnNumber(u, 0, n)


def qn_sqrt_n(n: int) -> QnNumber:
    return QnNumber(0, 1, n)


@dataclass(frozen=True)
class QnComplex:
    """re + im*i with re, im in Q(sqrt n)."""

    re: QnNumber
    im: QnNumber

    def __post_init__(self):
        if self.re.n != self.im.n:
            raise ValueError("mixed fields in QnComplex")

    @property
    def n(self) -> int:
        return self.re.n

    def __add__(self, other: "QnComplex") -> "QnComplex":
        return QnComplex(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "QnComplex") -> "QnComplex":
        return QnComplex(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "QnComplex":
        return QnComplex(-self.re, -self.im)

    def __mul__(self, other) -> "QnComplex":
        if not isinstance(other, QnComplex):
            return QnComplex(self.re * other, self.im * other)
        return QnComplex(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def conj(self) -> "QnComplex":
        return QnComplex(self.re, -self.im)

    def norm(self) -> QnNumber:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "QnComplex":
        nrm = self.norm()
        if nrm.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(sqrt n)(i)")
        inv = nrm.inverse()
        return QnComplex(self.re * inv, -(self.im * inv))

    def __truediv__(self, other: "QnComplex") -> "QnComplex":
        return self * other.inverse()

    def is_zero(self) -> bool:
        return self.re.is_zero() and self.im.is_zero()

    def to_complex(self) -> complex:
        return complex(self.re.to_float(), self.im.to_float())

    def __str__(self):
        return f"({self.re})+({self.im})*i"

    __repr__ = __str__


def qnc(re: QnNumber, im: QnNumber) -> QnComplex:
    return QnComplex(re, im)


def qnc_rat(u: RatLike, v: RatLike, n: int) -> QnComplex:
    """Complex number with rational real part u and rational imag part v."""
    return QnComplex(qn_rat(u, n), qn_rat(v, n))
