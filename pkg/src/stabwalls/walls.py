"""Wall construction, complete enumeration on a rational cross-section,
codimension-0 detection, fundamental wall sets and chamber classification.

All geometry is exact: a wall is a circle (rational center, rational
radius^2) or a vertical line in the (s, t) half-plane, and every predicate
is decided in Q.

Completeness of `enumerate_walls_on_line` (why the search space is finite):
write D(w), A(w) for the twisted d- and a-components of w at base s0*H and
normalize D = D(v) > 0.  A witness v1 of a wall crossing {s0} x R_{>0}
satisfies m1 = <v1^2>/2 >= 0, m2 = <(v-v1)^2>/2 >= 0, k = <v1, v-v1> >= 1
with m1 + m2 + k = <v^2>/2.  At the crossing point the three charges are
collinear and Z(v) != 0, so v1 = c*v + xi*kappa inside the plane
{Z = 0 at the point} + R*v, where kappa = (1, 0, n*t^2) spans the (negative)
kernel of Z there and c = D(v1)/D.  k >= 1 forces v1 and v - v1 into the
positive cone component of v (vectors of nonnegative square in opposite
components pair nonpositively), and the kernel line R*kappa is negative, so
c and 1 - c are both positive: D(v1) runs over (0, D) on the 1/den(s0) grid.
Given (D1, m1), P := n*D1^2 - m1 equals r1*A1, and the two-sided bracket
0 <= m2 <= <v^2>/2 - 1 - m1 pins the remaining unknown:
  * A != 0: |A*r1| <= max|bracket of A*r1 + r*P/r1| + |r*P|, since |r1| >= 1;
  * A == 0, r != 0: the bracket bounds r*A1 directly, and A1 lies on the
    1/den(s0)^2 grid (r1 = P/A1, or the linear branches when P = 0);
  * A == 0, r == 0: a crossing needs P > 0 and r1 divides P*den(s0)^2.
A(v) = 0 at a rational s0 happens exactly on the Cor.-square abscissae of
the finite-wall (square) case, which must be enumerable, so only D(v) = 0
raises BadCrossSection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

from .errors import (
    BadCrossSection,
    DegenerateV,
    NonIntegral,
    NoWalls,
    RankZero,
    SquareCase,
)
from .lattice import (
    Context,
    MukaiVector,
    RHO,
    UNIT,
    beta_data,
    pairing,
    proportional,
    self_pairing,
)
from .charge import StabilityPoint
from .pell import PellContext, iterate, slope_endpoints, u_vectors
from .surd import QnNumber, is_perfect_square, sqrt_of_fraction

RatLike = Union[int, Fraction]


@dataclass(frozen=True)
class Circle:
    center: Fraction
    radius_sq: Fraction

    def t_sq_at(self, s: Fraction) -> Fraction:
        return self.radius_sq - (s - self.center) ** 2

    def endpoints(self) -> tuple[QnNumber, QnNumber]:
        """Exact real-axis abscissae center -+ sqrt(radius_sq)."""
        rad = sqrt_of_fraction(self.radius_sq)
        lo = QnNumber(self.center, -rad.coef, rad.rad)
        hi = QnNumber(self.center, rad.coef, rad.rad)
        return lo, hi


@dataclass(frozen=True)
class VLine:
    s0: Fraction


Shape = Union[Circle, VLine]


@dataclass(frozen=True)
class Wall:
    shape: Shape
    witness: MukaiVector
    codim0: bool = False
    label: Optional[int] = None


def _shape_sort_key(shape: Shape):
    if isinstance(shape, VLine):
        return (0, shape.s0, Fraction(0))
    return (1, shape.center, shape.radius_sq)


def sort_walls(walls: Iterable[Wall]) -> list[Wall]:
    return sorted(walls, key=lambda w: _shape_sort_key(w.shape))


def _witness_key(v: MukaiVector):
    return (abs(v.r), abs(v.d), abs(v.a), v.r, v.d, v.a)


def wall_between(v: MukaiVector, v1: MukaiVector, ctx: Context) -> Optional[Wall]:
    """The wall for v defined by v1, or None when v1 defines none.

    v1 qualifies when <v1^2> >= 0, <(v-v1)^2> >= 0, <v1, v-v1> > 0 and the
    triples (r, d, a) of v1 and v are not proportional; the locus is then a
    circle, a vertical line, or empty (radius^2 <= 0 returns None silently).
    """
    vv = self_pairing(v, ctx)
    if vv <= 0:
        raise DegenerateV(f"<v^2> = {vv} <= 0")
    rest = v - v1
    if self_pairing(v1, ctx) < 0 or self_pairing(rest, ctx) < 0:
        return None
    if pairing(v1, rest, ctx) <= 0:
        return None
    if proportional(v, v1):
        return None
    n = ctx.n
    if v.r != 0:
        denom = v.r * v1.d - v1.r * v.d
        if denom != 0:
            center = (v1.a * v.r - v.a * v1.r) / (2 * n * denom)
            radius_sq = (v.d / v.r - center) ** 2 - vv / (2 * n * v.r**2)
            if radius_sq <= 0:
                return None
            return Wall(Circle(center, radius_sq), v1)
        return Wall(VLine(Fraction(v.d, v.r)), v1)
    # rank 0: every wall is a circle around a/(2n*d)
    if v1.r == 0:
        return None
    if v.d == 0:
        return None  # <v^2> > 0 already forces d != 0; defensive
    center = v.a / (2 * n * v.d)
    radius_sq = (center - Fraction(v1.d) / v1.r) ** 2 - self_pairing(v1, ctx) / (
        2 * n * v1.r**2
    )
    if radius_sq <= 0:
        return None
    return Wall(Circle(center, radius_sq), v1)


@dataclass(frozen=True)
class PencilData:
    p: Fraction
    q: Fraction


def pencil(v: MukaiVector, ctx: Context) -> PencilData:
    """Common data of the circle pencil for v: every circle wall satisfies
    radius^2 = (center - p)^2 - q, i.e. all pass through (p, +-i*sqrt(q))."""
    if v.r == 0:
        raise RankZero("pencil needs rk v != 0")
    vv = self_pairing(v, ctx)
    if vv <= 0:
        raise DegenerateV(f"<v^2> = {vv} <= 0")
    return PencilData(Fraction(v.d) / v.r, vv / (2 * ctx.n * v.r**2))


def _crossing_t_sq(wall: Wall, s0: Fraction) -> Optional[Fraction]:
    if isinstance(wall.shape, VLine):
        return None
    t_sq = wall.shape.t_sq_at(s0)
    return t_sq if t_sq > 0 else None


def _grid_range(lo: Fraction, hi: Fraction, den: int) -> Iterable[Fraction]:
    """All multiples of 1/den in [lo, hi]."""
    start = math.ceil(lo * den)
    stop = math.floor(hi * den)
    for k in range(start, stop + 1):
        yield Fraction(k, den)


def _mirror_vector(v: MukaiVector) -> MukaiVector:
    return MukaiVector(v.r, -v.d, v.a)


def _mirror_wall(w: Wall) -> Wall:
    if isinstance(w.shape, VLine):
        shape: Shape = VLine(-w.shape.s0)
    else:
        shape = Circle(-w.shape.center, w.shape.radius_sq)
    return Wall(shape, _mirror_vector(w.witness), w.codim0, w.label)


def enumerate_walls_on_line(v: MukaiVector, s0: RatLike, ctx: Context) -> list[Wall]:
    """The complete set of walls for v meeting the open ray {s0} x R_{>0}.

    Complete by the bound derivation in the module docstring; each candidate
    is validated through wall_between and the exact crossing test, so extra
    candidates are harmless.
    """
    if not v.is_integral:
        raise NonIntegral(f"{v} is not integral")
    s0 = Fraction(s0)
    vv = self_pairing(v, ctx)
    if vv <= 0:
        raise DegenerateV(f"<v^2> = {vv} <= 0")
    n = ctx.n
    r, D, A = beta_data(v, s0, ctx)
    if D == 0:
        raise BadCrossSection(f"d_beta(v) = 0 at s = {s0}")
    if D < 0:
        mirrored = enumerate_walls_on_line(_mirror_vector(v), -s0, ctx)
        return sort_walls(_mirror_wall(w) for w in mirrored)

    half = vv / 2
    assert half.denominator == 1
    half = int(half)
    q = s0.denominator
    found: dict[Shape, Wall] = {}

    def consider(r1: int, a1_twisted: Fraction, d1_twisted: Fraction):
        d1 = d1_twisted + r1 * s0
        if d1.denominator != 1:
            return
        a1 = a1_twisted + 2 * n * d1 * s0 - n * r1 * s0 * s0
        if a1.denominator != 1:
            return
        v1 = MukaiVector(r1, d1, a1)
        w = wall_between(v, v1, ctx)
        if w is None:
            return
        if _crossing_t_sq(w, s0) is None:
            return
        prev = found.get(w.shape)
        if prev is None or _witness_key(v1) < _witness_key(prev.witness):
            found[w.shape] = w

    for j in range(0, int(D * q) + 1):
        d1t = Fraction(j, q)
        d2t = D - d1t
        for m1 in range(0, half):
            budget = half - 1 - m1  # upper bound for m2
            p_val = n * d1t * d1t - m1
            u2 = n * d2t * d2t
            l2 = u2 - budget
            if A != 0:
                if p_val != 0:
                    cap = max(abs(r * A + p_val - u2), abs(r * A + p_val - l2))
                    r1_bound = int((cap + abs(r * p_val)) / abs(A)) + 1
                    for r1 in range(-r1_bound, r1_bound + 1):
                        if r1 == 0:
                            continue
                        consider(r1, p_val / r1, d1t)
                else:
                    # r1 = 0 branch: m2 brackets r*A1
                    if r != 0:
                        lo, hi = (l2 - 0) / r, u2 / r  # r*(A - A1) in [l2, u2]
                        lo, hi = A - max(lo, hi), A - min(lo, hi)
                        for a1t in _grid_range(lo, hi, q * q):
                            consider(0, a1t, d1t)
                    # A1 = 0 branch: (r - r1)*A in [l2, u2]
                    lo, hi = l2 / A, u2 / A
                    lo, hi = min(lo, hi), max(lo, hi)
                    for diff in _grid_range(lo, hi, 1):
                        if diff.denominator == 1:
                            consider(r - int(diff), Fraction(0), d1t)
            else:
                if r != 0:
                    # bracket r*A1 in [p - u2, p - u2 + budget]
                    lo, hi = (p_val - u2) / r, (p_val - u2 + budget) / r
                    lo, hi = min(lo, hi), max(lo, hi)
                    for a1t in _grid_range(lo, hi, q * q):
                        if p_val == 0:
                            consider(0, a1t, d1t)
                        elif a1t != 0:
                            r1 = p_val / a1t
                            if r1.denominator == 1:
                                consider(int(r1), a1t, d1t)
                else:
                    # r == 0 and A == 0: crossing needs P > 0, r1 | P*q^2
                    if p_val > 0:
                        scaled = p_val * q * q
                        assert scaled.denominator == 1
                        for r1 in _divisors(int(scaled)):
                            for sgn in (1, -1):
                                consider(sgn * r1, p_val / (sgn * r1), d1t)
    return sort_walls(found.values())


def _divisors(k: int) -> list[int]:
    out = []
    for i in range(1, math.isqrt(k) + 1):
        if k % i == 0:
            out.append(i)
            if i != k // i:
                out.append(k // i)
    return out


# ---------------------------------------------------------------------------
# codimension-0 family and fundamental domain


def _codim0_witness(pell: PellContext, m: int) -> MukaiVector:
    """Witness of the m-th codimension-0 wall, signed so the wall conditions
    <v1, v-v1> > 0 hold for v = (1, 0, -l)."""
    ctx = pell.lattice
    v = MukaiVector(1, 0, -pell.ell)
    u, _ = u_vectors(pell, m)
    if pairing(u, v, ctx) > 0:
        return u
    return -u


def codim0_walls(pell: PellContext, m_range: range) -> list[Wall]:
    """The labeled codimension-0 walls C_m: the t-axis for m = 0, otherwise
    the circle through the two rational slope abscissae of the m-th
    isotropic pair."""
    if is_perfect_square(pell.ell * pell.n):
        raise SquareCase("codim-0 family needs sqrt(l*n) irrational")
    out = []
    for m in m_range:
        if m == 0:
            out.append(Wall(VLine(Fraction(0)), UNIT, codim0=True, label=0))
            continue
        lam1, lam2 = slope_endpoints(pell, m)
        center = (lam1 + lam2) / 2
        radius_sq = ((lam1 - lam2) / 2) ** 2
        out.append(
            Wall(Circle(center, radius_sq), _codim0_witness(pell, m), codim0=True, label=m)
        )
    return out


def fundamental_walls(pell: PellContext) -> list[Wall]:
    """All walls for (1, 0, -l) between C_0 (the t-axis) and C_-1, plus C_0
    and C_-1 themselves tagged codimension-0.

    Every wall strictly between the two crosses the vertical line through
    the abscissa lambda_0 = b_-1/(a_-1*sqrt(n)) (an endpoint of C_-1, where
    C_-1 itself only touches t = 0), so one exact cross-section enumeration
    is complete.
    """
    if is_perfect_square(pell.ell * pell.n):
        raise SquareCase("use enumerate_walls_on_line at the square abscissa")
    ctx = pell.lattice
    v = MukaiVector(1, 0, -pell.ell)
    it = iterate(pell, -1)
    from .pell import _ratio_over_sqrt_n

    lam0 = _ratio_over_sqrt_n(it.b, it.a, pell.n)
    c0 = codim0_walls(pell, range(0, 1))[0]
    cm1 = codim0_walls(pell, range(-1, 0))[0]
    between = [
        w
        for w in enumerate_walls_on_line(v, lam0, ctx)
        if w.shape != cm1.shape and w.shape != c0.shape
    ]
    return sort_walls(between + [c0, cm1])


def vline_codim0_label(v: MukaiVector, shape: VLine, ctx: Context) -> Optional[int]:
    """Label 0 when the vertical wall s = d/r has codimension 0: that needs
    v = r*e^{kH} - a*rho with k integral and (r-1)(a-1) = 0."""
    if v.r == 0:
        return None
    k = Fraction(v.d) / v.r
    if shape.s0 != k or k.denominator != 1:
        return None
    a0 = ctx.n * v.d * v.d / v.r - v.a  # v = r*e^{kH} - a0*rho
    if a0.denominator != 1:
        return None
    return 0 if (v.r - 1) * (int(a0) - 1) == 0 else None


def is_codim0(
    w: Wall, pell: PellContext, search_bound: int = 32
) -> Optional[int]:
    """Label m when w matches a codimension-0 wall with |m| <= search_bound.

    Vertical lines are decided by the lattice criterion instead (see
    vline_codim0_label)."""
    v = MukaiVector(1, 0, -pell.ell)
    if isinstance(w.shape, VLine):
        return vline_codim0_label(v, w.shape, pell.lattice)
    if is_perfect_square(pell.ell * pell.n):
        return None
    for m in range(-search_bound, search_bound + 1):
        if m == 0:
            continue
        lam1, lam2 = slope_endpoints(pell, m)
        if w.shape == Circle((lam1 + lam2) / 2, ((lam1 - lam2) / 2) ** 2):
            return m
    return None


# ---------------------------------------------------------------------------
# chamber classification


@dataclass(frozen=True)
class ChamberReport:
    kind: str  # "OnWall" | "Gieseker" | "DualGieseker" | "Bounded"
    wall: Optional[Wall] = None
    outer: Optional[Wall] = None
    inner: Optional[Wall] = None


def _on_wall(shape: Shape, pt: StabilityPoint) -> bool:
    if isinstance(shape, VLine):
        return pt.s == shape.s0
    return (pt.s - shape.center) ** 2 + pt.t_sq == shape.radius_sq


def _strictly_inside(shape: Shape, pt: StabilityPoint) -> bool:
    if isinstance(shape, VLine):
        return False
    return (pt.s - shape.center) ** 2 + pt.t_sq < shape.radius_sq


def _circle_inside_circle(inner: Circle, outer: Circle) -> bool:
    """For disjoint pencil circles: containment iff the center point lies
    strictly inside the outer disk."""
    return (inner.center - outer.center) ** 2 < outer.radius_sq


def classify_point(
    v: MukaiVector, pt: StabilityPoint, walls: Iterable[Wall], ctx: Context
) -> ChamberReport:
    """Chamber classification of pt against a computed wall set.

    Unbounded chambers split by the sign of d_{beta+sH}(v): positive gives
    the Gieseker side, otherwise the dual side.  Points strictly inside some
    circle get the nearest enclosing wall and, when present in the set, the
    largest wall nested immediately inside.
    """
    walls = sort_walls(walls)
    for w in walls:
        if _on_wall(w.shape, pt):
            return ChamberReport("OnWall", wall=w)
    enclosing = [w for w in walls if _strictly_inside(w.shape, pt)]
    if not enclosing:
        _, d_b, _ = beta_data(v, pt.s, ctx)
        kind = "Gieseker" if d_b > 0 else "DualGieseker"
        return ChamberReport(kind)
    outer = min(enclosing, key=lambda w: w.shape.radius_sq)
    nested = [
        w
        for w in walls
        if isinstance(w.shape, Circle)
        and w.shape != outer.shape
        and _circle_inside_circle(w.shape, outer.shape)
        and not _strictly_inside(w.shape, pt)
    ]
    inner = max(nested, key=lambda w: w.shape.radius_sq) if nested else None
    return ChamberReport("Bounded", outer=outer, inner=inner)


@dataclass(frozen=True)
class WMaxReport:
    wall: Wall
    lambda1: QnNumber
    lambda2: QnNumber


def w_max_report(v: MukaiVector, walls: Iterable[Wall], ctx: Context) -> WMaxReport:
    """The outermost wall in the region r*s < d_beta and its real-axis
    abscissae; Fourier-Mukai transforms based outside [lambda1, lambda2]
    preserve Gieseker semistability."""
    if v.r <= 0:
        raise RankZero("w_max needs rk v > 0")
    p = Fraction(v.d) / v.r
    left = [
        w for w in walls if isinstance(w.shape, Circle) and w.shape.center < p
    ]
    if not left:
        raise NoWalls("no walls on the r*s < d_beta side")
    top = max(left, key=lambda w: w.shape.radius_sq)
    lam1, lam2 = top.shape.endpoints()
    return WMaxReport(top, lam1, lam2)
