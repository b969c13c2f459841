"""Rational functions on P^1: reduced fractions of univariate polynomials.

A :class:`RationalMap1D` is a pair num/den with gcd(num, den) = 1 and a
monic denominator.  These are at once field elements of k(t) and morphisms
P^1 -> P^1 of degree max(deg num, deg den); both views are used: the
embedding pipeline builds invariant functions, the certification engine
composes them with Moebius transformations and reads off fibers and pole
divisors.

Evaluation is projective: ``evaluate`` returns None for a pole, and the
point at infinity is handled through the homogeneous pair.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .errors import ZeroInput
from .gf import FieldCtx, FqElement, common_field, lift
from .polyring import Polynomial, poly_gcd, exact_div, splitting_roots
from .projective import PointDivisor, ProjPoint, Projectivity, point_p1


class RationalMap1D:
    """A reduced rational function num(t)/den(t) over one field context."""

    __slots__ = ("ctx", "num", "den")

    def __init__(self, num: Polynomial, den: Polynomial):
        if num.nvars != 1 or den.nvars != 1:
            raise ValueError("rational maps are univariate")
        num._check(den)
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        if num.is_zero:
            den = Polynomial.const(num.ctx, 1, 1)
        else:
            g = poly_gcd(num, den)
            if g.degree() > 0:
                num = exact_div(num, g)
                den = exact_div(den, g)
        lc = den.coefficient((den.degree(),))
        inv = lc.inverse()
        self.num = num * inv
        self.den = den * inv
        self.ctx = num.ctx

    # -- constructors ------------------------------------------------------

    @classmethod
    def const(cls, ctx: FieldCtx, value) -> "RationalMap1D":
        return cls(Polynomial.const(ctx, 1, value), Polynomial.const(ctx, 1, 1))

    @classmethod
    def variable(cls, ctx: FieldCtx) -> "RationalMap1D":
        return cls(Polynomial.variable(ctx, 1, 0), Polynomial.const(ctx, 1, 1))

    @classmethod
    def from_poly(cls, num: Polynomial) -> "RationalMap1D":
        return cls(num, Polynomial.const(num.ctx, 1, 1))

    # -- structure -----------------------------------------------------------

    def degree(self) -> int:
        """Degree as a morphism P^1 -> P^1 (0 for a constant map)."""
        return max(self.num.degree(), self.den.degree(), 0)

    @property
    def is_constant(self) -> bool:
        return self.num.degree() <= 0 and self.den.degree() <= 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMap1D):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def lift_to(self, ctx2: FieldCtx) -> "RationalMap1D":
        if ctx2 == self.ctx:
            return self
        return RationalMap1D(self.num.lift_to(ctx2), self.den.lift_to(ctx2))

    # -- field arithmetic in k(t) ----------------------------------------------

    def _coerce(self, other) -> "RationalMap1D":
        if isinstance(other, RationalMap1D):
            return other
        if isinstance(other, Polynomial):
            return RationalMap1D.from_poly(other)
        if isinstance(other, int):
            return RationalMap1D.const(self.ctx, other % self.ctx.p)
        if isinstance(other, FqElement):
            return RationalMap1D.const(self.ctx, other)
        raise TypeError(f"cannot coerce {other!r} to a rational map")

    def __add__(self, other):
        o = self._coerce(other)
        return RationalMap1D(self.num * o.den + o.num * self.den,
                             self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalMap1D(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        return RationalMap1D(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.num.is_zero:
            raise ZeroDivisionError("division by the zero function")
        return RationalMap1D(self.num * o.den, self.den * o.num)

    def reciprocal(self) -> "RationalMap1D":
        if self.num.is_zero:
            raise ZeroDivisionError("reciprocal of zero")
        return RationalMap1D(self.den, self.num)

    def __pow__(self, n: int) -> "RationalMap1D":
        if n < 0:
            return self.reciprocal() ** (-n)
        return RationalMap1D(self.num ** n, self.den ** n)

    # -- evaluation -----------------------------------------------------------

    def evaluate(self, t: FqElement) -> Optional[FqElement]:
        """Value at an affine point, or None when t is a pole."""
        ectx = t.ctx
        n = self.num.lift_to(ectx) if ectx != self.ctx else self.num
        d = self.den.lift_to(ectx) if ectx != self.ctx else self.den
        dv = d.evaluate([t])
        nv = n.evaluate([t])
        if not dv:
            return None
        return nv / dv

    def value_at_point(self, pt: ProjPoint) -> ProjPoint:
        """Image of a P^1 point under the morphism (projective, total)."""
        ectx = common_field(self.ctx, pt.ctx)
        x, z = pt.lift_to(ectx).coords
        n = self.num.lift_to(ectx)
        d = self.den.lift_to(ectx)
        deg = self.degree()
        # homogenize both to degree deg and evaluate at (x : z)
        def heval(poly: Polynomial):
            acc = ectx.zero_t
            for (e,), rep in poly.terms.items():
                term = ectx.mul_t(rep, ectx.pow_t(x, e))
                term = ectx.mul_t(term, ectx.pow_t(z, deg - e))
                acc = ectx.add_t(acc, term)
            return acc
        nv, dv = heval(n), heval(d)
        if not any(nv) and not any(dv):
            # common root of the homogenized pair cannot happen (reduced);
            # reaching here means deg-truncation at infinity: split by lc
            raise ArithmeticError("unreduced projective evaluation")
        return ProjPoint(ectx, [FqElement(ectx, nv), FqElement(ectx, dv)])

    def value_at_infinity(self) -> ProjPoint:
        return self.value_at_point(point_p1(self.ctx, infinity=True))

    # -- composition ----------------------------------------------------------

    def compose_mobius(self, sigma: Projectivity) -> "RationalMap1D":
        """h o sigma for sigma = (a t + b)/(c t + d) in PGL(2)."""
        if sigma.n != 2:
            raise ValueError("need a PGL(2) element")
        ectx = common_field(self.ctx, sigma.ctx)
        sg = sigma.lift_to(ectx)
        (a, b), (c, d) = sg.mat
        t = Polynomial.variable(ectx, 1, 0)
        lin1 = t * FqElement(ectx, a) + FqElement(ectx, b)   # a t + b
        lin2 = t * FqElement(ectx, c) + FqElement(ectx, d)   # c t + d
        n = self.num.lift_to(ectx)
        dn = self.den.lift_to(ectx)
        deg = self.degree()

        def subst(poly: Polynomial) -> Polynomial:
            acc = Polynomial.zero(ectx, 1)
            # cache powers
            p1: dict[int, Polynomial] = {0: Polynomial.const(ectx, 1, 1)}
            p2: dict[int, Polynomial] = {0: Polynomial.const(ectx, 1, 1)}

            def pw(cache, base, e):
                if e not in cache:
                    cache[e] = pw(cache, base, e - 1) * base
                return cache[e]

            for (e,), rep in poly.terms.items():
                term = pw(p1, lin1, e) * pw(p2, lin2, deg - e)
                acc = acc + term * FqElement(ectx, rep)
            return acc

        return RationalMap1D(subst(n), subst(dn))

    def compose(self, inner: "RationalMap1D") -> "RationalMap1D":
        """self o inner as rational functions."""
        ectx = common_field(self.ctx, inner.ctx)
        outer_n = self.num.lift_to(ectx)
        outer_d = self.den.lift_to(ectx)
        inn = inner.lift_to(ectx)
        deg = self.degree()

        def subst(poly: Polynomial) -> Polynomial:
            acc = Polynomial.zero(ectx, 1)
            cache_n: dict[int, Polynomial] = {0: Polynomial.const(ectx, 1, 1)}
            cache_d: dict[int, Polynomial] = {0: Polynomial.const(ectx, 1, 1)}

            def pw(cache, base, e):
                if e not in cache:
                    cache[e] = pw(cache, base, e - 1) * base
                return cache[e]

            for (e,), rep in poly.terms.items():
                term = pw(cache_n, inn.num, e) * pw(cache_d, inn.den, deg - e)
                acc = acc + term * FqElement(ectx, rep)
            return acc

        return RationalMap1D(subst(outer_n), subst(outer_d))

    # -- divisors ----------------------------------------------------------------

    def pole_divisor(self, ext_cap: int = 12) -> PointDivisor:
        """(h)_infinity as an effective divisor on P^1 (degree = deg h)."""
        ctx = self.ctx
        support: dict[ProjPoint, int] = {}
        ectx = ctx
        if self.den.degree() > 0:
            rm = splitting_roots(self.den, ext_cap=ext_cap)
            ectx = rm.ext
            for r, m in rm.roots:
                support[point_p1(ectx, r)] = m
        extra = self.num.degree() - self.den.degree()
        if extra > 0:
            support[point_p1(ectx, infinity=True).lift_to(ectx)] = extra
        return PointDivisor(ectx, 1, {pt.lift_to(ectx): m
                                      for pt, m in support.items()})

    def fiber_divisor(self, value: Optional[FqElement], ext_cap: int = 12) -> PointDivisor:
        """Pullback divisor h^*(value); value None means infinity."""
        if value is None:
            return self.pole_divisor(ext_cap=ext_cap)
        ectx0 = common_field(self.ctx, value.ctx)
        n = self.num.lift_to(ectx0)
        d = self.den.lift_to(ectx0)
        g = n - d * lift(value, ectx0)
        support: dict[ProjPoint, int] = {}
        ectx = ectx0
        if g.degree() > 0:
            rm = splitting_roots(g, ext_cap=ext_cap)
            ectx = rm.ext
            for r, m in rm.roots:
                support[point_p1(ectx, r)] = m
        extra = self.degree() - max(g.degree(), 0)
        if extra > 0:
            support[point_p1(ectx, infinity=True)] = extra
        return PointDivisor(ectx, 1, {pt.lift_to(ectx): m
                                      for pt, m in support.items()})

    def __repr__(self) -> str:
        return f"({self.num.to_text()})/({self.den.to_text()})"


def linear_fraction(xmap: RationalMap1D, ymap: RationalMap1D,
                    row_num: Sequence[FqElement], row_den: Sequence[FqElement]) -> RationalMap1D:
    """(a x(t) + b y(t) + c) / (d x(t) + e y(t) + f) as a reduced map.

    Rows are length-3 coefficient vectors applied to (x, y, 1).
    """
    ctx = common_field(xmap.ctx, ymap.ctx)
    for c in list(row_num) + list(row_den):
        ctx = common_field(ctx, c.ctx)
    x = xmap.lift_to(ctx)
    y = ymap.lift_to(ctx)

    def combo(row):
        a, b, c = (lift(v, ctx) for v in row)
        acc = RationalMap1D.const(ctx, 0)
        if a:
            acc = acc + x * a
        if b:
            acc = acc + y * b
        if c:
            acc = acc + RationalMap1D.const(ctx, c)
        return acc

    num = combo(row_num)
    den = combo(row_den)
    if den.num.is_zero:
        raise ZeroInput("projection denominator is identically zero")
    return num / den
