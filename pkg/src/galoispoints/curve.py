"""Plane-curve geometry: construction, singular locus, tangents, divisors.

A :class:`PlaneCurve` is a reduced homogeneous trivariate form of degree
d >= 1 with the affine chart convention z = 1.  Irreducibility is NOT
verified in general (there is no multivariate factorization here); family
constructors guarantee it structurally and user-supplied curves carry an
``assume_irreducible`` flag that is surfaced in reports.

The singular locus is computed by resultant elimination over the affine
chart plus a direct sweep of the line at infinity; intersection of a line
with the curve restricts the form to a binary form on the line and reads
multiplicities off the root multiplicities of that restriction.  Local
branch separation at singular points is out of scope: divisors whose
support meets Sing(C) are flagged, not refined.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    ExtensionCapExceeded,
    LineIsComponent,
    NotSquarefree,
    PointNotOnCurve,
    PointSingular,
    ZeroInput,
)
from .gf import FieldCtx, FqElement, common_field, lift
from .polyring import Polynomial, exact_div, poly_gcd, splitting_roots
from .projective import PointDivisor, ProjLine, ProjPoint
from .ratfunc import RationalMap1D


class PlaneCurve:
    """A reduced plane curve: homogeneous trivariate form of degree d."""

    __slots__ = ("form", "degree", "ctx", "assume_irreducible")

    def __init__(self, form: Polynomial, assume_irreducible: bool = True):
        if form.nvars != 3 or form.is_zero:
            raise ZeroInput("curve form must be a nonzero trivariate polynomial")
        if not form.is_homogeneous():
            raise ValueError("curve form must be homogeneous")
        self.form = form.monic()
        self.degree = form.degree()
        self.ctx = form.ctx
        self.assume_irreducible = assume_irreducible

    def __eq__(self, other) -> bool:
        if not isinstance(other, PlaneCurve):
            return NotImplemented
        return self.form == other.form

    def __hash__(self) -> int:
        return hash(self.form)

    def lift_to(self, ctx2: FieldCtx) -> "PlaneCurve":
        if ctx2 == self.ctx:
            return self
        return PlaneCurve(self.form.lift_to(ctx2), self.assume_irreducible)

    # -- point queries -----------------------------------------------------

    def value_at(self, pt: ProjPoint) -> FqElement:
        ctx = common_field(self.ctx, pt.ctx)
        return self.form.lift_to(ctx).evaluate(
            [FqElement(ctx, c) for c in pt.lift_to(ctx).coords])

    def contains(self, pt: ProjPoint) -> bool:
        return not self.value_at(pt)

    def gradient_at(self, pt: ProjPoint) -> list[FqElement]:
        ctx = common_field(self.ctx, pt.ctx)
        form = self.form.lift_to(ctx)
        vals = [FqElement(ctx, c) for c in pt.lift_to(ctx).coords]
        return [form.derivative(i).evaluate(vals) for i in range(3)]

    def is_smooth_at(self, pt: ProjPoint) -> bool:
        if not self.contains(pt):
            raise PointNotOnCurve(f"{pt!r} is not on the curve")
        return any(self.gradient_at(pt))

    def affine(self) -> Polynomial:
        """The affine chart z = 1."""
        return self.form.dehomogenize(2)

    def to_jsonable(self) -> dict:
        return {
            "field": self.ctx.spec,
            "modulus": list(self.ctx.modulus),
            "degree": self.degree,
            "form": self.form.to_text(),
            "affine_poly": self.affine().to_text(),
            "assume_irreducible": self.assume_irreducible,
        }

    def __repr__(self) -> str:
        return f"Curve(deg {self.degree}: {self.form.to_text()})"


def curve_from_affine(f: Polynomial, assume_irreducible: bool = True) -> PlaneCurve:
    """Homogenize a squarefree affine bivariate polynomial into a curve."""
    if f.nvars != 2 or f.is_zero or f.degree() < 1:
        raise ZeroInput("need a nonconstant bivariate polynomial")
    g = poly_gcd(poly_gcd(f, f.derivative(0)), f.derivative(1))
    if g.degree() > 0:
        raise NotSquarefree(f"repeated factor {g.to_text()}")
    return PlaneCurve(f.homogenize(), assume_irreducible)


# ---------------------------------------------------------------------------
# Singular locus
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SingularLocus:
    """Singular points with multiplicities, over one common extension."""

    points: tuple  # tuple[(ProjPoint, int), ...]
    ext: FieldCtx

    def is_empty(self) -> bool:
        return not self.points

    def support(self) -> list[ProjPoint]:
        return [pt for pt, _ in self.points]

    def to_jsonable(self) -> dict:
        return {
            "field": self.ext.spec,
            "points": [{"coords": list(pt.encoding()), "multiplicity": m}
                       for pt, m in self.points],
        }


def _roots_bounded(poly: Polynomial, ext_cap: int, relevance_bound: int):
    """Roots of factors whose degree can matter for a 0-dimensional system.

    A common zero of two curves of total degrees m, n has residue degree at
    most m*n (the Bezout bound on the number of zeros), so irreducible
    factors beyond that bound cannot carry common zeros and are skipped;
    factors inside the bound but beyond ext_cap raise honestly.
    """
    from .polyring import factor_univariate
    out = []
    for irr, _mult in factor_univariate(poly):
        deg = irr.degree()
        if deg > relevance_bound:
            continue
        if deg > ext_cap:
            raise ExtensionCapExceeded(
                f"a candidate zero needs extension degree {deg} > cap {ext_cap}")
        out.extend(r for r, _ in splitting_roots(irr, ext_cap=ext_cap).roots)
    return out


def _common_zeros_pair(A: Polynomial, B: Polynomial, ext_cap: int):
    """Common zeros of two coprime bivariate polynomials (a finite set).

    Yields (x0, y0) pairs of FqElements over per-point extensions.
    """
    from .polyring import resultant

    ctx = A.ctx
    bez = max(A.degree(), 1) * max(B.degree(), 1)
    da, db = A.degree_in(1), B.degree_in(1)
    if da == 0 and db == 0:
        # both free of y: coprime univariates in x share no root
        return []
    if da == 0 or db == 0:
        u = A if da == 0 else B
        other = B if da == 0 else A
        ux = Polynomial.from_dense(ctx, [rep for rep in _as_univar_x(u)])
        if ux.degree() < 1:
            return []
        out = []
        for x0 in _roots_bounded(ux, ext_cap, bez):
            spec = other.partial_evaluate(0, x0)
            if spec.is_zero or spec.degree() < 1:
                continue
            for y0 in _roots_bounded(spec, ext_cap, bez):
                ectx = common_field(x0.ctx, y0.ctx)
                out.append((lift(x0, ectx), lift(y0, ectx)))
        return out
    r = resultant(A, B, 1)   # eliminate y -> polynomial in x
    rx = Polynomial.from_dense(ctx, _as_univar_x(r))
    if rx.is_zero:
        raise ZeroInput("internal: resultant of coprime pair vanished")
    if rx.degree() < 1:
        return []
    out = []
    for x0 in _roots_bounded(rx, ext_cap, bez):
        a0 = A.partial_evaluate(0, x0)
        b0 = B.partial_evaluate(0, x0)
        if a0.is_zero and b0.is_zero:
            continue  # a common component through x = x0 cannot happen (coprime)
        if a0.is_zero:
            g = b0
        elif b0.is_zero:
            g = a0
        else:
            g = poly_gcd(a0, b0)
        if g.degree() < 1:
            continue
        for y0 in _roots_bounded(g, ext_cap, bez):
            ectx = common_field(x0.ctx, y0.ctx)
            out.append((lift(x0, ectx), lift(y0, ectx)))
    return out


def _as_univar_x(f: Polynomial) -> list:
    """Dense x-coefficient reps of a bivariate polynomial with deg_y = 0."""
    d = f.degree_in(0)
    out = [f.ctx.zero_t] * (d + 1)
    for (a, b), rep in f.terms.items():
        if b != 0:
            raise ValueError("polynomial is not y-free")
        out[a] = rep
    return out


def _affine_singular_candidates(f: Polynomial, ext_cap: int):
    """Zeros of (f, f_x, f_y) in the affine chart, by gcd decomposition."""
    fx = f.derivative(0)
    fy = f.derivative(1)
    candidates = []
    if fx.is_zero and fy.is_zero:
        raise NotSquarefree("curve form is a p-th power")
    if fx.is_zero or fy.is_zero:
        # f squarefree forces gcd(f, the other partial) to be constant
        d = fy if fx.is_zero else fx
        candidates += _common_zeros_pair(f, d, ext_cap)
        return candidates
    g = poly_gcd(f, fx)
    f1, fx1 = exact_div(f, g), exact_div(fx, g)
    if g.degree() > 0:
        # gcd(g, fy) = 1 because f is squarefree
        candidates += _common_zeros_pair(g, fy, ext_cap)
    if f1.degree() > 0 and fx1.degree() > 0:
        candidates += _common_zeros_pair(f1, fx1, ext_cap)
    elif fx1.degree() == 0 and not fx1.is_zero:
        pass  # no further zeros
    elif f1.degree() > 0 and fx1.is_zero:
        candidates += _common_zeros_pair(f1, fy, ext_cap)
    return candidates


def point_multiplicity(C: PlaneCurve, pt: ProjPoint) -> int:
    """Order of vanishing at a point: degree of the lowest homogeneous part
    after translating the point to the origin of an affine chart."""
    ctx = common_field(C.ctx, pt.ctx)
    form = C.form.lift_to(ctx)
    coords = [FqElement(ctx, c) for c in pt.lift_to(ctx).coords]
    chart = max(i for i, c in enumerate(coords) if c)
    # projectivity sending pt to the origin of the chart: translate the two
    # affine coordinates by the point's affine position
    others = [i for i in range(3) if i != chart]
    inv = coords[chart].inverse()
    a0 = coords[others[0]] * inv
    a1 = coords[others[1]] * inv
    aff = form.dehomogenize(chart)  # in vars others[0], others[1]
    u = Polynomial.variable(ctx, 2, 0)
    v = Polynomial.variable(ctx, 2, 1)
    shifted = aff.compose([u + a0, v + a1])
    return min(sum(e) for e in shifted.terms)


def singular_points(C: PlaneCurve, ext_cap: int = 12) -> SingularLocus:
    """All singular points of the curve with multiplicities.

    Solves form = dF/dX = dF/dY = dF/dZ = 0 on the affine chart z = 1 by
    gcd/resultant elimination and sweeps the line z = 0 separately; results
    are lifted to the smallest common extension.
    """
    ctx = C.ctx
    f = C.form.dehomogenize(2)
    found: list[ProjPoint] = []
    if f.degree() >= 1:
        for x0, y0 in _affine_singular_candidates(f, ext_cap):
            ectx = common_field(x0.ctx, y0.ctx)
            pt = ProjPoint(ectx, [lift(x0, ectx), lift(y0, ectx), ectx.one])
            # exact re-check of all three projective partials plus the form
            if C.contains(pt) and not any(C.gradient_at(pt)):
                if pt not in found:
                    found.append(pt)
    # line z = 0: points (1 : y : 0) plus (0 : 1 : 0)
    on_line = C.form.partial_evaluate(2, ctx.zero)  # binary form in (x, y)
    if on_line.is_zero:
        raise NotSquarefree("z divides the curve form; form is not reduced")
    # roots of F(1, y, 0); the x-exponent is determined by homogeneity
    fy_line = Polynomial(ctx, 1, {(b,): rep
                                  for (a, b), rep in on_line.terms.items()})
    candidates = []
    if fy_line.degree() >= 1:
        for y0 in _roots_bounded(fy_line, ext_cap, fy_line.degree()):
            candidates.append(ProjPoint(y0.ctx, [y0.ctx.one, y0, y0.ctx.zero]))
    candidates.append(ProjPoint(ctx, [ctx.zero, ctx.one, ctx.zero]))
    for pt in candidates:
        if C.contains(pt) and not any(C.gradient_at(pt)):
            if pt not in found:
                found.append(pt)
    if not found:
        return SingularLocus((), ctx)
    target = ctx
    for pt in found:
        target = common_field(target, pt.ctx)
    lifted = sorted({pt.lift_to(target) for pt in found},
                    key=lambda p: p.encoding())
    pts = tuple((pt, point_multiplicity(C, pt)) for pt in lifted)
    for _, m in pts:
        assert m >= 2
    return SingularLocus(pts, target)


def tangent_line(C: PlaneCurve, P: ProjPoint) -> ProjLine:
    """Tangent line at a smooth point: gradient coefficients at P."""
    if not C.contains(P):
        raise PointNotOnCurve(f"{P!r} is not on the curve")
    grad = C.gradient_at(P)
    if not any(grad):
        raise PointSingular(f"{P!r} is a singular point")
    return ProjLine(grad[0].ctx, grad)


def line_intersection_divisor(C: PlaneCurve, L: ProjLine,
                              ext_cap: int = 12) -> PointDivisor:
    """The divisor cut on C by a line, of degree exactly deg(C).

    The line is parametrized by two spanning points; the form restricts to
    a degree-d binary form whose root multiplicities are the intersection
    multiplicities.
    """
    ctx = common_field(C.ctx, L.ctx)
    curve = C.lift_to(ctx)
    line = L.lift_to(ctx)
    A, B = line.spanning_points()
    # restrict: G(s, u) = F(s*A + u*B)
    s = Polynomial.variable(ctx, 2, 0)
    u = Polynomial.variable(ctx, 2, 1)
    imgs = []
    for i in range(3):
        imgs.append(s * FqElement(ctx, A.coords[i]) + u * FqElement(ctx, B.coords[i]))
    G = curve.form.compose(imgs)
    if G.is_zero:
        raise LineIsComponent(f"{L!r} is a component of the curve")
    d = curve.degree
    # dehomogenize at u = 1: roots give points s0*A + B; the deficit in
    # degree lands on the point A itself (s : u) = (1 : 0)
    g = G.dehomogenize(1)
    support: dict[ProjPoint, int] = {}
    ectx = ctx
    if g.degree() >= 1:
        rm = splitting_roots(g, ext_cap=ext_cap)
        ectx = rm.ext
        for s0, m in rm.roots:
            coords = [lift(FqElement(ctx, A.coords[i]), ectx) * s0
                      + lift(FqElement(ctx, B.coords[i]), ectx)
                      for i in range(3)]
            support[ProjPoint(ectx, coords)] = m
    extra = d - max(g.degree(), 0)
    if extra > 0:
        support[A.lift_to(ectx)] = support.get(A.lift_to(ectx), 0) + extra
    div = PointDivisor(ectx, 2, support)
    assert div.degree() == d
    return div


# ---------------------------------------------------------------------------
# Rational parametrization through a point of multiplicity d-1
# ---------------------------------------------------------------------------

def pencil_parametrization(C: PlaneCurve, S: ProjPoint
                           ) -> tuple[RationalMap1D, RationalMap1D]:
    """Parametrize a degree-d curve with a point S of multiplicity d-1.

    Each line of the pencil through S meets the curve residually in a
    single point, so slopes give a birational parametrization.  Returns
    (x(t), y(t)) in the affine chart z = 1; the result is verified to lie
    on the curve exactly.
    """
    ctx = common_field(C.ctx, S.ctx)
    curve = C.lift_to(ctx)
    pt = S.lift_to(ctx)
    d = curve.degree
    m = point_multiplicity(curve, pt)
    if m != d - 1:
        raise ZeroInput(f"pencil parametrization needs multiplicity d-1, got {m}")
    coords = [FqElement(ctx, c) for c in pt.coords]
    chart = max(i for i, c in enumerate(coords) if c)
    others = [i for i in range(3) if i != chart]
    inv = coords[chart].inverse()
    a0 = coords[others[0]] * inv
    a1 = coords[others[1]] * inv
    aff = curve.form.dehomogenize(chart)
    u = Polynomial.variable(ctx, 2, 0)
    v = Polynomial.variable(ctx, 2, 1)
    g = aff.compose([u + a0, v + a1])    # singular point at the origin
    parts: dict[int, Polynomial] = {}
    for exp, rep in g.terms.items():
        deg = sum(exp)
        parts.setdefault(deg, Polynomial.zero(ctx, 2))
        parts[deg] = parts[deg] + Polynomial(ctx, 2, {exp: rep})
    low = parts.get(d - 1)
    top = parts.get(d)
    if low is None or top is None or set(parts) != {d - 1, d}:
        raise ZeroInput("unexpected homogeneous parts at the singular point")
    # restrict to the line v = t*u:  g = u^(d-1) (low(1,t) + u top(1,t))
    tvar = Polynomial.variable(ctx, 1, 0)
    def binary_at_t(h: Polynomial) -> Polynomial:
        acc = Polynomial.zero(ctx, 1)
        for (eu, ev), rep in h.terms.items():
            acc = acc + tvar ** ev * FqElement(ctx, rep)
        return acc
    low_t = binary_at_t(low)
    top_t = binary_at_t(top)
    r = RationalMap1D(-low_t, top_t)      # residual u-coordinate
    u_t = r
    v_t = RationalMap1D.from_poly(tvar) * r
    # back to the original chart coordinates
    local = {others[0]: u_t + a0, others[1]: v_t + a1,
             chart: RationalMap1D.const(ctx, 1)}
    denom = local[2]
    if denom.num.is_zero:
        raise ZeroInput("parametrization degenerates on the z = 0 chart")
    x_t = local[0] / denom
    y_t = local[1] / denom
    verify_on_curve(curve, x_t, y_t)
    return x_t, y_t


def verify_on_curve(C: PlaneCurve, x_t: RationalMap1D, y_t: RationalMap1D) -> None:
    """Exact check that form(x(t), y(t), 1) vanishes identically."""
    from .errors import ParametrizationInvalid
    ctx = common_field(common_field(C.ctx, x_t.ctx), y_t.ctx)
    form = C.form.lift_to(ctx)
    x = x_t.lift_to(ctx)
    y = y_t.lift_to(ctx)
    d = C.degree
    acc = Polynomial.zero(ctx, 1)
    xn_pow = {0: Polynomial.const(ctx, 1, 1)}
    xd_pow = {0: Polynomial.const(ctx, 1, 1)}
    yn_pow = {0: Polynomial.const(ctx, 1, 1)}
    yd_pow = {0: Polynomial.const(ctx, 1, 1)}

    def pw(cache, base, e):
        if e not in cache:
            cache[e] = pw(cache, base, e - 1) * base
        return cache[e]

    for (ex, ey, ez), rep in form.terms.items():
        term = (pw(xn_pow, x.num, ex) * pw(xd_pow, x.den, d - ex)
                * pw(yn_pow, y.num, ey) * pw(yd_pow, y.den, d - ey))
        acc = acc + term * FqElement(ctx, rep)
    if not acc.is_zero:
        raise ParametrizationInvalid("parametrization does not satisfy the curve")
