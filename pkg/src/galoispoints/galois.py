"""The certification engine: is a given point a Galois point?

A point P (smooth on the curve, or off it) is a Galois point when the
function-field extension induced by projecting from P is Galois.  Three
methods are implemented, in decreasing order of authority:

* ``collineation`` -- compute the group of central collineations with
  center P preserving the curve.  If its order equals the projection
  degree, the projection is Galois with that group: certified.  The group
  is found by a complete enumeration: every such collineation fixes each
  line of the pencil, hence acts on two precomputed squarefree fibers by
  an affine map of the fiber coordinate, and all candidate affine maps
  through fiber roots are enumerated and verified exactly.
* ``deck`` -- for rational curves with a supplied parametrization, the
  projection factors through P^1 and its Galois group is the deck group
  {sigma in PGL(2) : h o sigma = h} of a rational function h; the deck
  group is enumerated completely through Moebius maps matching three
  anchor roots of two generic fibers.  Order = degree certifies.
* ``monte_carlo`` -- a statistical screen: over an unramified squarefree
  specialization of the fiber polynomial, a Galois cover has all residue
  degrees equal, so two distinct irreducible factor degrees refute
  Galois-ness with a checkable witness.  Uniformity over many trials is
  necessary but not sufficient, so the best positive verdict here is
  ``probably_galois``; it is never upgraded.

Specialization sampling cycles extension degrees 1..3 to decouple
Frobenius factor patterns from geometric monodromy.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from .config import RunConfig
from .curve import PlaneCurve
from .errors import (
    AllSpecializationsRamified,
    BruteCapExceeded,
    CenterSingular,
    DegenerateFibers,
    ExactModeDegenerate,
    ExtensionCapExceeded,
    MissingParametrization,
    ParametrizationInvalid,
    ZeroInput,
)
from .gf import FieldCtx, FqElement, common_field, lift, make_field
from .polyring import Polynomial, factor_univariate, poly_gcd, splitting_roots
from .projective import (
    FiniteProjectivityGroup,
    GroupDescriptor,
    Projectivity,
    ProjPoint,
    generate_group,
    identify_group,
    mobius_three_points,
    point_p1,
    trivial_group,
)
from .ratfunc import RationalMap1D, linear_fraction


# ---------------------------------------------------------------------------
# Projection fibers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProjectionFiber:
    """The fiber polynomial F(t, s) of a projection.

    After a projectivity moves the center to (0:1:0) (inner point) or to
    (1:0:0) (outer point), lines through the center are t = const in the
    chart z = 1 and the restricted form has exact s-degree n, with
    n = d - 1 for an inner center and n = d for an outer one.
    """

    center: ProjPoint
    inner: bool
    degree: int
    poly: Polynomial        # bivariate, var 0 = pencil t, var 1 = fiber s
    normalizer: Projectivity  # maps center to the standard position
    curve: PlaneCurve

    @property
    def point_class(self) -> str:
        return "inner" if self.inner else "outer"


def _move_center(ctx: FieldCtx, center: ProjPoint, target_col: int) -> Projectivity:
    """A deterministic projectivity g with g(center) = e_{target_col}."""
    coords = center.coords
    cols = [None, None, None]
    cols[target_col] = coords
    basis = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    free = [i for i in range(3) if i != target_col]
    for i in range(3):
        for j in range(3):
            if i == j:
                continue
            trial = list(cols)
            trial[free[0]] = tuple(ctx.element(b).rep for b in basis[i])
            trial[free[1]] = tuple(ctx.element(b).rep for b in basis[j])
            mat = [[FqElement(ctx, trial[c][r]) for c in range(3)]
                   for r in range(3)]
            try:
                g_inv = Projectivity(ctx, mat)
            except ValueError:
                continue
            return g_inv.inverse()
    raise ZeroInput("could not complete center to a basis")  # pragma: no cover


def fiber_polynomial(C: PlaneCurve, center: ProjPoint) -> ProjectionFiber:
    """Fiber polynomial of the projection from a center on or off the curve.

    Raises CenterSingular when the center is a singular point of C.
    """
    ctx = common_field(C.ctx, center.ctx)
    curve = C.lift_to(ctx)
    pt = center.lift_to(ctx)
    on_curve = curve.contains(pt)
    if on_curve and not any(curve.gradient_at(pt)):
        raise CenterSingular(f"{center!r} lies in Sing(C)")
    inner = bool(on_curve)
    target_col = 1 if inner else 0
    g = _move_center(ctx, pt, target_col)
    g_inv = g.inverse()
    xv = Polynomial.variable(ctx, 3, 0)
    yv = Polynomial.variable(ctx, 3, 1)
    zv = Polynomial.variable(ctx, 3, 2)
    imgs = []
    for i in range(3):
        row = g_inv.mat[i]
        imgs.append(xv * FqElement(ctx, row[0]) + yv * FqElement(ctx, row[1])
                    + zv * FqElement(ctx, row[2]))
    moved = curve.form.compose(imgs)
    t = Polynomial.variable(ctx, 2, 0)
    s = Polynomial.variable(ctx, 2, 1)
    one = Polynomial.const(ctx, 2, 1)
    if inner:
        fib = moved.compose([t, s, one])
    else:
        fib = moved.compose([s, t, one])
    n = curve.degree - (1 if inner else 0)
    if fib.degree_in(1) != n:
        raise ZeroInput(  # pragma: no cover - smoothness guarantees the degree
            f"fiber degree {fib.degree_in(1)} != expected {n}")
    return ProjectionFiber(pt, inner, n, fib, g, curve)


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

@dataclass
class GaloisReport:
    """Certified verdict for one projection center."""

    point: ProjPoint
    point_class: str                     # inner | outer | invalid
    projection_degree: int
    verdict: str                         # certified_galois | certified_not_galois
                                         # | probably_galois | inconclusive
    group: Optional[FiniteProjectivityGroup] = None
    descriptor: Optional[GroupDescriptor] = None
    witness: Optional[dict] = None
    method: Optional[str] = None         # collineation | deck | monte_carlo
    trials: int = 0
    notes: list = field(default_factory=list)

    def __post_init__(self):
        if self.verdict == "certified_galois":
            assert self.group is not None
            assert len(self.group) == self.projection_degree
        if self.verdict == "certified_not_galois":
            assert self.witness is not None
            assert len(set(self.witness["factor_degrees"])) >= 2

    def to_jsonable(self) -> dict:
        out = {
            "point": {"coords": list(self.point.encoding()),
                      "field": self.point.ctx.spec},
            "point_class": self.point_class,
            "projection_degree": self.projection_degree,
            "verdict": self.verdict,
            "method": self.method,
            "trials": self.trials,
            "notes": sorted(self.notes),
        }
        if self.group is not None:
            out["group"] = {
                "order": len(self.group),
                "field": self.group.ctx.spec,
                "dimension": self.group.n - 1,
                "elements": [g.row_major() for g in self.group.elements],
            }
        else:
            out["group"] = None
        out["descriptor"] = self.descriptor.to_jsonable() if self.descriptor else None
        out["witness"] = self.witness
        return out


# ---------------------------------------------------------------------------
# Monte Carlo screen
# ---------------------------------------------------------------------------

def monte_carlo_galois(fib: ProjectionFiber, trials: int = 64,
                       seed: int = 0, ext_cap: int = 12) -> GaloisReport:
    """Factor-degree census over random unramified specializations.

    Any squarefree full-degree specialization whose irreducible factors
    have two distinct degrees certifies NOT Galois, with the witness
    recorded.  Uniform degrees across all trials give ``probably_galois``
    only: cycle-type uniformity does not prove a cover Galois.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    n = fib.degree
    base = fib.poly.ctx
    if n <= 1:
        return GaloisReport(fib.center, fib.point_class, n, "probably_galois",
                            method="monte_carlo", trials=trials,
                            notes=["degree-1 projection is trivially Galois"])
    usable = 0
    for trial in range(trials):
        j = (trial % 3) + 1
        ectx = base if j == 1 else make_field(base.p, base.k * j)
        rng = random.Random(f"mc:{seed}:{trial}")
        t0 = FqElement(ectx, ectx.decode(rng.randrange(ectx.order)))
        spec = fib.poly.partial_evaluate(0, t0)
        if spec.degree() != n:
            continue
        der = spec.derivative(0)
        if der.is_zero or poly_gcd(spec, der).degree() > 0:
            continue
        usable += 1
        degrees = sorted(f.degree() for f, _ in
                         factor_univariate(spec, seed=seed * 1000003 + trial))
        if len(set(degrees)) >= 2:
            witness = {
                "t0": t0.encoding(),
                "field": ectx.spec,
                "factor_degrees": degrees,
            }
            return GaloisReport(fib.center, fib.point_class, n,
                                "certified_not_galois", witness=witness,
                                method="monte_carlo", trials=trial + 1)
    if usable == 0:
        raise AllSpecializationsRamified(
            "every sampled specialization was ramified or degenerate")
    return GaloisReport(fib.center, fib.point_class, n, "probably_galois",
                        method="monte_carlo", trials=trials,
                        notes=[f"usable_specializations={usable}"])


# ---------------------------------------------------------------------------
# Central collineations
# ---------------------------------------------------------------------------

def _fiber_search(fpoly: Polynomial, n: int, ext_cap: int, seed_tag: str,
                  count: int = 2, attempts: int = 64):
    """Find ``count`` squarefree full-degree fibers of F(t, s) with split roots.

    Returns a list of (t0, roots, root_ctx); t0 values are pairwise
    distinct after lifting to a common field.
    """
    base = fpoly.ctx
    rng = random.Random(seed_tag)
    found = []
    seen_t = []
    cycle = (1,) * 10 + (2,) * 6 + (3,) * 4 + (1, 2, 3)
    for attempt in range(attempts):
        j = cycle[attempt % len(cycle)]
        ectx = base if j == 1 else make_field(base.p, base.k * j)
        t0 = FqElement(ectx, ectx.decode(rng.randrange(ectx.order)))
        if any(lift(t0, common_field(ectx, t.ctx))
               == lift(t, common_field(ectx, t.ctx)) for t in seen_t):
            continue
        spec = fpoly.partial_evaluate(0, t0)
        if spec.degree() != n:
            continue
        der = spec.derivative(0)
        if der.is_zero or poly_gcd(spec, der).degree() > 0:
            continue
        try:
            rm = splitting_roots(spec, ext_cap=max(1, ext_cap // j))
        except ExtensionCapExceeded:
            continue
        found.append((t0, [r for r, _ in rm.roots], rm.ext))
        seen_t.append(t0)
        if len(found) == count:
            return found
    raise DegenerateFibers(
        f"no {count} usable fibers within {attempts} attempts")


def _semi_invariance_check(a_parts: list[Polynomial], formP: Polynomial,
                           beta, lam, delta, ctx) -> bool:
    """Exact test of form' o sigma = c * form' for the central shape
    (x : beta x + lam y + delta z : z), using the y-coefficient split."""
    L = Polynomial(ctx, 3, {k: v for k, v in
                            (((1, 0, 0), beta.rep), ((0, 1, 0), lam.rep),
                             ((0, 0, 1), delta.rep)) if any(v)})
    if L.is_zero:
        return False
    acc = Polynomial.zero(ctx, 3)
    power = Polynomial.const(ctx, 3, 1)
    for i, a in enumerate(a_parts):
        if i > 0:
            power = power * L
        if not a.is_zero:
            acc = acc + power * a
    lead_exp, lead_c = formP.leading_term()
    c = acc.coefficient(lead_exp) / lead_c
    if not c:
        return False
    return acc == formP * c


def central_collineation_group(C: PlaneCurve, center: ProjPoint,
                               mode: str = "exact",
                               cfg: Optional[RunConfig] = None
                               ) -> FiniteProjectivityGroup:
    """All projectivities fixing ``center`` and every line through it that
    send the curve to a scalar multiple of itself.

    In ``exact`` mode the group is enumerated completely through its action
    on two squarefree fibers; ``brute`` mode scans all (beta, lambda, delta)
    over the base field and is limited by ``cfg.brute_q_cap``.  The result
    lives in the original coordinates (possibly over an extension) and its
    order never exceeds the projection degree.
    """
    cfg = cfg or RunConfig()
    fib = fiber_polynomial(C, center)  # raises CenterSingular as needed
    ctx = fib.poly.ctx
    # re-normalize with the center at (0:1:0) so the collineation shape is
    # (x : beta x + lam y + delta z : z) in the moved coordinates
    g = _move_center(ctx, center.lift_to(ctx), 1)
    g_inv = g.inverse()
    xv = Polynomial.variable(ctx, 3, 0)
    yv = Polynomial.variable(ctx, 3, 1)
    zv = Polynomial.variable(ctx, 3, 2)
    imgs = []
    for i in range(3):
        row = g_inv.mat[i]
        imgs.append(xv * FqElement(ctx, row[0]) + yv * FqElement(ctx, row[1])
                    + zv * FqElement(ctx, row[2]))
    moved = C.lift_to(ctx).form.compose(imgs)
    n = fib.degree
    if n < 1:
        raise ZeroInput("degenerate curve for collineation search")
    if n == 1:
        return trivial_group(ctx, 3)
    # fiber polynomial in the (0:1:0) normalization: t = x, s = y, z = 1
    t = Polynomial.variable(ctx, 2, 0)
    s = Polynomial.variable(ctx, 2, 1)
    one2 = Polynomial.const(ctx, 2, 1)
    fpoly = moved.compose([t, s, one2])
    if fpoly.degree_in(1) != n:  # pragma: no cover
        raise ZeroInput("fiber degree mismatch in collineation search")

    if mode == "brute":
        q = ctx.order
        if q > cfg.brute_q_cap:
            raise BruteCapExceeded(f"|F| = {q} > brute cap {cfg.brute_q_cap}")
        found = _brute_scan(moved, ctx, n)
    elif mode == "exact":
        try:
            fibers = _fiber_search(fpoly, n, cfg.ext_cap,
                                   f"coll:{cfg.seed}:{ctx.spec}")
        except DegenerateFibers as exc:
            raise ExactModeDegenerate(str(exc)) from exc
        found = _fiber_permutation_scan(moved, fpoly, fibers, n)
    else:
        raise ValueError(f"unknown mode {mode!r}")

    wctx = found[0].ctx if found else ctx
    g_back = g_inv.lift_to(wctx)
    g_fwd = g.lift_to(wctx)
    elements = [g_back * sigma * g_fwd for sigma in found]
    group = generate_group(elements if elements else
                           [Projectivity.identity(wctx, 3)],
                           cap=max(n + 1, 2))
    if len(group) != len(elements):
        raise ZeroInput("collineation scan returned a non-closed set")  # pragma: no cover
    assert len(group) <= n, "soundness: collineation count exceeds degree"
    group = group.descend_to(C.ctx)
    for e in group.elements:
        assert e.apply(center.lift_to(group.ctx)) == center.lift_to(group.ctx)
    return group


def _brute_scan(moved: Polynomial, ctx: FieldCtx, n: int) -> list[Projectivity]:
    """Exhaustive scan of central collineations over the base field."""
    a_parts = _y_parts(moved)
    # cheap point filter: images of a few curve points must stay on the curve
    probe = _probe_points(moved, ctx)
    out = []
    for lam_code in range(1, ctx.order):
        lam = FqElement(ctx, ctx.decode(lam_code))
        for b_code in range(ctx.order):
            beta = FqElement(ctx, ctx.decode(b_code))
            for d_code in range(ctx.order):
                delta = FqElement(ctx, ctx.decode(d_code))
                ok = True
                for (px, py, pz) in probe:
                    iy = beta * px + lam * py + delta * pz
                    val = _eval3(moved, px, iy, pz)
                    if val:
                        ok = False
                        break
                if not ok:
                    continue
                if _semi_invariance_check(a_parts, moved, beta, lam, delta, ctx):
                    out.append(Projectivity(ctx, [[1, 0, 0],
                                                  [beta, lam, delta],
                                                  [0, 0, 1]]))
    return out


def _y_parts(moved: Polynomial) -> list[Polynomial]:
    from .polyring import _split_by_var
    return _split_by_var(moved, 1)


def _eval3(form: Polynomial, x, y, z) -> FqElement:
    return form.evaluate([x, y, z])


def _probe_points(moved: Polynomial, ctx: FieldCtx, want: int = 3):
    """A few affine points on the moved curve, for cheap filtering."""
    out = []
    for code in range(ctx.order):
        t0 = FqElement(ctx, ctx.decode(code))
        spec = moved.compose([
            Polynomial.const(ctx, 1, t0),
            Polynomial.variable(ctx, 1, 0),
            Polynomial.const(ctx, 1, 1)])
        if spec.degree() < 1:
            continue
        for root_code in range(ctx.order):
            y0 = FqElement(ctx, ctx.decode(root_code))
            if not spec.evaluate([y0]):
                out.append((t0, y0, ctx.one))
                break
        if len(out) >= want:
            break
    return out


def _fiber_permutation_scan(moved: Polynomial, fpoly: Polynomial,
                            fibers, n: int) -> list[Projectivity]:
    """Enumerate central collineations via their affine action on two fibers."""
    (t1, roots1, ctx1), (t2, roots2, ctx2) = fibers
    wctx = common_field(common_field(ctx1, ctx2),
                        common_field(t1.ctx, t2.ctx))
    r1 = [lift(r, wctx) for r in roots1]
    r2 = [lift(r, wctx) for r in roots2]
    tv1, tv2 = lift(t1, wctx), lift(t2, wctx)
    set1, set2 = set(r1), set(r2)
    a_parts = [p.lift_to(wctx) for p in _y_parts(moved)]
    formP = moved.lift_to(wctx)
    s1, s2 = r1[0], r1[1]
    s3 = r2[0]
    dt = tv1 - tv2
    out = {}
    ds = s1 - s2
    ds_inv = ds.inverse()
    dt_inv = dt.inverse()
    for b1 in r1:
        for b2 in r1:
            if b1 == b2:
                continue
            lam = (b1 - b2) * ds_inv
            mu1 = b1 - lam * s1
            # quick filter on fiber 1
            if any((lam * r + mu1) not in set1 for r in r1):
                continue
            for b3 in r2:
                mu2 = b3 - lam * s3
                if any((lam * r + mu2) not in set2 for r in r2):
                    continue
                beta = (mu1 - mu2) * dt_inv
                delta = mu1 - beta * tv1
                key = (lam.rep, beta.rep, delta.rep)
                if key in out:
                    continue
                if _semi_invariance_check(a_parts, formP, beta, lam, delta, wctx):
                    out[key] = Projectivity(wctx, [[1, 0, 0],
                                                   [beta, lam, delta],
                                                   [0, 0, 1]])
    return list(out.values())


# ---------------------------------------------------------------------------
# Deck transformations of rational maps
# ---------------------------------------------------------------------------

def deck_group(h: RationalMap1D, ext_cap: int = 12, seed: int = 0,
               attempts: int = 32) -> FiniteProjectivityGroup:
    """{sigma in PGL(2) : h o sigma = h}, certified complete.

    Two generic fibers are computed; every deck map permutes each fiber, so
    the Moebius maps through images of three anchor roots exhaust all
    candidates, and each survivor is verified as an exact rational-function
    identity.
    """
    n = h.degree()
    if n == 0:
        raise ZeroInput("deck group of a constant map")
    base = h.ctx
    if n == 1:
        return trivial_group(base, 2)
    rng = random.Random(f"deck:{seed}:{base.spec}")
    fibers = []
    seen_v = []
    cycle = (1,) * 10 + (2,) * 6 + (3,) * 4 + (1, 2, 3)
    for attempt in range(attempts):
        j = cycle[attempt % len(cycle)]
        ectx = base if j == 1 else make_field(base.p, base.k * j)
        v = FqElement(ectx, ectx.decode(rng.randrange(ectx.order)))
        if any(lift(v, common_field(ectx, w.ctx)) ==
               lift(w, common_field(ectx, w.ctx)) for w in seen_v):
            continue
        num = h.num.lift_to(ectx)
        den = h.den.lift_to(ectx)
        g = num - den * v
        if g.degree() != n:
            continue
        der = g.derivative(0)
        if der.is_zero or poly_gcd(g, der).degree() > 0:
            continue
        try:
            rm = splitting_roots(g, ext_cap=max(1, ext_cap // j))
        except ExtensionCapExceeded:
            continue
        fibers.append((v, [r for r, _ in rm.roots], rm.ext))
        seen_v.append(v)
        if len(fibers) == 2:
            break
    if len(fibers) < 2:
        raise DegenerateFibers(
            f"no two squarefree fibers found in {attempts} attempts")
    (v1, roots1, ctx1), (v2, roots2, ctx2) = fibers
    wctx = common_field(ctx1, ctx2)
    r1 = [point_p1(wctx, lift(r, wctx)) for r in roots1]
    r2 = [point_p1(wctx, lift(r, wctx)) for r in roots2]
    set1, set2 = set(r1), set(r2)
    hw = h.lift_to(wctx)
    anchors = (r1[0], r1[1], r2[0])
    found = {}
    for b1 in r1:
        for b2 in r1:
            if b1 == b2:
                continue
            for b3 in r2:
                sigma = mobius_three_points(list(anchors), [b1, b2, b3])
                key = tuple(sigma.row_major())
                if key in found:
                    continue
                if any(sigma.apply(r) not in set1 for r in r1):
                    continue
                if any(sigma.apply(r) not in set2 for r in r2):
                    continue
                if hw.compose_mobius(sigma) == hw:
                    found[key] = sigma
    elements = list(found.values())
    group = generate_group(elements if elements else
                           [Projectivity.identity(wctx, 2)], cap=n + 1)
    if len(group) != len(elements):
        raise ZeroInput("deck scan returned a non-closed set")  # pragma: no cover
    assert len(group) <= n, "soundness: deck group exceeds covering degree"
    for sigma in group.elements:
        assert hw.compose_mobius(sigma) == hw
    return group.descend_to(base)


# ---------------------------------------------------------------------------
# Orchestrator
# ---------------------------------------------------------------------------

def projection_map(C: PlaneCurve, center: ProjPoint,
                   parametrization: tuple[RationalMap1D, RationalMap1D]
                   ) -> RationalMap1D:
    """The projection from ``center`` composed with a parametrization of C."""
    from .curve import verify_on_curve
    x_t, y_t = parametrization
    verify_on_curve(C, x_t, y_t)
    fib = fiber_polynomial(C, center)
    ctx = common_field(common_field(C.ctx, x_t.ctx),
                       common_field(center.ctx, y_t.ctx))
    g = fib.normalizer.lift_to(ctx)
    rows = g.mat
    if fib.inner:
        row_num, row_den = rows[0], rows[2]
    else:
        row_num, row_den = rows[1], rows[2]
    h = linear_fraction(x_t.lift_to(ctx), y_t.lift_to(ctx),
                        [FqElement(ctx, c) for c in row_num],
                        [FqElement(ctx, c) for c in row_den])
    if h.degree() != fib.degree:
        raise ParametrizationInvalid(
            f"projection degree {h.degree()} != fiber degree {fib.degree}; "
            "the parametrization is not birational")
    return h


def is_galois_point(C: PlaneCurve, P: ProjPoint, strategy: str = "auto",
                    parametrization: Optional[tuple] = None,
                    cfg: Optional[RunConfig] = None) -> GaloisReport:
    """Decide whether P is a Galois point of C.

    strategy: "auto" tries deterministic certificates first (collineation,
    then deck when a parametrization is supplied) and falls back to the
    Monte Carlo screen; or force one of "collineation", "deck",
    "monte_carlo".  Certified verdicts carry the group and its descriptor.
    """
    cfg = cfg or RunConfig()
    fib = fiber_polynomial(C, P)
    n = fib.degree
    notes: list[str] = []
    if not C.assume_irreducible:
        notes.append("curve irreducibility was assumed, not verified")

    if n == 1:
        deckish = strategy == "deck" or (strategy == "auto"
                                         and parametrization is not None)
        grp = trivial_group(fib.poly.ctx, 2 if deckish else 3)
        return GaloisReport(fib.center, fib.point_class, 1, "certified_galois",
                            group=grp, descriptor=identify_group(grp),
                            method="deck" if deckish else "collineation",
                            notes=notes +
                            ["degree-1 projection is trivially Galois"])

    coll_group = None
    if strategy in ("auto", "collineation"):
        try:
            coll_group = central_collineation_group(C, P, mode="exact", cfg=cfg)
        except ExactModeDegenerate as exc:
            notes.append(f"exact collineation search degenerate: {exc}")
            if fib.poly.ctx.order <= cfg.brute_q_cap:
                coll_group = central_collineation_group(C, P, mode="brute",
                                                        cfg=cfg)
                notes.append("fell back to brute collineation scan")
        if coll_group is not None and len(coll_group) == n:
            return GaloisReport(fib.center, fib.point_class, n,
                                "certified_galois", group=coll_group,
                                descriptor=identify_group(coll_group),
                                method="collineation", notes=notes)
        if strategy == "collineation":
            if coll_group is not None:
                notes.append(f"collineation group order {len(coll_group)} < {n}")
            return GaloisReport(fib.center, fib.point_class, n, "inconclusive",
                                group=coll_group,
                                descriptor=identify_group(coll_group)
                                if coll_group else None,
                                method="collineation", notes=notes)

    if strategy in ("auto", "deck"):
        if parametrization is None:
            if strategy == "deck":
                raise MissingParametrization(
                    "deck certification needs a parametrization")
        else:
            h = projection_map(C, P, parametrization)
            dg = deck_group(h, ext_cap=cfg.ext_cap, seed=cfg.seed)
            if len(dg) == n:
                return GaloisReport(fib.center, fib.point_class, n,
                                    "certified_galois", group=dg,
                                    descriptor=identify_group(dg),
                                    method="deck", notes=notes)
            notes.append(f"deck group order {len(dg)} < {n}")
            if strategy == "deck":
                return GaloisReport(fib.center, fib.point_class, n,
                                    "inconclusive", group=dg,
                                    descriptor=identify_group(dg),
                                    method="deck", notes=notes)

    mc = monte_carlo_galois(fib, trials=cfg.trials, seed=cfg.seed,
                            ext_cap=cfg.ext_cap)
    mc.notes = notes + mc.notes
    if coll_group is not None and len(coll_group) > 1 \
            and mc.verdict == "certified_not_galois":
        # a nontrivial collineation group never contradicts a refutation,
        # but record it for the report
        mc.notes.append(f"collineation subgroup of order {len(coll_group)} found")
    return mc
