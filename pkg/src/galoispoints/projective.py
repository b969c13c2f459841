"""Points, lines and projectivities of P^1 and P^2 over finite fields.

Scalar normalization (first nonzero coordinate equal to 1) gives every
point, line and projectivity a unique representative, so equality in
PGL(2) / PGL(3) is syntactic and hash-set group closure works.  Groups are
explicit element lists closed under product and inverse; structure
identification matches the order histogram against the small catalogue
that the classification needs (trivial, cyclic, Klein, elementary abelian,
S3, A4, p-group-by-cyclic semidirect) and reports "other" instead of
guessing anything finer.

Objects over different extensions of the same prime field are lifted to a
common context on demand; see :func:`galoispoints.gf.common_field`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import ClosureCapExceeded, DimensionMismatch
from .gf import FieldCtx, FqElement, common_field, lift


def _normalize(ctx: FieldCtx, vec: tuple) -> tuple:
    for c in vec:
        if any(c):
            inv = ctx.inv_t(c)
            return tuple(ctx.mul_t(inv, x) for x in vec)
    raise ValueError("zero vector cannot be normalized")


class ProjPoint:
    """A point of P^1 or P^2, scalar-normalized for decidable equality."""

    __slots__ = ("ctx", "coords")

    def __init__(self, ctx: FieldCtx, coords: Sequence):
        reps = tuple(ctx.element(c).rep for c in coords)
        if len(reps) not in (2, 3):
            raise DimensionMismatch("points live in P^1 or P^2")
        self.ctx = ctx
        self.coords = _normalize(ctx, reps)

    @property
    def dim(self) -> int:
        return len(self.coords) - 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProjPoint):
            return NotImplemented
        return self.ctx == other.ctx and self.coords == other.coords

    def __hash__(self) -> int:
        return hash((self.ctx, self.coords))

    def lift_to(self, ctx2: FieldCtx) -> "ProjPoint":
        if ctx2 == self.ctx:
            return self
        return ProjPoint(ctx2, [lift(FqElement(self.ctx, c), ctx2)
                                for c in self.coords])

    def elements(self) -> list[FqElement]:
        return [FqElement(self.ctx, c) for c in self.coords]

    def encoding(self) -> tuple[int, ...]:
        return tuple(self.ctx.encode(c) for c in self.coords)

    def spec_str(self) -> str:
        return ":".join(str(e) for e in self.encoding())

    def __repr__(self) -> str:
        return f"({self.spec_str()}) over {self.ctx!r}"


def point_p1(ctx: FieldCtx, t=None, infinity: bool = False) -> ProjPoint:
    """Affine P^1 point (t : 1), or (1 : 0) when infinity is requested."""
    if infinity:
        return ProjPoint(ctx, [ctx.one, ctx.zero])
    return ProjPoint(ctx, [ctx.element(t), ctx.one])


def p1_value(pt: ProjPoint) -> Optional[FqElement]:
    """The affine value of a P^1 point, or None for the point at infinity."""
    if pt.dim != 1:
        raise DimensionMismatch("expected a P^1 point")
    x, z = pt.elements()
    if not z:
        return None
    return x / z


class ProjLine:
    """A line of P^2 given by a scalar-normalized coefficient covector."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs: Sequence):
        reps = tuple(ctx.element(c).rep for c in coeffs)
        if len(reps) != 3:
            raise DimensionMismatch("lines need 3 coefficients")
        self.ctx = ctx
        self.coeffs = _normalize(ctx, reps)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProjLine):
            return NotImplemented
        return self.ctx == other.ctx and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.ctx, self.coeffs))

    def lift_to(self, ctx2: FieldCtx) -> "ProjLine":
        if ctx2 == self.ctx:
            return self
        return ProjLine(ctx2, [lift(FqElement(self.ctx, c), ctx2)
                               for c in self.coeffs])

    def contains(self, pt: ProjPoint) -> bool:
        ctx = common_field(self.ctx, pt.ctx)
        line = self.lift_to(ctx)
        p = pt.lift_to(ctx)
        acc = ctx.zero_t
        for c, x in zip(line.coeffs, p.coords):
            acc = ctx.add_t(acc, ctx.mul_t(c, x))
        return not any(acc)

    def spanning_points(self) -> tuple[ProjPoint, ProjPoint]:
        """Two distinct points spanning the line (deterministic kernel basis)."""
        ctx = self.ctx
        pivot = next(i for i, c in enumerate(self.coeffs) if any(c))
        inv = ctx.inv_t(self.coeffs[pivot])
        basis = []
        for j in range(3):
            if j == pivot:
                continue
            vec = [ctx.zero_t] * 3
            vec[j] = ctx.one_t
            vec[pivot] = ctx.neg_t(ctx.mul_t(inv, self.coeffs[j]))
            basis.append(ProjPoint(ctx, [FqElement(ctx, c) for c in vec]))
        return basis[0], basis[1]

    def encoding(self) -> tuple[int, ...]:
        return tuple(self.ctx.encode(c) for c in self.coeffs)

    def __repr__(self) -> str:
        return f"Line{self.encoding()} over {self.ctx!r}"


def line_through(a: ProjPoint, b: ProjPoint) -> ProjLine:
    """The unique line through two distinct P^2 points (cross product)."""
    ctx = common_field(a.ctx, b.ctx)
    a, b = a.lift_to(ctx), b.lift_to(ctx)
    if a.dim != 2 or b.dim != 2:
        raise DimensionMismatch("line_through expects P^2 points")
    if a == b:
        raise ValueError("points coincide; line is not unique")
    (a0, a1, a2), (b0, b1, b2) = a.coords, b.coords
    m = ctx.mul_t
    s = ctx.sub_t
    coeffs = (s(m(a1, b2), m(a2, b1)),
              s(m(a2, b0), m(a0, b2)),
              s(m(a0, b1), m(a1, b0)))
    return ProjLine(ctx, [FqElement(ctx, c) for c in coeffs])


class Projectivity:
    """An element of PGL(2) or PGL(3): an invertible matrix mod scalars."""

    __slots__ = ("ctx", "n", "mat")

    def __init__(self, ctx: FieldCtx, mat: Sequence[Sequence]):
        rows = [tuple(ctx.element(c).rep for c in row) for row in mat]
        n = len(rows)
        if n not in (2, 3) or any(len(r) != n for r in rows):
            raise DimensionMismatch("projectivities are 2x2 or 3x3")
        flat = [c for row in rows for c in row]
        norm = _normalize(ctx, tuple(flat))
        self.ctx = ctx
        self.n = n
        self.mat = tuple(tuple(norm[i * n + j] for j in range(n))
                         for i in range(n))
        if not any(self._det()):
            raise ValueError("projectivity matrix is singular")

    def _det(self):
        ctx, m = self.ctx, self.mat
        mul, sub, add = ctx.mul_t, ctx.sub_t, ctx.add_t
        if self.n == 2:
            return sub(mul(m[0][0], m[1][1]), mul(m[0][1], m[1][0]))
        t0 = mul(m[0][0], sub(mul(m[1][1], m[2][2]), mul(m[1][2], m[2][1])))
        t1 = mul(m[0][1], sub(mul(m[1][0], m[2][2]), mul(m[1][2], m[2][0])))
        t2 = mul(m[0][2], sub(mul(m[1][0], m[2][1]), mul(m[1][1], m[2][0])))
        return add(sub(t0, t1), t2)

    @classmethod
    def identity(cls, ctx: FieldCtx, n: int) -> "Projectivity":
        return cls(ctx, [[1 if i == j else 0 for j in range(n)]
                         for i in range(n)])

    @classmethod
    def diagonal(cls, ctx: FieldCtx, entries: Sequence) -> "Projectivity":
        n = len(entries)
        return cls(ctx, [[entries[i] if i == j else 0 for j in range(n)]
                         for i in range(n)])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Projectivity):
            return NotImplemented
        return self.ctx == other.ctx and self.mat == other.mat

    def __hash__(self) -> int:
        return hash((self.ctx, self.mat))

    def __mul__(self, other: "Projectivity") -> "Projectivity":
        if not isinstance(other, Projectivity):
            return NotImplemented
        if self.n != other.n:
            raise DimensionMismatch("dimension mismatch in composition")
        ctx = common_field(self.ctx, other.ctx)
        a = self.lift_to(ctx)
        b = other.lift_to(ctx)
        n = self.n
        mul, add = ctx.mul_t, ctx.add_t
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = ctx.zero_t
                for l in range(n):
                    acc = add(acc, mul(a.mat[i][l], b.mat[l][j]))
                row.append(FqElement(ctx, acc))
            out.append(row)
        return Projectivity(ctx, out)

    def inverse(self) -> "Projectivity":
        ctx, m, n = self.ctx, self.mat, self.n
        mul, sub = ctx.mul_t, ctx.sub_t
        if n == 2:
            adj = [[m[1][1], ctx.neg_t(m[0][1])],
                   [ctx.neg_t(m[1][0]), m[0][0]]]
        else:
            def cof(i, j):
                r = [k for k in range(3) if k != i]
                c = [k for k in range(3) if k != j]
                val = sub(mul(m[r[0]][c[0]], m[r[1]][c[1]]),
                          mul(m[r[0]][c[1]], m[r[1]][c[0]]))
                return val if (i + j) % 2 == 0 else ctx.neg_t(val)
            adj = [[cof(j, i) for j in range(3)] for i in range(3)]
        return Projectivity(ctx, [[FqElement(ctx, c) for c in row]
                                  for row in adj])

    def __pow__(self, e: int) -> "Projectivity":
        if e < 0:
            return self.inverse() ** (-e)
        result = Projectivity.identity(self.ctx, self.n)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def order(self, cap: int = 4096) -> int:
        acc = self
        ident = Projectivity.identity(self.ctx, self.n)
        for k in range(1, cap + 1):
            if acc == ident:
                return k
            acc = acc * self
        raise ClosureCapExceeded(f"element order exceeds {cap}")

    def lift_to(self, ctx2: FieldCtx) -> "Projectivity":
        if ctx2 == self.ctx:
            return self
        return Projectivity(ctx2, [[lift(FqElement(self.ctx, c), ctx2)
                                    for c in row] for row in self.mat])

    def apply(self, x: ProjPoint) -> ProjPoint:
        """Normalized image g(x); auto-embeds into a common extension."""
        if x.dim + 1 != self.n:
            raise DimensionMismatch("point/projectivity dimension mismatch")
        ctx = common_field(self.ctx, x.ctx)
        g = self.lift_to(ctx)
        p = x.lift_to(ctx)
        mul, add = ctx.mul_t, ctx.add_t
        out = []
        for i in range(self.n):
            acc = ctx.zero_t
            for j in range(self.n):
                acc = add(acc, mul(g.mat[i][j], p.coords[j]))
            out.append(FqElement(ctx, acc))
        return ProjPoint(ctx, out)

    def apply_line(self, line: ProjLine) -> ProjLine:
        """Image of a line: coefficients transform by the inverse matrix."""
        if self.n != 3:
            raise DimensionMismatch("lines live in P^2")
        ctx = common_field(self.ctx, line.ctx)
        inv = self.inverse().lift_to(ctx)
        l = line.lift_to(ctx)
        mul, add = ctx.mul_t, ctx.add_t
        out = []
        for j in range(3):
            acc = ctx.zero_t
            for i in range(3):
                acc = add(acc, mul(l.coeffs[i], inv.mat[i][j]))
            out.append(FqElement(ctx, acc))
        return ProjLine(ctx, out)

    def row_major(self) -> list[int]:
        """Row-major list of coefficient encodings (report serialization)."""
        return [self.ctx.encode(c) for row in self.mat for c in row]

    def __repr__(self) -> str:
        return f"PGL{self.n}{tuple(self.row_major())} over {self.ctx!r}"


def mobius(ctx: FieldCtx, a, b, c, d) -> Projectivity:
    """The Moebius map t -> (a t + b) / (c t + d) as an element of PGL(2)."""
    return Projectivity(ctx, [[a, b], [c, d]])


def mobius_three_points(src: Sequence[ProjPoint], dst: Sequence[ProjPoint]) -> Projectivity:
    """The unique projectivity of P^1 sending three distinct points to
    three distinct points, src[i] -> dst[i]."""

    def to_standard(pts):
        ctx = pts[0].ctx
        (p0, p1, p2) = pts
        # solve lam*p0 + mu*p1 = p2
        a, b = p0.coords, p1.coords
        c = p2.coords
        mul, sub = ctx.mul_t, ctx.sub_t
        det = sub(mul(a[0], b[1]), mul(a[1], b[0]))
        if not any(det):
            raise ValueError("anchor points are not distinct")
        inv = ctx.inv_t(det)
        lam = ctx.mul_t(inv, sub(mul(c[0], b[1]), mul(c[1], b[0])))
        mu = ctx.mul_t(inv, sub(mul(a[0], c[1]), mul(a[1], c[0])))
        cols = [[FqElement(ctx, ctx.mul_t(lam, a[0])), FqElement(ctx, ctx.mul_t(mu, b[0]))],
                [FqElement(ctx, ctx.mul_t(lam, a[1])), FqElement(ctx, ctx.mul_t(mu, b[1]))]]
        return Projectivity(ctx, cols)

    ctx = src[0].ctx
    for p in list(src) + list(dst):
        ctx = common_field(ctx, p.ctx)
    src = [p.lift_to(ctx) for p in src]
    dst = [p.lift_to(ctx) for p in dst]
    m_src = to_standard(src)
    m_dst = to_standard(dst)
    return m_dst * m_src.inverse()


# ---------------------------------------------------------------------------
# Finite groups of projectivities
# ---------------------------------------------------------------------------

class FiniteProjectivityGroup:
    """An explicitly closed finite subgroup of PGL(2) or PGL(3)."""

    __slots__ = ("ctx", "n", "elements", "generators", "_set")

    def __init__(self, ctx: FieldCtx, n: int, elements: list[Projectivity],
                 generators: list[Projectivity]):
        self.ctx = ctx
        self.n = n
        self.elements = sorted(elements, key=lambda g: g.row_major())
        self.generators = generators
        self._set = frozenset(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g: Projectivity) -> bool:
        if g.ctx == self.ctx:
            return g in self._set
        ctx = common_field(self.ctx, g.ctx)
        return g.lift_to(ctx) in {e.lift_to(ctx) for e in self.elements}

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteProjectivityGroup):
            return NotImplemented
        return self.ctx == other.ctx and self._set == other._set

    def __hash__(self) -> int:
        return hash((self.ctx, self._set))

    def identity(self) -> Projectivity:
        return Projectivity.identity(self.ctx, self.n)

    def lift_to(self, ctx2: FieldCtx) -> "FiniteProjectivityGroup":
        if ctx2 == self.ctx:
            return self
        return FiniteProjectivityGroup(
            ctx2, self.n,
            [g.lift_to(ctx2) for g in self.elements],
            [g.lift_to(ctx2) for g in self.generators])

    def conjugate(self, h: Projectivity) -> "FiniteProjectivityGroup":
        hinv = h.inverse()
        ctx = common_field(self.ctx, h.ctx)
        return FiniteProjectivityGroup(
            ctx, self.n,
            [(h * g * hinv).lift_to(ctx) for g in self.elements],
            [(h * g * hinv).lift_to(ctx) for g in self.generators])

    def descend_to(self, sub: FieldCtx) -> "FiniteProjectivityGroup":
        """Rewrite over the smallest field between ``sub`` and the current
        context that holds every matrix entry; identity when nothing
        descends.  Keeps joint computations in small fields."""
        from .gf import try_descend
        if sub == self.ctx or self.ctx.p != sub.p or self.ctx.k % sub.k != 0:
            return self
        # smallest intermediate degree that splits every entry
        divisors = sorted(j for j in range(sub.k, self.ctx.k)
                          if j % sub.k == 0 and self.ctx.k % j == 0)
        for j in divisors:
            from .gf import make_field
            target = sub if j == sub.k else make_field(sub.p, j)
            new_elements = []
            ok = True
            for g in self.elements:
                rows = []
                for row in g.mat:
                    out_row = []
                    for c in row:
                        d = try_descend(FqElement(self.ctx, c), target)
                        if d is None:
                            ok = False
                            break
                        out_row.append(d)
                    if not ok:
                        break
                    rows.append(out_row)
                if not ok:
                    break
                new_elements.append(Projectivity(target, rows))
            if ok:
                return FiniteProjectivityGroup(target, self.n, new_elements,
                                               new_elements)
        return self

    def is_closed(self) -> bool:
        for g in self.elements:
            if g.inverse() not in self._set:
                return False
            for h in self.elements:
                if g * h not in self._set:
                    return False
        return True

    def __repr__(self) -> str:
        return f"Group(order {len(self.elements)}, PGL{self.n}, {self.ctx!r})"


def generate_group(gens: Sequence[Projectivity], cap: int = 4096) -> FiniteProjectivityGroup:
    """Breadth-first closure of a generating set under products.

    Raises ClosureCapExceeded when the closure grows past ``cap`` (an
    infinite or too-large group).
    """
    if not gens:
        raise ValueError("need at least one generator")
    n = gens[0].n
    ctx = gens[0].ctx
    for g in gens:
        if g.n != n:
            raise DimensionMismatch("mixed dimensions in generating set")
        ctx = common_field(ctx, g.ctx)
    gens = [g.lift_to(ctx) for g in gens]
    ident = Projectivity.identity(ctx, n)
    seen = {ident: ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                prod = g * h
                if prod not in seen:
                    if len(seen) >= cap:
                        raise ClosureCapExceeded(
                            f"group closure exceeded cap {cap}")
                    seen[prod] = prod
                    nxt.append(prod)
        frontier = nxt
    return FiniteProjectivityGroup(ctx, n, list(seen), list(gens))


def trivial_group(ctx: FieldCtx, n: int) -> FiniteProjectivityGroup:
    ident = Projectivity.identity(ctx, n)
    return FiniteProjectivityGroup(ctx, n, [ident], [ident])


# ---------------------------------------------------------------------------
# Structure identification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroupDescriptor:
    """Order, abelianness, element-order histogram and a catalogue tag."""

    order: int
    abelian: bool
    element_order_histogram: dict
    tag: str
    params: dict = field(default_factory=dict)

    def to_jsonable(self) -> dict:
        return {
            "order": self.order,
            "abelian": self.abelian,
            "element_order_histogram": {str(k): v for k, v in
                                        sorted(self.element_order_histogram.items())},
            "tag": self.tag,
            "params": dict(sorted(self.params.items())),
        }


def identify_group(G: FiniteProjectivityGroup) -> GroupDescriptor:
    """Match a finite projectivity group against the named catalogue.

    Tags: trivial, cyclic, klein, elementary_abelian (params p, e), s3, a4,
    semidirect_p_cyclic (params p, e, m), other.  The tag is derived from
    the order histogram and abelianness only; anything unmatched is
    "other" rather than a guess.
    """
    order = len(G)
    hist: dict[int, int] = {}
    orders = {}
    for g in G.elements:
        o = g.order(cap=order + 1)
        orders[g] = o
        hist[o] = hist.get(o, 0) + 1
    abelian = all(a * b == b * a for a in G.generators for b in G.generators)

    def mk(tag, **params):
        return GroupDescriptor(order, abelian, hist, tag, params)

    if order == 1:
        return mk("trivial")
    if abelian and hist.get(order, 0) > 0:
        return mk("cyclic")
    if order == 4 and hist.get(2, 0) == 3:
        return mk("klein")
    p = G.ctx.p
    if abelian:
        # elementary abelian q-group for some prime q
        nontrivial = [o for o in hist if o > 1]
        if len(nontrivial) == 1:
            q = nontrivial[0]
            from .gf import is_prime
            if is_prime(q):
                e = 0
                o = order
                while o % q == 0:
                    o //= q
                    e += 1
                if o == 1:
                    return mk("elementary_abelian", p=q, e=e)
        return mk("other")
    if order == 6:
        return mk("s3")
    if order == 12 and hist.get(1) == 1 and hist.get(2) == 3 and hist.get(3) == 8:
        return mk("a4")
    # semidirect (p-group) x| (cyclic m): p-power-order elements form a
    # normal subgroup of order p^e with a cyclic complement of order m
    pe = 1
    o = order
    while o % p == 0:
        o //= p
        pe *= p
    m = order // pe
    if pe > 1 and m > 1:
        p_part = [g for g in G.elements if orders[g] == 1 or
                  _is_p_power(orders[g], p)]
        if len(p_part) == pe:
            pset = set(p_part)
            closed = all(a * b in pset for a in p_part for b in p_part)
            normal = all(h * a * h.inverse() in pset
                         for h in G.generators for a in p_part)
            has_cyclic = any(orders[g] == m for g in G.elements)
            if closed and normal and has_cyclic:
                e = 0
                q = pe
                while q % p == 0:
                    q //= p
                    e += 1
                return mk("semidirect_p_cyclic", p=p, e=e, m=m)
    return mk("other")


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


# ---------------------------------------------------------------------------
# Products of two groups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProductReport:
    """Joint structure of two finite projectivity groups."""

    joint: FiniteProjectivityGroup
    joint_descriptor: GroupDescriptor
    intersection_order: int
    product_set_equals_joint: bool
    g1_normal: bool
    g2_normal: bool
    classification: str  # direct | left_semidirect | right_semidirect | neither | not_a_product

    def to_jsonable(self) -> dict:
        return {
            "joint_order": len(self.joint),
            "joint_descriptor": self.joint_descriptor.to_jsonable(),
            "intersection_order": self.intersection_order,
            "product_set_equals_joint": self.product_set_equals_joint,
            "g1_normal": self.g1_normal,
            "g2_normal": self.g2_normal,
            "classification": self.classification,
        }


def product_structure(G1: FiniteProjectivityGroup, G2: FiniteProjectivityGroup,
                      cap: int = 4096) -> ProductReport:
    """Compute J = <G1 u G2> and classify how G1 and G2 sit inside it.

    classification:
      * ``direct``          -- product set = J, trivial intersection, both normal
      * ``left_semidirect`` -- product set = J, trivial intersection, G1 normal only
      * ``right_semidirect``-- product set = J, trivial intersection, G2 normal only
      * ``neither``         -- product set = J but no semidirect structure
      * ``not_a_product``   -- the product set is smaller than J
    """
    if G1.n != G2.n:
        raise DimensionMismatch("groups act on different spaces")
    ctx = common_field(G1.ctx, G2.ctx)
    H1 = G1.lift_to(ctx)
    H2 = G2.lift_to(ctx)
    gens = H1.generators + H2.generators
    J = generate_group(gens, cap=cap)
    s1, s2 = set(H1.elements), set(H2.elements)
    inter = s1 & s2
    products = {a * b for a in H1.elements for b in H2.elements}
    product_equals = products == set(J.elements)
    g1_normal = all(h * a * h.inverse() in s1
                    for h in J.generators for a in H1.elements)
    g2_normal = all(h * a * h.inverse() in s2
                    for h in J.generators for a in H2.elements)
    if not product_equals:
        cls = "not_a_product"
    elif len(inter) != 1:
        cls = "neither"
    elif g1_normal and g2_normal:
        cls = "direct"
    elif g1_normal:
        cls = "left_semidirect"
    elif g2_normal:
        cls = "right_semidirect"
    else:
        cls = "neither"
    return ProductReport(J, identify_group(J), len(inter), product_equals,
                         g1_normal, g2_normal, cls)


# ---------------------------------------------------------------------------
# Divisors and orbits
# ---------------------------------------------------------------------------

class PointDivisor:
    """An effective divisor: points of P^1 or P^2 with multiplicities."""

    __slots__ = ("ctx", "dim", "support")

    def __init__(self, ctx: FieldCtx, dim: int, support: dict):
        self.ctx = ctx
        self.dim = dim
        self.support = {pt: int(m) for pt, m in support.items() if m}
        for pt, m in self.support.items():
            if m < 1:
                raise ValueError("divisor multiplicities must be >= 1")
            if pt.dim != dim:
                raise DimensionMismatch("mixed ambient spaces in divisor")

    def degree(self) -> int:
        return sum(self.support.values())

    def points(self) -> list[ProjPoint]:
        return sorted(self.support, key=lambda p: p.encoding())

    def multiplicity(self, pt: ProjPoint) -> int:
        if pt.ctx == self.ctx:
            return self.support.get(pt, 0)
        ctx = common_field(self.ctx, pt.ctx)
        target = pt.lift_to(ctx)
        for q, m in self.support.items():
            if q.lift_to(ctx) == target:
                return m
        return 0

    def lift_to(self, ctx2: FieldCtx) -> "PointDivisor":
        if ctx2 == self.ctx:
            return self
        return PointDivisor(ctx2, self.dim,
                            {pt.lift_to(ctx2): m for pt, m in self.support.items()})

    def __add__(self, other: "PointDivisor") -> "PointDivisor":
        if self.dim != other.dim:
            raise DimensionMismatch("mixed ambient spaces")
        ctx = common_field(self.ctx, other.ctx)
        a = self.lift_to(ctx)
        out = dict(a.support)
        for pt, m in other.lift_to(ctx).support.items():
            out[pt] = out.get(pt, 0) + m
        return PointDivisor(ctx, self.dim, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PointDivisor):
            return NotImplemented
        if self.dim != other.dim:
            return False
        ctx = common_field(self.ctx, other.ctx)
        return self.lift_to(ctx).support == other.lift_to(ctx).support

    def __hash__(self) -> int:
        return hash((self.ctx, self.dim, frozenset(self.support.items())))

    def to_jsonable(self) -> dict:
        return {
            "field": self.ctx.spec,
            "degree": self.degree(),
            "points": [{"coords": list(pt.encoding()), "multiplicity": m}
                       for pt, m in sorted(self.support.items(),
                                           key=lambda kv: kv[0].encoding())],
        }

    def __repr__(self) -> str:
        inner = " + ".join(f"{m}*({pt.spec_str()})"
                           for pt, m in sorted(self.support.items(),
                                               key=lambda kv: kv[0].encoding()))
        return f"Div[{inner}]"


def orbit(G: FiniteProjectivityGroup, x: ProjPoint) -> PointDivisor:
    """The formal sum over group elements of g(x).

    Each orbit point appears with multiplicity equal to the stabilizer
    order, so the divisor degree is exactly |G|.
    """
    ctx = common_field(G.ctx, x.ctx)
    counts: dict[ProjPoint, int] = {}
    for g in G.elements:
        img = g.apply(x).lift_to(ctx)
        counts[img] = counts.get(img, 0) + 1
    div = PointDivisor(ctx, x.dim, counts)
    assert div.degree() == len(G)
    return div
