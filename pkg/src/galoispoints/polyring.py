"""Sparse multivariate polynomial arithmetic over a finite field context.

Polynomials are maps from exponent vectors (length 1..3) to nonzero field
elements, immutable by convention, over exactly one :class:`~galoispoints.gf.FieldCtx`.
The module provides the computational substrate used everywhere else:

* ring arithmetic, substitution/composition, homogenization,
* univariate factorization (squarefree decomposition, then distinct-degree,
  then randomized equal-degree splitting with deterministic seed threading),
* root extraction over the smallest sufficient splitting extension,
* resultants by subresultant polynomial remainder sequences, with a literal
  Sylvester-matrix determinant kept alongside as an independent oracle,
* gcds and exact division in one to three variables (primitive PRS).

Coefficients are stored as raw representation tuples; FqElement wrappers
appear only at the public boundary.  The resultant convention follows the
text form used throughout the toolkit::

    resultant(f, g, var) == det(sylvester_matrix(f, g, var))

which for univariate f, g equals ``lc(g)^deg(f) * prod f(beta)`` over the
roots beta of g.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import ExtensionCapExceeded, IncompatibleFields, ZeroInput
from .gf import FieldCtx, FqElement, embed, lift, make_field

_VAR_NAMES = ("x", "y", "z")


class Polynomial:
    """A sparse polynomial in 1..3 variables over one field context."""

    __slots__ = ("ctx", "nvars", "terms", "_hash")

    def __init__(self, ctx: FieldCtx, nvars: int, terms: dict):
        # terms: exponent tuple -> raw nonzero rep; internal constructor,
        # callers must pass reduced data (use from_terms for safety)
        self.ctx = ctx
        self.nvars = nvars
        self.terms = terms
        self._hash: Optional[int] = None

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, ctx: FieldCtx, nvars: int) -> "Polynomial":
        return cls(ctx, nvars, {})

    @classmethod
    def const(cls, ctx: FieldCtx, nvars: int, value) -> "Polynomial":
        rep = ctx.element(value).rep
        if not any(rep):
            return cls(ctx, nvars, {})
        return cls(ctx, nvars, {(0,) * nvars: rep})

    @classmethod
    def variable(cls, ctx: FieldCtx, nvars: int, index: int) -> "Polynomial":
        if not 0 <= index < nvars:
            raise ValueError("variable index out of range")
        exp = tuple(1 if i == index else 0 for i in range(nvars))
        return cls(ctx, nvars, {exp: ctx.one_t})

    @classmethod
    def from_terms(cls, ctx: FieldCtx, nvars: int, data: dict) -> "Polynomial":
        terms = {}
        for exp, coeff in data.items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent vector {exp}")
            rep = ctx.element(coeff).rep
            if any(rep):
                terms[exp] = rep
        return cls(ctx, nvars, terms)

    @classmethod
    def from_dense(cls, ctx: FieldCtx, reps: Sequence) -> "Polynomial":
        """Univariate polynomial from an ascending coefficient list."""
        terms = {}
        for i, rep in enumerate(reps):
            if isinstance(rep, FqElement):
                rep = rep.rep
            if any(rep):
                terms[(i,)] = tuple(rep)
        return cls(ctx, 1, terms)

    # -- basic queries ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, var: int) -> int:
        if not self.terms:
            return -1
        return max(e[var] for e in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def coefficient(self, exp: Sequence[int]) -> FqElement:
        rep = self.terms.get(tuple(exp))
        if rep is None:
            return self.ctx.zero
        return FqElement(self.ctx, rep)

    def leading_term(self) -> tuple[tuple[int, ...], FqElement]:
        """Graded-lex leading term (highest total degree, then lex)."""
        if not self.terms:
            raise ZeroInput("zero polynomial has no leading term")
        exp = max(self.terms, key=lambda e: (sum(e), e))
        return exp, FqElement(self.ctx, self.terms[exp])

    def iter_terms(self):
        for exp, rep in self.terms.items():
            yield exp, FqElement(self.ctx, rep)

    # -- ring operations ----------------------------------------------------

    def _check(self, other: "Polynomial"):
        if self.ctx != other.ctx or self.nvars != other.nvars:
            raise IncompatibleFields("polynomials live in different rings")

    def __add__(self, other):
        if isinstance(other, int):
            # integers coerce through Z -> F_q, not as encodings
            other = Polynomial.const(self.ctx, self.nvars, other % self.ctx.p)
        if isinstance(other, FqElement):
            other = Polynomial.const(self.ctx, self.nvars, other)
        self._check(other)
        ctx = self.ctx
        out = dict(self.terms)
        for exp, rep in other.terms.items():
            cur = out.get(exp)
            if cur is None:
                out[exp] = rep
            else:
                s = ctx.add_t(cur, rep)
                if any(s):
                    out[exp] = s
                else:
                    del out[exp]
        return Polynomial(ctx, self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        ctx = self.ctx
        return Polynomial(ctx, self.nvars,
                          {e: ctx.neg_t(r) for e, r in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = Polynomial.const(self.ctx, self.nvars, other % self.ctx.p)
        if isinstance(other, FqElement):
            other = Polynomial.const(self.ctx, self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, FqElement)):
            if isinstance(other, int):
                other %= self.ctx.p
            rep = self.ctx.element(other).rep
            if not any(rep):
                return Polynomial.zero(self.ctx, self.nvars)
            ctx = self.ctx
            return Polynomial(ctx, self.nvars,
                              {e: ctx.mul_t(r, rep) for e, r in self.terms.items()})
        self._check(other)
        ctx = self.ctx
        out: dict = {}
        for e1, r1 in self.terms.items():
            for e2, r2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                prod = ctx.mul_t(r1, r2)
                cur = out.get(exp)
                if cur is None:
                    out[exp] = prod
                else:
                    s = ctx.add_t(cur, prod)
                    if any(s):
                        out[exp] = s
                    else:
                        del out[exp]
        return Polynomial(ctx, self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Polynomial.const(self.ctx, self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (self.ctx == other.ctx and self.nvars == other.nvars
                and self.terms == other.terms)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ctx, self.nvars,
                               frozenset(self.terms.items())))
        return self._hash

    def scale(self, c) -> "Polynomial":
        return self * c

    def monic(self) -> "Polynomial":
        """Divide by the graded-lex leading coefficient."""
        if self.is_zero:
            return self
        _, lc = self.leading_term()
        return self * lc.inverse()

    # -- calculus and substitution ----------------------------------------------

    def derivative(self, var: int) -> "Polynomial":
        ctx = self.ctx
        out: dict = {}
        for exp, rep in self.terms.items():
            e = exp[var]
            if e == 0:
                continue
            c = ctx.smul_t(e, rep)
            if not any(c):
                continue
            nexp = exp[:var] + (e - 1,) + exp[var + 1:]
            cur = out.get(nexp)
            if cur is None:
                out[nexp] = c
            else:
                s = ctx.add_t(cur, c)
                if any(s):
                    out[nexp] = s
                else:
                    del out[nexp]
        return Polynomial(ctx, self.nvars, out)

    def lift_to(self, ctx2: FieldCtx) -> "Polynomial":
        """Embed all coefficients into an extension context."""
        if ctx2 == self.ctx:
            return self
        out = {}
        for exp, rep in self.terms.items():
            out[exp] = embed(self.ctx, ctx2, FqElement(self.ctx, rep)).rep
        return Polynomial(ctx2, self.nvars, out)

    def evaluate(self, vals: Sequence[FqElement]) -> FqElement:
        """Evaluate at a point; the values' context must contain self.ctx."""
        if len(vals) != self.nvars:
            raise ValueError("wrong number of values")
        ectx = vals[0].ctx
        f = self.lift_to(ectx) if ectx != self.ctx else self
        pow_cache: list[dict[int, tuple]] = [{} for _ in range(self.nvars)]

        def vpow(i: int, e: int):
            cache = pow_cache[i]
            got = cache.get(e)
            if got is None:
                got = ectx.pow_t(vals[i].rep, e)
                cache[e] = got
            return got

        acc = ectx.zero_t
        for exp, rep in f.terms.items():
            term = rep
            for i, e in enumerate(exp):
                if e:
                    term = ectx.mul_t(term, vpow(i, e))
            acc = ectx.add_t(acc, term)
        return FqElement(ectx, acc)

    def compose(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Substitute images[i] for variable i (all in one target ring)."""
        if len(images) != self.nvars:
            raise ValueError("wrong number of images")
        tgt = images[0]
        f = self.lift_to(tgt.ctx) if tgt.ctx != self.ctx else self
        one = Polynomial.const(tgt.ctx, tgt.nvars, 1)
        pow_cache: list[dict[int, Polynomial]] = [{0: one} for _ in images]

        def ipow(i: int, e: int) -> Polynomial:
            cache = pow_cache[i]
            if e not in cache:
                half = ipow(i, e // 2)
                sq = half * half
                cache[e] = sq * images[i] if e & 1 else sq
            return cache[e]

        acc = Polynomial.zero(tgt.ctx, tgt.nvars)
        for exp, rep in f.terms.items():
            term = Polynomial.const(tgt.ctx, tgt.nvars, FqElement(tgt.ctx, rep))
            for i, e in enumerate(exp):
                if e:
                    term = term * ipow(i, e)
            acc = acc + term
        return acc

    def substitute(self, var: int, image: "Polynomial") -> "Polynomial":
        images = [Polynomial.variable(image.ctx, image.nvars, i)
                  if i != var else image for i in range(self.nvars)]
        if image.nvars != self.nvars:
            raise ValueError("image must have the same number of variables")
        return self.compose(images)

    def partial_evaluate(self, var: int, value: FqElement) -> "Polynomial":
        """Fix one variable to a field value; drops that variable."""
        ectx = value.ctx
        f = self.lift_to(ectx) if ectx != self.ctx else self
        out: dict = {}
        pw: dict[int, tuple] = {}

        def vpow(e):
            if e not in pw:
                pw[e] = ectx.pow_t(value.rep, e)
            return pw[e]

        for exp, rep in f.terms.items():
            e = exp[var]
            c = ectx.mul_t(rep, vpow(e)) if e else rep
            if not any(c):
                continue
            nexp = exp[:var] + exp[var + 1:]
            cur = out.get(nexp)
            if cur is None:
                out[nexp] = c
            else:
                s = ectx.add_t(cur, c)
                if any(s):
                    out[nexp] = s
                else:
                    del out[nexp]
        return Polynomial(ectx, self.nvars - 1, out)

    def homogenize(self) -> "Polynomial":
        """Bivariate f(x, y) -> trivariate form z^d f(x/z, y/z)."""
        if self.nvars != 2:
            raise ValueError("homogenize expects a bivariate polynomial")
        d = self.degree()
        out = {}
        for (a, b), rep in self.terms.items():
            out[(a, b, d - a - b)] = rep
        return Polynomial(self.ctx, 3, out)

    def dehomogenize(self, var: int) -> "Polynomial":
        """Set one variable to 1 and drop it."""
        ctx = self.ctx
        out: dict = {}
        for exp, rep in self.terms.items():
            nexp = exp[:var] + exp[var + 1:]
            cur = out.get(nexp)
            if cur is None:
                out[nexp] = rep
            else:
                s = ctx.add_t(cur, rep)
                if any(s):
                    out[nexp] = s
                else:
                    del out[nexp]
        return Polynomial(ctx, self.nvars - 1, out)

    # -- univariate dense view --------------------------------------------------

    def to_dense(self) -> list:
        if self.nvars != 1:
            raise ValueError("dense view is univariate only")
        d = self.degree()
        out = [self.ctx.zero_t] * (d + 1)
        for (e,), rep in self.terms.items():
            out[e] = rep
        return out

    # -- text form -----------------------------------------------------------------

    def to_text(self) -> str:
        """Canonical text: terms "c*x^a*y^b*z^c" joined by "+", graded-lex
        descending, coefficients as base-p integer encodings."""
        if not self.terms:
            return "0"
        names = _VAR_NAMES[:self.nvars]
        items = sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]),
                       reverse=True)
        pieces = []
        for exp, rep in items:
            factors = [str(self.ctx.encode(rep))]
            factors += [f"{n}^{e}" for n, e in zip(names, exp)]
            pieces.append("*".join(factors))
        return "+".join(pieces)

    def __repr__(self) -> str:
        return f"Poly({self.to_text()} over {self.ctx!r})"


def parse_poly(text: str, ctx: FieldCtx, nvars: int) -> Polynomial:
    """Parse the canonical text form (tolerates omitted exponents/coefficients)."""
    from .errors import InputError
    names = _VAR_NAMES[:nvars]
    text = text.replace(" ", "").replace("-", "+-")
    if not text:
        raise InputError("empty polynomial text")
    terms: dict = {}
    for raw in text.split("+"):
        if not raw:
            continue
        neg = raw.startswith("-")
        if neg:
            raw = raw[1:]
        coeff = 1
        exp = [0] * nvars
        for factor in raw.split("*"):
            if not factor:
                raise InputError(f"empty factor in term {raw!r}")
            if factor[0].isdigit():
                try:
                    coeff = coeff * int(factor)
                except ValueError:
                    raise InputError(f"bad coefficient {factor!r}") from None
                continue
            name, _, e = factor.partition("^")
            if name not in names:
                raise InputError(f"unknown variable {name!r} in {raw!r}")
            try:
                exp[names.index(name)] += int(e) if e else 1
            except ValueError:
                raise InputError(f"bad exponent in {factor!r}") from None
        try:
            c = ctx.element(coeff)
        except ValueError:
            raise InputError(
                f"coefficient {coeff} out of range for {ctx.spec}") from None
        if neg:
            c = -c
        key = tuple(exp)
        prev = terms.get(key, ctx.zero)
        terms[key] = prev + c
    return Polynomial.from_terms(ctx, nvars, terms)


# ---------------------------------------------------------------------------
# Dense univariate helpers (lists of raw reps, ascending degree)
# ---------------------------------------------------------------------------

def _u_trim(a: list) -> list:
    while a and not any(a[-1]):
        a.pop()
    return a


def _u_deg(a: list) -> int:
    return len(a) - 1


def _u_add(ctx, a, b):
    n = max(len(a), len(b))
    z = ctx.zero_t
    a = a + [z] * (n - len(a))
    b = b + [z] * (n - len(b))
    return _u_trim([ctx.add_t(x, y) for x, y in zip(a, b)])


def _u_sub(ctx, a, b):
    n = max(len(a), len(b))
    z = ctx.zero_t
    a = a + [z] * (n - len(a))
    b = b + [z] * (n - len(b))
    return _u_trim([ctx.sub_t(x, y) for x, y in zip(a, b)])


def _u_mul(ctx, a, b):
    if not a or not b:
        return []
    z = ctx.zero_t
    out = [z] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if any(ai):
            for j, bj in enumerate(b):
                if any(bj):
                    out[i + j] = ctx.add_t(out[i + j], ctx.mul_t(ai, bj))
    return _u_trim(out)


def _u_smul(ctx, c, a):
    if not any(c):
        return []
    return _u_trim([ctx.mul_t(c, x) for x in a])


def _u_divmod(ctx, a, b):
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    inv = ctx.inv_t(b[-1])
    q = [ctx.zero_t] * max(len(a) - len(b) + 1, 1)
    rem = a[:]
    db = len(b) - 1
    while rem and len(rem) - 1 >= db:
        c = ctx.mul_t(rem[-1], inv)
        off = len(rem) - 1 - db
        if any(c):
            q[off] = c
            for i, bi in enumerate(b):
                if any(bi):
                    rem[off + i] = ctx.sub_t(rem[off + i], ctx.mul_t(c, bi))
        rem.pop()
    return _u_trim(q), _u_trim(rem)


def _u_monic(ctx, a):
    if not a:
        return a
    inv = ctx.inv_t(a[-1])
    return [ctx.mul_t(inv, x) for x in a]


def _u_gcd(ctx, a, b):
    a, b = a[:], b[:]
    while b:
        _, r = _u_divmod(ctx, a, b)
        a, b = b, r
    return _u_monic(ctx, a)


def _u_powmod(ctx, a, e, m):
    result = [ctx.one_t]
    _, base = _u_divmod(ctx, a, m)
    while e:
        if e & 1:
            _, result = _u_divmod(ctx, _u_mul(ctx, result, base), m)
        base_sq = _u_mul(ctx, base, base)
        _, base = _u_divmod(ctx, base_sq, m)
        e >>= 1
    return result


def _u_diff(ctx, a):
    return _u_trim([ctx.smul_t(i, a[i]) for i in range(1, len(a))])


def _u_eval(ctx, a, x_rep):
    acc = ctx.zero_t
    for c in reversed(a):
        acc = ctx.add_t(ctx.mul_t(acc, x_rep), c)
    return acc


def _u_pth_root(ctx, a):
    """Inverse Frobenius on a polynomial in x^p (exponents all divisible by p)."""
    p, k = ctx.p, ctx.k
    root_exp = p ** (k - 1)  # c -> c^(p^(k-1)) is the p-th root in F_{p^k}
    out = []
    for i in range(0, len(a), p):
        out.append(ctx.pow_t(a[i], root_exp))
    return _u_trim(out)


# ---------------------------------------------------------------------------
# Univariate factorization
# ---------------------------------------------------------------------------

def _squarefree_decomposition(ctx, f) -> list[tuple[list, int]]:
    """Monic squarefree decomposition, valid in characteristic p.

    Returns pairwise-coprime monic squarefree parts with multiplicities such
    that f = lc(f) * prod part^mult.
    """
    out: list[tuple[list, int]] = []
    p = ctx.p

    def helper(g, scale):
        if _u_deg(g) <= 0:
            return
        dg = _u_diff(ctx, g)
        if not dg:
            helper(_u_pth_root(ctx, g), scale * p)
            return
        c = _u_gcd(ctx, g, dg)
        w, _ = _u_divmod(ctx, g, c)
        i = 1
        while _u_deg(w) > 0:
            y = _u_gcd(ctx, w, c)
            z, _ = _u_divmod(ctx, w, y)
            if _u_deg(z) > 0:
                out.append((z, i * scale))
            w = y
            if _u_deg(y) > 0:
                c, _ = _u_divmod(ctx, c, y)
            i += 1
        if _u_deg(c) > 0:
            helper(_u_pth_root(ctx, c), scale * p)

    helper(_u_monic(ctx, f), 1)
    return out


def _distinct_degree(ctx, f) -> list[tuple[list, int]]:
    """Split a monic squarefree f into products of same-degree irreducibles."""
    out = []
    q = ctx.order
    h = [ctx.zero_t, ctx.one_t]  # x
    x = h[:]
    dd = 1
    while _u_deg(f) >= 2 * dd:
        h = _u_powmod(ctx, h, q, f)
        g = _u_gcd(ctx, _u_sub(ctx, h, x), f)
        if _u_deg(g) > 0:
            out.append((g, dd))
            f, _ = _u_divmod(ctx, f, g)
            _, h = _u_divmod(ctx, h, f) if f else (None, h)
        dd += 1
    if _u_deg(f) > 0:
        out.append((f, _u_deg(f)))
    return out


def _equal_degree(ctx, f, dd, rng) -> list[list]:
    """Cantor-Zassenhaus split of a monic product of degree-dd irreducibles."""
    n = _u_deg(f)
    if n == dd:
        return [f]
    q = ctx.order
    while True:
        u = [ctx.decode(rng.randrange(ctx.order)) for _ in range(n)]
        u = _u_trim(u)
        if _u_deg(u) < 1:
            continue
        g = _u_gcd(ctx, u, f)
        if 0 < _u_deg(g) < n:
            pass
        elif ctx.p == 2:
            # trace map over F_2: T(u) = u + u^2 + ... + u^(2^(k*dd - 1))
            t = u
            acc = u
            for _ in range(ctx.k * dd - 1):
                t = _u_powmod(ctx, _u_mul(ctx, t, t), 1, f)
                acc = _u_add(ctx, acc, t)
            _, acc = _u_divmod(ctx, acc, f)
            g = _u_gcd(ctx, acc, f)
            if not (0 < _u_deg(g) < n):
                continue
        else:
            e = (q ** dd - 1) // 2
            s = _u_powmod(ctx, u, e, f)
            g = _u_gcd(ctx, _u_sub(ctx, s, [ctx.one_t]), f)
            if not (0 < _u_deg(g) < n):
                continue
        rest, _ = _u_divmod(ctx, f, g)
        return _equal_degree(ctx, g, dd, rng) + _equal_degree(ctx, rest, dd, rng)


def factor_univariate(f: Polynomial, seed: int = 0) -> list[tuple[Polynomial, int]]:
    """Factor a nonzero univariate polynomial into monic irreducibles.

    Returns (factor, exponent) pairs sorted by (degree, canonical text);
    the product of factor^exponent times the unit lc(f) equals f.  The
    randomized equal-degree stage draws from ``random.Random(seed)``, so
    results are deterministic for a fixed seed.
    """
    if f.nvars != 1:
        raise ValueError("factor_univariate expects a univariate polynomial")
    if f.is_zero:
        raise ZeroInput("cannot factor the zero polynomial")
    ctx = f.ctx
    dense = f.to_dense()
    if _u_deg(dense) == 0:
        return []
    rng = random.Random(seed)
    out = []
    for part, mult in _squarefree_decomposition(ctx, dense):
        for prod, dd in _distinct_degree(ctx, part):
            for irr in _equal_degree(ctx, prod, dd, rng):
                out.append((Polynomial.from_dense(ctx, _u_monic(ctx, irr)), mult))
    out.sort(key=lambda fm: (fm[0].degree(), fm[0].to_text()))
    return out


@dataclass(frozen=True)
class RootMultiset:
    """Roots with multiplicities, over the minimal splitting extension."""

    roots: tuple  # tuple[(FqElement, int), ...]
    ext: FieldCtx

    def degree(self) -> int:
        return sum(m for _, m in self.roots)

    def support(self) -> list:
        return [r for r, _ in self.roots]


def splitting_roots(f: Polynomial, ext_cap: int = 12, seed: int = 0) -> RootMultiset:
    """All roots of a univariate f over the smallest extension where it splits.

    The extension degree is the lcm of the irreducible factor degrees; if it
    exceeds ``ext_cap`` (relative to f's own field) the search aborts.
    """
    if f.nvars != 1:
        raise ValueError("splitting_roots expects a univariate polynomial")
    if f.is_zero or f.degree() < 1:
        raise ZeroInput("need a nonconstant polynomial")
    ctx = f.ctx
    factors = factor_univariate(f, seed=seed)
    import math
    j = 1
    for irr, _ in factors:
        j = math.lcm(j, irr.degree())
    if j > ext_cap:
        raise ExtensionCapExceeded(
            f"splitting needs extension degree {j} > cap {ext_cap}")
    ectx = ctx if j == 1 else make_field(ctx.p, ctx.k * j)
    roots: list[tuple[FqElement, int]] = []
    for irr, mult in factors:
        if irr.degree() == 1:
            dense = irr.to_dense()
            root = FqElement(ctx, ctx.neg_t(dense[0]))
            roots.append((lift(root, ectx), mult))
        else:
            lifted = irr.lift_to(ectx)
            for lin, m2 in factor_univariate(lifted, seed=seed):
                if lin.degree() != 1:
                    raise ExtensionCapExceeded(
                        "internal: factor did not split in computed extension")
                dense = lin.to_dense()
                root = FqElement(ectx, ectx.neg_t(dense[0]))
                roots.append((root, mult * m2))
    roots.sort(key=lambda rm: rm[0].encoding())
    return RootMultiset(tuple(roots), ectx)


# ---------------------------------------------------------------------------
# Multivariate gcd / exact division / squarefree part
# ---------------------------------------------------------------------------

def exact_div(a: Polynomial, b: Polynomial) -> Polynomial:
    """Exact quotient a / b; raises if the division leaves a remainder."""
    if b.is_zero:
        raise ZeroDivisionError("division by zero polynomial")
    if a.is_zero:
        return a
    a._check(b)
    ctx = a.ctx
    if b.degree() == 0:
        inv = FqElement(ctx, ctx.inv_t(next(iter(b.terms.values()))))
        return a * inv
    if a.nvars == 1:
        q, r = _u_divmod(ctx, a.to_dense(), b.to_dense())
        if r:
            raise ValueError("division is not exact")
        return Polynomial.from_dense(ctx, q)
    lt_exp, lt_c = b.leading_term()
    lt_inv = lt_c.inverse()
    rem = a
    qterms: dict = {}
    while not rem.is_zero:
        rexp, rc = rem.leading_term()
        qexp = tuple(x - y for x, y in zip(rexp, lt_exp))
        if any(e < 0 for e in qexp):
            raise ValueError("division is not exact")
        qc = rc * lt_inv
        qterms[qexp] = qc.rep
        rem = rem - Polynomial(ctx, a.nvars, {qexp: qc.rep}) * b
    return Polynomial(ctx, a.nvars, qterms)


def _split_by_var(f: Polynomial, var: int) -> list[Polynomial]:
    """Coefficients of f as a polynomial in ``var`` (same ring, var-degree 0)."""
    d = f.degree_in(var)
    coeffs = [dict() for _ in range(d + 1)]
    for exp, rep in f.terms.items():
        e = exp[var]
        nexp = exp[:var] + (0,) + exp[var + 1:]
        coeffs[e][nexp] = rep
    return [Polynomial(f.ctx, f.nvars, c) for c in coeffs]


def _join_by_var(coeffs: Sequence[Polynomial], var: int, ctx, nvars) -> Polynomial:
    out: dict = {}
    for e, c in enumerate(coeffs):
        for exp, rep in c.terms.items():
            nexp = exp[:var] + (e,) + exp[var + 1:]
            out[nexp] = rep
    return Polynomial(ctx, nvars, out)


def content_in(f: Polynomial, var: int) -> Polynomial:
    """Gcd of the coefficients of f viewed as a polynomial in ``var``."""
    coeffs = _split_by_var(f, var)
    acc = Polynomial.zero(f.ctx, f.nvars)
    for c in coeffs:
        if not c.is_zero:
            acc = poly_gcd(acc, c)
    return acc


def _prem(A: list[Polynomial], B: list[Polynomial], ctx, nvars):
    """Pseudo-remainder of recursive-dense A by B: lc(B)^(dA-dB+1) A mod B."""
    dB = len(B) - 1
    lcB = B[-1]
    R = A[:]
    e = len(A) - 1 - dB + 1
    while R and len(R) - 1 >= dB:
        lead = R[-1]
        off = len(R) - 1 - dB
        R = [c * lcB for c in R]
        for i in range(dB + 1):
            R[off + i] = R[off + i] - lead * B[i]
        R.pop()
        while R and R[-1].is_zero:
            R.pop()
        e -= 1
    if e > 0 and R:
        scale = lcB ** e
        R = [c * scale for c in R]
    return R


def poly_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Gcd in up to three variables, normalized to leading coefficient 1."""
    if f.is_zero:
        return g.monic()
    if g.is_zero:
        return f.monic()
    f._check(g)
    ctx = f.ctx
    if f.degree() == 0 or g.degree() == 0:
        return Polynomial.const(ctx, f.nvars, 1)
    if f.nvars == 1:
        return Polynomial.from_dense(ctx, _u_gcd(ctx, f.to_dense(), g.to_dense()))
    # choose the last variable in which either has positive degree
    var = max(i for i in range(f.nvars)
              if f.degree_in(i) > 0 or g.degree_in(i) > 0)
    df, dg = f.degree_in(var), g.degree_in(var)
    if df == 0 or dg == 0:
        # the gcd cannot involve var; reduce through the content
        a = f if df == 0 else content_in(f, var)
        b = g if dg == 0 else content_in(g, var)
        return poly_gcd(a, b)
    cf, cg = content_in(f, var), content_in(g, var)
    pf, pg = exact_div(f, cf), exact_div(g, cg)
    A, B = _split_by_var(pf, var), _split_by_var(pg, var)
    if len(A) < len(B):
        A, B = B, A
    while True:
        R = _prem(A, B, ctx, f.nvars)
        if not R:
            gcd_pp = _join_by_var(B, var, ctx, f.nvars)
            break
        if len(R) - 1 == 0:
            gcd_pp = Polynomial.const(ctx, f.nvars, 1)
            break
        Rpoly = _join_by_var(R, var, ctx, f.nvars)
        Rpp = exact_div(Rpoly, content_in(Rpoly, var))
        A, B = B, _split_by_var(Rpp, var)
    cont = poly_gcd(cf, cg)
    result = cont * exact_div(gcd_pp, content_in(gcd_pp, var))
    return result.monic()


def _poly_pth_root(f: Polynomial) -> Polynomial:
    ctx = f.ctx
    p = ctx.p
    root_exp = p ** (ctx.k - 1)
    out = {}
    for exp, rep in f.terms.items():
        if any(e % p for e in exp):
            raise ValueError("polynomial is not a p-th power")
        out[tuple(e // p for e in exp)] = ctx.pow_t(rep, root_exp)
    return Polynomial(ctx, f.nvars, out)


def squarefree_part(f: Polynomial) -> Polynomial:
    """Product of the distinct irreducible factors of f (monic-normalized).

    Handles the inseparable case (all partials zero) by p-th-root descent.
    """
    if f.is_zero:
        raise ZeroInput("squarefree part of zero is undefined")
    if f.degree() == 0:
        return Polynomial.const(f.ctx, f.nvars, 1)
    if f.nvars == 1:
        parts = _squarefree_decomposition(f.ctx, f.to_dense())
        acc = Polynomial.const(f.ctx, 1, 1)
        for part, _ in parts:
            acc = acc * Polynomial.from_dense(f.ctx, part)
        return acc.monic()
    partials = [f.derivative(i) for i in range(f.nvars)]
    if all(d.is_zero for d in partials):
        return squarefree_part(_poly_pth_root(f))
    c = f
    for d in partials:
        if not d.is_zero:
            c = poly_gcd(c, d)
    w = exact_div(f, c).monic()           # product of factors with p-coprime mult
    r = c
    while True:
        h = poly_gcd(r, w)
        if h.degree() == 0:
            break
        r = exact_div(r, h)
    # r = product of factors with multiplicity divisible by p, full power
    if r.degree() == 0:
        return w.monic()
    return (w * squarefree_part(_poly_pth_root(r))).monic()


# ---------------------------------------------------------------------------
# Resultants
# ---------------------------------------------------------------------------

def _res_univ(ctx, A: list, B: list):
    """Standard resultant Res(A, B) for dense univariate reps over a field."""
    if not A or not B:
        return ctx.zero_t
    s_neg = False
    if _u_deg(A) < _u_deg(B):
        if (_u_deg(A) * _u_deg(B)) % 2 == 1:
            s_neg = True
        A, B = B, A
    res = ctx.one_t
    while True:
        da, db = _u_deg(A), _u_deg(B)
        if db == 0:
            res = ctx.mul_t(res, ctx.pow_t(B[0], da))
            break
        _, R = _u_divmod(ctx, A, B)
        if not R:
            return ctx.zero_t
        dr = _u_deg(R)
        res = ctx.mul_t(res, ctx.pow_t(B[-1], da - dr))
        if (da * db) % 2 == 1:
            s_neg = not s_neg
        A, B = B, R
    return ctx.neg_t(res) if s_neg else res


def _res_multi(A: list[Polynomial], B: list[Polynomial], ctx, nvars) -> Polynomial:
    """Standard resultant by the subresultant PRS over the coefficient ring."""
    one = Polynomial.const(ctx, nvars, 1)
    sign = 1
    dA, dB = len(A) - 1, len(B) - 1
    if dA < dB:
        if (dA * dB) % 2 == 1:
            sign = -sign
        A, B = B, A
        dA, dB = dB, dA
    if dB == 0:
        res = B[0] ** dA if dA > 0 else one
        return res if sign == 1 else -res
    g = one
    h = one
    while True:
        dA, dB = len(A) - 1, len(B) - 1
        delta = dA - dB
        if (dA % 2 == 1) and (dB % 2 == 1):
            sign = -sign
        R = _prem(A, B, ctx, nvars)
        A = B
        denom = g * h ** delta
        B = [exact_div(c, denom) for c in R] if R else []
        g = A[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = exact_div(g ** delta, h ** (delta - 1))
        if not B:
            return Polynomial.zero(ctx, nvars)
        if len(B) - 1 == 0:
            break
    dA = len(A) - 1
    lcB = B[0]
    if dA == 1:
        res = lcB
    else:
        res = exact_div(lcB ** dA, h ** (dA - 1))
    return res if sign == 1 else -res


def resultant(f: Polynomial, g: Polynomial, var: int = 0) -> Polynomial:
    """Resultant of f and g with respect to one variable.

    Zero iff f and g share a factor of positive degree in ``var``; equal to
    ``det(sylvester_matrix(f, g, var))``.  For univariate inputs the result
    is a constant polynomial.
    """
    if f.is_zero or g.is_zero:
        raise ZeroInput("resultant of zero polynomial")
    f._check(g)
    ctx = f.ctx
    if f.degree_in(var) == 0 and g.degree_in(var) == 0:
        return Polynomial.const(ctx, f.nvars, 1)
    if f.nvars == 1:
        rep = _res_univ(ctx, g.to_dense(), f.to_dense())
        return Polynomial(ctx, 1, {(0,): rep} if any(rep) else {})
    A = _split_by_var(g, var)
    B = _split_by_var(f, var)
    return _res_multi(A, B, ctx, f.nvars)


def sylvester_matrix(f: Polynomial, g: Polynomial, var: int = 0) -> list[list[Polynomial]]:
    """The Sylvester matrix whose determinant equals resultant(f, g, var).

    Rows: deg_var(f) shifted copies of g's coefficient vector followed by
    deg_var(g) shifted copies of f's (descending powers of var).
    """
    if f.is_zero or g.is_zero:
        raise ZeroInput("Sylvester matrix of zero polynomial")
    f._check(g)
    m = f.degree_in(var)
    n = g.degree_in(var)
    size = m + n
    if size == 0:
        return [[Polynomial.const(f.ctx, f.nvars, 1)]]
    gc = list(reversed(_split_by_var(g, var)))  # descending
    fc = list(reversed(_split_by_var(f, var)))
    zero = Polynomial.zero(f.ctx, f.nvars)
    rows = []
    for i in range(m):
        row = [zero] * size
        for j, c in enumerate(gc):
            row[i + j] = c
        rows.append(row)
    for i in range(n):
        row = [zero] * size
        for j, c in enumerate(fc):
            row[i + j] = c
        rows.append(row)
    return rows


def determinant(matrix: list[list[Polynomial]]) -> Polynomial:
    """Cofactor-expansion determinant over the polynomial ring (test oracle)."""
    n = len(matrix)
    if n == 1:
        return matrix[0][0]
    first = matrix[0][0]
    ctx, nvars = first.ctx, first.nvars
    acc = Polynomial.zero(ctx, nvars)
    for j in range(n):
        entry = matrix[0][j]
        if entry.is_zero:
            continue
        minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
        sub = determinant(minor)
        term = entry * sub
        acc = acc + (term if j % 2 == 0 else -term)
    return acc
