import random

import pytest

from galoispoints.config import RunConfig
from galoispoints.curve import curve_from_affine, pencil_parametrization, singular_points
from galoispoints.errors import (
    BruteCapExceeded,
    CenterSingular,
    MissingParametrization,
)
from galoispoints.galois import (
    central_collineation_group,
    deck_group,
    fiber_polynomial,
    is_galois_point,
    monte_carlo_galois,
)
from galoispoints.gf import FqElement, make_field
from galoispoints.polyring import Polynomial, factor_univariate
from galoispoints.projective import ProjPoint, Projectivity, identify_group, point_p1
from galoispoints.ratfunc import RationalMap1D


@pytest.fixture(scope="module")
def cubic3a(F13):
    x = Polynomial.variable(F13, 2, 0)
    y = Polynomial.variable(F13, 2, 1)
    return curve_from_affine(y * y * x + (x + 1) ** 2 * (x - 8))


@pytest.fixture(scope="module")
def cubic3a_param(cubic3a):
    (pt, _), = singular_points(cubic3a).points
    return pencil_parametrization(cubic3a, pt)


class TestFiberPolynomial:
    def test_outer_fiber_of_cubic(self, cubic3a, F13):
        # from (1:0:0): s^3 - 6 s^2 + (t^2 - 15) s - 8
        fib = fiber_polynomial(cubic3a, ProjPoint(F13, [1, 0, 0]))
        assert not fib.inner and fib.degree == 3
        expect = Polynomial.from_terms(
            F13, 2, {(0, 3): 1, (0, 2): -6, (2, 1): 1, (0, 1): -15, (0, 0): -8})
        assert fib.poly == expect

    def test_inner_fiber_degree_drop(self, cubic3a, F13):
        fib = fiber_polynomial(cubic3a, ProjPoint(F13, [0, 1, 0]))
        assert fib.inner and fib.degree == 2

    def test_conic_degree_one(self, F13):
        x = Polynomial.variable(F13, 2, 0)
        y = Polynomial.variable(F13, 2, 1)
        conic = curve_from_affine(x - y * y)
        fib = fiber_polynomial(conic, ProjPoint(F13, [0, 0, 1]))
        assert fib.inner and fib.degree == 1

    def test_singular_center_raises(self, cubic3a, F13):
        with pytest.raises(CenterSingular):
            fiber_polynomial(cubic3a, ProjPoint(F13, [-1, 0, 1]))


class TestMonteCarlo:
    def test_thm2_probably_galois(self):
        F11 = make_field(11)
        x = Polynomial.variable(F11, 2, 0)
        y = Polynomial.variable(F11, 2, 1)
        C = curve_from_affine(x ** 4 + y ** 5 + 1)
        fib = fiber_polynomial(C, ProjPoint(F11, [0, 1, 0]))
        rep = monte_carlo_galois(fib, trials=32, seed=0)
        assert rep.verdict == "probably_galois"

    def test_generic_cubic_refuted_with_witness(self, F7):
        x = Polynomial.variable(F7, 2, 0)
        y = Polynomial.variable(F7, 2, 1)
        C = curve_from_affine(y * y * x + x ** 3 + x + 1)
        fib = fiber_polynomial(C, ProjPoint(F7, [1, 0, 0]))
        rep = monte_carlo_galois(fib, trials=64, seed=0)
        assert rep.verdict == "certified_not_galois"
        w = rep.witness
        # independent re-factorization of the witness specialization
        k = int(w["field"].split("^")[1]) if "^" in w["field"] else 1
        ectx = make_field(7, k)
        t0 = FqElement(ectx, ectx.decode(w["t0"]))
        spec = fib.poly.partial_evaluate(0, t0)
        degs = sorted(f.degree() for f, _ in factor_univariate(spec, seed=991))
        assert degs == w["factor_degrees"]
        assert len(set(degs)) >= 2

    def test_all_specializations_ramified(self, F4):
        # y^2 - x in characteristic 2, projected from the outer point
        # (0:1:0): every fiber s^2 = t is inseparable
        from galoispoints.errors import AllSpecializationsRamified
        x = Polynomial.variable(F4, 2, 0)
        y = Polynomial.variable(F4, 2, 1)
        C = curve_from_affine(y * y - x)
        fib = fiber_polynomial(C, ProjPoint(F4, [0, 1, 0]))
        assert fib.degree == 2 and not fib.inner
        with pytest.raises(AllSpecializationsRamified):
            monte_carlo_galois(fib, trials=12, seed=0)

    def test_degree_one_trivially_probable(self, F13):
        x = Polynomial.variable(F13, 2, 0)
        y = Polynomial.variable(F13, 2, 1)
        conic = curve_from_affine(x - y * y)
        fib = fiber_polynomial(conic, ProjPoint(F13, [0, 0, 1]))
        rep = monte_carlo_galois(fib, trials=4, seed=0)
        assert rep.verdict == "probably_galois"


class TestCentralCollineations:
    def test_cubic_inner_order_two(self, cubic3a, F13):
        G = central_collineation_group(cubic3a, ProjPoint(F13, [0, 1, 0]))
        assert len(G) == 2
        mats = sorted(g.row_major() for g in G.elements)
        assert mats == [[1, 0, 0, 0, 1, 0, 0, 0, 1],
                        [1, 0, 0, 0, 12, 0, 0, 0, 1]]  # y -> -y

    def test_thm2_d5_outer_cyclic_five(self):
        F11 = make_field(11)
        x = Polynomial.variable(F11, 2, 0)
        y = Polynomial.variable(F11, 2, 1)
        C = curve_from_affine(x ** 4 + y ** 5 + 1)
        G = central_collineation_group(C, ProjPoint(F11, [0, 1, 0]))
        assert len(G) == 5
        assert identify_group(G).tag == "cyclic"

    def test_random_curve_only_identity(self, F7):
        x = Polynomial.variable(F7, 2, 0)
        y = Polynomial.variable(F7, 2, 1)
        C = curve_from_affine(y * y * x + x ** 3 + x + 1)
        G = central_collineation_group(C, ProjPoint(F7, [1, 0, 0]),
                                       mode="brute", cfg=RunConfig(brute_q_cap=7))
        assert len(G) == 1

    def test_exact_and_brute_agree(self, cubic3a, F13):
        cfg = RunConfig(brute_q_cap=13)
        P = ProjPoint(F13, [0, 1, 0])
        exact = central_collineation_group(cubic3a, P, mode="exact", cfg=cfg)
        brute = central_collineation_group(cubic3a, P, mode="brute", cfg=cfg)
        assert {tuple(g.row_major()) for g in exact.elements} == \
               {tuple(g.row_major()) for g in brute.elements}

    def test_brute_cap(self, cubic3a, F13):
        with pytest.raises(BruteCapExceeded):
            central_collineation_group(cubic3a, ProjPoint(F13, [0, 1, 0]),
                                       mode="brute", cfg=RunConfig(brute_q_cap=5))

    def test_soundness_order_bounded_by_degree(self, F7):
        rng = random.Random(17)
        from props import _random_reduced_curve
        done = 0
        while done < 10:
            C = _random_reduced_curve(rng, F7, 3)
            pt = ProjPoint(F7, [1, 0, 0])
            if C.contains(pt):
                continue
            fib = fiber_polynomial(C, pt)
            try:
                G = central_collineation_group(C, pt, cfg=RunConfig(seed=done))
            except Exception:
                continue
            assert len(G) <= fib.degree
            done += 1


class TestDeckGroup:
    def test_monomial(self, F13):
        t = RationalMap1D.variable(F13)
        h = t * t * t
        G = deck_group(h)
        assert len(G) == 3 and identify_group(G).tag == "cyclic"
        hw = h.lift_to(G.ctx)
        for sigma in G.elements:
            assert hw.compose_mobius(sigma) == hw

    def test_t_plus_inverse(self, F13):
        t = RationalMap1D.variable(F13)
        h = t + t.reciprocal()
        G = deck_group(h)
        assert len(G) == 2
        nontrivial = [g for g in G.elements
                      if g != Projectivity.identity(G.ctx, 2)]
        # the nontrivial element is t -> 1/t
        assert nontrivial[0].row_major() in ([0, 1, 1, 0],)

    def test_invariant_generator_roundtrip(self, F13):
        from galoispoints.embedder import invariant_generator
        from galoispoints.projective import generate_group
        klein = generate_group([Projectivity(F13, [[-1, 0], [0, 1]]),
                                Projectivity(F13, [[0, 1], [1, 0]])])
        f = invariant_generator(klein, point_p1(F13, 3))
        G = deck_group(f)
        assert len(G) == 4
        from galoispoints.gf import common_field
        ctx = common_field(G.ctx, klein.ctx)
        assert {g.lift_to(ctx).mat for g in G.elements} == \
            {g.lift_to(ctx).mat for g in klein.elements}

    def test_closure_verified(self, F13):
        t = RationalMap1D.variable(F13)
        G = deck_group(t ** 4)
        assert G.is_closed()


class TestIsGaloisPoint:
    def test_cubic_inner_certified(self, cubic3a, F13):
        rep = is_galois_point(cubic3a, ProjPoint(F13, [0, 1, 0]))
        assert rep.verdict == "certified_galois"
        assert rep.point_class == "inner"
        assert len(rep.group) == 2 and rep.method == "collineation"

    def test_cubic_outer_deck_certified(self, cubic3a, cubic3a_param, F13):
        rep = is_galois_point(cubic3a, ProjPoint(F13, [1, 0, 0]),
                              strategy="deck", parametrization=cubic3a_param)
        assert rep.verdict == "certified_galois"
        assert rep.point_class == "outer"
        assert len(rep.group) == 3
        assert rep.descriptor.tag == "cyclic"

    def test_smooth_quartic_generic_point_refuted(self, F13):
        x = Polynomial.variable(F13, 2, 0)
        y = Polynomial.variable(F13, 2, 1)
        C = curve_from_affine(x ** 3 + y ** 4 + 1)
        rep = is_galois_point(C, ProjPoint(F13, [1, 1, 1]),
                              cfg=RunConfig(trials=64))
        assert rep.verdict == "certified_not_galois"

    def test_deck_without_param_raises(self, cubic3a, F13):
        with pytest.raises(MissingParametrization):
            is_galois_point(cubic3a, ProjPoint(F13, [1, 0, 0]), strategy="deck")

    def test_forced_monte_carlo(self, cubic3a, F13):
        rep = is_galois_point(cubic3a, ProjPoint(F13, [0, 1, 0]),
                              strategy="monte_carlo", cfg=RunConfig(trials=16))
        assert rep.verdict == "probably_galois"
        assert rep.method == "monte_carlo"


class TestAgreement:
    """All applicable methods agree on the family curves: a collineation
    certificate coexists with a deck certificate of the same order, and
    Monte Carlo produces no witness in 256 trials."""

    def test_thm3_cubic_all_methods(self, cubic3a, cubic3a_param, F13):
        P = ProjPoint(F13, [0, 1, 0])
        col = is_galois_point(cubic3a, P, strategy="collineation")
        deck = is_galois_point(cubic3a, P, strategy="deck",
                               parametrization=cubic3a_param)
        assert col.verdict == deck.verdict == "certified_galois"
        assert len(col.group) == len(deck.group) == 2
        mc = is_galois_point(cubic3a, P, strategy="monte_carlo",
                             cfg=RunConfig(trials=256))
        assert mc.verdict == "probably_galois"

    def test_thm3_cubic_outer_deck_vs_mc(self, cubic3a, cubic3a_param, F13):
        Q = ProjPoint(F13, [1, 0, 0])
        deck = is_galois_point(cubic3a, Q, strategy="deck",
                               parametrization=cubic3a_param)
        assert deck.verdict == "certified_galois" and len(deck.group) == 3
        mc = is_galois_point(cubic3a, Q, strategy="monte_carlo",
                             cfg=RunConfig(trials=256))
        assert mc.verdict == "probably_galois"

    def test_thm3_quartic_and_prop4_methods_agree(self, F13, F4):
        from galoispoints.families import FamilySpec, build_family
        for spec in (FamilySpec(tag="thm3_quartic", field="13^1"),
                     FamilySpec(tag="prop4", field="2^2", p=2, e=2)):
            curve, exp = build_family(spec)
            col = is_galois_point(curve, exp.P, strategy="collineation")
            deck = is_galois_point(curve, exp.P, strategy="deck",
                                   parametrization=exp.parametrization)
            assert col.verdict == deck.verdict == "certified_galois"
            assert len(col.group) == len(deck.group) == exp.inner_order
            mc_in = is_galois_point(curve, exp.P, strategy="monte_carlo",
                                    cfg=RunConfig(trials=256))
            assert mc_in.verdict == "probably_galois"
            deck_out = is_galois_point(curve, exp.Q, strategy="deck",
                                       parametrization=exp.parametrization)
            assert deck_out.verdict == "certified_galois"
            assert len(deck_out.group) == exp.outer_order
            mc_out = is_galois_point(curve, exp.Q, strategy="monte_carlo",
                                     cfg=RunConfig(trials=256))
            assert mc_out.verdict == "probably_galois"

    def test_lemma_line_b_inner_group_fixes_P(self, cubic3a, cubic3a_param, F13):
        # for certified inner+outer with a (semi)direct joint structure,
        # every nontrivial inner deck element fixes the parameter of P
        from galoispoints.embedder import projective_triple
        P = ProjPoint(F13, [0, 1, 0])
        inner = is_galois_point(cubic3a, P, strategy="deck",
                                parametrization=cubic3a_param)
        x_t, y_t = cubic3a_param
        triple = projective_triple(x_t, y_t)
        from galoispoints.embedder import evaluate_triple
        # preimage of P: scan P^1(F_13) plus infinity
        pre = []
        for code in range(13):
            tpt = point_p1(F13, code)
            if evaluate_triple(triple, tpt) == P:
                pre.append(tpt)
        inf = point_p1(F13, infinity=True)
        if evaluate_triple(triple, inf).lift_to(F13) == P:
            pre.append(inf)
        assert len(pre) == 1  # P is smooth: a unique place above it
        for sigma in inner.group.elements:
            assert sigma.apply(pre[0].lift_to(sigma.ctx)) == \
                pre[0].lift_to(sigma.ctx)
