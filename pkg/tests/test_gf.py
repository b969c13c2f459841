import pytest
from hypothesis import given, settings, strategies as st

from galoispoints.errors import IncompatibleFields, NonPrimeCharacteristic, PDividesN
from galoispoints.gf import (
    FieldCtx,
    common_field,
    embed,
    make_field,
    multiplicative_generator,
    nth_root_of_unity,
    parse_field_spec,
)

import props


class TestMakeField:
    def test_prime_field_convention(self):
        F7 = make_field(7, 1)
        assert F7.modulus == (0, 1)
        assert F7.order == 7

    def test_f4_modulus_is_x2_x_1(self):
        # brute-force check: neither 0 nor 1 is a root of x^2 + x + 1
        F4 = make_field(2, 2)
        assert F4.modulus == (1, 1, 1)
        for c in (0, 1):
            assert (c * c + c + 1) % 2 == 1

    def test_f169_unit_group_exponent(self):
        # exhaustive: every nonzero a satisfies a^168 = 1
        F = make_field(13, 2)
        for a in F.elements():
            if a:
                assert a ** 168 == F.one

    def test_composite_characteristic_rejected(self):
        with pytest.raises(NonPrimeCharacteristic):
            make_field(12, 1)

    def test_reducible_modulus_rejected(self):
        from galoispoints.errors import IrreducibleSearchExhausted
        with pytest.raises(IrreducibleSearchExhausted):
            FieldCtx(2, 2, (0, 0, 1))  # x^2 is reducible

    def test_field_identity(self):
        assert make_field(7, 2) is make_field(7, 2)
        assert make_field(7, 2) == make_field(7, 2)
        assert make_field(7, 2) != make_field(7, 3)


class TestArithmetic:
    def test_inverse_and_division(self, F13):
        F = make_field(13, 2)
        for code in (1, 5, 100, 168):
            a = F.element(code)
            assert a * a.inverse() == F.one
            assert (a / a) == F.one

    def test_zero_inverse_raises(self, F7):
        with pytest.raises(ZeroDivisionError):
            F7.zero.inverse()

    @given(st.integers(0, 168), st.integers(0, 168))
    @settings(max_examples=200, deadline=None)
    def test_ring_laws(self, x, y):
        F = make_field(13, 2)
        a, b = F.element(x), F.element(y)
        assert a + b == b + a
        assert a * b == b * a
        assert a * (b + F.one) == a * b + a
        assert (a - b) + b == a

    def test_encoding_roundtrip(self):
        F = make_field(3, 3)
        for code in range(27):
            assert F.element(code).encoding() == code


class TestRootsOfUnity:
    def test_order_3_in_f7(self, F7):
        z = nth_root_of_unity(F7, 3)
        assert z.rep[0] in (2, 4)
        assert z ** 3 == F7.one and z != F7.one

    def test_absent_when_not_dividing(self, F7):
        assert nth_root_of_unity(F7, 5) is None

    def test_primitive_root_of_f13(self, F13):
        z = nth_root_of_unity(F13, 12)
        assert z.multiplicative_order() == 12

    def test_p_divides_n_raises(self, F7):
        with pytest.raises(PDividesN):
            nth_root_of_unity(F7, 14)

    def test_deterministic(self, F13):
        assert nth_root_of_unity(F13, 4) == nth_root_of_unity(F13, 4)


class TestEmbed:
    def test_prime_subfield_constant(self):
        F5, F25 = make_field(5), make_field(5, 2)
        assert embed(F5, F25, F5.element(3)) == F25.element(3)

    def test_identity_element(self):
        F7, F49 = make_field(7), make_field(7, 2)
        assert embed(F7, F49, F7.one) == F49.one

    def test_generator_order_preserved(self, F4, F16):
        g = multiplicative_generator(F4)
        assert embed(F4, F16, g).multiplicative_order() == 3

    def test_incompatible_degrees(self, F4):
        F8 = make_field(2, 3)
        with pytest.raises(IncompatibleFields):
            embed(F4, F8, F4.one)

    def test_consistent_across_calls(self, F4, F16):
        g = multiplicative_generator(F4)
        assert embed(F4, F16, g) == embed(F4, F16, g)

    def test_common_field(self, F4, F16):
        assert common_field(F4, F16) == F16
        assert common_field(F16, F4) == F16
        F8 = make_field(2, 3)
        assert common_field(F4, F8).k == 6


def test_parse_field_spec():
    assert parse_field_spec("13^2") == make_field(13, 2)
    assert parse_field_spec("7") == make_field(7)


class TestProperties:
    def test_frobenius_closure(self):
        props.gf_frobenius_closure(500)

    def test_frobenius_hom(self):
        props.gf_frobenius_hom(300)

    def test_embed_hom(self):
        props.gf_embed_hom(300)
