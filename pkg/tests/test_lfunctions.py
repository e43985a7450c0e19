import math

import numpy as np
import pytest
import scipy.special

from sumfreefp import errors
from sumfreefp.characters import Character, interval_char_sum, legendre_character
from sumfreefp.lfunctions import (
    CHI3,
    CHI4,
    CHI8,
    ProductCharacter,
    cos_eighth_identity_max_error,
    delta0_mod8,
    delta4_mod8,
    digamma,
    interval_sum_via_L,
    l_one,
    l_one_times_small,
    l_one_truncated,
    legendre_prefix_sum,
    legendre_prefix_sum_via_L,
    legendre_third_identity,
    legendre_third_via_rho,
)
from sumfreefp.modp import build_context, eighths_interval, primes_in_range, thirds_interval

EULER_GAMMA = 0.5772156649015329


def test_digamma_classical_values():
    assert abs(digamma(1, 1) - (-EULER_GAMMA)) < 1e-12
    assert abs(digamma(1, 2) - (-EULER_GAMMA - 2 * math.log(2))) < 1e-12
    assert abs(digamma(1, 4) - (-EULER_GAMMA - math.pi / 2 - 3 * math.log(2))) < 1e-12
    with pytest.raises(errors.OutOfRange):
        digamma(0, 5)
    with pytest.raises(errors.OutOfRange):
        digamma(6, 5)


def test_digamma_against_scipy():
    # 1e-12 absolute away from the pole; a few ulps of the value near 0,
    # where the 1/x term caps what float64 can represent.
    for q in (7, 39, 1000, 4096):
        rs = np.arange(1, q)[:: max(1, q // 50)]
        ours = np.array([digamma(int(r), q) for r in rs])
        ref = scipy.special.digamma(rs / q)
        assert np.all(np.abs(ours - ref) <= 1e-12 + 1e-14 * np.abs(ref))


def test_small_modulus_characters():
    assert [CHI3(m) for m in range(3)] == [0, 1, -1]
    assert CHI3(-1) == -1 and CHI8(-1) == 1 and CHI4(-1) == -1
    assert [CHI8(m) for m in (1, 3, 5, 7)] == [1, -1, -1, 1]
    assert all(CHI8(m) == 0 for m in (0, 2, 4, 6))
    assert [delta4_mod8(m) for m in (4, 12, 8, 3)] == [1, 1, 0, 0]
    assert delta0_mod8(16) == 1 and delta0_mod8(12) == 0
    assert not CHI3.is_principal and not CHI8.is_principal
    assert CHI8.is_even and not CHI3.is_even


def test_cos_eighth_identities():
    assert cos_eighth_identity_max_error() < 1e-15


def test_l_one_fixture_values():
    assert abs(l_one(CHI4) - math.pi / 4) < 1e-9
    rho13 = legendre_character(build_context(13))
    assert abs(l_one(ProductCharacter(rho13, CHI3)) - 4 * math.pi / math.sqrt(39)) < 1e-9
    rho7 = legendre_character(build_context(7))
    assert abs(l_one(ProductCharacter(rho7, CHI8)) - 2 * math.pi / math.sqrt(14)) < 1e-9
    rho5 = legendre_character(build_context(5))
    assert abs(l_one(ProductCharacter(rho5, CHI3)) - 2 * math.pi / math.sqrt(15)) < 1e-9


def test_l_one_errors():
    ctx = build_context(13)
    with pytest.raises(errors.PrincipalCharacter):
        l_one(Character(ctx, 0))

    class HugeCharacter:
        modulus = 2**23 + 2
        is_principal = False

        def values(self):  # pragma: no cover - guard fires first
            raise AssertionError

    with pytest.raises(errors.ModulusTooLarge):
        l_one(HugeCharacter())


def test_l_one_truncated_consistency():
    value, tail = l_one_truncated(CHI4, 10**6)
    assert tail <= 4e-6
    assert abs(value - math.pi / 4) <= tail
    for psi in (ProductCharacter(legendre_character(build_context(13)), CHI3),
                ProductCharacter(legendre_character(build_context(7)), CHI8)):
        exact = l_one(psi)
        approx, tail = l_one_truncated(psi, 10**7)
        assert abs(approx - exact) <= tail


def test_l_one_complex_character_agrees_with_series():
    ctx = build_context(13)
    chi = Character(ctx, 4).conj()  # complex character of order 3
    psi = ProductCharacter(chi, CHI3)
    exact = l_one(psi)
    approx, tail = l_one_truncated(psi, 10**6)
    assert abs(approx - exact) <= tail


def test_interval_sum_via_L_examples():
    ctx13 = build_context(13)
    rho13 = legendre_character(ctx13)
    assert abs(interval_sum_via_L(rho13, thirds_interval(13)) - (-4)) < 1e-6
    rho7 = legendre_character(build_context(7))
    assert abs(interval_sum_via_L(rho7, eighths_interval(7)) - 2) < 1e-6
    with pytest.raises(errors.UnsupportedParity):
        interval_sum_via_L(rho13, eighths_interval(13))  # rho13 is even
    with pytest.raises(errors.PrincipalCharacter):
        interval_sum_via_L(Character(ctx13, 0), thirds_interval(13))


def test_thirds_closed_form_battery():
    for p in primes_in_range(5, 500):
        ctx = build_context(p)
        iv = thirds_interval(p)
        for t in range(1, p - 1):
            chi = Character(ctx, t)
            direct = interval_char_sum(chi, iv)
            closed = interval_sum_via_L(chi, iv)
            assert abs(direct - closed) < 1e-6, (p, t)
            if not chi.is_even:
                assert abs(direct) < 1e-9  # symmetric interval kills odd characters


def test_eighths_closed_form_battery():
    for p in primes_in_range(5, 500, (3, 4)):
        ctx = build_context(p)
        iv = eighths_interval(p)
        for t in range(1, p - 1, 2):
            chi = Character(ctx, t)
            assert abs(interval_char_sum(chi, iv) - interval_sum_via_L(chi, iv)) < 1e-6, (p, t)


def test_legendre_third_identity_examples():
    lhs, rhs = legendre_third_identity(build_context(13))
    assert lhs == 2 and abs(lhs - rhs) < 1e-6
    lhs, rhs = legendre_third_identity(build_context(5))
    assert lhs == 1 and abs(lhs - rhs) < 1e-6
    # p = 7: the prefix sum is 2; the p=3 mod 4 closed form goes through L(1, rho)
    ctx7 = build_context(7)
    lhs, rhs = legendre_third_identity(ctx7)
    assert lhs == 2
    assert abs(lhs - legendre_third_via_rho(ctx7)) < 1e-6
    assert abs(lhs - rhs) > 1.0  # the rho*chi3 form genuinely fails off its residue class
    with pytest.raises(errors.UnsupportedParity):
        legendre_third_via_rho(build_context(13))


def test_prefix_expansion_battery():
    # p = 3 mod 4: prefix sums at alpha = 1/3, 2/3 match the L(1, rho) form
    for p in primes_in_range(5, 500, (3, 4)):
        ctx = build_context(p)
        for num in (1, 2):
            direct = legendre_prefix_sum(ctx, num, 3)
            closed = legendre_prefix_sum_via_L(ctx, num, 3)
            assert abs(direct - closed) < 1e-6, (p, num)
    # p = 1 mod 4: same interface, rho*chi3 route
    for p in primes_in_range(5, 200, (1, 4)):
        ctx = build_context(p)
        for num in (1, 2):
            assert abs(legendre_prefix_sum(ctx, num, 3)
                       - legendre_prefix_sum_via_L(ctx, num, 3)) < 1e-6, (p, num)
    with pytest.raises(errors.OutOfRange):
        legendre_prefix_sum_via_L(build_context(13), 1, 4)


def test_real_L_values_positive():
    for p in primes_in_range(5, 500):
        rho = legendre_character(build_context(p))
        l3 = l_one_times_small(rho, CHI3)
        l8 = l_one_times_small(rho, CHI8)
        assert l3.real > 0 and abs(l3.imag) < 1e-9
        assert l8.real > 0 and abs(l8.imag) < 1e-9
