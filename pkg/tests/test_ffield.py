import pytest

from tatecount.ffield import PrimeField, ZeroInverse, fp_inv, fp_is_square, is_prime, legendre, odd_primes

SMALL_PRIMES = [p for p in range(3, 32) if is_prime(p)]


@pytest.mark.parametrize("p, a, expected", [(3, 2, 2), (5, 1, 1), (7, 3, 5)])
def test_fp_inv_examples(p, a, expected):
    assert fp_inv(PrimeField(p)(a)).value == expected


def test_fp_inv_brute_force_and_involution():
    for p in SMALL_PRIMES:
        F = PrimeField(p)
        for a in range(1, p):
            inv = fp_inv(F(a))
            assert (a * inv.value) % p == 1
            assert next(x for x in range(1, p) if a * x % p == 1) == inv.value
            assert fp_inv(inv) == F(a)


def test_zero_has_no_inverse():
    with pytest.raises(ZeroInverse):
        fp_inv(PrimeField(5)(0))


@pytest.mark.parametrize("p, a, expected", [(3, 1, True), (3, 2, False), (5, 4, True)])
def test_is_square_examples(p, a, expected):
    assert fp_is_square(PrimeField(p)(a)) is expected


def test_euler_matches_scan_and_half_are_squares():
    for p in SMALL_PRIMES:
        F = PrimeField(p)
        flags = [fp_is_square(F(a)) for a in range(p)]
        assert flags == [fp_is_square(F(a), method="scan") for a in range(p)]
        assert sum(flags[1:]) == (p - 1) // 2
        assert flags[0]


@pytest.mark.parametrize("bad", [2, 4, 9, 257, 1, 0])
def test_field_rejects_bad_characteristic(bad):
    with pytest.raises(ValueError):
        PrimeField(bad)


def test_element_arithmetic():
    F = PrimeField(7)
    a, b = F(3), F(5)
    assert (a + b).value == 1
    assert (a - b).value == 5
    assert (a * b).value == 1
    assert (a / b).value == 2
    assert (a**-1).value == 5
    assert -a == F(4)


def test_legendre_and_odd_primes():
    assert [legendre(a, 7) for a in range(7)] == [0, 1, 1, -1, 1, -1, -1]
    assert odd_primes(3, 5) == [3, 5, 7, 11, 13]
    assert odd_primes(10, stop=20) == [11, 13, 17, 19]
