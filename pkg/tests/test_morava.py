import random
from fractions import Fraction
from math import inf

import pytest

from eotools.morava import (
    WittRing, endo_mul, endo_ring, find_order_p_unit, leading_digit_exclusions,
    t_valuation, tbar_coefficients, verify_tk_lemma,
)

RINGS = [(2, 1, 8), (2, 2, 6), (3, 2, 6), (2, 3, 6), (5, 1, 5)]


def random_element(ring, rng):
    q = ring.residue_field.order
    return ring.element([rng.randrange(q) for _ in range(ring.M)])


@pytest.mark.parametrize("p,m,N", [(2, 2, 4), (3, 2, 3), (2, 3, 3), (5, 2, 2)])
def test_teichmuller_and_frobenius(p, m, N):
    W = WittRing(p, m, N)
    F = W.field
    for a in F.elements():
        t = W.teichmuller(a)
        assert W.pow(t, p**m) == t
        assert W.residue(t) == a
        assert W.frobenius(t) == W.teichmuller(F.pow(a, p))
        assert W.frobenius(t, m) == t
    assert W.frobenius(W.scalar(7)) == W.scalar(7)


@pytest.mark.parametrize("p,m,N", [(2, 2, 4), (3, 2, 3)])
def test_witt_frobenius_is_a_ring_map(p, m, N):
    W = WittRing(p, m, N)
    rng = random.Random(1)
    for _ in range(50):
        a = tuple(rng.randrange(W.modulus) for _ in range(m))
        b = tuple(rng.randrange(W.modulus) for _ in range(m))
        assert W.frobenius(W.mul(a, b)) == W.mul(W.frobenius(a), W.frobenius(b))
        assert W.frobenius(W.add(a, b)) == W.add(W.frobenius(a), W.frobenius(b))
        assert W.from_digits(W.digits(a)) == a


@pytest.mark.parametrize("p,n,M", RINGS)
def test_ring_axioms_on_random_triples(p, n, M):
    ring = endo_ring(p, n, M)
    rng = random.Random(p * 100 + n * 10 + M)
    for _ in range(100):
        x, y, z = (random_element(ring, rng) for _ in range(3))
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert (x + y) * z == x * z + y * z
        assert x * ring.one() == x == ring.one() * x
        assert x - x == ring.zero()


@pytest.mark.parametrize("p,M", [(2, 10), (3, 6), (5, 5)])
def test_height_one_is_the_p_adic_integers(p, M):
    # with n = 1 and u = 1, T acts as p and digits are Teichmuller p-adic digits
    ring = endo_ring(p, 1, M)
    W = WittRing(p, 1, M)
    rng = random.Random(p)

    def to_int(x):
        return sum(W.teichmuller(d)[0] * p**i for i, d in enumerate(x.digits)) % p**M

    for _ in range(60):
        a, b = rng.randrange(p**M), rng.randrange(p**M)
        x, y = ring.from_int(a), ring.from_int(b)
        assert to_int(x) == a
        assert to_int(x * y) == a * b % p**M
        assert to_int(x + y) == (a + b) % p**M


@pytest.mark.parametrize("p,n,M", RINGS)
def test_commutation_with_t(p, n, M):
    ring = endo_ring(p, n, M)
    rng = random.Random(7)
    T = ring.T()
    for _ in range(30):
        x = random_element(ring, rng)
        assert T * x == x.frobenius_twist() * T


def test_commutation_on_teichmuller_elements():
    ring = endo_ring(3, 2, 6)
    F = ring.residue_field
    T = ring.T()
    for a in F.elements():
        for b in F.elements():
            lhs = (ring.teich(a) * T) * (ring.teich(b) * T)
            assert lhs == ring.element({2: F.mul(a, F.pow(b, 3))})
        assert T * ring.teich(a) == ring.teich(F.pow(a, 3)) * T


@pytest.mark.parametrize("n", [1, 2, 3])
def test_t_to_the_n_is_p(n):
    ring = endo_ring(2, n, 3 * n)
    assert ring.T() ** n == ring.from_int(2)


def test_valuation_examples():
    ring = endo_ring(3, 2, 6)
    assert t_valuation(ring.from_int(3)).value == 1
    assert t_valuation(ring.T()).value == Fraction(1, 2)
    assert t_valuation(ring.zero()).value == inf
    assert str(t_valuation(ring.zero())) == "inf"


@pytest.mark.parametrize("p,n,M", RINGS)
def test_valuation_is_additive(p, n, M):
    ring = endo_ring(p, n, M)
    rng = random.Random(11)
    checked = 0
    for _ in range(200):
        x, y = random_element(ring, rng), random_element(ring, rng)
        vx, vy = t_valuation(x), t_valuation(y)
        if vx.j is None or vy.j is None or vx.j + vy.j >= M:
            continue
        assert t_valuation(x * y).j == vx.j + vy.j
        checked += 1
    assert checked > 20


def test_mismatched_rings_are_rejected():
    with pytest.raises(ValueError):
        endo_mul(endo_ring(2, 1, 4).one(), endo_ring(2, 1, 5).one())
    with pytest.raises(ValueError):
        endo_ring(2, 2, 4).element([5])


@pytest.mark.parametrize("k,M", [(1, 8), (2, 8), (3, 9)])
def test_order_two_is_minus_one(k, M):
    zeta = find_order_p_unit(2, k, M)
    assert zeta == endo_ring(2, k, M).from_int(-1)
    assert [i for i, a in enumerate(zeta.digits) if a] == list(range(0, M, k))


def test_order_three_at_height_two():
    zeta = find_order_p_unit(3, 1, 6)
    ring = zeta.ring
    assert zeta ** 3 == ring.one() and zeta != ring.one()
    F = ring.residue_field
    a = zeta.digits[1]
    # leading digit solves a^(1+3) = -1 in F_9
    assert a and F.pow(a, 4) == F.neg(1)


def test_tbar_examples():
    zeta = find_order_p_unit(2, 1, 8)
    assert tbar_coefficients(zeta)[1] == 1
    with pytest.raises(ValueError):
        tbar_coefficients(endo_ring(2, 1, 4).zero())


@pytest.mark.parametrize("p,k,M,valuation", [(2, 1, 8, 1), (3, 1, 6, Fraction(1, 2)), (2, 2, 8, 1)])
def test_verify_tk_examples(p, k, M, valuation):
    rep = verify_tk_lemma(p, k, M)
    assert rep.passed
    assert rep.valuation.value == valuation
    if (p, k) == (2, 2):
        assert rep.tbar[1] == 0 and rep.tbar[2] != 0


@pytest.mark.parametrize("p,k,M", [(2, 3, 10), (3, 2, 13)])
def test_verify_tk_beyond_the_minimum(p, k, M):
    assert verify_tk_lemma(p, k, M).passed


@pytest.mark.slow
def test_verify_tk_at_five():
    assert verify_tk_lemma(5, 1, 13).passed


def test_exclusions_cover_other_leading_digits():
    rows = leading_digit_exclusions(3, 2, 13)
    assert {r.j for r in rows} >= {1, 3, 4, 5}
    assert all(r.excluded for r in rows)


def test_solver_precision_and_field_limits():
    with pytest.raises(ValueError):
        find_order_p_unit(3, 1, 3)
    with pytest.raises(ValueError):
        find_order_p_unit(7, 1, 14)
