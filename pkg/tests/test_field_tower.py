import itertools

import numpy as np
import pytest
from helpers import gf

from summatroid.errors import NotPrimeError, ReducibleModulusError, SubfieldDegreeError, TowerError
from summatroid.field_tower import FieldTower, conway_like_modulus, is_irreducible, make_tower

OMEGA = 2

TOWERS = [
    (2, 1, [1]),
    (2, 2, [1, 2]),
    (2, 3, [1, 3]),
    (3, 2, [1, 2]),
    (2, 4, [1, 2, 4]),
    (5, 1, [1]),
]


def poly_mul_mod(a, b, modulus, p):
    """Schoolbook product of coefficient lists reduced by a monic modulus."""
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    M = len(modulus) - 1
    for top in range(len(prod) - 1, M - 1, -1):
        c = prod[top]
        if c:
            for j in range(M + 1):
                prod[top - M + j] = (prod[top - M + j] - c * modulus[j]) % p
    out = prod[:M] + [0] * (M - len(prod[:M]))
    return out


@pytest.fixture(params=TOWERS, ids=lambda t: f"GF{t[0]}^{t[1]}")
def tower(request):
    p, M, degrees = request.param
    return gf(p, M, degrees)


# -- construction -----------------------------------------------------------------


def test_prime_field_profile():
    F = make_tower(2, 1, [0, 1], [1, 1, 1])
    assert F.q == 2
    assert F.m == (1, 1, 1)
    assert all(b == (1,) for b in F.bases)


def test_gf4_over_gf2():
    F = make_tower(2, 2, [1, 1, 1], [1])
    assert F.q == 4 and F.m == (2,)
    assert F.bases == ((1, OMEGA),)


def test_reducible_modulus_rejected():
    with pytest.raises(ReducibleModulusError):
        make_tower(2, 2, [0, 1, 1], [1])


def test_non_prime_characteristic_rejected():
    with pytest.raises(NotPrimeError):
        make_tower(4, 1, [0, 1], [1])


def test_bad_subfield_degree_rejected():
    with pytest.raises(SubfieldDegreeError):
        make_tower(2, 4, conway_like_modulus(2, 4), [3])


def test_non_monic_modulus_rejected():
    with pytest.raises(TowerError):
        make_tower(3, 2, [1, 0, 2], [1])


def test_dependent_basis_rejected():
    F = gf(2, 2, [1])
    with pytest.raises(TowerError):
        F.with_bases([(1, 1)])


@pytest.mark.parametrize("p,M", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)])
def test_irreducibility_matches_root_free_count(p, M):
    # for M <= 3 irreducible iff root-free; count monic irreducibles via Gauss for all M
    count = sum(is_irreducible(list(c) + [1], p) for c in itertools.product(range(p), repeat=M))
    mobius = {1: 1, 2: -1, 3: -1, 4: 0}
    expected = sum(mobius[M // d] * p**d for d in range(1, M + 1) if M % d == 0) // M
    assert count == expected


# -- arithmetic -------------------------------------------------------------------


def test_omega_squared():
    F = gf(2, 2, [1])
    assert F.mul(OMEGA, OMEGA) == OMEGA ^ 1


def test_char2_doubling(tower):
    if tower.p == 2:
        assert all(tower.add(x, x) == 0 for x in tower.elements())


def test_inverse_of_omega_by_exhaustion():
    F = gf(2, 2, [1])
    (y,) = [y for y in range(1, 4) if F.mul(OMEGA, y) == 1]
    assert F.inv(OMEGA) == y == 3


def test_inverse_of_zero_raises(tower):
    with pytest.raises(ZeroDivisionError):
        tower.inv(0)


def test_tables_match_polynomial_oracle(tower):
    F = tower
    for a in F.elements():
        ca = F.to_coeffs(a)
        for b in F.elements():
            cb = F.to_coeffs(b)
            assert F.to_coeffs(F.add(a, b)) == [(x + y) % F.p for x, y in zip(ca, cb)]
            assert F.to_coeffs(F.mul(a, b)) == poly_mul_mod(ca, cb, list(F.modulus), F.p)


def test_field_axioms(tower):
    F = tower
    for a in range(1, F.q):
        assert F.mul(a, F.inv(a)) == 1
        assert F.add(a, F.neg(a)) == 0
        assert F.pow(a, F.q - 1) == 1
    for a, b in itertools.product(F.elements(), repeat=2):
        assert F.sub(F.add(a, b), b) == a


def test_frobenius_is_pth_power(tower):
    F = tower
    for a in F.elements():
        assert F.frobenius_power(a, 1) == F.pow(a, F.p)
        assert F.frobenius_power(a, F.M) == a


def test_coeff_round_trip(tower):
    for x in tower.elements():
        assert tower.from_coeffs(tower.to_coeffs(x)) == x


# -- subfields and expansion ------------------------------------------------------


def test_subfield_membership_examples():
    F = gf(2, 2, [1])
    assert F.is_in_subfield(0, 0) and F.is_in_subfield(1, 0)
    assert not F.is_in_subfield(OMEGA, 0)


def test_subfield_size_and_closure(tower):
    F = tower
    for i, d in enumerate(F.degrees):
        K = set(F.subfield(i))
        assert len(K) == F.p**d
        assert 0 in K and 1 in K
        for a, b in itertools.product(K, repeat=2):
            assert F.add(a, b) in K and F.mul(a, b) in K
        assert all(F.inv(a) in K for a in K - {0})


def test_expand_examples():
    F = gf(2, 2, [1])
    assert F.expand(0, 0) == [0, 0]
    assert F.expand(F.bases[0][0], 0) == [1, 0]
    assert F.expand(OMEGA ^ 1, 0) == [1, 1]


def test_expand_round_trip(tower):
    F = tower
    for i in range(F.ell):
        for x in F.elements():
            coords = F.expand(x, i)
            acc = 0
            for a, g in zip(coords, F.bases[i]):
                acc = F.add(acc, F.mul(a, g))
            assert acc == x
            assert all(F.is_in_subfield(a, i) for a in coords)


def test_expand_is_subfield_linear(tower, rng):
    F = tower
    for i in range(F.ell):
        K = F.subfield(i)
        for _ in range(50):
            a = int(rng.choice(K))
            x, y = (int(v) for v in rng.integers(F.q, size=2))
            lhs = F.expand(F.add(F.mul(a, x), y), i)
            rhs = [F.add(F.mul(a, u), v) for u, v in zip(F.expand(x, i), F.expand(y, i))]
            assert lhs == rhs


def test_coordinate_matrix_examples():
    F = gf(2, 2, [1])
    assert np.array_equal(F.coordinate_matrix([1, OMEGA], 0), np.eye(2, dtype=int))
    assert not F.coordinate_matrix([0, 0, 0], 0).any()
    G = gf(2, 2, [2])
    assert np.array_equal(G.coordinate_matrix([3, OMEGA], 0), [[3, OMEGA]])


def test_alternative_basis_differs_and_is_valid():
    F = gf(2, 2, [1])
    alt = F.alternative()
    assert alt.bases[0] != F.bases[0]
    assert set(alt.bases[0]) == {OMEGA, OMEGA ^ 1}


def test_coordinate_rank_is_basis_independent(tower, rng):
    from summatroid import ffmatrix as fm

    F, alt = tower, tower.alternative()
    for i in range(F.ell):
        for _ in range(30):
            v = rng.integers(F.q, size=3)
            assert fm.rank(F, F.coordinate_matrix(v, i)) == fm.rank(F, alt.coordinate_matrix(v, i))


def test_conway_like_modulus_is_irreducible():
    for p, M in [(2, 1), (2, 5), (3, 4), (7, 2)]:
        mod = conway_like_modulus(p, M)
        assert len(mod) == M + 1 and mod[-1] == 1
        assert is_irreducible(mod, p)
        FieldTower(p, M, mod, [1])
