"""Group-ring arithmetic, the CA correspondence, and the linear solver."""

import numpy as np
import pytest

import symba as sy
from symba.errors import InvalidInputError, UnsupportedModulusError

from conftest import make_table_ca


def _E(G, n, d=None):
    return sy.GroupRingElement(G, n, d or {})


def _pair_CD(Z):
    one, t = Z.identity(), (1,)
    C = sy.GroupRingMatrix(
        Z, 2, [[_E(Z, 2), _E(Z, 2, {one: 1})], [_E(Z, 2, {one: 1}), _E(Z, 2, {t: 1})]]
    )
    D = sy.GroupRingMatrix(
        Z, 2, [[_E(Z, 2, {t: 1}), _E(Z, 2, {one: 1})], [_E(Z, 2, {one: 1}), _E(Z, 2)]]
    )
    return C, D


def _random_element(rng, G, modulus, support_pool, max_terms=3):
    coeffs = {}
    for _ in range(int(rng.integers(0, max_terms + 1))):
        g = support_pool[int(rng.integers(len(support_pool)))]
        coeffs[g] = int(rng.integers(1, modulus))
    return sy.GroupRingElement(G, modulus, coeffs)


def test_gr_mul_examples(Z, F2):
    d = lambda g: sy.GroupRingElement(Z, 5, {g: 1})
    assert sy.gr_mul(d((2,)), d((3,))) == d((5,))
    one_plus_t = sy.GroupRingElement(Z, 2, {Z.identity(): 1, (1,): 1})
    sq = sy.gr_mul(one_plus_t, one_plus_t)
    assert sq == sy.GroupRingElement(Z, 2, {Z.identity(): 1, (2,): 1})
    a, b = (1,), (2,)
    x = sy.GroupRingElement(F2, 2, {F2.identity(): 1, a: 1})
    y = sy.GroupRingElement(F2, 2, {F2.identity(): 1, b: 1})
    assert sy.gr_mul(x, y) == sy.GroupRingElement(
        F2, 2, {F2.identity(): 1, a: 1, b: 1, (1, 2): 1}
    )


def test_gr_mul_hand_convolution_oracle(Z):
    """Independent oracle: dict convolution written from scratch."""
    rng = np.random.default_rng(2)
    pool = list(sy.ball(Z, 2))
    for _ in range(50):
        x = _random_element(rng, Z, 7, pool)
        y = _random_element(rng, Z, 7, pool)
        expect = {}
        for g, c in x.coeffs.items():
            for h, e in y.coeffs.items():
                k = (g[0] + h[0],)
                expect[k] = (expect.get(k, 0) + c * e) % 7
        expect = {k: v for k, v in expect.items() if v}
        assert sy.gr_mul(x, y).coeffs == expect


def test_ring_axioms_randomized(Z, F2):
    rng = np.random.default_rng(17)
    cases = 0
    for G in (Z, F2):
        pool = list(sy.ball(G, 2))
        for modulus in (2, 3, 4):
            for _ in range(200):
                x = _random_element(rng, G, modulus, pool)
                y = _random_element(rng, G, modulus, pool)
                z = _random_element(rng, G, modulus, pool)
                assert sy.gr_mul(sy.gr_mul(x, y), z) == sy.gr_mul(x, sy.gr_mul(y, z))
                assert sy.gr_mul(x, y + z) == sy.gr_mul(x, y) + sy.gr_mul(x, z)
                assert sy.gr_mul(x + y, z) == sy.gr_mul(x, z) + sy.gr_mul(y, z)
                cases += 1
    assert cases == 1200


def test_matrix_mul_reversible_pair(Z):
    C, D = _pair_CD(Z)
    assert sy.matrix_mul(D, C).is_identity()
    assert sy.matrix_mul(C, D).is_identity()
    I = sy.GroupRingMatrix.identity(Z, 2, 2)
    assert sy.matrix_mul(C, I) == C


def test_matrix_mul_hand_oracle(Z):
    """Row-by-row hand convolution of D@C, frozen from first principles."""
    C, D = _pair_CD(Z)
    got = sy.matrix_mul(D, C)
    # (D@C)[0][0] = t*0 + 1*1 = 1 ; [0][1] = t*1 + 1*t = 0
    # (D@C)[1][0] = 1*0 + 0*1 = 0 ; [1][1] = 1*1 + 0*t = 1
    assert got.entries[0][0].coeffs == {Z.identity(): 1}
    assert got.entries[0][1].coeffs == {}
    assert got.entries[1][0].coeffs == {}
    assert got.entries[1][1].coeffs == {Z.identity(): 1}


def test_linear_ca_round_trip(Z):
    A1 = sy.Alphabet.module(2, 1)
    shift = sy.GroupRingMatrix(Z, 2, [[_E(Z, 2, {(1,): 1})]])
    tau = sy.to_linear_ca(shift, Z, A1)
    assert sy.from_linear_ca(tau) == shift
    assert sy.same_action(tau, sy.to_linear_ca(sy.from_linear_ca(tau), Z, A1))

    xor = sy.GroupRingMatrix(Z, 2, [[_E(Z, 2, {Z.identity(): 1, (1,): 1})]])
    assert sy.from_linear_ca(sy.to_linear_ca(xor, Z, A1)) == xor

    C, _ = _pair_CD(Z)
    A2 = sy.Alphabet.module(2, 2)
    assert sy.from_linear_ca(sy.to_linear_ca(C, Z, A2)) == C


def test_round_trip_rejects_non_matrix_rule(Z, bit):
    tau = make_table_ca(Z, bit, [(0,)], [0, 1])
    with pytest.raises(InvalidInputError):
        sy.from_linear_ca(tau)


def test_composition_functoriality(Z, F2):
    """compose corresponds to matrix product, exhaustively on small cases."""
    rng = np.random.default_rng(23)
    for G in (Z, F2):
        A = sy.Alphabet.module(3, 2)
        pool = list(sy.ball(G, 1))
        for _ in range(10):
            fam1 = {g: rng.integers(0, 3, size=(2, 2)) for g in pool}
            fam2 = {g: rng.integers(0, 3, size=(2, 2)) for g in pool}
            X = sy.GroupRingMatrix.from_coeffs(G, 3, 2, fam1)
            Y = sy.GroupRingMatrix.from_coeffs(G, 3, 2, fam2)
            sig, tau = sy.to_linear_ca(X, G, A), sy.to_linear_ca(Y, G, A)
            assert sy.from_linear_ca(sy.compose(sig, tau)) == sy.matrix_mul(X, Y)


def test_evaluation_agreement_on_windows(Z):
    """to_linear_ca acts exactly like the matrix on every small window."""
    import itertools

    A = sy.Alphabet.module(2, 2)
    C, _ = _pair_CD(Z)
    tau = sy.to_linear_ca(C, Z, A)
    E = sy.ball(Z, 2)
    EM = sy.set_product(Z, E, tau.memory)
    fam = C.coeff_family()
    vecs = A.vectors()
    for vals in itertools.product(range(A.size), repeat=len(EM)):
        p = sy.Pattern(EM, vals)
        out = sy.induced_map(tau, E, p)
        for g, got in zip(E, out.values):
            want = np.zeros(2, dtype=np.int64)
            for m, mat in fam.items():
                want = (want + mat @ vecs[p.value_at(Z.mul(g, m))]) % 2
            assert got == A.vector_to_index(want)


def test_one_sided_inverse_solve_pair(Z):
    C, D = _pair_CD(Z)
    got = sy.one_sided_inverse_solve(C, 1)
    assert got == D
    assert sy.matrix_mul(got, C).is_identity()
    assert sy.matrix_mul(C, got).is_identity()


def test_one_sided_inverse_solve_xor_fails(Z):
    xor = sy.GroupRingMatrix(Z, 2, [[_E(Z, 2, {Z.identity(): 1, (1,): 1})]])
    for r in range(5):
        assert sy.one_sided_inverse_solve(xor, r) is None


def test_one_sided_inverse_solve_identity(Z):
    I = sy.GroupRingMatrix.identity(Z, 3, 2)
    assert sy.one_sided_inverse_solve(I, 0) == I
    shift = sy.GroupRingMatrix(Z, 2, [[_E(Z, 2, {(1,): 1})]])
    got = sy.one_sided_inverse_solve(shift, 1)
    assert got == sy.GroupRingMatrix(Z, 2, [[_E(Z, 2, {(-1,): 1})]])


def test_solve_requires_prime_modulus(Z):
    M4 = sy.GroupRingMatrix.identity(Z, 4, 1)
    with pytest.raises(UnsupportedModulusError):
        sy.one_sided_inverse_solve(M4, 1)


def test_composite_modulus_arithmetic_still_works(Z):
    x = sy.GroupRingElement(Z, 4, {Z.identity(): 2, (1,): 3})
    y = sy.GroupRingElement(Z, 4, {(1,): 2})
    assert sy.gr_mul(x, y) == sy.GroupRingElement(Z, 4, {(1,): 4 % 4, (2,): 6 % 4})


def test_solver_agrees_with_synthesis(Z):
    """The linear solver and the window search agree case by case."""
    A2 = sy.Alphabet.module(2, 2)
    A1 = sy.Alphabet.module(2, 1)
    C, D = _pair_CD(Z)
    tau = sy.to_linear_ca(C, Z, A2)
    for r in (0, 1):
        solved = sy.one_sided_inverse_solve(C, r)
        searched = sy.synthesize_left_inverse(tau, r)
        assert (solved is not None) == searched.found
        if solved is not None:
            assert sy.same_action(sy.to_linear_ca(solved, Z, A2), searched.ca)
    xor = sy.GroupRingMatrix(Z, 2, [[_E(Z, 2, {Z.identity(): 1, (1,): 1})]])
    for r in (0, 1, 2):
        assert sy.one_sided_inverse_solve(xor, r) is None
        assert not sy.synthesize_left_inverse(sy.to_linear_ca(xor, Z, A1), r).found


def test_random_invertible_matrix_basics(Z):
    M0, M0_inv = sy.random_invertible_matrix(Z, seed=1, d=2, r=1, modulus=3, factors=0)
    assert M0.is_identity() and M0_inv.is_identity()

    M1, M1_inv = sy.random_invertible_matrix(Z, seed=2, d=2, r=1, modulus=3, factors=1)
    assert sy.matrix_mul(M1_inv, M1).is_identity()

    M5, M5_inv = sy.random_invertible_matrix(Z, seed=3, d=2, r=1, modulus=2, factors=5)
    assert sy.matrix_mul(M5, M5_inv).is_identity()
    assert sy.matrix_mul(M5_inv, M5).is_identity()


def test_random_invertible_direct_finiteness_both_ways(Z, F2):
    """Every generated one-sided identity is two-sided, exactly."""
    for seed in range(20):
        G = (Z, F2)[seed % 2]
        p = (2, 3)[(seed // 2) % 2]
        d = 1 + (seed % 3) % 2
        C, D = sy.random_invertible_matrix(G, seed=seed, d=d, r=1, modulus=p, factors=4)
        assert sy.matrix_mul(D, C).is_identity()
        assert sy.matrix_mul(C, D).is_identity()
