"""Minimal polynomials, split spectra, and Jordan profiles."""

import numpy as np
import pytest

from matlen.errors import NotSplit
from matlen.instances import JordanSpec, jordan_matrix, random_invertible, random_jordan_spec
from matlen.length import GeneratingSet
from matlen.linalg import Matrix, Polynomial, PrimeField, conjugate, poly_eval
from matlen.spectral import (
    MinimalPolynomial,
    is_nonderogatory,
    jordan_profile,
    m_of_s,
    minimal_polynomial,
    split_roots,
    unique_max_block,
)

F7 = PrimeField(7)
F11 = PrimeField(11)
F101 = PrimeField(101)


def J(field, *blocks):
    return jordan_matrix(field, JordanSpec(tuple(blocks)))


class TestMinimalPolynomial:
    def test_nilpotent_block(self):
        mp = minimal_polynomial(J(F7, (0, 3)))
        assert mp.degree == 3 and mp.poly.coeffs == (0, 0, 0, 1)

    def test_distinct_eigenvalues(self):
        # (x-1)(x-2) = x^2 - 3x + 2 = x^2 + 4x + 2 over F_7
        mp = minimal_polynomial(Matrix(F7, [[1, 0], [0, 2]]))
        assert mp.degree == 2 and mp.poly.coeffs == (2, 4, 1)

    def test_equal_blocks_share_annihilator(self):
        # (x-5)^2 = x^2 + 4x + 4 over F_7
        mp = minimal_polynomial(J(F7, (5, 2), (5, 2)))
        assert mp.degree == 2 and mp.poly.coeffs == (4, 4, 1)

    def test_annihilates(self):
        rng = np.random.default_rng(17)
        for n in range(2, 6):
            for _ in range(20):
                a = Matrix(F101, rng.integers(0, 101, size=(n, n)))
                mp = minimal_polynomial(a)
                assert mp.poly.is_monic()
                assert poly_eval(mp.poly, a).is_zero()

    def test_conjugation_invariant(self):
        rng = np.random.default_rng(23)
        for _ in range(25):
            a = Matrix(F101, rng.integers(0, 101, size=(4, 4)))
            p = random_invertible(4, F101, rng)
            assert minimal_polynomial(conjugate(p, a)) == minimal_polynomial(a)


class TestMOfS:
    def test_identity_only(self):
        gs = GeneratingSet.of([Matrix.identity(F101, 3)])
        assert m_of_s(gs) == 1

    def test_max_over_generators(self):
        a = J(F101, (0, 3), (0, 1))
        e12 = Matrix.unit(F101, 4, 0, 1)
        assert m_of_s(GeneratingSet.of([a, e12])) == 3

    def test_diag_and_block(self):
        gs = GeneratingSet.of([J(F7, (1, 1), (2, 1), (3, 1)), J(F7, (0, 3))])
        assert m_of_s(gs) == 3


class TestSplitRoots:
    def test_two_simple_roots(self):
        mp = MinimalPolynomial(Polynomial(F7, (2, 4, 1)), 2)  # x^2-3x+2
        assert split_roots(mp, F7).roots == ((1, 1), (2, 1))

    def test_irreducible_quadratic(self):
        # squares mod 7 are {0,1,2,4}; -1 = 6 is not among them
        mp = MinimalPolynomial(Polynomial(F7, (1, 0, 1)), 2)
        with pytest.raises(NotSplit):
            split_roots(mp, F7)

    def test_triple_root(self):
        q = Polynomial.x_minus(F11, 5)
        cube = q.mul(q).mul(q)
        assert split_roots(MinimalPolynomial(cube, 3), F11).roots == ((5, 3),)

    def test_reconstruction(self):
        rng = np.random.default_rng(31)
        for _ in range(25):
            spec = random_jordan_spec(5, F101, rng)
            a = jordan_matrix(F101, spec)
            mp = minimal_polynomial(a)
            spectrum = split_roots(mp, F101)
            product = Polynomial.one(F101)
            for lam, e in spectrum.roots:
                factor = Polynomial.x_minus(F101, lam)
                for _ in range(e):
                    product = product.mul(factor)
            assert product == mp.poly
            assert sum(e for _, e in spectrum.roots) == mp.degree


class TestJordanProfile:
    def profile_of(self, a, field):
        return jordan_profile(a, split_roots(minimal_polynomial(a), field))

    def test_examples(self):
        assert self.profile_of(J(F7, (0, 3), (0, 1)), F7).blocks == {0: (3, 1)}
        assert self.profile_of(J(F7, (1, 1), (2, 1), (3, 1)), F7).blocks == {
            1: (1,),
            2: (1,),
            3: (1,),
        }
        assert self.profile_of(J(F7, (5, 2), (5, 2)), F7).blocks == {5: (2, 2)}

    def test_roundtrip_with_conjugation(self):
        rng = np.random.default_rng(41)
        for n in range(3, 7):
            for _ in range(30):
                spec = random_jordan_spec(n, F101, rng)
                a = jordan_matrix(F101, spec)
                p = random_invertible(n, F101, rng)
                conjugated = conjugate(p, a)
                prof = self.profile_of(conjugated, F101)
                assert prof.blocks == spec.block_multisets()

    def test_degree_equals_sum_of_max_blocks(self):
        rng = np.random.default_rng(43)
        for n in range(2, 7):
            for _ in range(30):
                spec = random_jordan_spec(n, F101, rng)
                a = conjugate(random_invertible(n, F101, rng), jordan_matrix(F101, spec))
                mp = minimal_polynomial(a)
                prof = self.profile_of(a, F101)
                assert mp.degree == sum(sizes[0] for sizes in prof.blocks.values())


class TestPredicates:
    def test_nonderogatory(self):
        assert is_nonderogatory(J(F101, (0, 4)))
        assert not is_nonderogatory(Matrix.identity(F101, 2))
        assert not is_nonderogatory(J(F7, (5, 2), (5, 2)))

    def test_unique_max_block(self):
        from matlen.spectral import JordanProfile

        assert unique_max_block(JordanProfile({0: (3, 1)})) == (0, 3)
        assert unique_max_block(JordanProfile({5: (2, 2)})) is None
        assert unique_max_block(JordanProfile({1: (2,), 2: (2, 2)})) == (1, 2)
