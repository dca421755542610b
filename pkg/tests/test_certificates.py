"""Rank-reduction certificate search and the bound ledger."""

from itertools import product

import numpy as np
import pytest

from matlen.certificates import (
    analyze_generators,
    bound_ledger,
    evaluate_exponents,
    find_rank_reduction,
    pappacena_bound,
    shitov_rank1_bound,
    t10_t11_hypothesis,
    t12_hypothesis,
    thm38_hypothesis,
)
from matlen.errors import InvalidK
from matlen.instances import (
    InstanceSpec,
    JordanSpec,
    build_instance,
    jordan_matrix,
    random_invertible,
)
from matlen.length import GeneratingSet, compute_length
from matlen.linalg import Matrix, Polynomial, PrimeField, conjugate, poly_eval, rank
from matlen.spectral import JordanProfile, minimal_polynomial, split_roots

F7 = PrimeField(7)
F101 = PrimeField(101)


def spectrum_of(a, field):
    return split_roots(minimal_polynomial(a), field)


def divisor_poly(field, exponents):
    out = Polynomial.one(field)
    for lam, e in exponents:
        factor = Polynomial.x_minus(field, lam)
        for _ in range(e):
            out = out.mul(factor)
    return out


def exhaustive_minimum(a, field, r_max):
    """Oracle: scan every admissible exponent vector via poly_eval."""
    spec = spectrum_of(a, field)
    eigs = spec.eigenvalues()
    mults = [e for _, e in spec.roots]
    best = None
    for v in sorted(product(*(range(e + 1) for e in mults)), key=lambda v: (sum(v), v)):
        if not any(v) or all(vi == ei for vi, ei in zip(v, mults)):
            continue
        witness = poly_eval(divisor_poly(field, zip(eigs, v)), a)
        if witness.is_zero():
            continue
        r = rank(witness)
        if r <= r_max:
            best = (tuple(zip(eigs, v)), sum(v), r)
            break
    return best


class TestFindRankReduction:
    def test_nilpotent_with_tail_block(self):
        a = jordan_matrix(F101, JordanSpec(((0, 3), (0, 1))))
        cert = find_rank_reduction(a, spectrum_of(a, F101), 1)
        assert cert.exponents == ((0, 2),)
        assert cert.degree == 2 and cert.achieved_rank == 1
        assert cert.witness == Matrix.unit(F101, 4, 0, 2)

    def test_double_block_has_no_rank_one(self):
        a = jordan_matrix(F101, JordanSpec(((0, 2), (0, 2))))
        spec = spectrum_of(a, F101)
        assert find_rank_reduction(a, spec, 1) is None
        cert = find_rank_reduction(a, spec, 2)
        assert cert.exponents == ((0, 1),) and cert.degree == 1 and cert.achieved_rank == 2

    def test_two_eigenvalue_search_matches_exhaustion(self):
        a = jordan_matrix(F7, JordanSpec(((1, 3), (2, 2))))
        cert = find_rank_reduction(a, spectrum_of(a, F7), 1)
        oracle = exhaustive_minimum(a, F7, 1)
        assert (cert.exponents, cert.degree, cert.achieved_rank) == oracle
        assert cert.exponents == ((1, 2), (2, 2))  # lexicographic winner at degree 4

    def test_matches_exhaustion_on_random_profiles(self):
        from matlen.instances import random_jordan_spec

        rng = np.random.default_rng(81)
        for n in (3, 4, 5):
            for _ in range(15):
                spec = random_jordan_spec(n, F101, rng)
                a = conjugate(random_invertible(n, F101, rng), jordan_matrix(F101, spec))
                for r_max in (1, 2):
                    cert = find_rank_reduction(a, spectrum_of(a, F101), r_max)
                    oracle = exhaustive_minimum(a, F101, r_max)
                    if oracle is None:
                        assert cert is None
                    else:
                        assert (cert.exponents, cert.degree, cert.achieved_rank) == oracle

    def test_soundness_by_independent_reevaluation(self):
        a = conjugate(
            random_invertible(5, F101, 99),
            jordan_matrix(F101, JordanSpec(((3, 2), (3, 1), (8, 2)))),
        )
        cert = find_rank_reduction(a, spectrum_of(a, F101), 1)
        rebuilt = poly_eval(divisor_poly(F101, cert.exponents), a)
        assert rebuilt == cert.witness
        assert rank(rebuilt) == cert.achieved_rank
        assert rebuilt == evaluate_exponents(a, cert.exponent_map())

    def test_monotone_in_rank_budget(self):
        rng = np.random.default_rng(83)
        from matlen.instances import random_jordan_spec

        for _ in range(20):
            spec = random_jordan_spec(4, F101, rng)
            a = jordan_matrix(F101, spec)
            s = spectrum_of(a, F101)
            c1, c2 = find_rank_reduction(a, s, 1), find_rank_reduction(a, s, 2)
            if c1 is not None:
                assert c2 is not None and c2.degree <= c1.degree


class TestBoundFormulas:
    def test_pappacena(self):
        assert pappacena_bound(1, 2, 4) == 8
        assert pappacena_bound(2, 1, 4) == 10
        assert pappacena_bound(4, 1, 4) == 16  # degenerate full-rank case
        with pytest.raises(ValueError):
            pappacena_bound(0, 1, 4)

    def test_shitov_rank1(self):
        assert shitov_rank1_bound(2, 5) == 8
        assert shitov_rank1_bound(2, 4) == 6
        with pytest.raises(InvalidK):
            shitov_rank1_bound(1, 4)

    def test_t10_t11_hypothesis(self):
        assert t10_t11_hypothesis(4, 3) == (2, 1)
        assert t10_t11_hypothesis(5, 3) == (2, 1)
        assert t10_t11_hypothesis(6, 3) is None
        for n in range(2, 10):
            for m in range(1, n + 1):
                expected = m > n / 2
                assert (t10_t11_hypothesis(n, m) is not None) == expected

    def test_t12_hypothesis(self):
        assert t12_hypothesis(4, 2)
        assert not t12_hypothesis(6, 2)
        assert t12_hypothesis(7, 3)

    def test_thm38_hypothesis(self):
        assert thm38_hypothesis(4, JordanProfile({0: (3, 1)}), 3) == 1
        assert thm38_hypothesis(4, JordanProfile({5: (2, 2)}), 2) is None
        assert thm38_hypothesis(6, JordanProfile({1: (3,), 2: (2, 1)}), 5) == 1
        # k = 0 is the nonderogatory case, covered by its own entry
        assert thm38_hypothesis(4, JordanProfile({0: (4,)}), 4) is None


class TestBoundLedger:
    def t10_set(self):
        return build_instance(
            InstanceSpec(n=4, p=101, jordan=JordanSpec(((0, 3), (0, 1))), extra_gens=1, seed=5, family="T10")
        )

    def t12_set(self):
        return build_instance(
            InstanceSpec(n=4, p=101, jordan=JordanSpec(((0, 2), (0, 2))), extra_gens=2, seed=5, family="T12")
        )

    def test_above_half_entry(self):
        ledger = bound_ledger(self.t10_set())
        entry = ledger.find("minpoly_above_half")
        assert entry.applicable and entry.bound_value == 7

    def test_window_and_double_block_entries(self):
        ledger = bound_ledger(self.t12_set())
        window = ledger.find("minpoly_window")
        assert window.applicable and window.bound_value == 10
        double = ledger.find("double_jordan_block")
        assert double.applicable and double.bound_value == 8

    def test_paz_values(self):
        gs = build_instance(InstanceSpec(n=5, p=101, jordan=None, extra_gens=1, seed=3, family="RANDOM"))
        assert bound_ledger(gs).find("paz_general").bound_value == 9
        assert bound_ledger(self.t10_set()).find("paz_general").bound_value == 6

    def test_degenerate_above_half_at_n2(self):
        gs = GeneratingSet.of([Matrix.unit(F101, 2, 0, 1), Matrix.unit(F101, 2, 1, 0)])
        entry = bound_ledger(gs).find("minpoly_above_half")
        assert not entry.applicable
        assert compute_length(gs).length == 2  # would violate the naive value 1

    def test_certificate_entries_present(self):
        gs = self.t12_set()
        analyses = analyze_generators(gs)
        ledger = bound_ledger(gs, analyses)
        spec = analyses[0].spectrum
        cert = find_rank_reduction(gs.gens[0], spec, 2)
        name = f"pappacena_r{cert.achieved_rank}_gen0"
        entry = ledger.find(name)
        assert entry is not None and entry.applicable
        assert entry.bound_value == pappacena_bound(cert.achieved_rank, cert.degree, 4)
        for a in analyses:
            if a.spectrum is None:
                continue
            c1 = find_rank_reduction(gs.gens[a.index], a.spectrum, 1)
            if c1 is not None:
                shitov = ledger.find(f"shitov_rank1_gen{a.index}")
                assert shitov is not None
                assert shitov.bound_value == shitov_rank1_bound(max(c1.degree, 2), 4)

    def test_no_length_exceeds_applicable_entries(self):
        rng = np.random.default_rng(97)
        for n in (2, 3, 4):
            for _ in range(10):
                seed = int(rng.integers(0, 2**32))
                gs = build_instance(
                    InstanceSpec(n=n, p=101, jordan=None, extra_gens=1, seed=seed, family="RANDOM")
                )
                length = compute_length(gs).length
                for entry in bound_ledger(gs).applicable():
                    assert length <= entry.bound_value, (entry.name, length)

    def test_undecidable_on_nonsplit(self):
        nonsplit = Matrix(F7, [[0, 6], [1, 0]])  # companion of x^2 + 1
        mate = Matrix(F7, [[1, 1], [0, 2]])
        ledger = bound_ledger(GeneratingSet.of([nonsplit, mate]))
        markova = ledger.find("markova_unique_max_block")
        assert markova.applicable  # the mate still splits and qualifies
        gs = GeneratingSet.of([nonsplit])
        ledger = bound_ledger(gs)
        assert not ledger.find("markova_unique_max_block").applicable
        assert "undecidable" in ledger.find("markova_unique_max_block").hypothesis_note
