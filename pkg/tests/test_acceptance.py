"""Acceptance gate: every shipping criterion, one printed verdict line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the PASS lines.
All comparisons are exact integer equality; there are no tolerances anywhere.
"""

import time
from contextlib import contextmanager
from random import Random

import pytest

from symdet import (
    GenericityOptions,
    MonomialOrder,
    a_l_ideal,
    buchberger,
    colength_local,
    colength_truncated_oracle,
    expected_codim,
    kernel_locus_ideal,
    mixed_polar_degree,
    mora_normal_form,
    polar_degree_hypersurface,
    polar_is_empty,
    poly_parse,
    spolys_reduce_to_zero,
    total_polar_degree_corank2,
)
from symdet.instrumentation import counters
from symdet.matrices import IdealSpec, sym_matrix_build
from symdet.poly_core import Monomial, Polynomial

from conftest import (
    brute_force_box_count,
    random_symmetric_matrix,
    random_zero_dim_ideal,
    surface_matrix,
)


@contextmanager
def criterion(number: int, description: str):
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {number}: FAIL - {description}")
        raise
    print(f"ACCEPTANCE {number}: PASS - {description}")


def test_criterion_1_reference_colengths():
    with criterion(1, "reference colengths 3 / 12 / 2, exact, under 5 s each"):
        surface = surface_matrix()
        for (i, j, level, expected) in [(3, 1, 1, 3), (2, 2, 1, 12), (2, 2, 2, 2)]:
            start = time.perf_counter()
            result = colength_local(a_l_ideal(surface, i, j, level))
            elapsed = time.perf_counter() - start
            assert result.value == expected
            assert elapsed < 5.0


def test_criterion_2_mixed_degrees():
    with criterion(2, "mixed degrees 3 for (3,1) and 10 = 12 - 2 for (2,2), RowBound"):
        surface = surface_matrix()
        opts = GenericityOptions(trials=1, seed=0)
        r31 = mixed_polar_degree(surface, 3, 1, opts)
        assert r31.degree == 3
        assert r31.case.value == "RowBound"
        r22 = mixed_polar_degree(surface, 2, 2, opts)
        assert r22.degree == 10
        assert r22.case.value == "RowBound"
        assert [(e.level, e.colength, e.sign) for e in r22.per_level] == [
            (1, 12, 1),
            (2, 2, -1),
        ]


def test_criterion_3_total_degree():
    with criterion(3, "total degree 42 = 4*3 + 3*10 with vanishing edge terms, even pre-halving sum"):
        surface = surface_matrix()
        report = total_polar_degree_corank2(surface, GenericityOptions(trials=1, seed=0))
        assert report.degree == 42
        assert report.pre_halving_sum == 84
        assert report.pre_halving_sum % 2 == 0
        by_pair = {(t["i"], t["j"]): t["degree"] for t in report.binomial_terms}
        assert by_pair[(4, 0)] == 0
        assert by_pair[(0, 4)] == 0
        assert 4 * by_pair[(3, 1)] + 3 * by_pair[(2, 2)] == 42


def test_criterion_4_j_zero_vanishes_without_ideals():
    with criterion(4, "(i, 0) mixed degree is 0 for random matrices, no ideal computed"):
        rng = Random(1001)
        before = counters.snapshot()
        for _ in range(10):
            n = rng.choice([2, 3, 4])
            q = rng.choice([2, 3, 4, 5])
            matrix = random_symmetric_matrix(rng, n, q)
            for i in range(0, n + 2):
                report = mixed_polar_degree(matrix, i, 0)
                assert report.degree == 0
        assert counters.snapshot() == before


def test_criterion_5_oracle_equivalence():
    with criterion(5, "staircase colength == truncation-oracle colength, exactly"):
        surface = surface_matrix()
        for (i, j, level) in [(3, 1, 1), (2, 2, 1), (2, 2, 2)]:
            spec = a_l_ideal(surface, i, j, level)
            assert colength_local(spec).value == colength_truncated_oracle(spec).value
        rng = Random(2718)
        for _ in range(20):
            spec = random_zero_dim_ideal(rng, rng.choice([2, 2, 3]))
            primary = colength_local(spec)
            oracle = colength_truncated_oracle(spec, degree_cap=30)
            assert primary.is_finite and oracle.is_finite
            assert primary.value == oracle.value


def test_criterion_6_congruence_stability():
    with criterion(6, "mixed degrees unchanged under 3 random integer congruences"):
        surface = surface_matrix()
        opts = GenericityOptions(trials=3, seed=0)
        for (i, j, expected) in [(3, 1, 3), (2, 2, 10)]:
            report = mixed_polar_degree(surface, i, j, opts)
            assert len(report.trial_degrees) == 4  # identity + 3 congruences
            assert report.trial_degrees == [expected] * 4
            assert report.disagreement == []


def test_criterion_7_hypersurface_case():
    with criterion(7, "corank-1 degree = 2^(q-1) * colength; 2 for the plane pencil, 0 for q > n"):
        f = sym_matrix_build(2, 2, [["x", "y"], ["y", "-x"]], ["x", "y"])
        report = polar_degree_hypersurface(f, GenericityOptions(trials=1, seed=0))
        assert report.degree == 2
        assert report.colength == 1
        assert report.factor == 2 ** (f.num_vars - 1) == 2
        oracle = colength_truncated_oracle(kernel_locus_ideal(f, report.kernel_section))
        assert oracle.value == 1
        tall = sym_matrix_build(2, 3, [["x", "y"], ["y", "z"]], ["x", "y", "z"])
        assert polar_degree_hypersurface(tall, GenericityOptions(trials=1, seed=0)).degree == 0


def test_criterion_8_formula_predicates():
    with criterion(8, "codimension formula and polar emptiness bound"):
        assert expected_codim(4, 2) == 3
        for dim in range(8):
            assert polar_is_empty(4, 2, dim) is (dim <= 2)


def test_criterion_9_engine_soundness():
    with criterion(9, "S-polynomials reduce to zero; Mora unit case; 50 monomial staircases"):
        surface = surface_matrix()
        for spec in [
            a_l_ideal(surface, 2, 2, 1),
            a_l_ideal(surface, 3, 1, 1),
            IdealSpec([poly_parse(s, ["x", "y"]) for s in ["x^2 + y", "x*y - 1"]], 2),
        ]:
            assert spolys_reduce_to_zero(buchberger(spec))
        x = poly_parse("x", ["x"])
        g = poly_parse("x - x^2", ["x"])
        assert mora_normal_form(x, [g], MonomialOrder.NEGDEGREVLEX).is_zero
        rng = Random(31415)
        for _ in range(50):
            q = rng.choice([2, 3])
            exps = []
            for k in range(q):
                pure = [0] * q
                pure[k] = rng.randint(1, 4)
                exps.append(tuple(pure))
            for _ in range(rng.randint(0, 3)):
                exps.append(tuple(rng.randint(0, 3) for _ in range(q)))
            exps = [e for e in exps if any(e)]
            gens = [Polynomial(q, [(Monomial(e), 1)]) for e in exps]
            expected = brute_force_box_count(exps, q)
            assert colength_local(IdealSpec(gens, q)).value == expected
