"""Shared fixtures: the 4x4 space-surface presentation and random generators."""

from __future__ import annotations

from fractions import Fraction
from random import Random

import pytest

from symdet import Polynomial, SymPolyMatrix, poly_parse
from symdet.matrices import sym_matrix_build
from symdet.poly_core import Monomial, QQ

VARS5 = ["x1", "x2", "x3", "x4", "x5"]

SURFACE_GRID = [
    ["x1", "x2", "x3", "x4"],
    ["x2", "x3", "x4", "x5"],
    ["x3", "x4", "x5", "x1"],
    ["x4", "x5", "x1", "2*x2"],
]


def surface_matrix() -> SymPolyMatrix:
    """The 4x4 symmetric presentation over C^5 used as the worked reference
    example everywhere (known colengths 3/12/2, mixed degrees 3/10, total
    degree 42; the 12 cross-checked against the truncation oracle)."""
    return sym_matrix_build(4, 5, SURFACE_GRID, VARS5)


@pytest.fixture
def surface():
    return surface_matrix()


def p5(source: str) -> Polynomial:
    return poly_parse(source, VARS5)


def random_poly(
    rng: Random,
    num_vars: int,
    max_terms: int = 4,
    max_degree: int = 3,
    coeff_bound: int = 9,
    field=QQ,
) -> Polynomial:
    terms = []
    for _ in range(rng.randint(0, max_terms)):
        exps = [0] * num_vars
        for _ in range(rng.randint(0, max_degree)):
            exps[rng.randrange(num_vars)] += 1
        coeff = Fraction(rng.randint(-coeff_bound, coeff_bound))
        terms.append((Monomial(exps), coeff))
    return Polynomial(num_vars, terms, field)


def random_symmetric_matrix(rng: Random, n: int, q: int) -> SymPolyMatrix:
    entries = [[None] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            p = random_poly(rng, q, max_terms=3, max_degree=2)
            entries[a][b] = p
            entries[b][a] = p
    return SymPolyMatrix(entries)


def random_zero_dim_ideal(rng: Random, q: int):
    """Zero-dimensional by construction: one generator per variable whose
    lowest-degree part is a pure power, plus a few extra members of the
    maximal ideal."""
    from symdet import IdealSpec

    gens = []
    for k in range(q):
        e = rng.randint(1, 3)
        exps = [0] * q
        exps[k] = e
        terms = [(Monomial(exps), 1)]
        for _ in range(rng.randint(0, 2)):
            extra = [0] * q
            for _ in range(e + rng.randint(1, 2)):
                extra[rng.randrange(q)] += 1
            terms.append((Monomial(extra), rng.randint(-4, 4)))
        gens.append(Polynomial(q, terms))
    for _ in range(rng.randint(0, 2)):
        terms = []
        for _ in range(rng.randint(1, 3)):
            extra = [0] * q
            for _ in range(rng.randint(1, 3)):
                extra[rng.randrange(q)] += 1
            terms.append((Monomial(extra), rng.randint(-4, 4)))
        extra_poly = Polynomial(q, terms)
        if not extra_poly.is_zero and extra_poly.constant_term() == 0:
            gens.append(extra_poly)
    return IdealSpec(gens, q)


def brute_force_box_count(lead_exps, q):
    """Independent lattice count for a monomial ideal: points in the bounding
    box not componentwise above any generator exponent."""
    from itertools import product as iter_product

    bounds = []
    for k in range(q):
        pure = [e[k] for e in lead_exps if all(x == 0 for i, x in enumerate(e) if i != k)]
        if not pure:
            return None
        bounds.append(min(pure))
    count = 0
    for point in iter_product(*(range(b) for b in bounds)):
        if not any(all(point[k] >= e[k] for k in range(q)) for e in lead_exps):
            count += 1
    return count
