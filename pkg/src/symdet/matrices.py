"""Symmetric polynomial presentation matrices and their determinantal ideals.

This module builds the rank-condition ideals out of submatrices of a symmetric
n x n matrix of polynomials in q variables: row blocks (rows R_l..R_{n-i} by
all columns) and column blocks (rows R_{l+1}..R_n by columns C_{j+1}..C_n),
whose minors of the appropriate size generate the level-l incidence ideal.
All user-facing indices are 1-based to match the R_l / C_j naming used in
error messages.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from . import linalg
from .errors import FieldMismatchError, InputError, PolyParseError, SingularMatrixError
from .instrumentation import counters
from .poly_core import QQ, Field, Polynomial, default_var_names, poly_parse

PolyMatrix = list[list[Polynomial]]


@dataclass(frozen=True)
class IdealSpec:
    """A finite generating set in a fixed ambient polynomial ring.

    Zero generators are dropped on construction; all generators must share
    the variable count and coefficient field.
    """

    generators: tuple[Polynomial, ...]
    num_vars: int
    label: str = ""

    def __init__(self, generators: Sequence[Polynomial], num_vars: int, label: str = ""):
        gens = tuple(g for g in generators if not g.is_zero)
        for g in gens:
            if g.num_vars != num_vars:
                raise FieldMismatchError(
                    f"generator has {g.num_vars} variables, expected {num_vars}"
                )
            if g.field != gens[0].field:
                raise FieldMismatchError("generators live over different fields")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "num_vars", num_vars)
        object.__setattr__(self, "label", label)

    @property
    def field(self) -> Field:
        return self.generators[0].field if self.generators else QQ

    def map_to_field(self, field: Field) -> "IdealSpec":
        return IdealSpec([g.map_to_field(field) for g in self.generators], self.num_vars, self.label)

    def to_json(self, var_names: Sequence[str] | None = None) -> dict:
        names = list(var_names or default_var_names(self.num_vars))
        return {
            "vars": names,
            "generators": [g.to_string(names) for g in self.generators],
            "label": self.label,
        }

    @classmethod
    def from_json(cls, obj: dict, field: Field = QQ) -> "IdealSpec":
        try:
            names = list(obj["vars"])
            sources = list(obj["generators"])
        except (KeyError, TypeError) as exc:
            raise InputError(f"ideal file needs 'vars' and 'generators': {exc}") from exc
        gens = [poly_parse(s, names, field) for s in sources]
        return cls(gens, len(names), str(obj.get("label", "")))


class SymPolyMatrix:
    """An n x n symmetric matrix of polynomials in q variables."""

    __slots__ = ("n", "num_vars", "entries", "var_names")

    def __init__(
        self,
        entries: Sequence[Sequence[Polynomial]],
        var_names: Sequence[str] | None = None,
    ):
        n = len(entries)
        if n == 0:
            raise InputError("empty matrix")
        if any(len(row) != n for row in entries):
            raise InputError("presentation matrix must be square")
        q = entries[0][0].num_vars
        field = entries[0][0].field
        for row in entries:
            for p in row:
                if p.num_vars != q or p.field != field:
                    raise FieldMismatchError("matrix entries live in different rings")
        for a in range(n):
            for b in range(a + 1, n):
                if entries[a][b] != entries[b][a]:
                    raise InputError(
                        f"matrix is not symmetric: entry ({a + 1},{b + 1}) != ({b + 1},{a + 1})"
                    )
        self.n = n
        self.num_vars = q
        self.entries = tuple(tuple(row) for row in entries)
        self.var_names = tuple(var_names or default_var_names(q))

    @property
    def field(self) -> Field:
        return self.entries[0][0].field

    def entry(self, i: int, j: int) -> Polynomial:
        """1-based access."""
        return self.entries[i - 1][j - 1]

    def map_to_field(self, field: Field) -> "SymPolyMatrix":
        return SymPolyMatrix(
            [[p.map_to_field(field) for p in row] for row in self.entries], self.var_names
        )

    def to_json(self) -> dict:
        names = list(self.var_names)
        return {
            "n": self.n,
            "vars": names,
            "matrix": [[p.to_string(names) for p in row] for row in self.entries],
        }

    def __eq__(self, other):
        return isinstance(other, SymPolyMatrix) and self.entries == other.entries

    def __repr__(self):
        return f"SymPolyMatrix(n={self.n}, q={self.num_vars})"


def sym_matrix_build(
    n: int,
    q: int,
    entry_sources: Sequence[Sequence[str]],
    var_names: Sequence[str] | None = None,
    field: Field = QQ,
) -> SymPolyMatrix:
    """Parse an n x n grid of polynomial strings and validate symmetry."""
    names = list(var_names or default_var_names(q))
    if len(names) != q:
        raise InputError(f"expected {q} variable names, got {len(names)}")
    if len(entry_sources) != n or any(len(row) != n for row in entry_sources):
        raise InputError(f"expected an {n}x{n} grid of entries")
    entries = []
    for a, row in enumerate(entry_sources):
        parsed = []
        for b, src in enumerate(row):
            try:
                parsed.append(poly_parse(src, names, field))
            except PolyParseError as exc:
                raise InputError(f"entry ({a + 1},{b + 1}): {exc}") from exc
        entries.append(parsed)
    return SymPolyMatrix(entries, names)


def sym_matrix_from_json(obj: dict, field: Field = QQ) -> SymPolyMatrix:
    try:
        n = int(obj["n"])
        names = list(obj["vars"])
        grid = list(obj["matrix"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"matrix file needs 'n', 'vars' and 'matrix': {exc}") from exc
    return sym_matrix_build(n, len(names), grid, names, field)


# ---------------------------------------------------------------------------
# Determinants and minors of polynomial matrices
# ---------------------------------------------------------------------------


def _divexact(f: Polynomial, g: Polynomial) -> Polynomial:
    """Exact quotient f / g in the polynomial ring (divisibility guaranteed
    by the Bareiss invariant; a nonzero remainder means a corrupted pivot)."""
    if g.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    field = f.field
    quotient = Polynomial.zero(f.num_vars, field)
    lm_g, lc_g = g.leading_term()
    rest = f
    while not rest.is_zero:
        lm_r, lc_r = rest.leading_term()
        if not lm_g.divides(lm_r):
            raise ArithmeticError("inexact polynomial division inside Bareiss")
        t = Polynomial(f.num_vars, [(lm_r.quotient(lm_g), field.div(lc_r, lc_g))], field)
        quotient = quotient + t
        rest = rest - t * g
    return quotient


def _det_cofactor(m: Sequence[Sequence[Polynomial]]) -> Polynomial:
    k = len(m)
    if k == 1:
        return m[0][0]
    if k == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    result = None
    for idx in range(k):
        if m[0][idx].is_zero:
            continue
        sub = [[row[c] for c in range(k) if c != idx] for row in m[1:]]
        piece = m[0][idx] * _det_cofactor(sub)
        if idx % 2:
            piece = -piece
        result = piece if result is None else result + piece
    if result is None:
        zero_like = m[0][0]
        return Polynomial.zero(zero_like.num_vars, zero_like.field)
    return result


def _det_bareiss(m: Sequence[Sequence[Polynomial]]) -> Polynomial:
    k = len(m)
    work = [list(row) for row in m]
    sample = work[0][0]
    one = Polynomial.constant(sample.num_vars, 1, sample.field)
    zero = Polynomial.zero(sample.num_vars, sample.field)
    sign = 1
    prev = one
    for step in range(k - 1):
        if work[step][step].is_zero:
            swap = next(
                (i for i in range(step + 1, k) if not work[i][step].is_zero), None
            )
            if swap is None:
                return zero
            work[step], work[swap] = work[swap], work[step]
            sign = -sign
        pivot = work[step][step]
        for i in range(step + 1, k):
            for j in range(step + 1, k):
                numer = pivot * work[i][j] - work[i][step] * work[step][j]
                work[i][j] = numer if step == 0 else _divexact(numer, prev)
            work[i][step] = zero
        prev = pivot
    result = work[k - 1][k - 1]
    return result if sign == 1 else -result


def poly_matrix_det(m: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Determinant of a square polynomial matrix.

    Cofactor expansion for very small sizes, fraction-free Bareiss (with exact
    polynomial division) above that to avoid the exponential blowup of naive
    expansion on dense symbolic entries.
    """
    k = len(m)
    if k == 0 or any(len(row) != k for row in m):
        raise ValueError("determinant requires a non-empty square matrix")
    if k <= 3:
        return _det_cofactor(m)
    return _det_bareiss(m)


def minors(m: Sequence[Sequence[Polynomial]], size: int) -> list[Polynomial]:
    """All size x size minors, ordered by row subset then column subset
    (both lexicographic), so generator lists are reproducible."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    if not 1 <= size <= min(rows, cols):
        raise ValueError(
            f"minor size {size} out of range for a {rows}x{cols} matrix"
        )
    out = []
    for rset in combinations(range(rows), size):
        for cset in combinations(range(cols), size):
            sub = [[m[r][c] for c in cset] for r in rset]
            out.append(poly_matrix_det(sub))
    return out


# ---------------------------------------------------------------------------
# Congruence action and kernel loci
# ---------------------------------------------------------------------------


def _scale_poly(p: Polynomial, c) -> Polynomial:
    return p.scale(c)


def congruence(f: SymPolyMatrix, m: Sequence[Sequence]) -> SymPolyMatrix:
    """Return M^t F M for an invertible rational matrix M (symmetry preserved)."""
    n = f.n
    mm = linalg.as_fraction_matrix(m)
    if len(mm) != n or any(len(row) != n for row in mm):
        raise InputError(f"congruence matrix must be {n}x{n}")
    if linalg.det(mm) == 0:
        raise SingularMatrixError("congruence matrix is singular")
    if linalg.is_identity(mm):
        return f
    zero = Polynomial.zero(f.num_vars, f.field)
    # G = M^t F
    g = [
        [
            sum((_scale_poly(f.entries[c][d], mm[c][a]) for c in range(n) if mm[c][a] != 0), zero)
            for d in range(n)
        ]
        for a in range(n)
    ]
    # H = G M
    h = [
        [
            sum((_scale_poly(g[a][d], mm[d][b]) for d in range(n) if mm[d][b] != 0), zero)
            for b in range(n)
        ]
        for a in range(n)
    ]
    return SymPolyMatrix(h, f.var_names)


def _check_level_indices(f: SymPolyMatrix, i: int, j: int, level: int) -> None:
    n = f.n
    if not 1 <= j <= i <= n - 1:
        raise ValueError(f"need 1 <= j <= i <= n-1, got (i,j)=({i},{j}) with n={n}")
    if not 1 <= level <= min(j + 1, n - i):
        raise ValueError(
            f"level l={level} outside 1..min(j+1, n-i)={min(j + 1, n - i)} for (i,j)=({i},{j})"
        )


def row_condition_matrix(f: SymPolyMatrix, i: int, j: int, level: int) -> PolyMatrix:
    """Rows R_l..R_{n-i} by all n columns: the block whose maximal minors
    express that those rows are linearly dependent."""
    _check_level_indices(f, i, j, level)
    n = f.n
    return [[f.entries[r][c] for c in range(n)] for r in range(level - 1, n - i)]


def column_condition_matrix(f: SymPolyMatrix, i: int, j: int, level: int) -> PolyMatrix:
    """Rows R_{l+1}..R_n by columns C_{j+1}..C_n: the block whose (n-j)-minors
    express the column rank drop.  Has exactly n-j-1 rows when l = j+1, making
    the condition vacuous at that level."""
    _check_level_indices(f, i, j, level)
    n = f.n
    return [[f.entries[r][c] for c in range(j, n)] for r in range(level, n)]


def a_l_ideal(f: SymPolyMatrix, i: int, j: int, level: int) -> IdealSpec:
    """The level-``level`` incidence ideal for the pair (i, j).

    Generators are the maximal minors of the row block followed by the
    (n-j)-minors of the column block; the column part is omitted at
    level = j+1 where the rank condition holds identically.
    """
    _check_level_indices(f, i, j, level)
    n = f.n
    counters.ideals_built += 1
    gens = minors(row_condition_matrix(f, i, j, level), n - i - level + 1)
    if level < j + 1:
        gens += minors(column_condition_matrix(f, i, j, level), n - j)
    return IdealSpec(gens, f.num_vars, label=f"A({i},{j},{n})_{level}")


def kernel_locus_ideal(f: SymPolyMatrix, w: Sequence[Sequence]) -> IdealSpec:
    """Ideal of the locus where ker F(x) meets the column span of W.

    W is an n x (n-q+1) rational matrix of full column rank; the generators
    are the maximal minors of the n x (n-q+1) polynomial product F(x) W.
    """
    n, q = f.n, f.num_vars
    if q > n:
        raise ValueError(f"kernel locus needs q <= n, got q={q}, n={n}")
    ww = linalg.as_fraction_matrix(w)
    cols = n - q + 1
    if len(ww) != n or any(len(row) != cols for row in ww):
        raise InputError(f"W must be {n}x{cols}")
    if linalg.rank(ww) != cols:
        raise SingularMatrixError("W does not have full column rank")
    counters.ideals_built += 1
    zero = Polynomial.zero(q, f.field)
    product = [
        [
            sum((_scale_poly(f.entries[r][k], ww[k][c]) for k in range(n) if ww[k][c] != 0), zero)
            for c in range(cols)
        ]
        for r in range(n)
    ]
    return IdealSpec(minors(product, cols), q, label="kernel-locus")


def expected_codim(n: int, r: int) -> int:
    """Codimension of the rank <= r locus inside symmetric n x n matrices."""
    if not 0 <= r <= n:
        raise ValueError(f"rank bound r={r} out of range 0..{n}")
    return (n - r) * (n - r + 1) // 2
