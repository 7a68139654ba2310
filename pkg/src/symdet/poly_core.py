"""Exact sparse multivariate polynomial arithmetic.

Coefficients live in a pluggable field: the rationals (``Fraction``, always in
lowest terms with positive denominator) or a prime field (residues in
``[0, p)``).  Polynomials are immutable sparse term lists kept in a canonical
order, so structural equality is semantic equality.  No floating point is used
anywhere.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from . import linalg
from .errors import FieldMismatchError, PolyParseError, SingularMatrixError

DEFAULT_PRIME = 2**31 - 1

# Parser guard only; degrees in this domain are tiny.
MAX_EXPONENT = 10**6


def is_probable_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for anything that fits in 64 bits and beyond."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    if n in small:
        return True
    if any(n % p == 0 for p in small):
        return False
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Rationals:
    """The field of exact rationals. Coefficient values are ``Fraction``."""

    tag = "Q"

    def coerce(self, value) -> Fraction:
        return Fraction(value)

    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def div(self, a, b):
        return a / b

    def neg(self, a):
        return -a

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Rationals")

    def __repr__(self):
        return "Rationals()"


class PrimeField:
    """GF(p) with residues stored as plain ints in ``[0, p)``.

    Exists as a fast probabilistic cross-check only; reported results always
    come from the rationals.
    """

    def __init__(self, p: int = DEFAULT_PRIME):
        if not is_probable_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.tag = f"F{p}"
        self.zero = 0
        self.one = 1 % p

    def coerce(self, value) -> int:
        if isinstance(value, int):
            return value % self.p
        frac = Fraction(value)
        if frac.denominator % self.p == 0:
            raise ZeroDivisionError(
                f"denominator {frac.denominator} not invertible mod {self.p}"
            )
        return frac.numerator * pow(frac.denominator, -1, self.p) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def div(self, a, b):
        return a * pow(b, -1, self.p) % self.p

    def neg(self, a):
        return -a % self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


QQ = Rationals()

Field = Rationals | PrimeField


class Monomial:
    """A power product, stored as an exponent tuple with cached total degree."""

    __slots__ = ("exponents", "total_degree")

    def __init__(self, exponents: Iterable[int]):
        exps = tuple(exponents)
        if any(e < 0 for e in exps):
            raise ValueError(f"negative exponent in {exps}")
        self.exponents = exps
        self.total_degree = sum(exps)

    @classmethod
    def unit(cls, num_vars: int) -> "Monomial":
        return cls((0,) * num_vars)

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.exponents == other.exponents

    def __hash__(self):
        return hash(self.exponents)

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(a + b for a, b in zip(self.exponents, other.exponents))

    def divides(self, other: "Monomial") -> bool:
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def quotient(self, other: "Monomial") -> "Monomial":
        """self / other; requires divisibility."""
        if not other.divides(self):
            raise ValueError(f"{other} does not divide {self}")
        return Monomial(a - b for a, b in zip(self.exponents, other.exponents))

    def lcm(self, other: "Monomial") -> "Monomial":
        return Monomial(max(a, b) for a, b in zip(self.exponents, other.exponents))

    def pure_power_variable(self) -> int | None:
        """Index of the single variable with nonzero exponent, or None."""
        nz = [i for i, e in enumerate(self.exponents) if e > 0]
        return nz[0] if len(nz) == 1 else None

    def to_string(self, var_names: Sequence[str] | None = None) -> str:
        names = var_names or default_var_names(len(self.exponents))
        parts = []
        for name, e in zip(names, self.exponents):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    def __repr__(self):
        return f"Monomial({self.exponents})"


class MonomialOrder(Enum):
    """Term orders: DEGREVLEX is global (1 smallest), NEGDEGREVLEX is local
    (1 largest; lower total degree compares greater).  Ties inside one total
    degree break by reverse lexicographic comparison of the exponent tuple in
    both cases, so colengths are order-independent while intermediate bases
    need not be."""

    DEGREVLEX = "degrevlex"
    NEGDEGREVLEX = "negdegrevlex"

    @property
    def is_global(self) -> bool:
        return self is MonomialOrder.DEGREVLEX


def exponent_sort_key(order: MonomialOrder) -> Callable[[tuple[int, ...]], tuple]:
    """Key on raw exponent tuples; ascending key = descending monomial order."""
    if order is MonomialOrder.DEGREVLEX:
        return lambda e: (-sum(e), e[::-1])
    return lambda e: (sum(e), e[::-1])


def monomial_sort_key(order: MonomialOrder) -> Callable[[Monomial], tuple]:
    if order is MonomialOrder.DEGREVLEX:
        return lambda m: (-m.total_degree, m.exponents[::-1])
    return lambda m: (m.total_degree, m.exponents[::-1])


def monomial_cmp(order: MonomialOrder, m1: Monomial, m2: Monomial) -> int:
    """Three-way comparison: +1 if m1 is greater under ``order``, -1 if less."""
    if len(m1.exponents) != len(m2.exponents):
        raise FieldMismatchError("monomials have different numbers of variables")
    key = monomial_sort_key(order)
    k1, k2 = key(m1), key(m2)
    if k1 == k2:
        return 0
    return 1 if k1 < k2 else -1


_CANONICAL_KEY = monomial_sort_key(MonomialOrder.DEGREVLEX)


def default_var_names(num_vars: int) -> list[str]:
    return [f"x{i + 1}" for i in range(num_vars)]


class Polynomial:
    """Immutable sparse polynomial: terms sorted decreasing under DEGREVLEX.

    The zero polynomial is the empty term tuple.  All arithmetic validates
    that both operands share the same variable count and coefficient field.
    """

    __slots__ = ("num_vars", "field", "terms")

    def __init__(self, num_vars: int, terms: Iterable[tuple[Monomial, object]], field: Field = QQ):
        acc: dict[tuple[int, ...], object] = {}
        for mono, coeff in terms:
            if len(mono.exponents) != num_vars:
                raise FieldMismatchError(
                    f"monomial arity {len(mono.exponents)} != num_vars {num_vars}"
                )
            c = field.coerce(coeff)
            key = mono.exponents
            if key in acc:
                c = field.add(acc[key], c)
            acc[key] = c
        self.num_vars = num_vars
        self.field = field
        self.terms = tuple(
            (Monomial(e), c)
            for e, c in sorted(acc.items(), key=_CANONICAL_KEY_EXPS)
            if c != field.zero
        )

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, num_vars: int, field: Field = QQ) -> "Polynomial":
        return cls(num_vars, (), field)

    @classmethod
    def constant(cls, num_vars: int, value, field: Field = QQ) -> "Polynomial":
        return cls(num_vars, [(Monomial.unit(num_vars), value)], field)

    @classmethod
    def variable(cls, index: int, num_vars: int, field: Field = QQ) -> "Polynomial":
        if not 0 <= index < num_vars:
            raise ValueError(f"variable index {index} out of range for {num_vars} variables")
        exps = [0] * num_vars
        exps[index] = 1
        return cls(num_vars, [(Monomial(exps), 1)], field)

    @classmethod
    def from_dict(cls, num_vars: int, coeffs: dict, field: Field = QQ) -> "Polynomial":
        return cls(num_vars, [(Monomial(e), c) for e, c in coeffs.items()], field)

    # -- basic queries -------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def total_degree(self) -> int:
        """Degree of the zero polynomial is reported as -1."""
        if not self.terms:
            return -1
        return max(m.total_degree for m, _ in self.terms)

    def leading_term(self, order: MonomialOrder = MonomialOrder.DEGREVLEX):
        """(monomial, coefficient) of the greatest term under ``order``."""
        if not self.terms:
            raise ValueError("the zero polynomial has no leading term")
        if order is MonomialOrder.DEGREVLEX:
            return self.terms[0]
        key = monomial_sort_key(order)
        return min(self.terms, key=lambda t: key(t[0]))

    def constant_term(self):
        for mono, coeff in self.terms:
            if mono.total_degree == 0:
                return coeff
        return self.field.zero

    def coefficients_dict(self) -> dict[tuple[int, ...], object]:
        return {m.exponents: c for m, c in self.terms}

    # -- arithmetic ----------------------------------------------------

    def _check_compatible(self, other: "Polynomial"):
        if self.num_vars != other.num_vars:
            raise FieldMismatchError(
                f"variable count mismatch: {self.num_vars} vs {other.num_vars}"
            )
        if self.field != other.field:
            raise FieldMismatchError(f"field mismatch: {self.field} vs {other.field}")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check_compatible(other)
        acc = dict(self.coefficients_dict())
        f = self.field
        for m, c in other.terms:
            e = m.exponents
            acc[e] = f.add(acc[e], c) if e in acc else c
        return Polynomial.from_dict(self.num_vars, acc, f)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __neg__(self) -> "Polynomial":
        f = self.field
        return Polynomial(self.num_vars, [(m, f.neg(c)) for m, c in self.terms], f)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check_compatible(other)
        f = self.field
        acc: dict[tuple[int, ...], object] = {}
        for m1, c1 in self.terms:
            e1 = m1.exponents
            for m2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, m2.exponents))
                c = f.mul(c1, c2)
                acc[e] = f.add(acc[e], c) if e in acc else c
        return Polynomial.from_dict(self.num_vars, acc, f)

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative powers are not defined for polynomials")
        result = Polynomial.constant(self.num_vars, 1, self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def scale(self, value) -> "Polynomial":
        f = self.field
        c0 = f.coerce(value)
        return Polynomial(self.num_vars, [(m, f.mul(c, c0)) for m, c in self.terms], f)

    def monic(self, order: MonomialOrder = MonomialOrder.DEGREVLEX) -> "Polynomial":
        if self.is_zero:
            return self
        _, lc = self.leading_term(order)
        f = self.field
        return Polynomial(self.num_vars, [(m, f.div(c, lc)) for m, c in self.terms], f)

    def map_to_field(self, field: Field) -> "Polynomial":
        """Reinterpret coefficients in another field (e.g. reduce mod p)."""
        return Polynomial(self.num_vars, self.terms, field)

    # -- equality / hashing / printing ---------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.num_vars == other.num_vars
            and self.field == other.field
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.num_vars, self.field, self.terms))

    def to_string(self, var_names: Sequence[str] | None = None) -> str:
        """Canonical text form: decreasing DEGREVLEX, coefficients as int or a/b."""
        if not self.terms:
            return "0"
        names = var_names or default_var_names(self.num_vars)
        parts: list[str] = []
        for mono, coeff in self.terms:
            negative = isinstance(coeff, Fraction) and coeff < 0
            mag = -coeff if negative else coeff
            mono_str = mono.to_string(names)
            if mono_str == "1":
                body = str(mag)
            elif mag == 1:
                body = mono_str
            else:
                body = f"{mag}*{mono_str}"
            if not parts:
                parts.append(f"-{body}" if negative else body)
            else:
                parts.append(f"- {body}" if negative else f"+ {body}")
        return " ".join(parts)

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"Polynomial({self.to_string()!r})"


def _CANONICAL_KEY_EXPS(item):
    e = item[0]
    return (-sum(e), e[::-1])


def poly_add(a: Polynomial, b: Polynomial) -> Polynomial:
    return a + b


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    return a * b


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

_TOKEN_OPS = set("+-*^/()")


def _tokenize(source: str):
    tokens = []
    i, n = 0, len(source)
    while i < n:
        ch = source[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and source[j].isdigit():
                j += 1
            tokens.append(("int", int(source[i:j]), i))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            tokens.append(("name", source[i:j], i))
            i = j
        elif ch in _TOKEN_OPS:
            tokens.append(("op", ch, i))
            i += 1
        else:
            raise PolyParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    """Recursive descent over +, -, *, ^, integer and a/b literals, variables."""

    def __init__(self, source: str, var_names: Sequence[str], field: Field):
        self.tokens = _tokenize(source)
        self.pos = 0
        self.num_vars = len(var_names)
        self.field = field
        self.var_index = {name: i for i, name in enumerate(var_names)}
        if len(self.var_index) != len(var_names):
            raise ValueError("duplicate variable names")

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op: str):
        kind, value, at = self.advance()
        if kind != "op" or value != op:
            raise PolyParseError(f"expected {op!r}, found {value!r}", at)

    def parse(self) -> Polynomial:
        poly = self.expr()
        kind, value, at = self.peek()
        if kind != "end":
            raise PolyParseError(f"unexpected trailing input {value!r}", at)
        return poly

    def expr(self) -> Polynomial:
        kind, value, _ = self.peek()
        negate = False
        if kind == "op" and value in "+-":
            self.advance()
            negate = value == "-"
        poly = self.term()
        if negate:
            poly = -poly
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "+-":
                self.advance()
                rhs = self.term()
                poly = poly - rhs if value == "-" else poly + rhs
            else:
                return poly

    def term(self) -> Polynomial:
        poly = self.factor()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value == "*":
                self.advance()
                poly = poly * self.factor()
            else:
                return poly

    def factor(self) -> Polynomial:
        kind, value, at = self.peek()
        if kind == "op" and value == "-":
            self.advance()
            return -self.factor()
        base = self.atom()
        kind, value, _ = self.peek()
        if kind == "op" and value == "^":
            self.advance()
            kind, value, at = self.advance()
            if kind != "int":
                raise PolyParseError("exponent must be a non-negative integer", at)
            if value > MAX_EXPONENT:
                raise PolyParseError(f"exponent {value} exceeds the safety cap", at)
            return base**value
        return base

    def atom(self) -> Polynomial:
        kind, value, at = self.advance()
        if kind == "int":
            # Rational literal a/b: a slash directly after an integer literal.
            k2, v2, _ = self.peek()
            if k2 == "op" and v2 == "/":
                self.advance()
                k3, v3, at3 = self.advance()
                if k3 != "int":
                    raise PolyParseError("expected an integer denominator", at3)
                if v3 == 0:
                    raise PolyParseError("zero denominator", at3)
                return Polynomial.constant(self.num_vars, Fraction(value, v3), self.field)
            return Polynomial.constant(self.num_vars, value, self.field)
        if kind == "name":
            index = self.var_index.get(value)
            if index is None:
                raise PolyParseError(f"unknown variable {value!r}", at)
            return Polynomial.variable(index, self.num_vars, self.field)
        if kind == "op" and value == "(":
            poly = self.expr()
            self.expect_op(")")
            return poly
        raise PolyParseError(f"unexpected token {value!r}", at)


def poly_parse(source: str, var_names: Sequence[str], field: Field = QQ) -> Polynomial:
    """Parse an exact polynomial expression over the named variables."""
    return _Parser(source, var_names, field).parse()


# ---------------------------------------------------------------------------
# Linear substitution
# ---------------------------------------------------------------------------


def substitute_linear_map(p: Polynomial, a: Sequence[Sequence]) -> Polynomial:
    """Return p(A x) for a q x s rational matrix A (s target variables).

    No invertibility is required here; this is the workhorse behind both the
    square substitution and ideal restriction to linear subspaces.
    """
    rows = linalg.as_fraction_matrix(a)
    if len(rows) != p.num_vars:
        raise ValueError(f"matrix has {len(rows)} rows, expected {p.num_vars}")
    s = len(rows[0]) if rows else 0
    field = p.field
    forms = [
        Polynomial(
            s,
            [(Monomial([int(i == j) for j in range(s)]), c) for i, c in enumerate(row) if c != 0],
            field,
        )
        for row in rows
    ]
    powers: dict[tuple[int, int], Polynomial] = {}

    def power_of(var: int, e: int) -> Polynomial:
        key = (var, e)
        if key not in powers:
            powers[key] = forms[var] ** e
        return powers[key]

    result = Polynomial.zero(s, field)
    for mono, coeff in p.terms:
        term = Polynomial.constant(s, coeff, field)
        for var, e in enumerate(mono.exponents):
            if e:
                term = term * power_of(var, e)
        result = result + term
    return result


def substitute_linear(p: Polynomial, a: Sequence[Sequence]) -> Polynomial:
    """Return p(A x) for an invertible q x q rational matrix A.

    Invertibility is checked by exact determinant; total degree is preserved.
    """
    rows = linalg.as_fraction_matrix(a)
    if len(rows) != p.num_vars or any(len(r) != p.num_vars for r in rows):
        raise ValueError(
            f"substitution matrix must be {p.num_vars}x{p.num_vars}"
        )
    if p.num_vars and linalg.det(rows) == 0:
        raise SingularMatrixError("substitution matrix is singular")
    return substitute_linear_map(p, rows)
