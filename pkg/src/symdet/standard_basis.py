"""Groebner bases (global orders), Mora standard bases (local orders), and two
independent engines for the colength of a zero-dimensional local ideal.

The primary engine computes a NEGDEGREVLEX standard basis with Mora's weak
normal form (ecart-minimizing reducer choice, intermediate results joining the
reducer set) and counts the monomials under the leading-term staircase.  The
oracle engine never looks at standard bases: it truncates the quotient at
increasing degrees and reads the dimension off exact sparse row reduction,
stopping only when the dimension stabilizes AND every monomial of the current
degree is reachable, which rules out false convergence on positive-dimensional
ideals.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from itertools import product as iter_product

from .errors import FieldMismatchError, ResourceExhaustedError
from .instrumentation import counters
from .matrices import IdealSpec
from .poly_core import (
    DEFAULT_PRIME,
    Field,
    Monomial,
    MonomialOrder,
    Polynomial,
    PrimeField,
    exponent_sort_key,
    monomial_sort_key,
)

DEFAULT_STEP_CAP = 10**6
DEFAULT_DEGREE_CAP = 50


@dataclass
class StandardBasis:
    """An auto-reduced basis: no leading monomial divides another's.

    For the global order this is the unique reduced Groebner basis; for the
    local order elements are monic and lead-minimal but tails are left alone
    (full tail reduction need not terminate in the local ring).
    """

    basis: list[Polynomial]
    order: MonomialOrder
    leading_monomials: list[Monomial]
    num_vars: int


@dataclass
class ColengthResult:
    """Outcome of a colength computation.

    ``status`` is "finite" (with ``value`` and the standard-monomial
    ``witness``), "infinite" (proved positive-dimensional by the staircase),
    or "undetermined" (the truncation oracle hit its degree cap, which cannot
    distinguish a genuinely infinite colength from a cap that is too small).
    """

    value: int | None
    status: str
    method: str
    witness: list[Monomial] | None = None

    @property
    def is_finite(self) -> bool:
        return self.status == "finite"

    def to_json(self, var_names=None) -> dict:
        out = {"value": self.value, "status": self.status, "method": self.method}
        if self.witness is not None:
            out["witness"] = [m.to_string(var_names) for m in self.witness]
        return out


class _Budget:
    __slots__ = ("remaining",)

    def __init__(self, steps: int):
        self.remaining = steps

    def tick(self) -> None:
        self.remaining -= 1
        if self.remaining < 0:
            raise ResourceExhaustedError("reduction step cap exceeded")


# ---------------------------------------------------------------------------
# Engine-internal representation: dict {exponent tuple: coefficient}
# ---------------------------------------------------------------------------


def _to_dict(p: Polynomial) -> dict:
    return {m.exponents: c for m, c in p.terms}


def _from_dict(d: dict, num_vars: int, field: Field) -> Polynomial:
    return Polynomial.from_dict(num_vars, d, field)


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


class _Reducer:
    """A basis element prepared for repeated reduction steps."""

    __slots__ = ("lead", "lc", "tail", "ecart")

    def __init__(self, d: dict, keyf, field):
        lead = min(d, key=keyf)
        self.lead = lead
        self.lc = d[lead]
        self.tail = [(e, c) for e, c in d.items() if e != lead]
        maxdeg = max(sum(e) for e in d)
        self.ecart = maxdeg - sum(lead)


def _reduce_once(h: dict, m: tuple, red: _Reducer, field) -> None:
    """h -= (h[m]/lc) * x^(m-lead) * g, in place; cancels the term at m."""
    factor = field.div(h.pop(m), red.lc)
    shift = tuple(a - b for a, b in zip(m, red.lead))
    zero = field.zero
    for e, c in red.tail:
        key = tuple(a + b for a, b in zip(e, shift))
        val = field.sub(h.get(key, zero), field.mul(factor, c))
        if val == zero:
            h.pop(key, None)
        else:
            h[key] = val


def _normal_form_dict(f: dict, reducers: list[_Reducer], keyf, field, budget: _Budget) -> dict:
    """Fully reduced normal form for global orders (every term reduced)."""
    h = dict(f)
    result: dict = {}
    while h:
        m = min(h, key=keyf)
        for red in reducers:
            if _divides(red.lead, m):
                budget.tick()
                _reduce_once(h, m, red, field)
                break
        else:
            result[m] = h.pop(m)
    return result


def _mora_weak_nf(
    f: dict, reducers: list[_Reducer], keyf, field, budget: _Budget, trace=None
) -> dict:
    """Mora weak normal form: u*f = sum a_i g_i + r with u a unit and LM(r)
    outside the leading ideal of the reducers.  Intermediate remainders with
    smaller ecart join the local reducer set; that is what makes division by
    elements like x - x^2 terminate with the correct local answer."""
    t = list(reducers)
    h = dict(f)
    while h:
        m = min(h, key=keyf)
        best = None
        for red in t:
            if _divides(red.lead, m) and (best is None or red.ecart < best.ecart):
                best = red
        if best is None:
            return h
        ecart_h = max(sum(e) for e in h) - sum(m)
        if best.ecart > ecart_h:
            t.append(_Reducer(dict(h), keyf, field))
        if trace is not None:
            trace.append((m, best.lead))
        budget.tick()
        _reduce_once(h, m, best, field)
    return h


def _weak_nf(f, reducers, keyf, field, budget, order):
    if order.is_global:
        return _normal_form_dict(f, reducers, keyf, field, budget)
    return _mora_weak_nf(f, reducers, keyf, field, budget)


# ---------------------------------------------------------------------------
# Public normal forms
# ---------------------------------------------------------------------------


def _prepare(fs):
    if not fs:
        raise ValueError("empty polynomial list")
    q = fs[0].num_vars
    field = fs[0].field
    for g in fs:
        if g.num_vars != q or g.field != field:
            raise FieldMismatchError("polynomials live in different rings")
    return q, field


def normal_form(
    f: Polynomial,
    g_list: list[Polynomial],
    order: MonomialOrder = MonomialOrder.DEGREVLEX,
    step_cap: int = DEFAULT_STEP_CAP,
) -> Polynomial:
    """Fully reduced division remainder for a global order."""
    if not order.is_global:
        raise ValueError("normal_form requires a global order; use mora_normal_form")
    q, field = _prepare([f] + [g for g in g_list if not g.is_zero])
    keyf = exponent_sort_key(order)
    reducers = [_Reducer(_to_dict(g), keyf, field) for g in g_list if not g.is_zero]
    budget = _Budget(step_cap)
    return _from_dict(_normal_form_dict(_to_dict(f), reducers, keyf, field, budget), q, field)


def mora_normal_form(
    f: Polynomial,
    g_list: list[Polynomial],
    order: MonomialOrder = MonomialOrder.NEGDEGREVLEX,
    step_cap: int = DEFAULT_STEP_CAP,
    trace: list | None = None,
) -> Polynomial:
    """Local normal form: u*f = sum a_i g_i + r for some unit u, with no term
    of r divisible by a leading monomial of ``g_list``.

    The unit is implicit; pass ``trace`` to record the (term, reducer lead)
    steps taken.  May exhaust the step cap on ideals whose staircase is
    infinite, since then infinitely many reduced terms can exist.
    """
    if order.is_global:
        raise ValueError("mora_normal_form requires a local order")
    gs = [g for g in g_list if not g.is_zero]
    q, field = _prepare([f] + gs)
    keyf = exponent_sort_key(order)
    reducers = [_Reducer(_to_dict(g), keyf, field) for g in gs]
    budget = _Budget(step_cap)
    h = _to_dict(f)
    result: dict = {}
    while h:
        h = _mora_weak_nf(h, reducers, keyf, field, budget, trace)
        if not h:
            break
        m = min(h, key=keyf)
        result[m] = h.pop(m)
    return _from_dict(result, q, field)


# ---------------------------------------------------------------------------
# Basis computation (Buchberger loop, weak normal form under local orders)
# ---------------------------------------------------------------------------


def _minimalize(entries: list[dict], keyf) -> list[dict]:
    """Keep only elements whose lead is not divisible by another kept lead.

    Divisors have smaller total degree, so scanning by lead degree ascending
    guarantees every potential divisor is seen first under either order.
    """
    by_pref = sorted(entries, key=lambda d: (sum(min(d, key=keyf)), keyf(min(d, key=keyf))))
    kept: list[dict] = []
    kept_leads: list[tuple] = []
    for d in by_pref:
        lead = min(d, key=keyf)
        if not any(_divides(kl, lead) for kl in kept_leads):
            kept.append(d)
            kept_leads.append(lead)
    return kept


def _monic(d: dict, keyf, field) -> dict:
    lead = min(d, key=keyf)
    lc = d[lead]
    if lc == field.one:
        return d
    return {e: field.div(c, lc) for e, c in d.items()}


def _basis_loop(
    gens: list[dict], keyf, field, order: MonomialOrder, budget: _Budget
) -> list[dict]:
    g = [_monic(d, keyf, field) for d in gens if d]
    if not g:
        return []
    leads = [min(d, key=keyf) for d in g]
    pairs = {(a, b) for a in range(len(g)) for b in range(a + 1, len(g))}

    def lcm_exps(e1, e2):
        return tuple(max(x, y) for x, y in zip(e1, e2))

    while pairs:
        a, b = min(pairs, key=lambda ab: (sum(lcm_exps(leads[ab[0]], leads[ab[1]])), ab))
        pairs.discard((a, b))
        la, lb = leads[a], leads[b]
        lcm = lcm_exps(la, lb)
        # Product criterion: coprime leads never yield a new element.
        if lcm == tuple(x + y for x, y in zip(la, lb)):
            continue
        # Chain criterion: a third lead inside the lcm whose pairs with a and
        # b have both been dealt with already.
        skip = False
        for k in range(len(g)):
            if k in (a, b) or not _divides(leads[k], lcm):
                continue
            pa = (min(a, k), max(a, k))
            pb = (min(b, k), max(b, k))
            if pa not in pairs and pb not in pairs:
                skip = True
                break
        if skip:
            continue
        # S-polynomial of two monic elements.
        budget.tick()
        s: dict = {}
        for src, lead in ((g[a], la), (g[b], lb)):
            shift = tuple(x - y for x, y in zip(lcm, lead))
            sign = field.one if lead is la else field.neg(field.one)
            for e, c in src.items():
                key = tuple(x + y for x, y in zip(e, shift))
                val = field.add(s.get(key, field.zero), field.mul(sign, c))
                if val == field.zero:
                    s.pop(key, None)
                else:
                    s[key] = val
        reducers = [_Reducer(d, keyf, field) for d in g]
        r = _weak_nf(s, reducers, keyf, field, budget, order)
        if r:
            r = _monic(r, keyf, field)
            new_index = len(g)
            g.append(r)
            leads.append(min(r, key=keyf))
            pairs.update((i, new_index) for i in range(new_index))
    return g


def _autoreduce_global(g: list[dict], keyf, field, budget: _Budget) -> list[dict]:
    g = _minimalize(g, keyf)
    reduced = []
    for idx, d in enumerate(g):
        others = [_Reducer(e, keyf, field) for k, e in enumerate(g) if k != idx]
        r = _normal_form_dict(d, others, keyf, field, budget)
        reduced.append(_monic(r, keyf, field))
    return reduced


def _finish_basis(
    g: list[dict], keyf, field, order: MonomialOrder, num_vars: int, budget: _Budget
) -> StandardBasis:
    if order.is_global:
        g = _autoreduce_global(g, keyf, field, budget)
    else:
        g = [_monic(d, keyf, field) for d in _minimalize(g, keyf)]
    g = sorted(g, key=lambda d: keyf(min(d, key=keyf)), reverse=True)  # ascending order
    polys = [_from_dict(d, num_vars, field) for d in g]
    leads = [Monomial(min(d, key=keyf)) for d in g]
    return StandardBasis(polys, order, leads, num_vars)


def _compute_basis(ideal: IdealSpec, order: MonomialOrder, step_cap: int) -> StandardBasis:
    counters.standard_bases += 1
    field = ideal.field
    keyf = exponent_sort_key(order)
    budget = _Budget(step_cap)
    gens = [_to_dict(g) for g in ideal.generators]
    g = _basis_loop(gens, keyf, field, order, budget)
    return _finish_basis(g, keyf, field, order, ideal.num_vars, budget)


def buchberger(
    ideal: IdealSpec,
    order: MonomialOrder = MonomialOrder.DEGREVLEX,
    step_cap: int = DEFAULT_STEP_CAP,
) -> StandardBasis:
    """Reduced Groebner basis under a global order."""
    if not order.is_global:
        raise ValueError("buchberger requires a global order")
    return _compute_basis(ideal, order, step_cap)


def standard_basis_local(
    ideal: IdealSpec, step_cap: int = DEFAULT_STEP_CAP
) -> StandardBasis:
    """Standard basis under NEGDEGREVLEX via Mora's algorithm."""
    return _compute_basis(ideal, MonomialOrder.NEGDEGREVLEX, step_cap)


def ideal_membership(f: Polynomial, basis: StandardBasis, step_cap: int = DEFAULT_STEP_CAP) -> bool:
    """Membership of f in the ideal (localized at the origin for local orders)."""
    if basis.order.is_global:
        return normal_form(f, basis.basis, basis.order, step_cap).is_zero
    return mora_normal_form(f, basis.basis, basis.order, step_cap).is_zero


def spolys_reduce_to_zero(basis: StandardBasis, step_cap: int = DEFAULT_STEP_CAP) -> bool:
    """Buchberger criterion check on a finished basis (weak NF when local)."""
    field = basis.basis[0].field if basis.basis else None
    if field is None:
        return True
    keyf = exponent_sort_key(basis.order)
    budget = _Budget(step_cap)
    dicts = [_to_dict(p) for p in basis.basis]
    reducers = [_Reducer(d, keyf, field) for d in dicts]
    leads = [r.lead for r in reducers]
    for a in range(len(dicts)):
        for b in range(a + 1, len(dicts)):
            lcm = tuple(max(x, y) for x, y in zip(leads[a], leads[b]))
            s: dict = {}
            for idx, sign in ((a, field.one), (b, field.neg(field.one))):
                shift = tuple(x - y for x, y in zip(lcm, leads[idx]))
                fac = field.div(sign, reducers[idx].lc)
                for e, c in dicts[idx].items():
                    key = tuple(x + y for x, y in zip(e, shift))
                    val = field.add(s.get(key, field.zero), field.mul(fac, c))
                    if val == field.zero:
                        s.pop(key, None)
                    else:
                        s[key] = val
            if _weak_nf(s, reducers, keyf, field, budget, basis.order):
                return False
    return True


# ---------------------------------------------------------------------------
# Colength via the staircase
# ---------------------------------------------------------------------------


def is_zero_dimensional_local(basis: StandardBasis) -> bool:
    """True iff the leading ideal contains a pure power of every variable."""
    if basis.num_vars == 0:
        return True
    leads = basis.leading_monomials
    if any(m.total_degree == 0 for m in leads):
        return True  # unit ideal
    covered = set()
    for m in leads:
        var = m.pure_power_variable()
        if var is not None:
            covered.add(var)
    return len(covered) == basis.num_vars


_LOCAL_KEY = monomial_sort_key(MonomialOrder.NEGDEGREVLEX)


def _staircase_monomials(leads: list[Monomial], num_vars: int) -> list[Monomial]:
    """Monomials outside the leading ideal, in increasing degree order."""
    if any(m.total_degree == 0 for m in leads):
        return []
    bounds = [None] * num_vars
    for m in leads:
        var = m.pure_power_variable()
        if var is not None:
            e = m.exponents[var]
            if bounds[var] is None or e < bounds[var]:
                bounds[var] = e
    if any(b is None for b in bounds):
        raise ValueError("staircase is infinite: missing a pure power")
    lead_exps = [m.exponents for m in leads]
    out = []
    for exps in iter_product(*(range(b) for b in bounds)):
        if not any(_divides(le, exps) for le in lead_exps):
            out.append(Monomial(exps))
    out.sort(key=_LOCAL_KEY)
    return out


def colength_local(ideal: IdealSpec, step_cap: int = DEFAULT_STEP_CAP) -> ColengthResult:
    """Colength of the ideal in the local ring at the origin, by standard
    basis and staircase count."""
    counters.colength_runs += 1
    basis = standard_basis_local(ideal, step_cap)
    if not is_zero_dimensional_local(basis):
        return ColengthResult(None, "infinite", "MoraStaircase")
    if basis.num_vars == 0:
        witness = [] if basis.leading_monomials else [Monomial(())]
        return ColengthResult(len(witness), "finite", "MoraStaircase", witness)
    witness = _staircase_monomials(basis.leading_monomials, basis.num_vars)
    return ColengthResult(len(witness), "finite", "MoraStaircase", witness)


# ---------------------------------------------------------------------------
# Colength via truncated linear algebra (the independent oracle)
# ---------------------------------------------------------------------------


def _monomials_below(num_vars: int, degree: int) -> list[tuple]:
    """Exponent tuples of total degree < degree, in the canonical local
    enumeration (degree ascending, reverse-lex tiebreak)."""
    if num_vars == 0:
        return [()]
    out: list[tuple] = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for e in range(remaining + 1):
            rec(prefix + (e,), remaining - e, slots - 1)

    for d in range(degree):
        rec((), d, num_vars)
    # Columns must march down the local order, so sort by the canonical key.
    out.sort(key=lambda e: (sum(e), e[::-1]))
    return out


def _reduce_against(row: dict, pivots: dict, field) -> dict | None:
    row = dict(row)
    zero = field.zero
    while row:
        c = min(row)
        pivot = pivots.get(c)
        if pivot is None:
            return row
        fac = row[c]
        for col, val in pivot.items():
            new = field.sub(row.get(col, zero), field.mul(fac, val))
            if new == zero:
                row.pop(col, None)
            else:
                row[col] = new
    return None


def _insert_row(row: dict, pivots: dict, field) -> bool:
    reduced = _reduce_against(row, pivots, field)
    if reduced is None:
        return False
    lead = min(reduced)
    lc = reduced[lead]
    pivots[lead] = {c: field.div(v, lc) for c, v in reduced.items()}
    return True


def _truncation_pivots(ideal: IdealSpec, degree: int, col_of: dict, field) -> dict:
    """Echelon pivots of the span of all x^a * g truncated below ``degree``."""
    pivots: dict[int, dict] = {}
    for g in ideal.generators:
        terms = [(m.exponents, c) for m, c in g.terms]
        order_g = min(sum(e) for e, _ in terms)
        for alpha in _monomials_below(ideal.num_vars, degree - order_g):
            row = {}
            for e, c in terms:
                shifted = tuple(x + y for x, y in zip(alpha, e))
                if sum(shifted) < degree:
                    row[col_of[shifted]] = c
            if row:
                _insert_row(row, pivots, field)
    return pivots


def colength_truncated_oracle(
    ideal: IdealSpec, degree_cap: int = DEFAULT_DEGREE_CAP
) -> ColengthResult:
    """Linear-algebra colength: for increasing N, the dimension of the
    quotient truncated below degree N, accepted once it stabilizes and every
    degree-(N-1) monomial already lies in the truncated ideal."""
    if degree_cap < 2:
        raise ValueError("degree_cap must be at least 2")
    field = ideal.field
    q = ideal.num_vars
    prev_dim: int | None = None
    for degree in range(2, degree_cap + 1):
        mons = _monomials_below(q, degree)
        col_of = {e: i for i, e in enumerate(mons)}
        pivots = _truncation_pivots(ideal, degree, col_of, field)
        dim = len(mons) - len(pivots)
        if prev_dim is not None and dim == prev_dim:
            boundary = [e for e in mons if sum(e) == degree - 1]
            covered = all(
                _reduce_against({col_of[e]: field.one}, pivots, field) is None
                for e in boundary
            )
            if covered:
                pivot_cols = set(pivots)
                witness = [Monomial(e) for i, e in enumerate(mons) if i not in pivot_cols]
                witness.sort(key=_LOCAL_KEY)
                return ColengthResult(dim, "finite", "TruncatedLinearAlgebra", witness)
        prev_dim = dim
    return ColengthResult(None, "undetermined", "TruncatedLinearAlgebra")


def truncated_membership(
    f: Polynomial, ideal: IdealSpec, degree_cap: int = DEFAULT_DEGREE_CAP
) -> bool:
    """Membership of f modulo the degree-cap truncation of the ideal.

    Exact for membership of a polynomial of degree < cap in a homogeneous (or
    zero-dimensional, once the oracle stabilizes) ideal; used as the
    independent cross-check for division-based membership answers.
    """
    field = ideal.field
    q = ideal.num_vars
    mons = _monomials_below(q, degree_cap)
    col_of = {e: i for i, e in enumerate(mons)}
    pivots = _truncation_pivots(ideal, degree_cap, col_of, field)
    row = {}
    for m, c in f.terms:
        if m.total_degree >= degree_cap:
            raise ValueError("test polynomial degree exceeds the truncation cap")
        row[col_of[m.exponents]] = c
    if not row:
        return True
    return _reduce_against(row, pivots, field) is None


# ---------------------------------------------------------------------------
# Prime-field cross-check
# ---------------------------------------------------------------------------


def colength_prime_consistent(
    ideal: IdealSpec,
    p: int = DEFAULT_PRIME,
    step_cap: int = DEFAULT_STEP_CAP,
) -> bool:
    """Recompute the colength over GF(p) and compare with the rational answer.

    A probabilistic sanity check only: a mismatch raises a warning and returns
    False, it never replaces the rational result.
    """
    rational = colength_local(ideal, step_cap)
    try:
        modular = colength_local(ideal.map_to_field(PrimeField(p)), step_cap)
    except ZeroDivisionError:
        warnings.warn(f"prime {p} divides a denominator; cross-check skipped")
        return True
    agree = (rational.status, rational.value) == (modular.status, modular.value)
    if not agree:
        warnings.warn(
            f"colength mismatch between Q ({rational.value}) and GF({p}) "
            f"({modular.value}) on {ideal.label or 'an ideal'}"
        )
    return agree
