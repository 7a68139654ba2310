"""Degrees of polar curves attached to a symmetric presentation matrix.

Three computations live here, all reduced to local colengths of determinantal
ideals built from the matrix:

* mixed degrees for a pair (i, j) of hyperplane counts, via an alternating
  sum of level colengths whose range depends on how i and j sit against n;
* the total corank-2 polar degree, a halved binomial combination of the mixed
  degrees (the halving reflects the 2:1 cover by the kernel-pair modification,
  so the pre-halving sum must be even);
* the corank-1 (hypersurface) polar degree, 2^(q-1) times the colength of the
  locus where the kernel line of F meets a generic linear subspace.

Genericity of coordinates is managed by rerunning under random integer
congruence transforms M^t F M and taking the minimum finite value (colengths
are upper semicontinuous, so the generic value is the minimum); disagreements
between finite trials are reported, never silently dropped.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from math import comb
from random import Random
from typing import Callable, Sequence

from . import linalg
from .errors import (
    AllTrialsNotFiniteError,
    NotFiniteError,
    OddSumError,
)
from .matrices import (
    IdealSpec,
    SymPolyMatrix,
    a_l_ideal,
    congruence,
    expected_codim,
    kernel_locus_ideal,
    minors,
    poly_matrix_det,
)
from .poly_core import substitute_linear_map
from .standard_basis import (
    DEFAULT_DEGREE_CAP,
    DEFAULT_STEP_CAP,
    colength_local,
)

DEFAULT_TRIALS = 3
CONGRUENCE_ENTRY_BOUND = 5
SLICE_ENTRY_BOUND = 9


def polar_is_empty(n: int, r: int, dim: int) -> bool:
    """Whether the dimension-``dim`` polar variety of the rank <= r locus is
    forced to be empty: true iff dim <= r(r+1)/2 - 1."""
    if not 0 <= r <= n:
        raise ValueError(f"rank bound r={r} out of range 0..{n}")
    if dim < 0:
        raise ValueError(f"polar dimension must be non-negative, got {dim}")
    return dim <= r * (r + 1) // 2 - 1


@dataclass(frozen=True)
class GenericityOptions:
    """Knobs shared by the degree computations.

    ``trials`` counts the random congruence transforms tried in addition to
    the identity; all randomness is drawn from ``seed`` so reports are
    reproducible byte for byte.
    """

    trials: int = DEFAULT_TRIALS
    seed: int = 0
    step_cap: int = DEFAULT_STEP_CAP
    degree_cap: int = DEFAULT_DEGREE_CAP
    check_target: bool = True
    include_witness: bool = False

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.step_cap <= 0 or self.degree_cap < 2:
            raise ValueError("caps must be positive (degree_cap >= 2)")


class PolarCase(str, Enum):
    I_ZERO = "IZero"
    ROW_BOUND = "RowBound"
    COL_BOUND_ODD = "ColBoundOdd"
    COL_BOUND_EVEN = "ColBoundEven"
    OUT_OF_RANGE = "OutOfRange"


@dataclass(frozen=True)
class LevelEntry:
    level: int
    colength: int
    sign: int

    def to_json(self) -> dict:
        return {"l": self.level, "colength": self.colength, "sign": self.sign}


@dataclass
class MixedPolarReport:
    """Everything needed to audit one mixed degree: the case taken, every
    level colength with its sign, the transform that produced the accepted
    value, and the full list of per-trial degrees."""

    i: int
    j: int
    n: int
    q: int
    case: PolarCase
    per_level: list[LevelEntry]
    degree: int
    generic_transform: list[list[int]] | None
    seed: int
    trials: int
    trial_degrees: list[int | None] = field(default_factory=list)
    transforms: list[list[list[int]]] = field(default_factory=list)
    disagreement: list[int] = field(default_factory=list)
    swapped: bool = False
    note: str = ""
    witnesses: dict[int, list[str]] | None = None

    def to_json(self) -> dict:
        out = {
            "i": self.i,
            "j": self.j,
            "n": self.n,
            "q": self.q,
            "case": self.case.value,
            "per_level": [e.to_json() for e in self.per_level],
            "degree": self.degree,
            "generic_transform": self.generic_transform,
            "seed": self.seed,
            "trials": self.trials,
            "trial_degrees": self.trial_degrees,
            "transforms": self.transforms,
            "disagreement": self.disagreement,
            "swapped": self.swapped,
        }
        if self.note:
            out["note"] = self.note
        if self.witnesses is not None:
            out["witnesses"] = {str(k): v for k, v in self.witnesses.items()}
        return out


@dataclass
class PolarDegreeReport:
    target_rank: str
    n: int
    q: int
    d: int
    degree: int
    seed: int
    mixed: dict[tuple[int, int], MixedPolarReport] = field(default_factory=dict)
    binomial_terms: list[dict] = field(default_factory=list)
    pre_halving_sum: int | None = None
    colength: int | None = None
    factor: int | None = None
    kernel_section: list[list[int]] | None = None
    trial: int | None = None
    note: str = ""
    witness: list[str] | None = None

    def to_json(self) -> dict:
        out = {
            "target_rank": self.target_rank,
            "n": self.n,
            "q": self.q,
            "d": self.d,
            "degree": self.degree,
            "seed": self.seed,
        }
        if self.mixed:
            out["mixed"] = {f"{i},{j}": r.to_json() for (i, j), r in sorted(self.mixed.items())}
            out["binomial_terms"] = self.binomial_terms
            out["pre_halving_sum"] = self.pre_halving_sum
        for key in ("colength", "factor", "kernel_section", "trial", "witness"):
            val = getattr(self, key)
            if val is not None:
                out[key] = val
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class CodimReport:
    n: int
    q: int
    r: int
    expected: int
    sampled: int
    passed: bool
    seed: int

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "q": self.q,
            "r": self.r,
            "expected_codim": self.expected,
            "sampled_codim": self.sampled,
            "passed": self.passed,
            "seed": self.seed,
        }


@dataclass
class GenericityOutcome:
    value: object
    transform: list[list[int]]
    transforms: list[list[list[int]]]
    trial_keys: list[object]
    disagreement: list[object]


def _int_matrix(m) -> list[list[int]]:
    return [[int(x) for x in row] for row in m]


def genericity_stabilize(
    compute: Callable[[Sequence[Sequence]], object],
    size: int,
    opts: GenericityOptions,
    key: Callable[[object], object] = lambda v: v,
) -> GenericityOutcome:
    """Evaluate ``compute`` on the identity and on ``opts.trials`` random
    integer congruence matrices (entries in [-5, 5], nonzero determinant) and
    keep the minimum finite value, the identity winning ties.

    ``compute`` signals a non-finite trial by raising NotFiniteError; if every
    trial does so, AllTrialsNotFiniteError carries the per-trial diagnostics.
    """
    rng = Random(opts.seed)
    transforms = [linalg.identity(size)]
    for _ in range(opts.trials):
        transforms.append(linalg.random_invertible(rng, size, CONGRUENCE_ENTRY_BOUND))
    values: list[object] = []
    keys: list[object] = []
    diagnostics: list[str] = []
    for index, m in enumerate(transforms):
        try:
            v = compute(m)
        except NotFiniteError as exc:
            values.append(None)
            keys.append(None)
            diagnostics.append(f"transform #{index}: {exc}")
            continue
        values.append(v)
        keys.append(key(v))
    finite = [(k, idx) for idx, k in enumerate(keys) if k is not None]
    if not finite:
        raise AllTrialsNotFiniteError(
            f"all {len(transforms)} genericity trials were non-finite", diagnostics
        )
    _, best = min(finite)
    distinct = sorted({k for k, _ in finite})
    return GenericityOutcome(
        value=values[best],
        transform=_int_matrix(transforms[best]),
        transforms=[_int_matrix(m) for m in transforms],
        trial_keys=keys,
        disagreement=distinct if len(distinct) > 1 else [],
    )


# ---------------------------------------------------------------------------
# Codimension sampling
# ---------------------------------------------------------------------------


def _restricted_ideal(gens, q, subspace) -> IdealSpec:
    restricted = [substitute_linear_map(g, subspace) for g in gens]
    return IdealSpec(restricted, len(subspace[0]) if subspace else 0, label="slice")


def _finite_on_random_slice(gens, q, s, rng, opts, attempts) -> bool:
    """Whether the ideal has finite colength on some random s-dimensional
    linear slice.  One finite witness suffices (special slices only enlarge
    the intersection); an infinite verdict takes all attempts agreeing."""
    if s == 0:
        return True
    for _ in range(attempts):
        subspace = linalg.random_full_column_rank(rng, q, s, SLICE_ENTRY_BOUND)
        result = colength_local(_restricted_ideal(gens, q, subspace), opts.step_cap)
        if result.is_finite:
            return True
    return False


def check_codim(f: SymPolyMatrix, r: int, opts: GenericityOptions | None = None) -> CodimReport:
    """Compare the expected codimension of the rank <= r pullback with the
    codimension sampled by slicing with random linear subspaces.

    The sampled codimension is the largest slice dimension on which the ideal
    of (r+1)-minors still has finite local colength.
    """
    opts = opts or GenericityOptions()
    n, q = f.n, f.num_vars
    expected = expected_codim(n, r)
    rng = Random(opts.seed)
    if r == n:
        # Rank <= n is no condition at all; the pullback is everything.
        return CodimReport(n, q, r, expected, 0, expected == 0, opts.seed)
    gens = minors([list(row) for row in f.entries], r + 1)
    infinite_attempts = 2

    def finite_at(s: int) -> bool:
        attempts = infinite_attempts if s > 0 else 1
        return _finite_on_random_slice(gens, q, s, rng, opts, attempts)

    probe = min(expected, q)
    if finite_at(probe):
        sampled = probe
        while sampled < q and finite_at(sampled + 1):
            sampled += 1
    else:
        sampled = probe - 1
        while sampled > 0 and not finite_at(sampled):
            sampled -= 1
    return CodimReport(n, q, r, expected, sampled, sampled == expected, opts.seed)


def _ensure_corank2_target(f: SymPolyMatrix, opts: GenericityOptions) -> None:
    report = check_codim(f, f.n - 2, opts)
    if not report.passed:
        raise ValueError(
            f"presentation matrix does not cut the rank n-2 locus with expected "
            f"codimension {report.expected} (sampled {report.sampled}); "
            "pass check_target=False to skip this probe"
        )


# ---------------------------------------------------------------------------
# Mixed polar degrees
# ---------------------------------------------------------------------------


def _case_and_levels(n: int, i: int, j: int) -> tuple[PolarCase, range]:
    if n - i <= j:
        return PolarCase.ROW_BOUND, range(1, n - i + 1)
    if j % 2 == 1:
        return PolarCase.COL_BOUND_ODD, range(1, j + 2)
    return PolarCase.COL_BOUND_EVEN, range(1, j + 2)


def mixed_polar_degree(
    f: SymPolyMatrix, i: int, j: int, opts: GenericityOptions | None = None
) -> MixedPolarReport:
    """Degree of the mixed polar for hyperplane counts (i, j).

    The pair is canonicalized to j <= i first (the two kernel factors of a
    symmetric matrix play interchangeable roles).  j = 0 and out-of-range
    hyperplane powers short-circuit to zero without building any ideal.
    """
    opts = opts or GenericityOptions()
    n, q = f.n, f.num_vars
    swapped = j > i
    if swapped:
        i, j = j, i
    if i < 0 or j < 0:
        raise ValueError(f"hyperplane counts must be non-negative, got ({i},{j})")
    base = dict(i=i, j=j, n=n, q=q, seed=opts.seed, trials=opts.trials, swapped=swapped)
    if j == 0:
        return MixedPolarReport(
            case=PolarCase.I_ZERO, per_level=[], degree=0, generic_transform=None, **base
        )
    if i >= n:
        return MixedPolarReport(
            case=PolarCase.OUT_OF_RANGE,
            per_level=[],
            degree=0,
            generic_transform=None,
            note="hyperplane-class power exceeds the projective fiber dimension",
            **base,
        )
    if i + j != q - 1:
        raise ValueError(
            f"mixed polars are curves only for i+j = q-1; got i+j={i + j} with q={q}"
        )
    if opts.check_target:
        _ensure_corank2_target(f, opts)
    case, levels = _case_and_levels(n, i, j)

    def compute(m):
        ft = congruence(f, m)
        per: list[LevelEntry] = []
        witnesses: dict[int, list[str]] = {}
        for level in levels:
            ideal = a_l_ideal(ft, i, j, level)
            result = colength_local(ideal, opts.step_cap)
            if not result.is_finite:
                raise NotFiniteError(
                    f"ideal {ideal.label} is not zero-dimensional at the origin",
                    level=level,
                    label=ideal.label,
                )
            sign = 1 if level % 2 == 1 else -1
            per.append(LevelEntry(level, result.value, sign))
            if opts.include_witness:
                witnesses[level] = [
                    mon.to_string(f.var_names) for mon in result.witness
                ]
        if case is PolarCase.COL_BOUND_EVEN:
            # The even-j formula subtracts the level j+1 colength once more,
            # cancelling its contribution; keep both entries visible.
            last = per[-1]
            per.append(LevelEntry(last.level, last.colength, -1))
        degree = sum(e.sign * e.colength for e in per)
        if degree < 0:
            # A negative alternating sum means the level colengths are not
            # those of a generic coordinate choice; treat like any other
            # failed trial so a congruence retry can rescue the run.
            raise NotFiniteError(
                f"alternating colength sum is negative ({degree}); "
                "coordinates judged non-generic"
            )
        return degree, per, witnesses

    outcome = genericity_stabilize(compute, n, opts, key=lambda v: v[0])
    degree, per, witnesses = outcome.value
    note = ""
    if case is PolarCase.COL_BOUND_EVEN:
        note = "even-j case: the level j+1 term is cancelled by the extra subtraction"
    return MixedPolarReport(
        case=case,
        per_level=per,
        degree=degree,
        generic_transform=outcome.transform,
        trial_degrees=list(outcome.trial_keys),
        transforms=outcome.transforms,
        disagreement=list(outcome.disagreement),
        note=note,
        witnesses=witnesses if opts.include_witness else None,
        **base,
    )


def total_polar_degree_corank2(
    f: SymPolyMatrix, opts: GenericityOptions | None = None
) -> PolarDegreeReport:
    """Total polar-curve degree for a corank-2 target: half the binomial
    combination of the mixed degrees over i + j = d + 2."""
    opts = opts or GenericityOptions()
    n, q = f.n, f.num_vars
    d = q - 3
    if d < 0:
        raise ValueError(f"corank-2 polar curves need q >= 3 variables, got q={q}")
    if opts.check_target:
        _ensure_corank2_target(f, opts)
    inner = replace(opts, check_target=False)
    mixed: dict[tuple[int, int], MixedPolarReport] = {}
    terms: list[dict] = []
    total = 0
    for i in range(d + 3):
        j = d + 2 - i
        pair = (max(i, j), min(i, j))
        if pair not in mixed:
            mixed[pair] = mixed_polar_degree(f, pair[0], pair[1], inner)
        coeff = comb(d + 2, i)
        terms.append({"i": i, "j": j, "coeff": coeff, "degree": mixed[pair].degree})
        total += coeff * mixed[pair].degree
    if total % 2 != 0:
        raise OddSumError(
            f"pre-halving sum {total} is odd; the double-cover count must be even"
        )
    return PolarDegreeReport(
        target_rank="Corank2",
        n=n,
        q=q,
        d=d,
        degree=total // 2,
        seed=opts.seed,
        mixed=mixed,
        binomial_terms=terms,
        pre_halving_sum=total,
    )


# ---------------------------------------------------------------------------
# Hypersurface (corank 1) case
# ---------------------------------------------------------------------------


def polar_degree_hypersurface(
    f: SymPolyMatrix, opts: GenericityOptions | None = None
) -> PolarDegreeReport:
    """Polar-curve degree when det F = 0 defines the singularity.

    The degree is 2^(q-1) times the local colength of the ideal of maximal
    minors of F W for a random n x (n-q+1) section W of full column rank; W is
    re-randomized up to ``opts.trials`` extra times if the colength fails to
    be finite.  For q > n the hyperplane-class power vanishes and the degree
    is zero outright.
    """
    opts = opts or GenericityOptions()
    n, q = f.n, f.num_vars
    d = q - 1
    if q > n:
        return PolarDegreeReport(
            target_rank="Corank1",
            n=n,
            q=q,
            d=d,
            degree=0,
            seed=opts.seed,
            note="q > n: hyperplane-class power exceeds the fiber dimension",
        )
    det = poly_matrix_det([list(row) for row in f.entries])
    if det.is_zero:
        raise ValueError(
            "det F vanishes identically: the rank n-1 pullback is not a hypersurface"
        )
    if det.constant_term() != f.field.zero:
        raise ValueError("det F is a unit at the origin: no singularity there")
    rng = Random(opts.seed)
    diagnostics: list[str] = []
    for trial in range(opts.trials + 1):
        w = linalg.random_full_column_rank(rng, n, n - q + 1, SLICE_ENTRY_BOUND)
        ideal = kernel_locus_ideal(f, w)
        result = colength_local(ideal, opts.step_cap)
        if result.is_finite:
            witness = None
            if opts.include_witness:
                witness = [m.to_string(f.var_names) for m in result.witness]
            return PolarDegreeReport(
                target_rank="Corank1",
                n=n,
                q=q,
                d=d,
                degree=2 ** (q - 1) * result.value,
                seed=opts.seed,
                colength=result.value,
                factor=2 ** (q - 1),
                kernel_section=_int_matrix(w),
                trial=trial,
                witness=witness,
            )
        diagnostics.append(f"section #{trial}: kernel locus not zero-dimensional")
    raise AllTrialsNotFiniteError(
        f"kernel locus stayed non-finite over {opts.trials + 1} random sections",
        diagnostics,
    )
