"""Tangent-space span oracle and eigenvalue witness.

The convolution of orbital measures is absolutely continuous iff the tangent
spaces at Ad(g_i) X_i (g_1 = identity) span the whole algebra for some choice
of g_i, and then for almost every choice.  Sampling g_2..g_L and measuring the
rank therefore gives:

* exact mode, full rank in some trial: a proof of absolute continuity;
* rank deficient in every trial: evidence of singularity, never a proof.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .classifier import (
    Status,
    TorusElement,
    _check_tuple,
    decide,
    element_type,
    is_eligible,
)
from .errors import CapacityError, DomainError
from .linalg import DEFAULT_RTOL, numeric_rank, rational_rank
from .matrix_model import (
    adjoint,
    algebra_dim,
    coordinates,
    embed_torus,
    orbit_dimension,
    random_group_element,
    to_numeric,
    torus_tangent_rows,
)

log = logging.getLogger(__name__)

DEFAULT_TRIALS = 8
MAX_EXACT_DIM = 200
MAX_NUMERIC_DIM = 2000


def trial_seed(seed: int, trial: int) -> int:
    """Child seed for one trial, independent of how trials are scheduled."""
    return int(np.random.SeedSequence([seed, trial]).generate_state(1)[0])


@dataclass
class TrialResult:
    seed: int
    rank: int
    numeric_rank: int | None = None  # SVD rank of the same exact matrix, if requested


@dataclass
class Certificate:
    trial_seed: int
    exact: bool

    @property
    def is_proof(self) -> bool:
        return self.exact


@dataclass
class SpanReport:
    target_dim: int
    mode: str
    trials: list[TrialResult] = field(default_factory=list)
    certificate: Certificate | None = None
    tolerance: float | None = None
    orbit_dims: tuple[int, ...] = ()

    @property
    def max_rank(self) -> int:
        return max((t.rank for t in self.trials), default=0)

    @property
    def full_rank(self) -> bool:
        return self.max_rank == self.target_dim

    @staticmethod
    def _trial_json(t: TrialResult) -> dict:
        d = {"seed": t.seed, "rank": t.rank}
        if t.numeric_rank is not None:
            d["numeric_rank"] = t.numeric_rank
        return d

    def to_json(self) -> dict:
        out = {
            "target_dim": self.target_dim,
            "mode": self.mode,
            "trials": [self._trial_json(t) for t in self.trials],
            "tolerance": self.tolerance,
            "max_rank": self.max_rank,
        }
        if self.certificate is not None:
            out["certificate"] = {"seed": self.certificate.trial_seed, "exact": self.certificate.exact}
        return out


def _trial_rows(xs: Sequence[TorusElement], seed: int, exact: bool, num_range: int, max_den: int):
    """Coordinate rows of the moved tangent bases; g_1 is the identity."""
    fam, n = xs[0].family, xs[0].rank
    rng = np.random.default_rng(seed)
    rows = []
    for i, X in enumerate(xs):
        T = torus_tangent_rows(X)
        if i == 0:
            mats = T if exact else [to_numeric(M) for M in T]
        else:
            sub = int(rng.integers(0, 2**63 - 1))
            g = random_group_element(fam, n, sub, "exact" if exact else "numeric",
                                     num_range=num_range, max_den=max_den).entries
            if exact:
                mats = [adjoint(g, M) for M in T]
            else:
                mats = [adjoint(g, to_numeric(M)) for M in T]
        rows.extend(coordinates(M, fam) for M in mats)
    return rows


def verify_span(xs: Sequence[TorusElement], trials: int = DEFAULT_TRIALS, seed: int = 0,
                mode: str = "exact", rtol: float = DEFAULT_RTOL, stop_on_full: bool = True,
                widen: bool = True, first_trial: int = 0, compare_numeric: bool = False) -> SpanReport:
    """Sample (g_2..g_L) ``trials`` times and record the rank of the stacked
    tangent vectors.

    In exact mode the Cayley parameter range doubles after every four
    consecutive deficient trials (``widen``), guarding against an unlucky
    low-height sample.  ``first_trial`` shifts the trial indices so a run
    can be continued in batches.  ``compare_numeric`` (exact mode) also
    records the SVD rank of each exact matrix.
    """
    _check_tuple(xs)
    if mode not in ("numeric", "exact"):
        raise DomainError(f"unknown mode {mode!r}")
    if trials < 1:
        raise DomainError("trials must be >= 1")
    fam, n = xs[0].family, xs[0].rank
    target = algebra_dim(fam, n)
    limit = MAX_EXACT_DIM if mode == "exact" else MAX_NUMERIC_DIM
    if target > limit:
        raise CapacityError(f"algebra dimension {target} exceeds the {mode} budget {limit}")
    dims = tuple(orbit_dimension(X) for X in xs)
    bound = min(target, sum(dims))
    exact = mode == "exact"
    report = SpanReport(target, mode, tolerance=None if exact else rtol, orbit_dims=dims)
    num_range, max_den, streak = 3, 4, 0
    for t in range(first_trial, first_trial + trials):
        s = trial_seed(seed, t)
        rows = _trial_rows(xs, s, exact, num_range, max_den)
        nr = None
        if exact:
            r = rational_rank(rows, stop_at=target)
            if compare_numeric:
                nr = numeric_rank(np.array([[float(x) for x in row] for row in rows]), rtol)
                if nr != r:
                    log.info("numeric rank %d differs from exact rank %d (seed %d)", nr, r, s)
        else:
            r = numeric_rank(np.array(rows, dtype=float), rtol)
        if r > bound:
            raise RuntimeError(f"rank {r} exceeds the orbit-dimension bound {bound}")
        report.trials.append(TrialResult(s, r, nr))
        if r == target:
            if report.certificate is None:
                report.certificate = Certificate(s, exact)
            if stop_on_full:
                break
            streak = 0
        else:
            streak += 1
            if exact and widen and streak % 4 == 0:
                num_range, max_den = num_range * 2, max_den * 2
    return report


# ------------------------------------------------------------ dimension count


@dataclass(frozen=True)
class DimensionProof:
    orbit_dims: tuple[int, ...]
    algebra_dim: int

    def __str__(self) -> str:
        return f"sum of orbit dimensions {sum(self.orbit_dims)} < dim g = {self.algebra_dim}"


def dimension_shortcut(xs: Sequence[TorusElement]) -> DimensionProof | None:
    """Singularity proof when the orbit dimensions cannot add up to dim g."""
    _check_tuple(xs)
    dims = tuple(orbit_dimension(X) for X in xs)
    target = algebra_dim(xs[0].family, xs[0].rank)
    if sum(dims) < target:
        return DimensionProof(dims, target)
    return None


# ----------------------------------------------------------- eigenvalue witness


def common_eigenvalue(X: TorusElement) -> tuple[float, int]:
    """(beta, extra) where i*beta is an eigenvalue of X of greatest
    multiplicity as used in the non-eligibility argument.

    ``extra`` is 1 for a zero-block-dominant element of family B (the
    eigenvalue 0 there has one more dimension than S_X).
    """
    t = element_type(X)
    if t.dominant_zero_block:
        return 0.0, int(X.family == "B")
    if X.family == "A":
        counts: dict = {}
        for v in X.values:
            counts[v] = counts.get(v, 0) + 1
        value = max(counts, key=lambda v: (counts[v], -v))
        return float(value), 0
    counts = {}
    for v in X.values:
        if v:
            counts[abs(v)] = counts.get(abs(v), 0) + 1
    value = max(counts, key=lambda v: (counts[v], -v))
    return float(value), 0


@dataclass
class WitnessTrial:
    seed: int
    distance: float
    multiplicity: int
    passed: bool


@dataclass
class WitnessReport:
    expected: float  # eigenvalue is i * expected
    required_multiplicity: int
    tolerance: float
    trials: list[WitnessTrial] = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(t.passed for t in self.trials)


def eigenvalue_witness(xs: Sequence[TorusElement], trials: int = 100, seed: int = 0,
                       tol: float = 1e-8) -> WitnessReport:
    """Check that every sampled sum of Ad(g_i) X_i has the forced common
    eigenvalue (a non-eligible tuple's matrices share an eigenvector)."""
    _check_tuple(xs)
    if is_eligible(xs):
        raise DomainError("eigenvalue witness applies to non-eligible tuples only")
    fam, n = xs[0].family, xs[0].rank
    info = [common_eigenvalue(X) for X in xs]
    beta = sum(b for b, _ in info)
    required = 2 if fam == "B" and all(extra for _, extra in info) else 1
    report = WitnessReport(beta, required, tol)
    H = [embed_torus(X) for X in xs]
    for t in range(trials):
        s = trial_seed(seed, t)
        rng = np.random.default_rng(s)
        total = H[0].astype(complex)
        for Hi in H[1:]:
            g = random_group_element(fam, n, int(rng.integers(0, 2**63 - 1)), "numeric").entries
            total = total + adjoint(g, Hi)
        # total is skew-Hermitian: its eigenvalues are i * eigvalsh(-i * total)
        mu = np.linalg.eigvalsh(-1j * total)
        dist = np.sort(np.abs(mu - beta))
        mult = int(np.count_nonzero(dist < tol))
        report.trials.append(WitnessTrial(s, float(dist[required - 1]), mult, mult >= required))
    return report


# -------------------------------------------------------------- cross-check


@dataclass
class Agreement:
    tuple_spec: str
    verdict: Status
    report: SpanReport
    agrees: bool
    shortcut: DimensionProof | None = None


def cross_check(xs: Sequence[TorusElement], ac_trials: int = 8, singular_trials: int = 32,
                seed: int = 0, compare_numeric: bool = False) -> Agreement:
    """decide() against the exact oracle: AC needs a certificate within
    ``ac_trials``; Singular needs deficiency in all ``singular_trials``.
    Unknown verdicts are run for ``ac_trials`` and never count as disagreeing."""
    v = decide(xs)
    spec = " ".join(x.spec for x in xs)
    if v.status is Status.SINGULAR:
        rep = verify_span(xs, trials=singular_trials, seed=seed, mode="exact",
                          compare_numeric=compare_numeric)
        return Agreement(spec, v.status, rep, rep.certificate is None, dimension_shortcut(xs))
    rep = verify_span(xs, trials=ac_trials, seed=seed, mode="exact", compare_numeric=compare_numeric)
    ok = rep.certificate is not None if v.status is Status.ABSOLUTELY_CONTINUOUS else True
    return Agreement(spec, v.status, rep, ok)


# ------------------------------------------------------- numeric vs exact rank


@dataclass
class ModeComparison:
    seed: int
    exact_rank: int
    numeric_rank: int
    boundary: bool  # a singular value lies within a factor 100 of the cutoff

    @property
    def agrees(self) -> bool:
        return self.exact_rank == self.numeric_rank


def compare_modes(xs: Sequence[TorusElement], trials: int = 4, seed: int = 0,
                  rtol: float = DEFAULT_RTOL) -> list[ModeComparison]:
    """Exact rank and SVD rank of the very same stacked matrix, per trial."""
    _check_tuple(xs)
    target = algebra_dim(xs[0].family, xs[0].rank)
    out = []
    for t in range(trials):
        s = trial_seed(seed, t)
        rows = _trial_rows(xs, s, True, 3, 4)
        exact_r = rational_rank(rows, stop_at=target)
        a = np.array([[float(x) for x in r] for r in rows])
        sv = np.linalg.svd(a, compute_uv=False)
        cut = rtol * sv[0]
        num_r = int(np.count_nonzero(sv > cut))
        boundary = bool(np.any((sv > cut / 100) & (sv < cut * 100)))
        if boundary or exact_r != num_r:
            log.info("tolerance boundary trial seed=%d exact=%d numeric=%d", s, exact_r, num_r)
        out.append(ModeComparison(s, exact_r, num_r, boundary))
    return out
