"""Built-in sharpness examples, seeded problem generation, search, batch runs.

The two built-in problems are the classic sharpness configurations: a 4x4
Jacobi-type matrix whose perturbation at exactly sqrt(3)/2 times the gap
empties the open half-gap neighborhood of sigma, and a 3x3 matrix whose
perturbation at exactly sqrt(2) times the gap empties the open full-gap
neighborhood.  The worst-case search probes the unknown optimal constant
between c_pi and sqrt(3)/2; its results are evidence, not proof.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .analysis import (
    AnalysisReport,
    CaseError,
    PerturbationProblem,
    SQRT2,
    SQRT3_2,
    THEOREM_IDS,
    gap_persistence,
    shift_bounds,
    spectrum_enclosure,
)
from .config import DEFAULT_TOL, Tolerances
from .intervals import Case, SpectralSet
from .operators import select_eigenvalues, spectral_norm
from .subspaces import (
    bound_case1,
    bound_case2,
    bound_subordinated,
    maximal_gap_interval,
    tan_theta_bound,
    verify_pair_inequality,
)

CASE1 = "CASE1"
CASE2 = "CASE2"


def builtin_example(which: str, scale: float = 1.0, tol: Tolerances = DEFAULT_TOL) -> PerturbationProblem:
    """The built-in sharpness problems, optionally with V scaled by ``scale``.

    CASE1: A = diag(-3/2, -1/2, 1/2, 3/2), sigma = {-3/2, 1/2}, coupling
    sqrt(3)/2 between the interleaved components (||V|| = sqrt(3)/2, d = 1).
    CASE2: A = diag(-1, 0, 1), sigma = {0}, coupling sqrt(2) between the
    first two coordinates (||V|| = sqrt(2), d = 1).
    """
    key = which.upper()
    if key == CASE1:
        a = np.diag([-1.5, -0.5, 0.5, 1.5]).astype(complex)
        v = np.zeros((4, 4), dtype=complex)
        c = math.sqrt(3.0) / 2.0
        v[0, 1] = v[1, 0] = c
        v[2, 3] = v[3, 2] = c
        sigma = SpectralSet.from_points([-1.5, 0.5])
        Sigma = SpectralSet.from_points([-0.5, 1.5])
    elif key == CASE2:
        a = np.diag([-1.0, 0.0, 1.0]).astype(complex)
        v = np.zeros((3, 3), dtype=complex)
        v[0, 1] = v[1, 0] = math.sqrt(2.0)
        sigma = SpectralSet.from_points([0.0])
        Sigma = SpectralSet.from_points([-1.0, 1.0])
    else:
        raise ValueError(f"unknown example {which!r}; expected CASE1 or CASE2")
    return PerturbationProblem.build(a, scale * v, sigma, Sigma, tol)


@dataclass(frozen=True)
class ProblemSpec:
    """Diagonal layout plus target perturbation strength for one random problem."""

    sigma_values: tuple[float, ...]
    Sigma_values: tuple[float, ...]
    target_norm_ratio: float
    seed: int

    @property
    def dim_sigma(self) -> int:
        return len(self.sigma_values)

    @property
    def dim_Sigma(self) -> int:
        return len(self.Sigma_values)

    def validate(self) -> float:
        """Return the cross-component gap d; raise if the layout is invalid."""
        if not self.sigma_values or not self.Sigma_values:
            raise ValueError("both components need at least one value")
        if self.target_norm_ratio < 0:
            raise ValueError("target_norm_ratio must be nonnegative")
        d = min(
            abs(s - t) for s in self.sigma_values for t in self.Sigma_values
        )
        if d <= 0:
            raise ValueError("sigma and Sigma values must be separated")
        return d


def random_problem(spec: ProblemSpec, tol: Tolerances = DEFAULT_TOL) -> PerturbationProblem:
    """Deterministic problem from a spec: diagonal A, Gaussian off-diagonal V.

    V has independent standard complex Gaussian entries in the coupling
    block (diagonal blocks exactly zero) and is rescaled so that
    ||V|| = target_norm_ratio * d to machine precision.
    """
    d = spec.validate()
    n0, n1 = spec.dim_sigma, spec.dim_Sigma
    dim = n0 + n1
    a = np.diag(np.array(spec.sigma_values + spec.Sigma_values, dtype=float)).astype(complex)
    v = np.zeros((dim, dim), dtype=complex)
    if spec.target_norm_ratio > 0:
        rng = np.random.default_rng(spec.seed)
        w = rng.standard_normal((n0, n1)) + 1j * rng.standard_normal((n0, n1))
        target = spec.target_norm_ratio * d
        w *= target / spectral_norm(w)
        v[:n0, n0:] = w
        v[n0:, :n0] = w.conj().T
    sigma = SpectralSet.from_points(spec.sigma_values)
    Sigma = SpectralSet.from_points(spec.Sigma_values)
    return PerturbationProblem.build(a, v, sigma, Sigma, tol)


def random_problem_spec(
    case: Case | str,
    dim_sigma: int,
    dim_Sigma: int,
    ratio: float,
    seed: int,
    min_gap: float = 0.2,
) -> ProblemSpec:
    """Seeded eigenvalue layout of the requested case.

    Values sit on a grid of sites separated by random gaps of at least
    ``min_gap``, so the cross-component distance never degenerates.
    CASE_I alternates the components along the grid (needs two values on
    each side), CASE_II nests the sigma block between two Sigma flanks,
    SUBORDINATED puts the sigma block wholly below Sigma.
    """
    case = Case(case) if not isinstance(case, Case) else case
    rng = np.random.default_rng(seed)
    total = dim_sigma + dim_Sigma
    gaps = rng.uniform(min_gap, 1.0, total - 1)
    sites = np.concatenate([[0.0], np.cumsum(gaps)]) + rng.uniform(-2.0, -1.0)

    labels = np.zeros(total, dtype=bool)  # True marks sigma
    if case is Case.SUBORDINATED:
        if rng.integers(0, 2):
            labels[:dim_sigma] = True
        else:
            labels[dim_Sigma:] = True
    elif case is Case.CASE_II:
        if dim_Sigma < 2:
            raise ValueError("a CASE_II layout needs at least two Sigma values")
        n_left = int(rng.integers(1, dim_Sigma))
        labels[n_left : n_left + dim_sigma] = True
    else:
        if dim_sigma < 2 or dim_Sigma < 2:
            raise ValueError("a CASE_I layout needs at least two values per component")
        remaining = {True: dim_sigma, False: dim_Sigma}
        turn = bool(rng.integers(0, 2))
        for i in range(total):
            if remaining[turn] == 0:
                turn = not turn
            labels[i] = turn
            remaining[turn] -= 1
            if remaining[not turn] > 0:
                turn = not turn

    spec = ProblemSpec(
        sigma_values=tuple(float(x) for x in sites[labels]),
        Sigma_values=tuple(float(x) for x in sites[~labels]),
        target_norm_ratio=ratio,
        seed=int(rng.integers(0, 2**63 - 1)),
    )
    spec.validate()
    got = _classify_values(spec)
    if got is not case:
        raise RuntimeError(f"layout construction produced {got.value}, wanted {case.value}")
    return spec


def _classify_values(spec: ProblemSpec) -> Case:
    from .intervals import classify_case

    sigma = SpectralSet.from_points(spec.sigma_values)
    Sigma = SpectralSet.from_points(spec.Sigma_values)
    return classify_case(sigma, Sigma).case


# ---------------------------------------------------------------------------
# worst-case search
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SearchResult:
    best_value: float
    best_problem: PerturbationProblem | None
    trials: int
    c: float
    neighborhood: str
    evaluations: int


def _search_objective(
    sig: np.ndarray, Sig: np.ndarray, w: np.ndarray, s: float, c: float, half: bool
) -> float | None:
    """||E_A(sigma) - E_B(open neighborhood)|| for the parameterized problem.

    Returns None when the layout degenerates (gap below the floor).  An
    empty neighborhood gives the zero projection and the objective becomes
    ||P|| = 1: that is the sharpness mechanism, scored rather than erred.
    """
    n0, n1 = len(sig), len(Sig)
    d = min(abs(x - y) for x in sig for y in Sig)
    if d < 1e-3:
        return None
    w_norm = spectral_norm(w)
    if w_norm < 1e-14:
        return 0.0
    block = w * (s * c * d / w_norm)
    dim = n0 + n1
    b = np.zeros((dim, dim), dtype=complex)
    b[np.arange(n0), np.arange(n0)] = sig
    b[np.arange(n0, dim), np.arange(n0, dim)] = Sig
    b[:n0, n0:] = block
    b[n0:, :n0] = block.conj().T
    eigs, vecs = np.linalg.eigh(b)
    sigma = SpectralSet.from_points(sig)
    radius = d / 2.0 if half else d
    hood = sigma.open_neighborhood(radius)
    tol = DEFAULT_TOL.eig(dim, float(np.abs(eigs).max()))
    mask, _, _ = select_eigenvalues(eigs, hood, tol)
    cols = vecs[:, mask]
    q = cols @ cols.conj().T
    p = np.zeros((dim, dim), dtype=complex)
    p[np.arange(n0), np.arange(n0)] = 1.0
    return spectral_norm(p - q)


def _example_start(dim_sigma: int, dim_Sigma: int, c: float, half: bool):
    """Sharpness-example-shaped start when the dimensions accommodate it."""
    if half and (dim_sigma, dim_Sigma) == (2, 2):
        sig = np.array([-1.5, 0.5])
        Sig = np.array([-0.5, 1.5])
        w = np.diag([SQRT3_2, SQRT3_2]).astype(complex)
        s = min(1.0, SQRT3_2 / c)
        return sig, Sig, w, s
    if not half and (dim_sigma, dim_Sigma) == (1, 2):
        sig = np.array([0.0])
        Sig = np.array([-1.0, 1.0])
        w = np.array([[SQRT2, 0.0]], dtype=complex)
        s = min(1.0, SQRT2 / c)
        return sig, Sig, w, s
    return None


def search_worst_case(
    dim_sigma: int = 2,
    dim_Sigma: int = 2,
    c: float = SQRT3_2,
    trials: int = 100,
    seed: int = 0,
    neighborhood: str = "half_d",
    refine_sweeps: int = 2,
    include_example_start: bool = True,
    tol: Tolerances = DEFAULT_TOL,
) -> SearchResult:
    """Multi-start search maximizing the projection difference under ||V|| <= c d.

    Each trial draws a random layout and coupling block (seed derived from
    (seed, trial index), so runs are order-deterministic), then refines by
    greedy coordinate perturbation with shrinking steps.  Trial 0 starts
    from the matching built-in sharpness example when the dimensions allow.
    """
    if c <= 0:
        raise ValueError("norm-ratio cap c must be positive")
    if trials < 1:
        raise ValueError("need at least one trial")
    if neighborhood not in ("half_d", "full_d"):
        raise ValueError(f"neighborhood must be 'half_d' or 'full_d', got {neighborhood!r}")
    half = neighborhood == "half_d"

    best_value = -math.inf
    best_params = None
    evaluations = 0

    for trial in range(trials):
        rng = np.random.default_rng(np.random.SeedSequence((seed, trial)))
        start = _example_start(dim_sigma, dim_Sigma, c, half) if (
            trial == 0 and include_example_start
        ) else None
        if start is None:
            sig = rng.uniform(-2.0, 2.0, dim_sigma)
            Sig = rng.uniform(-2.0, 2.0, dim_Sigma)
            w = rng.standard_normal((dim_sigma, dim_Sigma)) + 1j * rng.standard_normal(
                (dim_sigma, dim_Sigma)
            )
            s = 1.0
        else:
            sig, Sig, w, s = start

        value = _search_objective(sig, Sig, w, s, c, half)
        evaluations += 1
        if value is None:
            value = -math.inf

        step = 0.25
        for _ in range(refine_sweeps):
            improved = False
            coords = (
                [("sig", i) for i in range(dim_sigma)]
                + [("Sig", i) for i in range(dim_Sigma)]
                + [("w", i, j, part) for i in range(dim_sigma) for j in range(dim_Sigma)
                   for part in ("re", "im")]
                + [("s",)]
            )
            for coord in coords:
                for sign in (1.0, -1.0):
                    c_sig, c_Sig, c_w, c_s = sig.copy(), Sig.copy(), w.copy(), s
                    if coord[0] == "sig":
                        c_sig[coord[1]] += sign * step
                    elif coord[0] == "Sig":
                        c_Sig[coord[1]] += sign * step
                    elif coord[0] == "w":
                        bump = sign * step if coord[3] == "re" else 1j * sign * step
                        c_w[coord[1], coord[2]] += bump
                    else:
                        c_s = float(np.clip(c_s + sign * step, 0.01, 1.0))
                    cand = _search_objective(c_sig, c_Sig, c_w, c_s, c, half)
                    evaluations += 1
                    if cand is not None and cand > value + 1e-15:
                        sig, Sig, w, s, value = c_sig, c_Sig, c_w, c_s, cand
                        improved = True
            if not improved:
                step *= 0.5

        if value > best_value:
            best_value = value
            best_params = (sig, Sig, w, s)

    best_problem = None
    if best_params is not None and best_value > -math.inf:
        sig, Sig, w, s = best_params
        d = min(abs(x - y) for x in sig for y in Sig)
        ratio = s * c if spectral_norm(w) > 1e-14 else 0.0
        spec = ProblemSpec(
            sigma_values=tuple(sorted(float(x) for x in sig)),
            Sigma_values=tuple(sorted(float(x) for x in Sig)),
            target_norm_ratio=ratio,
            seed=0,
        )
        # rebuild with the searched coupling block, not a fresh random one
        n0 = len(sig)
        dim = n0 + len(Sig)
        order = np.argsort(sig), np.argsort(Sig)
        a = np.diag(np.array(list(spec.sigma_values) + list(spec.Sigma_values))).astype(complex)
        v = np.zeros((dim, dim), dtype=complex)
        if ratio > 0:
            block = w[np.ix_(order[0], order[1])]
            block = block * (ratio * d / spectral_norm(block))
            v[:n0, n0:] = block
            v[n0:, :n0] = block.conj().T
        best_problem = PerturbationProblem.build(
            a,
            v,
            SpectralSet.from_points(spec.sigma_values),
            SpectralSet.from_points(spec.Sigma_values),
            tol,
        )

    return SearchResult(
        best_value=float(best_value),
        best_problem=best_problem,
        trials=trials,
        c=c,
        neighborhood=neighborhood,
        evaluations=evaluations,
    )


# ---------------------------------------------------------------------------
# batch verification
# ---------------------------------------------------------------------------


def run_theorem(problem: PerturbationProblem, theorem: str) -> AnalysisReport:
    """Dispatch a theorem id to its check."""
    if theorem == "SHIFT_BOUNDS":
        return shift_bounds(problem)
    if theorem == "SHIFT_I":
        return spectrum_enclosure(problem)
    if theorem == "SHIFT_II":
        return gap_persistence(problem, variant="half")
    if theorem == "SHIFT_III":
        return gap_persistence(problem, variant="full")
    if theorem == "MAIN":
        return bound_case1(problem)
    if theorem == "CASE2":
        return bound_case2(problem)
    if theorem == "SUBORDINATED":
        return bound_subordinated(problem)
    if theorem == "TAN_THETA":
        return tan_theta_bound(problem, maximal_gap_interval(problem))
    if theorem == "MCE":
        return verify_pair_inequality(
            problem.a, problem.b, problem.sigma, problem.Sigma, problem.tol
        )
    raise ValueError(f"unknown theorem id {theorem!r}; expected one of {THEOREM_IDS}")


def batch_verify(
    specs: list[ProblemSpec], theorems: list[str], tol: Tolerances = DEFAULT_TOL
) -> list[AnalysisReport]:
    """Run the selected checks on every generated problem, in stable order.

    A wrong-case request (e.g. the subordinated bound on an interleaved
    problem) becomes a premise-unsatisfied report rather than an error, so
    one stray problem does not abort a batch.
    """
    reports = []
    for spec in specs:
        problem = random_problem(spec, tol)
        for theorem in theorems:
            try:
                reports.append(run_theorem(problem, theorem))
            except CaseError as exc:
                reports.append(
                    AnalysisReport(
                        theorem=theorem,
                        premise_satisfied=False,
                        premise_margin=-math.inf,
                        claimed_bound=math.inf,
                        measured_value=math.nan,
                        holds=True,
                        witnesses={},
                        flags=(f"wrong case: {exc}",),
                    )
                )
    return reports


@dataclass(frozen=True)
class BatchSummary:
    total: int
    premise_satisfied: int
    violations: int
    worst_margin: float  # smallest claimed - measured among premise-satisfied checks


def summarize(reports: list[AnalysisReport]) -> BatchSummary:
    sat = [r for r in reports if r.premise_satisfied]
    violations = sum(1 for r in sat if not r.holds)
    worst = math.inf
    for r in sat:
        if math.isfinite(r.claimed_bound) and math.isfinite(r.measured_value):
            worst = min(worst, r.claimed_bound - r.measured_value)
    return BatchSummary(
        total=len(reports),
        premise_satisfied=len(sat),
        violations=violations,
        worst_margin=worst,
    )
