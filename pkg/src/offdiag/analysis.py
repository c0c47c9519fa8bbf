"""Spectral-shift machinery for off-diagonal Hermitian perturbations.

The central quantity is the half-angle shift

    delta(v, g) = v * tan(arctan(2 v / g) / 2) = (sqrt(g^2 + 4 v^2) - g) / 2.

The algebraic right-hand side is how we compute it: it is exact at the
g = 0 convention branch (arctan(+inf) = pi/2, so delta = v) and avoids
tan/arctan round-off when v/g is large.  Equivalence with the
trigonometric form is itself a tested invariant.

Given a validated problem (A Hermitian with spectrum split into separated
components sigma and Sigma, V off-diagonal w.r.t. that split, B = A + V),
the checks here cover: two-sided bounds on inf B and sup B, enclosure of
spec(B) in the delta_V-neighborhood of spec(A), and persistence of the
spectral gap inside the d/2- (or d-) neighborhood of sigma.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT_TOL, Tolerances
from .intervals import Case, Classification, SpectralSet, classify_case
from .operators import (
    EigenDecomposition,
    OrthogonalProjection,
    ValidationError,
    hermitian_eigendecompose,
    projection_from_eigenvectors,
    select_eigenvalues,
    spectral_norm,
    validate_hermitian,
)

SQRT3_2 = math.sqrt(3.0) / 2.0
SQRT2 = math.sqrt(2.0)

THEOREM_IDS = (
    "SHIFT_BOUNDS",
    "SHIFT_I",
    "SHIFT_II",
    "SHIFT_III",
    "MAIN",
    "CASE2",
    "SUBORDINATED",
    "TAN_THETA",
    "MCE",
)


class CaseError(ValueError):
    """A theorem check was requested for a problem of the wrong case."""


def _half_angle_shift(norm_v: float, gap: float) -> float:
    # (sqrt(gap^2 + 4 v^2) - gap) / 2; hypot keeps it accurate for all ratios
    return 0.5 * (math.hypot(gap, 2.0 * norm_v) - gap)


def delta_v(norm_v: float, d: float) -> float:
    """Maximal spectral shift ||V|| tan(arctan(2||V||/d)/2) for gap d > 0.

    Strictly increasing in ``norm_v`` and always strictly below it.
    """
    if d <= 0:
        raise ValueError(f"gap d must be positive, got {d}")
    if norm_v < 0:
        raise ValueError(f"perturbation norm must be nonnegative, got {norm_v}")
    return _half_angle_shift(norm_v, d)


def delta_v_directional(
    a0_inf: float, a0_sup: float, a1_inf: float, a1_sup: float, norm_v: float
) -> tuple[float, float]:
    """Directional shifts (delta_left, delta_right) for the two-block split.

    The left shift uses |inf A1 - inf A0|, the right one |sup A1 - sup A0|.
    Coincident infima (or suprema) fall under the arctan(+inf) = pi/2
    convention and give exactly ``norm_v``; the closed form realizes that
    branch without a cutoff.
    """
    if norm_v < 0:
        raise ValueError(f"perturbation norm must be nonnegative, got {norm_v}")
    dl = _half_angle_shift(norm_v, abs(a1_inf - a0_inf))
    dr = _half_angle_shift(norm_v, abs(a1_sup - a0_sup))
    return dl, dr


def two_by_two_extremes(a0: float, a1: float, v: complex) -> tuple[float, float]:
    """Eigenvalues (lambda, mu) of [[a0, v], [conj(v), a1]], lambda <= mu.

    lambda = min{a0, a1} - s and mu = max{a0, a1} + s with the half-angle
    shift s = |v| tan(arctan(2|v| / |a1 - a0|) / 2); this is algebraically
    the exact eigenvalue pair.
    """
    s = _half_angle_shift(abs(v), abs(a1 - a0))
    return min(a0, a1) - s, max(a0, a1) + s


# ---------------------------------------------------------------------------
# problem bundle and reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PerturbationProblem:
    """Validated bundle (A, V, sigma, Sigma) with cached decompositions."""

    a: np.ndarray
    v: np.ndarray
    sigma: SpectralSet
    Sigma: SpectralSet
    d: float
    projection: OrthogonalProjection  # spectral projection of A onto sigma
    classification: Classification
    tol: Tolerances
    a_eigen: EigenDecomposition
    b_eigen: EigenDecomposition
    norm_v: float

    @property
    def b(self) -> np.ndarray:
        return self.a + self.v

    @property
    def dim(self) -> int:
        return self.a.shape[0]

    @property
    def case(self) -> Case:
        return self.classification.case

    def eig_tol(self, decomposition: EigenDecomposition | None = None) -> float:
        dec = self.b_eigen if decomposition is None else decomposition
        norm = float(np.abs(dec.eigenvalues).max())
        return self.tol.eig(self.dim, norm)

    @classmethod
    def build(
        cls, a, v, sigma: SpectralSet, Sigma: SpectralSet, tol: Tolerances = DEFAULT_TOL
    ) -> "PerturbationProblem":
        a = validate_hermitian(a, tol)
        v = validate_hermitian(v, tol)
        if a.shape != v.shape:
            raise ValidationError(f"A and V have different shapes: {a.shape} vs {v.shape}")
        dim = a.shape[0]
        if dim < 2:
            raise ValidationError("a perturbation problem needs dimension at least 2")

        d = sigma.distance(Sigma)
        if d <= 0:
            raise ValidationError("sigma and Sigma must be separated (distance > 0)")
        classification = classify_case(sigma, Sigma)

        a_eigen = hermitian_eigendecompose(a, tol)
        norm_a = float(np.abs(a_eigen.eigenvalues).max())
        eig_tol = tol.eig(dim, norm_a)
        spec_a = sigma.union(Sigma)
        for x in a_eigen.eigenvalues:
            if spec_a.distance_to_point(float(x)) > eig_tol:
                raise ValidationError(
                    f"eigenvalue {float(x)!r} of A lies outside sigma union Sigma"
                )
        mask_sigma, _, _ = select_eigenvalues(a_eigen.eigenvalues, sigma, eig_tol)
        mask_Sigma, _, _ = select_eigenvalues(a_eigen.eigenvalues, Sigma, eig_tol)
        if np.any(mask_sigma & mask_Sigma):
            raise ValidationError("an eigenvalue of A is claimed by both components")
        if not mask_sigma.any() or not mask_Sigma.any():
            raise ValidationError("both components must contain spectrum of A")

        projection = projection_from_eigenvectors(a_eigen, mask_sigma)
        p = projection.matrix
        p_perp = np.eye(dim) - p

        norm_v = spectral_norm(v)
        off_bound = tol.offdiag * norm_v if norm_v > 0 else tol.proj(dim)
        if spectral_norm(p @ v @ p) > off_bound or spectral_norm(p_perp @ v @ p_perp) > off_bound:
            raise ValidationError(
                "V is not off-diagonal with respect to the sigma/Sigma splitting"
            )
        if spectral_norm(a @ p - p @ a) > tol.proj(dim) * max(norm_a, 1.0):
            raise ValidationError("spectral projection does not commute with A")

        b_eigen = hermitian_eigendecompose(a + v, tol)
        return cls(
            a=a,
            v=v,
            sigma=sigma,
            Sigma=Sigma,
            d=d,
            projection=projection,
            classification=classification,
            tol=tol,
            a_eigen=a_eigen,
            b_eigen=b_eigen,
            norm_v=norm_v,
        )


@dataclass(frozen=True)
class AnalysisReport:
    """Claimed bound vs measured quantity for one theorem check.

    ``holds`` is vacuously true when the premise is not satisfied; the
    flags then say so.  Witnesses are named scalars backing the verdict.
    """

    theorem: str
    premise_satisfied: bool
    premise_margin: float
    claimed_bound: float
    measured_value: float
    holds: bool
    witnesses: dict[str, float] = field(default_factory=dict)
    flags: tuple[str, ...] = ()

    def as_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "premise_satisfied": self.premise_satisfied,
            "premise_margin": self.premise_margin,
            "claimed_bound": self.claimed_bound,
            "measured_value": self.measured_value,
            "holds": self.holds,
            "witnesses": dict(self.witnesses),
            "flags": list(self.flags),
        }


# ---------------------------------------------------------------------------
# quadratic numerical range sampling
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QnrSample:
    """One compressed 2x2 sample of the quadratic numerical range."""

    a0: float
    a1: float
    v: complex
    lam: float
    mu: float


def _random_unit_vector(rng: np.random.Generator, basis: np.ndarray) -> np.ndarray:
    k = basis.shape[1]
    while True:
        z = rng.standard_normal(k) + 1j * rng.standard_normal(k)
        norm = np.linalg.norm(z)
        if norm > 1e-12:
            return basis @ (z / norm)


def qnr_sample(
    b, projection: OrthogonalProjection, n: int, seed: int = 0
) -> list[QnrSample]:
    """Seeded samples of the quadratic numerical range of ``b``.

    Draws f uniformly on the unit sphere of Ran P and g on the unit sphere
    of Ran P-perp, compresses ``b`` to the 2x2 matrix
    [[(f,Bf), (f,Bg)], [(g,Bf), (g,Bg)]] and records its eigenvalue pair.
    The union over all such pairs contains spec(B), and its extremes equal
    inf B and sup B.
    """
    if n < 1:
        raise ValueError("need at least one sample")
    b = np.asarray(b, dtype=complex)
    dim = b.shape[0]
    if not 0 < projection.rank < dim:
        raise ValueError(
            f"projection rank must be strictly between 0 and {dim}, got {projection.rank}"
        )
    basis_p = projection.range_basis()
    basis_q = projection.complement_basis()
    rng = np.random.default_rng(seed)
    samples = []
    for _ in range(n):
        f = _random_unit_vector(rng, basis_p)
        g = _random_unit_vector(rng, basis_q)
        a0 = float(np.real(f.conj() @ b @ f))
        a1 = float(np.real(g.conj() @ b @ g))
        v = complex(f.conj() @ b @ g)
        lam, mu = two_by_two_extremes(a0, a1, v)
        samples.append(QnrSample(a0=a0, a1=a1, v=v, lam=lam, mu=mu))
    return samples


# ---------------------------------------------------------------------------
# theorem checks on the spectrum
# ---------------------------------------------------------------------------


def _restriction_extremes(problem: PerturbationProblem) -> tuple[float, float, float, float]:
    """(inf A0, sup A0, inf A1, sup A1) for the parts of A on Ran P / Ran P-perp."""
    eigs = problem.a_eigen.eigenvalues
    tol = problem.eig_tol(problem.a_eigen)
    mask, _, _ = select_eigenvalues(eigs, problem.sigma, tol)
    a0 = eigs[mask]
    a1 = eigs[~mask]
    return float(a0.min()), float(a0.max()), float(a1.min()), float(a1.max())


def shift_bounds(problem: PerturbationProblem) -> AnalysisReport:
    """Two-sided bounds on inf B and sup B via the directional shifts.

    Checks inf A - delta_left <= inf B <= inf A and
    sup A <= sup B <= sup A + delta_right.  Violations are reported, not
    raised; measured_value is the worst signed violation (<= 0 means all
    four inequalities hold).
    """
    a0_inf, a0_sup, a1_inf, a1_sup = _restriction_extremes(problem)
    dl, dr = delta_v_directional(a0_inf, a0_sup, a1_inf, a1_sup, problem.norm_v)
    inf_a = float(problem.a_eigen.eigenvalues.min())
    sup_a = float(problem.a_eigen.eigenvalues.max())
    inf_b = float(problem.b_eigen.eigenvalues.min())
    sup_b = float(problem.b_eigen.eigenvalues.max())

    violation = max(
        (inf_a - dl) - inf_b,
        inf_b - inf_a,
        sup_a - sup_b,
        sup_b - (sup_a + dr),
    )
    tol = problem.eig_tol()
    return AnalysisReport(
        theorem="SHIFT_BOUNDS",
        premise_satisfied=True,
        premise_margin=math.inf,
        claimed_bound=0.0,
        measured_value=violation,
        holds=violation <= tol,
        witnesses={
            "inf_a": inf_a,
            "sup_a": sup_a,
            "inf_b": inf_b,
            "sup_b": sup_b,
            "delta_left": dl,
            "delta_right": dr,
            "norm_v": problem.norm_v,
        },
    )


def spectrum_enclosure(problem: PerturbationProblem) -> AnalysisReport:
    """Every eigenvalue of B lies in the closed delta_V-neighborhood of spec(A).

    Unconditional.  measured_value is the largest excursion of a
    B-eigenvalue from sigma union Sigma; the claimed bound is delta_V.
    """
    delta = delta_v(problem.norm_v, problem.d)
    spec_a = problem.sigma.union(problem.Sigma)
    excursions = [spec_a.distance_to_point(float(x)) for x in problem.b_eigen.eigenvalues]
    measured = max(excursions)
    tol = problem.eig_tol()
    flags = []
    for x, e in zip(problem.b_eigen.eigenvalues, excursions):
        if abs(e - delta) <= tol and delta > tol:
            flags.append(f"eigenvalue {float(x):.12g} attains the enclosure boundary exactly")
    return AnalysisReport(
        theorem="SHIFT_I",
        premise_satisfied=True,
        premise_margin=math.inf,
        claimed_bound=delta,
        measured_value=measured,
        holds=measured <= delta + tol,
        witnesses={"norm_v": problem.norm_v, "d": problem.d, "delta_v": delta},
        flags=tuple(flags),
    )


def gap_persistence(problem: PerturbationProblem, variant: str | None = None) -> AnalysisReport:
    """The spectrum of B near sigma stays separated from the rest.

    variant "half" checks the open d/2-neighborhood under ||V|| < sqrt(3)/2 d
    (any case); variant "full" checks the open d-neighborhood under
    ||V|| < sqrt(2) d and hull separation.  Default picks "full" when the
    hull of sigma is separated from Sigma, else "half".

    Asserts that spec(B) inside the open neighborhood equals spec(B) in the
    closed delta_V-neighborhood of sigma and is nonempty.  The eigenvalue
    count inside (vs rank of the sigma-projection of A) is recorded as a
    witness; a mismatch is flagged as a finding, not a failure.
    """
    case = problem.case
    hull_separated = case in (Case.CASE_II, Case.SUBORDINATED)
    if variant is None:
        variant = "full" if hull_separated else "half"
    if variant not in ("half", "full"):
        raise ValueError(f"variant must be 'half' or 'full', got {variant!r}")

    if variant == "full":
        theorem = "SHIFT_III"
        radius = problem.d
        cap = SQRT2 * problem.d
    else:
        theorem = "SHIFT_II"
        radius = problem.d / 2.0
        cap = SQRT3_2 * problem.d

    margin = cap - problem.norm_v
    premise = margin > problem.tol.report
    flags: list[str] = []
    if variant == "full" and not hull_separated:
        premise = False
        flags.append("premise not satisfied: hull of sigma is not separated from Sigma")
    if margin <= problem.tol.report:
        flags.append(
            f"premise not satisfied: ||V|| = {problem.norm_v:.12g} is not below "
            f"{cap:.12g}"
        )

    delta = delta_v(problem.norm_v, problem.d)
    open_hood = problem.sigma.open_neighborhood(radius)
    closed_hood = problem.sigma.closed_neighborhood(delta)
    eigs = problem.b_eigen.eigenvalues
    tol = problem.eig_tol()
    mask_open, ambiguous, flags_open = select_eigenvalues(eigs, open_hood, tol)
    mask_closed, _, flags_closed = select_eigenvalues(eigs, closed_hood, tol)
    flags.extend(flags_open)
    flags.extend(flags_closed)

    # the intersection equality is only decidable away from ambiguous points
    decided = ~ambiguous
    equality_ok = bool(np.array_equal(mask_open[decided], mask_closed[decided]))
    count_inside = int(mask_closed.sum())
    nonempty = count_inside >= 1
    rank_sigma = problem.projection.rank
    if premise and count_inside != rank_sigma:
        flags.append(
            f"finding: {count_inside} eigenvalues of B persist near sigma but "
            f"rank E_A(sigma) = {rank_sigma}"
        )

    inside_dist = [
        problem.sigma.distance_to_point(float(x)) for x in eigs[mask_closed]
    ]
    measured = max(inside_dist) if inside_dist else 0.0
    holds = True
    if premise:
        holds = equality_ok and nonempty and measured <= delta + tol

    return AnalysisReport(
        theorem=theorem,
        premise_satisfied=premise,
        premise_margin=margin,
        claimed_bound=delta,
        measured_value=measured,
        holds=holds,
        witnesses={
            "norm_v": problem.norm_v,
            "d": problem.d,
            "delta_v": delta,
            "radius": radius,
            "inside_open_count": float(int(mask_open.sum())),
            "inside_closed_count": float(count_inside),
            "rank_sigma": float(rank_sigma),
            "intersection_equality": float(equality_ok),
        },
        flags=tuple(flags),
    )
