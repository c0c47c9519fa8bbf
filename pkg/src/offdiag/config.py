"""Tolerance configuration shared across the library.

All numerical slack lives here so that every comparison in the library is
traceable to one knob.  Scales follow the rule "comfortably above
double-precision round-off at desk dimensions": structural checks grow
linearly with dimension, eigenvalue checks additionally with the matrix
norm.
"""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    herm_scale: float = 1e-10   # hermiticity check: herm_scale * dim
    proj_scale: float = 1e-10   # idempotency / self-adjointness: proj_scale * dim
    eig_scale: float = 1e-10    # eigenvalue placement: eig_scale * dim * (1 + norm)
    offdiag: float = 1e-10      # off-diagonality, relative to the perturbation norm
    report: float = 1e-9        # additive slack when comparing measured vs claimed bounds

    def herm(self, dim: int) -> float:
        return self.herm_scale * dim

    def proj(self, dim: int) -> float:
        return self.proj_scale * dim

    def eig(self, dim: int, norm: float) -> float:
        return self.eig_scale * dim * (1.0 + norm)

    def scaled(self, factor: float) -> "Tolerances":
        """All tolerances multiplied by ``factor`` (CLI ``--tol-scale``)."""
        if factor <= 0:
            raise ValueError("tolerance scale factor must be positive")
        return replace(
            self,
            herm_scale=self.herm_scale * factor,
            proj_scale=self.proj_scale * factor,
            eig_scale=self.eig_scale * factor,
            offdiag=self.offdiag * factor,
            report=self.report * factor,
        )


DEFAULT_TOL = Tolerances()
