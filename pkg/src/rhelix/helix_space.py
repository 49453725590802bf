"""Helix directions of a hypersurface and strong r-helix classification.

For a hypersurface, ``d`` is a helix direction iff ``<N, d>`` is constant,
i.e. ``d`` is orthogonal to every difference ``N(u_i) - N(u_1)``.  The set
of such directions is a linear subspace, found as a numerical null space.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from .errors import VerificationFailed
from .hypersurface import Hypersurface, sample_normals
from .linalg import canonical_basis, null_space
from .sampling import SamplePlan

DEFAULT_TOL = 1e-6


def surface_plan(S: Hypersurface, seed: int = 0, oversample: int = 8) -> SamplePlan:
    """Default plan: ``oversample * (n + 1)`` Halton points plus 16 random ones (at least 64 total)."""
    return SamplePlan(max(48, oversample * (S.dim + 1)), 16, seed)


@dataclass
class HelixDirectionSpace:
    dim: int
    basis: np.ndarray  # r x n, orthonormal rows
    constants: np.ndarray  # c_j = <N, d_j> (signed)
    residuals: np.ndarray  # max_i |<N(u_i), d_j> - c_j|
    sv_spectrum: np.ndarray
    tolerance: float
    seed: int
    verification_residuals: np.ndarray = field(default_factory=lambda: np.zeros(0))

    @property
    def r(self) -> int:
        return int(self.basis.shape[0])

    @property
    def angles(self):
        """Angles between each ``d_j`` and the normal (``pi/2`` minus the angle with ``T_qM``)."""
        return np.arccos(np.clip(self.constants, -1.0, 1.0))

    def project(self, v):
        """Orthogonal projection of ``v`` onto the helix-direction space."""
        v = np.asarray(v, dtype=float)
        return self.basis.T @ (self.basis @ v) if self.r else np.zeros_like(v)

    def to_dict(self):
        return {
            "r": self.r,
            "basis": self.basis.tolist(),
            "constants": self.constants.tolist(),
            "angles": self.angles.tolist(),
            "residuals": self.residuals.tolist(),
            "sv_spectrum": self.sv_spectrum.tolist(),
        }


def _space_from_normals(normals, tol, dim, seed):
    basis, sv = null_space(normals[1:] - normals[0], rtol=tol)
    if basis.shape[0] == dim:
        basis = np.eye(dim)
    elif basis.shape[0]:
        basis = canonical_basis(basis)
    proj = normals @ basis.T
    consts = proj.mean(axis=0) if basis.shape[0] else np.zeros(0)
    resid = np.abs(proj - consts).max(axis=0) if basis.shape[0] else np.zeros(0)
    return HelixDirectionSpace(dim, basis, consts, resid, sv, tol, seed)


def verify_helix_space(
    S: Hypersurface, space: HelixDirectionSpace, plan: Optional[SamplePlan] = None, bound: Optional[float] = None
):
    """Re-check constancy of ``<N, d_j>`` on an independent sample set.

    Raises :class:`VerificationFailed` when any direction drifts from its
    constant by more than ``bound`` (default ``10 * space.tolerance``).
    """
    plan = plan if plan is not None else surface_plan(S, space.seed).fresh(salt=2)
    bound = 10.0 * space.tolerance if bound is None else bound
    if space.r == 0:
        return np.zeros(0)
    normals = sample_normals(S, plan.box(S.domain))
    dev = np.abs(normals @ space.basis.T - space.constants).max(axis=0)
    if np.any(dev > bound):
        j = int(np.argmax(dev))
        raise VerificationFailed(
            f"helix direction {j} deviates by {dev[j]:.3g} (> {bound:.3g}) on fresh samples"
        )
    return dev


def helix_directions(
    S: Hypersurface, plan: Optional[SamplePlan] = None, tol: float = DEFAULT_TOL, verify: bool = True
) -> HelixDirectionSpace:
    """Numerical space of helix directions ``H(M)`` of a patch."""
    plan = plan if plan is not None else surface_plan(S)
    if plan.size < S.dim + 1:
        raise ValueError(f"need at least n + 1 = {S.dim + 1} samples")
    us = plan.box(S.domain)
    normals = sample_normals(S, us)
    space = _space_from_normals(normals, tol, S.dim, plan.seed)
    if verify:
        space.verification_residuals = verify_helix_space(S, space, plan.fresh(salt=2))
    return space


class StrongHelixClass(NamedTuple):
    is_helix: bool
    r: int
    space: HelixDirectionSpace


def classify_strong_r_helix(
    S: Hypersurface, tol: float = DEFAULT_TOL, plan: Optional[SamplePlan] = None
) -> StrongHelixClass:
    """``(is_helix, r, space)``; a trivial space (``r = 0``) is not a helix."""
    space = helix_directions(S, plan, tol)
    return StrongHelixClass(space.r >= 1, space.r, space)


class HelixAngle(NamedTuple):
    is_constant: bool
    theta: float  # angle between d and N
    residual: float
    degenerate_sampling: bool


def helix_angle(
    S: Hypersurface, d, tol: float = DEFAULT_TOL, plan: Optional[SamplePlan] = None
) -> HelixAngle:
    """Whether ``<N, d>`` is constant on the patch; ``theta = arccos(mean <N, d>)``."""
    d = np.asarray(d, dtype=float)
    if abs(np.linalg.norm(d) - 1.0) > 1e-9:
        raise ValueError("d must be a unit vector")
    plan = plan if plan is not None else surface_plan(S)
    degenerate = all(hi - lo == 0.0 for lo, hi in S.domain)
    us = plan.box(S.domain)
    if degenerate:
        us = us[:1]
    vals = sample_normals(S, us) @ d
    mean = float(vals.mean())
    resid = float(np.abs(vals - mean).max())
    return HelixAngle(resid <= tol, float(np.arccos(np.clip(mean, -1.0, 1.0))), resid, degenerate)
