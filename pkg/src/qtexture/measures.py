"""Texture quantifiers for density matrices.

Every quantifier measures deviation from the textureless state (the pure
uniform superposition) and returns a nonnegative float, with ``math.inf``
standing for a structurally infinite value (as opposed to merely large).

Measure identifiers accepted across the library:
``rugosity``, ``trace``, ``geometric``, ``fidelity``, ``bures``,
``rel_entropy``, ``robustness``, ``l1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, UnknownMeasure
from .linalg import (
    DEFAULT_TOL,
    Tolerances,
    hermitian_eig,
    psd_sqrt,
    support_projector,
    trace_norm,
)
from .states import DensityMatrix, PureState, textureless_state

# overlap at or below this is treated as an exact zero (log would diverge)
_OVERLAP_FLOOR = 1e-15
# max-entry leakage of rho outside a support, above which the state is
# considered genuinely unsupported there
_SUPPORT_LEAK_TOL = 1e-10
# max-entry distance below which a state counts as the textureless state
_FLAT_MATCH_TOL = 1e-9


def _as_measure_value(x: float) -> float:
    """Clip float noise in [-1e-12, 0) to exactly 0; reject anything lower."""
    if x >= 0.0 or math.isinf(x):
        return x
    if x >= -1e-12:
        return 0.0
    raise ValueError(f"measure produced a negative value {x!r}")


def _flat_matrix(d: int) -> np.ndarray:
    v = textureless_state(d).amplitudes
    return np.outer(v, v.conj())


def textureless_overlap(rho: DensityMatrix) -> float:
    """Overlap <flat|rho|flat> with the textureless state, in [0, 1].

    Equals the mean of all matrix entries, so it is directly measurable.
    """
    d = rho.dim
    ov = float(rho.matrix.sum().real) / d
    return min(max(ov, 0.0), 1.0)


def rugosity(rho: DensityMatrix) -> float:
    """-ln of the textureless overlap; +inf when the overlap vanishes."""
    ov = textureless_overlap(rho)
    if ov <= _OVERLAP_FLOOR:
        return math.inf
    return _as_measure_value(-math.log(ov))


def texture_trace(rho: DensityMatrix, tol: Tolerances = DEFAULT_TOL) -> float:
    """Trace distance to the textureless state: half the trace norm of the difference."""
    return _as_measure_value(0.5 * trace_norm(rho.matrix - _flat_matrix(rho.dim), tol))


def texture_geometric_pure(psi: PureState) -> float:
    """1 - |<flat|psi>|^2 for a pure state."""
    flat = textureless_state(psi.dim).amplitudes
    return _as_measure_value(1.0 - abs(np.vdot(flat, psi.amplitudes)) ** 2)


def texture_geometric(rho: DensityMatrix) -> float:
    """Geometric measure for a general state.

    For any ensemble {p_i, psi_i} of rho the average of the pure-state
    measure is sum_i p_i (1 - |<flat|psi_i>|^2) = 1 - <flat|rho|flat>,
    independent of the decomposition, so the convex-roof minimum is this
    closed form. The roof module cross-checks the identity numerically.
    """
    return _as_measure_value(1.0 - textureless_overlap(rho))


def geometric_lower_bound(rho: DensityMatrix, tol: Tolerances = DEFAULT_TOL) -> float:
    """Squared trace-distance measure: an analytical lower bound on the geometric measure."""
    return texture_trace(rho, tol) ** 2


def uhlmann_fidelity(rho: DensityMatrix, sigma: DensityMatrix, tol: Tolerances = DEFAULT_TOL) -> float:
    """Uhlmann fidelity [Tr sqrt(sqrt(rho) sigma sqrt(rho))]^2, in [0, 1].

    Computed as the squared sum of singular values of sqrt(rho) sqrt(sigma),
    which is the same quantity with much better behavior near rank
    deficiency. When one state is pure this equals <psi|other|psi>.
    """
    if rho.dim != sigma.dim:
        raise DimensionMismatch(f"dims {rho.dim} != {sigma.dim}")
    a = psd_sqrt(rho.matrix, tol) @ psd_sqrt(sigma.matrix, tol)
    root_f = float(np.linalg.svd(a, compute_uv=False).sum())
    return min(max(root_f * root_f, 0.0), 1.0)


def texture_fidelity(rho: DensityMatrix) -> float:
    """1 - F(rho, flat). Since the flat state is pure, F reduces to the overlap."""
    return _as_measure_value(1.0 - textureless_overlap(rho))


def texture_bures(rho: DensityMatrix) -> float:
    """Bures-style measure 2(1 - sqrt(F(rho, flat))), in [0, 2].

    Overlap at or below the structural-zero floor counts as exact 0, so the
    maximum is hit exactly; the square root would otherwise turn O(eps)
    summation noise into O(sqrt(eps)) errors.
    """
    ov = textureless_overlap(rho)
    if ov <= _OVERLAP_FLOOR:
        return 2.0
    return _as_measure_value(2.0 * (1.0 - math.sqrt(ov)))


def relative_entropy(rho: DensityMatrix, sigma: DensityMatrix, tol: Tolerances = DEFAULT_TOL) -> float:
    """Quantum relative entropy S(rho||sigma) = Tr(rho ln rho - rho ln sigma).

    Returns +inf when the support of rho is not contained in the support of
    sigma; otherwise evaluates on the common support with 0*ln(0) = 0.
    Natural logarithm throughout.
    """
    if rho.dim != sigma.dim:
        raise DimensionMismatch(f"dims {rho.dim} != {sigma.dim}")
    p_sigma = support_projector(sigma.matrix, tol)
    comp = np.eye(rho.dim) - p_sigma
    leak = float(np.abs(comp @ rho.matrix @ comp).max())
    if leak > _SUPPORT_LEAK_TOL:
        return math.inf

    w_r, _ = hermitian_eig(rho.matrix, tol)
    w_r = np.clip(w_r, 0.0, None)
    keep_r = w_r > tol.rank_rel_tol * max(w_r.max(), _OVERLAP_FLOOR)
    tr_rho_ln_rho = float((w_r[keep_r] * np.log(w_r[keep_r])).sum())

    w_s, v_s = hermitian_eig(sigma.matrix, tol)
    w_s = np.clip(w_s, 0.0, None)
    keep_s = w_s > tol.rank_rel_tol * max(w_s.max(), _OVERLAP_FLOOR)
    # weight of rho along each kept eigenvector of sigma
    proj_weights = np.einsum("ij,jk,ki->i", v_s.conj().T, rho.matrix, v_s).real
    tr_rho_ln_sigma = float((proj_weights[keep_s] * np.log(w_s[keep_s])).sum())

    return _as_measure_value(tr_rho_ln_rho - tr_rho_ln_sigma)


def texture_relative_entropy(rho: DensityMatrix, tol: Tolerances = DEFAULT_TOL) -> float:
    """S(rho || flat): 0 iff rho is the textureless state, +inf otherwise.

    The flat state has rank 1, so any state not supported on the flat
    direction alone lands in the infinite branch.
    """
    flat = textureless_state(rho.dim).density()
    return relative_entropy(rho, flat, tol)


@dataclass(frozen=True)
class RobustnessResult:
    """Robustness value plus the certificate that decided it."""

    value: float
    witness: str
    orthogonal_weight: float | None = None


def texture_robustness(rho: DensityMatrix) -> RobustnessResult:
    """Minimal s >= 0 such that (rho + s*sigma)/(1+s) is textureless for some state sigma.

    The pseudomixture rho = (1+s)*flat - s*sigma requires rho <= (1+s)*flat,
    which confines the support of rho to the flat direction. Hence the value
    is 0 exactly at the textureless state and +inf everywhere else; the
    witness for the infinite branch is the largest eigenvalue of rho
    compressed onto the orthocomplement of the flat direction.
    """
    d = rho.dim
    flat = _flat_matrix(d)
    if float(np.abs(rho.matrix - flat).max()) <= _FLAT_MATCH_TOL:
        return RobustnessResult(0.0, "state equals the textureless state; s = 0 works")
    comp = np.eye(d) - flat
    lam_perp = float(np.linalg.eigvalsh(comp @ rho.matrix @ comp)[-1])
    return RobustnessResult(
        math.inf,
        "orthogonal component of weight "
        f"{lam_perp:.12g} makes (1+s)*flat - rho indefinite for every finite s",
        lam_perp,
    )


def texture_l1(rho: DensityMatrix) -> float:
    """Entrywise l1 distance to the textureless state: sum_ij |rho_ij - 1/d|."""
    return _as_measure_value(float(np.abs(rho.matrix - 1.0 / rho.dim).sum()))


MEASURES = {
    "rugosity": rugosity,
    "trace": texture_trace,
    "geometric": texture_geometric,
    "fidelity": texture_fidelity,
    "bures": texture_bures,
    "rel_entropy": texture_relative_entropy,
    "robustness": lambda rho: texture_robustness(rho).value,
    "l1": texture_l1,
}

MEASURE_ORDER = ("trace", "geometric", "fidelity", "bures", "rel_entropy", "robustness", "rugosity", "l1")


def get_measure(name: str):
    try:
        return MEASURES[name]
    except KeyError:
        raise UnknownMeasure(f"unknown measure {name!r}; expected one of {sorted(MEASURES)}") from None


@dataclass(frozen=True)
class MeasureReport:
    """All quantifiers of one state, plus the shared overlap and the bound."""

    dim: int
    overlap: float
    rugosity: float
    trace: float
    geometric: float
    fidelity: float
    bures: float
    rel_entropy: float
    robustness: float
    l1: float
    geometric_lower_bound: float

    def __post_init__(self) -> None:
        if math.isfinite(self.geometric) and math.isfinite(self.fidelity):
            if abs(self.geometric - self.fidelity) > 1e-9:
                raise ValueError("geometric and fidelity measures disagree beyond 1e-9")
        if self.trace ** 2 > self.geometric + 1e-9:
            raise ValueError("squared trace measure exceeds the geometric measure")

    def value(self, name: str) -> float:
        if name not in MEASURES:
            raise UnknownMeasure(f"unknown measure {name!r}")
        return getattr(self, name)


def measure_all(rho: DensityMatrix, tol: Tolerances = DEFAULT_TOL) -> MeasureReport:
    """Evaluate every quantifier on one state."""
    return MeasureReport(
        dim=rho.dim,
        overlap=textureless_overlap(rho),
        rugosity=rugosity(rho),
        trace=texture_trace(rho, tol),
        geometric=texture_geometric(rho),
        fidelity=texture_fidelity(rho),
        bures=texture_bures(rho),
        rel_entropy=texture_relative_entropy(rho, tol),
        robustness=texture_robustness(rho).value,
        l1=texture_l1(rho),
        geometric_lower_bound=geometric_lower_bound(rho, tol),
    )
