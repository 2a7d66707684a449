"""Randomized falsification harness for the texture-measure axioms.

Each check runs seeded trials and returns a :class:`CheckReport`. A failing
report always carries a replayable counterexample (serialized states and
channel) whose violation can be recomputed standalone. Reports are
reproducible: the per-trial generator is derived from (seed, trial index),
so trial order or concurrency cannot change the outcome.

Extended-real conventions: ``x <= +inf`` holds for every x, an infinite
left-hand side against a finite right-hand side is a violation, and zero
weights absorb infinities (0 * inf = 0) in convex combinations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channels import KrausChannel, apply, fourier_dephasing, fourier_replace, free_unitary_mixture
from .linalg import DEFAULT_TOL, trace_norm
from .measures import (
    geometric_lower_bound,
    get_measure,
    texture_bures,
    texture_fidelity,
    texture_geometric,
    texture_trace,
    uhlmann_fidelity,
    measure_all,
)
from .states import (
    DensityMatrix,
    HamiltonianSpec,
    PureState,
    bell_state,
    coherent_gibbs_ket,
    fourier_state,
    gibbs_state,
    random_density,
    random_pure,
    sigma_alpha,
    tau_alpha,
    textureless_state,
    validate_density,
)
from .stateio import channel_to_dict, density_to_dict

SLACK = DEFAULT_TOL.monotonicity_slack

DEFAULT_AXIOM_DIMS = (2, 3, 4, 5)
DEFAULT_THEOREM3_DIMS = (2, 3, 4, 5, 6)
DEFAULT_MAXIMALITY_DIMS = (2, 3, 4, 5, 6, 7, 8)
DEFAULT_GIBBS_DIMS = (2, 3, 5, 8, 10)
DEFAULT_GIBBS_TEMPERATURES = (0.1, 1.0, 10.0)

# replacement target known to raise the entrywise l1 measure on the d=2
# maximal-texture input; seeds the falsification search deterministically
L1_PROBE_TARGET = PureState(np.array([np.sqrt(3.0) / 2.0, -0.5], dtype=complex))


@dataclass
class CheckReport:
    name: str
    trials: int
    failures: int
    worst_violation: float
    seed: int
    counterexample: dict | None = None

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def __post_init__(self) -> None:
        if (self.failures == 0) != (self.counterexample is None):
            raise ValueError("counterexample must be present exactly when failures > 0")


class _Tracker:
    """Running worst violation plus the counterexample of the worst failure."""

    def __init__(self) -> None:
        self.trials = 0
        self.failures = 0
        self.worst = -math.inf
        self._worst_failed = -math.inf
        self.certificate: dict | None = None

    def record(self, violation: float, failed: bool, certificate: dict | None = None) -> None:
        self.trials += 1
        self.worst = max(self.worst, violation)
        if failed:
            self.failures += 1
            if violation > self._worst_failed or self.certificate is None:
                self._worst_failed = violation
                self.certificate = certificate

    def report(self, name: str, seed: int) -> CheckReport:
        worst = self.worst if self.worst != -math.inf else 0.0
        counterexample = self.certificate if self.failures > 0 else None
        return CheckReport(name, self.trials, self.failures, worst, seed, counterexample)


def _trial_rng(seed: int, *key: int) -> np.random.Generator:
    return np.random.default_rng([seed, *key])


def _leq_extended(lhs: float, rhs: float, slack: float = SLACK) -> tuple[bool, float]:
    """Extended-real lhs <= rhs + slack; returns (ok, signed violation)."""
    if math.isinf(rhs):
        return True, -math.inf
    if math.isinf(lhs):
        return False, math.inf
    v = lhs - rhs
    return v <= slack, v


def _ext_combo(t: float, a: float, b: float) -> float:
    """t*a + (1-t)*b with 0 * inf treated as 0."""
    left = 0.0 if t == 0.0 else t * a
    right = 0.0 if t == 1.0 else (1.0 - t) * b
    return left + right


def _random_state(d: int, rng: np.random.Generator) -> DensityMatrix:
    rank = 1 + int(rng.integers(0, d))
    return random_density(d, rank, rng)


def _sample_free_channel(d: int, family: int, rng: np.random.Generator) -> KrausChannel:
    family = family % 3
    if family == 0:
        return free_unitary_mixture(d, 1 + int(rng.integers(1, 4)), rng)
    if family == 1:
        return fourier_dephasing(d)
    targets = [random_pure(d, rng) for _ in range(d - 1)]
    return fourier_replace(d, targets)


def check_axioms(
    measure: str,
    dims: tuple[int, ...] = DEFAULT_AXIOM_DIMS,
    trials: int = 1000,
    seed: int = 0,
) -> tuple[CheckReport, CheckReport, CheckReport]:
    """Nonnegativity/zero-at-flat, free monotonicity, and convexity suites."""
    f = get_measure(measure)

    nonneg = _Tracker()
    for d in dims:
        value = f(textureless_state(d).density())
        bad = math.isinf(value) or abs(value) > SLACK
        nonneg.record(
            abs(value) if not math.isinf(value) else math.inf,
            bad,
            {"kind": "zero_at_textureless", "dim": d, "value": value} if bad else None,
        )
    for i in range(trials):
        rng = _trial_rng(seed, 0, i)
        d = dims[i % len(dims)]
        rho = _random_state(d, rng)
        value = f(rho)
        bad = (not math.isinf(value)) and value < 0.0
        nonneg.record(
            -value if bad else 0.0,
            bad,
            {"kind": "nonnegativity", "state": density_to_dict(rho), "value": value} if bad else None,
        )

    mono = _Tracker()
    for i in range(trials):
        rng = _trial_rng(seed, 1, i)
        d = dims[i % len(dims)]
        rho = _random_state(d, rng)
        channel = _sample_free_channel(d, i, rng)
        before = f(rho)
        after = f(apply(channel, rho))
        ok, violation = _leq_extended(after, before)
        mono.record(
            violation,
            not ok,
            {
                "kind": "monotonicity",
                "measure": measure,
                "state": density_to_dict(rho),
                "channel": channel_to_dict(channel),
                "before": before,
                "after": after,
                "violation": violation,
                "trial": i,
            },
        )

    convex = _Tracker()
    for i in range(trials):
        rng = _trial_rng(seed, 2, i)
        d = dims[i % len(dims)]
        rho_a = _random_state(d, rng)
        rho_b = _random_state(d, rng)
        t = float(rng.uniform())
        mix = validate_density(t * rho_a.matrix + (1.0 - t) * rho_b.matrix)
        lhs = f(mix)
        rhs = _ext_combo(t, f(rho_a), f(rho_b))
        ok, violation = _leq_extended(lhs, rhs)
        convex.record(
            violation,
            not ok,
            {
                "kind": "convexity",
                "measure": measure,
                "state_a": density_to_dict(rho_a),
                "state_b": density_to_dict(rho_b),
                "t": t,
                "lhs": lhs,
                "rhs": rhs,
                "violation": violation,
                "trial": i,
            },
        )

    return (
        nonneg.report(f"axioms:{measure}:nonnegativity", seed),
        mono.report(f"axioms:{measure}:monotonicity", seed),
        convex.report(f"axioms:{measure}:convexity", seed),
    )


def check_theorem3(
    dims: tuple[int, ...] = DEFAULT_THEOREM3_DIMS,
    trials: int = 2000,
    seed: int = 0,
) -> CheckReport:
    """Geometric measure dominates the squared trace-distance measure;
    the bound is tight on pure states."""
    tracker = _Tracker()
    for i in range(trials):
        rng = _trial_rng(seed, 0, i)
        d = dims[i % len(dims)]
        rank = 1 + int(rng.integers(0, d))
        rho = random_density(d, rank, rng)
        bound = geometric_lower_bound(rho)
        value = texture_geometric(rho)
        violation = bound - value
        failed = violation > SLACK
        if rank == 1:
            # the bound is an equality on pure states
            gap = abs(value - bound)
            if gap > 1e-10:
                failed = True
                violation = max(violation, gap)
        tracker.record(
            violation,
            failed,
            {
                "kind": "lower_bound",
                "state": density_to_dict(rho),
                "geometric": value,
                "bound": bound,
                "rank": rank,
                "trial": i,
            },
        )
    return tracker.report("theorem3", seed)


def _trace_distance(a: DensityMatrix, b: DensityMatrix) -> float:
    return 0.5 * trace_norm(a.matrix - b.matrix)


def check_trace_distance_convexity(trials: int = 500, seed: int = 0) -> CheckReport:
    """Strong convexity of the trace distance over random finite mixtures,
    plus the joint-convexity specialization with equal weights."""
    tracker = _Tracker()
    for i in range(trials):
        rng = _trial_rng(seed, 0, i)
        d = 2 + int(rng.integers(0, 3))
        n = 2 + int(rng.integers(0, 3))
        rhos = [_random_state(d, rng) for _ in range(n)]
        sigmas = [_random_state(d, rng) for _ in range(n)]
        p = rng.exponential(size=n)
        p /= p.sum()
        if i % 2 == 0:
            q = p.copy()
        else:
            q = rng.exponential(size=n)
            q /= q.sum()
        mix_rho = validate_density(sum(pi * r.matrix for pi, r in zip(p, rhos)))
        mix_sigma = validate_density(sum(qi * s.matrix for qi, s in zip(q, sigmas)))
        lhs = _trace_distance(mix_rho, mix_sigma)
        classical = 0.5 * float(np.abs(p - q).sum())
        rhs = classical + float(sum(pi * _trace_distance(r, s) for pi, r, s in zip(p, rhos, sigmas)))
        violation = lhs - rhs
        tracker.record(
            violation,
            violation > SLACK,
            {
                "kind": "strong_convexity",
                "dim": d,
                "weights_p": p.tolist(),
                "weights_q": q.tolist(),
                "lhs": lhs,
                "rhs": rhs,
                "trial": i,
            },
        )
    return tracker.report("trace_distance_convexity", seed)


def fourier_mixture(d: int, weights: np.ndarray) -> DensityMatrix:
    """Mixture sum_j p_j |f_j><f_j| over the Fourier states j = 2..n."""
    acc = np.zeros((d, d), dtype=complex)
    for j, w in enumerate(weights, start=2):
        v = fourier_state(d, j).amplitudes
        acc += w * np.outer(v, v.conj())
    return validate_density(acc)


def check_appendix_d(
    dims: tuple[int, ...] = DEFAULT_MAXIMALITY_DIMS,
    trials: int = 50,
    seed: int = 0,
) -> CheckReport:
    """Spectrum and maximality of random mixtures of non-flat Fourier states.

    The difference between the flat projector and the mixture must have
    eigenvalues {1, -p_2, ..., -p_n, 0, ...}; all distance measures must sit
    at their maxima and the fidelity with the flat state must vanish.
    """
    tracker = _Tracker()
    flat_cache = {d: textureless_state(d).density() for d in dims}
    for d in dims:
        for i in range(trials):
            rng = _trial_rng(seed, d, i)
            n = 2 + int(rng.integers(0, d - 1)) if d > 2 else 2
            weights = rng.exponential(size=n - 1)
            weights /= weights.sum()
            mix = fourier_mixture(d, weights)
            diff = flat_cache[d].matrix - mix.matrix
            eigs = np.sort(np.linalg.eigvalsh(diff))
            expected = np.sort(np.concatenate([[1.0], -weights, np.zeros(d - n)]))
            spectrum_err = float(np.abs(eigs - expected).max())
            value_err = max(
                abs(texture_trace(mix) - 1.0),
                abs(texture_geometric(mix) - 1.0),
                abs(texture_fidelity(mix) - 1.0),
                abs(texture_bures(mix) - 2.0),
                uhlmann_fidelity(mix, flat_cache[d]),
            )
            failed = spectrum_err > 1e-9 or value_err > 1e-10
            tracker.record(
                max(spectrum_err, value_err),
                failed,
                {
                    "kind": "fourier_mixture",
                    "dim": d,
                    "weights": weights.tolist(),
                    "spectrum_error": spectrum_err,
                    "value_error": value_err,
                    "trial": i,
                },
            )
    return tracker.report("appendixD", seed)


# expected worked-example values: (state, measure) -> value
_BELL_EXPECTED = {
    "+": {
        "trace": math.sqrt(2.0) / 2.0,
        "geometric": 0.5,
        "fidelity": 0.5,
        "bures": 2.0 - math.sqrt(2.0),
        "rel_entropy": math.inf,
        "robustness": math.inf,
        "rugosity": math.log(2.0),
    },
    "-": {
        "trace": 1.0,
        "geometric": 1.0,
        "fidelity": 1.0,
        "bures": 2.0,
        "rel_entropy": math.inf,
        "robustness": math.inf,
        "rugosity": math.inf,
    },
}


def tau_trace_formula(alpha: float) -> float:
    return (1.0 - alpha + math.sqrt(alpha * alpha + 2.0 * alpha + 5.0)) / 4.0


def sigma_trace_formula(alpha: float) -> float:
    return (3.0 - alpha) / 4.0


def check_examples(grid: int = 100, seed: int = 0) -> CheckReport:
    """Reproduce the Bell-state measure table and the closed forms of the
    two single-parameter families on an evenly spaced grid."""
    tracker = _Tracker()
    for sign, expected in _BELL_EXPECTED.items():
        report = measure_all(bell_state(sign).density())
        for name, want in expected.items():
            got = report.value(name)
            if math.isinf(want):
                failed = not math.isinf(got)
                violation = math.inf if failed else -math.inf
            else:
                violation = abs(got - want)
                failed = violation > 1e-10
            tracker.record(
                violation,
                failed,
                {"kind": "bell_table", "sign": sign, "measure": name, "got": got, "want": want},
            )
    for k in range(grid + 1):
        alpha = k / grid
        s = sigma_alpha(alpha)
        t = tau_alpha(alpha)
        ts, tt = texture_trace(s), texture_trace(t)
        rug_gap = abs(measure_all(s).rugosity - measure_all(t).rugosity)
        errs = {
            "sigma_trace": abs(ts - sigma_trace_formula(alpha)),
            "tau_trace": abs(tt - tau_trace_formula(alpha)),
            "rugosity_gap": rug_gap,
            "ordering": ts - tt,  # must be strictly negative
        }
        failed = (
            errs["sigma_trace"] > 1e-10
            or errs["tau_trace"] > 1e-10
            or errs["rugosity_gap"] > 1e-12
            or errs["ordering"] >= 0.0
        )
        tracker.record(
            max(errs["sigma_trace"], errs["tau_trace"], errs["rugosity_gap"], errs["ordering"]),
            failed,
            {"kind": "families_grid", "alpha": alpha, **errs},
        )
    return tracker.report("examples", seed)


def check_gibbs(
    dims: tuple[int, ...] = DEFAULT_GIBBS_DIMS,
    energy_draws: int = 20,
    temperatures: tuple[float, ...] = DEFAULT_GIBBS_TEMPERATURES,
    seed: int = 0,
) -> CheckReport:
    """Thermal states have energy- and temperature-independent fidelity and
    Bures values; coherent thermal kets with non-degenerate energies give
    strictly temperature-dependent values."""
    tracker = _Tracker()
    temps = tuple(sorted(temperatures))
    for d in dims:
        for i in range(energy_draws):
            rng = _trial_rng(seed, d, i)
            energies = rng.uniform(0.0, 4.0, size=d)
            for t in temps:
                rho = gibbs_state(HamiltonianSpec(energies, t))
                err = max(
                    abs(texture_fidelity(rho) - (d - 1) / d),
                    abs(texture_bures(rho) - 2.0 * (d - math.sqrt(d)) / d),
                )
                tracker.record(
                    err,
                    err > 1e-10,
                    {"kind": "gibbs_constants", "dim": d, "temperature": t, "error": err},
                )
            # enforce a minimum gap so non-degeneracy is genuine
            spaced = np.cumsum(0.1 + rng.uniform(0.0, 1.0, size=d))
            values = [
                texture_fidelity(coherent_gibbs_ket(HamiltonianSpec(spaced, t)).density())
                for t in temps
            ]
            mono_ok = all(values[j] > values[j + 1] for j in range(len(values) - 1))
            min_gap = min(
                abs(values[a] - values[b])
                for a in range(len(values))
                for b in range(a + 1, len(values))
            )
            failed = not mono_ok or min_gap <= 1e-12
            tracker.record(
                -min_gap if not failed else 0.0,
                failed,
                {
                    "kind": "coherent_gibbs",
                    "dim": d,
                    "temperatures": list(temps),
                    "values": values,
                    "monotone": mono_ok,
                },
            )
    return tracker.report("gibbs", seed)


def falsify_monotonicity(
    measure: str,
    budget: int = 2000,
    seed: int = 0,
    dims: tuple[int, ...] = DEFAULT_AXIOM_DIMS,
) -> CheckReport:
    """Randomized search for monotonicity violations across all free
    families plus random replacement targets.

    The first candidate is the deterministic d=2 probe (maximal input,
    replacement onto :data:`L1_PROBE_TARGET`) so the known entrywise-l1
    violation is always rediscovered when it applies.
    """
    f = get_measure(measure)
    tracker = _Tracker()

    def run_pair(rho: DensityMatrix, channel: KrausChannel, trial: int) -> None:
        before = f(rho)
        after = f(apply(channel, rho))
        ok, violation = _leq_extended(after, before)
        tracker.record(
            violation,
            not ok,
            {
                "kind": "monotonicity",
                "measure": measure,
                "state": density_to_dict(rho),
                "channel": channel_to_dict(channel),
                "before": before,
                "after": after,
                "violation": violation,
                "trial": trial,
            },
        )

    if 2 in dims:
        run_pair(fourier_state(2, 2).density(), fourier_replace(2, [L1_PROBE_TARGET]), 0)
    for i in range(tracker.trials, budget):
        rng = _trial_rng(seed, 0, i)
        d = dims[i % len(dims)]
        kind = int(rng.integers(0, 3))
        if kind == 0:
            rho = _random_state(d, rng)
        elif kind == 1:
            rho = random_pure(d, rng).density()
        else:
            rho = fourier_state(d, 1 + int(rng.integers(1, d))).density()
        channel = _sample_free_channel(d, int(rng.integers(0, 3)), rng)
        run_pair(rho, channel, i)
    return tracker.report(f"falsify:{measure}", seed)
