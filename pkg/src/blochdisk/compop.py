"""Composition operators f -> f o phi and their verdict engines:
the Bloch-to-Hardy criterion integral, the Hardy-to-Bloch supremum and
boundary-limit functionals, and the bounded-below hypothesis probe."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import (AnalyticMap, Blaschke, BlochParams, Composed, HarmonicMap,
                   InadmissibleSymbolError, Mobius, ParameterRangeError,
                   Polynomial, PowerKernel, ScaledIdentity, disk_point,
                   lambda_f)
from .extremal import LIP_CONSTANT
from .norms import (DEFAULT_PLAN, SamplingPlan, bloch_weight, hardy_norm,
                    weight_from_gap)
from .numerics import (TWO_PI, dyadic_radius, extrapolate_to_zero, fit_slope,
                       gl_panel_columns, sup_search, tanh_radii)

__all__ = [
    "CriterionReport", "is_admissible_symbol", "compose",
    "bloch_to_hardy_criterion", "hardy_to_bloch_q", "hardy_to_bloch_verdict",
    "test_function", "growth_bound_check", "bounded_below_probe", "ProbeReport",
    "schwarz_pick_ratio", "doubling_ratio", "chi_ratio", "doubling_limits",
    "STABILIZATION_TOL", "SLOPE_THRESHOLD",
]

# Two-sided verdict heuristic: stabilization of the truncation ladder versus
# log-linear growth of partial values in -log(1 - R).  Calibrated so the
# closed-form symbols (constant, half-identity, automorphism, identity)
# classify with wide margin.
STABILIZATION_TOL = 1e-4
SLOPE_THRESHOLD = 0.05
_TRUNCATION_LO = 4
_TRUNCATION_HI = 24


@dataclass(frozen=True)
class CriterionReport:
    """Verdict record with numeric evidence and quadrature diagnostics.

    evidence holds (truncation parameter, partial value) pairs, monotone in
    the truncation parameter; estimate is present and finite for affirmative
    verdicts.
    """

    verdict: str
    estimate: float | None
    evidence: tuple
    diagnostics: dict = field(default_factory=dict)

    _AFFIRMATIVE = ("convergent", "compact", "vacuously-compact")
    _ALLOWED = _AFFIRMATIVE + ("divergent", "bounded", "unbounded",
                               "non-compact", "inconclusive")

    def __post_init__(self):
        if self.verdict not in self._ALLOWED:
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if self.verdict in self._AFFIRMATIVE:
            if self.estimate is None or not math.isfinite(self.estimate):
                raise ValueError(
                    f"verdict {self.verdict!r} requires a finite estimate")


# --------------------------------------------------------------------------
# Symbols and composition
# --------------------------------------------------------------------------

def is_admissible_symbol(phi: AnalyticMap, grid_points: int = 10_000) -> bool:
    """Whether phi maps the open disk into itself.

    Automorphism-type kinds are admissible structurally; other kinds are
    screened on a polar grid of about ``grid_points`` samples, which accepts
    genuine self-maps and rejects clear violators (boundary-touching
    counterexamples below grid resolution are inherently undecidable here).
    """
    if isinstance(phi, (Mobius, Blaschke)):
        return True
    if isinstance(phi, ScaledIdentity):
        return abs(phi.c) <= 1.0
    if isinstance(phi, Polynomial) and phi.degree <= 0:
        return abs(phi.eval(0j)) < 1.0
    n_r = 64
    n_a = max(8, grid_points // n_r)
    radii = tanh_radii(n_r, dyadic_radius(20))
    angles = np.arange(n_a) * (TWO_PI / n_a)
    z = radii[:, None] * np.exp(1j * angles)[None, :]
    return bool(np.max(np.abs(phi.eval(z))) < 1.0)


def _require_symbol(phi):
    if not is_admissible_symbol(phi):
        raise InadmissibleSymbolError(
            f"{getattr(phi, 'kind', type(phi).__name__)} is not a self-map of the disk")


def compose(f: HarmonicMap, phi: AnalyticMap) -> HarmonicMap:
    """The composition f o phi as a canonical harmonic pair.

    The conjugate part of f o phi is re-anchored so it vanishes at 0, moving
    the constant conj(g(phi(0))) into the analytic part; pointwise values and
    the maximal directional derivative are unchanged.
    """
    _require_symbol(phi)
    anchor = complex(f.g.eval(complex(phi.eval(0j))))
    h = Composed(f.h, phi, offset=anchor.conjugate())
    g = Composed(f.g, phi, offset=-anchor)
    return HarmonicMap(h, g)


def test_function(b, p: float) -> PowerKernel:
    """Hardy-normalized kernel ((1 - |b|^2)/(1 - conj(b) z)^2)^(1/p).

    Its Hardy p-norm equals 1 for every b in the disk.
    """
    return PowerKernel(disk_point(b), float(p))


def schwarz_pick_ratio(phi: AnalyticMap, z):
    """(1 - |z|^2) |phi'(z)| / (1 - |phi(z)|^2); at most 1 for self-maps,
    identically 1 for automorphisms.  Vectorized."""
    w = phi.eval(z)
    return (1.0 - np.abs(z) ** 2) * np.abs(phi.deriv(z)) / (1.0 - np.abs(w) ** 2)


# --------------------------------------------------------------------------
# Bloch -> Hardy criterion integral
# --------------------------------------------------------------------------

def bloch_to_hardy_criterion(phi: AnalyticMap, params: BlochParams, p: float,
                             plan: SamplingPlan | None = None) -> CriterionReport:
    """Truncation ladder for the criterion integral

        (1/2pi) int_0^2pi ( int_0^1 |phi'|^2 (1-r) / omega(chi(|phi|))^2 dr )^(p/2) dtheta.

    The inner integral is accumulated over dyadic panels toward r = 1 and the
    angular mean is reported at truncations R_k = 1 - 2^-k for k = 4..24.
    Stabilization of the last rungs gives ``convergent`` (for this criterion,
    bounded and compact coincide); a positive log-linear growth fit gives
    ``divergent``; otherwise ``inconclusive``.
    """
    _require_symbol(phi)
    p = float(p)
    if not p > 0.0:
        raise ParameterRangeError(f"criterion requires p > 0, got {p}")
    plan = plan or DEFAULT_PLAN

    n_angles = plan.angular_resolution
    thetas = np.arange(n_angles) * (TWO_PI / n_angles)
    phases = np.exp(1j * thetas)
    omega = params.omega

    def panel_columns(r):
        z = r[:, None] * phases[None, :]
        w = phi.eval(z)
        gap_weight = omega(bloch_weight(params, np.abs(w)))
        return np.abs(phi.deriv(z)) ** 2 * (1.0 - r)[:, None] / gap_weight ** 2

    inner = np.zeros(n_angles)
    evidence = []
    for k in range(_TRUNCATION_HI):
        inner = inner + gl_panel_columns(panel_columns,
                                         dyadic_radius(k), dyadic_radius(k + 1))
        if k + 1 >= _TRUNCATION_LO:
            evidence.append((k + 1, float(np.mean(inner ** (p / 2.0)))))

    ks = [k for k, _ in evidence]
    vals = [v for _, v in evidence]
    scale = max(abs(vals[-1]), 1e-300)
    rel_changes = [abs(vals[i] - vals[i - 1]) / scale for i in range(1, len(vals))]
    stabilized = all(c < STABILIZATION_TOL for c in rel_changes[-3:])
    xs = [k * math.log(2.0) for k in ks[-8:]]
    slope = fit_slope(xs, vals[-8:])

    diagnostics = {
        "angular_nodes": n_angles,
        "radial_nodes_per_panel": 16,
        "growth_fit_slope": slope,
        "last_rel_changes": rel_changes[-3:],
        "stabilization_tol": STABILIZATION_TOL,
        "slope_threshold": SLOPE_THRESHOLD,
        "note": "finite criterion integral: operator bounded, equivalently compact",
    }
    if stabilized:
        verdict, estimate = "convergent", float(vals[-1])
    elif slope > SLOPE_THRESHOLD:
        verdict, estimate = "divergent", None
    else:
        verdict, estimate = "inconclusive", None
    return CriterionReport(verdict, estimate, tuple(evidence), diagnostics)


# --------------------------------------------------------------------------
# Hardy -> Bloch functionals
# --------------------------------------------------------------------------

def _check_hardy_to_bloch_params(params: BlochParams, p: float):
    if not p > 1.0:
        raise ParameterRangeError(f"requires p > 1, got {p}")
    ok = (params.alpha == 1.0 and params.beta <= 0.0) or params.alpha > 1.0
    if not ok:
        raise ParameterRangeError(
            f"(alpha, beta) = ({params.alpha}, {params.beta}) outside the "
            "supported range: alpha = 1 with beta <= 0, or alpha > 1")
    if params.omega.ratio_limit_at_zero() is None:
        raise ParameterRangeError(
            "majorant must have a finite limit of omega(t)/t at 0")


def hardy_to_bloch_q(phi: AnalyticMap, params: BlochParams, p: float, z) -> float:
    """Boundedness functional Q(z) = |phi'(z)| omega(chi(|z|)) / (1-|phi(z)|^2)^(1+1/p)."""
    _check_hardy_to_bloch_params(params, float(p))
    _require_symbol(phi)
    z = disk_point(z)
    w = complex(phi.eval(z))
    gap = 1.0 - abs(w) ** 2
    weight = params.omega(bloch_weight(params, abs(z)))
    return float(abs(phi.deriv(z)) * weight / gap ** (1.0 + 1.0 / p))


def hardy_to_bloch_verdict(phi: AnalyticMap, params: BlochParams, p: float,
                           plan: SamplingPlan | None = None) -> CriterionReport:
    """Boundedness and compactness verdicts from the functional Q.

    Boundedness: the running supremum of Q on the grid up the radial ladder
    either stabilizes (bounded, with a refined supremum estimate) or grows
    under the log-linear fit (unbounded).  Compactness: when every sampled
    |phi| stays below 1 - 1e-6 the boundary-limit condition holds vacuously;
    otherwise band maxima of Q over {|phi(z)| > 1 - 2^-k} must decay to zero.
    """
    p = float(p)
    _check_hardy_to_bloch_params(params, p)
    _require_symbol(phi)
    plan = plan or DEFAULT_PLAN

    omega = params.omega

    def q_values(z):
        w = phi.eval(z)
        gap = 1.0 - np.abs(w) ** 2
        weight = omega(bloch_weight(params, np.abs(z)))
        return np.abs(phi.deriv(z)) * weight / gap ** (1.0 + 1.0 / p)

    angles = np.arange(plan.sup_angles) * (TWO_PI / plan.sup_angles)
    phases = np.exp(1j * angles)
    ladder = plan.ladder
    running = []
    sup_so_far = float(np.max(q_values(np.zeros(1, dtype=complex))))
    for r in ladder:
        sup_so_far = max(sup_so_far, float(np.max(q_values(r * phases))))
        running.append(sup_so_far)
    evidence = tuple(zip(ladder, running))

    scale = max(running[-1], 1e-300)
    rel_changes = [abs(running[i] - running[i - 1]) / scale
                   for i in range(1, len(running))]
    xs = [math.log(2.0) * (j + 1) for j in range(len(running))][-8:]
    slope = fit_slope(xs, running[-8:])
    stabilized = all(c < STABILIZATION_TOL for c in rel_changes[-3:])

    diagnostics = {
        "growth_fit_slope": slope,
        "last_rel_changes": rel_changes[-3:],
        "bounded": None,
    }
    if not stabilized and slope > SLOPE_THRESHOLD:
        diagnostics["bounded"] = False
        return CriterionReport("unbounded", None, evidence, diagnostics)
    if not stabilized:
        return CriterionReport("inconclusive", None, evidence, diagnostics)

    radii, angle_grid = plan.sup_grid()
    sup_q, _, res = sup_search(q_values, radii, angle_grid, plan.golden_iters)
    sup_q = max(sup_q, running[-1])
    diagnostics["bounded"] = True
    diagnostics["sup_resolution"] = float(res[0])

    zgrid = radii[:, None] * np.exp(1j * angle_grid)[None, :]
    phi_mod = np.abs(phi.eval(zgrid))
    sup_phi = float(np.max(phi_mod))
    diagnostics["sup_phi"] = sup_phi
    if sup_phi <= 1.0 - 1e-6:
        return CriterionReport("vacuously-compact", float(sup_q), evidence,
                               diagnostics)

    qgrid = q_values(zgrid)
    band_maxima = []
    band_ks = []
    for k in range(1, 19):
        mask = phi_mod > dyadic_radius(k)
        if not np.any(mask):
            break
        band_ks.append(k)
        band_maxima.append(float(np.max(qgrid[mask])))
    diagnostics["band_maxima"] = band_maxima
    # decay of band maxima toward the boundary bands: geometric decay (or
    # absolute smallness against the supremum) reads as a vanishing limit
    if len(band_maxima) >= 3:
        floor = 1e-300
        decay_slope = fit_slope(band_ks, [math.log(max(b, floor))
                                          for b in band_maxima])
        diagnostics["band_decay_slope"] = decay_slope
        tiny = band_maxima[-1] <= 1e-3 * max(sup_q, floor)
        if tiny or decay_slope < -0.05:
            return CriterionReport("compact", float(sup_q), evidence, diagnostics)
        if decay_slope > -0.005:
            return CriterionReport("non-compact", float(sup_q), evidence,
                                   diagnostics)
    return CriterionReport("inconclusive", float(sup_q), evidence, diagnostics)


# --------------------------------------------------------------------------
# Growth bound and bounded-below probe
# --------------------------------------------------------------------------

def growth_bound_check(f: HarmonicMap, p: float, z,
                       plan: SamplingPlan | None = None) -> dict:
    """Pointwise growth bound for Hardy-class harmonic maps:

        Lambda_f(z) <= 4^(1/p) (||h||_p + ||g||_p) / (1 - |z|^2)^(1 + 1/p).

    Returns {"lhs", "rhs", "ok"}; norm verdicts propagate as errors.
    """
    p = float(p)
    if not p > 1.0:
        raise ParameterRangeError(f"growth bound requires p > 1, got {p}")
    z = disk_point(z)
    plan = plan or DEFAULT_PLAN
    h_norm = hardy_norm(f.h, p, plan).require_finite("hardy norm of h")
    g_norm = hardy_norm(f.g, p, plan).require_finite("hardy norm of g")
    lhs = float(lambda_f(f, z))
    gap = 1.0 - abs(z) ** 2
    rhs = 4.0 ** (1.0 / p) * (h_norm + g_norm) / gap ** (1.0 + 1.0 / p)
    return {"lhs": lhs, "rhs": rhs, "ok": bool(lhs <= rhs * (1.0 + 1e-10))}


@dataclass(frozen=True)
class ProbeReport:
    """Bounded-below hypothesis probe summary."""

    fraction: float
    implied_constant: float | None
    samples: int
    grid_points: int
    unmatched: tuple = ()


# Upper end of the admissible radius for the bounded-below hypothesis.
PROBE_RADIUS_SUP = 2.0 * math.sqrt(3.0) / 9.0


def bounded_below_probe(phi: AnalyticMap, r: float, epsilon: float,
                        samples: int, plan: SamplingPlan | None = None,
                        seed: int = 0) -> ProbeReport:
    """Grid search for the bounded-below hypothesis of composition symbols.

    For each of ``samples`` area-uniform targets w, look for a point z with
    rho(phi(z), w) < r and (1-|z|^2)|phi'(z)|/(1-|phi(z)|^2) > epsilon.
    Candidates are the supremum grid plus, per target, w itself and phi(w)
    (exact pre-images for the identity and for involutive automorphisms).
    When every target is matched the implied lower-bound constant
    (1 - (3 sqrt(3)/2) r) * epsilon is reported.  Failure to match at this
    resolution is reported as unmatched, not as a refutation.
    """
    r = float(r)
    epsilon = float(epsilon)
    if not 0.0 < r < PROBE_RADIUS_SUP:
        raise ParameterRangeError(
            f"r must lie in (0, {PROBE_RADIUS_SUP:.10f}), got {r}")
    if not epsilon > 0.0:
        raise ParameterRangeError(f"epsilon must be positive, got {epsilon}")
    if samples < 1:
        raise ParameterRangeError("samples must be >= 1")
    _require_symbol(phi)
    plan = plan or DEFAULT_PLAN

    radii, angles = plan.sup_grid()
    z = (radii[:, None] * np.exp(1j * angles)[None, :]).ravel()
    w_img = np.asarray(phi.eval(z), dtype=complex).ravel()
    ratio = (1.0 - np.abs(z) ** 2) * np.abs(phi.deriv(z)).ravel() \
        / (1.0 - np.abs(w_img) ** 2)
    keep = ratio > epsilon
    candidates = w_img[keep]

    rng = np.random.default_rng(seed)
    targets = np.sqrt(rng.random(samples)) * np.exp(1j * TWO_PI * rng.random(samples))
    hits = 0
    unmatched = []
    for w in targets:
        local = np.array([w, complex(phi.eval(complex(w)))])
        local = local[np.abs(local) < 1.0]
        local_img = np.asarray(phi.eval(local), dtype=complex)
        local_ratio = (1.0 - np.abs(local) ** 2) \
            * np.abs(np.asarray(phi.deriv(local), dtype=complex)) \
            / (1.0 - np.abs(local_img) ** 2)
        pool = np.concatenate([candidates, local_img[local_ratio > epsilon]])
        if pool.size:
            dist = np.abs((pool - w) / (1.0 - np.conjugate(w) * pool))
            if float(np.min(dist)) < r:
                hits += 1
                continue
        if len(unmatched) < 8:
            unmatched.append(complex(w))
    fraction = hits / samples
    implied = (1.0 - LIP_CONSTANT * r) * epsilon if fraction == 1.0 else None
    return ProbeReport(fraction, implied, samples, int(z.size), tuple(unmatched))


# --------------------------------------------------------------------------
# Doubling behaviour of the reciprocal weight
# --------------------------------------------------------------------------

def chi_ratio(alpha: float, beta: float, s: float) -> float:
    """chi(1-s) / chi(1-s/2) computed through the gap u = s(2-s).

    Stays bounded over s in (0, 1]; tends to 2^alpha as s -> 0 and to
    (4/3)^alpha / (1 + log(4/3))^beta at s = 1.
    """
    if not 0.0 < s <= 1.0:
        raise ParameterRangeError(f"s must lie in (0, 1], got {s}")
    u1 = s * (2.0 - s)
    u2 = (0.5 * s) * (2.0 - 0.5 * s)
    return float(weight_from_gap(alpha, beta, u1) / weight_from_gap(alpha, beta, u2))


def doubling_ratio(params: BlochParams, s: float) -> float:
    """Reciprocal-weight ratio omega(chi(1-s)) / omega(chi(1-s/2)).

    By the non-increasing ratio property of majorants this never exceeds
    chi_ratio(alpha, beta, s); they coincide for the identity majorant.
    """
    if not 0.0 < s <= 1.0:
        raise ParameterRangeError(f"s must lie in (0, 1], got {s}")
    u1 = s * (2.0 - s)
    u2 = (0.5 * s) * (2.0 - 0.5 * s)
    chi1 = weight_from_gap(params.alpha, params.beta, u1)
    chi2 = weight_from_gap(params.alpha, params.beta, u2)
    return float(params.omega(chi1) / params.omega(chi2))


def doubling_limits(alpha: float, beta: float) -> tuple:
    """Endpoint limits of chi(1-s)/chi(1-s/2).

    The s -> 0 limit is recovered by Neville extrapolation in 1/(1 - log s)
    (the log factors converge at that rate); the s -> 1 limit is the direct
    endpoint value.  Expected values: 2^alpha and (4/3)^alpha/(1+log(4/3))^beta.
    """
    js = [28.0, 31.0, 34.0, 37.0, 40.0, 43.0]
    us = [1.0 / (1.0 + j * math.log(2.0)) for j in js]
    vals = [chi_ratio(alpha, beta, 2.0 ** -j) for j in js]
    limit0 = extrapolate_to_zero(us, vals)
    limit1 = chi_ratio(alpha, beta, 1.0)
    return float(limit0), float(limit1)
