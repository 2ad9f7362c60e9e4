"""Domain models for the open unit disk.

Analytic functions are a closed taxonomy of kinds, each with exact closed-form
evaluation and first derivative; harmonic maps are canonical pairs h + conj(g)
with g(0) = 0.  Majorant weights and Bloch-type weight parameters live here
as well.  All values are immutable after construction and evaluation is pure,
so everything is safe to share across workers.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

__all__ = [
    "BlochDiskError", "MajorantValidationError", "ParameterRangeError",
    "InadmissibleSymbolError", "DegeneratePairError", "ZeroSeminormError",
    "InfiniteNormError", "DivergentIntegralError",
    "in_unit_disk", "disk_point",
    "AnalyticMap", "Polynomial", "Mobius", "Blaschke", "ScaledIdentity",
    "PowerKernel", "Composed", "HarmonicMap", "as_harmonic", "lambda_f",
    "Majorant", "IdentityMajorant", "PowerMajorant", "TabulatedMajorant",
    "validate_majorant", "BlochParams", "classical_params",
]


class BlochDiskError(Exception):
    """Base class for all toolkit errors."""


class MajorantValidationError(BlochDiskError, ValueError):
    """A candidate weight violates a majorant property.

    ``reason`` is one of ``nonzero-at-origin``, ``not-increasing``,
    ``ratio-increasing``; ``witness`` is the grid point exhibiting it.
    """

    def __init__(self, reason, witness=None):
        super().__init__(f"majorant rejected ({reason}, t*={witness})")
        self.reason = reason
        self.witness = witness


class ParameterRangeError(BlochDiskError, ValueError):
    """A numeric parameter lies outside the range an operation supports."""


class InadmissibleSymbolError(BlochDiskError, ValueError):
    """A composition symbol fails to map the disk into itself."""


class DegeneratePairError(BlochDiskError, ValueError):
    """Two points are too close for a difference quotient to be meaningful."""


class ZeroSeminormError(BlochDiskError, ValueError):
    """An operation requires a nonzero Bloch seminorm."""


class InfiniteNormError(BlochDiskError, ArithmeticError):
    """A required norm came back with an infinite verdict."""


class DivergentIntegralError(BlochDiskError, ArithmeticError):
    """Partial integrals grow without stabilizing; carries the partial sums."""

    def __init__(self, message, partials=None):
        super().__init__(message)
        self.partials = partials


def in_unit_disk(z) -> bool:
    """True when |z| < 1 strictly."""
    return abs(complex(z)) < 1.0


def disk_point(z) -> complex:
    """Validate and return a point of the open unit disk as a complex number.

    Boundary and exterior points are rejected.
    """
    z = complex(z)
    if not abs(z) < 1.0:
        raise ValueError(f"point {z} lies outside the open unit disk")
    return z


# --------------------------------------------------------------------------
# Analytic function kinds
# --------------------------------------------------------------------------

class AnalyticMap:
    """An analytic function on the unit disk with exact value and derivative.

    ``eval`` and ``deriv`` accept complex scalars or ndarrays and return the
    same shape.  Subclasses are immutable.
    """

    kind = "abstract"

    def eval(self, z):
        raise NotImplementedError

    def deriv(self, z):
        raise NotImplementedError

    def __call__(self, z):
        return self.eval(z)


@dataclass(frozen=True)
class Polynomial(AnalyticMap):
    """f(z) = sum a_n z^n, evaluated by Horner's scheme."""

    coefficients: tuple = ()
    kind = "polynomial"

    def __post_init__(self):
        object.__setattr__(self, "coefficients",
                           tuple(complex(c) for c in self.coefficients))

    @cached_property
    def _deriv_coefficients(self):
        return tuple(k * c for k, c in enumerate(self.coefficients) if k > 0)

    @staticmethod
    def _horner(coeffs, z):
        if not coeffs:
            return z * 0j
        acc = 0j
        for c in reversed(coeffs):
            acc = acc * z + c
        return acc

    def eval(self, z):
        return self._horner(self.coefficients, z)

    def deriv(self, z):
        return self._horner(self._deriv_coefficients, z)

    @property
    def degree(self):
        return len(self.coefficients) - 1


@dataclass(frozen=True)
class Mobius(AnalyticMap):
    """Disk automorphism phi_a(z) = (a - z) / (1 - conj(a) z); an involution."""

    a: complex = 0j
    kind = "mobius"

    def __post_init__(self):
        object.__setattr__(self, "a", disk_point(self.a))

    def eval(self, z):
        ac = self.a.conjugate()
        return (self.a - z) / (1.0 - ac * z)

    def deriv(self, z):
        ac = self.a.conjugate()
        return -(1.0 - abs(self.a) ** 2) / (1.0 - ac * z) ** 2


@dataclass(frozen=True)
class Blaschke(AnalyticMap):
    """Finite Blaschke product: unimodular rotation times automorphism factors."""

    factors: tuple = ()
    rotation: complex = 1.0 + 0j
    kind = "blaschke"

    def __post_init__(self):
        object.__setattr__(self, "factors",
                           tuple(disk_point(a) for a in self.factors))
        rot = complex(self.rotation)
        if abs(abs(rot) - 1.0) > 1e-12:
            raise ValueError(f"rotation {rot} is not unimodular")
        object.__setattr__(self, "rotation", rot)

    @cached_property
    def _parts(self):
        return tuple(Mobius(a) for a in self.factors)

    def eval(self, z):
        out = self.rotation * np.ones_like(np.asarray(z, dtype=complex))
        for part in self._parts:
            out = out * part.eval(z)
        return out if isinstance(z, np.ndarray) else complex(out)

    def deriv(self, z):
        parts = self._parts
        vals = [p.eval(z) for p in parts]
        out = np.zeros_like(np.asarray(z, dtype=complex))
        for k, part in enumerate(parts):
            term = part.deriv(z)
            for j, v in enumerate(vals):
                if j != k:
                    term = term * v
            out = out + term
        out = self.rotation * out
        return out if isinstance(z, np.ndarray) else complex(out)


@dataclass(frozen=True)
class ScaledIdentity(AnalyticMap):
    """f(z) = c z with |c| <= 1."""

    c: complex = 1.0 + 0j
    kind = "scaled-identity"

    def __post_init__(self):
        c = complex(self.c)
        if abs(c) > 1.0 + 1e-15:
            raise ValueError(f"scale {c} exceeds modulus 1")
        object.__setattr__(self, "c", c)

    def eval(self, z):
        return self.c * z

    def deriv(self, z):
        return self.c * np.ones_like(np.asarray(z, dtype=complex)) \
            if isinstance(z, np.ndarray) else self.c


@dataclass(frozen=True)
class PowerKernel(AnalyticMap):
    """f(z) = ((1 - |b|^2) / (1 - conj(b) z)^2)^(1/p), principal branch.

    Re(1 - conj(b) z) > 0 on the disk, so the branch is single-valued.
    """

    b: complex = 0j
    p: float = 2.0
    kind = "power-kernel"

    def __post_init__(self):
        object.__setattr__(self, "b", disk_point(self.b))
        p = float(self.p)
        if not p > 0.0:
            raise ParameterRangeError("power-kernel exponent requires p > 0")
        object.__setattr__(self, "p", p)

    @property
    def exponent(self):
        return 1.0 / self.p

    def eval(self, z):
        bc = self.b.conjugate()
        base = 1.0 - bc * np.asarray(z, dtype=complex)
        scale = (1.0 - abs(self.b) ** 2) ** self.exponent
        out = scale * np.exp(-2.0 * self.exponent * np.log(base))
        return out if isinstance(z, np.ndarray) else complex(out)

    def deriv(self, z):
        bc = self.b.conjugate()
        base = 1.0 - bc * np.asarray(z, dtype=complex)
        out = self.eval(z) * (2.0 * self.exponent * bc) / base
        return out if isinstance(z, np.ndarray) else complex(out)


@dataclass(frozen=True)
class Composed(AnalyticMap):
    """outer(inner(z)) + offset; derivative by the chain rule.

    Internal combinator used to build composition operators; not part of the
    descriptor taxonomy.
    """

    outer: AnalyticMap
    inner: AnalyticMap
    offset: complex = 0j
    kind = "composed"

    def eval(self, z):
        return self.outer.eval(self.inner.eval(z)) + self.offset

    def deriv(self, z):
        return self.outer.deriv(self.inner.eval(z)) * self.inner.deriv(z)


# --------------------------------------------------------------------------
# Harmonic maps
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class HarmonicMap:
    """Canonical pair f = h + conj(g) with analytic h, g and g(0) = 0.

    f_z = h' and f_zbar = conj(g'), so the maximal directional derivative is
    |h'| + |g'|.
    """

    h: AnalyticMap
    g: AnalyticMap

    def __post_init__(self):
        g0 = complex(self.g.eval(0j))
        if abs(g0) > 1e-12:
            raise ValueError(f"canonical decomposition requires g(0) = 0, got {g0}")

    def eval(self, z):
        return self.h.eval(z) + np.conjugate(self.g.eval(z))

    def __call__(self, z):
        return self.eval(z)


def as_harmonic(f: AnalyticMap) -> HarmonicMap:
    """Wrap an analytic map as a harmonic map with vanishing conjugate part."""
    return HarmonicMap(f, Polynomial(()))


def lambda_f(f, z):
    """Maximal directional derivative |f_z| + |f_zbar| at z.

    Accepts a HarmonicMap or a bare AnalyticMap (for which this is |f'|).
    Vectorized over complex ndarrays.
    """
    if isinstance(f, HarmonicMap):
        return np.abs(f.h.deriv(z)) + np.abs(f.g.deriv(z))
    return np.abs(f.deriv(z))


# --------------------------------------------------------------------------
# Majorants
# --------------------------------------------------------------------------

_VALIDATION_GRID = np.geomspace(2.0 ** -20, 4.0, 64)


class Majorant:
    """Weight omega: [0, inf) -> [0, inf) with omega(0) = 0, omega increasing,
    and omega(t)/t non-increasing.

    The three properties are checked at construction on a logarithmic grid of
    64 points in (0, 4]; violations raise MajorantValidationError naming the
    property and the witnessing grid point.
    """

    kind = "abstract"

    def __call__(self, t):
        raise NotImplementedError

    def describe(self) -> str:
        return self.kind

    def _validate(self):
        origin = float(self(0.0))
        if abs(origin) > 1e-15:
            raise MajorantValidationError("nonzero-at-origin", 0.0)
        grid = _VALIDATION_GRID
        vals = np.asarray(self(grid), dtype=float)
        diffs = np.diff(vals)
        bad = np.nonzero(diffs <= 0.0)[0]
        if bad.size:
            raise MajorantValidationError("not-increasing", float(grid[bad[0] + 1]))
        ratios = vals / grid
        rdiffs = np.diff(ratios)
        bad = np.nonzero(rdiffs > 1e-12 * np.abs(ratios[:-1]))[0]
        if bad.size:
            raise MajorantValidationError("ratio-increasing", float(grid[bad[0] + 1]))

    def ratio_limit_at_zero(self):
        """Finite limit of omega(t)/t as t -> 0+, or None when it diverges.

        Estimated on t = 2^-j, j = 10..40: the sequence must stay bounded and
        Cauchy-stabilize.
        """
        t = 0.5 ** np.arange(10, 41)
        ratios = np.asarray(self(t), dtype=float) / t
        if not np.all(np.isfinite(ratios)):
            return None
        diffs = np.abs(np.diff(ratios))
        scale = max(1.0, float(np.abs(ratios[-1])))
        if float(ratios.max()) > 1e12 or diffs[-1] > 1e-6 * scale:
            return None
        if diffs[0] > 0 and diffs[-1] > diffs[0]:
            return None
        return float(ratios[-1])


class IdentityMajorant(Majorant):
    """omega(t) = t."""

    kind = "identity"

    def __init__(self):
        self._validate()

    def __call__(self, t):
        return np.asarray(t, dtype=float) if isinstance(t, np.ndarray) else float(t)

    def __eq__(self, other):
        return isinstance(other, IdentityMajorant)

    def __hash__(self):
        return hash(self.kind)


class PowerMajorant(Majorant):
    """omega(t) = t^s for s in (0, 1]."""

    kind = "power"

    def __init__(self, s):
        s = float(s)
        if not 0.0 < s <= 1.0:
            raise ParameterRangeError(f"power majorant requires s in (0, 1], got {s}")
        self.s = s
        self._validate()

    def __call__(self, t):
        return np.asarray(t, dtype=float) ** self.s if isinstance(t, np.ndarray) \
            else float(t) ** self.s

    def describe(self):
        return f"power:{self.s:g}"

    def __eq__(self, other):
        return isinstance(other, PowerMajorant) and other.s == self.s

    def __hash__(self):
        return hash((self.kind, self.s))


class TabulatedMajorant(Majorant):
    """Piecewise-linear weight through sampled points, anchored at (0, 0).

    Beyond the last sample the weight continues with its final value, which
    preserves the non-increasing ratio property.
    """

    kind = "custom"

    def __init__(self, ts, values, label="custom"):
        ts = np.asarray(ts, dtype=float)
        values = np.asarray(values, dtype=float)
        if ts.ndim != 1 or ts.shape != values.shape or ts.size < 2:
            raise ValueError("tabulation needs matching 1-d arrays of >= 2 points")
        if np.any(np.diff(ts) <= 0) or ts[0] <= 0:
            raise ValueError("tabulation abscissae must be positive and increasing")
        self._ts = np.concatenate(([0.0], ts))
        self._vals = np.concatenate(([0.0], values))
        self.label = label
        self._validate()

    def __call__(self, t):
        out = np.interp(np.asarray(t, dtype=float), self._ts, self._vals)
        return out if isinstance(t, np.ndarray) else float(out)

    def describe(self):
        return self.label


def validate_majorant(candidate) -> Majorant:
    """Validate a weight descriptor or instance as a majorant.

    Accepts a Majorant (revalidated), the strings ``"id"``/``"identity"``,
    ``"pow:S"``, or a pair ``(ts, values)`` of tabulated samples.  Returns the
    validated majorant or raises MajorantValidationError / ValueError.
    """
    if isinstance(candidate, Majorant):
        candidate._validate()
        return candidate
    if isinstance(candidate, str):
        if candidate in ("id", "identity"):
            return IdentityMajorant()
        if candidate.startswith("pow:"):
            return PowerMajorant(float(candidate.split(":", 1)[1]))
        raise ValueError(f"unknown majorant descriptor {candidate!r}")
    ts, values = candidate
    return TabulatedMajorant(ts, values)


# --------------------------------------------------------------------------
# Bloch weight parameters
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class BlochParams:
    """Parameters (alpha, beta, omega) of the Bloch-type weight.

    The radial weight is chi(t) = (1 - t^2)^alpha * (log(e/(1 - t^2)))^beta,
    so chi(0) = 1; the functional weights the maximal directional derivative
    by omega(chi(|z|)).
    """

    alpha: float = 1.0
    beta: float = 0.0
    omega: Majorant = None

    def __post_init__(self):
        if not float(self.alpha) > 0.0:
            raise ParameterRangeError(f"alpha must be positive, got {self.alpha}")
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "beta", float(self.beta))
        if self.omega is None:
            object.__setattr__(self, "omega", IdentityMajorant())


def classical_params() -> BlochParams:
    """alpha = 1, beta = 0, omega(t) = t: the classical Bloch functional."""
    return BlochParams(1.0, 0.0, IdentityMajorant())
