"""JSON descriptors for the closed taxonomy of disk functions.

One document per function: a ``kind`` field plus kind-specific parameters;
complex numbers are [re, im] pairs.  A harmonic descriptor is
``{"h": <descriptor>, "g": <descriptor>}`` and parsing rejects any g with
g(0) != 0.
"""

from __future__ import annotations

from .core import (AnalyticMap, Blaschke, HarmonicMap, Mobius, Polynomial,
                   PowerKernel, ScaledIdentity)
from .extremal import AntiderivativeExtremal, QuadraticExtremal

__all__ = ["analytic_from_descriptor", "descriptor_of",
           "harmonic_from_descriptor", "descriptor_of_harmonic"]


def _pair(value) -> complex:
    re, im = value
    return complex(float(re), float(im))


def _unpair(z: complex):
    z = complex(z)
    return [z.real, z.imag]


def analytic_from_descriptor(doc: dict) -> AnalyticMap:
    """Build an analytic map from its descriptor document."""
    if not isinstance(doc, dict) or "kind" not in doc:
        raise ValueError("descriptor must be a mapping with a 'kind' field")
    kind = doc["kind"]
    if kind == "polynomial":
        return Polynomial(tuple(_pair(c) for c in doc["coefficients"]))
    if kind == "mobius":
        return Mobius(_pair(doc["a"]))
    if kind == "blaschke":
        rotation = _pair(doc.get("rotation", [1.0, 0.0]))
        return Blaschke(tuple(_pair(a) for a in doc["factors"]), rotation)
    if kind == "scaled-identity":
        return ScaledIdentity(_pair(doc["c"]))
    if kind == "power-kernel":
        return PowerKernel(_pair(doc["b"]), float(doc["p"]))
    if kind == "antiderivative-extremal":
        return AntiderivativeExtremal(float(doc["beta"]))
    if kind == "quadratic-extremal":
        return QuadraticExtremal()
    raise ValueError(f"unknown function kind {kind!r}")


def descriptor_of(f: AnalyticMap) -> dict:
    """Serialize an analytic map back to its descriptor document."""
    if isinstance(f, Polynomial):
        return {"kind": "polynomial",
                "coefficients": [_unpair(c) for c in f.coefficients]}
    if isinstance(f, Mobius):
        return {"kind": "mobius", "a": _unpair(f.a)}
    if isinstance(f, Blaschke):
        return {"kind": "blaschke",
                "factors": [_unpair(a) for a in f.factors],
                "rotation": _unpair(f.rotation)}
    if isinstance(f, ScaledIdentity):
        return {"kind": "scaled-identity", "c": _unpair(f.c)}
    if isinstance(f, PowerKernel):
        return {"kind": "power-kernel", "b": _unpair(f.b), "p": f.p}
    if isinstance(f, AntiderivativeExtremal):
        return {"kind": "antiderivative-extremal", "beta": f.beta}
    if isinstance(f, QuadraticExtremal):
        return {"kind": "quadratic-extremal"}
    raise ValueError(f"{type(f).__name__} has no descriptor form")


def harmonic_from_descriptor(doc: dict) -> HarmonicMap:
    """Build a harmonic map {"h": ..., "g": ...}; g(0) must vanish."""
    if not isinstance(doc, dict) or "h" not in doc or "g" not in doc:
        raise ValueError("harmonic descriptor needs 'h' and 'g' fields")
    h = analytic_from_descriptor(doc["h"])
    g = analytic_from_descriptor(doc["g"])
    return HarmonicMap(h, g)  # rejects g(0) != 0


def descriptor_of_harmonic(f: HarmonicMap) -> dict:
    return {"h": descriptor_of(f.h), "g": descriptor_of(f.g)}
