"""Command-line front end: function catalog, config parsing, report persistence.

Subcommands cover the metric pair, Hardy and Bloch norms, the square
function, the Lipschitz scanner and witness, the profile root, and the three
composition-operator engines.  Reports are JSON with a stable field order and
15-significant-digit values; identical config and seed reproduce identical
bytes (wall-clock timing is opt-in for that reason).  Exit status: 0 for
definitive results, 2 for inconclusive verdicts, 1 for usage or range errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import re
import sys
import time
from dataclasses import dataclass, field

from . import __version__
from .core import (BlochDiskError, BlochParams, HarmonicMap,
                   ParameterRangeError, as_harmonic, validate_majorant)
from .compop import (PROBE_RADIUS_SUP, bloch_to_hardy_criterion,
                     bounded_below_probe, hardy_to_bloch_verdict)
from .descriptors import analytic_from_descriptor, harmonic_from_descriptor
from .extremal import (LIP_CONSTANT, lipschitz_scan, m_root,
                       sharpness_witness)
from .metrics import rho, sigma
from .norms import SamplingPlan, bloch_seminorm, g_function, hardy_norm


class CatalogError(BlochDiskError, KeyError):
    """Unknown catalog name; the message lists the available entries."""


_CATALOG_NOTES = {
    "eta": "quadratic map whose classical Bloch functional peaks at |z| = 1/sqrt(3) with value 1",
    "f-beta:B": "extremal antiderivative with initial slope B in (0, 1]; unit Bloch seminorm",
    "identity": "identity of the disk; divergence/unboundedness calibration symbol",
    "half-identity": "contraction z/2; strict self-map calibration symbol",
    "mobius:A": "disk automorphism exchanging 0 and A",
    "kernel:B:P": "Hardy-normalized power kernel centered at B with exponent 1/P",
    "monomial:N": "z^N",
}


def catalog(name: str) -> dict:
    """Resolve a built-in function name to its descriptor document."""
    parts = name.split(":")
    head = parts[0]
    try:
        if head == "eta" and len(parts) == 1:
            return {"kind": "quadratic-extremal"}
        if head == "identity" and len(parts) == 1:
            return {"kind": "polynomial", "coefficients": [[0.0, 0.0], [1.0, 0.0]]}
        if head == "half-identity" and len(parts) == 1:
            return {"kind": "scaled-identity", "c": [0.5, 0.0]}
        if head == "f-beta" and len(parts) == 2:
            return {"kind": "antiderivative-extremal", "beta": float(parts[1])}
        if head == "mobius" and len(parts) == 2:
            a = parse_complex(parts[1])
            return {"kind": "mobius", "a": [a.real, a.imag]}
        if head == "kernel" and len(parts) == 3:
            b = parse_complex(parts[1])
            return {"kind": "power-kernel", "b": [b.real, b.imag],
                    "p": float(parts[2])}
        if head == "monomial" and len(parts) == 2:
            n = int(parts[1])
            if n < 0:
                raise ValueError("monomial degree must be >= 0")
            coeffs = [[0.0, 0.0]] * n + [[1.0, 0.0]]
            return {"kind": "polynomial", "coefficients": coeffs}
    except (ValueError, IndexError) as exc:
        raise CatalogError(f"bad catalog arguments in {name!r}: {exc}") from exc
    raise CatalogError(
        f"unknown catalog name {name!r}; available: {', '.join(sorted(_CATALOG_NOTES))}")


def catalog_note(name: str) -> str:
    head = name.split(":")[0]
    for pattern, note in _CATALOG_NOTES.items():
        if pattern.split(":")[0] == head:
            return note
    return ""


def parse_complex(text: str) -> complex:
    """Parse 'RE,IM' (or bare 'RE') into a complex number."""
    parts = text.split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise ValueError(f"cannot parse complex value from {text!r}")


def resolve_function(source: str):
    """Turn a --func/--phi value into a map.

    Accepts a path to a descriptor JSON, inline JSON, or a catalog name.
    Harmonic documents ({"h": ..., "g": ...}) yield a HarmonicMap.
    """
    if source.strip().startswith("{"):
        doc = json.loads(source)
    elif os.path.exists(source):
        with open(source, encoding="utf-8") as fh:
            doc = json.load(fh)
    else:
        doc = catalog(source)
    if "h" in doc and "g" in doc:
        return harmonic_from_descriptor(doc)
    return analytic_from_descriptor(doc)


def worker_count() -> int:
    """Intended parallel width: BLOCHDISK_WORKERS or the machine's CPU count.

    Results never depend on it; reductions are index-ordered.
    """
    env = os.environ.get("BLOCHDISK_WORKERS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


# --------------------------------------------------------------------------
# Config and report
# --------------------------------------------------------------------------

@dataclass
class RunConfig:
    command: str
    params: dict = field(default_factory=dict)
    plan: SamplingPlan = field(default_factory=SamplingPlan)
    out: str | None = None
    csv_path: str | None = None
    seed: int = 0
    timing: bool = False


@dataclass
class Report:
    command: str
    parameters: dict
    result: dict
    evidence: list
    plan: dict
    version: str = __version__
    wall_clock: float | None = None
    exit_status: int = 0

    def to_document(self) -> dict:
        doc = {
            "command": self.command,
            "parameters": _round15(self.parameters),
            "result": _round15(self.result),
            "evidence": _round15(self.evidence),
            "plan": _round15(self.plan),
            "version": self.version,
        }
        if self.wall_clock is not None:
            doc["wall_clock_seconds"] = round(self.wall_clock, 3)
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_document(), indent=2)


def _round15(obj):
    """Round every float to 15 significant digits, recursively."""
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return "infinite" if obj > 0 else "-infinite"
        return float(f"{obj:.15g}")
    if isinstance(obj, complex):
        return [_round15(obj.real), _round15(obj.imag)]
    if isinstance(obj, dict):
        return {k: _round15(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round15(v) for v in obj]
    return obj


def _norm_payload(est) -> dict:
    payload = {"verdict": est.verdict, "resolution": est.resolution}
    if est.finite:
        payload["value"] = est.value
    return payload


def _criterion_payload(report) -> dict:
    return {
        "verdict": report.verdict,
        "estimate": report.estimate,
        "diagnostics": report.diagnostics,
    }


# --------------------------------------------------------------------------
# Parsing
# --------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let values like -0.5,0 pass as arguments rather than flags
        self._negative_number_matcher = re.compile(r"^-\d|^-\.\d")

    def error(self, message):  # exit 1 on usage errors, not argparse's 2
        raise ParameterRangeError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="blochdisk",
                     description="Bloch/Hardy space numerics on the unit disk")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", help="write the JSON report to this path")
        p.add_argument("--csv", dest="csv_path",
                       help="write evidence rows (truncation, value) as CSV")
        p.add_argument("--plan-j", type=int, default=20,
                       help="radial ladder depth (default 20)")
        p.add_argument("--tol", type=float, default=1e-6,
                       help="refinement tolerance (default 1e-6)")
        p.add_argument("--angular", type=int, default=256,
                       help="starting angular resolution, power of two")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--timing", action="store_true",
                       help="include wall-clock in the report (breaks byte-reproducibility)")

    p = sub.add_parser("metric", help="pseudo-hyperbolic and hyperbolic distance")
    p.add_argument("--z", required=True)
    p.add_argument("--w", required=True)
    common(p)

    p = sub.add_parser("hardy-norm", help="sup of circle means")
    p.add_argument("--func", required=True)
    p.add_argument("--p", type=float, required=True)
    common(p)

    p = sub.add_parser("bloch-seminorm", help="disk supremum of the weighted derivative")
    p.add_argument("--func", required=True)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--omega", default="id", help="id or pow:S")
    common(p)

    p = sub.add_parser("gfunction", help="Littlewood-Paley square function")
    p.add_argument("--func", required=True)
    p.add_argument("--angle", type=float, required=True)
    common(p)

    p = sub.add_parser("lipschitz-scan", help="empirical Lipschitz ratio scan")
    p.add_argument("--func", required=True)
    p.add_argument("--pairs", type=int, default=10_000)
    common(p)

    p = sub.add_parser("sharpness-witness", help="pair achieving the sharp constant up to epsilon")
    p.add_argument("--epsilon", type=float, required=True)
    common(p)

    p = sub.add_parser("extremal-root", help="profile root m for psi(m) = r0")
    p.add_argument("--r0", type=float, required=True)
    p.add_argument("--alpha", type=float, default=1.0)
    common(p)

    p = sub.add_parser("compop-criterion", help="Bloch-to-Hardy criterion integral")
    p.add_argument("--phi", required=True)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--p", type=float, default=2.0)
    p.add_argument("--omega", default="id")
    common(p)

    p = sub.add_parser("compop-verdict", help="Hardy-to-Bloch boundedness/compactness")
    p.add_argument("--phi", required=True)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--p", type=float, default=2.0)
    p.add_argument("--omega", default="id")
    common(p)

    p = sub.add_parser("bounded-below-probe", help="bounded-below hypothesis probe")
    p.add_argument("--phi", required=True)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--samples", type=int, default=100)
    common(p)

    p = sub.add_parser("catalog", help="look up a built-in function descriptor")
    p.add_argument("name")
    common(p)

    return parser


def _validate_ranges(command: str, params: dict):
    """Range checks before any computation starts."""
    def positive(name):
        if name in params and params[name] is not None and not params[name] > 0:
            raise ParameterRangeError(f"--{name} must be positive, got {params[name]}")

    if "alpha" in params and params["alpha"] is not None and not params["alpha"] > 0:
        raise ParameterRangeError(f"--alpha must be positive, got {params['alpha']}")
    if command in ("hardy-norm", "compop-criterion"):
        positive("p")
    if command == "compop-verdict" and not params["p"] > 1:
        raise ParameterRangeError(f"--p must exceed 1, got {params['p']}")
    if command == "bounded-below-probe":
        if not 0 < params["r"] < PROBE_RADIUS_SUP:
            raise ParameterRangeError(
                f"--r must lie in (0, {PROBE_RADIUS_SUP:.10f}), got {params['r']}")
        positive("epsilon")
        if params["samples"] < 1:
            raise ParameterRangeError("--samples must be >= 1")
    if command == "sharpness-witness":
        if not 0 < params["epsilon"] <= LIP_CONSTANT:
            raise ParameterRangeError(
                f"--epsilon must lie in (0, {LIP_CONSTANT:.9f}], got {params['epsilon']}")
    if command == "extremal-root":
        if not 0 < params["r0"] <= 1:
            raise ParameterRangeError(f"--r0 must lie in (0, 1], got {params['r0']}")
    if command == "lipschitz-scan" and params["pairs"] < 1:
        raise ParameterRangeError("--pairs must be >= 1")


def parse_config(argv, config_doc: dict | None = None) -> RunConfig:
    """Parse argv (plus an optional config document) into a validated RunConfig.

    Flags override config-document values; unknown document keys are rejected.
    """
    parser = _build_parser()
    namespace = parser.parse_args(argv)
    params = vars(namespace).copy()
    command = params.pop("command")

    if config_doc:
        known = set(params)
        unknown = set(config_doc) - known
        if unknown:
            raise ParameterRangeError(
                f"unknown config keys: {', '.join(sorted(unknown))}")
        argv = argv or []
        supplied = {k for k in known
                    if any(arg == f"--{k.replace('_', '-')}"
                           or arg.startswith(f"--{k.replace('_', '-')}=")
                           for arg in argv)}
        for key, value in config_doc.items():
            if key not in supplied:
                params[key] = value

    out = params.pop("out")
    csv_path = params.pop("csv_path")
    seed = params.pop("seed")
    timing = params.pop("timing")
    plan = SamplingPlan(angular_resolution=params.pop("angular"),
                        radial_j=params.pop("plan_j"),
                        refinement_tol=params.pop("tol"))
    _validate_ranges(command, params)
    return RunConfig(command=command, params=params, plan=plan, out=out,
                     csv_path=csv_path, seed=seed, timing=timing)


# --------------------------------------------------------------------------
# Dispatch
# --------------------------------------------------------------------------

def _params_of(p: dict) -> BlochParams:
    return BlochParams(p["alpha"], p.get("beta", 0.0),
                       validate_majorant(p.get("omega", "id")))


def run(config: RunConfig) -> Report:
    """Execute one command and assemble its report."""
    start = time.perf_counter()
    p = config.params
    evidence: list = []
    exit_status = 0

    if config.command == "metric":
        z, w = parse_complex(p["z"]), parse_complex(p["w"])
        result = {"rho": rho(z, w), "sigma": sigma(z, w)}
        shown = {"z": z, "w": w}
    elif config.command == "hardy-norm":
        f = resolve_function(p["func"])
        est = hardy_norm(f, p["p"], config.plan)
        result = _norm_payload(est)
        evidence = [list(pair) for pair in est.evidence]
        shown = {"func": p["func"], "p": p["p"]}
    elif config.command == "bloch-seminorm":
        f = resolve_function(p["func"])
        est = bloch_seminorm(f, _params_of(p), config.plan)
        result = _norm_payload(est)
        evidence = [list(pair) for pair in est.evidence]
        shown = {"func": p["func"], "alpha": p["alpha"], "beta": p["beta"],
                 "omega": p["omega"]}
    elif config.command == "gfunction":
        f = resolve_function(p["func"])
        result = {"value": g_function(f, p["angle"], config.plan)}
        shown = {"func": p["func"], "angle": p["angle"]}
    elif config.command == "lipschitz-scan":
        f = resolve_function(p["func"])
        if not isinstance(f, HarmonicMap):
            f = as_harmonic(f)
        scan = lipschitz_scan(f, p["pairs"], config.seed, config.plan)
        result = {
            "max_ratio": scan.max_ratio,
            "argmax_pair": [scan.argmax_pair[0], scan.argmax_pair[1]],
            "seminorm": scan.seminorm,
            "cap": scan.cap,
            "cap_ok": scan.cap_ok,
            "pairs_evaluated": scan.pairs_evaluated,
        }
        shown = {"func": p["func"], "pairs": p["pairs"], "seed": config.seed}
    elif config.command == "sharpness-witness":
        w = sharpness_witness(p["epsilon"])
        result = {"m_star": w.m_star, "beta": w.beta, "z1": w.z1, "z2": w.z2,
                  "achieved_ratio": w.achieved_ratio, "floor": w.floor}
        shown = {"epsilon": p["epsilon"]}
    elif config.command == "extremal-root":
        sol = m_root(p["r0"], p["alpha"])
        result = {"m": sol.m, "a0": sol.a0, "residual": sol.residual}
        shown = {"r0": p["r0"], "alpha": p["alpha"]}
    elif config.command == "compop-criterion":
        phi = resolve_function(p["phi"])
        report = bloch_to_hardy_criterion(phi, _params_of(p), p["p"], config.plan)
        result = _criterion_payload(report)
        evidence = [list(pair) for pair in report.evidence]
        exit_status = 2 if report.verdict == "inconclusive" else 0
        shown = {"phi": p["phi"], "alpha": p["alpha"], "beta": p["beta"],
                 "p": p["p"], "omega": p["omega"]}
    elif config.command == "compop-verdict":
        phi = resolve_function(p["phi"])
        report = hardy_to_bloch_verdict(phi, _params_of(p), p["p"], config.plan)
        result = _criterion_payload(report)
        evidence = [list(pair) for pair in report.evidence]
        exit_status = 2 if report.verdict == "inconclusive" else 0
        shown = {"phi": p["phi"], "alpha": p["alpha"], "beta": p["beta"],
                 "p": p["p"], "omega": p["omega"]}
    elif config.command == "bounded-below-probe":
        phi = resolve_function(p["phi"])
        probe = bounded_below_probe(phi, p["r"], p["epsilon"], p["samples"],
                                    config.plan, config.seed)
        result = {
            "fraction": probe.fraction,
            "implied_constant": probe.implied_constant,
            "samples": probe.samples,
            "grid_points": probe.grid_points,
            "unmatched": list(probe.unmatched),
        }
        shown = {"phi": p["phi"], "r": p["r"], "epsilon": p["epsilon"],
                 "samples": p["samples"], "seed": config.seed}
    elif config.command == "catalog":
        doc = catalog(p["name"])
        result = {"descriptor": doc, "note": catalog_note(p["name"])}
        shown = {"name": p["name"]}
    else:  # pragma: no cover - argparse enforces the choices
        raise ParameterRangeError(f"unknown command {config.command!r}")

    elapsed = time.perf_counter() - start
    return Report(command=config.command, parameters=shown, result=result,
                  evidence=evidence, plan=config.plan.describe(),
                  wall_clock=elapsed if config.timing else None,
                  exit_status=exit_status)


def main(argv=None) -> int:
    try:
        config = parse_config(argv if argv is not None else sys.argv[1:])
        report = run(config)
    except ParameterRangeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (BlochDiskError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    text = report.to_json()
    print(text)
    if config.out:
        with open(config.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    if config.csv_path:
        with open(config.csv_path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["truncation", "value"])
            for trunc, value in report.evidence:
                writer.writerow([trunc, value])
    return report.exit_status


if __name__ == "__main__":
    raise SystemExit(main())
