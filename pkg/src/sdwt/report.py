"""Verification records and deterministic report serialization.

Reports are written in two parts: a canonical JSON document whose bytes
depend only on the configuration and seed (fixed record order, shortest
round-trip number formatting, no timing data), plus an optional timings
sidecar.  Wall-clock runtimes can never be bit-reproducible, so they are
kept out of the canonical artifact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field


def jsonable(v):
    """Numbers/complex/arrays to plain JSON values (floats via repr round-trip)."""
    import numpy as np
    if isinstance(v, complex):
        return {"re": float(v.real), "im": float(v.imag)}
    if isinstance(v, (np.complexfloating,)):
        return {"re": float(v.real), "im": float(v.imag)}
    if isinstance(v, (np.floating,)):
        return float(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, np.ndarray):
        return [jsonable(x) for x in v.tolist()]
    if isinstance(v, (list, tuple)):
        return [jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): jsonable(x) for k, x in v.items()}
    return v


@dataclass
class CheckRecord:
    """One verification entry.

    ``anchor`` is the check's stable identifier, shared between the CLI
    report and the acceptance suite.
    """

    name: str
    anchor: str
    computed: object
    reference: object
    tolerance: float
    passed: bool
    runtime: float = 0.0
    details: dict = field(default_factory=dict)

    def to_dict(self, with_runtime: bool = False) -> dict:
        d = {
            "check": self.name,
            "anchor": self.anchor,
            "computed": jsonable(self.computed),
            "reference": jsonable(self.reference),
            "tolerance": jsonable(self.tolerance),
            "pass": bool(self.passed),
            "details": jsonable(self.details),
        }
        if with_runtime:
            d["runtime_s"] = float(self.runtime)
        return d


@dataclass
class VerificationReport:
    suite: str
    seed: int
    records: list[CheckRecord] = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    @property
    def overall_pass(self) -> bool:
        return all(r.passed for r in self.records)

    def canonical_json(self) -> str:
        doc = {
            "format": "sdwt-verification-v1",
            "suite": self.suite,
            "seed": self.seed,
            "meta": jsonable(self.meta),
            "pass": self.overall_pass,
            "checks": [r.to_dict(with_runtime=False) for r in self.records],
        }
        return json.dumps(doc, indent=1) + "\n"

    def timings_json(self) -> str:
        doc = {"suite": self.suite,
               "runtimes_s": {r.name: float(r.runtime) for r in self.records}}
        return json.dumps(doc, indent=1) + "\n"

    def summary_lines(self) -> list[str]:
        out = []
        for r in self.records:
            status = "PASS" if r.passed else "FAIL"
            out.append(f"[{status}] {r.name} ({r.anchor}): computed="
                       f"{_short(r.computed)} reference={_short(r.reference)} "
                       f"tol={r.tolerance:g} [{r.runtime:.2f}s]")
        out.append(f"suite {self.suite}: {'PASS' if self.overall_pass else 'FAIL'}")
        return out


def _short(v) -> str:
    if isinstance(v, complex):
        return f"{v.real:.6g}{v.imag:+.6g}j"
    if isinstance(v, float):
        return f"{v:.6g}"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}={_short(x)}" for k, x in list(v.items())[:4]) + "}"
    return str(v)
