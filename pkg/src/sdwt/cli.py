"""Command-line interface: transform, verify, plotdata, kernel, fock.

Exit codes: 0 success, 1 check/module failure, 2 usage or configuration
error.  All outputs are reproducible for identical (config, seed): reports
carry no timing data (a sidecar does), numbers are serialized in shortest
round-trip form, and check ordering is fixed.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import checks
from .config import apply_overrides, load_config, validate_config
from .core import (Axis, Grid3D, load_field, save_coefficients,
                   save_field)
from .engine import ParameterSampling, QuadratureSpec, sdwt_batch
from .errors import BadSlice, ConfigError, SdwtError
from .fock import (FockQuadrature, FockSpace, TransformPoint, build_U_quadrature,
                   ecs_vector, eigen_residual_weak, ladder_ops,
                   resolution_identity_check, FockOperator)
from .kernel import ABCDMatrix, LensFresnelKernel, abcd_from_sr, kernel_eval, sr_from_abcd
from .report import VerificationReport, jsonable
from .wavelets import make_wavelet

_SLICE_AXES = ("mu", "phi", "a", "b", "kappa1", "kappa2")


def _error_json(kind: str, message: str) -> str:
    return json.dumps({"error": kind, "message": message}) + "\n"


def _resolve_threads(args, cfg) -> int:
    if args.threads is not None:
        return max(1, args.threads)
    if cfg.get("threads"):
        return max(1, int(cfg["threads"]))
    env = os.environ.get("SDWT_THREADS")
    return max(1, int(env)) if env else 1


def _load(args) -> dict:
    cfg = load_config(args.config)
    cfg = apply_overrides(cfg, args.set or [])
    if args.seed is not None:
        cfg["seed"] = args.seed
    if args.out is not None:
        cfg["out"] = args.out
    return validate_config(cfg)


def _sampling_from_cfg(cfg: dict) -> ParameterSampling:
    s = cfg["sampling"]
    kw = dict(mu_max=s["mu_max"], mu_count=s["mu_count"], phi_count=s["phi_count"],
              theta=s["theta"], a_min=s["a_min"], a_max=s["a_max"],
              a_count=s["a_count"], mirror_a=s["mirror_a"])
    if s.get("kappa_count"):
        kw["kappa_axis"] = Axis.from_radius(s["kappa_radius"], s["kappa_count"])
    if s.get("b_count"):
        kw["b_axis"] = Axis.from_radius(s["b_radius"], s["b_count"])
    return ParameterSampling(**kw)


def _wavelet_from_cfg(cfg: dict):
    w = cfg["wavelet"]
    return make_wavelet(w["name"], scale=w.get("scale", 1.0))


def cmd_transform(args) -> int:
    cfg = _load(args)
    out_dir = cfg["out"]
    os.makedirs(out_dir, exist_ok=True)
    path = cfg["signal"]["path"]
    if not path or not os.path.exists(path):
        sys.stdout.write(_error_json("missing-signal", f"signal file {path!r} not found"))
        return 1
    try:
        g = load_field(path)
        wav = _wavelet_from_cfg(cfg)
        sampling = _sampling_from_cfg(cfg)
        quad = QuadratureSpec(alpha_radius=g.grid.alpha1_axis.extent,
                              x_radius=g.grid.x_axis.extent,
                              error_mode=cfg["quadrature"]["error_mode"] or "none")
        env_a, env_x = _envelope_widths(g)
        quad.validate_against(env_a, env_x)
        threads = _resolve_threads(args, cfg)
        coeff = sdwt_batch(g, wav, sampling, quad, mode="direct", threads=threads)
        coeff.quadrature_meta.update({"seed": cfg["seed"], "signal": path,
                                      "threads_note": "thread count does not "
                                                      "affect values"})
        cpath = os.path.join(out_dir, "coefficients.csv")
        save_coefficients(coeff, cpath)
        summary = {"points": int(coeff.values.size), "output": cpath,
                   "seed": cfg["seed"],
                   "max_abs": float(np.max(np.abs(coeff.values)))}
        sys.stdout.write(json.dumps(summary) + "\n")
        return 0
    except SdwtError as e:
        sys.stdout.write(_error_json(type(e).__name__, str(e)))
        return 1


def _envelope_widths(g) -> tuple[float, float]:
    w = np.abs(g.values) ** 2
    tot = float(w.sum())
    if tot == 0:
        return 0.0, 0.0
    alpha1 = g.grid.alpha1_axis.values
    alpha2 = g.grid.alpha2_axis.values
    x = g.grid.x_axis.values
    m_a1 = float((w.sum(axis=(1, 2)) * alpha1 ** 2).sum() / tot)
    m_a2 = float((w.sum(axis=(0, 2)) * alpha2 ** 2).sum() / tot)
    m_x = float((w.sum(axis=(0, 1)) * x ** 2).sum() / tot)
    return math.sqrt(m_a1 + m_a2), math.sqrt(m_x)


def cmd_verify(args) -> int:
    cfg = _load(args)
    out_dir = cfg["out"]
    os.makedirs(out_dir, exist_ok=True)
    threads = _resolve_threads(args, cfg)
    records = checks.run_suite(args.suite, seed=cfg["seed"], threads=threads)
    report = VerificationReport(suite=args.suite, seed=cfg["seed"], records=records,
                                meta={"wavelet": cfg["wavelet"]})
    rpath = os.path.join(out_dir, f"report_{args.suite}.json")
    with open(rpath, "w", encoding="utf-8") as fh:
        fh.write(report.canonical_json())
    with open(os.path.join(out_dir, f"timings_{args.suite}.json"), "w",
              encoding="utf-8") as fh:
        fh.write(report.timings_json())
    for line in report.summary_lines():
        sys.stdout.write(line + "\n")
    return 0 if report.overall_pass else 1


def cmd_plotdata(args) -> int:
    try:
        from .core import load_coefficients
        names = [s.strip() for s in args.slice.split(",")]
        if len(names) != 2 or any(n not in _SLICE_AXES for n in names):
            raise BadSlice(f"slice must name two of {_SLICE_AXES}, got {args.slice!r}")
        with open(args.coefficients, encoding="utf-8") as fh:
            n_lines = sum(1 for _ in fh)
        if n_lines <= 1:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(f"{names[0]},{names[1]},absW,argW\n")
            return 0
        coeff = load_coefficients(args.coefficients)
        pins = {}
        for item in (args.at.split(",") if args.at else []):
            k, _, v = item.partition("=")
            if k.strip() not in _SLICE_AXES:
                raise BadSlice(f"unknown axis {k!r} in --at")
            pins[k.strip()] = float(v)
        axes = {k: np.asarray(getattr(coeff, k), dtype=float) for k in _SLICE_AXES}
        shape = coeff.shape
        vals = coeff.values.reshape(shape)
        order = ("mu", "phi", "a", "b", "kappa1", "kappa2")
        idx = []
        for k in order:
            if k in names:
                idx.append(slice(None))
            else:
                nodes = axes[k]
                pin = pins.get(k, float(nodes[0]))
                idx.append(int(np.argmin(np.abs(nodes - pin))))
        sub = vals[tuple(idx)]
        # normalize orientation: first named axis varies slowest
        i0, i1 = (order.index(n) for n in names)
        if i0 > i1:
            sub = sub.T
            names = [names[1], names[0]]
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(f"{names[0]},{names[1]},absW,argW\n")
            v0 = axes[names[0]]
            v1 = axes[names[1]]
            for i, x0 in enumerate(v0):
                for j, x1 in enumerate(v1):
                    w = sub[i, j]
                    fh.write(f"{x0!r},{x1!r},{abs(w)!r},{math.atan2(w.imag, w.real)!r}\n")
        return 0
    except (SdwtError, OSError) as e:
        sys.stdout.write(_error_json(type(e).__name__, str(e)))
        return 1


def cmd_kernel(args) -> int:
    cfg = _load(args)
    out_dir = cfg["out"]
    os.makedirs(out_dir, exist_ok=True)
    try:
        kc = cfg["kernel"]
        if kc.get("sr"):
            s = complex(kc["sr"][0], kc["sr"][1])
            r = complex(kc["sr"][2], kc["sr"][3])
            m = abcd_from_sr(s, r)
        else:
            m = ABCDMatrix(*kc["abcd"]).require_unimodular(tol=1e-9)
            sym = sr_from_abcd(m)
            s, r = sym.s, sym.r
        k = LensFresnelKernel(abcd=m, a=float(kc["a"]))
        params = {"abcd": [m.A, m.B, m.C, m.D], "a": k.a, "branch": k.branch,
                  "s": jsonable(complex(s)), "r": jsonable(complex(r)),
                  "modulus": (math.pi / math.sqrt(k.a)) / math.sqrt(2 * math.pi * abs(m.B))
                  if m.B != 0 else None}
        with open(os.path.join(out_dir, "kernel.json"), "w", encoding="utf-8") as fh:
            json.dump(params, fh, indent=1)
            fh.write("\n")
        eta = Axis.from_radius(kc["eta_radius"], kc["eta_count"]).values
        mat = kernel_eval(k, eta[:, None], eta[None, :])
        cpath = os.path.join(out_dir, "kernel_matrix.csv")
        with open(cpath, "w", encoding="utf-8") as fh:
            fh.write("eta1,eta1p,re,im\n")
            for i, e in enumerate(eta):
                for j, ep in enumerate(eta):
                    fh.write(f"{e!r},{ep!r},{mat[i, j].real!r},{mat[i, j].imag!r}\n")
        sys.stdout.write(json.dumps({"kernel": params["abcd"], "matrix": cpath}) + "\n")
        return 0
    except SdwtError as e:
        sys.stdout.write(_error_json(type(e).__name__, str(e)))
        return 1


def cmd_fock(args) -> int:
    cfg = _load(args)
    out_dir = cfg["out"]
    os.makedirs(out_dir, exist_ok=True)
    fc = cfg["fock"]
    space = FockSpace(int(fc["cutoff"]))
    quad = FockQuadrature(radius=float(fc["radius"]), nodes=int(fc["nodes"]))
    records = []
    try:
        a1, a2, ad1, ad2, X1, X2 = ladder_ops(space)
        sub = space.block_indices(space.cutoff - 1)
        comm = (a1.matrix @ ad1.matrix - ad1.matrix @ a1.matrix)
        dev = float(np.max(np.abs(comm[np.ix_(sub, sub)] - np.eye(len(sub)))))
        records.append({"check": "ladder-commutator", "N": space.cutoff,
                        "quad": None, "deviation": dev, "tolerance": 1e-14,
                        "pass": dev <= 1e-14})

        st = ecs_vector(0.5 + 0.3j, 0.6, space)
        op = FockOperator(space, a1.matrix - a2.matrix)
        res = eigen_residual_weak(op, 0.5 + 0.3j, st)
        tol = 1e-8 if space.cutoff >= 20 else 1e-4
        records.append({"check": "eigen-relation", "N": space.cutoff, "quad": None,
                        "deviation": res, "tolerance": tol, "pass": res <= tol})

        dev = resolution_identity_check(space, FockQuadrature(
            radius=quad.radius, nodes=quad.nodes, x_radius=quad.radius + 1,
            x_nodes=quad.nodes), block_total=3)
        records.append({"check": "resolution-of-identity", "N": space.cutoff,
                        "quad": quad.nodes, "deviation": dev, "tolerance": 1e-3,
                        "pass": dev <= 1e-3})

        tp = TransformPoint.make(1.0, 0.0, 0j, 1.0, 0.0)
        U = build_U_quadrature(tp, space, FockQuadrature(
            radius=quad.radius + 1, nodes=quad.nodes,
            x_radius=quad.radius + 2, x_nodes=quad.nodes + 8))
        blk = space.block_indices(3)
        dev = float(np.max(np.abs(U.matrix[np.ix_(blk, blk)] - np.eye(len(blk)))))
        records.append({"check": "identity-point-operator", "N": space.cutoff,
                        "quad": quad.nodes, "deviation": dev, "tolerance": 1e-3,
                        "pass": dev <= 1e-3})
        if fc.get("export_operator"):
            opath = os.path.join(out_dir, "operator_identity.csv")
            with open(opath, "w", encoding="utf-8") as fh:
                fh.write("i,j,re,im\n")
                for i in range(space.dim):
                    for j in range(space.dim):
                        v = U.matrix[i, j]
                        fh.write(f"{i},{j},{v.real!r},{v.imag!r}\n")
    except SdwtError as e:
        sys.stdout.write(_error_json(type(e).__name__, str(e)))
        return 1
    with open(os.path.join(out_dir, "fock_report.json"), "w", encoding="utf-8") as fh:
        json.dump({"seed": cfg["seed"], "records": jsonable(records)}, fh, indent=1)
        fh.write("\n")
    for r in records:
        sys.stdout.write(f"[{'PASS' if r['pass'] else 'FAIL'}] {r['check']}: "
                         f"deviation={r['deviation']:.3e} tol={r['tolerance']:g}\n")
    return 0 if all(r["pass"] for r in records) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sdwt",
                                description="mixed dilation-symplectic wavelet "
                                            "transform toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", default=None, help="JSON config path")
        sp.add_argument("--out", default=None, help="output directory")
        sp.add_argument("--threads", type=int, default=None)
        sp.add_argument("--seed", type=int, default=None)
        sp.add_argument("--set", action="append", metavar="KEY=VALUE",
                        help="dotted-path config override (repeatable)")

    t = sub.add_parser("transform", help="write transform coefficients for a signal")
    common(t)
    t.set_defaults(fn=cmd_transform)

    v = sub.add_parser("verify", help="run a verification suite")
    common(v)
    v.add_argument("--suite", required=True, choices=sorted(checks.SUITES))
    v.set_defaults(fn=cmd_verify)

    pl = sub.add_parser("plotdata", help="export a 2D slice of |W|")
    pl.add_argument("--coefficients", required=True)
    pl.add_argument("--slice", required=True, help="two axis names, e.g. a,b")
    pl.add_argument("--at", default="", help="pins for other axes, e.g. mu=0.1")
    pl.add_argument("--out", required=True)
    pl.set_defaults(fn=cmd_plotdata)

    k = sub.add_parser("kernel", help="export kernel parameters and samples")
    common(k)
    k.set_defaults(fn=cmd_kernel)

    f = sub.add_parser("fock", help="run the oracle self-checks")
    common(f)
    f.set_defaults(fn=cmd_fock)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as e:
        sys.stderr.write(_error_json("ConfigError", str(e)))
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
