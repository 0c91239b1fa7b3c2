"""Command-line front end: reproducible experiments with CSV/JSON output.

Every command loads a flat key-value config, runs one experiment family,
writes RFC-4180 CSV tables and a JSON report embedding the config hash
and the tolerances used, and exits with 0 (all checks pass), 2 (a
numeric check failed) or 3 (config error).  Outputs are byte-identical
for identical config and seed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import desk
from .config import ConfigError, RunConfig, load_config
from .fourier import (HermiteBasisSpec, annulus_lambda_grid, fan_data,
                      lemma_limit_experiment, rep_v_matrices,
                      spherical_inf)
from .group import haar_grid
from .measures import (FamilySpec, OscillationContext, l_eps_oscillation,
                       oscillation_prediction_part1, wigner,
                       wigner_trace_marginal)
from .quantize import (adjoint_expansion_check, band_limited_probes,
                       composition_expansion_check, l2_bound_suite)
from .reports import LimitReport, write_csv, write_json
from .specfun import reduced_bessel
from .symbols import ConstBPart, Symbol, const_profile


def _report(out: Path, name: str, cfg: RunConfig, passed: bool,
            payload: dict) -> None:
    payload = dict(payload)
    payload.update({"name": name, "passed": bool(passed),
                    "config_hash": cfg.config_hash, "seed": cfg.seed})
    write_json(out / f"{name}.json", payload)


def cmd_fan(cfg: RunConfig, out: Path) -> bool:
    G = desk.build_group(cfg)
    rows = fan_data(G, k_max=10, lam_max=cfg.lam_max, n_samples=cfg.lam_nodes)
    write_csv(out / "fan.csv", ["branch", "parameter", "zeta"], rows)
    # slope check: each ray's zeta/parameter equals 2k + d
    ok = True
    for k in range(11):
        pts = [(p, z) for b, p, z in rows if b == f"ray_k{k}" and p > 0]
        slope = max(abs(z / p - (2 * k + G.d)) for p, z in pts)
        ok = ok and slope <= 1e-12
    expected = cfg.lam_nodes * 11 + cfg.lam_nodes
    ok = ok and len(rows) == expected
    _report(out, "fan", cfg, ok, {"rows": len(rows), "tolerance": 1e-12})
    return ok


def cmd_plancherel(cfg: RunConfig, out: Path) -> bool:
    engine = desk.desk_engine(cfg)
    rows = []
    worst_pl = 0.0
    worst_inv = 0.0
    for i, f in enumerate(desk.schwartz_suite(cfg.seed)):
        samples = engine.grid.sample(f)
        coeffs = engine.forward(samples)
        lhs = engine.grid.integrate(np.abs(samples) ** 2).real
        rhs = engine.plancherel_sum(coeffs).real
        rel = abs(lhs - rhs) / abs(lhs)
        back = engine.inverse(coeffs)
        sup = float(np.max(np.abs(back - samples)))
        scale = float(np.max(np.abs(samples)))
        rows.append((i, lhs, rhs, rel, sup / scale))
        worst_pl = max(worst_pl, rel)
        worst_inv = max(worst_inv, sup / scale)
    write_csv(out / "plancherel.csv",
              ["index", "lhs", "rhs", "rel_error", "inversion_sup"], rows)
    ok = worst_pl <= cfg.tol_rel and worst_inv <= 1e-4
    _report(out, "plancherel", cfg, ok,
            {"c0": engine.c0, "max_rel": worst_pl, "max_inversion": worst_inv,
             "tolerance": cfg.tol_rel, "inversion_tolerance": 1e-4})
    return ok


def cmd_spherical(cfg: RunConfig, out: Path) -> bool:
    G = desk.build_group(cfg)
    rng = np.random.default_rng(cfg.seed)
    vs = rng.uniform(-2.0, 2.0, (50, 2 * G.d))
    zs = rng.uniform(-2.0, 2.0, (50, G.p))
    lam = np.zeros(G.p)
    lam[0] = 1.3
    n_rot = 64
    thetas = 2.0 * np.pi * np.arange(n_rot) / n_rot
    worst = 0.0
    rows = []
    basis = HermiteBasisSpec(G.d, 12)
    for k in range(11):
        ref = spherical_inf(G, lam, k, vs, zs)
        acc = np.zeros(50, dtype=complex)
        for th in thetas:
            R = np.array([[np.cos(th), -np.sin(th)],
                          [np.sin(th), np.cos(th)]])
            pis = rep_v_matrices(G, lam, vs @ R.T, basis)
            acc += pis[:, k, k].conj() * np.exp(-1j * zs @ lam)
        gap = float(np.max(np.abs(acc / n_rot - ref)))
        rows.append((k, gap))
        worst = max(worst, gap)
    r = np.linspace(0.0, 20.0, 201)
    from scipy.special import j0
    bessel_gap = float(np.max(np.abs(reduced_bessel(1, r) - j0(r))))
    write_csv(out / "spherical.csv", ["k", "max_gap"], rows)
    ok = worst <= 1e-8 and bessel_gap <= 1e-8
    _report(out, "spherical", cfg, ok,
            {"max_gap": worst, "bessel_gap": bessel_gap, "tolerance": 1e-8})
    return ok


def cmd_lemma_limit(cfg: RunConfig, out: Path) -> bool:
    G = desk.build_group(cfg)
    grid = haar_grid(G, cfg.v_box, cfg.z_box, cfg.v_orders, cfg.z_orders)

    def f(v, z):
        v = np.asarray(v)
        z = np.asarray(z)
        return np.exp(-np.sum(v * v, axis=-1) / 2.0 - z[..., 0] ** 2 / 4.0)

    n_values = [50, 75, 100, 125, 150, 175, 200]
    lefts, right = lemma_limit_experiment(G, grid, grid.sample(f), 1.0,
                                          n_values)
    gaps = [abs(lv - right) for lv in lefts]
    rows = [(n, lv.real, lv.imag, g)
            for n, lv, g in zip(n_values, lefts, gaps)]
    write_csv(out / "lemma_limit.csv",
              ["n", "left_re", "left_im", "gap"], rows)
    decreasing = all(b <= a * (1 + 1e-12) for a, b in zip(gaps, gaps[1:]))
    ok = decreasing and gaps[-1] <= 5e-2
    _report(out, "lemma_limit", cfg, ok,
            {"right": complex(right), "gaps": gaps, "final_tolerance": 5e-2})
    return ok


def cmd_symbcal(cfg: RunConfig, out: Path) -> bool:
    engine = desk.op_engine(cfg)
    G = engine.G
    kgrid = desk.kernel_grid(cfg)
    syms = desk.mild_symbol_suite(G, engine.basis, kgrid, 2, seed=cfg.seed)
    probes = desk.quantization_probes(engine)
    adj = adjoint_expansion_check(engine, syms[0], cfg.eps_ladder, probes)
    comp = composition_expansion_check(engine, syms[0], syms[1],
                                       cfg.eps_ladder, probes)
    rows = [("adjoint", e, r0, r1) for e, r0, r1 in
            zip(adj["eps"], adj["zeroth"], adj["first"])]
    rows += [("composition", e, r0, r1) for e, r0, r1 in
             zip(comp["eps"], comp["zeroth"], comp["first"])]
    write_csv(out / "symbcal.csv",
              ["check", "eps", "zeroth_remainder", "first_remainder"], rows)
    ok = (adj["slope1"] >= 1.8 and comp["slope1"] >= 1.8
          and adj["slope0"] >= 0.8 and comp["slope0"] >= 0.8)
    _report(out, "symbcal", cfg, ok,
            {"adjoint_slopes": [adj["slope0"], adj["slope1"]],
             "composition_slopes": [comp["slope0"], comp["slope1"]],
             "slope_tolerances": [0.8, 1.8]})
    return ok


def cmd_wigner(cfg: RunConfig, out: Path) -> bool:
    G = desk.build_group(cfg)
    basis = HermiteBasisSpec(G.d, cfg.basis_n)
    w_grid = haar_grid(G, 5.5, 18.0, 48, 96)
    lam_grid = annulus_lambda_grid(cfg.lam_min, cfg.lam_max, 48)
    from .fourier import FourierEngine
    w_engine = FourierEngine(G, w_grid, basis, lam_grid,
                             c0=(2.0 * np.pi) ** (-(G.d + G.p)))

    def f(v, z):
        v = np.asarray(v)
        z = np.asarray(z)
        return np.exp(-np.sum(v * v, axis=-1) / 2.0 - z[..., 0] ** 2 / 18.0
                      + 1.5j * z[..., 0] + 0.3 * v[..., 0])

    eps = 1.0
    rows = []
    sa = 0.0
    tm_rel = 0.0
    for xv, xz in [(np.array([0.25, -0.1]), np.array([0.05])),
                   (np.array([-0.4, 0.2]), np.array([-0.3]))]:
        lam = np.array([1.2])
        W = wigner(w_engine, f, eps, xv, xz, lam)
        sa_x = float(np.max(np.abs(W - W.conj().T)))
        tm = wigner_trace_marginal(w_engine, f, eps, xv, xz)
        fx = complex(f(xv[None, :], xz[None, :])[0])
        rel = abs(tm - abs(fx) ** 2) / abs(fx) ** 2
        rows.append((float(xv[0]), float(xv[1]), float(xz[0]), sa_x, rel))
        sa = max(sa, sa_x)
        tm_rel = max(tm_rel, rel)
    write_csv(out / "wigner.csv",
              ["x_v1", "x_v2", "x_z", "self_adjoint_sup",
               "trace_marginal_rel"], rows)
    ok = sa <= 1e-10 and tm_rel <= 1e-5
    _report(out, "wigner", cfg, ok,
            {"self_adjoint": sa, "trace_marginal_rel": tm_rel,
             "tolerance": 1e-5, "self_adjoint_tolerance": 1e-10})
    return ok


def cmd_measures(cfg: RunConfig, out: Path) -> bool:
    G = desk.build_group(cfg)
    basis = HermiteBasisSpec(G.d, cfg.basis_n)
    kgrid = desk.kernel_grid(cfg)
    c0 = (2.0 * np.pi) ** (-(G.d + G.p))
    ctx = OscillationContext(window_nodes=96)
    spec = FamilySpec(kind="oscillation",
                      a=lambda z: np.exp(-np.asarray(z)[..., 0] ** 2 / 8.0),
                      lam0=2.0, level=1)
    rows = []
    worst_diag = 0.0
    worst_off = 0.0
    for m in range(4):
        panel = np.zeros((basis.size, basis.size))
        panel[m, m] = 1.0
        sym = Symbol(G, basis, [(const_profile(1.0), ConstBPart(panel))],
                     kgrid, kind="panel")
        pred = oscillation_prediction_part1(sym, spec, G, basis, ctx=ctx)
        for eps in cfg.eps_ladder:
            val = l_eps_oscillation(G, basis, sym, spec, eps, c0, ctx=ctx)
            rows.append((m, eps, val.real, val.imag, pred.real, pred.imag,
                         abs(val - pred)))
        gap = abs(val - pred)
        if m == spec.level:
            worst_diag = max(worst_diag, gap)
        else:
            worst_off = max(worst_off, abs(val))
    write_csv(out / "measures.csv",
              ["panel", "eps", "value_re", "value_im", "predicted_re",
               "predicted_im", "gap"], rows)
    ok = worst_diag <= 1e-2 and worst_off <= 1e-2
    report = LimitReport(
        name="measures", eps=list(cfg.eps_ladder),
        values=[r[2] for r in rows if r[0] == spec.level],
        predicted=[r[4] for r in rows if r[0] == spec.level],
        gaps=[r[6] for r in rows if r[0] == spec.level],
        slope=None, tolerance=1e-2, passed=ok,
        config_hash=cfg.config_hash,
        extra={"worst_off_panel": worst_off, "seed": cfg.seed})
    report.dump(out / "measures.json")
    return ok


def cmd_bound_check(cfg: RunConfig, out: Path) -> bool:
    engine = desk.op_engine(cfg)
    G = engine.G
    kgrid = desk.kernel_grid(cfg)
    syms = desk.mild_symbol_suite(G, engine.basis, kgrid, 2, seed=cfg.seed)
    probes = band_limited_probes(engine, n_probe=4, seed=cfg.seed + 1)
    rng = np.random.default_rng(cfg.seed + 2)
    xv = rng.uniform(-1.0, 1.0, (6, 2 * G.d))
    xz = rng.uniform(-1.0, 1.0, (6, G.p))
    lam_sample = np.linspace(0.05, cfg.lam_max * 0.9, 16)[:, None]
    rows = l2_bound_suite(engine, syms, cfg.eps_ladder, (xv, xz),
                          lam_sample, probes=probes)
    write_csv(out / "bound_check.csv",
              ["index", "eps", "op_norm", "normA", "normA0", "ratio"],
              [(r["index"], r["eps"], r["op_norm"], r["normA"],
                r["normA0"], r["ratio"]) for r in rows])
    worst = max(r["ratio"] for r in rows)
    ok = worst <= 1.1
    _report(out, "bound_check", cfg, ok,
            {"max_ratio": worst, "tolerance": 1.1})
    return ok


COMMANDS = {
    "fan": cmd_fan,
    "plancherel": cmd_plancherel,
    "spherical": cmd_spherical,
    "lemma-limit": cmd_lemma_limit,
    "symbcal": cmd_symbcal,
    "wigner": cmd_wigner,
    "measures": cmd_measures,
    "bound-check": cmd_bound_check,
}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="htlab",
        description="numerical experiments for semi-classical analysis "
                    "on H-type groups")
    parser.add_argument("--config", type=str, default=None)
    parser.add_argument("--out", type=str, default=None)
    parser.add_argument("--threads", type=int, default=1,
                        help="worker cap (computations are single-process)")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--cmd", type=str, required=True,
                        choices=sorted(COMMANDS))
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config) if args.config else RunConfig()
        if args.seed is not None:
            cfg.seed = args.seed
        if args.out is not None:
            cfg.out_dir = args.out
    except ConfigError as exc:
        print(json.dumps({"stage": "config", "message": str(exc)}))
        return 3
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    try:
        passed = COMMANDS[args.cmd](cfg, out)
    except Exception as exc:  # invariant breach inside a command
        print(json.dumps({"stage": args.cmd, "message": str(exc)}))
        return 2
    if not passed:
        print(json.dumps({"stage": args.cmd,
                          "message": "numeric check failed"}))
        return 2
    print(json.dumps({"stage": args.cmd, "message": "ok"}))
    return 0


if __name__ == "__main__":
    sys.exit(main())
