"""Command line front end.

    hylos groundstate --config FILE --out DIR
    hylos evolve      --config FILE --out DIR
    hylos experiment NAME --config FILE --out DIR
    hylos validate KIND --config FILE

Exit status: 0 when the run finished and every check passed, 2 when a
run finished but a check failed (or the field blew up), 1 on errors.
"""

import argparse
import json
import os
import sys

import numpy as np

from .config import config_hash, load_config, resolve
from .evolve import EvolveConfig, run
from .experiments import EXPERIMENTS, model_from_config, run_experiment
from .grid import make_grid, save_field
from .groundstate import (
    admissible_frequencies,
    check_admissible,
    derrick_pohozaev_residual,
    find_ground_state,
    save_profile,
)
from .models import harmonic_potential, zero_potential
from .observables import write_diagnostics
from .report import write_report
from .symmetry import galilean_boost, lorentz_boost_initialdata, standing_wave

MODEL_DEFAULTS = {
    "model.family": "power_focusing", "model.equation": "ns",
    "model.a": 2.0, "model.p": 4, "model.q": 6, "model.c": 1.0,
    "model.c_p": 1.0, "model.c_q": 0.1,
}

GROUNDSTATE_CMD_DEFAULTS = dict(MODEL_DEFAULTS, **{
    "omega": 0.5, "dim": 1, "h_r": 1e-3, "r_max": 30.0,
})

EVOLVE_CMD_DEFAULTS = dict(MODEL_DEFAULTS, **{
    "omega": 0.5, "dim": 1,
    "grid.length": 40.0, "grid.nodes": 1024,
    "center": 0.0, "theta": 0.0,
    "boost.kind": "none", "boost.v": 0.3,
    "dt": 1e-3, "t_end": 10.0,
    "snapshot_every": 0, "diagnostic_every": 10,
    "potential.kind": "zero", "potential.kappa": 1.0,
    "frame.h": 1.0, "frame.alpha": 0.0, "frame.gamma_exp": 0.0,
})


def _as_vector(value, dim):
    arr = np.atleast_1d(np.asarray(value, dtype=float))
    if arr.size == 1 and dim > 1:
        out = np.zeros(dim)
        out[0] = arr[0]
        return out
    if arr.size != dim:
        raise ValueError(f"expected {dim} components, got {arr.size}")
    return arr


def _write_json(path, payload):
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def cmd_groundstate(cfg, outdir):
    model = model_from_config(cfg)
    prof = find_ground_state(model, omega=cfg["omega"], dim=cfg["dim"],
                             h_r=cfg["h_r"], r_max=cfg["r_max"])
    resid = derrick_pohozaev_residual(prof, model)
    lo, hi, open_below = admissible_frequencies(model)
    os.makedirs(outdir, exist_ok=True)
    save_profile(os.path.join(outdir, "profile.csv"), prof)
    _write_json(os.path.join(outdir, "manifest.json"), {
        "command": "groundstate",
        "config": {k: cfg[k] for k in sorted(cfg)},
        "config_hash": config_hash(cfg),
        "u0": prof.u0, "sigma": prof.sigma, "kappa": prof.kappa,
        "residual": resid,
        "window": [lo, hi, open_below],
    })
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.plot(prof.r, prof.u)
    ax.set_xlabel("r")
    ax.set_ylabel("u(r)")
    ax.set_title(f"ground state, u0={prof.u0:.6f}, sigma={prof.sigma:.4f}")
    fig.savefig(os.path.join(outdir, "profile.png"), dpi=130, bbox_inches="tight")
    plt.close(fig)
    print(f"u0 = {prof.u0:.10g}  sigma = {prof.sigma:.10g}  "
          f"residual = {resid:.3e}")
    print(f"report: {outdir}")
    return 0


def cmd_evolve(cfg, outdir):
    model = model_from_config(cfg)
    dim = cfg["dim"]
    grid = make_grid(dim, cfg["grid.length"], cfg["grid.nodes"])
    prof = find_ground_state(model, omega=cfg["omega"], dim=dim)
    center = _as_vector(cfg["center"], dim)

    kind = cfg["boost.kind"]
    if kind == "none":
        state = standing_wave(prof, grid, center=center, theta=cfg["theta"])
    elif kind == "galilean":
        state = standing_wave(prof, grid, center=center, theta=cfg["theta"])
        state = galilean_boost(state, _as_vector(cfg["boost.v"], dim))
    elif kind == "lorentz":
        state, _ = lorentz_boost_initialdata(prof, grid, float(cfg["boost.v"]),
                                             center=center, theta=cfg["theta"])
    else:
        raise ValueError(f"unknown boost kind {kind!r}")

    if cfg["potential.kind"] == "zero":
        pot = zero_potential()
    elif cfg["potential.kind"] == "harmonic":
        pot = harmonic_potential(cfg["potential.kappa"])
    else:
        raise ValueError(f"unknown potential kind {cfg['potential.kind']!r}")

    econf = EvolveConfig(dt=cfg["dt"], t_end=cfg["t_end"],
                         snapshot_every=cfg["snapshot_every"],
                         diagnostic_every=cfg["diagnostic_every"],
                         h=cfg["frame.h"], alpha=cfg["frame.alpha"],
                         gamma_exp=cfg["frame.gamma_exp"])
    traj = run(state, model, econf, potential=pot)

    os.makedirs(outdir, exist_ok=True)
    write_diagnostics(os.path.join(outdir, "diagnostics.csv"), traj.rows)
    for i, snap in enumerate(traj.snapshots):
        save_field(os.path.join(outdir, f"field_{i:04d}.csv"), snap.psi)
    rows = traj.rows
    drift = {}
    if rows:
        E0, H0 = rows[0].E, rows[0].H
        drift = {
            "E": max(abs(r.E - E0) for r in rows) / max(abs(E0), 1e-300),
            "H": max(abs(r.H - H0) for r in rows) / max(abs(H0), 1e-300),
            "leakage": max(r.leakage for r in rows),
        }
    _write_json(os.path.join(outdir, "manifest.json"), {
        "command": "evolve",
        "config": {k: cfg[k] for k in sorted(cfg)},
        "config_hash": config_hash(cfg),
        "n_steps": traj.n_steps, "blown_up": traj.blown_up,
        "relative_drift": drift,
    })
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    ts = [r.t for r in rows]
    fig, axes = plt.subplots(1, 2, figsize=(10.4, 4.0))
    axes[0].plot(ts, [r.E for r in rows], label="E")
    axes[0].plot(ts, [r.H for r in rows], label="H")
    axes[0].set_xlabel("t")
    axes[0].legend(frameon=False)
    axes[1].plot(ts, [r.center[0] for r in rows])
    axes[1].set_xlabel("t")
    axes[1].set_ylabel("center")
    fig.savefig(os.path.join(outdir, "evolve.png"), dpi=130, bbox_inches="tight")
    plt.close(fig)

    if traj.blown_up:
        print("run aborted: the field blew up")
        print(f"report: {outdir}")
        return 2
    if drift:
        print(f"relative drift: E {drift['E']:.3e}  H {drift['H']:.3e}  "
              f"leakage {drift['leakage']:.3e}")
    print(f"report: {outdir}")
    return 0


def cmd_experiment(name, overrides, outdir):
    result = run_experiment(name, overrides)
    manifest = write_report(result, outdir)
    for c in result.checks:
        word = "PASS" if c.ok else "FAIL"
        op = "<" if c.mode == "below" else ">"
        print(f"[{word}] {c.label}: {c.value:.6g} {op} {c.bound:g}")
    print(f"report: {manifest}")
    return 0 if result.passed else 2


def cmd_validate(kind, overrides):
    if kind == "groundstate":
        cfg = resolve(GROUNDSTATE_CMD_DEFAULTS, overrides)
        check_admissible(model_from_config(cfg), cfg["omega"])
    elif kind == "evolve":
        cfg = resolve(EVOLVE_CMD_DEFAULTS, overrides)
        check_admissible(model_from_config(cfg), cfg["omega"])
    elif kind in EXPERIMENTS:
        resolve(EXPERIMENTS[kind][0], overrides)
    else:
        raise ValueError(f"unknown kind {kind!r}")
    print(f"configuration valid for {kind}")
    return 0


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="hylos",
        description="numerical laboratory for hylomorphic solitons",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("groundstate", help="solve one radial ground state")
    p.add_argument("--config", help="flat key = value file")
    p.add_argument("--out", default="hylos_out/groundstate")

    p = sub.add_parser("evolve", help="evolve a solitary wave")
    p.add_argument("--config")
    p.add_argument("--out", default="hylos_out/evolve")

    p = sub.add_parser("experiment", help="run a named experiment")
    p.add_argument("name", choices=sorted(EXPERIMENTS))
    p.add_argument("--config")
    p.add_argument("--out", default=None)

    p = sub.add_parser("validate", help="check a configuration file")
    p.add_argument("kind")
    p.add_argument("--config")

    args = parser.parse_args(argv)
    try:
        overrides = load_config(args.config) if args.config else {}
        if args.command == "groundstate":
            cfg = resolve(GROUNDSTATE_CMD_DEFAULTS, overrides)
            return cmd_groundstate(cfg, args.out)
        if args.command == "evolve":
            cfg = resolve(EVOLVE_CMD_DEFAULTS, overrides)
            return cmd_evolve(cfg, args.out)
        if args.command == "experiment":
            outdir = args.out or os.path.join("hylos_out", args.name)
            return cmd_experiment(args.name, overrides, outdir)
        return cmd_validate(args.kind, overrides)
    except Exception as exc:  # surface errors as status 1, not tracebacks
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
