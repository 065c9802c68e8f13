"""Experiment output: JSON manifest, CSV series, rendered figures.

write_report(result, outdir) drops everything a reader needs into one
directory: manifest.json with the echoed configuration, its hash, the
metrics and the verdicts; one CSV per recorded series; and the figures
for the experiment, rendered headless.
"""

import json
import os

import numpy as np
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .config import config_hash


def _jsonable(value):
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value.tolist()]
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    return value


def write_series_csv(path, columns, data):
    data = np.atleast_2d(np.asarray(data, dtype=float))
    if data.shape[1] != len(columns):
        raise ValueError("column names do not match the data width")
    with open(path, "w") as fh:
        fh.write(",".join(columns) + "\n")
        for row in data:
            fh.write(",".join(f"{v:.12g}" for v in row) + "\n")


def write_manifest(result, outdir, series_files, figure_files):
    manifest = {
        "experiment": result.name,
        "config": _jsonable(result.config),
        "config_hash": config_hash(result.config),
        "metrics": _jsonable(result.metrics),
        "checks": [
            {
                "label": c.label,
                "value": _jsonable(c.value),
                "bound": _jsonable(c.bound),
                "mode": c.mode,
                "pass": bool(c.ok),
            }
            for c in result.checks
        ],
        "passed": bool(result.passed),
        "series": series_files,
        "figures": figure_files,
    }
    path = os.path.join(outdir, "manifest.json")
    with open(path, "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


def _save(fig, outdir, name, files):
    path = os.path.join(outdir, name)
    fig.savefig(path, dpi=130, bbox_inches="tight")
    plt.close(fig)
    files.append(name)


def _figure_groundstate(result, outdir, files):
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    for name, ser in result.series.items():
        if not name.startswith("profile_"):
            continue
        data = ser["data"]
        ax.plot(data[:, 0], data[:, 1], label=name.replace("profile_", ""))
    ax.set_xlabel("r")
    ax.set_ylabel("u(r)")
    ax.set_xlim(0, 12)
    ax.legend(frameon=False)
    ax.set_title("radial ground states")
    _save(fig, outdir, "profiles.png", files)


def _figure_stability(result, outdir, files):
    fig, axes = plt.subplots(1, 2, figsize=(10.4, 4.0))
    lia = result.series["liapunov"]["data"]
    pk = result.series["peaks"]["data"]
    ctl = result.series["control"]["data"]
    axes[0].plot(lia[:, 0], lia[:, 2], label="V/V0")
    axes[0].axhline(result.config["tol.liapunov_factor"], ls="--", c="k", lw=0.8)
    axes[0].set_xlabel("t")
    axes[0].set_ylabel("Liapunov ratio")
    axes[0].legend(frameon=False)
    axes[1].plot(pk[:, 0], pk[:, 1], label="perturbed peak")
    axes[1].plot(ctl[:, 0], ctl[:, 1], label="sub-threshold peak")
    axes[1].axhline(result.config["tol.peak_floor"], ls="--", c="k", lw=0.8)
    axes[1].set_xlabel("t")
    axes[1].set_ylabel("peak / peak(0)")
    axes[1].legend(frameon=False)
    fig.suptitle("standing wave stability")
    _save(fig, outdir, "stability.png", files)

    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    prof = result.series["profiles"]["data"]
    ax.plot(prof[:, 0], prof[:, 1], label="perturbed, t=0")
    ax.plot(prof[:, 0], prof[:, 2], label="perturbed, final")
    ax.plot(prof[:, 0], prof[:, 3], label="control, final")
    ax.set_xlabel("x")
    ax.set_ylabel("|psi|")
    ax.legend(frameon=False)
    _save(fig, outdir, "stability_profiles.png", files)


def _figure_travel(result, outdir, files):
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    styles = {"ns_center": "packet, first order",
              "nkg_center": "packet, second order",
              "rest_center": "rest wave"}
    for key, label in styles.items():
        data = result.series[key]["data"]
        ax.plot(data[:, 0], data[:, 1], label=label)
    ax.set_xlabel("t")
    ax.set_ylabel("center")
    ax.legend(frameon=False)
    ax.set_title("packet centers vs time")
    _save(fig, outdir, "centers.png", files)


def _figure_relativity(result, outdir, files):
    fig, axes = plt.subplots(1, 2, figsize=(10.4, 4.0))
    prof = result.series["profiles"]
    cols, data = prof["columns"], prof["data"]
    for i, c in enumerate(cols[1:], start=1):
        axes[0].plot(data[:, 0], data[:, i], label=c)
    axes[0].set_xlabel("x")
    axes[0].set_ylabel("|psi|")
    axes[0].legend(frameon=False)
    axes[0].set_title("contracted packets")
    for name, ser in result.series.items():
        if not name.startswith("clock_"):
            continue
        d = ser["data"]
        axes[1].plot(d[:, 0], d[:, 2], label=name.replace("clock_", ""))
    axes[1].set_xlabel("t")
    axes[1].set_ylabel("phase at the peak")
    axes[1].legend(frameon=False)
    axes[1].set_title("slowed internal clocks")
    _save(fig, outdir, "relativity.png", files)


def _figure_potential(result, outdir, files):
    fig, axes = plt.subplots(1, 2, figsize=(10.4, 4.0))
    ctr = result.series["centers"]
    cols, data = ctr["columns"], ctr["data"]
    axes[0].plot(data[:, 0], data[:, 1], "k--", label="point particle")
    for i, c in enumerate(cols[2:], start=2):
        axes[0].plot(data[:, 0], data[:, i], label=c)
    axes[0].set_xlabel("t")
    axes[0].set_ylabel("center")
    axes[0].legend(frameon=False)
    dev = result.series["deviation"]["data"]
    axes[1].loglog(dev[:, 0], dev[:, 1], "o-")
    axes[1].set_xlabel("h")
    axes[1].set_ylabel("max center error")
    axes[1].set_title("concentration ladder")
    _save(fig, outdir, "trap_dynamics.png", files)


def _figure_scan(result, outdir, files):
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ser = result.series["scan"]
    cols, data = ser["columns"], ser["data"]
    for i, c in enumerate(cols[1:], start=1):
        ax.plot(data[:, 0], data[:, i], "o-", label=c)
    ax.axhline(result.metrics["ns_rest_energy"], ls="--", c="k", lw=0.8)
    ax.plot([], [], " ", label="dashed: rest energy")
    ax.set_xlabel("R")
    ax.set_ylabel("Lambda")
    ax.legend(frameon=False, fontsize=8)
    ax.set_title("energy per charge of spread bumps")
    _save(fig, outdir, "scan.png", files)


_FIGURES = {
    "groundstate": _figure_groundstate,
    "stability": _figure_stability,
    "travel": _figure_travel,
    "relativity": _figure_relativity,
    "potential_dynamics": _figure_potential,
    "hylomorphy_scan": _figure_scan,
}


def render_figures(result, outdir):
    files = []
    fn = _FIGURES.get(result.name)
    if fn is not None:
        fn(result, outdir, files)
    return files


def write_report(result, outdir):
    """Write manifest.json, per-series CSVs and figures; returns the
    manifest path."""
    os.makedirs(outdir, exist_ok=True)
    series_files = {}
    for name, ser in result.series.items():
        fname = f"{name}.csv"
        write_series_csv(os.path.join(outdir, fname), ser["columns"], ser["data"])
        series_files[name] = fname
    figure_files = render_figures(result, outdir)
    return write_manifest(result, outdir, series_files, figure_files)
