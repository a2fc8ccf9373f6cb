#!/usr/bin/env python3
"""Render the figure for a nonrecip results directory.

Reads manifest.json to learn which experiment produced the directory, loads
the CSV next to it, and writes a PNG. Purely a convenience for eyeballing
runs; nothing here feeds back into the test suite.
"""

import argparse
import csv
import json
import math
import pathlib
import sys


def load_table(path):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [[float(cell) for cell in row] for row in reader]
    cols = {name: [row[i] for row in rows] for i, name in enumerate(header)}
    return header, cols


def plot_spectral(plt, cols, params):
    ks = sorted(set(cols["k"]))
    ws = sorted(set(cols["omega"]))
    nk, nw = len(ks), len(ws)
    grid = [[0.0] * nk for _ in range(nw)]
    for k, w, a in zip(cols["k"], cols["omega"], cols["A"]):
        grid[ws.index(w)][ks.index(k)] = a
    vmax = sorted(v for row in grid for v in row)[int(0.999 * nk * nw)]
    mesh = plt.pcolormesh(ks, ws, grid, shading="nearest", vmax=vmax, cmap="magma")
    plt.colorbar(mesh, label="A(k, $\\omega$)")
    plt.xlabel("k")
    plt.ylabel("$\\omega$")
    title = "spectral function"
    if params.get("sigma_model") == "frozen_gamma":
        title += " (frozen $\\Gamma$)"
    plt.title(title)


def plot_scaling_factors(plt, cols, params):
    plt.plot(cols["omega"], cols["f_plus"], label="$f_+$")
    plt.plot(cols["omega"], cols["f_minus"], label="$f_-$")
    plt.plot(cols["omega"], cols["f_plus_markovian"], "--", label="$f_+$ frozen")
    plt.plot(cols["omega"], cols["f_minus_markovian"], "--", label="$f_-$ frozen")
    plt.axhline(1.0, color="gray", lw=0.5)
    plt.xlabel("$\\omega$")
    plt.ylabel("f")
    plt.legend()
    plt.title("transfer-matrix scaling factors")


def plot_transmission(plt, cols, params):
    plt.semilogy(cols["omega"], cols["tau_plus"], label="$\\tau_+$")
    plt.semilogy(cols["omega"], cols["tau_minus"], label="$\\tau_-$")
    plt.semilogy(cols["omega"], cols["tau_reciprocal"], ":", label="$\\tau$ (no bath)")
    plt.xlabel("$\\omega$")
    plt.ylabel("$\\tau$")
    plt.legend()
    plt.title("end-to-end transmission, N = %s" % params.get("n_sites", "?"))


def plot_current_scan(plt, cols, params):
    ns = cols["N"]
    plt.loglog(ns, cols["I_plus"], "o-", label="$I_+$")
    plt.loglog(ns, cols["I_minus"], "s-", label="$I_-$")
    guide = [cols["I_plus"][0] * math.sqrt(ns[0] / n) for n in ns]
    plt.loglog(ns, guide, "--", color="gray", label="$N^{-1/2}$ guide")
    plt.xlabel("N")
    plt.ylabel("I")
    plt.legend()
    plt.title("steady-state currents vs size, $\\mu_d$ = %s" % params.get("mu_d", "?"))


def plot_ndqpt(plt, cols, params):
    plt.plot(cols["mu_d"], cols["sqrtN_I_plus"], "o-")
    plt.xlabel("$\\mu_d$")
    plt.ylabel("$\\sqrt{N}\\, I_+$")
    plt.title("scaled forward current, N = %s" % params.get("n_sites", "?"))


def plot_markovian_compare(plt, cols, params):
    ns = cols["N"]
    plt.loglog(ns, cols["I_plus"], "-", label="$I_+$ resolvent")
    plt.loglog(ns, cols["I_minus"], "-", label="$I_-$ resolvent")
    plt.loglog(ns, cols["I_plus_lyapunov"], "o", mfc="none", label="$I_+$ Lyapunov")
    plt.loglog(ns, cols["I_minus_lyapunov"], "s", mfc="none", label="$I_-$ Lyapunov")
    plt.xlabel("N")
    plt.ylabel("I")
    plt.legend()
    plt.title("Markovian steady-state currents")


PLOTTERS = {
    "spectral": plot_spectral,
    "scaling-factors": plot_scaling_factors,
    "transmission": plot_transmission,
    "current-scan": plot_current_scan,
    "ndqpt": plot_ndqpt,
    "markovian-compare": plot_markovian_compare,
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("results_dir", type=pathlib.Path)
    ap.add_argument("-o", "--output", type=pathlib.Path, default=None)
    args = ap.parse_args()

    manifest_path = args.results_dir / "manifest.json"
    if not manifest_path.is_file():
        sys.exit(f"no manifest.json in {args.results_dir}")
    manifest = json.loads(manifest_path.read_text())
    experiment = manifest["experiment"]

    if experiment == "validate":
        with open(args.results_dir / "validate.csv", newline="") as fh:
            reader = csv.reader(fh)
            next(reader)
            for name, passed, metric, bound in reader:
                state = "ok" if float(passed) > 0 else "FAIL"
                print(f"{name}: {state} metric={metric} bound={bound}")
        return

    if experiment not in PLOTTERS:
        sys.exit(f"unknown experiment '{experiment}'")

    try:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        sys.exit("matplotlib is required for plotting")

    _, cols = load_table(args.results_dir / f"{experiment}.csv")
    plt.figure(figsize=(6.0, 4.2))
    PLOTTERS[experiment](plt, cols, manifest.get("parameters", {}))
    out = args.output or args.results_dir / f"{experiment}.png"
    plt.tight_layout()
    plt.savefig(out, dpi=160)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
