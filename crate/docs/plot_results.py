#!/usr/bin/env python3
"""Render the standard comparison figures from experiment CSVs.

Usage:
    python3 docs/plot_results.py <output_dir> [--save <figure_dir>]

Reads whichever experiment artifacts exist under <output_dir>
(single_auction_*, reselection_*, beta_sweep_*, oracle_compare_*) and draws
one figure per experiment: welfare, platform utility, and participant
utilities against the swept axis. Figures are shown interactively unless
--save is given.
"""

import argparse
import glob
import os
import sys
from collections import defaultdict

import matplotlib

import csv


METRICS = [
    ("esw", "expected social welfare"),
    ("nsw", "naive social welfare"),
    ("platform_utility_pre", "platform utility (pre)"),
    ("platform_utility_post", "platform utility (post)"),
    ("avg_requester_utility", "avg requester utility"),
    ("avg_worker_utility", "avg worker utility"),
]


def read_rows(path):
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            yield row


def mean_by(rows, key_fn, value_fn):
    acc = defaultdict(list)
    for row in rows:
        acc[key_fn(row)].append(value_fn(row))
    return {k: sum(v) / len(v) for k, v in acc.items()}


def plot_single_auction(ax_grid, out_dir):
    files = {
        "eswm": glob.glob(os.path.join(out_dir, "single_auction_eswm_*.csv")),
        "benchmark": glob.glob(os.path.join(out_dir, "single_auction_benchmark_*.csv")),
    }
    if not files["eswm"]:
        return False
    for (metric, label), ax in zip(METRICS[:4] + METRICS[4:], ax_grid.flat):
        for name, paths in files.items():
            rows = [r for p in paths for r in read_rows(p)]
            means = mean_by(rows, lambda r: int(r["capacity"]), lambda r: float(r[metric]))
            ks = sorted(means)
            ax.plot(ks, [means[k] for k in ks], marker="o", label=name)
        ax.set_xlabel("capacity K")
        ax.set_title(label)
        ax.legend()
    return True


def plot_reselection(ax_grid, out_dir):
    paths = glob.glob(os.path.join(out_dir, "reselection_*.csv"))
    if not paths:
        return False
    rows = [r for p in paths for r in read_rows(p)]
    last_round = max(int(r["round"]) for r in rows)
    final = [r for r in rows if int(r["round"]) == last_round]
    for (metric, label), ax in zip(METRICS, ax_grid.flat):
        for platform, name in [("A", "eswm"), ("B", "benchmark")]:
            sel = [r for r in final if r["platform"] == platform]
            means = mean_by(sel, lambda r: int(r["capacity"]), lambda r: float(r[metric]))
            ks = sorted(means)
            ax.plot(ks, [means[k] for k in ks], marker="o", label=name)
        ax.set_xlabel("capacity K")
        ax.set_title(f"{label} (round {last_round})")
        ax.legend()
    return True


def plot_beta_sweep(ax_grid, out_dir):
    paths = glob.glob(os.path.join(out_dir, "beta_sweep_*.csv"))
    if not paths:
        return False
    rows = [r for p in paths for r in read_rows(p)]
    for (metric, label), ax in zip(METRICS, ax_grid.flat):
        means = mean_by(
            rows,
            lambda r: (float(r["beta_alpha"]), float(r["beta_lambda"])),
            lambda r: float(r[metric]),
        )
        alphas = sorted({k[0] for k in means})
        lambdas = sorted({k[1] for k in means})
        if len(lambdas) == 1:
            xs, axis = alphas, "beta_alpha"
            series = [means[(a, lambdas[0])] for a in alphas]
        elif len(alphas) == 1:
            xs, axis = lambdas, "beta_lambda"
            series = [means[(alphas[0], l)] for l in lambdas]
        else:
            diag = sorted(k[0] for k in means if k[0] == k[1])
            xs, axis = diag, "beta (coupled)"
            series = [means[(b, b)] for b in diag]
        ax.plot(xs, series, marker="o")
        ax.set_xlabel(axis)
        ax.set_title(label)
    return True


def plot_oracle(ax_grid, out_dir):
    paths = glob.glob(os.path.join(out_dir, "oracle_compare_*.csv"))
    if not paths:
        return False
    rows = [r for p in paths for r in read_rows(p)]
    ax = ax_grid.flat[0]
    for col, name in [
        ("esw_greedy", "greedy"),
        ("esw_optimal", "exact optimum"),
        ("esw_full_top_k", "full assignment, top K"),
    ]:
        means = mean_by(rows, lambda r: int(r["size"]), lambda r: float(r[col]))
        sizes = sorted(means)
        ax.plot(sizes, [means[s] for s in sizes], marker="o", label=name)
    ax.set_xlabel("requesters")
    ax.set_title("expected social welfare")
    ax.legend()
    ax2 = ax_grid.flat[1]
    means = mean_by(rows, lambda r: int(r["size"]), lambda r: float(r["relative_gap"]))
    sizes = sorted(means)
    ax2.plot(sizes, [means[s] for s in sizes], marker="o")
    ax2.set_xlabel("requesters")
    ax2.set_title("relative welfare gap")
    return True


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("output_dir", help="directory holding experiment CSVs")
    parser.add_argument("--save", metavar="DIR", help="write PNGs instead of showing")
    args = parser.parse_args()

    if args.save:
        matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    drew_any = False
    for name, plotter, shape in [
        ("single_auction", plot_single_auction, (2, 3)),
        ("reselection", plot_reselection, (2, 3)),
        ("beta_sweep", plot_beta_sweep, (2, 3)),
        ("oracle_compare", plot_oracle, (1, 2)),
    ]:
        fig, axes = plt.subplots(*shape, figsize=(5 * shape[1], 4 * shape[0]))
        if plotter(axes, args.output_dir):
            fig.suptitle(name)
            fig.tight_layout()
            drew_any = True
            if args.save:
                os.makedirs(args.save, exist_ok=True)
                fig.savefig(os.path.join(args.save, f"{name}.png"), dpi=120)
        else:
            plt.close(fig)

    if not drew_any:
        print(f"no experiment CSVs found under {args.output_dir}", file=sys.stderr)
        return 1
    if not args.save:
        plt.show()
    return 0


if __name__ == "__main__":
    sys.exit(main())
