"""Command-line driver for simulate / optimize / bench workflows.

Reports are JSON (bench also speaks CSV).  Exit codes: 0 on success, 2 for
input problems (bad flags, malformed files, inconsistent sizes), 3 when a
request exceeds the dense-size resource limits.  Physics fields in a report
are deterministic for a fixed configuration and seed; wall-time fields are
not.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from statistics import median

import numpy as np

from . import _kernels
from .distributed import simulate_qaoa_distributed
from .mixers import Mixer
from .optimize import optimize_parameters
from .problems import load_graph, labs_terms, maxcut_terms, triangle_graph
from .qaoa import QaoaParams, QaoaSimulator
from .statevec import expectation, hamming_weight_state
from .terms import TermPolynomial, load_terms

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_RESOURCE = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fastqaoa",
        description="QAOA state-vector simulation with a precomputed cost diagonal",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--problem", choices=["maxcut", "maxcut-triangle", "labs"],
                       help="builtin problem family")
        p.add_argument("--terms-file", help="JSON spin-polynomial file")
        p.add_argument("--graph-file", help="edge-list file for maxcut")
        p.add_argument("--n", type=int, help="problem size (labs, or to override a graph)")
        p.add_argument("--p", default="0",
                       help="number of layers (bench accepts a comma list)")
        p.add_argument("--gamma", help="phase angles: comma-separated or @file")
        p.add_argument("--beta", help="mixer angles: comma-separated or @file")
        p.add_argument("--mixer", default="x", choices=["x", "xy-ring", "xy-complete"])
        p.add_argument("--workers", type=int, default=1, metavar="K",
                       help="logical worker count (power of two)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--output", help="write the report here instead of stdout")
        p.add_argument("--format", choices=["json", "csv"], default="json")

    sim = sub.add_parser("simulate", help="run one circuit and report observables")
    add_common(sim)

    opt = sub.add_parser("optimize", help="locally optimize the layer angles")
    add_common(opt)
    opt.add_argument("--budget", type=int, default=500,
                     help="maximum objective evaluations")
    opt.add_argument("--tolerance", type=float, default=1e-6,
                     help="simplex-diameter stopping threshold")

    bench = sub.add_parser("bench", help="time simulation across layer counts")
    add_common(bench)
    bench.add_argument("--repeats", type=int, default=3,
                       help="timing repeats per row (median is reported)")
    return parser


def _parse_angles(raw: str | None, p: int, name: str) -> list[float]:
    if raw is None:
        raise ValueError(f"--{name} is required when p > 0")
    if raw.startswith("@"):
        with open(raw[1:]) as fh:
            text = fh.read()
        fields = text.replace(",", " ").split()
    else:
        fields = [f for f in raw.split(",") if f]
    values = [float(f) for f in fields]
    if len(values) != p:
        raise ValueError(f"--{name} has {len(values)} values but p = {p}")
    return values


def _resolve_problem(args) -> TermPolynomial:
    sources = [
        args.problem is not None,
        args.terms_file is not None,
        args.graph_file is not None and args.problem is None,
    ]
    if sum(sources) != 1:
        raise ValueError(
            "pass exactly one problem source: --problem, --terms-file, or --graph-file"
        )
    if args.terms_file:
        return load_terms(args.terms_file)
    if args.problem == "maxcut-triangle":
        return maxcut_terms(triangle_graph())
    if args.problem == "labs":
        if args.n is None:
            raise ValueError("--problem labs requires --n")
        return labs_terms(args.n)
    if args.problem == "maxcut" and not args.graph_file:
        raise ValueError("--problem maxcut requires --graph-file")
    return maxcut_terms(load_graph(args.graph_file, n=args.n))


def _initial_for(mixer: Mixer, n: int) -> np.ndarray | None:
    # XY mixers conserve popcount, so start them in the half-filled sector.
    if mixer.preserves_hamming_weight:
        return hamming_weight_state(n, n // 2)
    return None


def _single_p(args) -> int:
    try:
        return int(args.p)
    except ValueError as exc:
        raise ValueError(f"--p must be a single integer here, got {args.p!r}") from exc


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _json_report(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True)


def cmd_simulate(args) -> int:
    poly = _resolve_problem(args)
    p = _single_p(args)
    gammas = _parse_angles(args.gamma, p, "gamma") if p else []
    betas = _parse_angles(args.beta, p, "beta") if p else []
    mixer = Mixer.parse(args.mixer)
    initial = _initial_for(mixer, poly.n)

    _kernels.warm_up()
    t0 = time.perf_counter()
    sim = QaoaSimulator(terms=poly, mixer=mixer)
    precompute_s = time.perf_counter() - t0

    if args.workers > 1:
        t0 = time.perf_counter()
        dist = simulate_qaoa_distributed(
            sim.get_cost_diagonal(), QaoaParams(tuple(gammas), tuple(betas)),
            args.workers, mixer=mixer, initial=initial,
        )
        layer_s = time.perf_counter() - t0
        exp_value = dist.expectation()
        ovl_value = dist.overlap()
        costs = dist.costs
    else:
        t0 = time.perf_counter()
        result = sim.simulate_qaoa(gammas, betas, initial=initial)
        layer_s = time.perf_counter() - t0
        exp_value = sim.get_expectation(result)
        ovl_value = sim.get_overlap(result)
        costs = sim.get_cost_diagonal()

    payload = {
        "n": poly.n,
        "p": p,
        "mixer": mixer.kind,
        "expectation": exp_value,
        "overlap": ovl_value,
        "min_cost": float(costs.min()),
        "wall_time_precompute_s": precompute_s,
        "wall_time_per_layer_s": layer_s / p if p else 0.0,
    }
    _emit(_json_report(payload), args.output)
    return EXIT_OK


def cmd_optimize(args) -> int:
    poly = _resolve_problem(args)
    p = _single_p(args)
    if p < 1:
        raise ValueError("optimization needs at least one layer (--p >= 1)")
    mixer = Mixer.parse(args.mixer)
    initial = _initial_for(mixer, poly.n)

    if args.gamma is not None or args.beta is not None:
        init = QaoaParams(
            tuple(_parse_angles(args.gamma, p, "gamma")),
            tuple(_parse_angles(args.beta, p, "beta")),
        )
    else:
        rng = np.random.default_rng(args.seed)
        init = QaoaParams(tuple(rng.uniform(0.0, 0.1, p)), tuple(rng.uniform(0.0, 0.1, p)))

    sim = QaoaSimulator(terms=poly, mixer=mixer)
    costs = sim.get_cost_diagonal()

    def objective(params: QaoaParams) -> float:
        result = sim.simulate_qaoa(params.gammas, params.betas, initial=initial)
        return expectation(result.state, costs)

    report = optimize_parameters(objective, init, budget=args.budget,
                                 tolerance=args.tolerance)
    payload = {
        "n": poly.n,
        "p": p,
        "mixer": mixer.kind,
        "seed": args.seed,
        **report.to_json_dict(),
    }
    _emit(_json_report(payload), args.output)
    return EXIT_OK


def cmd_bench(args) -> int:
    poly = _resolve_problem(args)
    try:
        p_list = [int(f) for f in str(args.p).split(",") if f]
    except ValueError as exc:
        raise ValueError(f"--p must be a comma list of integers, got {args.p!r}") from exc
    if not p_list or any(p < 1 for p in p_list):
        raise ValueError("bench needs --p with positive layer counts")
    mixer = Mixer.parse(args.mixer)
    initial = _initial_for(mixer, poly.n)
    rng = np.random.default_rng(args.seed)

    _kernels.warm_up()
    t0 = time.perf_counter()
    sim = QaoaSimulator(terms=poly, mixer=mixer)
    precompute_s = time.perf_counter() - t0
    # One untimed run so first-use effects stay out of the medians.
    sim.simulate_qaoa([0.1], [0.1], initial=initial)

    rows = []
    for p in p_list:
        gammas = rng.uniform(0.0, 1.0, p)
        betas = rng.uniform(0.0, 1.0, p)
        samples = []
        for _ in range(max(3, args.repeats)):
            t0 = time.perf_counter()
            sim.simulate_qaoa(gammas, betas, initial=initial)
            samples.append(time.perf_counter() - t0)
        total_s = median(samples)
        rows.append({
            "p": p,
            "total_s": total_s,
            "per_layer_s": total_s / p,
            "precompute_s": precompute_s,
        })

    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=["p", "total_s", "per_layer_s", "precompute_s"])
        writer.writeheader()
        writer.writerows(rows)
        _emit(buf.getvalue(), args.output)
    else:
        _emit(_json_report({"n": poly.n, "mixer": mixer.kind, "rows": rows}), args.output)
    return EXIT_OK


_COMMANDS = {
    "simulate": cmd_simulate,
    "optimize": cmd_optimize,
    "bench": cmd_bench,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except MemoryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
