"""
Команда trajectory: нормы и обменные члены вдоль exp(t g) Psi(0)
"""
import argparse

import numpy as np

from ..output import emit, render_csv, render_json
from ...config import RunConfig
from ...core.dynamics import random_state, trajectory
from ...core.quatmat import random_skew


def register(subparsers, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("trajectory", parents=[common], help="Эволюция случайного состояния")
    parser.add_argument("--n", type=int, default=3, help="Размер Sp(n)")
    parser.add_argument("--k", type=int, default=1, help="Число компонент системы")
    parser.add_argument("--t-max", type=float, default=10.0, help="Конечное время")
    parser.add_argument("--steps", type=int, default=100, help="Число шагов по t")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace, config: RunConfig) -> int:
    rng = np.random.default_rng(config.seed)
    gen = random_skew(rng, args.n)
    psi0 = random_state(rng, args.n, args.k)
    times = np.linspace(0.0, args.t_max, args.steps + 1)
    rows = trajectory(gen, psi0, times, config.workers)
    if config.format == "csv":
        emit(render_csv(rows), config.out)
    else:
        drift = max(abs(r["norm_sq"] - rows[0]["norm_sq"]) for r in rows)
        emit(render_json({"n": args.n, "k": args.k, "seed": config.seed, "norm_drift": drift, "rows": rows}), config.out)
    return 0
