"""
Команда lb: таблица радиального решения на S^4
"""
import argparse

from loguru import logger

from ..output import emit, render_csv, render_json
from ...config import RunConfig
from ...core.s4lb import DEFAULT_GRID_SAMPLES, omega_grid, radial_solution, solution_table


def register(subparsers, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("lb", parents=[common], help="Радиальное решение f0 или g_l")
    parser.add_argument("--ell", type=float, required=True, help="l (неотрицательное полуцелое)")
    parser.add_argument("--N", type=int, default=0, help="Номер обрыва ряда")
    parser.add_argument("--samples", type=int, default=DEFAULT_GRID_SAMPLES, help="Число точек по omega")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace, config: RunConfig) -> int:
    f = radial_solution(args.ell, args.N)
    rows = solution_table(f, omega_grid(args.samples))
    metadata = {
        "ell": f.ell,
        "N": f.N,
        "kind": f.kind,
        "coefficients": list(f.coeffs),
        "theta_sq": f.theta_sq,
        "theta": f.theta,
        "residual_max_relative": max(r["residual"] for r in rows),
        "samples": len(rows),
    }
    if config.format == "csv":
        emit(render_csv(rows, ["omega", "value", "residual"]), config.out)
        if config.out:
            emit(render_json({"metadata": metadata}), config.out + ".meta.json")
        else:
            logger.info(f"Метаданные решения: {metadata}")
    else:
        emit(render_json({"metadata": metadata, "rows": rows}), config.out)
    return 0
