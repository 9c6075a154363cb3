"""
Команда roots: корни sp(n) и их проекции
"""
import argparse

from ..output import emit, render_csv, render_json
from ...config import RunConfig
from ...core.roots import generate, root_table


def register(subparsers, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("roots", parents=[common], help="Система корней sp(n)")
    parser.add_argument("--n", type=int, required=True, help="Ранг")
    parser.add_argument("--projection", type=int, choices=(2, 3), default=None, help="Проекция на первые оси")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace, config: RunConfig) -> int:
    system = generate(args.n)
    rows = root_table(system, args.projection)
    if config.format == "csv":
        emit(render_csv(rows), config.out)
    else:
        emit(render_json({"n": system.n, "count": len(system), "roots": rows}), config.out)
    return 0
