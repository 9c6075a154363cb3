"""
Команда history: сохраненные запуски проверок
"""
import argparse

from ..output import emit, render_csv, render_json
from ...config import RunConfig
from ...db.repo import DatabaseManager


def register(subparsers, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("history", parents=[common], help="Журнал запусков из базы")
    parser.add_argument("--suite", default=None, help="Только указанный набор")
    parser.add_argument("--limit", type=int, default=20, help="Сколько последних запусков показать")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace, config: RunConfig) -> int:
    db_manager = DatabaseManager(config.db_path)
    with db_manager.get_session() as session:
        runs = db_manager.get_run_repo(session).get_all_runs(args.suite, args.limit)
        rows = [
            {
                "id": r.id,
                "suite": r.suite,
                "seed": r.seed,
                "passed": r.passed,
                "failed_checks": r.failed_checks,
                "total_checks": r.total_checks,
                "started_at": r.started_at.isoformat() if r.started_at else None,
            }
            for r in runs
        ]
    if config.format == "csv":
        emit(render_csv(rows, ["id", "suite", "seed", "passed", "failed_checks", "total_checks", "started_at"]), config.out)
    else:
        emit(render_json({"runs": rows}), config.out)
    return 0
