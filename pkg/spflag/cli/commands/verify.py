"""
Команда verify: запуск наборов проверок
"""
import argparse
from typing import Dict, List

from loguru import logger

from ..output import emit, render_csv, render_json
from ...config import RunConfig
from ...core.suites.base import SuiteReport
from ...core.suites.registry import resolve, suite_names


def register(subparsers, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("verify", parents=[common], help="Запустить наборы проверок")
    parser.add_argument("suite", help=f"Набор: {', '.join(suite_names())}")
    parser.set_defaults(handler=run)


def _record(reports: List[SuiteReport], config: RunConfig) -> None:
    from ...db.repo import DatabaseManager

    db_manager = DatabaseManager(config.db_path)
    with db_manager.get_session() as session:
        run_repo = db_manager.get_run_repo(session)
        for report in reports:
            run = run_repo.create_run(report, config)
            logger.info(f"Запуск {report.suite} сохранен: {run.id}")


def _payload(reports: List[SuiteReport], config: RunConfig) -> Dict[str, object]:
    return {
        "seed": config.seed,
        "trials": config.trials,
        "passed": all(r.passed for r in reports),
        "suites": [
            {"suite": r.suite, "passed": r.passed, "checks": [c.as_dict() for c in r.checks]}
            for r in reports
        ],
    }


def run(args: argparse.Namespace, config: RunConfig) -> int:
    reports = [suite.run() for suite in resolve(args.suite, config)]
    if config.format == "csv":
        rows = [dict(suite=r.suite, **c.as_dict()) for r in reports for c in r.checks]
        emit(render_csv(rows, ["suite", "name", "passed", "residual", "tolerance", "error", "detail"]), config.out)
    else:
        emit(render_json(_payload(reports, config)), config.out)
    if config.record:
        _record(reports, config)
    failed = [r.suite for r in reports if not r.passed]
    if failed:
        logger.warning(f"Не пройдены наборы: {', '.join(failed)}")
        return 1
    return 0
