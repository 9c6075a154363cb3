"""
Точка входа командной строки spflag

Коды выхода: 0 - все проверки пройдены, 1 - есть проваленные проверки,
2 - ошибка использования, 3 - ошибка предметной области.
"""
import argparse
import os
import sys
from typing import List, Optional

from loguru import logger

from .commands import em, history, lb, roots, trajectory, verify
from ..config import build_config
from ..core.errors import DomainError, UsageError

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3

COMMANDS = (verify, lb, roots, em, trajectory, history)


def common_arguments() -> argparse.ArgumentParser:
    """Флаги, общие для всех команд"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="Сид генератора (SPFLAG_SEED)")
    common.add_argument("--trials", type=int, default=None, help="Число случайных испытаний (SPFLAG_TRIALS)")
    common.add_argument("--workers", type=int, default=None, help="Число потоков (SPFLAG_WORKERS)")
    common.add_argument("--tol", action="append", default=[], metavar="KEY=VAL", help="Переопределить допуск")
    common.add_argument("--format", choices=("json", "csv"), default=None, help="Формат вывода")
    common.add_argument("--out", default=None, help="Файл вывода (по умолчанию stdout)")
    common.add_argument("--record", action="store_true", default=None, help="Сохранить результаты в базу")
    common.add_argument("--db", dest="db_path", default=None, help="Путь к базе SQLite (SPFLAG_DB)")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spflag", description="Проверка тождеств кватернионной геометрии Sp(n)")
    subparsers = parser.add_subparsers(dest="command", required=True)
    common = common_arguments()
    for command in COMMANDS:
        command.register(subparsers, common)
    return parser


def setup_logging() -> None:
    logger.remove()
    logger.add(sys.stderr, level=os.getenv("SPFLAG_LOG_LEVEL", "INFO"))


def main(argv: Optional[List[str]] = None) -> int:
    setup_logging()
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    try:
        config = build_config(
            seed=args.seed,
            trials=args.trials,
            workers=args.workers,
            tol=args.tol,
            format=args.format,
            out=args.out,
            record=args.record,
            db_path=args.db_path,
        )
        return args.handler(args, config)
    except UsageError as e:
        logger.error(f"Ошибка использования: {e}")
        return EXIT_USAGE
    except DomainError as e:
        logger.error(f"Ошибка предметной области: {e}")
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
