"""
Команда em: разложение p* psi на скалярный член, E и B
"""
import argparse

from ..output import emit, render_csv, render_json
from ...config import RunConfig
from ...core.emfield import apply_pstar, decompose, parse_field_spec


def register(subparsers, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("em", parents=[common], help="Поля E и B для полиномиального потенциала")
    parser.add_argument("--field", nargs="+", required=True, metavar="A<r>=POLY", help="Компоненты, например A1=x1")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace, config: RunConfig) -> int:
    psi = parse_field_spec(args.field)
    decomposition = decompose(psi)
    if config.format == "csv":
        d = decomposition.as_dict()
        rows = [{"quantity": "scalar", "axis": "", "value": d["scalar"]}]
        for name in ("E", "B"):
            rows += [{"quantity": name, "axis": axis, "value": v} for axis, v in zip("123", d[name])]
        emit(render_csv(rows), config.out)
    else:
        emit(render_json({
            "field": psi.as_strings(),
            "pstar": apply_pstar(psi).as_strings(),
            "decomposition": decomposition.as_dict(),
        }), config.out)
    return 0
