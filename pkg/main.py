"""
main.py — Punto de entrada de nervio

Uso:
  python main.py nerve --input data/examples/reference_category.json --trunc 3
  python main.py store-normalize --input data/examples/store_update_lookup.json
  python main.py schema --out schemas.json

Códigos de salida: 0 todo pasa, 1 un chequeo falla, 2 entrada inválida.
"""
import argparse
import json
import logging
import os
import sys

from dotenv import load_dotenv
load_dotenv()

from pydantic import ValidationError

from cli.commands import COMMANDS, run
from cli.schemas import Manifest

VERSION = "0.1.0"


def setup_logging(live_logs: bool) -> None:
    """Configura el nivel de logging según el modo de ejecución."""
    if live_logs:
        # Modo verbose: todo a stderr, stdout queda para el reporte
        logging.basicConfig(
            level=logging.DEBUG,
            format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
            handlers=[logging.StreamHandler(sys.stderr)],
        )
        return

    # Modo silencioso: todo a archivo, solo ERROR+ en consola
    log_file = os.getenv("NERVIO_LOG_FILE", "nervio.log")
    file_handler = logging.FileHandler(log_file, encoding="utf-8")
    file_handler.setLevel(logging.INFO)
    file_handler.setFormatter(logging.Formatter("%(asctime)s [%(levelname)s] %(name)s: %(message)s"))

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(logging.ERROR)
    console_handler.setFormatter(logging.Formatter("%(message)s"))

    logging.basicConfig(level=logging.DEBUG, handlers=[file_handler, console_handler])

    # hypothesis y pydantic no aportan nada en el log de una corrida
    for noisy in ["hypothesis", "pydantic"]:
        logging.getLogger(noisy).setLevel(logging.WARNING)


def write_report(report: dict, out) -> None:
    text = json.dumps(report, sort_keys=True, ensure_ascii=False, indent=2, default=str)
    if out:
        with open(out, "w", encoding="utf-8") as f:
            f.write(text + "\n")
    else:
        print(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description=f"nervio {VERSION} — banco de trabajo de teoría de categorías finita",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Comandos:
  validate, nerve, segal, categorify, kan, density, factorize, zigzag,
  pd-compose, free2, store-normalize, store-canonical, theta,
  operad-validate, operad-iso, strongly-regular, schema
        """,
    )
    parser.add_argument("command", choices=sorted(COMMANDS), help="Comando a ejecutar")
    parser.add_argument("--input", action="append", default=[], help="Archivo JSON de entrada (repetible)")
    parser.add_argument("--bound", type=int, default=None, help="Cota numérica (largo, profundidad, tamaños)")
    parser.add_argument("--trunc", type=int, default=None, help="Truncación N")
    parser.add_argument("--out", default=None, help="Archivo de salida (por defecto stdout)")
    parser.add_argument("--format", choices=["json"], default="json", help="Formato del reporte")
    parser.add_argument(
        "--livelogs",
        action="store_true",
        default=False,
        help="Mostrar logs en tiempo real en la consola",
    )
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(args.livelogs)
    logger = logging.getLogger("nervio")
    try:
        manifest = Manifest(
            command=args.command, inputs=args.input, bound=args.bound,
            trunc=args.trunc, out=args.out, format=args.format,
        )
    except ValidationError as exc:
        first = exc.errors()[0]
        write_report({"command": args.command, "ok": False, "error": f"{first['loc'][0]}: {first['msg']}"}, args.out)
        return 2
    logger.info(f"🚀 nervio {VERSION}: {manifest.command} {manifest.inputs}")
    code, report = run(manifest)
    write_report(report, manifest.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
