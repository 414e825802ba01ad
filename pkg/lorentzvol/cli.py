"""
Interfaz de línea de comandos: volumen, tabla, razón, asintótica y entropía.

Códigos de salida: 0 correcto, 2 uso/parámetros, 3 precisión (con --strict),
4 construcción agotada (se emiten los resultados parciales).
"""
import argparse
import logging
import sys
from typing import List, Optional

from .config import settings
from .exceptions import LorentzVolError
from .schemas.lorentz import parse_extended_real
from .schemas.output import OutputFormat, OutputRecord
from .services import report_service
from .utils.formatting import render

logger = logging.getLogger("lorentzvol.cli")

METHOD_ALIASES = {"mc": "monte-carlo"}
METHOD_CHOICES = ["auto", "recursion", "explicit", "integral", "product-q1", "dirichlet", "monte-carlo", "mc"]


def _extended(texto: str) -> float:
    try:
        return parse_extended_real(texto)
    except ValueError:
        raise argparse.ArgumentTypeError(f"valor no válido: {texto!r} (use un número, a/b o inf)")


def _extended_list(texto: str) -> List[float]:
    return [_extended(parte) for parte in texto.split(",") if parte.strip()]


def _int_list(texto: str) -> List[int]:
    try:
        return [int(parte) for parte in texto.split(",") if parte.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"lista de enteros no válida: {texto!r}")


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--bits", type=int, default=None, help="bits de mantisa (por defecto LORENTZVOL_BITS)")
    parser.add_argument("--strict", action="store_true", help="pérdida de precisión como error (salida 3)")
    parser.add_argument(
        "--format", choices=[f.value for f in OutputFormat], default=OutputFormat.TABLE.value
    )


def _add_mc(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--samples", type=int, default=None)
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--workers", type=int, default=None)


def _mc_config(args: argparse.Namespace):
    return report_service.build_mc_config(samples=args.samples, seed=args.seed, workers=args.workers)


def _precision(args: argparse.Namespace):
    return report_service.build_precision(args.bits, args.strict)


# ======================
# Comandos
# ======================

def cmd_volume(args: argparse.Namespace) -> OutputRecord:
    params = report_service.build_params(args.p, args.q)
    method = METHOD_ALIASES.get(args.method, args.method)
    return report_service.volume_report(args.n, params, method, _precision(args), _mc_config(args))


def cmd_table(args: argparse.Namespace) -> OutputRecord:
    method = METHOD_ALIASES.get(args.method, args.method)
    return report_service.table_report(args.p_list, args.n_max, args.q, _precision(args), method, _mc_config(args))


def cmd_ratio(args: argparse.Namespace) -> OutputRecord:
    return report_service.ratio_report(args.p, args.n_max, _precision(args))


def cmd_asymptotics(args: argparse.Namespace) -> OutputRecord:
    params = report_service.build_params(args.p, args.q)
    return report_service.asymptotics_report(params, args.n_max, _precision(args), _mc_config(args))


def cmd_entropy(args: argparse.Namespace) -> OutputRecord:
    seed = args.seed if args.seed is not None else 0
    if args.calibrate:
        return report_service.calibration_report(args.n_values, args.samples or 400, seed, _precision(args))
    if args.n is None:
        raise argparse.ArgumentTypeError("entropy requiere --n")
    if args.construct:
        if args.k is not None:
            return report_service.code_report(args.n, args.k, seed)
        if args.mu is not None and args.nu is not None:
            return report_service.packing_report(args.n, args.mu, args.nu, seed)
        raise argparse.ArgumentTypeError("--construct requiere --k o el par --mu/--nu")
    k_max = args.k_max if args.k_max is not None else 3 * args.n
    return report_service.entropy_curve_report(args.n, k_max, _precision(args))


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lorentzvol",
        description="Volúmenes de bolas unidad de Lorentz y experimentos de números de entropía.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    volume = sub.add_parser("volume", help="vol(B^n_{p,q})")
    volume.add_argument("--n", type=int, nargs="+", required=True)
    volume.add_argument("--p", type=_extended, required=True)
    volume.add_argument("--q", type=_extended, required=True)
    volume.add_argument("--method", choices=METHOD_CHOICES, default="auto")
    _add_mc(volume)
    _add_common(volume)
    volume.set_defaults(handler=cmd_volume)

    table = sub.add_parser("table", help="rejilla n x p de volúmenes")
    table.add_argument("--p-list", type=_extended_list, default=[0.5, 1.0, 2.0, 100.0])
    table.add_argument("--n-max", type=int, default=15)
    table.add_argument("--q", type=_extended, default=float("inf"))
    table.add_argument("--method", choices=METHOD_CHOICES, default="auto")
    _add_mc(table)
    _add_common(table)
    table.set_defaults(handler=cmd_table)

    ratio = sub.add_parser("ratio", help="R_{p,n} = vol(B_{p,inf})/vol(B_p)")
    ratio.add_argument("--p", type=_extended, required=True)
    ratio.add_argument("--n-max", type=int, required=True)
    _add_common(ratio)
    ratio.set_defaults(handler=cmd_ratio)

    asymptotics = sub.add_parser("asymptotics", help="vol^{1/n} normalizado")
    asymptotics.add_argument("--p", type=_extended, required=True)
    asymptotics.add_argument("--q", type=_extended, required=True)
    asymptotics.add_argument("--n-max", type=int, required=True)
    _add_mc(asymptotics)
    _add_common(asymptotics)
    asymptotics.set_defaults(handler=cmd_asymptotics)

    entropy = sub.add_parser("entropy", help="curvas de cotas, familias de códigos y empaquetamientos")
    entropy.add_argument("--n", type=int)
    entropy.add_argument("--k-max", type=int)
    entropy.add_argument("--construct", action="store_true")
    entropy.add_argument("--k", type=int)
    entropy.add_argument("--mu", type=int)
    entropy.add_argument("--nu", type=int)
    entropy.add_argument("--seed", type=int)
    entropy.add_argument("--calibrate", action="store_true")
    entropy.add_argument("--n-values", type=_int_list, default=[2, 3, 4])
    entropy.add_argument("--samples", type=int)
    _add_common(entropy)
    entropy.set_defaults(handler=cmd_entropy)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=settings.LOG_LEVEL,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        record = args.handler(args)
    except argparse.ArgumentTypeError as e:
        parser.error(str(e))
    except LorentzVolError as e:
        if e.record is not None:
            sys.stdout.write(render(e.record, args.format))
        logger.error("%s: %s", e.code, e.detail)
        return e.exit_code
    sys.stdout.write(render(record, args.format))
    return 0
