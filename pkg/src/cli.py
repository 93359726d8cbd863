"""
Interface de linha de comando.

Subcomandos: compute, series, verify, oracle, dyck, igusa.
Códigos de saída: 0 sucesso, 1 falha de verificação, 2 erro de uso,
3 limite de recursos excedido.
"""
import argparse
import json
import logging
import sys
from typing import Optional, Sequence

from combinat import DecompType, parse_composition
from config import get_settings
from errors import ConsistencyError, InvalidInputError, ResourceLimitError
from funceq_validator import FunctionalEquationValidator
from igusa import Y_INVERSE_P, Y_SYMBOLIC, igusa_I, igusa_I_circ, igusa_wo, subset_variables
from output_parser.oracle_parser import OracleMethod
from output_parser.ratfunc_parser import RatFuncPayload, SeriesPayload
from output_parser.verification_parser import Verdict
from ratfunc import Monomial, RatFunc
from results_database import ZetaDatabase
from zeta_calculator import ZetaCalculator

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


class UsageError(Exception):
    """Opção inválida; a mensagem nomeia a flag"""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _composition(flag: str, text: Optional[str]):
    if text is None:
        return None
    try:
        return parse_composition(text)
    except InvalidInputError as exc:
        raise UsageError(f'{flag}: {exc}') from exc


def _decomp(args) -> DecompType:
    f = _composition('--f', args.f)
    e = _composition('--e', args.e)
    if e is None:
        e = tuple(1 for _ in f)
    if len(e) != len(f):
        raise UsageError(f'--e: esperava {len(f)} entradas, recebeu {len(e)}')
    return DecompType(e, f)


def _text(value: RatFunc) -> str:
    den = ' '.join(
        f'(1 - {factor.m})' + (f'^{factor.multiplicity}' if factor.multiplicity > 1 else '')
        for factor in value.factors()
    )
    return f'({value.numerator})' + (f' / {den}' if den else '')


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog='heisenberg-zeta', description='Fatores zeta locais normais de grupos de Heisenberg')
    parser.add_argument('--threads', type=int, default=None, help='Número de processos de trabalho (padrão: ZETA_THREADS)')
    parser.add_argument('--cache', action='store_true', help='Usa o banco de resultados (ZETA_DB_PATH)')
    sub = parser.add_subparsers(dest='command', required=True, parser_class=_Parser)

    compute = sub.add_parser('compute', help='Fator W^ para um primo não ramificado')
    compute.add_argument('--f', required=True, help='Graus de inércia, ex.: 2,2')
    compute.add_argument('--e', default=None, help='Índices de ramificação (apenas 1s)')
    compute.add_argument('--format', choices=['json', 'latex', 'text'], default='json')
    compute.add_argument('--latex-style', choices=['frac', 'bracket', 'zeta'], default='frac', dest='latex_style')
    compute.add_argument('--summands', action='store_true', help='Inclui os somandos D_{w,A}')

    series = sub.add_parser('series', help='Série truncada do fator local')
    series.add_argument('--f', required=True)
    series.add_argument('--e', default=None)
    series.add_argument('--order', type=int, required=True)
    series.add_argument('--p', type=int, default=None, help='Avalia os coeficientes em p')
    series.add_argument('--format', choices=['json', 'text'], default='json')

    verify = sub.add_parser('verify', help='Equações funcionais de W e dos somandos')
    verify.add_argument('--f', required=True)
    verify.add_argument('--e', default=None)
    verify.add_argument('--no-summands', action='store_true', dest='no_summands')
    verify.add_argument('--format', choices=['json', 'text'], default='json')

    oracle = sub.add_parser('oracle', help='Contagem de ideais por força bruta')
    oracle.add_argument('--f', required=True)
    oracle.add_argument('--e', default=None)
    oracle.add_argument('--p', type=int, required=True)
    oracle.add_argument('--max-k', type=int, required=True, dest='max_k')
    oracle.add_argument('--method', choices=[m.value for m in OracleMethod], default=OracleMethod.LAYERED.value)
    oracle.add_argument('--format', choices=['json', 'csv', 'text'], default='json')

    dyck = sub.add_parser('dyck', help='Palavras de Dyck de comprimento 2n')
    dyck.add_argument('--n', type=int, required=True)
    dyck.add_argument('--f', default=None, help='Lista também as partições compatíveis com f')
    dyck.add_argument('--format', choices=['json', 'text'], default='text')

    igusa = sub.add_parser('igusa', help='Funções de Igusa em variáveis simbólicas X')
    igusa.add_argument('--h', type=int, required=True)
    igusa.add_argument('--kind', choices=['I', 'circ', 'wo'], default='I')
    igusa.add_argument('--y', choices=[Y_SYMBOLIC, '1', Y_INVERSE_P], default=Y_SYMBOLIC)
    igusa.add_argument('--format', choices=['json', 'latex', 'text'], default='latex')
    return parser


def _compute(args, calculator: ZetaCalculator) -> int:
    decomp = _decomp(args)
    if not decomp.is_unramified():
        raise UsageError('--e: tipos ramificados não têm forma fechada; use series ou oracle')
    style = args.latex_style if args.format != 'text' else None
    payload = calculator.compute(decomp.f, latex_style=style, with_summands=args.summands)
    if args.format == 'json':
        print(payload.model_dump_json(indent=2))
    elif args.format == 'latex':
        print(payload.W.latex)
    else:
        print(_text(payload.W.to_ratfunc()))
    return EXIT_OK


def _series(args, calculator: ZetaCalculator) -> int:
    decomp = _decomp(args)
    if args.order < 0:
        raise UsageError('--order: deve ser não negativo')
    series = calculator.series(decomp, args.order)
    if args.format == 'json':
        print(SeriesPayload.from_series(series, args.p).model_dump_json(indent=2))
    elif args.p is not None:
        for k, value in enumerate(series.evaluate(args.p)):
            print(f'{k}\t{value}')
    else:
        for k, coeff in enumerate(series.coeffs):
            print(f'{k}\t{coeff}')
    return EXIT_OK


def _verify(args, calculator: ZetaCalculator) -> int:
    decomp = _decomp(args)
    validator = FunctionalEquationValidator(check_summands=not args.no_summands)
    if decomp.is_unramified():
        report = validator.validate(calculator.result(decomp.f))
    else:
        report = validator.conjectural_report(decomp)
    if args.format == 'json':
        print(report.model_dump_json(indent=2))
    else:
        for claim in report.claims:
            sym = claim.symmetry
            print(f'{claim.verdict.value.upper()}\t({sym.a}, {sym.b}, {sym.c})\t{claim.subject}')
        for issue in report.issues:
            print(f'{issue.severity.value}\t{issue.description}\t{issue.expected or ""}')
        print(f'veredicto: {report.verdict.value}')
    if calculator.store is not None:
        calculator.store.save_verification(report)
    return EXIT_OK if report.verdict is Verdict.PASS else EXIT_VERIFICATION_FAILED


def _oracle(args, calculator: ZetaCalculator) -> int:
    decomp = _decomp(args)
    if args.max_k < 0:
        raise UsageError('--max-k: deve ser não negativo')
    report = calculator.oracle_report(decomp, args.p, args.max_k, OracleMethod(args.method))
    if args.format == 'json':
        print(report.model_dump_json(indent=2))
    elif args.format == 'csv':
        sys.stdout.write(report.to_csv())
    else:
        for row in report.counts:
            print(f'k={row.k}\t{row.count}\t(série: {row.expected})')
    if report.verdict is Verdict.FAIL and not report.exploratory:
        return EXIT_VERIFICATION_FAILED
    return EXIT_OK


def _dyck(args, calculator: ZetaCalculator) -> int:
    if args.n < 1:
        raise UsageError('--n: deve ser positivo')
    f = _composition('--f', args.f)
    if f is not None and sum(f) != args.n:
        raise UsageError(f'--f: soma {sum(f)} difere de --n {args.n}')
    table = calculator.dyck_table(args.n, f)
    if args.format == 'json':
        print(json.dumps([row.model_dump() for row in table], indent=2))
    else:
        for row in table:
            extra = f'\t{row.compatible_partitions}' if f is not None else ''
            print(f'{row.word}\tL={row.L}\tM={row.M}{extra}')
    return EXIT_OK


def _igusa(args, calculator: ZetaCalculator) -> int:
    if not 1 <= args.h <= 9:
        raise UsageError('--h: use 1 <= h <= 9')
    y_spec = 1 if args.y == '1' else args.y
    if args.kind == 'wo':
        value = igusa_wo(args.h, subset_variables(args.h))
    else:
        xs = [Monomial({f'X{i}': 1}) for i in range(1, args.h + 1)]
        builder = igusa_I if args.kind == 'I' else igusa_I_circ
        value = builder(args.h, y_spec, xs)
    if args.format == 'json':
        print(RatFuncPayload.from_ratfunc(value, 'bracket').model_dump_json(indent=2))
    elif args.format == 'latex':
        print(value.to_latex('bracket'))
    else:
        print(_text(value))
    return EXIT_OK


COMMANDS = {
    'compute': _compute,
    'series': _series,
    'verify': _verify,
    'oracle': _oracle,
    'dyck': _dyck,
    'igusa': _igusa,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Executa um subcomando e devolve o código de saída"""
    store = None
    try:
        args = build_parser().parse_args(argv)
        if args.threads is not None and args.threads < 1:
            raise UsageError('--threads: deve ser pelo menos 1')
        if args.cache:
            store = ZetaDatabase(get_settings().db_path)
        calculator = ZetaCalculator(store=store, threads=args.threads)
        return COMMANDS[args.command](args, calculator)
    except UsageError as exc:
        print(f'erro de uso: {exc}', file=sys.stderr)
        return EXIT_USAGE
    except InvalidInputError as exc:
        print(f'entrada inválida: {exc}', file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f'limite de recursos: {exc} (estimativa={exc.estimate}, limite={exc.limit})', file=sys.stderr)
        return EXIT_RESOURCE
    except ConsistencyError as exc:
        logger.error(f'Inconsistência entre cálculos: {exc}')
        return EXIT_VERIFICATION_FAILED
    finally:
        if store is not None:
            store.close()


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == '__main__':
    main()
