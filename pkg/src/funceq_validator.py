import logging
from typing import List, Optional, Sequence

from combinat import DecompType
from errors import InvalidInputError
from funceq import (
    SymmetryData,
    check_funceq,
    expected_symmetry_abelian,
    expected_symmetry_conjectural,
    expected_symmetry_DwA,
    expected_symmetry_inertia_factor,
    expected_symmetry_unramified,
)
from output_parser.verification_parser import (
    Severity,
    SymmetryPayload,
    Verdict,
    VerificationClaim,
    VerificationIssuePayload,
    VerificationReport,
)
from ratfunc import RatFunc
from zeta import ZetaResult, inertia_factor, zeta_ab

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


class FunctionalEquationValidator:
    """
    Verifica as equações funcionais F(p^-1, t^-1) = (-1)^a p^b t^c F(p, t)
    de W, de cada somando D_{w,A} e dos fatores auxiliares, acumulando
    afirmações e problemas num relatório.
    """

    def __init__(self, check_summands: bool = True):
        self.check_summands = check_summands
        self.claims: List[VerificationClaim] = []
        self.issues: List[VerificationIssuePayload] = []

    def _claim(self, subject: str, F: RatFunc, sym: SymmetryData, category: str):
        verdict = check_funceq(F, sym)
        self.claims.append(
            VerificationClaim(
                subject=subject,
                symmetry=SymmetryPayload(a=sym.a, b=sym.b, c=sym.c),
                verdict=Verdict.PASS if verdict else Verdict.FAIL,
            )
        )
        if not verdict:
            self.issues.append(
                VerificationIssuePayload(
                    severity=Severity.ERRO,
                    category=category,
                    subject=subject,
                    description='Equação funcional não se verifica com os dados de simetria esperados',
                    expected=str(tuple(sym)),
                )
            )

    def validate(self, result: ZetaResult) -> VerificationReport:
        """
        Verificação completa de um fator não ramificado.

        Args:
            result: saída de zeta_unramified (com somandos)

        Returns:
            VerificationReport com veredicto PASS se todas as afirmações valem
        """
        self.claims = []
        self.issues = []
        n, g = result.n, result.g
        logger.info(f'Iniciando verificação de equações funcionais para f={result.f}')

        self._claim(f'W f={",".join(map(str, result.f))}', result.W, expected_symmetry_unramified(n), 'fator_local')
        self._validate_auxiliary(result.f)
        if self.check_summands:
            for w, A, D in result.summands:
                self._claim(f'D w={w.letters} A={A.to_lists()}', D, expected_symmetry_DwA(n, g), 'somando')

        report = self._compile_report(result.f)
        logger.info(f'Verificação concluída: {len(self.claims)} afirmações, {len(self.issues)} problemas')
        return report

    def _validate_auxiliary(self, f: Sequence[int]):
        n, g = sum(f), len(f)
        inertia = expected_symmetry_inertia_factor(n, g)
        abelian = expected_symmetry_abelian(2 * n)
        self._claim('prod (1 - t^{2f_i})', inertia_factor(f), inertia, 'fator_auxiliar')
        self._claim(f'zeta_Z_p^{2 * n}', zeta_ab(2 * n), abelian, 'fator_auxiliar')
        composed = inertia.compose(abelian).compose(expected_symmetry_DwA(n, g))
        expected = expected_symmetry_unramified(n)
        # sinais só importam módulo 2
        if (composed.a - expected.a) % 2 or composed.b != expected.b or composed.c != expected.c:
            self.issues.append(
                VerificationIssuePayload(
                    severity=Severity.ERRO,
                    category='composicao',
                    subject='simetrias',
                    description='Composição das simetrias auxiliares e de D_{w,A} difere da simetria de W',
                    expected=str(tuple(expected)),
                    found=str(tuple(composed)),
                )
            )

    def conjectural_report(self, decomp: DecompType) -> VerificationReport:
        """Relatório exploratório para tipos ramificados: só os dados conjecturais"""
        if decomp.is_unramified():
            raise InvalidInputError('Tipo não ramificado: use validate')
        sym = expected_symmetry_conjectural(decomp)
        self.claims = []
        self.issues = [
            VerificationIssuePayload(
                severity=Severity.INFO,
                category='conjectura',
                subject=f'e={list(decomp.e)} f={list(decomp.f)}',
                description='Sem forma fechada para tipos ramificados; simetria conjectural apenas informativa',
                expected=str(tuple(sym)),
            )
        ]
        report = self._compile_report(decomp.f, decomp.n)
        report.exploratory = True
        return report

    def _compile_report(self, f: Sequence[int], n: Optional[int] = None) -> VerificationReport:
        failed = any(issue.severity is Severity.ERRO for issue in self.issues)
        return VerificationReport(
            f=list(f),
            n=sum(f) if n is None else n,
            claims=self.claims,
            issues=list(self.issues),
            verdict=Verdict.FAIL if failed else Verdict.PASS,
        )
