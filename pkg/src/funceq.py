"""
Verificação simbólica de equações funcionais sob (p, t) -> (p^{-1}, t^{-1}):
F(p^{-1}, t^{-1}) = (-1)^a p^b t^c F(p, t).
"""
import logging
from math import comb
from typing import Iterable, NamedTuple

from combinat import DecompType
from errors import InvalidInputError
from ratfunc import LaurentPoly, Monomial, RatFunc, rf_equal, rf_invert_vars

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


class SymmetryData(NamedTuple):
    a: int
    b: int
    c: int

    def compose(self, other: 'SymmetryData') -> 'SymmetryData':
        """Dados de simetria do produto de duas funções"""
        return SymmetryData(self.a + other.a, self.b + other.b, self.c + other.c)

    def factor(self) -> LaurentPoly:
        return LaurentPoly({Monomial({'p': self.b, 't': self.c}): (-1) ** self.a})


def check_funceq(F: RatFunc, sym: SymmetryData, variables: Iterable[str] = ('p', 't')) -> bool:
    if F.is_zero():
        raise InvalidInputError('Equação funcional indefinida para F = 0')
    inverted = rf_invert_vars(F, variables)
    expected = RatFunc(F.numerator * sym.factor(), F.denominator)
    verdict = rf_equal(inverted, expected)
    logger.debug(f'Equação funcional com simetria {tuple(sym)}: {verdict}')
    return verdict


def expected_symmetry_unramified(n: int) -> SymmetryData:
    if n < 1:
        raise InvalidInputError('n deve ser positivo')
    return SymmetryData(3 * n, comb(3 * n, 2), 5 * n)


def expected_symmetry_DwA(n: int, g: int) -> SymmetryData:
    if n < 1 or not 1 <= g <= n:
        raise InvalidInputError(f'Exige 1 <= g <= n, recebeu g={g}, n={n}')
    return SymmetryData(g + n, (5 * n * n - n) // 2, 5 * n)


def expected_symmetry_inertia_factor(n: int, g: int) -> SymmetryData:
    """prod_i (1 - t^{2 f_i})"""
    return SymmetryData(g, 0, -2 * n)


def expected_symmetry_abelian(d: int) -> SymmetryData:
    """zeta_{Z_p^d}"""
    return SymmetryData(d, comb(d, 2), d)


def expected_symmetry_conjectural(decomp: DecompType) -> SymmetryData:
    """Simetria conjectural para tipos ramificados; apenas informativa"""
    n = decomp.n
    shift = sum(2 * (e - 1) * f for e, f in zip(decomp.e, decomp.f))
    return SymmetryData(3 * n, comb(3 * n, 2), 5 * n + shift)
