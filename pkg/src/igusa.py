"""
Funções de Igusa I_h, I°_h e a função de Igusa generalizada I^wo_h,
indexada pelas cadeias de subconjuntos próprios de [h].
"""
import logging
from functools import lru_cache
from itertools import combinations
from typing import Dict, FrozenSet, Mapping, Sequence, Union

from combinat import at_inverse_p, at_one, gaussian_multinomial
from errors import InvalidInputError
from ratfunc import LaurentPoly, Monomial, RatFunc, expand_denominator, gp, rf_add, rf_mul

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

YSpec = Union[str, int]
Y_SYMBOLIC = 'Y'
Y_INVERSE_P = 'p^-1'


def _specialize(poly: LaurentPoly, y_spec: YSpec) -> LaurentPoly:
    if y_spec == Y_SYMBOLIC:
        return poly
    if y_spec == 1:
        return LaurentPoly.constant(at_one(poly))
    if y_spec == Y_INVERSE_P:
        return at_inverse_p(poly)
    raise InvalidInputError(f"Especialização de Y desconhecida: {y_spec!r} (use 'Y', 1 ou 'p^-1')")


def _as_monomial(x: Union[Monomial, LaurentPoly]) -> Monomial:
    if isinstance(x, Monomial):
        return x
    poly = LaurentPoly.coerce(x)
    if not poly.is_monomial() or poly.items()[0][1] != 1:
        raise InvalidInputError(f'Variável numérica não é monômio unitário: {x}')
    return poly.items()[0][0]


def _igusa_sum(h: int, y_spec: YSpec, X: Sequence[Monomial], circ: bool) -> RatFunc:
    if h < 1 or len(X) != h:
        raise InvalidInputError(f'I_{h} exige exatamente {h} variáveis, recebeu {len(X)}')
    xs = [_as_monomial(x) for x in X]
    denominator: Dict[Monomial, int] = {}
    for x in xs:
        denominator[x] = denominator.get(x, 0) + 1
    numerator = LaurentPoly()
    # sum_I binom(h, I) prod_{i in I} X_i prod_{i in [h-1] - I} (1 - X_i)
    for size in range(h):
        for I in combinations(range(1, h), size):
            term = _specialize(gaussian_multinomial(h, I), y_spec)
            chosen = Monomial.one()
            rest: Dict[Monomial, int] = {}
            for i in range(1, h):
                if i in I:
                    chosen = chosen * xs[i - 1]
                else:
                    rest[xs[i - 1]] = rest.get(xs[i - 1], 0) + 1
            numerator = numerator + term * chosen * expand_denominator(rest)
    if circ:
        numerator = numerator * xs[-1]
    return RatFunc(numerator, denominator)


def igusa_I(h: int, y_spec: YSpec, X: Sequence[Monomial]) -> RatFunc:
    """
    I_h(Y; X) = 1/(1 - X_h) sum_{I in [h-1]} binom(h, I)_Y prod_{i in I} X_i/(1 - X_i)

    Args:
        h: número de variáveis
        y_spec: 'Y' (simbólico), 1 ou 'p^-1'
        X: monômios X_1, ..., X_h

    Returns:
        Função racional canônica
    """
    return _igusa_sum(h, y_spec, X, circ=False)


def igusa_I_circ(h: int, y_spec: YSpec, X: Sequence[Monomial]) -> RatFunc:
    """I°_h(Y; X): como I_h, com fator inicial X_h/(1 - X_h)"""
    return _igusa_sum(h, y_spec, X, circ=True)


def subset_variables(h: int, prefix: str = 'X') -> Dict[FrozenSet[int], Monomial]:
    """Variáveis simbólicas X_I para I não vazio em [h] (nomes como X1, X12, X123)"""
    if h > 9:
        raise InvalidInputError('Nomes simbólicos só para h <= 9')
    variables = {}
    for size in range(1, h + 1):
        for I in combinations(range(1, h + 1), size):
            variables[frozenset(I)] = Monomial({prefix + ''.join(str(i) for i in I): 1})
    return variables


def igusa_wo(h: int, X_by_subset: Mapping[FrozenSet[int], Monomial]) -> RatFunc:
    """
    I^wo_h(X) = 1/(1 - X_[h]) sum_{cadeias y em P_h} prod_{I in y} X_I/(1 - X_I)

    A soma sobre cadeias é acumulada recursivamente: G(S) = 1 + sum_{S < T < [h]} <X_T> G(T).

    Raises:
        InvalidInputError: se faltar alguma das 2^h - 1 variáveis
    """
    if h < 1:
        raise InvalidInputError('h deve ser positivo')
    full = frozenset(range(1, h + 1))
    X = {frozenset(k): _as_monomial(v) for k, v in X_by_subset.items()}
    missing = [
        sorted(I)
        for size in range(1, h + 1)
        for I in map(frozenset, combinations(range(1, h + 1), size))
        if I not in X
    ]
    if missing:
        raise InvalidInputError(f'Variáveis ausentes para os subconjuntos {missing}')
    proper = sorted((I for I in X if I and I != full), key=lambda I: (len(I), sorted(I)))

    @lru_cache(maxsize=None)
    def chains_above(S: FrozenSet[int]) -> RatFunc:
        total = RatFunc.one()
        for T in proper:
            if S < T:
                total = rf_add(total, rf_mul(gp(X[T]), chains_above(T)))
        return total

    result = rf_mul(chains_above(frozenset()), RatFunc(1, {X[full]: 1}))
    logger.debug(f'I^wo_{h} calculada com {len(proper)} subconjuntos próprios')
    return result
