"""
Contagem de subgrupos em p-grupos abelianos finitos: fórmula de Birkhoff
simbólica em p, a contagem por força bruta correspondente e as duas
fatorações por blocos da fórmula de Birkhoff.
"""
import logging
from collections import Counter
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from sympy import ZZ, isprime, multiplicity
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors

from combinat import (
    Partition,
    pair_decomposition,
    at_inverse_p,
    dual_partition,
    gaussian_binomial,
    gaussian_multinomial,
    jump_sets,
    successive_differences,
)
from config import get_settings
from errors import ConsistencyError, InvalidInputError, ResourceLimitError
from ratfunc import LaurentPoly, Monomial

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

P = Monomial({'p': 1})


def _birkhoff_factor(k: int, lam_dual: Partition, mu_dual: Partition) -> LaurentPoly:
    """p^{mu'_k (lambda'_k - mu'_k)} binom(lambda'_k - mu'_{k+1}, lambda'_k - mu'_k)_{p^{-1}}"""
    lk, mk, mk1 = lam_dual.at(k), mu_dual.at(k), mu_dual.at(k + 1)
    binom = at_inverse_p(gaussian_binomial(lk - mk1, lk - mk))
    return binom * LaurentPoly.monomial(P ** (mk * (lk - mk)))


def _birkhoff_range(lo: int, hi: int, lam: Partition, mu: Partition) -> LaurentPoly:
    """Produto dos fatores de Birkhoff para k em ]lo, hi]"""
    lam_dual, mu_dual = dual_partition(lam), dual_partition(mu)
    result = LaurentPoly.constant(1)
    for k in range(lo + 1, hi + 1):
        result = result * _birkhoff_factor(k, lam_dual, mu_dual)
    return result


def alpha(lam: Partition, mu: Partition) -> LaurentPoly:
    """
    Número alpha(lambda, mu; p) de subgrupos de tipo mu num p-grupo abeliano
    de tipo lambda, como polinômio em p.

    Raises:
        InvalidInputError: se mu não é dominado por lambda
        ConsistencyError: se o resultado não é um polinômio com coeficientes
            não negativos
    """
    if not mu.dominated_by(lam):
        raise InvalidInputError(f'Par não dominado: mu={mu.parts}, lambda={lam.parts}')
    value = _birkhoff_range(0, lam.at(1), lam, mu)
    if not value.is_zero() and (value.min_exponent('p') < 0 or any(c < 0 for _, c in value.items())):
        raise ConsistencyError(f'alpha({lam.parts}, {mu.parts}) não é polinômio positivo em p: {value}')
    return value


def elementary_divisor_exponents(rows: Sequence[Sequence[int]], prime: int) -> List[int]:
    """
    Expoentes p-ádicos dos fatores invariantes (não nulos) de uma matriz
    inteira, em ordem não crescente.
    """
    if not rows or not rows[0]:
        return []
    matrix = DomainMatrix([[ZZ(int(x)) for x in row] for row in rows], (len(rows), len(rows[0])), ZZ)
    exponents = []
    for value in invariant_factors(matrix):
        value = int(value)
        if value == 0:
            raise InvalidInputError('Matriz de posto incompleto: fator invariante nulo')
        exponents.append(multiplicity(prime, value))
    return sorted(exponents, reverse=True)


def hnf_contains(columns: List[List[int]], exponents: List[int], prime: int, vector: List[int]) -> bool:
    """Pertinência por retrossubstituição numa base triangular superior"""
    v = list(vector)
    for i in range(len(columns) - 1, -1, -1):
        pivot = prime ** exponents[i]
        if v[i] % pivot:
            return False
        x = v[i] // pivot
        if x:
            col = columns[i]
            for row in range(i + 1):
                v[row] -= x * col[row]
    return all(x == 0 for x in v)


def _solve_upper(columns: List[List[int]], vector: List[int]) -> List[int]:
    size = len(columns)
    v = list(vector)
    x = [0] * size
    for i in range(size - 1, -1, -1):
        x[i] = v[i] // columns[i][i]
        for row in range(i + 1):
            v[row] -= x[i] * columns[i][row]
    return x


def _quotient_type(columns: List[List[int]], lam: Partition, prime: int) -> Tuple[int, ...]:
    """Tipo de Lambda / diag(p^lambda) via forma de Smith de B^{-1} D"""
    n = len(lam)
    if n == 0:
        return ()
    images = [_solve_upper(columns, [prime ** lam.at(j + 1) if row == j else 0 for row in range(n)]) for j in range(n)]
    rows = [[images[j][i] for j in range(n)] for i in range(n)]
    exponents = elementary_divisor_exponents(rows, prime)
    return tuple(exponents + [0] * (n - len(exponents)))


def _check_order(lam: Partition, prime: int):
    if not isprime(prime):
        raise InvalidInputError(f'{prime} não é primo')
    order = prime ** lam.size()
    limit = get_settings().bruteforce_max_order
    if order > limit:
        raise ResourceLimitError(
            f'Grupo de ordem {order} excede o limite de força bruta ({limit})', estimate=order, limit=limit
        )


@lru_cache(maxsize=256)
def _census(parts: Tuple[int, ...], prime: int) -> Tuple[Tuple[Tuple[int, ...], int], ...]:
    lam = Partition(parts)
    n = len(parts)
    histogram: Counter = Counter()

    def extend(columns: List[List[int]], exponents: List[int]):
        j = len(columns)
        if j == n:
            histogram[_quotient_type(columns, lam, prime)] += 1
            return
        for a in range(lam.at(j + 1) + 1):
            for upper in _upper_entries(exponents, prime):
                col = list(upper) + [prime ** a] + [0] * (n - j - 1)
                cols = columns + [col]
                exps = exponents + [a]
                target = [0] * n
                target[j] = prime ** lam.at(j + 1)
                if hnf_contains(cols, exps, prime, target):
                    extend(cols, exps)

    extend([], [])
    return tuple(sorted(histogram.items()))


def _upper_entries(exponents: List[int], prime: int):
    if not exponents:
        yield ()
        return
    for head in _upper_entries(exponents[:-1], prime):
        for value in range(prime ** exponents[-1]):
            yield head + (value,)


def subgroup_census(lam: Partition, prime: int) -> Dict[Tuple[int, ...], int]:
    """
    Histograma completo dos tipos de subgrupos de (+) Z/p^{lambda_i}.

    Cada subgrupo corresponde a um único reticulado intermediário
    diag(p^lambda) Z^n <= Lambda <= Z^n em forma de Hermite por colunas,
    com entradas reduzidas módulo o pivô da linha.

    Raises:
        ResourceLimitError: se p^{|lambda|} excede o limite configurado
    """
    _check_order(lam, prime)
    logger.debug(f'Enumerando subgrupos de tipo {lam.parts} para p={prime}')
    return dict(_census(lam.parts, prime))


def alpha_bruteforce(lam: Partition, mu: Partition, prime: int) -> int:
    if not mu.dominated_by(lam):
        raise InvalidInputError(f'Par não dominado: mu={mu.parts}, lambda={lam.parts}')
    return subgroup_census(lam, prime).get(mu.parts, 0)


def mu_split_sides(lam: Partition, mu: Partition, i: int) -> Tuple[LaurentPoly, LaurentPoly]:
    """
    Lados esquerdo e direito da fatoração do bloco i de mu:
    prod_{k in ]lambda_{L_i+1}, mu_{M_{i-1}+1}]} (fator de Birkhoff) =
    prod_j p^{(M_{i-1}+j)(L_i-M_{i-1}-j) r_{M_{i-1}+j}} binom(M_i-M_{i-1}, J^mu_i) binom(L_i-M_{i-1}, L_i-M_i).
    """
    blocks = pair_decomposition(mu, lam)
    if not 1 <= i <= blocks.r:
        raise InvalidInputError(f'Bloco {i} fora de [1, {blocks.r}]')
    Li, Mi, Mp = blocks.L_at(i), blocks.M_at(i), blocks.M_at(i - 1)
    lhs = _birkhoff_range(lam.at(Li + 1), mu.at(Mp + 1), lam, mu)
    r, _ = successive_differences(mu, lam)
    J_mu, _ = jump_sets(mu, lam)
    exponent = sum((Mp + j) * (Li - Mp - j) * r[Mp + j - 1] for j in range(1, Mi - Mp + 1))
    rhs = (
        LaurentPoly.monomial(P ** exponent)
        * at_inverse_p(gaussian_multinomial(Mi - Mp, J_mu[i - 1]))
        * at_inverse_p(gaussian_binomial(Li - Mp, Li - Mi))
    )
    return lhs, rhs


def lambda_split_sides(lam: Partition, mu: Partition, i: int) -> Tuple[LaurentPoly, LaurentPoly]:
    """
    prod_{k in ]mu_{M_{i-1}+1}, lambda_{L_{i-1}+1}]} (fator de Birkhoff) =
    prod_j p^{M_{i-1}(L_{i-1}-M_{i-1}+j) s_{L_{i-1}+j}}.
    """
    blocks = pair_decomposition(mu, lam)
    if not 1 <= i <= blocks.r:
        raise InvalidInputError(f'Bloco {i} fora de [1, {blocks.r}]')
    Li, Lp, Mp = blocks.L_at(i), blocks.L_at(i - 1), blocks.M_at(i - 1)
    lhs = _birkhoff_range(mu.at(Mp + 1), lam.at(Lp + 1), lam, mu)
    _, s = successive_differences(mu, lam)
    exponent = sum(Mp * (Lp - Mp + j) * s[Lp + j - 1] for j in range(1, Li - Lp + 1))
    return lhs, LaurentPoly.monomial(P ** exponent)


def check_mu_split(lam: Partition, mu: Partition, i: int) -> bool:
    lhs, rhs = mu_split_sides(lam, mu, i)
    return lhs == rhs


def check_lambda_split(lam: Partition, mu: Partition, i: int) -> bool:
    lhs, rhs = lambda_split_sides(lam, mu, i)
    return lhs == rhs


def alpha_by_blocks(lam: Partition, mu: Partition) -> LaurentPoly:
    """alpha(lambda, mu) reagrupado como produto dos lados direitos das duas fatorações"""
    blocks = pair_decomposition(mu, lam)
    result = LaurentPoly.constant(1)
    for i in range(1, blocks.r + 1):
        result = result * mu_split_sides(lam, mu, i)[1] * lambda_split_sides(lam, mu, i)[1]
    return result
