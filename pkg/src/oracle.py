"""
Oráculo de força bruta: contagem de ideais do anel de Lie de Heisenberg
L(R_p) sobre quocientes finitos de R_p = prod_i O_i, onde O_i é o modelo
Z[x]/(F_i)[y]/(y^{e_i} - p) do i-ésimo fator local.

A base de R_p segue a ordem alpha_{C_{i-1} + s f_i + j} = x^j y^s; a base de
L(R_p) é x_1, y_1, ..., x_n, y_n, z_1, ..., z_n (coordenadas x/y intercaladas,
como as linhas 2k-1 e 2k das matrizes B(Lambda)).
"""
import logging
from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterable, Iterator, List, Optional, Sequence, Tuple

from sympy import Poly, Symbol, isprime

from combinat import DecompType, Partition
from config import get_settings
from counting import elementary_divisor_exponents, hnf_contains, subgroup_census
from errors import InvalidInputError, ResourceLimitError
from ratfunc import RatFunc, rf_prod, rf_series
from zeta import AdmissibleTuple, inertia_factor, pt, zeta_ab

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

Mapper = Callable[..., Iterable]
Vector = Tuple[int, ...]

_X = Symbol('x')


def monic_irreducibles(prime: int, degree: int) -> Iterator[Tuple[int, ...]]:
    """
    Polinômios mônicos irredutíveis de grau dado módulo p, em ordem
    lexicográfica dos coeficientes (do termo de grau degree-1 ao constante).
    Cada polinômio sai como tupla de coeficientes do grau 0 ao grau degree.
    """
    for tail in product(range(prime), repeat=degree):
        coeffs = [1] + list(tail)
        if Poly(coeffs, _X, modulus=prime).is_irreducible:
            yield tuple(reversed(coeffs))


def _reduce_power(J: int, F: Tuple[int, ...]) -> List[int]:
    """x^J módulo o polinômio mônico F, sobre Z"""
    f = len(F) - 1
    poly = [0] * J + [1]
    for top in range(J, f - 1, -1):
        lead = poly[top]
        if lead:
            for i in range(f + 1):
                poly[top - f + i] -= lead * F[i]
    return (poly + [0] * f)[:f]


@dataclass(frozen=True)
class RingModel:
    """
    R/p^m R com constantes de estrutura alpha_k alpha_m = sum_u c[k][m][u] alpha_u
    (índices 0-based, entradas em [0, p^m)).
    """

    p: int
    m: int
    decomp: DecompType
    polynomials: Tuple[Tuple[int, ...], ...]
    c: Tuple[Tuple[Tuple[int, ...], ...], ...]

    @property
    def n(self) -> int:
        return self.decomp.n

    @property
    def modulus(self) -> int:
        return self.p ** self.m

    @property
    def exploratory(self) -> bool:
        return not self.decomp.is_unramified()

    def labels(self) -> List[str]:
        names = []
        for i in range(self.decomp.g):
            for s in range(self.decomp.e[i]):
                for j in range(self.decomp.f[i]):
                    names.append(f'x^{j} y^{s} [{i + 1}]')
        return names

    def block_of(self, k: int) -> int:
        """Fator (0-based) que contém o índice de base k (0-based)"""
        return next(i for i in range(self.decomp.g) if k < self.decomp.C(i + 1))

    def multiply(self, a: Sequence[int], b: Sequence[int]) -> Vector:
        out = [0] * self.n
        for k, ak in enumerate(a):
            if not ak:
                continue
            for j, bj in enumerate(b):
                if bj:
                    for u, cu in enumerate(self.c[k][j]):
                        out[u] += ak * bj * cu
        return tuple(x % self.modulus for x in out)

    def check_block_vanishing(self) -> bool:
        n = self.n
        return all(
            self.c[k][j][u] == 0
            for k in range(n)
            for j in range(n)
            for u in range(n)
            if not (self.block_of(k) == self.block_of(j) == self.block_of(u))
        )

    def is_commutative(self) -> bool:
        return all(self.c[k][j] == self.c[j][k] for k in range(self.n) for j in range(self.n))

    def is_associative(self) -> bool:
        n = self.n
        unit = [tuple(int(u == k) for u in range(n)) for k in range(n)]
        for a, b, d in product(range(n), repeat=3):
            if self.multiply(self.multiply(unit[a], unit[b]), unit[d]) != self.multiply(
                unit[a], self.multiply(unit[b], unit[d])
            ):
                return False
        return True


def build_ring_model(p: int, m: int, decomp: DecompType, choice: int = 0) -> RingModel:
    """
    Constrói o modelo de R_p módulo p^m.

    Args:
        p: primo
        m: precisão (m >= 1)
        decomp: tipo de decomposição (e, f)
        choice: índice do polinômio irredutível usado em cada fator, na
            ordem lexicográfica (0 = o menor)

    Raises:
        InvalidInputError: p composto, m < 1 ou choice além do número de
            irredutíveis disponíveis
    """
    if not isprime(p):
        raise InvalidInputError(f'{p} não é primo')
    if m < 1:
        raise InvalidInputError('Precisão m deve ser pelo menos 1')
    modulus = p ** m
    n = decomp.n
    c = [[[0] * n for _ in range(n)] for _ in range(n)]
    polynomials = []
    for i in range(decomp.g):
        e, f = decomp.e[i], decomp.f[i]
        candidates = monic_irreducibles(p, f)
        F = next((F for index, F in enumerate(candidates) if index == choice), None)
        if F is None:
            raise InvalidInputError(f'Não há {choice + 1} polinômios irredutíveis de grau {f} módulo {p}')
        polynomials.append(F)
        powers = [_reduce_power(J, F) for J in range(2 * f - 1)]
        base = decomp.C(i)
        for s1, j1, s2, j2 in product(range(e), range(f), range(e), range(f)):
            s, scale = s1 + s2, 1
            if s >= e:
                # y^e = p
                s, scale = s - e, p
            row = c[base + s1 * f + j1][base + s2 * f + j2]
            for j, coeff in enumerate(powers[j1 + j2]):
                row[base + s * f + j] = (scale * coeff) % modulus
    if any(e > 1 for e in decomp.e):
        logger.warning(f'Modelo ramificado e={decomp.e} com y^e - p: resultados exploratórios')
    logger.debug(f'Modelo de anel para p={p}, m={m}, e={decomp.e}, f={decomp.f}: polinômios {polynomials}')
    frozen = tuple(tuple(tuple(row) for row in block) for block in c)
    return RingModel(p, m, decomp, tuple(polynomials), frozen)


@dataclass(frozen=True)
class HeisenbergModel:
    """L(R) = R x_* + R y_* + R z_* com [x_k, y_m] = sum_u c[k][m][u] z_u"""

    ring: RingModel

    @property
    def n(self) -> int:
        return self.ring.n

    @property
    def p(self) -> int:
        return self.ring.p

    @property
    def m(self) -> int:
        return self.ring.m

    @property
    def dimension(self) -> int:
        return 3 * self.n

    def bracket_xy(self, u: Sequence[int], v: Sequence[int]) -> Vector:
        """[u, v] em coordenadas z, para u, v nas coordenadas x/y intercaladas"""
        n, c = self.n, self.ring.c
        out = [0] * n
        for k in range(n):
            for j in range(n):
                coeff = u[2 * k] * v[2 * j + 1] - u[2 * j + 1] * v[2 * k]
                if coeff:
                    for w, cw in enumerate(c[k][j]):
                        out[w] += coeff * cw
        return tuple(x % self.ring.modulus for x in out)

    def bracket(self, u: Sequence[int], v: Sequence[int]) -> Vector:
        """Colchete de dois vetores de L (3n coordenadas); resultado no z-span"""
        n = self.n
        return (0,) * (2 * n) + self.bracket_xy(u[: 2 * n], v[: 2 * n])

    def commutators(self, column: Sequence[int]) -> List[Vector]:
        """[b, x_m] e [b, y_m] para m em [n]"""
        n, c, modulus = self.n, self.ring.c, self.ring.modulus
        out = []
        for j in range(n):
            with_x = [0] * n
            with_y = [0] * n
            for k in range(n):
                xk, yk = column[2 * k], column[2 * k + 1]
                for w in range(n):
                    with_y[w] += xk * c[k][j][w]
                    with_x[w] -= yk * c[j][k][w]
            out.append(tuple(x % modulus for x in with_x))
            out.append(tuple(x % modulus for x in with_y))
        return out


def build_heisenberg_model(p: int, m: int, decomp: DecompType, choice: int = 0) -> HeisenbergModel:
    return HeisenbergModel(build_ring_model(p, m, decomp, choice))


@dataclass(frozen=True)
class LatticeHNF:
    """
    Subreticulado de Z^d em forma de Hermite por colunas: triangular
    superior, pivôs p^{exponents[j]}, entradas da linha i reduzidas módulo
    p^{exponents[i]}.
    """

    prime: int
    exponents: Tuple[int, ...]
    columns: Tuple[Vector, ...]

    @property
    def d(self) -> int:
        return len(self.exponents)

    @property
    def k(self) -> int:
        return sum(self.exponents)

    def rows(self) -> List[List[int]]:
        return [[col[i] for col in self.columns] for i in range(self.d)]

    def contains(self, vector: Sequence[int]) -> bool:
        return hnf_contains([list(col) for col in self.columns], list(self.exponents), self.prime, list(vector))


def diagonal_types(d: int, k: int) -> List[Tuple[int, ...]]:
    """Expoentes (a_1, ..., a_d) >= 0 com soma k, em ordem lexicográfica"""
    if d == 0:
        return [()] if k == 0 else []
    return [(a,) + rest for a in range(k + 1) for rest in diagonal_types(d - 1, k - a)]


def hnf_lattices(d: int, k: int, prime: int, diagonal: Optional[Tuple[int, ...]] = None) -> Iterator[LatticeHNF]:
    """Todos os subreticulados de índice p^k em Z^d (opcionalmente com diagonal fixa)"""
    for exps in [diagonal] if diagonal is not None else diagonal_types(d, k):
        slots = [(i, j) for j in range(d) for i in range(j)]
        for values in product(*(range(prime ** exps[i]) for i, _ in slots)):
            cols = [[prime ** exps[j] if i == j else 0 for i in range(d)] for j in range(d)]
            for (i, j), value in zip(slots, values):
                cols[j][i] = value
            yield LatticeHNF(prime, tuple(exps), tuple(tuple(col) for col in cols))


def lattice_count(d: int, k: int, prime: int) -> int:
    """Número de subreticulados de índice p^k em Z^d"""
    total = 0
    for exps in diagonal_types(d, k):
        total += prime ** sum(a * (d - 1 - i) for i, a in enumerate(exps))
    return total


def _check_precision(model: HeisenbergModel, k: int):
    if k < 0:
        raise InvalidInputError('k deve ser não negativo')
    if k >= model.m:
        raise InvalidInputError(f'Precisão m={model.m} insuficiente para índice p^{k}; use m >= k + 1')


def _guard(estimate: int, what: str):
    limit = get_settings().oracle_max_candidates
    if estimate > limit:
        raise ResourceLimitError(
            f'{what}: {estimate} candidatos excedem o limite configurado ({limit})', estimate=estimate, limit=limit
        )


def _hnf_job(args) -> int:
    model, k1, diagonal, zs = args
    count = 0
    for lat in hnf_lattices(2 * model.n, k1, model.p, diagonal):
        gens = [g for col in lat.columns for g in model.commutators(col)]
        for M in zs:
            if all(M.contains(g) for g in gens):
                count += 1
    return count


def count_ideals(model: HeisenbergModel, k: int, mapper: Mapper = map) -> int:
    """
    Número de ideais de índice p^k em L(R_p), por enumeração de formas de
    Hermite em Z^{3n} com as coordenadas z primeiro.

    As n primeiras colunas geram M = Lambda n L'; as 2n colunas seguintes têm
    parte x/y dada pela forma de Hermite de Lambda-barra e entradas z livres
    módulo os pivôs de M, que não alteram os colchetes. Cada par (M, Lambda-barra)
    fechado sob colchetes contribui p^{2n log_p |L':M|} formas de Hermite.

    Raises:
        InvalidInputError: k >= m
        ResourceLimitError: número de pares candidatos acima do limite
    """
    _check_precision(model, k)
    n, p = model.n, model.p
    estimate = sum(lattice_count(2 * n, k - k2, p) * lattice_count(n, k2, p) for k2 in range(k + 1))
    _guard(estimate, f'Enumeração de ideais de índice {p}^{k}')
    logger.info(f'Contando ideais de índice {p}^{k} (n={n}) entre {estimate} pares candidatos')
    total = 0
    for k2 in range(k + 1):
        zs = list(hnf_lattices(n, k2, p))
        jobs = [(model, k - k2, diagonal, zs) for diagonal in diagonal_types(2 * n, k - k2)]
        total += sum(mapper(_hnf_job, jobs)) * p ** (2 * n * k2)
    logger.info(f'a_{{{p}^{k}}} = {total}')
    return total


def commutator_type(model: HeisenbergModel, B: Sequence[Sequence[int]]) -> Tuple[int, ...]:
    """
    Tipo de L'/[Lambda-barra, L] pela forma normal de Smith dos colchetes
    [b_j, x_k], [b_j, y_k]; B traz os geradores b_j nas colunas. Expoentes em
    ordem não crescente, limitados por m.
    """
    n, modulus = model.n, model.ring.modulus
    columns = [[row[j] for row in B] for j in range(len(B[0]))]
    gens = [g for col in columns for g in model.commutators(col)]
    gens += [tuple(modulus if u == w else 0 for u in range(n)) for w in range(n)]
    rows = [[g[u] for g in gens] for u in range(n)]
    exponents = elementary_divisor_exponents(rows, model.p)
    return tuple(exponents + [0] * (n - len(exponents)))


def _layered_job(args) -> int:
    model, k1, k2, diagonal = args
    p = model.p
    count = 0
    for lat in hnf_lattices(2 * model.n, k1, p, diagonal):
        nu = commutator_type(model, lat.rows())
        order = sum(nu)
        if k2 > order:
            continue
        census = subgroup_census(Partition(nu), p)
        count += sum(c for mu, c in census.items() if sum(mu) == order - k2)
    return count


def count_ideals_layered(model: HeisenbergModel, k: int, mapper: Mapper = map) -> int:
    """
    a_{p^k} pela soma em duas camadas
    sum_{Lambda-barra} sum_{[Lambda-barra, L] <= M <= L'} |L':M|^{2n},
    com |L-barra:Lambda-barra| |L':M| = p^k e os M contados como subgrupos
    de L'/[Lambda-barra, L] via censo por força bruta.

    Raises:
        InvalidInputError: k >= m
        ResourceLimitError: número de reticulados Lambda-barra acima do limite
    """
    _check_precision(model, k)
    n, p = model.n, model.p
    estimate = sum(lattice_count(2 * n, k1, p) for k1 in range(k))
    _guard(estimate, f'Enumeração em camadas de índice {p}^{k}')
    logger.info(f'Contagem em camadas de índice {p}^{k} (n={n}): {estimate} reticulados Lambda-barra')
    # M = L' é o único M de índice 1
    total = lattice_count(2 * n, k, p)
    for k1 in range(k):
        k2 = k - k1
        jobs = [(model, k1, k2, diagonal) for diagonal in diagonal_types(2 * n, k1)]
        total += sum(mapper(_layered_job, jobs)) * p ** (2 * n * k2)
    logger.info(f'a_{{{p}^{k}}} = {total} (camadas)')
    return total


def _valuation(x: int, prime: int, cap: int) -> int:
    x %= prime ** cap
    if x == 0:
        return cap
    v = 0
    while x % prime == 0:
        x //= prime
        v += 1
    return v


def ell_of_lattice(model: HeisenbergModel, B: Sequence[Sequence[int]]) -> AdmissibleTuple:
    """
    ell(Lambda-barra) a partir dos blocos de linhas de B: epsilon_i é a menor
    valoração nas linhas ]2C_{i-1}, 2C_i], delta_i o primeiro sub-bloco de
    2 f_i linhas que a atinge.

    Raises:
        InvalidInputError: dimensão errada ou bloco nulo módulo p^m
    """
    decomp, p, m = model.ring.decomp, model.p, model.m
    if len(B) != 2 * model.n or any(len(row) != 2 * model.n for row in B):
        raise InvalidInputError(f'B deve ser uma matriz {2 * model.n}x{2 * model.n}')
    ell: List[int] = []
    for i in range(decomp.g):
        e, f, start = decomp.e[i], decomp.f[i], 2 * decomp.C(i)
        vals = [min(_valuation(x, p, m) for x in B[row]) for row in range(start, 2 * decomp.C(i + 1))]
        eps = min(vals)
        if eps >= m:
            raise InvalidInputError(f'Bloco {i + 1} de B é nulo módulo {p}^{m}')
        delta = next(d for d in range(e) if eps in vals[2 * d * f: 2 * (d + 1) * f])
        ell.extend([eps + 1] * (delta * f) + [eps] * ((e - delta) * f))
    return AdmissibleTuple(tuple(ell), decomp)


def lattice_sum_series(decomp: DecompType, ell: AdmissibleTuple) -> RatFunc:
    """(prod_i (1 - t^{2 f_i})) zeta_{Z_p^{2n}} t^{2 sum ell}"""
    return rf_prod([inertia_factor(decomp.f), zeta_ab(2 * decomp.n), RatFunc(pt(0, 2 * ell.total()))])


def lemma_l_check(decomp: DecompType, ell: Sequence[int], N: int, prime: int = 2) -> bool:
    """
    Compara, coeficiente a coeficiente até t^N, a contagem dos Lambda-barra com
    ell(Lambda-barra) = ell com a série de
    (prod_i (1 - t^{2 f_i})) zeta_{Z_p^{2n}}(s) t^{2 sum ell} avaliada em p.

    Raises:
        InvalidInputError: ell não admissível para (e, f)
        ResourceLimitError: enumeração acima do limite
    """
    target = ell if isinstance(ell, AdmissibleTuple) else AdmissibleTuple(tuple(ell), decomp)
    n = decomp.n
    estimate = sum(lattice_count(2 * n, k, prime) for k in range(N + 1))
    _guard(estimate, f'Soma sobre reticulados até índice {prime}^{N}')
    model = build_heisenberg_model(prime, N + 1, decomp)
    counts = [0] * (N + 1)
    for k in range(N + 1):
        for lat in hnf_lattices(2 * n, k, prime):
            if ell_of_lattice(model, lat.rows()) == target:
                counts[k] += 1
    expected = rf_series(lattice_sum_series(decomp, target), N).evaluate(prime)
    verdict = all(counts[k] == expected[k] for k in range(N + 1))
    logger.info(f'Soma de reticulados para ell={target.ell}, p={prime}: {counts} vs {list(map(int, expected))}: {verdict}')
    return verdict


def oracle_counts(
    decomp: DecompType,
    prime: int,
    max_k: int,
    method: str = 'layered',
    mapper: Mapper = map,
    choice: int = 0,
) -> List[int]:
    """Sequência a_{p^0}, ..., a_{p^max_k} pelo método escolhido ('hnf' ou 'layered')"""
    if method not in ('hnf', 'layered'):
        raise InvalidInputError(f"Método de oráculo desconhecido: '{method}'")
    model = build_heisenberg_model(prime, max_k + 1, decomp, choice)
    counter = count_ideals if method == 'hnf' else count_ideals_layered
    return [counter(model, k, mapper) for k in range(max_k + 1)]
