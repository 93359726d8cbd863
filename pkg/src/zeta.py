"""
Montagem dos fatores zeta locais normais W^(p, t) de grupos de Heisenberg
em primos não ramificados, com t = p^{-s}.

W = prod_i (1 - t^{2 f_i}) * zeta_{Z_p^{2n}} * sum_w sum_A D_{w,A}

Também expõe os somandos D_w (totalmente decomposto), D_{w,v}, a forma
fechada inerte e a série truncada D^{e,f} por soma direta, que vale para
qualquer tipo de decomposição (e, f).
"""
import logging
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from combinat import (
    BlockDecomposition,
    DecompType,
    DyckWord,
    OrderedSetPartition,
    Partition,
    WeakOrdering,
    at_inverse_p,
    at_one,
    block_decomposition,
    compatible_partitions,
    decompose_weak_ordering,
    dyck_words,
    gaussian_binomial,
    gaussian_multinomial,
    partitions_below,
    phi,
)
from config import get_settings
from counting import alpha
from errors import ConsistencyError, InvalidInputError
from igusa import Y_INVERSE_P, igusa_I, igusa_I_circ, igusa_wo
from output_parser.zeta_result_parser import Provenance
from ratfunc import (
    LaurentPoly,
    Monomial,
    RatFunc,
    TruncatedSeries,
    expand_denominator,
    gp,
    gpzero,
    rf_equal,
    rf_prod,
    rf_series,
    rf_sum,
)

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

Mapper = Callable[..., Iterable]


def pt(a: int, b: int) -> Monomial:
    """p^a t^b"""
    return Monomial({'p': a, 't': b})


@dataclass(frozen=True)
class AdmissibleTuple:
    """
    n-upla admissível para (e, f): em cada bloco ]C_{i-1}, C_i] as primeiras
    delta_i f_i entradas valem ell_{C_i} + 1 e as demais valem ell_{C_i}.
    """

    ell: Tuple[int, ...]
    decomp: DecompType

    def __post_init__(self):
        object.__setattr__(self, 'ell', tuple(int(x) for x in self.ell))
        if len(self.ell) != self.decomp.n:
            raise InvalidInputError(f'ell={self.ell} não tem comprimento n={self.decomp.n}')
        self.block_data()

    def block_data(self) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        """((ell_{C_1}, ..., ell_{C_g}), (delta_1, ..., delta_g))"""
        lasts, deltas = [], []
        for i in range(self.decomp.g):
            e, f = self.decomp.e[i], self.decomp.f[i]
            block = self.ell[self.decomp.C(i):self.decomp.C(i + 1)]
            last = block[-1]
            delta = next((d for d in range(e) if block == (last + 1,) * (d * f) + (last,) * ((e - d) * f)), None)
            if delta is None:
                raise InvalidInputError(f'ell={self.ell} não é admissível para e={self.decomp.e}, f={self.decomp.f}')
            lasts.append(last)
            deltas.append(delta)
        return tuple(lasts), tuple(deltas)

    def total(self) -> int:
        return sum(self.ell)


def adm_enumerate(decomp: DecompType, bound: int) -> List[AdmissibleTuple]:
    """Todas as n-uplas admissíveis com sum ell_i <= bound, em ordem lexicográfica"""
    if bound < 0:
        raise InvalidInputError('bound deve ser não negativo')
    options: List[List[Tuple[Tuple[int, ...], int]]] = []
    for e, f in zip(decomp.e, decomp.f):
        block_options = []
        for last in range(bound + 1):
            for delta in range(e):
                block = (last + 1,) * (delta * f) + (last,) * ((e - delta) * f)
                if sum(block) <= bound:
                    block_options.append((block, sum(block)))
        options.append(block_options)
    result = []
    for choice in product(*options):
        if sum(weight for _, weight in choice) <= bound:
            ell = tuple(x for block, _ in choice for x in block)
            result.append(AdmissibleTuple(ell, decomp))
    return sorted(result, key=lambda a: a.ell)


def lambda_of_ell(a: AdmissibleTuple) -> Tuple[Partition, Optional[WeakOrdering]]:
    """
    Partição lambda(ell) e, para e = 1, a ordenação fraca v_ell = (sigma, J)
    que ordena (ell_{C_1}, ..., ell_{C_g}) de forma não crescente (estável);
    J registra as quedas estritas.
    """
    lam = Partition(tuple(sorted(a.ell, reverse=True)))
    if not a.decomp.is_unramified():
        return lam, None
    values = a.block_data()[0]
    g = len(values)
    sigma = tuple(sorted(range(1, g + 1), key=lambda i: -values[i - 1]))
    J = frozenset(j for j in range(1, g) if values[sigma[j - 1] - 1] > values[sigma[j] - 1])
    return lam, WeakOrdering(sigma, J)


def x_data(n: int, w: DyckWord) -> List[Monomial]:
    """x_j = p^{j(2n + L_i - j)} t^{2 L_i + j} para j em ]M_{i-1}, M_i]"""
    blocks = block_decomposition(w)
    xs = []
    for i in range(1, blocks.r + 1):
        Li = blocks.L_at(i)
        for j in range(blocks.M_at(i - 1) + 1, blocks.M_at(i) + 1):
            xs.append(pt(j * (2 * n + Li - j), 2 * Li + j))
    return xs


def y_data_totally_split(n: int, w: DyckWord) -> List[Monomial]:
    """y_j = p^{(2n - M_{i-1} + j) M_{i-1}} t^{2j + M_{i-1}} para j em ]L_{i-1}, L_i]"""
    blocks = block_decomposition(w)
    ys = []
    for i in range(1, blocks.r + 1):
        Mp = blocks.M_at(i - 1)
        for j in range(blocks.L_at(i - 1) + 1, blocks.L_at(i) + 1):
            ys.append(pt((2 * n - Mp + j) * Mp, 2 * j + Mp))
    return ys


def y_data(f: Sequence[int], w: DyckWord, A: OrderedSetPartition) -> List[Dict[FrozenSet[int], Monomial]]:
    """
    y^{(i)}_I = p^{(2n - M_{i-1} + eps) M_{i-1}} t^{2 eps + M_{i-1}}, com
    eps = L_{i-1} + sum_{j in I} f_{a^{(i)}_j}, para I não vazio em [|A_i|].
    """
    n = sum(f)
    blocks = block_decomposition(w)
    result = []
    for i, block in enumerate(A.blocks, start=1):
        Mp, Lp = blocks.M_at(i - 1), blocks.L_at(i - 1)
        data = {}
        for size in range(1, len(block) + 1):
            for I in combinations(range(1, len(block) + 1), size):
                eps = Lp + sum(f[block[j - 1] - 1] for j in I)
                data[frozenset(I)] = pt((2 * n - Mp + eps) * Mp, 2 * eps + Mp)
        result.append(data)
    return result


@dataclass(frozen=True)
class NumericalData:
    x: Tuple[Monomial, ...]
    y: Tuple[Dict[FrozenSet[int], Monomial], ...]


def numerical_data(f: Sequence[int], w: DyckWord, A: OrderedSetPartition) -> NumericalData:
    return NumericalData(tuple(x_data(sum(f), w)), tuple(y_data(f, w, A)))


def _binomial_prefactor(blocks: BlockDecomposition) -> RatFunc:
    """prod_i binom(L_i - M_{i-1}, L_i - M_i)_{p^{-1}}"""
    poly = LaurentPoly.constant(1)
    for i in range(1, blocks.r + 1):
        Li, Mi, Mp = blocks.L_at(i), blocks.M_at(i), blocks.M_at(i - 1)
        poly = poly * at_inverse_p(gaussian_binomial(Li - Mp, Li - Mi))
    return RatFunc(poly)


def _x_factor(n: int, w: DyckWord) -> RatFunc:
    blocks = block_decomposition(w)
    xs = x_data(n, w)
    factors = []
    for i in range(1, blocks.r):
        Mp, Mi = blocks.M_at(i - 1), blocks.M_at(i)
        factors.append(igusa_I_circ(Mi - Mp, Y_INVERSE_P, xs[Mp:Mi]))
    last = blocks.M_at(blocks.r - 1)
    factors.append(igusa_I(n - last, Y_INVERSE_P, xs[last:]))
    return rf_prod(factors)


def D_w_totally_split(n: int, w: DyckWord) -> RatFunc:
    """D^1_w: somando da palavra w quando f = (1, ..., 1)"""
    if w.n != n:
        raise InvalidInputError(f'Palavra {w} não tem comprimento 2n = {2 * n}')
    blocks = block_decomposition(w)
    multinomial = at_one(gaussian_multinomial(n, blocks.L[:-1]))
    ys = y_data_totally_split(n, w)
    y_factors = [
        igusa_I(blocks.L_at(i) - blocks.L_at(i - 1), 1, ys[blocks.L_at(i - 1):blocks.L_at(i)])
        for i in range(1, blocks.r + 1)
    ]
    return rf_prod([RatFunc(multinomial), _binomial_prefactor(blocks)] + y_factors + [_x_factor(n, w)])


def _check_partition(f: Sequence[int], w: DyckWord, A: OrderedSetPartition):
    runs = block_decomposition(w).zero_runs()
    weights = [sum(f[j - 1] for j in block) for block in A.blocks]
    if len(f) != sum(len(block) for block in A.blocks) or weights != runs:
        raise InvalidInputError(f'Partição {A.to_lists()} não é compatível com {w} para f={tuple(f)}')


def D_w_A(f: Sequence[int], w: DyckWord, A: OrderedSetPartition) -> RatFunc:
    """D^f_{w,A} como produto de binomiais, funções I^wo nos dados y e funções I, I° nos dados x"""
    n = sum(f)
    if w.n != n:
        raise InvalidInputError(f'Palavra {w} não tem comprimento 2n = {2 * n}')
    _check_partition(f, w, A)
    blocks = block_decomposition(w)
    ys = y_data(f, w, A)
    wo_factors = [igusa_wo(len(block), data) for block, data in zip(A.blocks, ys)]
    return rf_prod([_binomial_prefactor(blocks)] + wo_factors + [_x_factor(n, w)])


def D_w_v(f: Sequence[int], w: DyckWord, v: WeakOrdering) -> RatFunc:
    """D^f_{w,v}: forma de produto sobre as cadeias phi(v_i)"""
    n = sum(f)
    A, vs = decompose_weak_ordering(w, v, f)
    blocks = block_decomposition(w)
    ys = y_data(f, w, A)
    chain_factors = []
    for block, v_i, data in zip(A.blocks, vs, ys):
        chain_factors.append(gpzero(data[frozenset(range(1, len(block) + 1))]))
        chain_factors.extend(gp(data[I]) for I in phi(v_i).subsets)
    return rf_prod([_binomial_prefactor(blocks)] + chain_factors + [_x_factor(n, w)])


def zeta_ab(d: int) -> RatFunc:
    """zeta_{Z_p^d} = prod_{i<d} 1/(1 - p^i t)"""
    if d < 1:
        raise InvalidInputError('d deve ser positivo')
    return RatFunc(1, {pt(i, 1): 1 for i in range(d)})


def inertia_factor(f: Sequence[int]) -> RatFunc:
    """prod_i (1 - t^{2 f_i})"""
    counts: Dict[Monomial, int] = {}
    for fi in f:
        m = pt(0, 2 * fi)
        counts[m] = counts.get(m, 0) + 1
    return RatFunc(expand_denominator(counts))


@dataclass
class ZetaResult:
    W: RatFunc
    f: Tuple[int, ...]
    provenance: Provenance
    summands: List[Tuple[DyckWord, OrderedSetPartition, RatFunc]] = field(default_factory=list)

    @property
    def n(self) -> int:
        return sum(self.f)

    @property
    def g(self) -> int:
        return len(self.f)

    @property
    def numerator_terms(self) -> int:
        return self.W.numerator_term_count()


def _validate_composition(f: Sequence[int]) -> Tuple[int, ...]:
    f = tuple(int(x) for x in f)
    if not f or any(x < 1 for x in f):
        raise InvalidInputError(f'f={f} não é uma composição de inteiros positivos')
    return f


def dyck_word_summands(f: Sequence[int], w: DyckWord) -> List[Tuple[OrderedSetPartition, RatFunc]]:
    return [(A, D_w_A(f, w, A)) for A in compatible_partitions(w, f)]


def _word_job(args):
    f, w = args
    return w, dyck_word_summands(f, w)


def zeta_unramified(
    f: Sequence[int], cross_check: Optional[bool] = None, mapper: Mapper = map
) -> ZetaResult:
    """
    Fator W^_{1,f}(p, t) para um primo não ramificado com graus de inércia f.

    Args:
        f: composição (f_1, ..., f_g) de n
        cross_check: compara com a forma totalmente decomposta (f = 1) ou
            inerte (g = 1); padrão vem de ZETA_CROSS_CHECK
        mapper: map ou executor.map, aplicado por palavra de Dyck

    Raises:
        ConsistencyError: se as duas formas fechadas divergirem
    """
    f = _validate_composition(f)
    n = sum(f)
    if cross_check is None:
        cross_check = get_settings().cross_check
    words = dyck_words(n)
    logger.info(f'Calculando W para f={f}: {len(words)} palavras de Dyck')

    summands: List[Tuple[DyckWord, OrderedSetPartition, RatFunc]] = []
    per_word: Dict[str, RatFunc] = {}
    for w, items in mapper(_word_job, [(f, w) for w in words]):
        logger.debug(f'Palavra {w}: {len(items)} partições compatíveis')
        per_word[w.letters] = rf_sum(D for _, D in items)
        summands.extend((w, A, D) for A, D in items)

    if all(x == 1 for x in f):
        provenance = Provenance.TOTALLY_SPLIT
        if cross_check:
            for w in words:
                if not rf_equal(per_word[w.letters], D_w_totally_split(n, w)):
                    raise ConsistencyError(f'Somando de {w} diverge da forma totalmente decomposta')
    elif len(f) == 1:
        provenance = Provenance.INERT
    else:
        provenance = Provenance.GENERAL_UNRAMIFIED

    total = rf_sum(per_word[w.letters] for w in words)
    W = rf_prod([inertia_factor(f), zeta_ab(2 * n), total])
    if provenance is Provenance.INERT and cross_check and not rf_equal(W, zeta_inert(n).W):
        raise ConsistencyError(f'W para f=({n},) diverge da forma inerte')
    logger.info(f'W para f={f} calculado: {W.numerator_term_count()} termos no numerador')
    return ZetaResult(W, f, provenance, summands)


def zeta_inert(n: int) -> ZetaResult:
    """zeta_{Z_p^{2n}} I_n(p^{-1}; x) com x_j = p^{j(3n-j)} t^{2n+j}"""
    if n < 1:
        raise InvalidInputError('n deve ser positivo')
    xs = [pt(j * (3 * n - j), 2 * n + j) for j in range(1, n + 1)]
    W = rf_prod([zeta_ab(2 * n), igusa_I(n, Y_INVERSE_P, xs)])
    return ZetaResult(W, (n,), Provenance.INERT)


def zeta_closed_form(decomp: DecompType) -> ZetaResult:
    """
    Raises:
        InvalidInputError: para tipos ramificados, que só têm a série direta
    """
    if not decomp.is_unramified():
        raise InvalidInputError(
            f'Não há forma fechada para e={decomp.e}; use D_series / zeta_series_direct para tipos ramificados'
        )
    return zeta_unramified(decomp.f)


def D_series(decomp: DecompType, order: int) -> TruncatedSeries:
    """
    Truncamento exato de D^{e,f}(p, t) até t^order por soma direta sobre
    ell admissível e mu <= lambda(ell), termo t^{2|ell|} alpha(lambda, mu) (p^{2n} t)^{|mu|}.
    """
    if order < 0:
        raise InvalidInputError('Ordem de truncamento negativa')
    n = decomp.n
    coeffs = [LaurentPoly() for _ in range(order + 1)]
    alphas: Dict[Tuple[Partition, Partition], LaurentPoly] = {}
    tuples = adm_enumerate(decomp, order // 2)
    logger.info(f'Série D^(e,f) até ordem {order}: {len(tuples)} n-uplas admissíveis')
    for a in tuples:
        base = 2 * a.total()
        lam, _ = lambda_of_ell(a)
        for mu in partitions_below(lam, order - base):
            key = (lam, mu)
            if key not in alphas:
                alphas[key] = alpha(lam, mu)
            size = mu.size()
            coeffs[base + size] = coeffs[base + size] + alphas[key] * Monomial({'p': 2 * n * size})
    return TruncatedSeries(order, coeffs)


def prefactor_series(decomp: DecompType, order: int) -> TruncatedSeries:
    """Série de prod_i (1 - t^{2 f_i}) zeta_{Z_p^{2n}}"""
    return rf_series(rf_prod([inertia_factor(decomp.f), zeta_ab(2 * decomp.n)]), order)


def zeta_series_direct(decomp: DecompType, order: int) -> TruncatedSeries:
    """Série do fator zeta local para qualquer (e, f), sem forma fechada"""
    return prefactor_series(decomp, order) * D_series(decomp, order)
