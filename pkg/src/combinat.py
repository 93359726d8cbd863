"""
Combinatória finita: partições e duais, palavras de Dyck e a decomposição
de pares (mu, lambda), q-multinomiais, estatísticas de permutações,
ordenações fracas, a cadeia de subconjuntos P_h e partições ordenadas
compatíveis com uma palavra de Dyck.

Convenção de índices: todas as estruturas expostas usam índices a partir
de 1 (L_1, M_1, sigma(1), ...); tuplas Python guardam o índice j na posição j-1.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from typing import FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from errors import InvalidInputError
from ratfunc import LaurentPoly, Monomial

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

Y = Monomial({'Y': 1})


@dataclass(frozen=True)
class Partition:
    """Partição com comprimento fixo n (zeros finais contam)"""

    parts: Tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(x) for x in self.parts)
        object.__setattr__(self, 'parts', parts)
        if any(x < 0 for x in parts):
            raise InvalidInputError(f'Partes negativas em {parts}')
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise InvalidInputError(f'Partição não é não crescente: {parts}')

    def __len__(self) -> int:
        return len(self.parts)

    def at(self, i: int) -> int:
        """Parte i (1-indexada); 0 fora do intervalo"""
        if 1 <= i <= len(self.parts):
            return self.parts[i - 1]
        return 0

    def size(self) -> int:
        return sum(self.parts)

    def dominated_by(self, other: 'Partition') -> bool:
        return len(self) == len(other) and all(a <= b for a, b in zip(self.parts, other.parts))


@dataclass(frozen=True)
class DyckWord:
    letters: str

    def __post_init__(self):
        height = 0
        for ch in self.letters:
            if ch not in '01':
                raise InvalidInputError(f"Letra inválida '{ch}' em {self.letters}")
            height += 1 if ch == '0' else -1
            if height < 0:
                raise InvalidInputError(f'Prefixo com mais uns que zeros: {self.letters}')
        if height != 0 or not self.letters:
            raise InvalidInputError(f'Palavra de Dyck desbalanceada: {self.letters}')

    @property
    def n(self) -> int:
        return len(self.letters) // 2

    def __str__(self) -> str:
        return self.letters


@dataclass(frozen=True)
class BlockDecomposition:
    """w = prod_i 0^{L_i - L_{i-1}} 1^{M_i - M_{i-1}}"""

    L: Tuple[int, ...]
    M: Tuple[int, ...]

    @property
    def r(self) -> int:
        return len(self.L)

    @property
    def n(self) -> int:
        return self.L[-1]

    def L_at(self, i: int) -> int:
        return self.L[i - 1] if i > 0 else 0

    def M_at(self, i: int) -> int:
        return self.M[i - 1] if i > 0 else 0

    def word(self) -> DyckWord:
        letters = ''
        for i in range(1, self.r + 1):
            letters += '0' * (self.L_at(i) - self.L_at(i - 1)) + '1' * (self.M_at(i) - self.M_at(i - 1))
        return DyckWord(letters)

    def zero_runs(self) -> List[int]:
        return [self.L_at(i) - self.L_at(i - 1) for i in range(1, self.r + 1)]


@dataclass(frozen=True)
class WeakOrdering:
    """Par (sigma, J) com Des(sigma) contido em J"""

    sigma: Tuple[int, ...]
    J: FrozenSet[int]

    def __post_init__(self):
        object.__setattr__(self, 'sigma', tuple(self.sigma))
        object.__setattr__(self, 'J', frozenset(self.J))
        h = len(self.sigma)
        if sorted(self.sigma) != list(range(1, h + 1)):
            raise InvalidInputError(f'{self.sigma} não é permutação de [{h}]')
        if not self.J <= set(range(1, h)):
            raise InvalidInputError(f'J={sorted(self.J)} não está contido em [{h - 1}]')
        if not descent_set(self.sigma) <= self.J:
            raise InvalidInputError(f'Des({self.sigma}) não está contido em J={sorted(self.J)}')

    @property
    def h(self) -> int:
        return len(self.sigma)


@dataclass(frozen=True)
class Chain:
    subsets: Tuple[FrozenSet[int], ...]


@dataclass(frozen=True)
class OrderedSetPartition:
    blocks: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(tuple(sorted(block)) for block in self.blocks)
        object.__setattr__(self, 'blocks', blocks)
        flat = [x for block in blocks for x in block]
        if any(not block for block in blocks) or len(flat) != len(set(flat)):
            raise InvalidInputError(f'Blocos vazios ou sobrepostos: {blocks}')
        if sorted(flat) != list(range(1, len(flat) + 1)):
            raise InvalidInputError(f'Blocos não cobrem [{len(flat)}]: {blocks}')

    def to_lists(self) -> List[List[int]]:
        return [list(block) for block in self.blocks]


@dataclass(frozen=True)
class DecompType:
    """Tipo de decomposição (e, f) de um primo, com sum e_i f_i = n"""

    e: Tuple[int, ...]
    f: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'e', tuple(int(x) for x in self.e))
        object.__setattr__(self, 'f', tuple(int(x) for x in self.f))
        if not self.f or len(self.e) != len(self.f):
            raise InvalidInputError(f'Vetores e={self.e} e f={self.f} incompatíveis')
        if any(x < 1 for x in self.e + self.f):
            raise InvalidInputError('Entradas de e e f devem ser positivas')

    @classmethod
    def unramified(cls, f: Sequence[int]) -> 'DecompType':
        return cls(tuple(1 for _ in f), tuple(f))

    @property
    def g(self) -> int:
        return len(self.f)

    @property
    def n(self) -> int:
        return sum(e * f for e, f in zip(self.e, self.f))

    def C(self, i: int) -> int:
        return sum(self.e[j] * self.f[j] for j in range(i))

    def is_unramified(self) -> bool:
        return all(e == 1 for e in self.e)


def parse_composition(text: str) -> Tuple[int, ...]:
    try:
        values = tuple(int(x) for x in text.replace(' ', '').split(',') if x)
    except ValueError as exc:
        raise InvalidInputError(f"Composição inválida: '{text}'") from exc
    if not values or any(v < 1 for v in values):
        raise InvalidInputError(f"Composição inválida: '{text}'")
    return values


def compositions(n: int) -> List[Tuple[int, ...]]:
    """Todas as 2^{n-1} composições de n, em ordem lexicográfica"""
    if n == 0:
        return [()]
    result = []
    for first in range(1, n + 1):
        for rest in compositions(n - first):
            result.append((first,) + rest)
    return sorted(result)


@lru_cache(maxsize=None)
def gaussian_binomial(a: int, b: int) -> LaurentPoly:
    """
    Polinômio gaussiano binom(a, b)_Y via recorrência de q-Pascal.

    Raises:
        InvalidInputError: se a < b ou b < 0
    """
    if b < 0 or a < b:
        raise InvalidInputError(f'binom({a}, {b}) exige a >= b >= 0')
    if b == 0 or b == a:
        return LaurentPoly.constant(1)
    return gaussian_binomial(a - 1, b - 1) + gaussian_binomial(a - 1, b) * (Y ** b)


def gaussian_multinomial(n: int, I: Iterable[int]) -> LaurentPoly:
    """binom(n, I)_Y = binom(n, i_m) binom(i_m, i_{m-1}) ... binom(i_2, i_1)"""
    indices = sorted(set(I))
    if any(i < 1 or i > n - 1 for i in indices):
        raise InvalidInputError(f'I={indices} não está contido em [{n - 1}]')
    result = LaurentPoly.constant(1)
    upper = n
    for i in reversed(indices):
        result = result * gaussian_binomial(upper, i)
        upper = i
    return result


def at_one(poly: LaurentPoly) -> int:
    return int(poly.evaluate({'Y': 1}))


def at_inverse_p(poly: LaurentPoly) -> LaurentPoly:
    return poly.substitute({'Y': Monomial({'p': -1})})


def dyck_words(n: int) -> List[DyckWord]:
    if n < 1:
        raise InvalidInputError('n deve ser positivo')
    words: List[str] = []

    def extend(prefix: str, zeros: int, ones: int):
        if zeros == n and ones == n:
            words.append(prefix)
            return
        if zeros < n:
            extend(prefix + '0', zeros + 1, ones)
        if ones < zeros:
            extend(prefix + '1', zeros, ones + 1)

    extend('', 0, 0)
    return [DyckWord(w) for w in words]


def block_decomposition(w: DyckWord) -> BlockDecomposition:
    L: List[int] = []
    M: List[int] = []
    zeros = ones = 0
    letters = w.letters
    pos = 0
    while pos < len(letters):
        while pos < len(letters) and letters[pos] == '0':
            zeros += 1
            pos += 1
        while pos < len(letters) and letters[pos] == '1':
            ones += 1
            pos += 1
        L.append(zeros)
        M.append(ones)
    return BlockDecomposition(tuple(L), tuple(M))


def dyck_of_pair(mu: Partition, lam: Partition) -> DyckWord:
    """
    Palavra w(mu, lambda) pela decomposição gulosa:
    lambda_{L_{i-1}+1..L_i} >= mu_{M_{i-1}+1..M_i} > lambda_{L_i + 1}.
    """
    return pair_decomposition(mu, lam).word()


def pair_decomposition(mu: Partition, lam: Partition) -> BlockDecomposition:
    if not mu.dominated_by(lam):
        raise InvalidInputError(f'Par não dominado: mu={mu.parts}, lambda={lam.parts}')
    n = len(lam)
    L: List[int] = []
    M: List[int] = []
    l_prev = m_prev = 0
    while m_prev < n:
        target = mu.at(m_prev + 1)
        l_cur = l_prev
        while l_cur < n and lam.at(l_cur + 1) >= target:
            l_cur += 1
        boundary = lam.at(l_cur + 1) if l_cur < n else -1
        m_cur = m_prev
        while m_cur < n and mu.at(m_cur + 1) > boundary:
            m_cur += 1
        L.append(l_cur)
        M.append(m_cur)
        l_prev, m_prev = l_cur, m_cur
    return BlockDecomposition(tuple(L), tuple(M))


def successive_differences(
    mu: Partition, lam: Partition, w: Optional[DyckWord] = None
) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """
    Diferenças r_j e s_j (j = 1..n), com lambda_{n+1} = 0 e M_0 = 0.

    Returns:
        (r, s) com r[j-1] = r_j e s[j-1] = s_j
    """
    blocks = block_decomposition(w) if w is not None else pair_decomposition(mu, lam)
    if w is not None and w != dyck_of_pair(mu, lam):
        raise InvalidInputError(f'{w} não é a palavra do par dado')
    n = len(lam)
    M_index = {blocks.M_at(i): i for i in range(1, blocks.r + 1)}
    L_index = {blocks.L_at(i): i for i in range(1, blocks.r + 1)}
    r = []
    s = []
    for j in range(1, n + 1):
        if j in M_index:
            r.append(mu.at(j) - lam.at(blocks.L_at(M_index[j]) + 1))
        else:
            r.append(mu.at(j) - mu.at(j + 1))
        if j in L_index:
            s.append(lam.at(j) - mu.at(blocks.M_at(L_index[j] - 1) + 1))
        else:
            s.append(lam.at(j) - lam.at(j + 1))
    return tuple(r), tuple(s)


def jump_sets(
    mu: Partition, lam: Partition, w: Optional[DyckWord] = None
) -> Tuple[List[FrozenSet[int]], List[FrozenSet[int]]]:
    """Conjuntos J^mu_i e J^lambda_i, i = 1..r"""
    blocks = block_decomposition(w) if w is not None else pair_decomposition(mu, lam)
    J_mu = []
    J_lam = []
    for i in range(1, blocks.r + 1):
        Mi, Mp = blocks.M_at(i), blocks.M_at(i - 1)
        Li, Lp = blocks.L_at(i), blocks.L_at(i - 1)
        J_mu.append(frozenset(j for j in range(1, Mi - Mp) if mu.at(Mi - j) > mu.at(Mi - j + 1)))
        J_lam.append(frozenset(j for j in range(1, Li - Lp) if lam.at(Li - j) > lam.at(Li - j + 1)))
    return J_mu, J_lam


def support_sets(v: Sequence[int], blocks: BlockDecomposition, kind: str = 'M') -> List[FrozenSet[int]]:
    """supp^M_i(v) = {j in [M_i - M_{i-1} - 1] : v_{M_{i-1}+j} > 0}; idem para L"""
    bound = blocks.M_at if kind == 'M' else blocks.L_at
    result = []
    for i in range(1, blocks.r + 1):
        top, bottom = bound(i), bound(i - 1)
        result.append(frozenset(j for j in range(1, top - bottom) if v[bottom + j - 1] > 0))
    return result


def dual_partition(lam: Partition) -> Partition:
    largest = lam.at(1)
    return Partition(tuple(sum(1 for x in lam.parts if x >= i) for i in range(1, largest + 1)))


def partition_jumps(lam: Partition) -> FrozenSet[int]:
    """J(lambda) = {j in [n-1] : lambda_j > lambda_{j+1}}"""
    return frozenset(j for j in range(1, len(lam)) if lam.at(j) > lam.at(j + 1))


def beta(lam: Partition) -> int:
    """Número de l em N_0^n com lambda(l) = lambda"""
    return at_one(gaussian_multinomial(len(lam), partition_jumps(lam)))


def descent_set(sigma: Sequence[int]) -> FrozenSet[int]:
    return frozenset(i for i in range(1, len(sigma)) if sigma[i - 1] > sigma[i])


def permutation_stats(sigma: Sequence[int]) -> Tuple[FrozenSet[int], int, int]:
    """(Des(sigma), comprimento de Coxeter, índice maior)"""
    des = descent_set(sigma)
    length = sum(1 for i in range(len(sigma)) for j in range(i + 1, len(sigma)) if sigma[i] > sigma[j])
    return des, length, sum(des)


def _subsets(universe: Sequence[int]) -> Iterator[FrozenSet[int]]:
    for size in range(len(universe) + 1):
        for combo in combinations(universe, size):
            yield frozenset(combo)


def weak_orderings(h: int) -> List[WeakOrdering]:
    if h < 1:
        raise InvalidInputError('h deve ser positivo')
    result = []
    positions = list(range(1, h))
    for sigma in permutations(range(1, h + 1)):
        des = descent_set(sigma)
        free = [j for j in positions if j not in des]
        for extra in _subsets(free):
            result.append(WeakOrdering(sigma, des | extra))
    return sorted(result, key=lambda v: (v.sigma, sorted(v.J)))


def chains(h: int) -> List[Chain]:
    """Cadeias de subconjuntos não vazios e próprios de [h], incluindo a vazia"""
    if h < 1:
        raise InvalidInputError('h deve ser positivo')
    proper = [s for s in _subsets(range(1, h + 1)) if 0 < len(s) < h]
    result: List[Tuple[FrozenSet[int], ...]] = []

    def extend(chain: Tuple[FrozenSet[int], ...]):
        result.append(chain)
        last = chain[-1] if chain else frozenset()
        for s in proper:
            if last < s:
                extend(chain + (s,))

    extend(())
    return [Chain(c) for c in sorted(result, key=lambda c: (len(c), [sorted(s) for s in c]))]


def phi(v: WeakOrdering) -> Chain:
    """(sigma, J) -> ({sigma(1..j)})_{j in J}"""
    return Chain(tuple(frozenset(v.sigma[:j]) for j in sorted(v.J)))


def compatible_partitions(w: DyckWord, f: Sequence[int]) -> List[OrderedSetPartition]:
    """Partições ordenadas (A_1..A_r) de [g] com sum_{j in A_i} f_j = L_i - L_{i-1}"""
    if sum(f) != w.n:
        raise InvalidInputError(f'sum(f)={sum(f)} difere de n={w.n}')
    targets = block_decomposition(w).zero_runs()
    result: List[OrderedSetPartition] = []

    def extend(blocks: Tuple[Tuple[int, ...], ...], remaining: Tuple[int, ...]):
        i = len(blocks)
        if i == len(targets):
            if not remaining:
                result.append(OrderedSetPartition(blocks))
            return
        for size in range(1, len(remaining) + 1):
            for combo in combinations(remaining, size):
                if sum(f[j - 1] for j in combo) == targets[i]:
                    rest = tuple(j for j in remaining if j not in combo)
                    extend(blocks + (combo,), rest)

    extend((), tuple(range(1, len(f) + 1)))
    return sorted(result, key=lambda A: A.blocks)


def phi_A(A: OrderedSetPartition, vs: Sequence[WeakOrdering]) -> WeakOrdering:
    """
    Junta ordenações fracas dos blocos de A numa ordenação fraca de [g]:
    sigma(t_{i-1}+j) = a^{(i)}_{sigma_i(j)}, J = {t_1..t_{r-1}} U (t_{i-1} + J_i).
    """
    if len(vs) != len(A.blocks) or any(v.h != len(block) for v, block in zip(vs, A.blocks)):
        raise InvalidInputError('Tamanhos das ordenações não batem com os blocos de A')
    sigma: List[int] = []
    J = set()
    offset = 0
    for idx, (block, v) in enumerate(zip(A.blocks, vs)):
        sigma.extend(block[k - 1] for k in v.sigma)
        J |= {offset + j for j in v.J}
        offset += len(block)
        if idx < len(A.blocks) - 1:
            J.add(offset)
    return WeakOrdering(tuple(sigma), frozenset(J))


def partition_of(w: DyckWord, v: WeakOrdering, f: Sequence[int]) -> Optional[OrderedSetPartition]:
    """A(w, v), ou None se v não é compatível com w"""
    cut = _cut_points(w, v, f)
    if cut is None:
        return None
    blocks = tuple(tuple(v.sigma[cut[i]:cut[i + 1]]) for i in range(len(cut) - 1))
    return OrderedSetPartition(blocks)


def _cut_points(w: DyckWord, v: WeakOrdering, f: Sequence[int]) -> Optional[List[int]]:
    if len(f) != v.h or sum(f) != w.n:
        raise InvalidInputError('Ordenação fraca, f e w com tamanhos incompatíveis')
    blocks = block_decomposition(w)
    partial = {}
    total = 0
    for j, index in enumerate(v.sigma, start=1):
        total += f[index - 1]
        partial[total] = j
    cut = [0]
    for i in range(1, blocks.r):
        t = partial.get(blocks.L_at(i))
        if t is None or t not in v.J:
            return None
        cut.append(t)
    cut.append(v.h)
    return cut


def decompose_weak_ordering(
    w: DyckWord, v: WeakOrdering, f: Sequence[int]
) -> Tuple[OrderedSetPartition, Tuple[WeakOrdering, ...]]:
    """Inverte phi_A: devolve A = A(w, v) e as ordenações fracas de cada bloco"""
    cut = _cut_points(w, v, f)
    if cut is None:
        raise InvalidInputError(f'{v} não é compatível com {w}')
    A = partition_of(w, v, f)
    vs = []
    for i, block in enumerate(A.blocks):
        start, end = cut[i], cut[i + 1]
        sigma_i = tuple(block.index(x) + 1 for x in v.sigma[start:end])
        J_i = frozenset(j - start for j in v.J if start < j < end)
        vs.append(WeakOrdering(sigma_i, J_i))
    return A, tuple(vs)


def partitions_below(lam: Partition, max_size: Optional[int] = None) -> List[Partition]:
    """Partições mu <= lambda (mesmo comprimento), opcionalmente com |mu| <= max_size"""
    n = len(lam)
    limit = lam.size() if max_size is None else max_size
    result: List[Partition] = []

    def extend(prefix: Tuple[int, ...], total: int):
        i = len(prefix)
        if i == n:
            result.append(Partition(prefix))
            return
        cap = lam.at(i + 1) if i == 0 else min(lam.at(i + 1), prefix[-1])
        for value in range(min(cap, limit - total) + 1):
            extend(prefix + (value,), total + value)

    extend((), 0)
    return result
