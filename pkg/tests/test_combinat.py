import random
from fractions import Fraction
from itertools import combinations, permutations

import pytest

from combinat import (
    DecompType,
    DyckWord,
    OrderedSetPartition,
    Partition,
    WeakOrdering,
    at_inverse_p,
    at_one,
    beta,
    block_decomposition,
    chains,
    compatible_partitions,
    compositions,
    decompose_weak_ordering,
    descent_set,
    dual_partition,
    dyck_of_pair,
    dyck_words,
    gaussian_binomial,
    gaussian_multinomial,
    jump_sets,
    pair_decomposition,
    parse_composition,
    partition_of,
    partitions_below,
    permutation_stats,
    phi,
    phi_A,
    successive_differences,
    weak_orderings,
)
from errors import InvalidInputError
from ratfunc import LaurentPoly, Monomial

CATALAN = [1, 1, 2, 5, 14, 42, 132, 429, 1430]
ORDERED_BELL = [1, 1, 3, 13, 75, 541, 4683]


def Ypow(k: int) -> LaurentPoly:
    return LaurentPoly.monomial(Monomial({'Y': k}))


def dyck_brute_force(mu: Partition, lam: Partition) -> DyckWord:
    """Palavra do par pela ordenação das partes: lambda_j antes de mu_j em caso de empate"""
    keyed = [(x, 1, '0') for x in lam.parts] + [(x, 0, '1') for x in mu.parts]
    keyed.sort(key=lambda item: (-item[0], -item[1]))
    return DyckWord(''.join(letter for _, _, letter in keyed))


def random_pair(rng: random.Random, n: int, top: int):
    lam = Partition(tuple(sorted((rng.randint(0, top) for _ in range(n)), reverse=True)))
    mu = Partition(tuple(sorted((rng.randint(0, x) for x in lam.parts), reverse=True)))
    if not mu.dominated_by(lam):
        mu = Partition(tuple(min(a, b) for a, b in zip(mu.parts, lam.parts)))
    return lam, mu


@pytest.mark.parametrize('n', range(1, 9))
def test_dyck_words_catalan(n):
    assert len(dyck_words(n)) == CATALAN[n]


def test_dyck_words_n3_lexicographic():
    assert [w.letters for w in dyck_words(3)] == ['000111', '001011', '001101', '010011', '010101']


@pytest.mark.parametrize('letters', ['10', '0', '0110', '0201', ''])
def test_invalid_dyck_words(letters):
    with pytest.raises(InvalidInputError):
        DyckWord(letters)


def test_block_decomposition_round_trip():
    for w in dyck_words(5):
        blocks = block_decomposition(w)
        assert blocks.word() == w
        assert blocks.n == 5
        assert all(l >= m for l, m in zip(blocks.L, blocks.M))


def test_block_decomposition_example():
    blocks = block_decomposition(DyckWord('00101101'))
    assert blocks.L == (2, 3, 4)
    assert blocks.M == (1, 3, 4)
    assert blocks.zero_runs() == [2, 1, 1]


def test_dyck_of_pair_matches_brute_force():
    rng = random.Random(7)
    for _ in range(300):
        lam, mu = random_pair(rng, rng.randint(1, 5), 4)
        assert dyck_of_pair(mu, lam) == dyck_brute_force(mu, lam)


def test_dyck_of_pair_requires_domination():
    with pytest.raises(InvalidInputError):
        dyck_of_pair(Partition((2, 0)), Partition((1, 1)))


def test_successive_differences_example():
    lam, mu = Partition((3, 1)), Partition((2, 0))
    assert pair_decomposition(mu, lam).word() == DyckWord('0101')
    r, s = successive_differences(mu, lam)
    assert r == (1, 0)
    assert s == (1, 1)


def test_jump_sets_example():
    lam, mu = Partition((3, 2, 1)), Partition((1, 1, 0))
    J_mu, J_lam = jump_sets(mu, lam)
    assert J_lam == [frozenset({1, 2})]
    assert J_mu == [frozenset({1})]


def test_gaussian_binomial_small():
    assert gaussian_binomial(2, 1) == LaurentPoly.constant(1) + Ypow(1)
    assert gaussian_binomial(4, 2) == (
        LaurentPoly.constant(1) + Ypow(1) + Ypow(2) * 2 + Ypow(3) + Ypow(4)
    )
    assert at_inverse_p(gaussian_binomial(2, 1)).evaluate({'p': 2}) == Fraction(3, 2)
    with pytest.raises(InvalidInputError):
        gaussian_binomial(2, 3)


@pytest.mark.parametrize('h', range(1, 7))
def test_binomial_descent_identity(h):
    # binom(h, I)_Y = sum_{sigma: Des(sigma) in I} Y^{ell(sigma)}
    for size in range(h):
        for I in map(frozenset, combinations(range(1, h), size)):
            total = LaurentPoly()
            for sigma in permutations(range(1, h + 1)):
                des, length, _ = permutation_stats(sigma)
                if des <= I:
                    total = total + Ypow(length)
            assert gaussian_multinomial(h, I) == total


@pytest.mark.parametrize('h', range(1, 7))
def test_coxeter_length_and_major_index_equidistributed(h):
    lengths = LaurentPoly()
    majors = LaurentPoly()
    for sigma in permutations(range(1, h + 1)):
        _, length, major = permutation_stats(sigma)
        lengths = lengths + Ypow(length)
        majors = majors + Ypow(major)
    assert lengths == majors
    assert at_one(gaussian_multinomial(h, range(1, h))) == len(list(permutations(range(h))))


@pytest.mark.parametrize('h', range(1, 7))
def test_weak_orderings_ordered_bell(h):
    assert len(weak_orderings(h)) == ORDERED_BELL[h]


@pytest.mark.parametrize('h', range(1, 5))
def test_phi_is_bijection_onto_chains(h):
    images = [phi(v) for v in weak_orderings(h)]
    assert len(set(images)) == len(images)
    assert set(images) == set(chains(h))


def test_weak_ordering_rejects_descent_outside_J():
    with pytest.raises(InvalidInputError):
        WeakOrdering((2, 1), frozenset())
    assert descent_set((2, 1, 3)) == frozenset({1})


def test_compatible_partitions_22():
    words = {w.letters: w for w in dyck_words(4)}
    assert [A.to_lists() for A in compatible_partitions(words['00001111'], (2, 2))] == [[[1, 2]]]
    assert [A.to_lists() for A in compatible_partitions(words['00100111'], (2, 2))] == [[[1], [2]], [[2], [1]]]
    assert compatible_partitions(words['01010101'], (2, 2)) == []


def test_compatible_partitions_31():
    compatible = {w.letters: [A.to_lists() for A in compatible_partitions(w, (3, 1))] for w in dyck_words(4)}
    assert {w for w, parts in compatible.items() if parts} == {
        '00001111', '00010111', '00011011', '00011101', '01000111'
    }
    assert compatible['00010111'] == [[[1], [2]]]
    assert compatible['01000111'] == [[[2], [1]]]


def test_totally_split_partitions_count():
    # f = 1: cada palavra admite binom(n, L) partições
    for w in dyck_words(4):
        blocks = block_decomposition(w)
        expected = at_one(gaussian_multinomial(4, blocks.L[:-1]))
        assert len(compatible_partitions(w, (1, 1, 1, 1))) == expected


@pytest.mark.parametrize('f', [(1, 1, 1), (2, 1), (1, 2, 1), (2, 2)])
def test_phi_A_inverts_decompose(f):
    n = sum(f)
    for w in dyck_words(n):
        for v in weak_orderings(len(f)):
            A = partition_of(w, v, f)
            if A is None:
                continue
            A2, vs = decompose_weak_ordering(w, v, f)
            assert A2 == A
            assert phi_A(A, vs) == v


def test_ordered_set_partition_validation():
    with pytest.raises(InvalidInputError):
        OrderedSetPartition(((1,), (1, 2)))
    with pytest.raises(InvalidInputError):
        OrderedSetPartition(((1,), (3,)))


def test_dual_partition_and_beta():
    assert dual_partition(Partition((3, 1, 0))) == Partition((2, 1, 1))
    # multiplicidades (1, 2): 3!/(1! 2!) = 3
    assert beta(Partition((2, 1, 1))) == 3


def test_partitions_below():
    below = partitions_below(Partition((2, 1)))
    assert [mu.parts for mu in below] == [(0, 0), (1, 0), (1, 1), (2, 0), (2, 1)]
    assert all(mu.size() <= 1 for mu in partitions_below(Partition((2, 1)), 1))


def test_compositions_and_parsing():
    assert len(compositions(4)) == 8
    assert compositions(3) == [(1, 1, 1), (1, 2), (2, 1), (3,)]
    assert parse_composition('2, 2') == (2, 2)
    for bad in ['', '0,1', 'a']:
        with pytest.raises(InvalidInputError):
            parse_composition(bad)


def test_decomp_type():
    decomp = DecompType((2, 1), (1, 3))
    assert decomp.n == 5
    assert decomp.C(1) == 2
    assert not decomp.is_unramified()
    assert DecompType.unramified((2, 2)).is_unramified()
    with pytest.raises(InvalidInputError):
        DecompType((1,), (1, 1))


def test_partition_validation():
    with pytest.raises(InvalidInputError):
        Partition((1, 2))
    assert Partition((2, 1)).at(3) == 0
