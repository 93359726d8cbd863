import random

import pytest

from combinat import Partition, pair_decomposition, partitions_below
from counting import (
    alpha,
    alpha_by_blocks,
    alpha_bruteforce,
    check_lambda_split,
    check_mu_split,
    elementary_divisor_exponents,
    subgroup_census,
)
from errors import InvalidInputError, ResourceLimitError
from ratfunc import LaurentPoly, Monomial


def small_partitions(max_part: int = 3, max_size: int = 6, max_len: int = 3):
    result = []

    def extend(prefix):
        if prefix and sum(prefix) <= max_size:
            result.append(Partition(tuple(prefix)))
        if len(prefix) == max_len:
            return
        cap = prefix[-1] if prefix else max_part
        for value in range(1, cap + 1):
            if sum(prefix) + value <= max_size:
                extend(prefix + [value])

    extend([])
    return result


def random_pair(rng: random.Random):
    n = rng.randint(1, 5)
    lam = Partition(tuple(sorted((rng.randint(0, 5) for _ in range(n)), reverse=True)))
    mu = Partition(tuple(sorted((rng.randint(0, x) for x in lam.parts), reverse=True)))
    mu = Partition(tuple(min(a, b) for a, b in zip(mu.parts, lam.parts)))
    return lam, mu


def test_alpha_small_values():
    # subgrupos de ordem p em (Z/p)^2: p + 1
    assert alpha(Partition((1, 1)), Partition((1, 0))) == LaurentPoly({Monomial({'p': 1}): 1, Monomial.one(): 1})
    assert alpha(Partition((1, 1)), Partition((1, 0))).evaluate({'p': 3}) == 4
    assert alpha(Partition((2, 1)), Partition((0, 0))) == 1
    assert alpha(Partition((2, 1)), Partition((2, 1))) == 1


def test_alpha_rejects_non_dominated_pair():
    with pytest.raises(InvalidInputError):
        alpha(Partition((1, 0)), Partition((2, 0)))


@pytest.mark.parametrize('prime', [2, pytest.param(3, marks=pytest.mark.slow)])
def test_alpha_matches_bruteforce(prime, monkeypatch):
    monkeypatch.setenv('ZETA_BRUTEFORCE_MAX_ORDER', str(3 ** 6))
    for lam in small_partitions():
        census = subgroup_census(lam, prime)
        for mu in partitions_below(lam):
            expected = alpha(lam, mu).evaluate({'p': prime})
            assert census.get(mu.parts, 0) == expected, (lam.parts, mu.parts)


def test_census_totals_match_subgroup_count():
    # (Z/2)^3: 1 + 7 + 7 + 1 subgrupos
    census = subgroup_census(Partition((1, 1, 1)), 2)
    assert sum(census.values()) == 16
    assert census[(1, 1, 0)] == 7


def test_alpha_bruteforce_single_pair():
    assert alpha_bruteforce(Partition((1, 1)), Partition((1, 0)), 3) == 4


def test_bruteforce_refuses_large_groups(monkeypatch):
    monkeypatch.setenv('ZETA_BRUTEFORCE_MAX_ORDER', '100')
    with pytest.raises(ResourceLimitError) as info:
        subgroup_census(Partition((3, 2)), 3)
    assert info.value.estimate == 3 ** 5
    assert info.value.limit == 100


def test_bruteforce_rejects_composite_prime():
    with pytest.raises(InvalidInputError):
        subgroup_census(Partition((1,)), 4)


def test_block_splittings_on_random_pairs():
    rng = random.Random(2024)
    for _ in range(1000):
        lam, mu = random_pair(rng)
        for i in range(1, pair_decomposition(mu, lam).r + 1):
            assert check_mu_split(lam, mu, i), (lam.parts, mu.parts, i)
            assert check_lambda_split(lam, mu, i), (lam.parts, mu.parts, i)


def test_alpha_by_blocks_regroups_birkhoff():
    rng = random.Random(11)
    for _ in range(200):
        lam, mu = random_pair(rng)
        assert alpha_by_blocks(lam, mu) == alpha(lam, mu)


def test_alpha_has_non_negative_coefficients():
    for lam in small_partitions(4, 8, 4):
        for mu in partitions_below(lam):
            value = alpha(lam, mu)
            assert value.min_exponent('p') >= 0
            assert all(c > 0 for _, c in value.items())


def test_elementary_divisor_exponents():
    rows = [[4, 0], [0, 2]]
    assert elementary_divisor_exponents(rows, 2) == [2, 1]
    assert elementary_divisor_exponents([[2, 1], [0, 2]], 2) == [2, 0]
