import pytest

from combinat import DecompType, compositions
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
from ratfunc import RatFunc, mono
from zeta import inertia_factor, pt, zeta_ab, zeta_inert, zeta_unramified

SMALL = [f for n in range(1, 4) for f in compositions(n)]


def test_symmetry_data_values():
    assert expected_symmetry_unramified(1) == SymmetryData(3, 3, 5)
    assert expected_symmetry_unramified(4) == SymmetryData(12, 66, 20)
    assert expected_symmetry_DwA(2, 2) == SymmetryData(4, 9, 10)
    assert expected_symmetry_abelian(8) == SymmetryData(8, 28, 8)
    assert expected_symmetry_inertia_factor(4, 2) == SymmetryData(2, 0, -8)


@pytest.mark.parametrize('n', range(1, 7))
@pytest.mark.parametrize('g', range(1, 4))
def test_auxiliary_symmetries_compose_to_W(n, g):
    if g > n:
        pytest.skip('g > n')
    composed = (
        expected_symmetry_inertia_factor(n, g)
        .compose(expected_symmetry_abelian(2 * n))
        .compose(expected_symmetry_DwA(n, g))
    )
    expected = expected_symmetry_unramified(n)
    assert (composed.a - expected.a) % 2 == 0
    assert (composed.b, composed.c) == (expected.b, expected.c)


def test_symmetry_data_validation():
    with pytest.raises(InvalidInputError):
        expected_symmetry_unramified(0)
    with pytest.raises(InvalidInputError):
        expected_symmetry_DwA(2, 3)


def test_check_funceq_rejects_zero():
    with pytest.raises(InvalidInputError):
        check_funceq(RatFunc.zero(), SymmetryData(0, 0, 0))


def test_check_funceq_detects_wrong_data():
    F = zeta_ab(3)
    assert check_funceq(F, expected_symmetry_abelian(3))
    assert not check_funceq(F, SymmetryData(3, 3, 4))
    assert not check_funceq(F, SymmetryData(2, 3, 3))


def test_geometric_factor():
    # 1/(1 - p t) -> -p t/(1 - p t)
    assert check_funceq(RatFunc(1, {mono(p=1, t=1): 1}), SymmetryData(1, 1, 1))


@pytest.mark.parametrize('f', [(1,), (2,), (1, 1), (3,), (2, 2), (3, 1), (1, 1, 1, 1)])
def test_inertia_factor_symmetry(f):
    assert check_funceq(inertia_factor(f), expected_symmetry_inertia_factor(sum(f), len(f)))


@pytest.mark.parametrize('d', range(1, 9))
def test_abelian_symmetry(d):
    assert check_funceq(zeta_ab(d), expected_symmetry_abelian(d))


@pytest.mark.parametrize('f', SMALL)
def test_W_functional_equation(f):
    result = zeta_unramified(f)
    assert check_funceq(result.W, expected_symmetry_unramified(sum(f)))


@pytest.mark.slow
@pytest.mark.parametrize('f', compositions(4))
def test_W_functional_equation_n4(f):
    result = zeta_unramified(f)
    assert check_funceq(result.W, expected_symmetry_unramified(4))


@pytest.mark.slow
@pytest.mark.parametrize('f', [(5,), (1, 4), (1, 1, 1, 1, 1)])
def test_W_functional_equation_n5(f):
    result = zeta_unramified(f, cross_check=False)
    assert check_funceq(result.W, expected_symmetry_unramified(5))


@pytest.mark.parametrize('f', SMALL + [(2, 2), (3, 1)])
def test_summand_functional_equation(f):
    result = zeta_unramified(f, cross_check=False)
    sym = expected_symmetry_DwA(result.n, result.g)
    for w, A, D in result.summands:
        assert check_funceq(D, sym), (w.letters, A.to_lists())


@pytest.mark.slow
@pytest.mark.parametrize('f', [f for f in compositions(4) if f not in ((2, 2), (3, 1))])
def test_summand_functional_equation_n4(f):
    result = zeta_unramified(f, cross_check=False)
    sym = expected_symmetry_DwA(4, len(f))
    for w, A, D in result.summands:
        assert check_funceq(D, sym), (w.letters, A.to_lists())


@pytest.mark.parametrize('n', range(1, 5))
def test_inert_functional_equation(n):
    assert check_funceq(zeta_inert(n).W, expected_symmetry_unramified(n))


def test_heisenberg_n1_explicit():
    W = RatFunc(1, {pt(0, 1): 1, pt(1, 1): 1, pt(2, 3): 1})
    assert check_funceq(W, SymmetryData(3, 3, 5))


def test_conjectural_symmetry_reduces_to_unramified():
    assert expected_symmetry_conjectural(DecompType.unramified((2, 1))) == expected_symmetry_unramified(3)
    assert expected_symmetry_conjectural(DecompType((2,), (1,))) == SymmetryData(6, 15, 12)
