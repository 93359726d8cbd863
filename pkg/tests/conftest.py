from typing import Dict

import pytest

from combinat import at_inverse_p, dyck_words, gaussian_binomial, gaussian_multinomial
from config import get_settings
from igusa import Y_INVERSE_P, igusa_I, igusa_I_circ
from ratfunc import LaurentPoly, RatFunc, gp, gpzero, rf_prod
from zeta import pt, zeta_ab

T2 = pt(0, 2)


def binom(a: int, b: int) -> RatFunc:
    """binom(a, b)_{p^-1}"""
    return RatFunc(at_inverse_p(gaussian_binomial(a, b)))


def multinom(n: int, I) -> RatFunc:
    return RatFunc(at_inverse_p(gaussian_multinomial(n, I)))


def inv(m, k: int = 1) -> RatFunc:
    """1 / (1 - m)^k"""
    return RatFunc(1, {m: k})


def I(*xs) -> RatFunc:
    return igusa_I(len(xs), Y_INVERSE_P, list(xs))


def I_circ(*xs) -> RatFunc:
    return igusa_I_circ(len(xs), Y_INVERSE_P, list(xs))


def I_one(*xs) -> RatFunc:
    return igusa_I(len(xs), 1, list(xs))


def product(*factors) -> RatFunc:
    return rf_prod(f if isinstance(f, RatFunc) else RatFunc(f) for f in factors)


def _words(n: int) -> Dict[str, str]:
    """Palavras de Dyck rotuladas A, B, C, ... em ordem lexicográfica"""
    return {chr(ord('A') + i): w.letters for i, w in enumerate(dyck_words(n))}


@pytest.fixture(autouse=True)
def fresh_settings():
    """Relê o ambiente a cada teste (monkeypatch de ZETA_* fica isolado)"""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture(scope='session')
def words_n3() -> Dict[str, str]:
    return _words(3)


@pytest.fixture(scope='session')
def words_n4() -> Dict[str, str]:
    return _words(4)


@pytest.fixture(scope='session')
def totally_split_n3() -> Dict[str, RatFunc]:
    """Somandos D^1_w para n = 3, por rótulo de palavra"""
    x1, x2, x3 = pt(8, 7), pt(14, 8), pt(18, 9)
    return {
        'A': product(
            gpzero(x3),
            1 + binom(3, 1) * (gp(x2) + gp(x1)) + multinom(3, [1, 2]) * gp(x2) * gp(x1),
            inv(T2, 3),
        ),
        'B': product(3, gpzero(x3), 1 + binom(2, 1) * gp(x2), gpzero(x1), binom(2, 1), gp(pt(7, 5)), inv(T2, 2)),
        'C': product(3, gpzero(x3), gpzero(x2), gp(pt(12, 6)), 1 + binom(2, 1) * gp(pt(7, 5)), inv(T2, 2)),
        'D': product(3, gpzero(x3), 1 + binom(2, 1) * gp(x2), gpzero(x1), 1 + 2 * gp(pt(7, 5)), gp(pt(6, 3)), inv(T2)),
        'E': product(6, gpzero(x3), gpzero(x2), gp(pt(12, 6)), gpzero(pt(7, 5)), gp(pt(6, 3)), inv(T2)),
    }


@pytest.fixture(scope='session')
def totally_split_n4() -> Dict[str, RatFunc]:
    """Somandos D^1_w para n = 4, por rótulo de palavra"""
    top3 = I(pt(20, 10), pt(27, 11), pt(32, 12))
    top2 = I(pt(27, 11), pt(32, 12))
    last2 = product(gpzero(pt(27, 11)), gpzero(pt(32, 12)))
    return {
        'A': product(inv(T2, 4), I(pt(11, 9), pt(20, 10), pt(27, 11), pt(32, 12))),
        'B': product(4, inv(T2, 3), binom(3, 2), gp(pt(10, 7)), gpzero(pt(11, 9)), top3),
        'C': product(4, inv(T2, 3), binom(3, 1), I_circ(pt(10, 7), pt(18, 8)), gpzero(pt(20, 10)), top2),
        'D': product(4, inv(T2, 3), I_circ(pt(10, 7), pt(18, 8), pt(24, 9)), last2),
        'E': product(6, inv(T2, 2), binom(2, 1), gp(pt(9, 5)), I_one(pt(10, 7), pt(11, 9)), top3),
        'F': product(
            12, inv(T2, 2), binom(2, 1) ** 2, gp(pt(9, 5)), gpzero(pt(10, 7)), gp(pt(18, 8)), gpzero(pt(20, 10)), top2
        ),
        'G': product(12, inv(T2, 2), binom(2, 1), gp(pt(9, 5)), gpzero(pt(10, 7)), I_circ(pt(18, 8), pt(24, 9)), last2),
        'H': product(6, inv(T2, 2), I_circ(pt(9, 5), pt(16, 6)), I_one(pt(18, 8), pt(20, 10)), top2),
        'I': product(12, inv(T2, 2), I_circ(pt(9, 5), pt(16, 6)), gpzero(pt(18, 8)), gp(pt(24, 9)), last2),
        'J': product(4, inv(T2), gp(pt(8, 3)), I_one(pt(9, 5), pt(10, 7), pt(11, 9)), top3),
        'K': product(
            12, inv(T2), binom(2, 1), gp(pt(8, 3)), I_one(pt(9, 5), pt(10, 7)), gp(pt(18, 8)), gpzero(pt(20, 10)), top2
        ),
        'L': product(12, inv(T2), gp(pt(8, 3)), I_one(pt(9, 5), pt(10, 7)), I_circ(pt(18, 8), pt(24, 9)), last2),
        'M': product(12, inv(T2), gp(pt(8, 3)), gpzero(pt(9, 5)), gp(pt(16, 6)), I_one(pt(18, 8), pt(20, 10)), top2),
        'N': product(
            24, inv(T2), gp(pt(8, 3)), gpzero(pt(9, 5)), gp(pt(16, 6)), gpzero(pt(18, 8)), gp(pt(24, 9)), last2
        ),
    }


@pytest.fixture(scope='session')
def summands_22() -> Dict[str, RatFunc]:
    """D^{(2,2)}_{w,A} para as partições ({1}, {2}) e ({1, 2})"""
    T4 = pt(0, 4)
    return {
        'A': product(inv(T4, 2), I(pt(11, 9), pt(20, 10), pt(27, 11), pt(32, 12))),
        'E': product(inv(T4), binom(2, 1), gp(pt(9, 5)), gpzero(pt(11, 9)), I(pt(20, 10), pt(27, 11), pt(32, 12))),
        'H': product(inv(T4), I_circ(pt(9, 5), pt(16, 6)), gpzero(pt(20, 10)), I(pt(27, 11), pt(32, 12))),
    }


@pytest.fixture(scope='session')
def summands_31() -> Dict[str, RatFunc]:
    T6 = pt(0, 6)
    top3 = I(pt(20, 10), pt(27, 11), pt(32, 12))
    return {
        'A': product(inv(T6), inv(T2), I(pt(11, 9), pt(20, 10), pt(27, 11), pt(32, 12))),
        'B': product(binom(3, 2), gpzero(T6), gp(pt(10, 7)), gpzero(pt(11, 9)), top3),
        'C': product(
            binom(3, 1), gpzero(T6), I_circ(pt(10, 7), pt(18, 8)), gpzero(pt(20, 10)), I(pt(27, 11), pt(32, 12))
        ),
        'D': product(gpzero(T6), I_circ(pt(10, 7), pt(18, 8), pt(24, 9)), gpzero(pt(27, 11)), gpzero(pt(32, 12))),
        'J': product(gpzero(T2), gp(pt(8, 3)), gpzero(pt(11, 9)), top3),
    }


_P_22_TERMS = [
    (1, 61, 35), (2, 53, 30), (-1, 53, 26), (1, 52, 30), (-1, 52, 26), (1, 51, 26), (-1, 45, 25), (1, 44, 25),
    (-1, 44, 21), (2, 43, 25), (-1, 43, 21), (1, 42, 25), (-1, 42, 21), (-1, 37, 24), (-1, 36, 24), (1, 36, 20),
    (1, 35, 24), (-1, 35, 20), (-1, 35, 16), (-1, 34, 16), (1, 33, 20), (-1, 33, 16), (-1, 28, 19), (1, 28, 15),
    (-1, 27, 19), (-1, 26, 19), (-1, 26, 15), (1, 26, 11), (1, 25, 15), (-1, 25, 11), (-1, 24, 11), (-1, 19, 14),
    (1, 19, 10), (-1, 18, 14), (2, 18, 10), (-1, 17, 14), (1, 17, 10), (-1, 16, 10), (1, 10, 9), (-1, 9, 9),
    (1, 9, 5), (-1, 8, 9), (2, 8, 5), (1, 0, 0),
]


@pytest.fixture(scope='session')
def numerator_22() -> LaurentPoly:
    """Numerador P(p, t) do fator para f = (2, 2)"""
    return LaurentPoly({pt(a, b): c for c, a, b in _P_22_TERMS})


@pytest.fixture(scope='session')
def zeta_22(numerator_22) -> RatFunc:
    """zeta_{Z_p^8} zeta_p(11s-27) zeta_p(10s-20) zeta_p(9s-11) zeta_p(5s-9) zeta_p(6s-16)^2 P"""
    den = {pt(27, 11): 1, pt(20, 10): 1, pt(11, 9): 1, pt(9, 5): 1, pt(16, 6): 2}
    return zeta_ab(8) * RatFunc(numerator_22, den)


@pytest.fixture
def db_path(tmp_path) -> str:
    return str(tmp_path / 'zeta_test.db')
