"""
Aritmética exata de polinômios de Laurent e funções racionais em p, t
(e variáveis auxiliares), com denominadores fatorados em binômios (1 - m).
"""
import logging
from fractions import Fraction
from math import gcd
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Set, Tuple, Union

from sympy import divisors

from errors import InvalidInputError, SeriesExpansionError

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

Coefficient = Union[int, Fraction]


class VariableRegistry:
    """
    Registro global (apenas inserção) dos nomes de variáveis.
    A ordem de registro define a ordem lexicográfica dos monômios: p, t, Y, ...
    """

    def __init__(self, base: Sequence[str] = ('p', 't', 'Y')):
        self._index: Dict[str, int] = {}
        self._names: List[str] = []
        for name in base:
            self.index(name)

    def index(self, name: str) -> int:
        position = self._index.get(name)
        if position is None:
            if not name or not name[0].isalpha():
                raise InvalidInputError(f"Nome de variável inválido: '{name}'")
            position = len(self._names)
            self._index[name] = position
            self._names.append(name)
        return position

    def name(self, position: int) -> str:
        return self._names[position]

    def names(self) -> List[str]:
        return list(self._names)

    def __len__(self) -> int:
        return len(self._names)


VARIABLES = VariableRegistry()
P_INDEX = VARIABLES.index('p')
T_INDEX = VARIABLES.index('t')


class Monomial:
    """Monômio de Laurent com coeficiente 1, guardado como pares (índice, expoente)."""

    __slots__ = ('_exps', '_hash')

    def __init__(self, exponents: Optional[Mapping[str, int]] = None):
        items = []
        if exponents:
            for name, exp in exponents.items():
                if exp:
                    items.append((VARIABLES.index(name), int(exp)))
        items.sort()
        self._exps: Tuple[Tuple[int, int], ...] = tuple(items)
        self._hash = hash(self._exps)

    @classmethod
    def _from_items(cls, items: Tuple[Tuple[int, int], ...]) -> 'Monomial':
        obj = cls.__new__(cls)
        obj._exps = items
        obj._hash = hash(items)
        return obj

    @classmethod
    def one(cls) -> 'Monomial':
        return cls._from_items(())

    def exponent(self, name: str) -> int:
        return self.exponent_at(VARIABLES.index(name))

    def exponent_at(self, position: int) -> int:
        for idx, exp in self._exps:
            if idx == position:
                return exp
        return 0

    def exponents(self) -> Dict[str, int]:
        return {VARIABLES.name(idx): exp for idx, exp in self._exps}

    def variables(self) -> Set[str]:
        return {VARIABLES.name(idx) for idx, _ in self._exps}

    def sort_key(self) -> Tuple[Tuple[int, int], ...]:
        return self._exps

    def is_one(self) -> bool:
        return not self._exps

    def leading_sign(self) -> int:
        """Sinal do primeiro expoente não nulo na ordem do registro"""
        if not self._exps:
            return 0
        return 1 if self._exps[0][1] > 0 else -1

    def exponent_gcd(self) -> int:
        result = 0
        for _, exp in self._exps:
            result = gcd(result, exp)
        return result

    def root(self, d: int) -> 'Monomial':
        if any(exp % d for _, exp in self._exps):
            raise InvalidInputError(f'{self} não é uma potência {d}-ésima')
        return Monomial._from_items(tuple((idx, exp // d) for idx, exp in self._exps))

    def __mul__(self, other: 'Monomial') -> 'Monomial':
        if not other._exps:
            return self
        if not self._exps:
            return other
        merged = dict(self._exps)
        for idx, exp in other._exps:
            value = merged.get(idx, 0) + exp
            if value:
                merged[idx] = value
            else:
                del merged[idx]
        return Monomial._from_items(tuple(sorted(merged.items())))

    def __truediv__(self, other: 'Monomial') -> 'Monomial':
        return self * other.inverse()

    def __pow__(self, k: int) -> 'Monomial':
        if k == 0:
            return Monomial.one()
        return Monomial._from_items(tuple((idx, exp * k) for idx, exp in self._exps))

    def inverse(self) -> 'Monomial':
        return self ** -1

    def substitute(self, mapping: Mapping[str, 'Monomial']) -> 'Monomial':
        result = Monomial.one()
        kept = []
        for idx, exp in self._exps:
            value = mapping.get(VARIABLES.name(idx))
            if value is None:
                kept.append((idx, exp))
            else:
                result = result * value ** exp
        return result * Monomial._from_items(tuple(kept))

    def evaluate(self, values: Mapping[str, Coefficient]) -> Fraction:
        result = Fraction(1)
        for idx, exp in self._exps:
            name = VARIABLES.name(idx)
            if name not in values:
                raise InvalidInputError(f"Sem valor para a variável '{name}'")
            result *= Fraction(values[name]) ** exp
        return result

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Monomial) and self._exps == other._exps

    def __hash__(self) -> int:
        return self._hash

    def __reduce__(self):
        # índices valem só no registro deste processo; serializa por nome
        return (Monomial, (self.exponents(),))

    def __str__(self) -> str:
        if not self._exps:
            return '1'
        parts = []
        for idx, exp in self._exps:
            name = VARIABLES.name(idx)
            parts.append(name if exp == 1 else f'{name}^{exp}')
        return '*'.join(parts)

    def __repr__(self) -> str:
        return f'Monomial({self})'

    def to_latex(self) -> str:
        if not self._exps:
            return '1'
        parts = []
        for idx, exp in self._exps:
            name = _latex_name(VARIABLES.name(idx))
            parts.append(name if exp == 1 else f'{name}^{{{exp}}}')
        return ' '.join(parts)


def _latex_name(name: str) -> str:
    if '_' not in name:
        return name
    head, *rest = name.split('_')
    return f"{head}_{{{','.join(rest)}}}"


def mono(**exponents: int) -> Monomial:
    """Atalho: mono(p=2, t=3) == p^2 t^3"""
    return Monomial(exponents)


def _normalize(c: Coefficient) -> Coefficient:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class LaurentPoly:
    """Polinômio de Laurent com coeficientes racionais exatos."""

    __slots__ = ('_terms',)

    def __init__(self, terms: Optional[Mapping[Monomial, Coefficient]] = None):
        self._terms: Dict[Monomial, Coefficient] = {}
        if terms:
            for m, c in terms.items():
                if c:
                    self._terms[m] = _normalize(c)

    @classmethod
    def constant(cls, c: Coefficient) -> 'LaurentPoly':
        return cls({Monomial.one(): c})

    @classmethod
    def monomial(cls, m: Monomial, c: Coefficient = 1) -> 'LaurentPoly':
        return cls({m: c})

    @classmethod
    def variable(cls, name: str) -> 'LaurentPoly':
        return cls({Monomial({name: 1}): 1})

    @classmethod
    def coerce(cls, value: Union['LaurentPoly', Monomial, Coefficient]) -> 'LaurentPoly':
        if isinstance(value, LaurentPoly):
            return value
        if isinstance(value, Monomial):
            return cls.monomial(value)
        if isinstance(value, (int, Fraction)):
            return cls.constant(value)
        raise InvalidInputError(f'Não é possível converter {value!r} em polinômio')

    def terms(self) -> Dict[Monomial, Coefficient]:
        return dict(self._terms)

    def items(self) -> List[Tuple[Monomial, Coefficient]]:
        """Termos em ordem decrescente (lexicográfica p, t, ...)"""
        return sorted(self._terms.items(), key=lambda item: _dense_key(item[0]), reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def constant_term(self) -> Coefficient:
        return self._terms.get(Monomial.one(), 0)

    def coefficient(self, m: Monomial) -> Coefficient:
        return self._terms.get(m, 0)

    def variables(self) -> Set[str]:
        names: Set[str] = set()
        for m in self._terms:
            names |= m.variables()
        return names

    def min_exponent(self, name: str) -> int:
        if not self._terms:
            return 0
        position = VARIABLES.index(name)
        return min(m.exponent_at(position) for m in self._terms)

    def max_exponent(self, name: str) -> int:
        if not self._terms:
            return 0
        position = VARIABLES.index(name)
        return max(m.exponent_at(position) for m in self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __add__(self, other) -> 'LaurentPoly':
        other = LaurentPoly.coerce(other)
        result = dict(self._terms)
        for m, c in other._terms.items():
            result[m] = result.get(m, 0) + c
        return LaurentPoly(result)

    __radd__ = __add__

    def __neg__(self) -> 'LaurentPoly':
        return LaurentPoly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> 'LaurentPoly':
        return self + (-LaurentPoly.coerce(other))

    def __rsub__(self, other) -> 'LaurentPoly':
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other) -> 'LaurentPoly':
        if isinstance(other, Monomial):
            return LaurentPoly({m * other: c for m, c in self._terms.items()})
        if isinstance(other, (int, Fraction)):
            return LaurentPoly({m: c * other for m, c in self._terms.items()})
        other = LaurentPoly.coerce(other)
        result: Dict[Monomial, Coefficient] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = m1 * m2
                result[m] = result.get(m, 0) + c1 * c2
        return LaurentPoly(result)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> 'LaurentPoly':
        if k < 0:
            if not self.is_monomial():
                raise InvalidInputError('Potência negativa de polinômio não monomial')
            (m, c), = self._terms.items()
            return LaurentPoly({m ** k: Fraction(c) ** k})
        result = LaurentPoly.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, Monomial)):
            other = LaurentPoly.coerce(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None

    def substitute(self, mapping: Mapping[str, Union['LaurentPoly', Monomial, Coefficient]]) -> 'LaurentPoly':
        """Substitui variáveis por monômios ou polinômios (expoentes negativos só para monômios)"""
        polys = {name: LaurentPoly.coerce(value) for name, value in mapping.items()}
        monomials = {name: _as_unit_monomial(poly) for name, poly in polys.items()}
        if all(m is not None for m in monomials.values()):
            result: Dict[Monomial, Coefficient] = {}
            for m, c in self._terms.items():
                key = m.substitute(monomials)
                result[key] = result.get(key, 0) + c
            return LaurentPoly(result)

        total = LaurentPoly()
        for m, c in self._terms.items():
            term = LaurentPoly.constant(c)
            rest = {}
            for name, exp in m.exponents().items():
                if name in polys:
                    term = term * polys[name] ** exp
                else:
                    rest[name] = exp
            total = total + term * Monomial(rest)
        return total

    def evaluate(self, values: Mapping[str, Coefficient]) -> Fraction:
        total = Fraction(0)
        for m, c in self._terms.items():
            total += c * m.evaluate(values)
        return total

    def exact_divide(self, u: Monomial, coefficients: Sequence[Coefficient]) -> Optional['LaurentPoly']:
        """
        Divisão exata por D(u) = sum_k coefficients[k] * u^k.

        Os termos são agrupados por classe módulo potências de u; em cada classe
        o problema vira uma divisão univariada. Retorna None se não for exata.
        """
        degree = len(coefficients) - 1
        lead = coefficients[-1]
        if degree == 0:
            return self * lead if lead in (1, -1) else self / lead
        if u.is_one() or coefficients[0] == 0:
            raise InvalidInputError('Divisor deve ter termo constante e monômio não trivial')
        pivot, pivot_exp = u.sort_key()[0]
        step = abs(pivot_exp)
        classes: Dict[Monomial, Dict[int, Coefficient]] = {}
        for m, c in self._terms.items():
            e = m.exponent_at(pivot)
            k = (e - e % step) // pivot_exp
            classes.setdefault(m * u ** (-k), {})[k] = c

        quotient: Dict[Monomial, Coefficient] = {}
        for rep, poly in classes.items():
            low = min(poly)
            high = max(poly)
            rem = [poly.get(low + j, 0) for j in range(high - low + 1)]
            if len(rem) - 1 < degree:
                return None
            q = [0] * (len(rem) - degree)
            for j in range(len(rem) - 1, degree - 1, -1):
                c = rem[j]
                if not c:
                    continue
                factor = c * lead if lead in (1, -1) else Fraction(c) / lead
                q[j - degree] = factor
                for i, d in enumerate(coefficients):
                    if d:
                        rem[j - degree + i] -= factor * d
            if any(rem[:degree]):
                return None
            for j, c in enumerate(q):
                if c:
                    quotient[rep * u ** (low + j)] = c
        return LaurentPoly(quotient)

    def __truediv__(self, other) -> 'LaurentPoly':
        if isinstance(other, (int, Fraction)):
            return LaurentPoly({m: Fraction(c) / other for m, c in self._terms.items()})
        other = LaurentPoly.coerce(other)
        if not other.is_monomial():
            raise InvalidInputError('Divisão de polinômios só por monômio; use exact_divide')
        (m, c), = other._terms.items()
        return LaurentPoly({k / m: Fraction(v) / c for k, v in self._terms.items()})

    def __str__(self) -> str:
        if not self._terms:
            return '0'
        out = ''
        for i, (m, c) in enumerate(self.items()):
            sign = '-' if c < 0 else '+'
            magnitude = abs(c)
            if m.is_one():
                body = str(magnitude)
            elif magnitude == 1:
                body = str(m)
            else:
                body = f'{magnitude}*{m}'
            out += (('-' if sign == '-' else '') + body) if i == 0 else f' {sign} {body}'
        return out

    def __repr__(self) -> str:
        return f'LaurentPoly({self})'

    def to_latex(self) -> str:
        if not self._terms:
            return '0'
        out = ''
        for i, (m, c) in enumerate(self.items()):
            magnitude = abs(c)
            if isinstance(magnitude, Fraction):
                coef = f'\\frac{{{magnitude.numerator}}}{{{magnitude.denominator}}}'
            else:
                coef = str(magnitude)
            if m.is_one():
                body = coef
            elif magnitude == 1:
                body = m.to_latex()
            else:
                body = f'{coef} {m.to_latex()}'
            if i == 0:
                out = ('-' if c < 0 else '') + body
            else:
                out += (' - ' if c < 0 else ' + ') + body
        return out

    def to_json_list(self) -> List[list]:
        out = []
        for m, c in self.items():
            c = Fraction(c)
            out.append([str(c.numerator), str(c.denominator), m.exponents()])
        return out

    @classmethod
    def from_json_list(cls, data: Iterable[Sequence]) -> 'LaurentPoly':
        terms: Dict[Monomial, Coefficient] = {}
        for num, den, exps in data:
            m = Monomial({k: int(v) for k, v in exps.items()})
            terms[m] = terms.get(m, 0) + Fraction(int(num), int(den))
        return cls(terms)


def _dense_key(m: Monomial) -> Tuple[int, ...]:
    exps = dict(m.sort_key())
    return tuple(exps.get(i, 0) for i in range(len(VARIABLES)))


def _as_unit_monomial(poly: LaurentPoly) -> Optional[Monomial]:
    if poly.is_monomial():
        (m, c), = poly.terms().items()
        if c == 1:
            return m
    return None


class BinomialFactor(NamedTuple):
    """Fator (1 - m)^multiplicity"""

    m: Monomial
    multiplicity: int


@lru_cache(maxsize=4096)
def _expand_factors(items: Tuple[Tuple[Monomial, int], ...]) -> LaurentPoly:
    result = LaurentPoly.constant(1)
    for m, k in items:
        binomial = LaurentPoly({Monomial.one(): 1, m: -1})
        result = result * binomial ** k
    return result


def _factor_items(factors: Mapping[Monomial, int]) -> Tuple[Tuple[Monomial, int], ...]:
    return tuple(sorted(((m, k) for m, k in factors.items() if k), key=lambda item: item[0].sort_key()))


def expand_denominator(factors: Mapping[Monomial, int]) -> LaurentPoly:
    return _expand_factors(_factor_items(factors))


def _canonical_form(numerator: LaurentPoly, denominator: Mapping[Monomial, int]) -> Tuple[LaurentPoly, Dict[Monomial, int]]:
    num = numerator
    factors: Dict[Monomial, int] = {}
    for m, k in denominator.items():
        if not k:
            continue
        if m.is_one():
            raise ZeroDivisionError('Fator (1 - 1) no denominador')
        if k < 0:
            num = num * _expand_factors(((m, -k),))
            continue
        if m.leading_sign() < 0:
            # 1/(1-m) = -m^{-1}/(1-m^{-1})
            m = m.inverse()
            num = num * LaurentPoly({m ** k: (-1) ** k})
        factors[m] = factors.get(m, 0) + k

    if num.is_zero():
        return LaurentPoly(), {}

    changed = True
    while changed:
        changed = False
        for m in sorted(factors, key=lambda x: x.sort_key()):
            if factors.get(m, 0) == 0:
                continue
            while factors[m] > 0:
                quotient = num.exact_divide(m, (1, -1))
                if quotient is None:
                    break
                num = quotient
                factors[m] -= 1
                changed = True
            if factors[m] == 0:
                del factors[m]
                continue
            d = m.exponent_gcd()
            if d > 1:
                u = m.root(d)
                for e in divisors(d)[:-1]:
                    w = u ** e
                    quotient = num.exact_divide(w, (1,) * (d // e))
                    if quotient is None:
                        continue
                    num = quotient
                    factors[m] -= 1
                    if factors[m] == 0:
                        del factors[m]
                    factors[w] = factors.get(w, 0) + 1
                    changed = True
                    break
            if changed:
                break
    return num, factors


class RatFunc:
    """
    Função racional N / prod (1 - m)^k com numerador de Laurent e
    denominador fatorado. Sempre mantida em forma canônica.
    """

    __slots__ = ('numerator', 'denominator')

    def __init__(
        self,
        numerator: Union[LaurentPoly, Monomial, Coefficient] = 1,
        denominator: Optional[Mapping[Monomial, int]] = None,
        canonical: bool = False,
    ):
        num = LaurentPoly.coerce(numerator)
        den = dict(denominator or {})
        if not canonical:
            num, den = _canonical_form(num, den)
        self.numerator: LaurentPoly = num
        self.denominator: Dict[Monomial, int] = den

    @classmethod
    def zero(cls) -> 'RatFunc':
        return cls(0, canonical=True)

    @classmethod
    def one(cls) -> 'RatFunc':
        return cls(1, canonical=True)

    def canonicalize(self) -> 'RatFunc':
        return RatFunc(self.numerator, self.denominator)

    def factors(self) -> List[BinomialFactor]:
        return [BinomialFactor(m, k) for m, k in _factor_items(self.denominator)]

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def variables(self) -> Set[str]:
        names = self.numerator.variables()
        for m in self.denominator:
            names |= m.variables()
        return names

    def same_form(self, other: 'RatFunc') -> bool:
        """Igualdade estrutural (mesmo numerador e mesmos fatores)"""
        return self.numerator == other.numerator and self.denominator == other.denominator

    def __add__(self, other) -> 'RatFunc':
        return rf_add(self, _coerce(other))

    __radd__ = __add__

    def __neg__(self) -> 'RatFunc':
        return RatFunc(-self.numerator, self.denominator, canonical=True)

    def __sub__(self, other) -> 'RatFunc':
        return rf_add(self, -_coerce(other))

    def __rsub__(self, other) -> 'RatFunc':
        return rf_add(_coerce(other), -self)

    def __mul__(self, other) -> 'RatFunc':
        return rf_mul(self, _coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other) -> 'RatFunc':
        other = _coerce(other)
        if not other.numerator.is_monomial():
            raise InvalidInputError('Divisão apenas por funções com numerador monomial')
        numerator = self.numerator * expand_denominator(other.denominator) / other.numerator
        return RatFunc(numerator, self.denominator)

    def __pow__(self, k: int) -> 'RatFunc':
        if k < 0:
            return RatFunc.one() / self ** (-k)
        result = RatFunc.one()
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, Monomial, LaurentPoly)):
            other = _coerce(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return rf_equal(self, other)

    __hash__ = None

    def substitute(self, mapping: Mapping[str, Union[LaurentPoly, Monomial, Coefficient]]) -> 'RatFunc':
        numerator = self.numerator.substitute(mapping)
        monomials = {}
        for name, value in mapping.items():
            m = _as_unit_monomial(LaurentPoly.coerce(value))
            if m is not None:
                monomials[name] = m
        denominator: Dict[Monomial, int] = {}
        for m, k in self.denominator.items():
            if m.variables() & (set(mapping) - set(monomials)):
                raise InvalidInputError(f'Substituição não monomial em fator do denominador {m}')
            key = m.substitute(monomials)
            denominator[key] = denominator.get(key, 0) + k
        return RatFunc(numerator, denominator)

    def evaluate(self, values: Mapping[str, Coefficient]) -> Fraction:
        value = self.numerator.evaluate(values)
        for m, k in self.denominator.items():
            base = 1 - m.evaluate(values)
            if base == 0:
                raise ZeroDivisionError(f'Fator (1 - {m}) se anula no ponto dado')
            value /= base ** k
        return value

    def numerator_term_count(self) -> int:
        return len(self.numerator)

    def __repr__(self) -> str:
        if not self.denominator:
            return f'RatFunc({self.numerator})'
        den = ' '.join(
            f'(1 - {m})' + (f'^{k}' if k > 1 else '') for m, k in _factor_items(self.denominator)
        )
        return f'RatFunc(({self.numerator}) / {den})'

    def to_latex(self, style: str = 'frac') -> str:
        """
        Representação LaTeX.

        Args:
            style: 'frac' (fração única), 'bracket' (fatores <m>_0 = 1/(1-m))
                ou 'zeta' (fatores 1/(1 - p^b t^a) escritos como zeta_p(as - b))

        Returns:
            String LaTeX
        """
        num = self.numerator.to_latex()
        items = _factor_items(self.denominator)
        if not items:
            return num
        if style == 'frac':
            den = ''.join(
                f'(1 - {m.to_latex()})' + (f'^{{{k}}}' if k > 1 else '') for m, k in items
            )
            return f'\\frac{{{num}}}{{{den}}}'
        if style not in ('bracket', 'zeta'):
            raise InvalidInputError(f'Estilo LaTeX desconhecido: {style}')
        parts = []
        for m, k in items:
            power = f'^{{{k}}}' if k > 1 else ''
            if style == 'zeta' and m.variables() <= {'p', 't'} and m.exponent('t') > 0:
                a, b = m.exponent('t'), m.exponent('p')
                arg = f'{a}s' if a != 1 else 's'
                if b > 0:
                    arg += f' - {b}'
                elif b < 0:
                    arg += f' + {-b}'
                parts.append(f'\\zeta_p({arg}){power}')
            else:
                parts.append(f'\\left\\langle {m.to_latex()} \\right\\rangle_0{power}')
        prefix = '' if num == '1' else f'\\left({num}\\right) '
        return prefix + ' '.join(parts)

    def to_json_dict(self) -> Dict:
        return {
            'numerator': self.numerator.to_json_list(),
            'denominator': [[m.exponents(), k] for m, k in _factor_items(self.denominator)],
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> 'RatFunc':
        numerator = LaurentPoly.from_json_list(data.get('numerator', []))
        denominator: Dict[Monomial, int] = {}
        for exps, k in data.get('denominator', []):
            m = Monomial({name: int(e) for name, e in exps.items()})
            denominator[m] = denominator.get(m, 0) + int(k)
        return cls(numerator, denominator)


def _coerce(value) -> RatFunc:
    if isinstance(value, RatFunc):
        return value
    return RatFunc(LaurentPoly.coerce(value))


def gp(m: Monomial) -> RatFunc:
    """<m> = m / (1 - m)"""
    return RatFunc(LaurentPoly.monomial(m), {m: 1})


def gpzero(m: Monomial) -> RatFunc:
    """<m>_0 = 1 / (1 - m)"""
    return RatFunc(1, {m: 1})


def rf_add(a: RatFunc, b: RatFunc) -> RatFunc:
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    union = {m: max(a.denominator.get(m, 0), b.denominator.get(m, 0)) for m in set(a.denominator) | set(b.denominator)}
    na = a.numerator * expand_denominator({m: k - a.denominator.get(m, 0) for m, k in union.items()})
    nb = b.numerator * expand_denominator({m: k - b.denominator.get(m, 0) for m, k in union.items()})
    return RatFunc(na + nb, union)


def rf_sum(terms: Iterable[RatFunc]) -> RatFunc:
    total = RatFunc.zero()
    for term in terms:
        total = rf_add(total, term)
    return total


def rf_mul(a: RatFunc, b: RatFunc) -> RatFunc:
    if a.is_zero() or b.is_zero():
        return RatFunc.zero()
    denominator = dict(a.denominator)
    for m, k in b.denominator.items():
        denominator[m] = denominator.get(m, 0) + k
    return RatFunc(a.numerator * b.numerator, denominator)


def rf_prod(factors: Iterable[RatFunc]) -> RatFunc:
    result = RatFunc.one()
    for factor in factors:
        result = rf_mul(result, factor)
    return result


def rf_equal(a: RatFunc, b: RatFunc) -> bool:
    """Igualdade como funções racionais, por multiplicação cruzada"""
    union = {m: max(a.denominator.get(m, 0), b.denominator.get(m, 0)) for m in set(a.denominator) | set(b.denominator)}
    na = a.numerator * expand_denominator({m: k - a.denominator.get(m, 0) for m, k in union.items()})
    nb = b.numerator * expand_denominator({m: k - b.denominator.get(m, 0) for m, k in union.items()})
    return na == nb


def rf_invert_vars(a: RatFunc, names: Iterable[str]) -> RatFunc:
    return a.substitute({name: Monomial({name: -1}) for name in names})


class TruncatedSeries:
    """Série sum_{k<=order} coeffs[k] t^k com coeficientes em p"""

    __slots__ = ('order', 'coeffs')

    def __init__(self, order: int, coeffs: Optional[Sequence[LaurentPoly]] = None):
        if order < 0:
            raise InvalidInputError('Ordem de truncamento negativa')
        self.order = order
        padded = [LaurentPoly.coerce(c) for c in (coeffs or [])][: order + 1]
        padded += [LaurentPoly() for _ in range(order + 1 - len(padded))]
        self.coeffs: List[LaurentPoly] = padded

    def coefficient(self, k: int) -> LaurentPoly:
        return self.coeffs[k]

    def __add__(self, other: 'TruncatedSeries') -> 'TruncatedSeries':
        order = min(self.order, other.order)
        return TruncatedSeries(order, [self.coeffs[k] + other.coeffs[k] for k in range(order + 1)])

    def __mul__(self, other: 'TruncatedSeries') -> 'TruncatedSeries':
        order = min(self.order, other.order)
        coeffs = [LaurentPoly() for _ in range(order + 1)]
        for i in range(order + 1):
            if self.coeffs[i].is_zero():
                continue
            for j in range(order + 1 - i):
                if not other.coeffs[j].is_zero():
                    coeffs[i + j] = coeffs[i + j] + self.coeffs[i] * other.coeffs[j]
        return TruncatedSeries(order, coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and all(a == b for a, b in zip(self.coeffs, other.coeffs))

    __hash__ = None

    def truncate(self, order: int) -> 'TruncatedSeries':
        return TruncatedSeries(min(order, self.order), self.coeffs[: order + 1])

    def evaluate(self, p: int) -> List[Fraction]:
        return [c.evaluate({'p': p}) for c in self.coeffs]

    def __repr__(self) -> str:
        return f"TruncatedSeries({self.order}, [{', '.join(str(c) for c in self.coeffs)}])"

    def to_json_list(self) -> List[List[list]]:
        return [c.to_json_list() for c in self.coeffs]


def rf_series(a: RatFunc, order: int) -> TruncatedSeries:
    """
    Expande a em série de potências de t até a ordem dada.

    Raises:
        SeriesExpansionError: fator sem t, variáveis além de p e t,
            ou expoentes negativos de t no numerador
    """
    extra = a.variables() - {'p', 't'}
    if extra:
        raise SeriesExpansionError(f'Variáveis não suportadas na expansão: {sorted(extra)}')
    numerator = a.numerator
    factors: List[Tuple[Monomial, int]] = []
    for m, k in _factor_items(a.denominator):
        b = m.exponent_at(T_INDEX)
        if b == 0:
            raise SeriesExpansionError(
                f'Fator (1 - {m}) não depende de t; expanda-o exatamente antes da série'
            )
        if b < 0:
            # 1/(1-m) = -m^{-1}/(1-m^{-1})
            numerator = numerator * LaurentPoly({m ** (-k): (-1) ** k})
            m = m.inverse()
        factors.append((m, k))
    if numerator.min_exponent('t') < 0:
        raise SeriesExpansionError('Numerador com expoente negativo de t')

    coeffs = [LaurentPoly() for _ in range(order + 1)]
    for m, c in numerator.terms().items():
        degree = m.exponent_at(T_INDEX)
        if degree <= order:
            coeffs[degree] = coeffs[degree] + LaurentPoly({m * Monomial({'t': -degree}): c})
    for m, k in factors:
        b = m.exponent_at(T_INDEX)
        step = LaurentPoly.monomial(m * Monomial({'t': -b}))
        for _ in range(k):
            # S' = S + m S'
            for j in range(b, order + 1):
                if not coeffs[j - b].is_zero():
                    coeffs[j] = coeffs[j] + step * coeffs[j - b]
    return TruncatedSeries(order, coeffs)
