"""
Modelos Pydantic para a forma serializada de funções racionais e séries.
Coeficientes sempre como strings decimais (ou 'a/b'), para não estourar
inteiros de 64 bits em consumidores JSON.
"""
from fractions import Fraction
from typing import Dict, List, Optional

from pydantic import BaseModel, Field

from ratfunc import LaurentPoly, Monomial, RatFunc, TruncatedSeries


class MonomialTerm(BaseModel):
    coefficient: str
    exponents: Dict[str, int] = Field(default_factory=dict)

    def to_pair(self):
        return Monomial(self.exponents), Fraction(self.coefficient)


class DenominatorFactor(BaseModel):
    exponents: Dict[str, int]
    multiplicity: int = Field(ge=1)


def _terms(poly: LaurentPoly) -> List[MonomialTerm]:
    return [MonomialTerm(coefficient=str(c), exponents=m.exponents()) for m, c in poly.items()]


class RatFuncPayload(BaseModel):
    """N / prod (1 - m)^k"""

    numerator: List[MonomialTerm] = Field(default_factory=list)
    denominator: List[DenominatorFactor] = Field(default_factory=list)
    latex: Optional[str] = None

    @classmethod
    def from_ratfunc(cls, value: RatFunc, latex_style: Optional[str] = None) -> 'RatFuncPayload':
        return cls(
            numerator=_terms(value.numerator),
            denominator=[
                DenominatorFactor(exponents=factor.m.exponents(), multiplicity=factor.multiplicity)
                for factor in value.factors()
            ],
            latex=value.to_latex(latex_style) if latex_style else None,
        )

    def to_ratfunc(self) -> RatFunc:
        numerator = LaurentPoly(dict(term.to_pair() for term in self.numerator))
        denominator: Dict[Monomial, int] = {}
        for factor in self.denominator:
            m = Monomial(factor.exponents)
            denominator[m] = denominator.get(m, 0) + factor.multiplicity
        return RatFunc(numerator, denominator)


class SeriesPayload(BaseModel):
    order: int = Field(ge=0)
    coefficients: List[List[MonomialTerm]] = Field(default_factory=list)
    prime: Optional[int] = None
    values: Optional[List[str]] = None

    @classmethod
    def from_series(cls, series: TruncatedSeries, prime: Optional[int] = None) -> 'SeriesPayload':
        values = [str(v) for v in series.evaluate(prime)] if prime is not None else None
        return cls(
            order=series.order,
            coefficients=[_terms(c) for c in series.coeffs],
            prime=prime,
            values=values,
        )
