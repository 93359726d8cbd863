"""
Hierarquia de exceções do heisenberg-zeta.
"""
from typing import Optional


class ZetaError(Exception):
    """Erro base de todos os cálculos do projeto"""


class InvalidInputError(ZetaError, ValueError):
    """Entrada fora do domínio de uma operação (pré-condição violada)"""


class SeriesExpansionError(ZetaError, ValueError):
    """Função racional que não admite expansão como série de potências em t"""


class ConsistencyError(ZetaError):
    """Dois cálculos independentes que deveriam coincidir divergiram"""


class ResourceLimitError(ZetaError):
    """
    Enumeração recusada por exceder o limite configurado.

    Attributes:
        estimate: Tamanho estimado da enumeração
        limit: Limite configurado
    """

    def __init__(self, message: str, estimate: Optional[int] = None, limit: Optional[int] = None):
        super().__init__(message)
        self.estimate = estimate
        self.limit = limit
