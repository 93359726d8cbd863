from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, Field

from output_parser.ratfunc_parser import RatFuncPayload


class Provenance(str, Enum):
    TOTALLY_SPLIT = 'totally_split'
    GENERAL_UNRAMIFIED = 'general_unramified'
    INERT = 'inert'


class DyckSummandPayload(BaseModel):
    word: str
    partition: List[List[int]]
    summand: RatFuncPayload


class DyckWordPayload(BaseModel):
    word: str
    L: List[int]
    M: List[int]
    compatible_partitions: List[List[List[int]]] = Field(default_factory=list)


class ZetaResultPayload(BaseModel):
    """Schema principal de um fator zeta local calculado"""

    e: List[int]
    f: List[int]
    n: int
    provenance: Provenance
    W: RatFuncPayload
    numerator_terms: int = 0
    denominator_factors: int = 0
    summands: Optional[List[DyckSummandPayload]] = None
