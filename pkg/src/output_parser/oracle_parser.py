from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, Field

from output_parser.verification_parser import Verdict


class OracleMethod(str, Enum):
    HNF = 'hnf'
    LAYERED = 'layered'


class OracleCount(BaseModel):
    p: int
    k: int
    count: str
    expected: Optional[str] = None
    agrees: Optional[bool] = None


class OracleReport(BaseModel):
    e: List[int]
    f: List[int]
    method: OracleMethod
    counts: List[OracleCount] = Field(default_factory=list)
    exploratory: bool = False
    verdict: Verdict

    def to_csv(self) -> str:
        lines = ['p,k,count,expected,agrees']
        for row in self.counts:
            expected = row.expected if row.expected is not None else ''
            agrees = '' if row.agrees is None else str(row.agrees).lower()
            lines.append(f'{row.p},{row.k},{row.count},{expected},{agrees}')
        return '\n'.join(lines) + '\n'
