"""
Modelos Pydantic para relatórios de verificação de equações funcionais.
"""
from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, Field


class Verdict(str, Enum):
    PASS = 'pass'
    FAIL = 'fail'


class Severity(str, Enum):
    ERRO = 'erro'
    AVISO = 'aviso'
    INFO = 'info'


class SymmetryPayload(BaseModel):
    a: int
    b: int
    c: int


class VerificationIssuePayload(BaseModel):
    severity: Severity
    category: str
    subject: str
    description: str
    expected: Optional[str] = None
    found: Optional[str] = None


class VerificationClaim(BaseModel):
    subject: str
    symmetry: SymmetryPayload
    verdict: Verdict


class VerificationReport(BaseModel):
    """Schema principal do relatório de verificação"""

    f: List[int]
    n: int
    claims: List[VerificationClaim] = Field(default_factory=list)
    issues: List[VerificationIssuePayload] = Field(default_factory=list)
    verdict: Verdict
    exploratory: bool = False
