import json
import logging
from datetime import datetime
from typing import Dict, List, Optional, Sequence

from sqlalchemy import DateTime, Integer, String, Text, UniqueConstraint, create_engine, func, select
from sqlalchemy.orm import DeclarativeBase, Mapped, mapped_column, sessionmaker

from output_parser.oracle_parser import OracleMethod
from output_parser.verification_parser import VerificationReport
from output_parser.zeta_result_parser import ZetaResultPayload

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


def decomposition_key(e: Sequence[int], f: Sequence[int]) -> str:
    """Chave textual estável do tipo de decomposição, ex.: 'e=1,1;f=2,2'"""
    return f"e={','.join(map(str, e))};f={','.join(map(str, f))}"


class Model(DeclarativeBase):
    pass


class ZetaResultRow(Model):
    __tablename__ = 'zeta_results'

    id: Mapped[int] = mapped_column(primary_key=True)
    decomposition: Mapped[str] = mapped_column(String(64), unique=True)
    provenance: Mapped[str] = mapped_column(String(32))
    payload_json: Mapped[str] = mapped_column(Text)
    created_at: Mapped[datetime] = mapped_column(DateTime, server_default=func.now())


class OracleCountRow(Model):
    __tablename__ = 'oracle_counts'
    __table_args__ = (UniqueConstraint('decomposition', 'p', 'k', 'method'),)

    id: Mapped[int] = mapped_column(primary_key=True)
    decomposition: Mapped[str] = mapped_column(String(64))
    p: Mapped[int] = mapped_column(Integer)
    k: Mapped[int] = mapped_column(Integer)
    method: Mapped[str] = mapped_column(String(16))
    # decimal: contagens passam de 64 bits rapidamente
    count: Mapped[str] = mapped_column(Text)


class VerificationRow(Model):
    __tablename__ = 'verifications'

    id: Mapped[int] = mapped_column(primary_key=True)
    subject: Mapped[str] = mapped_column(String(128))
    symmetry: Mapped[str] = mapped_column(String(64))
    verdict: Mapped[str] = mapped_column(String(8))
    report_json: Mapped[Optional[str]] = mapped_column(Text, nullable=True)
    created_at: Mapped[datetime] = mapped_column(DateTime, server_default=func.now())


class ZetaDatabase:
    """
    Armazena resultados calculados num banco SQLite.

    Estrutura:
    - zeta_results: fator W^ por tipo de decomposição (payload JSON completo)
    - oracle_counts: contagens a_{p^k} do oráculo, por método
    - verifications: veredictos de equações funcionais
    """

    def __init__(self, db_path: str = 'zeta_results.db'):
        """
        Args:
            db_path: Caminho do arquivo SQLite (':memory:' para testes)
        """
        self.db_path = db_path
        self.engine = create_engine(f'sqlite:///{db_path}')
        self.Session = sessionmaker(self.engine, expire_on_commit=False)
        Model.metadata.create_all(self.engine)
        logger.info(f'Banco de resultados inicializado: {db_path}')

    def save_zeta_result(self, payload: ZetaResultPayload) -> int:
        """Insere ou substitui o resultado do tipo de decomposição do payload"""
        key = decomposition_key(payload.e, payload.f)
        with self.Session() as session:
            row = session.scalar(select(ZetaResultRow).where(ZetaResultRow.decomposition == key))
            if row is None:
                row = ZetaResultRow(decomposition=key)
                session.add(row)
            row.provenance = payload.provenance.value
            row.payload_json = payload.model_dump_json()
            session.commit()
            logger.info(f'Resultado salvo: {key} (id={row.id})')
            return row.id

    def get_zeta_result(self, e: Sequence[int], f: Sequence[int]) -> Optional[ZetaResultPayload]:
        key = decomposition_key(e, f)
        with self.Session() as session:
            row = session.scalar(select(ZetaResultRow).where(ZetaResultRow.decomposition == key))
            if row is None:
                return None
            return ZetaResultPayload.model_validate_json(row.payload_json)

    def save_oracle_count(
        self, e: Sequence[int], f: Sequence[int], p: int, k: int, method: OracleMethod, count: int
    ) -> None:
        key = decomposition_key(e, f)
        with self.Session() as session:
            row = session.scalar(
                select(OracleCountRow).where(
                    OracleCountRow.decomposition == key,
                    OracleCountRow.p == p,
                    OracleCountRow.k == k,
                    OracleCountRow.method == method.value,
                )
            )
            if row is None:
                session.add(OracleCountRow(decomposition=key, p=p, k=k, method=method.value, count=str(count)))
            else:
                row.count = str(count)
            session.commit()
        logger.debug(f'Contagem salva: {key}, p={p}, k={k}, {method.value}: {count}')

    def get_oracle_counts(
        self, e: Sequence[int], f: Sequence[int], p: int, method: Optional[OracleMethod] = None
    ) -> Dict[int, int]:
        """Contagens conhecidas {k: a_{p^k}}"""
        query = select(OracleCountRow).where(
            OracleCountRow.decomposition == decomposition_key(e, f), OracleCountRow.p == p
        )
        if method is not None:
            query = query.where(OracleCountRow.method == method.value)
        with self.Session() as session:
            return {row.k: int(row.count) for row in session.scalars(query.order_by(OracleCountRow.k))}

    def save_verification(self, report: VerificationReport) -> List[int]:
        """Uma linha por afirmação do relatório"""
        ids = []
        with self.Session() as session:
            for claim in report.claims:
                row = VerificationRow(
                    subject=claim.subject,
                    symmetry=f'{claim.symmetry.a},{claim.symmetry.b},{claim.symmetry.c}',
                    verdict=claim.verdict.value,
                    report_json=json.dumps({'f': report.f, 'n': report.n}),
                )
                session.add(row)
                session.flush()
                ids.append(row.id)
            session.commit()
        logger.info(f'{len(ids)} verificações salvas para f={report.f}')
        return ids

    def list_verifications(self, verdict: Optional[str] = None) -> List[Dict]:
        query = select(VerificationRow).order_by(VerificationRow.id)
        if verdict is not None:
            query = query.where(VerificationRow.verdict == verdict)
        with self.Session() as session:
            return [
                {
                    'id': row.id,
                    'subject': row.subject,
                    'symmetry': tuple(int(x) for x in row.symmetry.split(',')),
                    'verdict': row.verdict,
                    'created_at': row.created_at,
                }
                for row in session.scalars(query)
            ]

    def close(self):
        self.engine.dispose()
        logger.info('Conexão com banco de resultados encerrada')
