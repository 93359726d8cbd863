import logging
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from combinat import DecompType, block_decomposition, compatible_partitions, dyck_words
from config import Settings, get_settings
from errors import InvalidInputError
from oracle import oracle_counts
from output_parser.oracle_parser import OracleCount, OracleMethod, OracleReport
from output_parser.ratfunc_parser import RatFuncPayload
from output_parser.verification_parser import Verdict
from output_parser.zeta_result_parser import DyckSummandPayload, DyckWordPayload, ZetaResultPayload
from ratfunc import TruncatedSeries, rf_series
from results_database import ZetaDatabase
from zeta import ZetaResult, zeta_series_direct, zeta_unramified

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)


class ZetaCalculator:
    """
    Fachada com estado sobre as funções puras de zeta e oracle: guarda as
    configurações, o número de processos, a política de verificação cruzada e,
    opcionalmente, o banco de resultados.
    """

    def __init__(
        self,
        settings: Optional[Settings] = None,
        store: Optional[ZetaDatabase] = None,
        threads: Optional[int] = None,
        cross_check: Optional[bool] = None,
    ):
        self.settings = settings or get_settings()
        self.store = store
        self.threads = threads or self.settings.threads
        if self.threads < 1:
            raise InvalidInputError('threads deve ser pelo menos 1')
        self.cross_check = self.settings.cross_check if cross_check is None else cross_check
        self._results: Dict[Tuple[int, ...], ZetaResult] = {}
        logger.info(f'ZetaCalculator inicializado com {self.threads} processo(s)')

    @contextmanager
    def _mapper(self) -> Iterator:
        if self.threads == 1:
            yield map
            return
        with ProcessPoolExecutor(max_workers=self.threads) as pool:
            yield pool.map

    def result(self, f: Sequence[int]) -> ZetaResult:
        """ZetaResult completo (com somandos), memorizado por instância"""
        key = tuple(f)
        if key not in self._results:
            with self._mapper() as mapper:
                self._results[key] = zeta_unramified(key, cross_check=self.cross_check, mapper=mapper)
        return self._results[key]

    def to_payload(
        self, result: ZetaResult, latex_style: Optional[str] = None, with_summands: bool = False
    ) -> ZetaResultPayload:
        summands = None
        if with_summands:
            summands = [
                DyckSummandPayload(
                    word=w.letters,
                    partition=A.to_lists(),
                    summand=RatFuncPayload.from_ratfunc(D, latex_style),
                )
                for w, A, D in result.summands
            ]
        return ZetaResultPayload(
            e=[1] * result.g,
            f=list(result.f),
            n=result.n,
            provenance=result.provenance,
            W=RatFuncPayload.from_ratfunc(result.W, latex_style),
            numerator_terms=result.numerator_terms,
            denominator_factors=len(result.W.factors()),
            summands=summands,
        )

    def compute(
        self, f: Sequence[int], latex_style: Optional[str] = None, with_summands: bool = False
    ) -> ZetaResultPayload:
        """
        Payload do fator W^ para f, usando o banco como cache quando
        disponível (somandos nunca vêm do cache).
        """
        f = tuple(f)
        if self.store is not None and not with_summands:
            cached = self.store.get_zeta_result([1] * len(f), f)
            if cached is not None:
                logger.info(f'W para f={f} recuperado do banco')
                if latex_style:
                    cached.W.latex = cached.W.to_ratfunc().to_latex(latex_style)
                return cached
        payload = self.to_payload(self.result(f), latex_style, with_summands)
        if self.store is not None:
            self.store.save_zeta_result(payload.model_copy(update={'summands': None}))
        return payload

    def series(self, decomp: DecompType, order: int) -> TruncatedSeries:
        """Série truncada do fator local: forma fechada se e = 1, soma direta caso contrário"""
        if decomp.is_unramified():
            return rf_series(self.result(decomp.f).W, order)
        logger.info(f'Tipo ramificado e={decomp.e}: série por soma direta')
        return zeta_series_direct(decomp, order)

    def dyck_table(self, n: int, f: Optional[Sequence[int]] = None) -> List[DyckWordPayload]:
        table = []
        for w in dyck_words(n):
            blocks = block_decomposition(w)
            partitions = [A.to_lists() for A in compatible_partitions(w, f)] if f is not None else []
            table.append(
                DyckWordPayload(word=w.letters, L=list(blocks.L), M=list(blocks.M), compatible_partitions=partitions)
            )
        return table

    def oracle_report(
        self, decomp: DecompType, prime: int, max_k: int, method: OracleMethod = OracleMethod.LAYERED
    ) -> OracleReport:
        """
        Contagens a_{p^k} do oráculo para k <= max_k, comparadas com os
        coeficientes da série do fator local avaliada em p.
        """
        known: Dict[int, int] = {}
        if self.store is not None:
            known = self.store.get_oracle_counts(decomp.e, decomp.f, prime, method)
        if all(k in known for k in range(max_k + 1)):
            counts = [known[k] for k in range(max_k + 1)]
        else:
            with self._mapper() as mapper:
                counts = oracle_counts(decomp, prime, max_k, method.value, mapper)
            if self.store is not None:
                for k, count in enumerate(counts):
                    self.store.save_oracle_count(decomp.e, decomp.f, prime, k, method, count)
        expected = self.series(decomp, max_k).evaluate(prime)
        rows = [
            OracleCount(p=prime, k=k, count=str(count), expected=str(expected[k]), agrees=count == expected[k])
            for k, count in enumerate(counts)
        ]
        verdict = Verdict.PASS if all(row.agrees for row in rows) else Verdict.FAIL
        if verdict is Verdict.FAIL:
            logger.warning(f'Oráculo diverge da série para e={decomp.e}, f={decomp.f}, p={prime}')
        return OracleReport(
            e=list(decomp.e),
            f=list(decomp.f),
            method=method,
            counts=rows,
            exploratory=not decomp.is_unramified(),
            verdict=verdict,
        )
