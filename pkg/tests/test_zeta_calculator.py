import pytest
from pydantic import ValidationError

from combinat import DecompType
from config import Settings, get_settings
from errors import InvalidInputError
from output_parser.oracle_parser import OracleMethod
from output_parser.verification_parser import Verdict
from output_parser.zeta_result_parser import Provenance
from ratfunc import rf_equal, rf_series
from results_database import ZetaDatabase
from zeta import zeta_series_direct, zeta_unramified
from zeta_calculator import ZetaCalculator


@pytest.fixture
def store(db_path):
    database = ZetaDatabase(db_path)
    yield database
    database.close()


def test_settings_from_environment(monkeypatch):
    monkeypatch.setenv('ZETA_THREADS', '3')
    monkeypatch.setenv('ZETA_CROSS_CHECK', 'no')
    settings = get_settings()
    assert settings.threads == 3
    assert not settings.cross_check
    calculator = ZetaCalculator()
    assert calculator.threads == 3
    assert not calculator.cross_check


@pytest.mark.parametrize('raw,expected', [('1', True), ('yes', True), ('off', False), ('false', False)])
def test_settings_coerce_booleans(monkeypatch, raw, expected):
    monkeypatch.setenv('ZETA_CROSS_CHECK', raw)
    monkeypatch.setenv('ZETA_LOG_LEVEL', ' debug')
    settings = get_settings()
    assert settings.cross_check is expected
    assert settings.log_level == 'DEBUG'


def test_settings_reject_invalid_values(monkeypatch):
    monkeypatch.setenv('ZETA_THREADS', '0')
    with pytest.raises(ValidationError):
        get_settings()
    monkeypatch.setenv('ZETA_THREADS', '2')
    monkeypatch.setenv('ZETA_CROSS_CHECK', 'talvez')
    with pytest.raises(ValidationError):
        Settings.from_env()


def test_rejects_invalid_threads():
    with pytest.raises(InvalidInputError):
        ZetaCalculator(threads=-1)


def test_compute_payload():
    payload = ZetaCalculator().compute((2, 1), latex_style='zeta', with_summands=True)
    assert payload.e == [1, 1]
    assert payload.n == 3
    assert payload.provenance is Provenance.GENERAL_UNRAMIFIED
    assert '\\zeta_p(' in payload.W.latex
    assert rf_equal(payload.W.to_ratfunc(), zeta_unramified((2, 1)).W)
    assert payload.numerator_terms == len(payload.W.numerator)
    assert {s.word for s in payload.summands} <= {'000111', '001011', '001101', '010011', '010101'}


def test_worker_processes_match_serial():
    serial = ZetaCalculator(threads=1)
    pooled = ZetaCalculator(threads=2)
    assert serial.result((1, 1, 1)).W.same_form(pooled.result((1, 1, 1)).W)
    assert serial.result((2, 1)).W.same_form(pooled.result((2, 1)).W)
    serial_words = [(w.letters, A.to_lists()) for w, A, _ in serial.result((2, 1)).summands]
    pooled_words = [(w.letters, A.to_lists()) for w, A, _ in pooled.result((2, 1)).summands]
    assert serial_words == pooled_words


@pytest.mark.parametrize('method', [OracleMethod.LAYERED, OracleMethod.HNF])
def test_worker_processes_match_serial_oracle(method):
    decomp = DecompType.unramified((1, 1))
    serial = ZetaCalculator(threads=1).oracle_report(decomp, 2, 3, method)
    pooled = ZetaCalculator(threads=2).oracle_report(decomp, 2, 3, method)
    assert pooled == serial
    assert pooled.verdict is Verdict.PASS


def test_compute_uses_store(store):
    calculator = ZetaCalculator(store=store)
    first = calculator.compute((1, 1))
    assert store.get_zeta_result([1, 1], [1, 1]) == first
    again = ZetaCalculator(store=store).compute((1, 1), latex_style='frac')
    assert again.W.latex.startswith('\\frac')
    assert again.W.numerator == first.W.numerator


def test_series_ramified_uses_direct_sum():
    decomp = DecompType((2,), (1,))
    assert ZetaCalculator().series(decomp, 4) == zeta_series_direct(decomp, 4)


def test_series_unramified_uses_closed_form():
    decomp = DecompType.unramified((2,))
    assert ZetaCalculator().series(decomp, 5) == rf_series(zeta_unramified((2,)).W, 5)


def test_dyck_table():
    table = ZetaCalculator().dyck_table(3, (2, 1))
    assert [row.word for row in table] == ['000111', '001011', '001101', '010011', '010101']
    assert table[0].L == [3] and table[0].M == [3]
    assert table[0].compatible_partitions == [[[1, 2]]]
    assert ZetaCalculator().dyck_table(2)[0].compatible_partitions == []


def test_oracle_report_agrees():
    report = ZetaCalculator().oracle_report(DecompType.unramified((1,)), 2, 4)
    assert report.verdict is Verdict.PASS
    assert [row.count for row in report.counts] == ['1', '3', '7', '19', '43']
    assert all(row.agrees for row in report.counts)
    assert not report.exploratory
    assert report.to_csv().splitlines()[1] == '2,0,1,1,true'


def test_oracle_report_uses_store(store):
    decomp = DecompType.unramified((1,))
    for k, count in enumerate([1, 3, 7]):
        store.save_oracle_count([1], [1], 2, k, OracleMethod.HNF, count)
    report = ZetaCalculator(store=store).oracle_report(decomp, 2, 2, OracleMethod.HNF)
    assert report.method is OracleMethod.HNF
    assert report.verdict is Verdict.PASS


def test_oracle_report_flags_stored_mismatch(store):
    decomp = DecompType.unramified((1,))
    for k, count in enumerate([1, 3, 8]):
        store.save_oracle_count([1], [1], 2, k, OracleMethod.LAYERED, count)
    report = ZetaCalculator(store=store).oracle_report(decomp, 2, 2)
    assert report.verdict is Verdict.FAIL
    assert [row.agrees for row in report.counts] == [True, True, False]


def test_oracle_report_ramified_is_exploratory():
    report = ZetaCalculator().oracle_report(DecompType((2,), (1,)), 2, 2)
    assert report.exploratory
    assert report.counts[0].count == '1'
