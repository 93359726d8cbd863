import pytest

from combinat import DecompType
from errors import InvalidInputError
from funceq_validator import FunctionalEquationValidator
from output_parser.verification_parser import Severity, Verdict
from ratfunc import RatFunc, mono
from zeta import zeta_unramified


@pytest.mark.parametrize('f', [(1,), (2,), (1, 1), (2, 1), (1, 1, 1)])
def test_report_passes(f):
    result = zeta_unramified(f)
    report = FunctionalEquationValidator().validate(result)
    assert report.verdict is Verdict.PASS
    assert report.issues == []
    # W, dois fatores auxiliares e um por somando
    assert len(report.claims) == 3 + len(result.summands)
    assert report.claims[0].symmetry.model_dump() == {'a': 3 * sum(f), 'b': 3 * sum(f) * (3 * sum(f) - 1) // 2, 'c': 5 * sum(f)}


def test_report_without_summands():
    report = FunctionalEquationValidator(check_summands=False).validate(zeta_unramified((2, 2)))
    assert report.verdict is Verdict.PASS
    assert len(report.claims) == 3
    assert report.f == [2, 2] and report.n == 4


def test_report_flags_broken_factor():
    result = zeta_unramified((1, 1))
    result.W = result.W * RatFunc(1, {mono(p=1, t=1): 1})
    report = FunctionalEquationValidator(check_summands=False).validate(result)
    assert report.verdict is Verdict.FAIL
    assert report.claims[0].verdict is Verdict.FAIL
    assert report.issues[0].severity is Severity.ERRO
    assert report.issues[0].category == 'fator_local'
    assert report.issues[0].expected == '(6, 15, 10)'
    assert report.issues[0].found is None


def test_issues_survive_next_run():
    validator = FunctionalEquationValidator(check_summands=False)
    broken = zeta_unramified((1, 1))
    broken.W = broken.W * RatFunc(1, {mono(p=1, t=1): 1})
    first = validator.validate(broken)
    validator.validate(zeta_unramified((1,)))
    assert validator.issues == []
    assert [issue.category for issue in first.issues] == ['fator_local']


def test_validator_resets_between_runs():
    validator = FunctionalEquationValidator(check_summands=False)
    validator.validate(zeta_unramified((1,)))
    report = validator.validate(zeta_unramified((1, 1)))
    assert len(report.claims) == 3


def test_conjectural_report_is_exploratory():
    report = FunctionalEquationValidator().conjectural_report(DecompType((2,), (1,)))
    assert report.exploratory
    assert report.verdict is Verdict.PASS
    assert report.claims == []
    assert report.issues[0].severity is Severity.INFO
    assert report.issues[0].expected == '(6, 15, 12)'


def test_conjectural_report_rejects_unramified():
    with pytest.raises(InvalidInputError):
        FunctionalEquationValidator().conjectural_report(DecompType.unramified((1, 1)))
