from fractions import Fraction

import pytest
from pydantic import ValidationError

from specforge.schemas.factorization import LadderResultSchema, SetPairSchema
from specforge.schemas.measures import FactorSpecSchema, MeasurePairSchema, MeasureSchema, rational_text
from specforge.schemas.report import EXIT_CHECK_FAILED, EXIT_INPUT_ERROR, EXIT_PASS, CheckResult, RunReport
from specforge.schemas.spectra import SpectrumSchema
from specforge.schemas.tiling import MaskSchema
from specforge.tests.helpers import type1_pair
from specforge.tools.factorizer import SetPair, factor_sets
from specforge.tools.measures import uniform
from specforge.tools.spectra import Spectrum

F = Fraction


@pytest.mark.parametrize("value, text", [(3, "3"), ("2/4", "1/2"), (" -1/3 ", "-1/3"), ("0", "0")])
def test_rational_text(value, text):
    assert rational_text(value) == text


@pytest.mark.parametrize("value", [0.5, True, "1/0", "abc"])
def test_rational_text_rejects(value):
    with pytest.raises(ValueError):
        rational_text(value)


def test_measure_schema_to_domain():
    schema = MeasureSchema.model_validate({"atoms": [{"pos": 0, "w": "1/2"}, {"pos": "1/4", "w": "1/2"}]})
    assert schema.to_domain() == uniform([0, F(1, 4)])
    assert MeasureSchema.from_domain(uniform([0, F(1, 4)])).atoms[1].pos == ["1/4"]


def test_measure_schema_rejects_float_weights():
    with pytest.raises(ValidationError):
        MeasureSchema.model_validate({"atoms": [{"pos": 0, "w": 1.0}]})


def test_measure_pair_needs_both_sides():
    with pytest.raises(ValidationError):
        MeasurePairSchema.model_validate({"p": {"atoms": [{"pos": 0, "w": 1}]}})


def test_factor_spec_schema():
    odd, even = type1_pair((2, 3))
    schema = FactorSpecSchema.from_domain(even)
    assert schema.model_dump() == {
        "ladder": [2, 3],
        "type": "I",
        "side": "even",
        "level": 1,
        "tail_on": "even",
    }
    assert schema.to_domain() == even


def test_spectrum_schema():
    s = SpectrumSchema.model_validate({"base": [0, 2], "period": 4}).to_domain()
    assert s == Spectrum((0, 2), period=4)
    two_d = SpectrumSchema.from_domain(Spectrum(((0, 0), (1, 0)), dim=2))
    assert two_d.base == [[0, 0], [1, 0]]
    assert two_d.to_domain().dim == 2
    with pytest.raises(ValidationError):
        SpectrumSchema.model_validate({"base": []})


def test_set_pair_and_ladder_result():
    schema = SetPairSchema(A=[0, 1], B=[0, 2], n=4)
    result = factor_sets(schema.to_domain())
    out = LadderResultSchema.for_sets(result)
    assert out.ladder == [2, 2]
    assert out.first_side == "A"
    assert out.labels == ["A", "B"]
    assert SetPairSchema.from_domain(SetPair((0,), (0,), 1)).n == 1
    with pytest.raises(ValidationError):
        SetPairSchema(A=[], B=[0], n=1)


def test_mask_schema():
    assert MaskSchema(m=2, cells="0110").to_domain().cell_set() == {1, 2}
    with pytest.raises(ValidationError):
        MaskSchema(m=1, cells="012")
    with pytest.raises(ValidationError):
        MaskSchema(m=0, cells="1")


def test_report_exit_codes():
    report = RunReport(command="x", results=[CheckResult(name="a", passed=True)])
    assert report.finalize().exit_code == EXIT_PASS
    report.results.append(CheckResult(name="b", passed=False))
    assert report.finalize().exit_code == EXIT_CHECK_FAILED
    report.exit_code = EXIT_INPUT_ERROR
    assert report.finalize().exit_code == EXIT_INPUT_ERROR
