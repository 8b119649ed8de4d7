import pytest

from andcohom.linalg import Field
from andcohom.verify import SUITES, RunConfig, run_suite


@pytest.mark.parametrize("suite", [s for s in SUITES if s != "reports"])
def test_suites_pass_at_defaults(suite):
    res = run_suite(suite)
    assert res.passed, "\n".join(res.lines)


@pytest.mark.parametrize("suite", ["lemma", "theorem1", "vze", "oracles"])
def test_suites_pass_over_prime_field(suite):
    res = run_suite(suite, RunConfig(field=Field(3), trials=40, seed=1))
    assert res.passed, "\n".join(res.lines)


def test_identical_configs_give_identical_reports():
    cfg = RunConfig(seed=4, trials=30)
    assert run_suite("theorem1", cfg).as_dict() == run_suite("theorem1", cfg).as_dict()
    assert run_suite("reports", cfg).lines == run_suite("reports", cfg).lines


def test_bad_config_rejected():
    with pytest.raises(ValueError):
        RunConfig(dim_cap=0)
    with pytest.raises(KeyError):
        run_suite("nope")
