import pytest

from pynambugraphs import RunConfig
from pynambugraphs.py_ng_exceptions import NGConfigException

from .fixtures.paths import BAD_KEY_CONFIG_PATH, KERNEL_2D_CONFIG_PATH


def test_run_config_01():
    # defaults resolve per dimension
    config = RunConfig().validate()
    assert config.family == "fixtures"
    assert config.mode == "plain"
    assert config.steps == ["trivialize", "kernel", "hamiltonians"]
    config = RunConfig({"dimension": 4}).validate()
    assert config.family == "descendants"
    assert config.mode == "skew"
    assert config.cell_budget == 86400


def test_run_config_02():
    config = RunConfig.from_file(KERNEL_2D_CONFIG_PATH).validate()
    assert config.steps == ["kernel"]
    assert config.use_cache is False
    assert config.manifest_dict()["cache_dir"] is None


@pytest.mark.parametrize("settings", [
    {"dimension": 5},
    {"family": "tetrahedra"},
    {"mode": "skew", "dimension": 3},
    {"mode": "antisymmetric"},
    {"format": "xml"},
    {"steps": ["kernel", "cohomology"]},
    {"budget": 0},
    {"jobs": 0},
])
def test_run_config_invalid_01(settings):
    try:
        RunConfig(settings).validate()
        assert False, "We should have caught an exception"
    except NGConfigException as e:
        print(e)


def test_run_config_invalid_02():
    # unknown keys are rejected on load
    try:
        RunConfig.from_file(BAD_KEY_CONFIG_PATH)
        assert False, "We should have caught an exception"
    except NGConfigException as e:
        assert "precision" in str(e)


def test_run_config_invalid_03(tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text("{\"dimension\": 3,")
    for path in (broken, tmp_path / "missing.json"):
        try:
            RunConfig.from_file(path)
            assert False, "We should have caught an exception"
        except NGConfigException as e:
            print(e)


def test_run_config_args_01():
    # command-line values override the file; unset ones don't
    class Args:
        dimension = 3
        family = None
        jobs = 4

    base = RunConfig.from_file(KERNEL_2D_CONFIG_PATH)
    config = RunConfig.from_args(Args(), base=base).validate()
    assert config.dimension == 3
    assert config.jobs == 4
    assert config.steps == ["kernel"]
    assert config.family == "descendants"
