import pytest
from dvrgeom.exceptions import InvalidSettingException
from dvrgeom.settings import Settings, load_settings


def test_defaults():
    assert Settings().to_dict() == {
        "points": 10**7,
        "ext": 3,
        "jet": 4,
        "steps": 20000,
        "samples": 500,
    }


def test_missing_env_file_gives_defaults(tmp_path):
    assert load_settings(env_file=tmp_path / "absent.env", environ={}) == Settings()


def test_environment_overrides_the_env_file(tmp_path):
    env_file = tmp_path / "budgets.env"
    env_file.write_text("DVRGEOM_POINT_BUDGET=1000\nDVRGEOM_EXT_BOUND=2\n", encoding="utf-8")
    settings = load_settings(env_file=env_file, environ={"DVRGEOM_EXT_BOUND": "4"})
    assert settings.points == 1000
    assert settings.ext == 4
    assert settings.steps == 20000


def test_env_file_named_by_the_environment(tmp_path):
    env_file = tmp_path / "other.env"
    env_file.write_text("DVRGEOM_SAMPLE_SIZE=7\n", encoding="utf-8")
    settings = load_settings(environ={"DVRGEOM_ENV_FILE": str(env_file)})
    assert settings.samples == 7


def test_empty_values_are_ignored():
    assert load_settings(environ={"DVRGEOM_JET_BOUND": ""}).jet == 4


@pytest.mark.parametrize("value", ["abc", "0", "-3"])
def test_invalid_environment_values(value):
    with pytest.raises(InvalidSettingException):
        load_settings(environ={"DVRGEOM_GROEBNER_STEPS": value})


def test_merged_skips_none_and_checks_values():
    settings = Settings().merged(points=50, ext=None)
    assert settings.points == 50
    assert settings.ext == 3
    with pytest.raises(InvalidSettingException):
        settings.merged(depth=2)
    with pytest.raises(InvalidSettingException):
        settings.merged(steps=0)
    with pytest.raises(InvalidSettingException):
        settings.merged(jet=True)
