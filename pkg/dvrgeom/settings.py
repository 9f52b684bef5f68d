import os
from dataclasses import dataclass, fields, replace
from pathlib import Path
from dotenv import dotenv_values
from dvrgeom.constants import (
    ENV_FILE,
    ENV_PREFIX,
    EXT_BOUND,
    GROEBNER_STEPS,
    JET_BOUND,
    POINT_BUDGET,
    SAMPLE_SIZE,
)
from dvrgeom.exceptions import InvalidSettingException
from dvrgeom.validation import check_positive

# Variable suffix for each setting, e.g. DVRGEOM_POINT_BUDGET -> points
ENV_KEYS = {
    "POINT_BUDGET": "points",
    "EXT_BOUND": "ext",
    "JET_BOUND": "jet",
    "GROEBNER_STEPS": "steps",
    "SAMPLE_SIZE": "samples",
}


@dataclass(frozen=True)
class Settings:
    """Budgets and bounds shared by every command."""

    points: int = POINT_BUDGET
    ext: int = EXT_BOUND
    jet: int = JET_BOUND
    steps: int = GROEBNER_STEPS
    samples: int = SAMPLE_SIZE

    def merged(self, **overrides):
        """
        Apply overrides; ``None`` values are skipped.

        :raises InvalidSettingException: unknown key or non-positive value.
        """
        known = {f.name for f in fields(self)}
        values = {}
        for key, value in overrides.items():
            if value is None:
                continue
            if key not in known:
                raise InvalidSettingException(details=f"Unknown setting: {key}")
            values[key] = check_positive(value, key)
        return replace(self, **values)

    def to_dict(self):
        return {f.name: getattr(self, f.name) for f in fields(self)}


def _read(source, origin):
    overrides = {}
    for suffix, key in ENV_KEYS.items():
        value = source.get(ENV_PREFIX + suffix)
        if value is None or value == "":
            continue
        try:
            overrides[key] = int(value)
        except ValueError as e:
            raise InvalidSettingException(
                details=f"{ENV_PREFIX}{suffix}={value!r} in {origin} is not an integer"
            ) from e
    return overrides


def load_settings(env_file=None, environ=None):
    """
    Defaults from constants, then the dotenv file, then the environment.

    :param env_file: dotenv path; defaults to ``DVRGEOM_ENV_FILE`` or ``.dvrgeom.env``.
    :param environ: mapping used instead of ``os.environ`` (tests).
    """
    environ = os.environ if environ is None else environ
    env_file = env_file or environ.get(ENV_PREFIX + "ENV_FILE") or ENV_FILE
    settings = Settings()
    if Path(env_file).is_file():
        settings = settings.merged(**_read(dotenv_values(env_file), env_file))
    return settings.merged(**_read(environ, "the environment"))
