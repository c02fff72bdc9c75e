"""Run configuration: TOML in, validated pydantic models out."""

from __future__ import annotations

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from typing import Literal

import tomli_w
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from ..exceptions import InvalidConfigError

SCENARIOS = ("central-spin", "dirac", "validate")


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class CentralSpinParameters(_Section):
    case: Literal["i", "ii", "iii"] = "iii"
    omega: float = Field(1.0, gt=0)
    delta_sq_mean: float | None = Field(None, ge=0)
    K: int = Field(1000, ge=1)
    h_bar: float = Field(1.0, gt=0)
    delta_dist: Literal["fixed", "gaussian"] = "fixed"
    coherent_shift: Literal["derived", "published"] = "derived"
    n_points: int = Field(600, ge=3)
    omega_t_max: float = Field(12.0, gt=0)
    threshold: float = Field(0.5, gt=0)


class DiracParameters(_Section):
    p0: float = Field(2.0, gt=0)
    c0: float = Field(0.04, ge=0)
    ell: float = Field(1.0, gt=0)
    sigma: float = Field(2.0, gt=0)
    t_max: float = Field(20.0, gt=0)
    n_times: int = Field(201, ge=3)
    h_bar: float = Field(1.0, gt=0)
    v: float = Field(1.0, gt=0)
    x0: float = 0.0
    kernel_mode: Literal["exact", "large_time"] = "exact"
    momentum_times: list[float] | None = None
    n_s: int = Field(128, ge=4)
    n_q: int = Field(128, ge=4)
    grid_realizations: int = Field(0, ge=0)
    grid_points: int = Field(4096, ge=2)
    dt: float = Field(0.02, gt=0)


class ValidateParameters(_Section):
    quick: bool = False


class RunConfig(BaseModel):
    """One scenario run; only the section named by ``scenario`` is used."""

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    scenario: Literal["central-spin", "dirac", "validate"]
    seed: int = Field(ge=0)
    emit_svg: bool = False
    output_dir: str = "ddqe-output"
    fail_on_breach: bool = False
    workers: int | None = Field(None, ge=1)
    central_spin: CentralSpinParameters | None = Field(None, alias="central-spin")
    dirac: DiracParameters | None = None
    validate_: ValidateParameters | None = Field(None, alias="validate")

    @model_validator(mode="after")
    def _fill_active_section(self) -> RunConfig:
        if self.scenario == "central-spin" and self.central_spin is None:
            self.central_spin = CentralSpinParameters()
        elif self.scenario == "dirac" and self.dirac is None:
            self.dirac = DiracParameters()
        elif self.scenario == "validate" and self.validate_ is None:
            self.validate_ = ValidateParameters()
        return self

    @property
    def parameters(self) -> _Section:
        return {
            "central-spin": self.central_spin,
            "dirac": self.dirac,
            "validate": self.validate_,
        }[self.scenario]


def _error_key(exc: ValidationError) -> str | None:
    errors = exc.errors()
    if not errors:
        return None
    return ".".join(str(part) for part in errors[0]["loc"]) or None


def config_from_dict(data: dict) -> RunConfig:
    try:
        return RunConfig.model_validate(data)
    except ValidationError as exc:
        key = _error_key(exc)
        msg = exc.errors()[0]["msg"] if exc.errors() else str(exc)
        raise InvalidConfigError(f"invalid config key {key!r}: {msg}", key=key) from exc


def parse_config(text: str) -> RunConfig:
    """Validate a TOML run configuration; unknown keys are rejected."""
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise InvalidConfigError(f"malformed TOML: {exc}") from exc
    return config_from_dict(data)


def load_config(path) -> RunConfig:
    with open(path, "rb") as f:
        try:
            data = tomllib.load(f)
        except tomllib.TOMLDecodeError as exc:
            raise InvalidConfigError(f"malformed TOML in {path}: {exc}") from exc
    return config_from_dict(data)


def serialize_config(cfg: RunConfig) -> str:
    return tomli_w.dumps(cfg.model_dump(by_alias=True, exclude_none=True))
