import logging
from pathlib import Path
from typing import Any

try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from data_gen import GeneratorSpec
from evasion.roam import SelectionStrategy
from harness import settings
from measures.influence import InfluenceConfig, InfluenceModel

logger = logging.getLogger(__name__)

DETECTOR_NAMES = ("louvain", "cnm", "gn")


class ConfigError(ValueError):
    """Raised on an unreadable config file."""


def read_config_file(path: Path) -> dict[str, str]:
    """Read flat ``key = value`` lines; keys may use dashes or underscores, ``#`` starts a comment.

    Raises
    ------
        ConfigError: If the file is missing or a line has no ``=``.

    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        msg = f"cannot read config file {path}: {exc.strerror}"
        raise ConfigError(msg) from exc
    values: dict[str, str] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep or not key.strip():
            msg = f"{path}:{number}: expected 'key = value'"
            raise ConfigError(msg)
        values[key.strip().replace("-", "_")] = value.strip()
    return values


class InfluenceSettings(BaseModel):
    ic_p: float = Field(default=settings.DEFAULT_IC_PROBABILITY, ge=0.0, le=1.0)
    mc_samples: int = Field(default=settings.DEFAULT_MC_SAMPLES, ge=1)
    models: tuple[InfluenceModel, ...] = (InfluenceModel.IC, InfluenceModel.LT)

    @field_validator("models", mode="before")
    @classmethod
    def split_models(cls, value: Any) -> Any:  # noqa: ANN401
        if isinstance(value, str):
            return tuple(part.strip() for part in value.split(",") if part.strip())
        return value

    def configs(self, seed: int) -> list[InfluenceConfig]:
        """One config per enabled model, all on the same seed."""
        return [InfluenceConfig(model=model, p=self.ic_p, samples=self.mc_samples, seed=seed) for model in self.models]


class RoamSettings(BaseModel):
    budget: int = Field(default=settings.DEFAULT_BUDGET, ge=1)
    executions: int = Field(default=settings.DEFAULT_EXECUTIONS, ge=1)
    v0_strategy: SelectionStrategy = SelectionStrategy.MAX
    target_strategy: SelectionStrategy = SelectionStrategy.MIN


class DiceSettings(BaseModel):
    budget: int = Field(default=4, ge=1)
    d: int = Field(default=2, ge=0)
    d_sweep: bool = False

    @model_validator(mode="after")
    def check_d(self) -> Self:
        if self.d > self.budget:
            msg = f"d must not exceed the budget, got d={self.d}, budget={self.budget}"
            raise ValueError(msg)
        return self


class ExperimentConfig(BaseModel):
    """Everything one ``roam`` or ``dice`` invocation needs.

    Exactly one of ``input_path`` and ``generator`` names the network. For generated networks
    every replicate draws a fresh graph; a fixed input graph only varies the heuristic and
    Monte Carlo randomness.
    """

    model_config = ConfigDict(frozen=True)

    input_path: Path | None = None
    generator: GeneratorSpec | None = None
    directed: bool = False
    roam: RoamSettings | None = None
    dice: DiceSettings | None = None
    influence: InfluenceSettings = InfluenceSettings()
    detector: str = "louvain"
    alpha: float = Field(default=settings.DEFAULT_ALPHA, ge=0.0, le=1.0)
    replicates: int = Field(default=settings.DEFAULT_REPLICATES, ge=1)
    seed: int = Field(default=settings.DEFAULT_SEED, ge=0)
    workers: int = Field(default=1, ge=1)
    out: Path | None = None

    @field_validator("detector")
    @classmethod
    def check_detector(cls, value: str) -> str:
        if value in DETECTOR_NAMES or (value.startswith("external:") and len(value) > len("external:")):
            return value
        msg = f"detector must be one of {', '.join(DETECTOR_NAMES)} or external:PATH, got {value!r}"
        raise ValueError(msg)

    @model_validator(mode="after")
    def check_network_source(self) -> Self:
        if (self.input_path is None) == (self.generator is None):
            msg = "give exactly one of --input and --gen"
            raise ValueError(msg)
        if self.generator is not None and self.directed:
            msg = "random generators produce undirected graphs; --directed needs --input"
            raise ValueError(msg)
        if self.roam is None and self.dice is None:
            msg = "an experiment needs ROAM or DICE settings"
            raise ValueError(msg)
        return self

    @property
    def fixed_input(self) -> bool:
        return self.input_path is not None


GENERATOR_KEYS = ("n", "m", "k", "avg", "beta")
INFLUENCE_KEYS = ("ic_p", "mc_samples", "models")
ROAM_KEYS = ("budget", "executions", "v0_strategy", "target_strategy")
DICE_KEYS = ("budget", "d", "d_sweep")
TOP_LEVEL_KEYS = ("directed", "detector", "alpha", "replicates", "seed", "workers", "out")


def merge_sources(cli: dict[str, Any], file_values: dict[str, str]) -> dict[str, Any]:
    """Layer CLI flags over config-file values; flags left unset (``None``) fall through."""
    merged: dict[str, Any] = dict(file_values)
    merged.update({key: value for key, value in cli.items() if value is not None})
    return merged


def build_experiment_config(command: str, values: dict[str, Any]) -> ExperimentConfig:
    """Assemble an ``ExperimentConfig`` for ``command`` (``roam`` or ``dice``) from flat values.

    Keys missing from ``values`` take the defaults of the config models, where the seed
    default comes from ``NETCLOAK_SEED``.

    Raises
    ------
        pydantic.ValidationError: On invalid or inconsistent values.

    """
    data: dict[str, Any] = {key: values[key] for key in TOP_LEVEL_KEYS if key in values}
    if values.get("input") is not None:
        data["input_path"] = values["input"]
    if values.get("gen") is not None:
        spec = {key: values[key] for key in GENERATOR_KEYS if values.get(key) is not None}
        data["generator"] = {"family": values["gen"], **spec}
    data["influence"] = {key: values[key] for key in INFLUENCE_KEYS if values.get(key) is not None}
    heuristic_keys = ROAM_KEYS if command == "roam" else DICE_KEYS
    data[command] = {key: values[key] for key in heuristic_keys if values.get(key) is not None}
    config = ExperimentConfig.model_validate(data)
    logger.debug("Experiment config: %s", config.model_dump_json())
    return config
