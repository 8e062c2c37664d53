from enum import Enum, IntEnum
from pathlib import Path
from typing import NamedTuple

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from teachcore.configuration import ConfigurationValueError
from teachcore.costs import SearchBudget
from teachcore.errors import (
    InstanceError, InvalidDocument, BudgetExceeded, ProtocolError, InvalidParams, ConstructionFailed,
)
from teachcore.learners import Learner
from teachcore.model import Instance, FeatureSet
from teachcore.protocol import Protocol
from teachcore.verifier import PropertyId, GeneratorKind, LabelMode, LatticeKind

__all__ = [
    "Command",
    "OutputFormat",
    "ExitCode",
    "CommandResult",
    "RunRequest",
    "exit_code_for",
    "search_budget",
    "selected_feature_sets",
]

ALL = "all"


class Command(Enum):
    ANALYZE = "analyze"
    SIMULATE = "simulate"
    VERIFY = "verify"
    GENERATE = "generate"


class OutputFormat(Enum):
    TABLE = "table"
    MACHINE = "machine"


class ExitCode(IntEnum):
    OK = 0
    UNEXPECTED = 1
    INVALID_INPUT = 2
    PROPERTY_FAILED = 3
    BUDGET_EXHAUSTED = 4
    ILLEGAL_SCRIPT = 5
    CONSTRUCTION_FAILED = 6


class CommandResult(NamedTuple):
    exit_code: ExitCode
    output: str


class RunRequest(BaseModel):
    model_config = ConfigDict(frozen=True)

    command: Command
    instances: list[Path] = Field(default_factory=list)
    learners: list[Learner] = Field(default_factory=lambda: [Learner.LINEAR])
    protocols: list[Protocol] = Field(default_factory=lambda: [Protocol.OPEN])
    # None なら束の全要素
    feature_sets: list[list[str]] | None = None
    script: Path | None = None
    optimal: bool = False
    seed: int = 0
    # 探索する状態数の上限 (未指定なら設定値)
    budget: int | None = Field(default=None, ge=1)
    max_subset_size: int | None = Field(default=None, ge=1)
    format: OutputFormat = OutputFormat.TABLE
    out: Path | None = None

    # verify
    properties: list[PropertyId] = Field(default_factory=lambda: list(PropertyId))
    trials: int | None = Field(default=None, ge=0)

    # generate
    kind: GeneratorKind = GeneratorKind.RANDOM
    dimension: int = Field(default=1, ge=0)
    pool_size: int = Field(default=4, ge=1)
    k: int = Field(default=2, ge=2)
    mode: LabelMode = LabelMode.GENERAL
    lattice: LatticeKind = LatticeKind.CHAIN
    both_labels: bool = False

    @model_validator(mode="after")
    def _check_command(self):
        if self.command in (Command.ANALYZE, Command.SIMULATE) and len(self.instances) != 1:
            raise ValueError(f"{self.command.value} needs exactly one --instance (got {len(self.instances)})")
        if self.command is Command.SIMULATE:
            if self.optimal == (self.script is not None):
                raise ValueError("simulate needs either --script or --optimal")
            if self.script is not None and (len(self.learners) != 1 or len(self.protocols) != 1):
                raise ValueError("script replay needs a single --learner and a single --protocol")
        if self.command is Command.GENERATE and self.out is None:
            raise ValueError("generate needs --out")
        return self

    @classmethod
    def parse(cls, **values) -> "RunRequest":
        """コマンドライン由来の値から作る。不正な値は InvalidDocument にする"""
        try:
            return cls.model_validate(values)
        except ValidationError as e:
            messages = "; ".join(f"{'.'.join(map(str, err['loc'])) or 'request'}: {err['msg']}"
                                 for err in e.errors())
            raise InvalidDocument(f"invalid arguments: {messages}") from e


def selected_feature_sets(inst: Instance, req: RunRequest) -> list[FeatureSet]:
    if req.feature_sets is None:
        return list(inst.lattice.sets)
    return [inst.lattice.require(ids) for ids in req.feature_sets]


def search_budget(req: RunRequest, config=None) -> SearchBudget:
    search = config.search if config is not None else None
    max_states = req.budget or (search.max_states if search else SearchBudget().max_states)
    max_subset_size = req.max_subset_size or (search.max_subset_size if search else None)
    return SearchBudget(max_subset_size=max_subset_size, max_states=max_states).check()


def exit_code_for(error: BaseException) -> ExitCode:
    if isinstance(error, BudgetExceeded):
        return ExitCode.BUDGET_EXHAUSTED
    elif isinstance(error, ProtocolError):
        return ExitCode.ILLEGAL_SCRIPT
    elif isinstance(error, ConstructionFailed):
        return ExitCode.CONSTRUCTION_FAILED
    elif isinstance(error, (InstanceError, InvalidParams, ConfigurationValueError)):
        return ExitCode.INVALID_INPUT
    return ExitCode.UNEXPECTED
