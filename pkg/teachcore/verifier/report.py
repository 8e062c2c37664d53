from enum import Enum
from typing import Any

from pydantic import BaseModel, Field, computed_field

from teachcore.model import Instance, InstanceDocument, instance_document

__all__ = ["PropertyId", "Violation", "PropertyReport", "VerificationReport"]


class PropertyId(Enum):
    P1 = "P1"  # 十分性と無効化集合の双対性
    P2 = "P2"  # 十分性の単調性
    P3 = "P3"  # 無効化集合は部分特徴量集合でも無効化集合
    P4 = "P4"  # Open のラベル数 <= |F|+1
    P5 = "P5"  # 極小十分集合の EDF ラベル数 <= 2(|F|+1)
    P6 = "P6"  # 1NN 概念指定コストの増大
    P7 = "P7"  # 線形の概念指定コスト <= d+1
    P8 = "P8"  # 1NN の無効化コスト = 2
    P9 = "P9"  # 線形の無効化コスト <= d+2
    L1 = "L1"  # サポート縮約 |U| <= d+1


class Violation(BaseModel):
    instance: InstanceDocument
    feature_set: list[str] | None = None
    learner: str | None = None
    detail: str
    witness: dict[str, Any] | None = None

    @classmethod
    def of(cls, inst: Instance, detail: str, *, feature_set=None, learner=None, witness=None):
        return cls(
            instance=instance_document(inst),
            feature_set=None if feature_set is None else sorted(feature_set),
            learner=None if learner is None else learner.value,
            detail=detail,
            witness=witness,
        )


class PropertyReport(BaseModel):
    property: str
    instances: int = 0
    checks: int = 0
    skipped: int = 0
    violations: list[Violation] = Field(default_factory=list)
    complete: bool = True
    notes: list[str] = Field(default_factory=list)

    @computed_field
    @property
    def status(self) -> str:
        return "fail" if self.violations else "pass"


class VerificationReport(BaseModel):
    seed: int
    reports: list[PropertyReport] = Field(default_factory=list)

    @computed_field
    @property
    def status(self) -> str:
        return "fail" if any(r.violations for r in self.reports) else "pass"

    @computed_field
    @property
    def complete(self) -> bool:
        return all(r.complete for r in self.reports)
