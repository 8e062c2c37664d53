from enum import Enum
from typing import NamedTuple, Iterable

from teachcore.costs import Cost, INFINITE, cost_value
from teachcore.learners import Classifier
from teachcore.model import FeatureSet, TrainingSet, format_feature_set
from teachcore.util import digest

__all__ = [
    "Protocol",
    "Phase",
    "ActionKind",
    "TeacherAction",
    "ProtocolState",
    "Outcome",
    "TranscriptStep",
    "Transcript",
    "TeachingCost",
    "TeachingPlan",
]


class Protocol(Enum):
    OPEN = "open"
    EDF = "edf"

    @property
    def label(self):
        return {Protocol.OPEN: "Open", Protocol.EDF: "EDF"}[self]


class Phase(Enum):
    AWAIT_ACTION = "await_action"
    INNER_FEATURING = "inner_featuring"
    TERMINATED = "terminated"


class ActionKind(Enum):
    ADD_FEATURE = "add_feature"
    ADD_EXAMPLE = "add_example"


class TeacherAction(NamedTuple):
    kind: ActionKind
    target: str  # 特徴量ID または 対象ID

    @classmethod
    def add_feature(cls, feature_id: str):
        return cls(ActionKind.ADD_FEATURE, feature_id)

    @classmethod
    def add_example(cls, object_id: str):
        return cls(ActionKind.ADD_EXAMPLE, object_id)

    def to_document(self):
        return {self.kind.value: self.target}

    def __str__(self):
        return f"{self.kind.value}({self.target})"


class ProtocolState(NamedTuple):
    feature_set: FeatureSet
    training_set: TrainingSet
    classifier: Classifier
    phase: Phase

    def snapshot(self) -> dict:
        return dict(
            features=sorted(self.feature_set),
            examples=[[x, y] for x, y in self.training_set],
            classifier=self.classifier.to_document(),
            phase=self.phase.value,
        )

    def digest(self) -> str:
        return digest(self.snapshot())

    def __str__(self):
        return "F={} T={{{}}} phase={}".format(
            format_feature_set(self.feature_set), ",".join(sorted(self.training_set.ids)),
            self.phase.value)


class Outcome(Enum):
    TERMINATED = "terminated"
    STUCK = "stuck"
    INCOMPLETE = "incomplete"


class TeachingCost(NamedTuple):
    features: int
    labels: Cost

    def __str__(self):
        return f"({self.features},{self.labels})"

    def to_document(self):
        return dict(features=self.features, labels=cost_value(self.labels))

    @property
    def finite(self):
        return self.labels is not INFINITE


class TranscriptStep(NamedTuple):
    digest: str  # 行動前の状態
    action: TeacherAction


class Transcript(NamedTuple):
    steps: tuple[TranscriptStep, ...]
    final: ProtocolState
    outcome: Outcome

    @property
    def actions(self) -> tuple[TeacherAction, ...]:
        return tuple(step.action for step in self.steps)

    @property
    def label_count(self) -> int:
        return len(self.final.training_set)

    @property
    def feature_count(self) -> int:
        return len(self.final.feature_set)

    @property
    def terminated(self) -> bool:
        return self.outcome is Outcome.TERMINATED

    def cost(self) -> TeachingCost:
        return TeachingCost(self.feature_count, self.label_count)

    def to_document(self):
        return dict(
            steps=[dict(state=s.digest, action=s.action.to_document()) for s in self.steps],
            final=self.final.snapshot(),
            final_digest=self.final.digest(),
            outcome=self.outcome.value,
            features=self.feature_count,
            labels=self.label_count,
        )


class TeachingPlan(NamedTuple):
    cost: TeachingCost
    actions: tuple[TeacherAction, ...] | None  # 到達できなければ None

    @classmethod
    def unreachable(cls, feature_set: Iterable[str]):
        return cls(TeachingCost(len(frozenset(feature_set)), INFINITE), None)
