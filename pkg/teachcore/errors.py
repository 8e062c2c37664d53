from typing import TYPE_CHECKING, Iterable

if TYPE_CHECKING:
    from teachcore.protocol.abc import Transcript

__all__ = [
    "TeachCoreError",
    "InstanceError",
    "InvalidDocument",
    "InvalidRational",
    "InvalidLabel",
    "MissingFeatureValue",
    "DuplicateObjectId",
    "LatticeChainViolation",
    "UnknownFeatureId",
    "UnknownObject",
    "UnknownFeature",
    "FeatureSetNotInLattice",
    "LearnerError",
    "DimensionMismatch",
    "NotSeparable",
    "EmptyClass",
    "BudgetExceeded",
    "ProtocolError",
    "IllegalAction",
    "Stuck",
    "StepLimitExceeded",
    "VerifierError",
    "InvalidParams",
    "ConstructionFailed",
]


def _fmt_set(feature_set: Iterable[str]):
    return "{" + ", ".join(sorted(feature_set)) + "}"


class TeachCoreError(Exception):
    pass


# instance

class InstanceError(TeachCoreError, ValueError):
    pass


class InvalidDocument(InstanceError):
    pass


class InvalidRational(InstanceError):
    def __init__(self, text):
        InstanceError.__init__(self, f"invalid rational value: {text!r}")
        self.text = text


class InvalidLabel(InstanceError):
    def __init__(self, object_id: str, label):
        InstanceError.__init__(self, f"label of {object_id!r} must be 0 or 1 (got {label!r})")
        self.object_id = object_id
        self.label = label


class MissingFeatureValue(InstanceError):
    def __init__(self, feature_id: str, object_id: str):
        InstanceError.__init__(self, f"feature {feature_id!r} has no value for object {object_id!r}")
        self.feature_id = feature_id
        self.object_id = object_id


class DuplicateObjectId(InstanceError):
    def __init__(self, object_id: str):
        InstanceError.__init__(self, f"duplicate object id: {object_id!r}")
        self.object_id = object_id


class LatticeChainViolation(InstanceError):
    def __init__(self, feature_set: Iterable[str]):
        self.feature_set = frozenset(feature_set)
        InstanceError.__init__(self, f"feature set {_fmt_set(self.feature_set)} has no predecessor in the lattice")


class UnknownFeatureId(InstanceError):
    def __init__(self, feature_id: str):
        InstanceError.__init__(self, f"lattice references unknown feature: {feature_id!r}")
        self.feature_id = feature_id


class UnknownObject(InstanceError):
    def __init__(self, object_id: str):
        InstanceError.__init__(self, f"unknown object: {object_id!r}")
        self.object_id = object_id


class UnknownFeature(InstanceError):
    def __init__(self, feature_id: str):
        InstanceError.__init__(self, f"unknown feature: {feature_id!r}")
        self.feature_id = feature_id


class FeatureSetNotInLattice(InstanceError):
    def __init__(self, feature_set: Iterable[str]):
        self.feature_set = frozenset(feature_set)
        InstanceError.__init__(self, f"feature set {_fmt_set(self.feature_set)} is not in the lattice")


# learners

class LearnerError(TeachCoreError):
    pass


class DimensionMismatch(LearnerError, ValueError):
    def __init__(self, expected: int, actual: int):
        LearnerError.__init__(self, f"dimension mismatch (expected: {expected}, got: {actual})")
        self.expected = expected
        self.actual = actual


class NotSeparable(LearnerError):
    pass


class EmptyClass(LearnerError):
    pass


# search

class BudgetExceeded(TeachCoreError):
    def __init__(self, size_reached: int, states: int, *args):
        TeachCoreError.__init__(
            self, *(args or (f"search budget exhausted (subset size reached: {size_reached}, states: {states})", )))
        self.size_reached = size_reached
        self.states = states


# protocol

class ProtocolError(TeachCoreError):
    def __init__(self, *args, step_index: int = None, transcript: "Transcript" = None):
        TeachCoreError.__init__(self, *args)
        self.step_index = step_index
        self.transcript = transcript


class IllegalAction(ProtocolError):
    pass


class Stuck(IllegalAction):
    """学習誤差が残っているのに追加できる特徴量が無い"""


class StepLimitExceeded(ProtocolError):
    pass


# verifier

class VerifierError(TeachCoreError):
    pass


class InvalidParams(VerifierError, ValueError):
    pass


class ConstructionFailed(VerifierError):
    pass
