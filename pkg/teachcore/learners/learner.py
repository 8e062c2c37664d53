from enum import Enum
from functools import lru_cache
from logging import getLogger
from typing import Iterable, Mapping

from teachcore.errors import DimensionMismatch
from teachcore.model import Instance, FeatureSet, ObjectId, Point, TrainingSet, featurize_pool
from .classifier import Classifier, ConstantClassifier, OneNNClassifier, LinearClassifier
from .geometry import strict_separability

__all__ = [
    "Learner",
    "train_1nn",
    "train_linear",
    "predict",
    "fit",
    "pool_predictions",
    "teaches_target",
    "has_training_error",
]
log = getLogger(__name__)
LabeledPoints = Iterable[tuple[Point, int]]


def _collect(d: int, data: LabeledPoints) -> list[tuple[Point, int]]:
    data = list(data)
    for point, _ in data:
        if len(point) != d:
            raise DimensionMismatch(d, len(point))
    return data


def train_1nn(d: int, data: LabeledPoints) -> Classifier:
    data = _collect(d, data)
    if not data:
        return ConstantClassifier(0, d)
    return OneNNClassifier(d, data)


def train_linear(d: int, data: LabeledPoints) -> Classifier:
    """
    最大マージン超平面。分離できなければ定数 0 を返す
    """
    data = _collect(d, data)
    labels = {y for _, y in data}
    if not labels:
        return ConstantClassifier(0, d)
    if len(labels) == 1:
        return ConstantClassifier(labels.pop(), d)

    pos = [p for p, y in data if y == 1]
    neg = [p for p, y in data if y == 0]
    separation = strict_separability(pos, neg, d)
    if not separation.separable:
        return ConstantClassifier(0, d)
    return LinearClassifier(separation.w, separation.b)


def predict(classifier: Classifier, point: Point) -> int:
    return classifier.predict(point)


class Learner(Enum):
    LINEAR = "lin"
    ONE_NN = "1nn"

    @property
    def label(self):
        return {Learner.LINEAR: "lin", Learner.ONE_NN: "1NN"}[self]

    def train(self, d: int, data: LabeledPoints) -> Classifier:
        if self is Learner.LINEAR:
            return train_linear(d, data)
        return train_1nn(d, data)


@lru_cache(maxsize=65536)
def fit(inst: Instance, feature_set: FeatureSet, object_ids: frozenset[ObjectId], learner: Learner) -> Classifier:
    """
    正直な訓練集合 (ラベルは目標から取る) で学習した分類器
    """
    points = featurize_pool(inst, feature_set)
    data = [(points[x], inst.label(x)) for x in sorted(object_ids)]
    return learner.train(len(feature_set), data)


def pool_predictions(inst: Instance, feature_set: FeatureSet, classifier: Classifier) -> Mapping[ObjectId, int]:
    points = featurize_pool(inst, feature_set)
    return {x: classifier.predict(points[x]) for x in inst.objects}


def teaches_target(inst: Instance, feature_set: FeatureSet, classifier: Classifier) -> bool:
    points = featurize_pool(inst, feature_set)
    return all(classifier.predict(points[x]) == inst.target[x] for x in inst.objects)


def has_training_error(inst: Instance, feature_set: FeatureSet, training_set: TrainingSet | Iterable[ObjectId],
                       classifier: Classifier) -> bool:
    points = featurize_pool(inst, feature_set)
    ids = training_set.ids if isinstance(training_set, TrainingSet) else training_set
    return any(classifier.predict(points[x]) != inst.target[x] for x in ids)
