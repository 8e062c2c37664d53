from functools import lru_cache
from types import MappingProxyType
from typing import Iterable, Mapping, Iterator

from teachcore.errors import UnknownObject, UnknownFeature, DuplicateObjectId
from .lattice import FeatureLattice, FeatureSet
from .rational import Point, Rational

__all__ = [
    "ObjectId",
    "FeatureId",
    "Label",
    "Instance",
    "TrainingSet",
    "featurize",
    "featurize_pool",
    "lattice_successor_features",
    "is_honest",
]

ObjectId = str
FeatureId = str
Label = int


class Instance(object):
    """
    有限個の対象・目標ラベル・特徴量の値表・特徴量束をまとめたもの。
    検証済みの値は validate_instance() で作ること。
    """

    def __init__(self, objects: Iterable[ObjectId], target: Mapping[ObjectId, Label],
                 features: Mapping[FeatureId, Mapping[ObjectId, Rational]], lattice: FeatureLattice):
        self.objects = tuple(objects)  # type: tuple[ObjectId, ...]
        self.target = MappingProxyType(dict(target))  # type: Mapping[ObjectId, Label]
        self.features = MappingProxyType(
            {f: MappingProxyType(dict(values)) for f, values in sorted(features.items())}
        )  # type: Mapping[FeatureId, Mapping[ObjectId, Rational]]
        self.lattice = lattice
        self.sorted_objects = tuple(sorted(self.objects))  # type: tuple[ObjectId, ...]

    def __repr__(self):
        return "<Instance objects={} features={} lattice={}>".format(
            len(self.objects), len(self.features), len(self.lattice))

    @property
    def feature_ids(self) -> tuple[FeatureId, ...]:
        return tuple(self.features)

    def label(self, object_id: ObjectId) -> Label:
        try:
            return self.target[object_id]
        except KeyError:
            raise UnknownObject(object_id) from None

    def has_both_labels(self):
        return len(set(self.target.values())) == 2

    def is_constant_zero_target(self):
        return not any(self.target.values())


class TrainingSet(object):
    """
    (対象ID, ラベル) の集合。同じ対象IDは一度しか含められない。
    """
    __slots__ = ("_examples", "_ids")

    def __init__(self, examples: Iterable[tuple[ObjectId, Label]] = ()):
        values = {}  # type: dict[ObjectId, Label]
        for object_id, label in examples:
            if object_id in values:
                raise DuplicateObjectId(object_id)
            values[object_id] = label
        self._examples = tuple(sorted(values.items()))
        self._ids = frozenset(values)

    @classmethod
    def honest(cls, inst: Instance, object_ids: Iterable[ObjectId]):
        return cls((x, inst.label(x)) for x in object_ids)

    @property
    def examples(self) -> tuple[tuple[ObjectId, Label], ...]:
        return self._examples

    @property
    def ids(self) -> frozenset[ObjectId]:
        return self._ids

    def with_example(self, object_id: ObjectId, label: Label):
        return TrainingSet(self._examples + ((object_id, label), ))

    def __len__(self):
        return len(self._examples)

    def __iter__(self) -> Iterator[tuple[ObjectId, Label]]:
        return iter(self._examples)

    def __contains__(self, object_id):
        return object_id in self._ids

    def __eq__(self, other):
        return isinstance(other, TrainingSet) and self._examples == other._examples

    def __hash__(self):
        return hash(self._examples)

    def __repr__(self):
        return "<TrainingSet {}>".format(", ".join(f"({x},{y})" for x, y in self._examples) or "{}")


def featurize(inst: Instance, feature_set: Iterable[FeatureId], object_id: ObjectId) -> Point:
    """
    F(x) = (f_1(x), ..., f_p(x))  特徴量の並びはIDの辞書順
    """
    if object_id not in inst.target:
        raise UnknownObject(object_id)
    values = []
    for feature_id in sorted(feature_set):
        try:
            values.append(inst.features[feature_id][object_id])
        except KeyError:
            raise UnknownFeature(feature_id) from None
    return tuple(values)


@lru_cache(maxsize=1024)
def featurize_pool(inst: Instance, feature_set: FeatureSet) -> Mapping[ObjectId, Point]:
    return MappingProxyType({x: featurize(inst, feature_set, x) for x in inst.objects})


def lattice_successor_features(inst: Instance, feature_set: Iterable[FeatureId]) -> FeatureSet:
    return inst.lattice.successors(feature_set)


def is_honest(inst: Instance, training_set: TrainingSet) -> bool:
    return all(inst.label(object_id) == label for object_id, label in training_set)
