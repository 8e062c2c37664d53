from itertools import combinations
from typing import Iterable, Iterator

from teachcore.errors import LatticeChainViolation, UnknownFeatureId, FeatureSetNotInLattice

__all__ = ["FeatureSet", "EMPTY_SET", "FeatureLattice", "feature_set_key", "format_feature_set"]

FeatureSet = frozenset[str]
EMPTY_SET = frozenset()  # type: FeatureSet


def feature_set_key(feature_set: Iterable[str]):
    """サイズ順、同サイズは特徴量IDの辞書順"""
    ids = sorted(feature_set)
    return len(ids), ids


def format_feature_set(feature_set: Iterable[str]):
    return "{" + ",".join(sorted(feature_set)) + "}"


class FeatureLattice(object):
    def __init__(self, sets: Iterable[Iterable[str]]):
        self._sets = tuple(sorted({frozenset(s) for s in sets}, key=feature_set_key))  # type: tuple[FeatureSet, ...]
        self._members = frozenset(self._sets)

    @classmethod
    def chain(cls, feature_ids: Iterable[str]):
        ids = list(feature_ids)
        return cls(ids[:size] for size in range(len(ids) + 1))

    @classmethod
    def powerset(cls, feature_ids: Iterable[str]):
        ids = sorted(feature_ids)
        return cls(c for size in range(len(ids) + 1) for c in combinations(ids, size))

    @property
    def sets(self):
        return self._sets

    def __contains__(self, feature_set):
        return frozenset(feature_set) in self._members

    def __iter__(self) -> Iterator[FeatureSet]:
        return iter(self._sets)

    def __len__(self):
        return len(self._sets)

    def __eq__(self, other):
        return isinstance(other, FeatureLattice) and self._members == other._members

    def __hash__(self):
        return hash(self._members)

    def __repr__(self):
        return "<FeatureLattice sets=[{}]>".format(", ".join(map(format_feature_set, self._sets)))

    def feature_ids(self) -> FeatureSet:
        return frozenset().union(*self._sets)

    def check(self, known_features: Iterable[str]):
        known = frozenset(known_features)
        for feature_set in self._sets:
            for feature_id in sorted(feature_set):
                if feature_id not in known:
                    raise UnknownFeatureId(feature_id)

        if EMPTY_SET not in self._members:
            raise LatticeChainViolation(EMPTY_SET)

        for feature_set in self._sets:
            if feature_set and not self.predecessors(feature_set):
                raise LatticeChainViolation(feature_set)

    def require(self, feature_set: Iterable[str]) -> FeatureSet:
        feature_set = frozenset(feature_set)
        if feature_set not in self._members:
            raise FeatureSetNotInLattice(feature_set)
        return feature_set

    def predecessors(self, feature_set: FeatureSet) -> list[FeatureSet]:
        return [feature_set - {f} for f in sorted(feature_set) if feature_set - {f} in self._members]

    def successors(self, feature_set: Iterable[str]) -> FeatureSet:
        """
        F ∪ {f} が束に含まれる特徴量 f の集合
        """
        feature_set = self.require(feature_set)
        return frozenset(
            f for s in self._sets if len(s) == len(feature_set) + 1 and feature_set < s
            for f in s - feature_set)

    def chain_to(self, feature_set: Iterable[str]) -> list[FeatureSet]:
        """
        ∅ = F_0 ⊂ F_1 ⊂ ... ⊂ F_k = F となる鎖を返す (各段で辞書順最小の前者を選ぶ)
        """
        current = self.require(feature_set)
        chain = [current]
        while current:
            predecessors = self.predecessors(current)
            if not predecessors:
                raise LatticeChainViolation(current)
            current = min(predecessors, key=feature_set_key)
            chain.append(current)
        chain.reverse()
        return chain

    def subsets_of(self, feature_set: Iterable[str], *, proper=True) -> list[FeatureSet]:
        feature_set = self.require(feature_set)
        return [s for s in self._sets if (s < feature_set if proper else s <= feature_set)]

    def supersets_of(self, feature_set: Iterable[str], *, proper=True) -> list[FeatureSet]:
        feature_set = self.require(feature_set)
        return [s for s in self._sets if (s > feature_set if proper else s >= feature_set)]

    def to_document(self) -> list[list[str]]:
        return [sorted(s) for s in self._sets]
