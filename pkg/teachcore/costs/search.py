from functools import lru_cache
from itertools import combinations
from logging import getLogger
from typing import Callable, Iterable

from teachcore.errors import BudgetExceeded
from teachcore.learners import Learner, Classifier, strict_separability
from teachcore.model import Instance, FeatureSet, ObjectId, TrainingSet, featurize_pool
from .cost import INFINITE, Infinite, Cost, CostVector, SearchBudget, DEFAULT_BUDGET

__all__ = [
    "is_sufficient",
    "min_concept_teaching_set",
    "min_invalidation_set",
    "find_teaching_set",
    "find_invalidation_set",
    "fs_cost",
    "minimal_sufficient_sets",
    "path_invalidation_bound",
    "set_size",
]
log = getLogger(__name__)
Condition = Callable[[Classifier, tuple[ObjectId, ...]], bool]


def set_size(result: TrainingSet | Infinite) -> Cost:
    return INFINITE if result is INFINITE else len(result)


def _require(inst: Instance, feature_set: Iterable[str]) -> FeatureSet:
    return inst.lattice.require(feature_set)


@lru_cache(maxsize=4096)
def _sufficient(inst: Instance, feature_set: FeatureSet, learner: Learner) -> bool:
    points = featurize_pool(inst, feature_set)
    if learner is Learner.ONE_NN:
        seen = {}  # type: dict[tuple, int]
        for x in inst.objects:
            label = seen.setdefault(points[x], inst.target[x])
            if label != inst.target[x]:
                return False
        return True

    pos = [points[x] for x in inst.objects if inst.target[x] == 1]
    neg = [points[x] for x in inst.objects if inst.target[x] == 0]
    return strict_separability(pos, neg, len(feature_set)).separable


def is_sufficient(inst: Instance, feature_set: Iterable[str], learner: Learner) -> bool:
    """
    1NN: 特徴量空間で同じ点に異なるラベルの対象が重ならない
    lin: 正例と負例が厳密に線形分離できる
    """
    return _sufficient(inst, _require(inst, feature_set), learner)


def _teaches(inst: Instance, points) -> Condition:
    def _check(classifier: Classifier, _ids):
        return all(classifier.predict(points[x]) == inst.target[x] for x in inst.objects)
    return _check


def _invalidates(inst: Instance, points) -> Condition:
    def _check(classifier: Classifier, ids):
        return any(classifier.predict(points[x]) != inst.target[x] for x in ids)
    return _check


def _first_subset(inst: Instance, feature_set: FeatureSet, learner: Learner, budget: SearchBudget | None,
                  condition: Callable[[dict], Condition], *, both_labels: bool) -> TrainingSet | None:
    """
    サイズ昇順・同サイズは対象IDの辞書順で部分集合を調べ、最初に条件を満たす訓練集合を返す。
    予算内で全部調べきって見つからなければ None
    """
    budget = (budget or DEFAULT_BUDGET).check()
    points = featurize_pool(inst, feature_set)
    check = condition(points)
    objects = inst.sorted_objects
    limit = budget.subset_limit(len(objects))
    dimension = len(feature_set)
    states = 0

    for size in range(limit + 1):
        for ids in combinations(objects, size):
            if both_labels and len({inst.target[x] for x in ids}) < 2:
                continue
            states += 1
            if states > budget.max_states:
                log.warning("Search budget exhausted at subset size %s (%s states)", size, states - 1)
                raise BudgetExceeded(size, states - 1)
            classifier = learner.train(dimension, [(points[x], inst.target[x]) for x in ids])
            if check(classifier, ids):
                log.debug("Found subset of size %s after %s states", size, states)
                return TrainingSet.honest(inst, ids)
        log.debug("No subset of size %s (%s states so far)", size, states)

    if limit < len(objects):
        log.warning("Search budget exhausted at subset size %s (%s states)", limit, states)
        raise BudgetExceeded(limit, states)
    return None


def min_concept_teaching_set(inst: Instance, feature_set: Iterable[str], learner: Learner,
                             budget: SearchBudget = None) -> TrainingSet | Infinite:
    feature_set = _require(inst, feature_set)
    if not _sufficient(inst, feature_set, learner):
        return INFINITE
    found = _first_subset(inst, feature_set, learner, budget, lambda p: _teaches(inst, p),
                          both_labels=inst.has_both_labels())
    return INFINITE if found is None else found


def min_invalidation_set(inst: Instance, feature_set: Iterable[str], learner: Learner,
                         budget: SearchBudget = None) -> TrainingSet | Infinite:
    feature_set = _require(inst, feature_set)
    if _sufficient(inst, feature_set, learner):
        return INFINITE
    # 片方のラベルしか無い訓練集合では定数分類器になり、誤りは出ない
    found = _first_subset(inst, feature_set, learner, budget, lambda p: _invalidates(inst, p), both_labels=True)
    return INFINITE if found is None else found


def find_teaching_set(inst: Instance, feature_set: Iterable[str], learner: Learner,
                      budget: SearchBudget = None) -> TrainingSet | Infinite:
    """十分性の判定を使わず、定義どおり全部分集合を調べる"""
    feature_set = _require(inst, feature_set)
    found = _first_subset(inst, feature_set, learner, budget, lambda p: _teaches(inst, p), both_labels=False)
    return INFINITE if found is None else found


def find_invalidation_set(inst: Instance, feature_set: Iterable[str], learner: Learner,
                          budget: SearchBudget = None) -> TrainingSet | Infinite:
    feature_set = _require(inst, feature_set)
    found = _first_subset(inst, feature_set, learner, budget, lambda p: _invalidates(inst, p), both_labels=False)
    return INFINITE if found is None else found


def fs_cost(inst: Instance, feature_set: Iterable[str], learner: Learner, budget: SearchBudget = None) -> CostVector:
    feature_set = _require(inst, feature_set)
    return CostVector(
        len(feature_set),
        set_size(min_concept_teaching_set(inst, feature_set, learner, budget)),
        set_size(min_invalidation_set(inst, feature_set, learner, budget)),
    )


def minimal_sufficient_sets(inst: Instance, learner: Learner) -> list[FeatureSet]:
    """十分で、束の中の真部分集合がどれも十分でない特徴量集合"""
    return [
        feature_set for feature_set in inst.lattice
        if _sufficient(inst, feature_set, learner)
        and not any(_sufficient(inst, s, learner) for s in inst.lattice.subsets_of(feature_set))
    ]


def path_invalidation_bound(inst: Instance, feature_set: Iterable[str], learner: Learner,
                            budget: SearchBudget = None) -> Cost:
    """
    ∅ から F までの鎖 (F を除く) に沿った無効化コストの和
    """
    total = 0
    for member in inst.lattice.chain_to(feature_set)[:-1]:
        cost = set_size(min_invalidation_set(inst, member, learner, budget))
        if cost is INFINITE:
            return INFINITE
        total += cost
    return total
