from collections import deque
from logging import getLogger
from typing import Iterable

from teachcore.costs import SearchBudget, DEFAULT_BUDGET
from teachcore.errors import BudgetExceeded
from teachcore.learners import Learner
from teachcore.model import Instance, FeatureSet
from .abc import Protocol, Phase, TeacherAction, ProtocolState, TeachingCost, TeachingPlan
from .engine import protocol_start, step, is_stuck

__all__ = ["optimal_teaching_plan", "optimal_teaching_cost"]
log = getLogger(__name__)
StateKey = tuple[FeatureSet, frozenset[str]]


def _key(state: ProtocolState) -> StateKey:
    return state.feature_set, state.training_set.ids


def _legal_actions(inst: Instance, protocol: Protocol, state: ProtocolState, target: FeatureSet,
                   label_limit: int) -> Iterable[tuple[int, TeacherAction]]:
    can_feature = state.phase is (Phase.INNER_FEATURING if protocol is Protocol.EDF else Phase.AWAIT_ACTION)
    can_example = state.phase is Phase.AWAIT_ACTION

    if can_feature:
        for feature_id in sorted(inst.lattice.successors(state.feature_set)):
            # 特徴量は取り除けないので、目標の外に出た時点で到達できない
            if feature_id in target:
                yield 0, TeacherAction.add_feature(feature_id)
    if can_example and len(state.training_set) < label_limit:
        for object_id in inst.sorted_objects:
            if object_id not in state.training_set:
                yield 1, TeacherAction.add_example(object_id)


def optimal_teaching_plan(inst: Instance, learner: Learner, protocol: Protocol, target: Iterable[str],
                          budget: SearchBudget = None) -> TeachingPlan:
    """
    最終的な特徴量集合がちょうど target で終了する行動列のうち、ラベル数が最小のもの。
    特徴量の追加を重み 0、例の追加を重み 1 とした 0-1 BFS で (F, T) 状態を探索する。
    """
    target = inst.lattice.require(target)
    budget = (budget or DEFAULT_BUDGET).check()
    label_limit = budget.subset_limit(len(inst.objects))

    start = protocol_start(inst, learner, protocol)
    distances = {_key(start): 0}  # type: dict[StateKey, int]
    parents = {}  # type: dict[StateKey, tuple[StateKey, TeacherAction]]
    queue = deque([(0, start)])
    expanded = 0
    truncated = False

    while queue:
        labels, state = queue.popleft()
        key = _key(state)
        if distances[key] < labels:
            continue

        if state.phase is Phase.TERMINATED:
            if state.feature_set == target:
                actions = []
                while key in parents:
                    key, action = parents[key]
                    actions.append(action)
                actions.reverse()
                log.debug("Optimal plan for %s: %s labels (%s states)", sorted(target), labels, expanded)
                return TeachingPlan(TeachingCost(len(target), labels), tuple(actions))
            continue
        if is_stuck(inst, state):
            continue

        expanded += 1
        if expanded > budget.max_states:
            log.warning("Teaching-cost search budget exhausted (%s states, %s labels)", expanded - 1, labels)
            raise BudgetExceeded(labels, expanded - 1)

        if state.phase is Phase.AWAIT_ACTION and len(state.training_set) >= label_limit < len(inst.objects):
            truncated = True

        for weight, action in _legal_actions(inst, protocol, state, target, label_limit):
            next_state = step(inst, learner, protocol, state, action)
            next_key = _key(next_state)
            cost = labels + weight
            if next_key in distances and distances[next_key] <= cost:
                continue
            distances[next_key] = cost
            parents[next_key] = (key, action)
            if weight:
                queue.append((cost, next_state))
            else:
                queue.appendleft((cost, next_state))

    if truncated:
        raise BudgetExceeded(label_limit, expanded)
    log.debug("Feature set %s is not reachable (%s states)", sorted(target), expanded)
    return TeachingPlan.unreachable(target)


def optimal_teaching_cost(inst: Instance, learner: Learner, protocol: Protocol, target: Iterable[str],
                          budget: SearchBudget = None) -> TeachingCost:
    return optimal_teaching_plan(inst, learner, protocol, target, budget).cost
