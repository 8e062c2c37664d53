"""
二つの教示プロトコルの状態機械。

Open: 教師は特徴量の追加と例の追加を自由に選べる。
EDF: 特徴量は訓練誤差が残っている間 (InnerFeaturing) だけ追加でき、その間は例を追加できない。
どちらも行動のたびに c = L(F, T) を学習し直す。
"""
from logging import getLogger

from teachcore.errors import IllegalAction, Stuck, StepLimitExceeded
from teachcore.learners import Learner, fit, teaches_target, has_training_error
from teachcore.model import Instance, FeatureSet, TrainingSet, EMPTY_SET
from .abc import Protocol, Phase, ActionKind, TeacherAction, ProtocolState, Outcome, TranscriptStep, Transcript
from .teacher import Teacher, ScriptTeacher

__all__ = ["protocol_start", "step_open", "step_edf", "step", "is_stuck", "run_protocol", "replay",
           "DEFAULT_MAX_STEPS"]
log = getLogger(__name__)
DEFAULT_MAX_STEPS = 10000


def _settle(inst: Instance, learner: Learner, protocol: Protocol,
            feature_set: FeatureSet, training_set: TrainingSet) -> ProtocolState:
    classifier = fit(inst, feature_set, training_set.ids, learner)
    if protocol is Protocol.EDF and has_training_error(inst, feature_set, training_set, classifier):
        phase = Phase.INNER_FEATURING
    else:
        # OuterCheck: c が全対象で c* と一致すれば終了
        phase = Phase.TERMINATED if teaches_target(inst, feature_set, classifier) else Phase.AWAIT_ACTION
    return ProtocolState(feature_set, training_set, classifier, phase)


def protocol_start(inst: Instance, learner: Learner, protocol: Protocol = Protocol.OPEN) -> ProtocolState:
    return _settle(inst, learner, protocol, EMPTY_SET, TrainingSet())


def _add_feature(inst: Instance, state: ProtocolState, feature_id: str) -> FeatureSet:
    if feature_id not in inst.lattice.successors(state.feature_set):
        raise IllegalAction(f"feature {feature_id!r} is not a lattice successor of the current feature set")
    return state.feature_set | {feature_id}


def _add_example(inst: Instance, state: ProtocolState, object_id: str) -> TrainingSet:
    if object_id not in inst.target:
        raise IllegalAction(f"unknown object: {object_id!r}")
    if object_id in state.training_set:
        raise IllegalAction(f"object {object_id!r} is already in the training set")
    return state.training_set.with_example(object_id, inst.target[object_id])


def step_open(inst: Instance, learner: Learner, state: ProtocolState, action: TeacherAction) -> ProtocolState:
    if state.phase is Phase.TERMINATED:
        raise IllegalAction("protocol already terminated")

    if action.kind is ActionKind.ADD_FEATURE:
        return _settle(inst, learner, Protocol.OPEN, _add_feature(inst, state, action.target), state.training_set)
    return _settle(inst, learner, Protocol.OPEN, state.feature_set, _add_example(inst, state, action.target))


def is_stuck(inst: Instance, state: ProtocolState) -> bool:
    return state.phase is Phase.INNER_FEATURING and not inst.lattice.successors(state.feature_set)


def step_edf(inst: Instance, learner: Learner, state: ProtocolState, action: TeacherAction) -> ProtocolState:
    if state.phase is Phase.TERMINATED:
        raise IllegalAction("protocol already terminated")

    if state.phase is Phase.INNER_FEATURING:
        if is_stuck(inst, state):
            raise Stuck("training error persists and no successor feature exists")
        if action.kind is not ActionKind.ADD_FEATURE:
            raise IllegalAction("examples cannot be added while a training error persists")
        return _settle(inst, learner, Protocol.EDF, _add_feature(inst, state, action.target), state.training_set)

    if action.kind is not ActionKind.ADD_EXAMPLE:
        raise IllegalAction("features can only be added while a training error exists")
    return _settle(inst, learner, Protocol.EDF, state.feature_set, _add_example(inst, state, action.target))


def step(inst: Instance, learner: Learner, protocol: Protocol,
         state: ProtocolState, action: TeacherAction) -> ProtocolState:
    if protocol is Protocol.EDF:
        return step_edf(inst, learner, state, action)
    return step_open(inst, learner, state, action)


def run_protocol(inst: Instance, learner: Learner, protocol: Protocol, teacher: Teacher, *,
                 max_steps: int = DEFAULT_MAX_STEPS) -> Transcript:
    """
    教師の行動を終了・行き詰まり・打ち切りまで適用する。
    不正な行動は IllegalAction に step_index と途中までの記録を付けて送出する。
    """
    state = protocol_start(inst, learner, protocol)
    steps = []  # type: list[TranscriptStep]

    while True:
        if state.phase is Phase.TERMINATED:
            outcome = Outcome.TERMINATED
            break
        if is_stuck(inst, state):
            log.debug("Protocol stuck at %s", state)
            outcome = Outcome.STUCK
            break
        if len(steps) >= max_steps:
            raise StepLimitExceeded(f"step limit reached ({max_steps})", step_index=len(steps),
                                    transcript=Transcript(tuple(steps), state, Outcome.INCOMPLETE))

        action = teacher.choose(inst, learner, protocol, state)
        if action is None:
            outcome = Outcome.INCOMPLETE
            break

        try:
            next_state = step(inst, learner, protocol, state, action)
        except IllegalAction as e:
            e.step_index = len(steps)
            e.transcript = Transcript(tuple(steps), state, Outcome.INCOMPLETE)
            raise

        log.debug("step %s: %s -> %s", len(steps), action, next_state.phase.value)
        steps.append(TranscriptStep(state.digest(), action))
        state = next_state

    return Transcript(tuple(steps), state, outcome)


def replay(inst: Instance, learner: Learner, protocol: Protocol, transcript: Transcript, **kwargs) -> Transcript:
    return run_protocol(inst, learner, protocol, ScriptTeacher(transcript.actions), **kwargs)
