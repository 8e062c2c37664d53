import pytest

from teachcore.costs import INFINITE, SearchBudget
from teachcore.errors import IllegalAction, Stuck, StepLimitExceeded, InvalidDocument, BudgetExceeded
from teachcore.learners import Learner, ConstantClassifier
from teachcore.protocol import (
    Protocol, Phase, Outcome, TeacherAction, TeachingCost, ScriptTeacher, ScriptDocument, Teacher, load_script,
    protocol_start, step, step_open, step_edf, is_stuck, run_protocol, replay, optimal_teaching_plan,
    optimal_teaching_cost,
)
from .conftest import make_instance

LIN, ONE_NN = Learner.LINEAR, Learner.ONE_NN
OPEN, EDF = Protocol.OPEN, Protocol.EDF
feature, example = TeacherAction.add_feature, TeacherAction.add_example


@pytest.fixture
def negatives():
    return make_instance(dict(x1=0, x2=0), dict(f1=dict(x1=0, x2=1)), [[], ["f1"]])


def run_script(inst, learner, protocol, *actions):
    return run_protocol(inst, learner, protocol, ScriptTeacher(actions))


class TestStart:
    def test_await(self, thresh4, xor4):
        state = protocol_start(thresh4, LIN)
        assert state.phase is Phase.AWAIT_ACTION
        assert state.classifier == ConstantClassifier(0)
        assert protocol_start(xor4, ONE_NN).phase is Phase.AWAIT_ACTION

    def test_terminated(self, negatives):
        assert protocol_start(negatives, LIN, EDF).phase is Phase.TERMINATED

    def test_phases(self):
        # 外側の十分性判定は行動の適用と同時に済ませる
        assert [p.value for p in Phase] == ["await_action", "inner_featuring", "terminated"]


class TestOpen:
    def test_trace(self, thresh4):
        state = step_open(thresh4, LIN, protocol_start(thresh4, LIN), feature("f1"))
        assert state.feature_set == {"f1"}
        assert len(state.training_set) == 0
        assert state.classifier == ConstantClassifier(0)
        assert state.phase is Phase.AWAIT_ACTION

        state = step_open(thresh4, LIN, state, example("x2"))
        assert state.phase is Phase.AWAIT_ACTION
        state = step_open(thresh4, LIN, state, example("x3"))
        assert state.phase is Phase.TERMINATED

    @pytest.mark.parametrize("action", [feature("f9"), example("x9")])
    def test_illegal(self, thresh4, action):
        with pytest.raises(IllegalAction):
            step_open(thresh4, LIN, protocol_start(thresh4, LIN), action)

    def test_duplicate_example(self, thresh4):
        state = step_open(thresh4, LIN, protocol_start(thresh4, LIN), example("x1"))
        with pytest.raises(IllegalAction):
            step_open(thresh4, LIN, state, example("x1"))

    def test_after_termination(self, negatives):
        with pytest.raises(IllegalAction):
            step_open(negatives, LIN, protocol_start(negatives, LIN), example("x1"))


class TestEDF:
    def test_trace(self, thresh4):
        state = protocol_start(thresh4, LIN, EDF)
        state = step_edf(thresh4, LIN, state, example("x1"))
        assert state.phase is Phase.AWAIT_ACTION
        state = step_edf(thresh4, LIN, state, example("x3"))
        assert state.phase is Phase.INNER_FEATURING
        with pytest.raises(IllegalAction):
            step_edf(thresh4, LIN, state, example("x2"))
        state = step_edf(thresh4, LIN, state, feature("f1"))
        assert state.phase is Phase.TERMINATED

    def test_feature_without_error(self, xor4):
        with pytest.raises(IllegalAction):
            step_edf(xor4, ONE_NN, protocol_start(xor4, ONE_NN, EDF), feature("f1"))

    def test_stuck(self, coll):
        state = protocol_start(coll, ONE_NN, EDF)
        for action in (example("x1"), example("x2")):
            state = step(coll, ONE_NN, EDF, state, action)
        assert state.phase is Phase.INNER_FEATURING
        state = step(coll, ONE_NN, EDF, state, feature("f1"))
        assert state.phase is Phase.INNER_FEATURING
        assert is_stuck(coll, state)
        with pytest.raises(Stuck):
            step_edf(coll, ONE_NN, state, feature("f1"))


class TestRun:
    def test_edf_script(self, thresh4):
        transcript = run_script(thresh4, LIN, EDF, example("x1"), example("x3"), feature("f1"))
        assert transcript.terminated
        assert transcript.cost() == TeachingCost(1, 2)

    def test_open_script(self, thresh4):
        transcript = run_script(thresh4, LIN, OPEN, feature("f1"), example("x2"), example("x3"))
        assert transcript.outcome is Outcome.TERMINATED
        assert str(transcript.cost()) == "(1,2)"

    def test_trivial(self, negatives):
        transcript = run_script(negatives, LIN, EDF)
        assert transcript.steps == ()
        assert transcript.cost() == TeachingCost(0, 0)

    def test_stuck(self, coll):
        transcript = run_script(coll, ONE_NN, EDF, example("x1"), example("x2"), feature("f1"))
        assert transcript.outcome is Outcome.STUCK
        assert len(transcript.steps) == 3

    def test_incomplete(self, thresh4):
        transcript = run_script(thresh4, LIN, OPEN, example("x1"))
        assert transcript.outcome is Outcome.INCOMPLETE

    def test_illegal(self, thresh4):
        with pytest.raises(IllegalAction) as e:
            run_script(thresh4, LIN, OPEN, example("x1"), example("x1"))
        assert e.value.step_index == 1
        assert e.value.transcript.actions == (example("x1"),)

    def test_step_limit(self, thresh4):
        class Looping(Teacher):
            def choose(self, inst, learner, protocol, state):
                return None if state.feature_set else feature("f1")

        with pytest.raises(StepLimitExceeded):
            run_protocol(thresh4, LIN, OPEN, Looping(), max_steps=0)

    def test_replay(self, thresh4):
        transcript = run_script(thresh4, LIN, EDF, example("x1"), example("x3"), feature("f1"))
        again = replay(thresh4, LIN, EDF, transcript)
        assert again.to_document() == transcript.to_document()

    def test_soundness(self, thresh4):
        """EDF で特徴量を追加するのは訓練誤差がある状態だけ"""
        transcript = run_script(thresh4, LIN, EDF, example("x1"), example("x3"), feature("f1"))
        state = protocol_start(thresh4, LIN, EDF)
        for item in transcript.steps:
            assert item.digest == state.digest()
            if item.action.kind.value == "add_feature":
                assert state.phase is Phase.INNER_FEATURING
            state = step(thresh4, LIN, EDF, state, item.action)


class TestScript:
    def test_load(self, tmp_path):
        path = tmp_path / "script.yml"
        path.write_text("script:\n  - add_feature: f1\n  - add_example: x2\n", encoding="utf-8")
        assert load_script(path) == [feature("f1"), example("x2")]

    def test_bare_list(self, tmp_path):
        path = tmp_path / "script.json"
        path.write_text('[{"add_example": "x3"}]', encoding="utf-8")
        assert load_script(path) == [example("x3")]

    def test_bad_entry(self, tmp_path):
        path = tmp_path / "script.json"
        path.write_text('[{"remove_feature": "f1"}]', encoding="utf-8")
        with pytest.raises(InvalidDocument):
            load_script(path)

    def test_document(self):
        doc = ScriptDocument.from_actions([feature("f1"), example("x1")])
        assert doc.script == [dict(add_feature="f1"), dict(add_example="x1")]


class TestOptimal:
    @pytest.mark.parametrize("protocol", [OPEN, EDF])
    def test_thresh4(self, thresh4, protocol):
        assert optimal_teaching_cost(thresh4, LIN, protocol, {"f1"}) == TeachingCost(1, 2)

    def test_plan_replays(self, thresh4):
        plan = optimal_teaching_plan(thresh4, LIN, EDF, {"f1"})
        transcript = run_protocol(thresh4, LIN, EDF, ScriptTeacher(plan.actions))
        assert transcript.terminated
        assert transcript.final.feature_set == {"f1"}
        assert transcript.label_count == 2

    def test_edf_inaccessible(self, early):
        assert optimal_teaching_cost(early, ONE_NN, EDF, {"f1", "f2"}) == TeachingCost(2, INFINITE)
        assert optimal_teaching_plan(early, ONE_NN, EDF, {"f1", "f2"}).actions is None

    def test_open_reaches_beyond(self, early):
        cost = optimal_teaching_cost(early, ONE_NN, OPEN, {"f1", "f2"})
        assert cost.finite

    def test_terminated_at_start(self, negatives):
        assert optimal_teaching_cost(negatives, LIN, OPEN, set()) == TeachingCost(0, 0)
        assert optimal_teaching_cost(negatives, LIN, OPEN, {"f1"}).labels is INFINITE

    def test_budget(self, xor4):
        with pytest.raises(BudgetExceeded):
            optimal_teaching_cost(xor4, ONE_NN, OPEN, {"f1", "f2"}, SearchBudget(max_states=2))
