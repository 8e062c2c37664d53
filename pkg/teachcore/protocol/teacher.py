from pathlib import Path
from typing import Iterable, TYPE_CHECKING

from pydantic import BaseModel, Field, ValidationError, field_validator

from teachcore.configuration.file import read_document
from teachcore.errors import InvalidDocument
from .abc import TeacherAction, ActionKind, ProtocolState, Protocol

if TYPE_CHECKING:
    from teachcore.learners import Learner
    from teachcore.model import Instance

__all__ = ["Teacher", "ScriptTeacher", "ScriptDocument", "load_script"]


class Teacher(object):
    """
    状態を見て次の行動を選ぶ。None を返すとそこで打ち切る。
    """

    def choose(self, inst: "Instance", learner: "Learner", protocol: Protocol,
               state: ProtocolState) -> TeacherAction | None:
        raise NotImplementedError


class ScriptTeacher(Teacher):
    def __init__(self, actions: Iterable[TeacherAction]):
        self.actions = tuple(actions)
        self._index = 0

    def choose(self, inst, learner, protocol, state):
        if self._index >= len(self.actions):
            return None
        action = self.actions[self._index]
        self._index += 1
        return action

    def __repr__(self):
        return f"<ScriptTeacher actions={len(self.actions)} next={self._index}>"


class ScriptDocument(BaseModel):
    script: list[dict[str, str]] = Field(description="{add_feature: id} / {add_example: id} の並び")

    @field_validator("script")
    @classmethod
    def _check_entries(cls, entries: list[dict[str, str]]):
        kinds = {k.value for k in ActionKind}
        for index, entry in enumerate(entries):
            if len(entry) != 1 or next(iter(entry)) not in kinds:
                raise ValueError(f"entry {index} must be exactly one of {sorted(kinds)} (got {entry!r})")
        return entries

    def actions(self) -> list[TeacherAction]:
        return [TeacherAction(ActionKind(kind), target) for entry in self.script for kind, target in entry.items()]

    @classmethod
    def from_actions(cls, actions: Iterable[TeacherAction]):
        return cls(script=[a.to_document() for a in actions])


def load_script(path: Path) -> list[TeacherAction]:
    try:
        raw = read_document(Path(path))
    except OSError as e:
        raise InvalidDocument(f"cannot read script file {path}: {e}") from e
    except Exception as e:
        raise InvalidDocument(f"cannot parse script file {path}: {e}") from e

    if isinstance(raw, list):  # 並びだけの文書も受け付ける
        raw = dict(script=raw)
    try:
        return ScriptDocument.model_validate(raw).actions()
    except ValidationError as e:
        raise InvalidDocument(f"malformed script document: {e.error_count()} error(s)\n{e}") from e
