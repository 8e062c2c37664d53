import traceback
from enum import Enum
from pathlib import Path

from .configuration import ConfigValues, ValueNotSet, ParseError
from .file import YamlFileDriver

__all__ = ["FileConfigValues", "CnfErr", "ConfigurationValueError"]


class CnfErr(Enum):
    NOT_SET = "not_set"
    """
    必須値が設定されてない場合に処理エラーを発生させる
    それ以外の処理エラーを無視し、デフォルト値を代入する
    """

    IGNORE = "ignore"
    """
    全ての処理エラーを無視し、デフォルト値を代入する
    """

    RAISE = "raise"
    """処理エラーを直ちに発生させる"""


class ConfigurationValueError(ValueError):
    def __init__(self, stacks: list[ParseError], *args):
        self.stacks = stacks
        ValueError.__init__(self, *args)


class FileConfigValues(ConfigValues):
    def __init__(self, path: Path, *, errors=CnfErr.NOT_SET):
        CnfErr(errors)  # value check
        self.__driver = YamlFileDriver(path)
        self.__errors = errors
        ConfigValues.__init__(self)

    @property
    def path(self) -> Path:
        return self.__driver.path

    def load(self, save_defaults=True):
        if save_defaults and not self.__driver.path.is_file():
            self.save()

        errors = self.__driver.load_to(self)
        if errors:
            self.on_deserialize_error(errors)

    def save(self):
        errors = self.__driver.save_from(self)
        if errors:
            raise ConfigurationValueError(
                errors, "Serializing Failed\n" + "\n".join(
                    f"{s.key} -> {str(s.error) or type(s.error).__name__}" for s in errors))

    def on_deserialize_error(self, stacks: list[ParseError]):
        if self.__errors is CnfErr.IGNORE or (
                self.__errors is CnfErr.NOT_SET and not any(isinstance(s.error, ValueNotSet) for s in stacks)):
            for stack in stacks:
                if stack.entry.default is not None:
                    stack.entry.value = stack.entry.type.clone(stack.entry.default)
            return

        # RAISE
        errors = []
        for stack in stacks:
            errors.append(f"{stack.key} -> {str(stack.error) or type(stack.error).__name__}")
            if not isinstance(stack.error, (ValueNotSet, ValueError, TypeError)):
                errors.append("".join(traceback.format_exception(stack.error)))
        raise ConfigurationValueError(stacks, "Deserializing Failed\n" + "\n".join(errors))
