import inspect
import re
import textwrap
from logging import getLogger
from typing import Any, Iterable, NamedTuple

from .abc import ObjectSerializable, ObjectSerializer, Cloneable
from .types import ObjectType, ConfigType, RationalSerializer

log = getLogger(__name__)
__all__ = ["ConfigValueEntry", "ConfigValues", "ValueNotSet", "ParseError", "DEFAULT_SERIALIZERS"]
DEFAULT_SERIALIZERS = [RationalSerializer()]  # type: list[ObjectSerializer]


class ParseError(NamedTuple):
    key: str
    entry: "ConfigValueEntry"
    error: Exception


class ConfigValueEntry:
    def __init__(self, v_name: str, v_type: ObjectType, v_default: Any, *, comments: str = None):
        self.name = v_name
        self.type = v_type
        self.default = v_default
        self.comments = comments
        self.__value = None

        if v_default is not None:
            self.__value = v_type.clone(v_default)
        elif not v_type.nullable:
            try:
                self.__value = v_type.default()
            except ValueNotSet:
                pass  # 読み込み時に値が無ければエラー

    @property
    def value(self):
        return self.__value

    @value.setter
    def value(self, value):
        if value is None and not self.type.nullable:
            raise TypeError(f"'{self.name}' is not nullable")
        if value is not None and not self.type.equals_type(value):
            raise TypeError(f"invalid type (required: {self.type.typename()}, obj: {value!r})")
        self.__value = value

    def serialize(self):
        return self.type.serialize(self.__value)

    def deserialize(self, serialized, contains_key: bool):
        if serialized is not None:
            self.__value = self.type.deserialize(serialized)

        elif contains_key and self.type.nullable:  # null を明示している
            self.__value = None

        elif self.default is not None:
            self.__value = self.type.clone(self.default)

        elif not self.type.nullable:
            try:
                self.__value = self.type.default()
            except ValueNotSet as e:
                raise ValueNotSet(f"'{self.name}' value has not set", entry=self) from e


class ConfigValues(ObjectSerializable, Cloneable):
    """
    クラス変数の型ヒントとデフォルト値、直前行の # コメントから設定項目を定義する。
    """
    __init = False

    def __init__(self):
        entries = self.__find_values([*self._serializers(), *DEFAULT_SERIALIZERS])
        object.__setattr__(self, "_ConfigValues__values", entries)
        for key, entry in entries.items():
            object.__setattr__(self, key, entry)
        object.__setattr__(self, "_ConfigValues__init", True)

    @classmethod
    def _serializers(cls) -> Iterable[ObjectSerializer]:
        """
        このメソッドをオーバーライドし、カスタムクラスのシリアライザーを返す。
        """
        return []

    def get_values(self) -> dict[str, ConfigValueEntry]:
        return self.__values

    def serialize(self):
        return {k: i.serialize() for k, i in self.get_values().items()}

    @classmethod
    def deserialize(cls, value):
        obj = cls()
        errors = obj.deserialize_from(value or {})
        if errors:
            raise errors[0].error
        return obj

    def deserialize_from(self, data: dict, *, dirs: list[str] = None) -> list[ParseError]:
        dirs = dirs or []
        errors = []  # type: list[ParseError]
        if not isinstance(data, dict):
            data = {}

        for name, entry in self.get_values().items():
            key = ".".join(dirs + [name])
            try:
                if isinstance(entry.type, ConfigType):
                    if name in data and data[name] is None and entry.type.nullable:
                        entry.value = None
                        continue
                    child = entry.value
                    if child is None:
                        child = entry.value = entry.type.default()
                    errors.extend(child.deserialize_from(data.get(name) or {}, dirs=dirs + [name]))
                else:
                    entry.deserialize(data.get(name), name in data)
            except Exception as err:
                errors.append(ParseError(key, entry, err))
        return errors

    def clone(self):
        obj = type(self)()
        obj.deserialize_from(self.serialize())
        return obj

    def __getattribute__(self, item):
        obj = object.__getattribute__(self, item)
        if item.startswith("_") or not isinstance(obj, ConfigValueEntry):
            return obj
        return obj.value

    def __setattr__(self, key, value):
        if not self.__init or key.startswith("_"):
            object.__setattr__(self, key, value)
            return

        try:
            obj = object.__getattribute__(self, key)
        except AttributeError:
            raise AttributeError(f"unknown config value: {key}") from None
        if not isinstance(obj, ConfigValueEntry):
            raise AttributeError(key)
        obj.value = value

    @classmethod
    def __find_values(cls, serializers: list[ObjectSerializer]):
        def _v_check(n, v):
            return (not n.startswith("_")
                    and not inspect.isfunction(v)
                    and not inspect.isclass(v)
                    and not isinstance(v, (classmethod, staticmethod, property)))

        annotations = {k: v for k, v in inspect.get_annotations(cls).items() if not k.startswith("_")}
        defaults = {n: v for n, v in vars(cls).items() if _v_check(n, v)}
        comments = cls.__find_comments()

        names = [n for n in comments if n in annotations or n in defaults]
        names += [n for n in [*annotations, *defaults] if n not in names]

        errors = {}  # type: dict[str, Exception]
        values = {}  # type: dict[str, ConfigValueEntry]
        for name in dict.fromkeys(names):
            v_default = defaults.get(name)
            v_type = annotations.get(name) or type(v_default)
            try:
                o_type = ObjectType.from_value(v_type, serializers=serializers)
                values[name] = ConfigValueEntry(name, o_type, v_default, comments=comments.get(name))
            except Exception as e:
                errors[name] = e

        if errors:
            raise ValueError("Invalid define ConfigValues values:\n" + "\n".join(
                f"{n} : {type(e).__name__}: {e}" for n, e in errors.items()))
        return values

    @classmethod
    def __find_comments(cls):
        """
        inspect.getsource()を使い、値とその前行にある#コメントを読み取る
        """
        try:
            sources = inspect.getsource(cls)
        except (OSError, TypeError):
            return {}

        value_comments = {}  # type: dict[str, str | None]
        lines = []
        v_reg = re.compile("^([a-zA-Z0-9_]+)[ :=]")

        for line in sources.splitlines()[1:]:
            line = line.strip()
            if line.startswith("#"):
                lines.append(line[1:])
            else:
                m = v_reg.search(line)
                if m:
                    value_comments[m.group(1)] = textwrap.dedent("\n".join(lines)) if lines else None
                lines.clear()

        return value_comments


class ValueNotSet(ValueError):
    def __init__(self, *args, entry: ConfigValueEntry = None):
        ValueError.__init__(self, *args)
        self.entry = entry
