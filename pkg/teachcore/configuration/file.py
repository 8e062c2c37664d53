import io
import json
from pathlib import Path
from typing import Any

import ruamel.yaml
from ruamel.yaml.comments import CommentedMap

from .abc import ObjectSerializable
from .configuration import ConfigValues, ParseError
from .types import ConfigType

__all__ = ["FileDriver", "JsonFileDriver", "YamlFileDriver", "driver_for", "read_document", "write_document"]


def _yaml():
    yaml = ruamel.yaml.YAML()
    yaml.indent(mapping=2, sequence=4, offset=2)
    return yaml


class FileDriver:
    def __init__(self, path: Path):
        self.path = Path(path)

    def load(self):
        raise NotImplementedError

    def dumps(self, obj: Any) -> str:
        raise NotImplementedError

    def save(self, obj: Any | ObjectSerializable):
        if isinstance(obj, ObjectSerializable):
            obj = obj.serialize()

        raw = self.dumps(obj)
        parent = Path(self.path.parent)
        if not parent.exists():
            parent.mkdir(parents=True, exist_ok=True)

        with self.path.open("w", encoding="utf-8") as file:
            file.write(raw)


class JsonFileDriver(FileDriver):
    def load(self):
        with self.path.open("r", encoding="utf-8") as file:
            return json.load(file)

    def dumps(self, obj: Any) -> str:
        return json.dumps(obj, ensure_ascii=False, indent=2, sort_keys=True) + "\n"


class YamlFileDriver(FileDriver):
    """
    JSON も YAML として読み込める。
    """
    __data = None  # type: CommentedMap | None

    def load(self):
        with self.path.open("r", encoding="utf-8") as file:
            self.__data = _yaml().load(file)
        return self.__data

    def dumps(self, obj: Any) -> str:
        with io.StringIO() as temp:
            _yaml().dump(obj, temp)
            return temp.getvalue()

    def load_to(self, config: ConfigValues) -> list[ParseError]:
        data = self.load() if self.path.is_file() else None
        return config.deserialize_from(data or {})

    def save_from(self, config: ConfigValues) -> list[ParseError]:
        errors = []  # type: list[ParseError]
        self.save(self.__serialize_config(self.__data, config, dirs=[], errors=errors))
        return errors

    @classmethod
    def __serialize_config(cls, data: CommentedMap | None, config: ConfigValues, *, dirs, errors):
        write_comments = False
        if not data:
            write_comments = True
            data = CommentedMap()

        for count, (name, entry) in enumerate(config.get_values().items()):
            try:
                if isinstance(entry.type, ConfigType) and entry.value is not None:
                    value = cls.__serialize_config(data.get(name), entry.value, dirs=dirs + [name], errors=errors)
                else:
                    value = entry.serialize()

                data[name] = value
                if write_comments and entry.comments:
                    sp_line = "\n" if count else ""
                    data.yaml_set_comment_before_after_key(name, before=sp_line + entry.comments, indent=len(dirs) * 2)

            except Exception as err:
                errors.append(ParseError(".".join(dirs + [name]), entry, err))

        return data


def driver_for(path: Path) -> FileDriver:
    path = Path(path)
    return JsonFileDriver(path) if path.suffix.lower() == ".json" else YamlFileDriver(path)


def read_document(path: Path):
    """拡張子に関係なく YAML として読む (JSON を含む)"""
    return YamlFileDriver(path).load()


def write_document(path: Path, data: Any):
    driver_for(path).save(data)
