from logging import getLogger
from pathlib import Path
from typing import Any

from pydantic import BaseModel, Field, ValidationError

from teachcore.configuration.file import read_document, write_document
from teachcore.errors import (
    InvalidDocument, InvalidLabel, MissingFeatureValue, DuplicateObjectId, UnknownObject,
)
from .instance import Instance
from .lattice import FeatureLattice
from .rational import to_rational, format_rational

__all__ = [
    "ObjectEntry",
    "FeatureEntry",
    "InstanceDocument",
    "validate_instance",
    "instance_document",
    "load_instance",
    "dump_instance",
]
log = getLogger(__name__)


class ObjectEntry(BaseModel):
    id: str = Field(description="対象ID")
    label: Any = Field(description="目標ラベル 0 または 1")


class FeatureEntry(BaseModel):
    id: str = Field(description="特徴量ID")
    values: dict[str, Any] = Field(description="対象ID -> 有理数文字列 'p/q' または整数")


class InstanceDocument(BaseModel):
    objects: list[ObjectEntry]
    features: list[FeatureEntry] = Field(default_factory=list)
    lattice: list[list[str]] = Field(description="特徴量束 ([] を含むこと)")


def validate_instance(raw: Any) -> Instance:
    """
    デコード済みの文書を検証して Instance を作る。
    """
    try:
        doc = raw if isinstance(raw, InstanceDocument) else InstanceDocument.model_validate(raw)
    except ValidationError as e:
        raise InvalidDocument(f"malformed instance document: {e.error_count()} error(s)\n{e}") from e

    objects = []  # type: list[str]
    target = {}  # type: dict[str, int]
    for entry in doc.objects:
        if entry.id in target:
            raise DuplicateObjectId(entry.id)
        if isinstance(entry.label, bool) or entry.label not in (0, 1) or isinstance(entry.label, float):
            raise InvalidLabel(entry.id, entry.label)
        objects.append(entry.id)
        target[entry.id] = int(entry.label)

    features = {}
    for entry in doc.features:
        if entry.id in features:
            raise InvalidDocument(f"duplicate feature id: {entry.id!r}")
        for object_id in entry.values:
            if object_id not in target:
                raise UnknownObject(object_id)
        values = {}
        for object_id in objects:
            if object_id not in entry.values:
                raise MissingFeatureValue(entry.id, object_id)
            values[object_id] = to_rational(entry.values[object_id])
        features[entry.id] = values

    lattice = FeatureLattice(doc.lattice)
    lattice.check(features)

    inst = Instance(objects, target, features, lattice)
    log.debug("Validated instance: %s objects, %s features, %s lattice sets",
              len(objects), len(features), len(lattice))
    return inst


def instance_document(inst: Instance) -> InstanceDocument:
    return InstanceDocument(
        objects=[ObjectEntry(id=x, label=inst.target[x]) for x in inst.objects],
        features=[FeatureEntry(id=f, values={x: format_rational(values[x]) for x in inst.objects})
                  for f, values in inst.features.items()],
        lattice=inst.lattice.to_document(),
    )


def load_instance(path: Path) -> Instance:
    try:
        raw = read_document(Path(path))
    except OSError as e:
        raise InvalidDocument(f"cannot read instance file {path}: {e}") from e
    except Exception as e:  # ruamel のパースエラー
        raise InvalidDocument(f"cannot parse instance file {path}: {e}") from e
    return validate_instance(raw)


def dump_instance(inst: Instance, path: Path):
    write_document(Path(path), instance_document(inst).model_dump(mode="json"))
