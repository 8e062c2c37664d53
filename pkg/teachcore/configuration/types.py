import types
from fractions import Fraction
from typing import Generic, TypeVar, get_origin, get_args, Any

from teachcore.util import typename
from .abc import ObjectSerializer, Cloneable

VT = TypeVar("VT")
T = TypeVar("T")
__all__ = ["ObjectType", "SimpleType", "ListType", "ConfigType", "SerializerWrap", "RationalSerializer"]


class ObjectType(Generic[VT]):
    def __init__(self, v_type: type[VT], nullable=False):
        self.type = v_type
        self.nullable = nullable

    def equals_type(self, obj: VT) -> bool:
        return isinstance(obj, self.type)

    def typename(self) -> str:
        return typename(self.type)

    def __repr__(self):
        return "<{} vType={}>".format(type(self).__name__, self.typename())

    def serialize(self, obj: VT | None):
        raise NotImplementedError

    def deserialize(self, serialized: Any | None) -> VT | None:
        raise NotImplementedError

    def clone(self, obj):
        raise NotImplementedError

    def default(self):
        from .configuration import ValueNotSet
        raise ValueNotSet("value not set")

    @staticmethod
    def from_value(v_type: type, nullable=False, *, serializers: list[ObjectSerializer]) -> "ObjectType":
        from .configuration import ConfigValues
        if v_type in (bool, str, int, float):
            return SimpleType(v_type, nullable)
        elif isinstance(v_type, types.UnionType):
            a_types = list(get_args(v_type))
            if len(a_types) != 2 or type(None) not in a_types:
                raise ValueError(f"unsupported Union: {v_type}")
            a_types.remove(type(None))
            return ObjectType.from_value(a_types[0], nullable=True, serializers=serializers)
        elif get_origin(v_type) is list:
            return ListType(get_args(v_type)[0], nullable, serializers=serializers)
        elif isinstance(v_type, type) and issubclass(v_type, ConfigValues):
            return ConfigType(v_type, nullable)
        else:
            for serializer in serializers:
                if isinstance(v_type, type) and serializer.check(v_type):
                    return SerializerWrap(serializer, nullable)
            raise ValueError(f"unsupported type: {typename(v_type)}")


class SimpleType(ObjectType[VT]):
    def serialize(self, obj: VT):
        return obj

    def deserialize(self, serialized) -> VT | None:
        if serialized is None:
            return None
        if self.type is not bool and isinstance(serialized, bool):
            raise TypeError(f"{self.typename()} required (got {serialized!r})")
        return self.type(serialized)

    def clone(self, obj):
        return obj


class ListType(ObjectType[list[T]]):
    def __init__(self, arg_type: type[T], nullable: bool, *, serializers: list[ObjectSerializer]):
        ObjectType.__init__(self, list, nullable)
        self.arg_type = ObjectType.from_value(arg_type, serializers=serializers)

    def serialize(self, obj: list[T] | None):
        if obj is None:
            return []
        values = []
        for item in obj:
            if not self.arg_type.equals_type(item):
                raise ValueError(f"invalid data exists in list: {item!r}")
            values.append(self.arg_type.serialize(item))
        return values

    def deserialize(self, serialized: list | None) -> list[T]:
        if serialized is None:
            return []
        if not isinstance(serialized, list):
            raise TypeError(f"list required (got {serialized!r})")
        return [self.arg_type.deserialize(i) for i in serialized]

    def clone(self, obj):
        return [self.arg_type.clone(i) for i in obj]

    def default(self):
        return []


class ConfigType(ObjectType):
    def serialize(self, obj):
        return None if obj is None else obj.serialize()

    def deserialize(self, serialized):
        return self.type.deserialize(serialized)

    def clone(self, obj):
        return obj.clone() if isinstance(obj, Cloneable) else obj

    def default(self):
        return self.type()  # create ConfigValues


class SerializerWrap(ObjectType):
    def __init__(self, serializer: ObjectSerializer, nullable=False):
        ObjectType.__init__(self, type(serializer), nullable)
        self.serializer = serializer

    def equals_type(self, obj) -> bool:
        return obj is not None and self.serializer.check(type(obj))

    def typename(self) -> str:
        return type(self.serializer).__name__

    def serialize(self, obj):
        return None if obj is None else self.serializer.serialize(obj)

    def deserialize(self, serialized):
        return None if serialized is None else self.serializer.deserialize(serialized)

    def clone(self, obj):
        return obj


# noinspection PyMethodMayBeStatic
class RationalSerializer(ObjectSerializer):
    def check(self, clazz):
        return issubclass(clazz, Fraction)

    def serialize(self, obj: Fraction):
        return str(obj) if obj.denominator != 1 else obj.numerator

    def deserialize(self, value):
        from teachcore.model.rational import to_rational
        return to_rational(value)
