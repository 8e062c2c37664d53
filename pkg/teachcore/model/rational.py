import re
from fractions import Fraction
from typing import Any

from teachcore.errors import InvalidRational

__all__ = ["Rational", "Point", "to_rational", "format_rational", "format_point"]

Rational = Fraction
Point = tuple[Fraction, ...]
RATIONAL_PATTERN = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def to_rational(value: Any) -> Fraction:
    """
    "p/q" 形式の文字列か整数を既約分数にする。
    浮動小数点数は誤差を含むため受け付けない。
    """
    if isinstance(value, bool):
        raise InvalidRational(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        m = RATIONAL_PATTERN.match(value)
        if m:
            denominator = int(m.group(2)) if m.group(2) is not None else 1
            if denominator != 0:
                return Fraction(int(m.group(1)), denominator)
    raise InvalidRational(value)


def format_rational(value: Fraction) -> str:
    return str(value)


def format_point(point: Point) -> str:
    return "(" + ", ".join(map(str, point)) + ")"
