from fractions import Fraction
from typing import Sequence, Iterable

from teachcore.errors import DimensionMismatch
from teachcore.model.rational import Point, format_point, format_rational
from .linalg import dot, sub, squared_norm

__all__ = ["Classifier", "ConstantClassifier", "OneNNClassifier", "LinearClassifier"]


class Classifier(object):
    """
    学習器の出力。どの分類器も不変で、予測は入力点だけで決まる。
    """
    dimension = None  # type: int | None

    def _check(self, point: Point):
        if self.dimension is not None and len(point) != self.dimension:
            raise DimensionMismatch(self.dimension, len(point))

    def predict(self, point: Point) -> int:
        raise NotImplementedError

    def to_document(self) -> dict:
        raise NotImplementedError


class ConstantClassifier(Classifier):
    def __init__(self, label: int, dimension: int = None):
        self.label = label
        self.dimension = dimension

    def predict(self, point: Point) -> int:
        self._check(point)
        return self.label

    def to_document(self):
        return dict(kind="constant", label=self.label)

    def __eq__(self, other):
        return isinstance(other, ConstantClassifier) and self.label == other.label

    def __hash__(self):
        return hash(("constant", self.label))

    def __repr__(self):
        return f"<ConstantClassifier label={self.label}>"


class OneNNClassifier(Classifier):
    def __init__(self, dimension: int, data: Iterable[tuple[Point, int]]):
        self.dimension = dimension
        self.data = tuple(data)  # type: tuple[tuple[Point, int], ...]
        for point, _ in self.data:
            self._check(point)

    def predict(self, point: Point) -> int:
        self._check(point)
        best = None  # type: Fraction | None
        labels = set()
        for stored, label in self.data:
            distance = squared_norm(sub(point, stored))
            if best is None or distance < best:
                best = distance
                labels = {label}
            elif distance == best:
                labels.add(label)
        return min(labels)

    def to_document(self):
        return dict(kind="1nn", dimension=self.dimension,
                    data=[[format_point(p), y] for p, y in self.data])

    def __eq__(self, other):
        return (isinstance(other, OneNNClassifier) and self.dimension == other.dimension
                and sorted(self.data) == sorted(other.data))

    def __hash__(self):
        return hash(("1nn", self.dimension, tuple(sorted(self.data))))

    def __repr__(self):
        return f"<OneNNClassifier dimension={self.dimension} points={len(self.data)}>"


class LinearClassifier(Classifier):
    def __init__(self, w: Sequence[Fraction], b: Fraction):
        self.w = tuple(w)  # type: Point
        self.b = Fraction(b)
        self.dimension = len(self.w)

    def score(self, point: Point) -> Fraction:
        self._check(point)
        return dot(self.w, point) + self.b

    def predict(self, point: Point) -> int:
        return 1 if self.score(point) > 0 else 0

    def same_hyperplane(self, other: "LinearClassifier") -> bool:
        """(w, b) が正の定数倍で一致するか"""
        if not isinstance(other, LinearClassifier) or self.dimension != other.dimension:
            return False
        mine = self.w + (self.b,)
        theirs = other.w + (other.b,)
        ratio = None  # type: Fraction | None
        for a, c in zip(mine, theirs):
            if (a == 0) != (c == 0):
                return False
            if a == 0:
                continue
            if ratio is None:
                ratio = c / a
                if ratio <= 0:
                    return False
            elif c / a != ratio:
                return False
        return True

    def margin(self, points: Iterable[Point]) -> Fraction:
        """点集合から超平面までの最小距離の二乗"""
        norm = squared_norm(self.w)
        if norm == 0:
            raise ValueError("degenerate hyperplane (w = 0)")
        return min(self.score(p) ** 2 for p in points) / norm

    def to_document(self):
        return dict(kind="linear", w=[format_rational(v) for v in self.w], b=format_rational(self.b))

    def __eq__(self, other):
        return isinstance(other, LinearClassifier) and self.w == other.w and self.b == other.b

    def __hash__(self):
        return hash(("linear", self.w, self.b))

    def __repr__(self):
        return f"<LinearClassifier w={format_point(self.w)} b={self.b}>"
