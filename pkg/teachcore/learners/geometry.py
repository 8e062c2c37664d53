"""
凸包どうしの最近点対を有理数のまま厳密に求める。

最近点対は差集合 {p_i - n_j} の最小ノルム点 (Wolfe の算法) から得る。
浮動小数点の許容誤差は使わないので、分離可能性の判定は常に正確。
"""
from fractions import Fraction
from logging import getLogger
from typing import NamedTuple, Sequence, Mapping

from teachcore.errors import DimensionMismatch, NotSeparable, EmptyClass, LearnerError
from teachcore.model.rational import Point
from .linalg import dot, sub, add, scale, combine, squared_norm, solve, nullspace_vector

__all__ = [
    "HullPair",
    "Separation",
    "min_norm_point",
    "closest_hull_pair",
    "strict_separability",
    "support_indices",
    "support_reduction",
]
log = getLogger(__name__)
ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)


class HullPair(NamedTuple):
    p: Point
    n: Point
    squared_distance: Fraction
    pos_weights: Mapping[int, Fraction]  # pos の添字 -> 凸結合係数
    neg_weights: Mapping[int, Fraction]

    @property
    def support(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return tuple(sorted(self.pos_weights)), tuple(sorted(self.neg_weights))


class Separation(NamedTuple):
    separable: bool
    w: Point | None = None
    b: Fraction | None = None


def _check_dimension(points: Sequence[Point], d: int):
    for point in points:
        if len(point) != d:
            raise DimensionMismatch(d, len(point))


def _affine_minimizer(corral: list[Point]) -> tuple[Fraction, ...]:
    # [G 1; 1^T 0] [α; μ] = [0; 1]
    size = len(corral)
    matrix = [[dot(a, b) for b in corral] + [ONE] for a in corral]
    matrix.append([ONE] * size + [ZERO])
    solution = solve(matrix, [ZERO] * size + [ONE])
    if solution is None:
        raise LearnerError("affinely dependent corral in min-norm point search")
    return solution[:size]


def min_norm_point(points: Sequence[Point], d: int) -> tuple[Point, dict[int, Fraction]]:
    """
    conv(points) の最小ノルム点と、それを作る凸結合係数 (添字 -> 係数, 係数 > 0) を返す
    """
    if not points:
        raise EmptyClass("no points")
    _check_dimension(points, d)

    norms = [squared_norm(q) for q in points]
    start = min(range(len(points)), key=lambda k: norms[k])
    corral = [start]  # type: list[int]
    weights = [ONE]  # type: list[Fraction]
    x = points[start]
    majors = 0

    while True:
        xx = squared_norm(x)
        if xx == 0:
            break
        j = min(range(len(points)), key=lambda k: dot(x, points[k]))
        if dot(x, points[j]) >= xx or j in corral:
            break
        majors += 1
        corral.append(j)
        weights.append(ZERO)

        while True:
            alpha = _affine_minimizer([points[k] for k in corral])
            if all(a > 0 for a in alpha):
                weights = list(alpha)
                break

            theta = min(lam / (lam - a) for lam, a in zip(weights, alpha) if a <= 0)
            weights = [(1 - theta) * lam + theta * a for lam, a in zip(weights, alpha)]
            keep = [i for i, lam in enumerate(weights) if lam > 0]
            corral = [corral[i] for i in keep]
            weights = [weights[i] for i in keep]

        x = combine(weights, [points[k] for k in corral], d)

    log.debug("min-norm point: %s points, %s major cycles, corral size %s", len(points), majors, len(corral))
    return x, dict(zip(corral, weights))


def _hull_pair(pos: Sequence[Point], neg: Sequence[Point], d: int) -> HullPair:
    differences = []
    pairs = []
    for i, p in enumerate(pos):
        for j, n in enumerate(neg):
            differences.append(sub(p, n))
            pairs.append((i, j))

    x, weights = min_norm_point(differences, d)

    pos_weights = {}  # type: dict[int, Fraction]
    neg_weights = {}  # type: dict[int, Fraction]
    for k, lam in weights.items():
        i, j = pairs[k]
        pos_weights[i] = pos_weights.get(i, ZERO) + lam
        neg_weights[j] = neg_weights.get(j, ZERO) + lam

    p = combine(pos_weights.values(), [pos[i] for i in pos_weights], d)
    n = combine(neg_weights.values(), [neg[j] for j in neg_weights], d)
    return HullPair(p, n, squared_norm(x), dict(sorted(pos_weights.items())), dict(sorted(neg_weights.items())))


def closest_hull_pair(pos: Sequence[Point], neg: Sequence[Point], d: int) -> HullPair:
    if not pos or not neg:
        raise EmptyClass("both classes must be non-empty")
    _check_dimension(pos, d)
    _check_dimension(neg, d)
    if d == 0:
        raise NotSeparable("0-dimensional points always coincide")

    pair = _hull_pair(pos, neg, d)
    if pair.squared_distance == 0:
        raise NotSeparable("convex hulls intersect")
    return pair


def strict_separability(pos: Sequence[Point], neg: Sequence[Point], d: int) -> Separation:
    """
    w·x + b > 0 (pos), < 0 (neg) となる (w, b) があるか判定する。
    片方が空なら w = 0 の定数超平面を証拠として返す。
    """
    _check_dimension(pos, d)
    _check_dimension(neg, d)
    if not neg:
        return Separation(True, (ZERO,) * d, ONE)
    if not pos:
        return Separation(True, (ZERO,) * d, -ONE)
    if d == 0:
        return Separation(False)

    pair = _hull_pair(pos, neg, d)
    if pair.squared_distance == 0:
        return Separation(False)
    w = sub(pair.p, pair.n)
    return Separation(True, w, -dot(w, scale(HALF, add(pair.p, pair.n))))


def support_indices(pos: Sequence[Point], neg: Sequence[Point], d: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """
    最近点対の凸結合係数を Carathéodory の要領で削り、
    同じ最大マージン超平面を与える d+1 個以下の点の添字を返す。
    """
    if d < 1:
        raise NotSeparable("0-dimensional points always coincide")
    pair = closest_hull_pair(pos, neg, d)

    # pos 列は (P_i, 1, 0)、neg 列は (-N_j, 0, 1)。どちらも係数は凸結合係数
    keys = [(1, i) for i in pair.pos_weights] + [(0, j) for j in pair.neg_weights]
    columns = {
        (1, i): tuple(pos[i]) + (ONE, ZERO) for i in pair.pos_weights
    }  # type: dict[tuple[int, int], tuple[Fraction, ...]]
    columns.update({(0, j): tuple(-v for v in neg[j]) + (ZERO, ONE) for j in pair.neg_weights})
    coefficients = {(1, i): c for i, c in pair.pos_weights.items()}
    coefficients.update({(0, j): c for j, c in pair.neg_weights.items()})

    while True:
        beta = nullspace_vector([columns[k] for k in keys])
        if beta is None:
            break
        if not any(b > 0 for b in beta):
            beta = tuple(-b for b in beta)
        t = min(coefficients[k] / b for k, b in zip(keys, beta) if b > 0)
        for k, b in zip(keys, beta):
            coefficients[k] -= t * b
        keys = [k for k in keys if coefficients[k] > 0]

    pos_support = tuple(sorted(i for label, i in keys if label == 1))
    neg_support = tuple(sorted(j for label, j in keys if label == 0))
    log.debug("support reduction: %s+%s -> %s+%s points",
              len(pair.pos_weights), len(pair.neg_weights), len(pos_support), len(neg_support))
    return pos_support, neg_support


def support_reduction(pos: Sequence[Point], neg: Sequence[Point], d: int) -> tuple[tuple[Point, int], ...]:
    pos_support, neg_support = support_indices(pos, neg, d)
    return tuple((pos[i], 1) for i in pos_support) + tuple((neg[j], 0) for j in neg_support)
