import math
import random
from enum import Enum
from fractions import Fraction
from logging import getLogger
from typing import NamedTuple

from teachcore.costs import Cost, min_concept_teaching_set, min_invalidation_set, is_sufficient, set_size
from teachcore.errors import InvalidParams, ConstructionFailed
from teachcore.learners import Learner, dot
from teachcore.model import Instance, FeatureLattice, validate_instance, format_rational

__all__ = [
    "GeneratorKind",
    "LabelMode",
    "LatticeKind",
    "GeneratorParams",
    "Certificate",
    "MAX_DENOMINATOR",
    "object_ids",
    "feature_ids",
    "generate_random_instance",
    "generate_concept_spec_tightness",
    "generate_invalidation_tightness",
    "generate_1nn_explosion",
    "generate_instance",
    "certify_random",
    "certify_concept_tightness",
    "certify_invalidation_tightness",
    "certify_1nn_explosion",
    "certify",
]
log = getLogger(__name__)
MAX_DENOMINATOR = 64
MAX_ATTEMPTS = 1000


class GeneratorKind(Enum):
    RANDOM = "random"
    CONCEPT_TIGHTNESS = "concept-tightness"
    INVALIDATION_TIGHTNESS = "invalidation-tightness"
    EXPLOSION = "1nn-explosion"


class LabelMode(Enum):
    SEPARABLE = "separable"
    GENERAL = "general"


class LatticeKind(Enum):
    CHAIN = "chain"
    POWERSET = "powerset"


class GeneratorParams(NamedTuple):
    kind: GeneratorKind = GeneratorKind.RANDOM
    dimension: int = 1
    pool_size: int = 4
    seed: int = 0
    low: Fraction = Fraction(-4)
    high: Fraction = Fraction(4)
    denominator: int = 4
    mode: LabelMode = LabelMode.GENERAL
    lattice: LatticeKind = LatticeKind.CHAIN
    both_labels: bool = False
    k: int = 2  # 1nn-explosion の対の数

    def check(self):
        if self.dimension < 0:
            raise InvalidParams(f"dimension must be >= 0 (got {self.dimension})")
        if self.pool_size < 1:
            raise InvalidParams(f"pool size must be >= 1 (got {self.pool_size})")
        if not 1 <= self.denominator <= MAX_DENOMINATOR:
            raise InvalidParams(f"denominator must be in 1..{MAX_DENOMINATOR} (got {self.denominator})")
        if self.low > self.high:
            raise InvalidParams(f"empty coordinate range [{self.low}, {self.high}]")
        if math.ceil(self.low * self.denominator) > math.floor(self.high * self.denominator):
            raise InvalidParams(f"no grid point in [{self.low}, {self.high}] with step 1/{self.denominator}")
        if self.kind is GeneratorKind.RANDOM:
            if self.mode is LabelMode.SEPARABLE and (self.dimension < 1 or self.pool_size < 2):
                raise InvalidParams("separable mode needs dimension >= 1 and at least 2 objects")
            if self.both_labels and self.pool_size < 2:
                raise InvalidParams("both labels need at least 2 objects")
        return self


class Certificate(NamedTuple):
    kind: GeneratorKind
    summary: str
    values: dict[str, int | str]


def _ids(prefix: str, count: int) -> list[str]:
    width = len(str(count)) if count >= 10 else 1
    return [f"{prefix}{i:0{width}d}" for i in range(1, count + 1)]


def object_ids(count: int) -> list[str]:
    return _ids("x", count)


def feature_ids(count: int) -> list[str]:
    return _ids("f", count)


def _build(objects: list[str], labels: list[int], columns: list[list[Fraction]],
           lattice: FeatureLattice) -> Instance:
    features = feature_ids(len(columns))
    document = dict(
        objects=[dict(id=x, label=y) for x, y in zip(objects, labels)],
        features=[dict(id=f, values={x: format_rational(v) for x, v in zip(objects, column)})
                  for f, column in zip(features, columns)],
        lattice=lattice.to_document(),
    )
    # 生成物も通常の入力と同じ検証を通す
    return validate_instance(document)


def _lattice(kind: LatticeKind, features: list[str]) -> FeatureLattice:
    if kind is LatticeKind.POWERSET:
        return FeatureLattice.powerset(features)
    return FeatureLattice.chain(features)


def _cost_text(cost: Cost):
    return str(cost)


# random

def _draw_points(rng: random.Random, params: GeneratorParams) -> list[tuple[Fraction, ...]]:
    q = params.denominator
    low, high = math.ceil(params.low * q), math.floor(params.high * q)
    return [tuple(Fraction(rng.randint(low, high), q) for _ in range(params.dimension))
            for _ in range(params.pool_size)]


def _separable_labels(rng: random.Random, points) -> list[int] | None:
    d = len(points[0])
    w = tuple(Fraction(rng.randint(-3, 3)) for _ in range(d))
    if not any(w):
        return None
    scores = [dot(w, p) for p in points]
    distinct = sorted(set(scores))
    if len(distinct) < 2:
        return None
    index = rng.randrange(len(distinct) - 1)
    threshold = (distinct[index] + distinct[index + 1]) / 2
    return [1 if s > threshold else 0 for s in scores]


def generate_random_instance(params: GeneratorParams) -> Instance:
    """
    格子 (刻み 1/denominator) 上の乱数座標を持つ n 対象 d 特徴量の問題を作る。
    同じ params なら常に同じ問題になる。
    """
    params = params._replace(kind=GeneratorKind.RANDOM).check()
    rng = random.Random(params.seed)
    objects = object_ids(params.pool_size)

    for _ in range(MAX_ATTEMPTS):
        points = _draw_points(rng, params)
        if params.mode is LabelMode.SEPARABLE:
            labels = _separable_labels(rng, points)
            if labels is None:
                continue
        else:
            labels = [rng.randint(0, 1) for _ in objects]
            if params.both_labels and len(set(labels)) < 2:
                continue
        break
    else:
        raise ConstructionFailed(f"no valid labeling after {MAX_ATTEMPTS} draws (params: {params})")

    columns = [[p[i] for p in points] for i in range(params.dimension)]
    lattice = _lattice(params.lattice, feature_ids(params.dimension))
    inst = _build(objects, labels, columns, lattice)
    log.debug("Generated random instance (d=%s, n=%s, seed=%s, mode=%s)",
              params.dimension, params.pool_size, params.seed, params.mode.value)
    return inst


def certify_random(inst: Instance, params: GeneratorParams) -> Certificate:
    full = frozenset(inst.feature_ids)
    positives = sum(inst.target.values())
    values = dict(positives=positives, negatives=len(inst.objects) - positives)
    if params.mode is LabelMode.SEPARABLE:
        if not is_sufficient(inst, full, Learner.LINEAR):
            raise ConstructionFailed("separable-mode labels are not linearly separable")
        values["lin_sufficient"] = "yes"
    summary = f"{positives} positive / {values['negatives']} negative"
    if params.mode is LabelMode.SEPARABLE:
        summary += ", linearly separable with all features"
    return Certificate(GeneratorKind.RANDOM, summary, values)


# concept specification tightness

def generate_concept_spec_tightness(d: int) -> Instance:
    """
    原点の負例 1 個と 2e_i の正例 d 個。全特徴量の最小概念教示集合は d+1 個全部になる
    """
    if d < 2:
        raise InvalidParams(f"concept tightness needs d >= 2 (got {d}); d = 1 is attained by a threshold instance")
    objects = object_ids(d + 1)
    labels = [0] + [1] * d
    columns = [[Fraction(0)] + [Fraction(2 if j == i else 0) for j in range(d)] for i in range(d)]
    inst = _build(objects, labels, columns, FeatureLattice.chain(feature_ids(d)))
    certify_concept_tightness(inst)
    return inst


def certify_concept_tightness(inst: Instance) -> Certificate:
    d = len(inst.feature_ids)
    cost = set_size(min_concept_teaching_set(inst, inst.feature_ids, Learner.LINEAR))
    if cost != d + 1:
        raise ConstructionFailed(f"linear concept specification cost is {_cost_text(cost)}, expected {d + 1}")
    return Certificate(GeneratorKind.CONCEPT_TIGHTNESS, f"concept specification cost {cost}",
                       dict(dimension=d, concept_spec=cost))


# invalidation tightness

def generate_invalidation_tightness(d: int) -> Instance:
    """
    モーメント曲線 (t, t^2, ..., t^d), t = 1..d+2 上の d+2 点にラベル 0,1,0,... を交互に振る。
    真部分集合はどれも分離でき、全体は分離できない
    """
    if d < 0:
        raise InvalidParams(f"dimension must be >= 0 (got {d})")
    objects = object_ids(d + 2)
    labels = [i % 2 for i in range(d + 2)]
    columns = [[Fraction(t) ** power for t in range(1, d + 3)] for power in range(1, d + 1)]
    inst = _build(objects, labels, columns, FeatureLattice.chain(feature_ids(d)))
    certify_invalidation_tightness(inst)
    return inst


def certify_invalidation_tightness(inst: Instance) -> Certificate:
    d = len(inst.feature_ids)
    cost = set_size(min_invalidation_set(inst, inst.feature_ids, Learner.LINEAR))
    if cost != d + 2:
        raise ConstructionFailed(f"linear invalidation cost is {_cost_text(cost)}, expected {d + 2}")
    return Certificate(GeneratorKind.INVALIDATION_TIGHTNESS, f"invalidation cost {cost}",
                       dict(dimension=d, invalidation=cost))


# 1NN explosion

def generate_1nn_explosion(k: int) -> Instance:
    """
    a_i = (0, 2i) をラベル 0、b_i = (1, 2i+1) をラベル 1 とする k 対。
    {f1} では 2 個で教えられるが、{f1,f2} では 2k 個全部が要る
    """
    if k < 2:
        raise InvalidParams(f"explosion family needs k >= 2 (got {k})")
    objects = object_ids(2 * k)
    labels = [0, 1] * k
    f1 = [Fraction(i % 2) for i in range(2 * k)]
    f2 = [Fraction(2 * (i // 2 + 1) + i % 2) for i in range(2 * k)]
    lattice = FeatureLattice.chain(feature_ids(2))
    inst = _build(objects, labels, [f1, f2], lattice)
    certify_1nn_explosion(inst)
    return inst


def certify_1nn_explosion(inst: Instance) -> Certificate:
    k = len(inst.objects) // 2
    features = sorted(inst.feature_ids)
    small = set_size(min_concept_teaching_set(inst, features[:1], Learner.ONE_NN))
    large = set_size(min_concept_teaching_set(inst, features[:2], Learner.ONE_NN))
    if small != 2 or large != 2 * k:
        raise ConstructionFailed(
            f"1NN concept specification costs are {_cost_text(small)} vs {_cost_text(large)}, expected 2 vs {2 * k}")
    return Certificate(GeneratorKind.EXPLOSION, f"costs {small} vs {large}",
                       dict(k=k, concept_spec_small=small, concept_spec_large=large))


def generate_instance(params: GeneratorParams) -> Instance:
    if params.kind is GeneratorKind.RANDOM:
        return generate_random_instance(params)
    elif params.kind is GeneratorKind.CONCEPT_TIGHTNESS:
        return generate_concept_spec_tightness(params.dimension)
    elif params.kind is GeneratorKind.INVALIDATION_TIGHTNESS:
        return generate_invalidation_tightness(params.dimension)
    return generate_1nn_explosion(params.k)


def certify(inst: Instance, params: GeneratorParams) -> Certificate:
    """生成物の証明書を一から計算し直す"""
    if params.kind is GeneratorKind.RANDOM:
        return certify_random(inst, params)
    elif params.kind is GeneratorKind.CONCEPT_TIGHTNESS:
        return certify_concept_tightness(inst)
    elif params.kind is GeneratorKind.INVALIDATION_TIGHTNESS:
        return certify_invalidation_tightness(inst)
    return certify_1nn_explosion(inst)
