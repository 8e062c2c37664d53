import random
from fractions import Fraction
from logging import getLogger
from typing import NamedTuple, Iterable, Sequence

from teachcore.costs import SearchBudget, is_sufficient
from teachcore.errors import ConstructionFailed
from teachcore.learners import Learner
from teachcore.model import Instance
from .generators import (
    GeneratorParams, LabelMode, LatticeKind, generate_random_instance, generate_concept_spec_tightness,
    generate_invalidation_tightness, generate_1nn_explosion,
)
from .properties import check_property
from .report import PropertyId, VerificationReport

__all__ = ["SuiteSettings", "Suites", "build_suites", "run_verification"]
log = getLogger(__name__)


class SuiteSettings(NamedTuple):
    trials: int = 200
    protocol_trials: int = 50
    max_dimension: int = 3
    max_pool_size: int = 12
    protocol_max_pool_size: int = 10
    protocol_max_depth: int = 3
    explosion_sizes: Sequence[int] = (2, 3, 4, 5)
    tightness_dimensions: Sequence[int] = (1, 2, 3)
    definitional_pool_limit: int = 8
    low: Fraction = Fraction(-4)
    high: Fraction = Fraction(4)
    denominator: int = 4

    @classmethod
    def from_config(cls, verify, generator, **overrides):
        values = {name: getattr(verify, name) for name in cls._fields if hasattr(verify, name)}
        values.update(low=generator.low, high=generator.high, denominator=generator.denominator)
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


class Suites(NamedTuple):
    separable: list[Instance]
    insufficient: list[Instance]
    protocol: list[Instance]
    explosion: list[Instance]
    concept_tight: list[Instance]
    invalidation_tight: list[Instance]


def _params(settings: SuiteSettings, rng: random.Random, *, max_dimension: int, max_pool_size: int,
            mode: LabelMode, lattice: LatticeKind = None) -> GeneratorParams:
    return GeneratorParams(
        dimension=rng.randint(1, max_dimension),
        pool_size=rng.randint(2, max_pool_size),
        seed=rng.randrange(2 ** 32),
        low=settings.low, high=settings.high, denominator=settings.denominator,
        mode=mode,
        lattice=lattice or rng.choice([LatticeKind.CHAIN, LatticeKind.POWERSET]),
        both_labels=True,
    )


def _separable(settings: SuiteSettings, seed: int) -> list[Instance]:
    rng = random.Random(f"{seed}:separable")
    return [generate_random_instance(_params(settings, rng, max_dimension=settings.max_dimension,
                                             max_pool_size=settings.max_pool_size, mode=LabelMode.SEPARABLE))
            for _ in range(settings.trials)]


def _insufficient(settings: SuiteSettings, seed: int) -> list[Instance]:
    rng = random.Random(f"{seed}:insufficient")
    instances = []
    for _ in range(settings.trials * 50):
        if len(instances) >= settings.trials:
            return instances
        inst = generate_random_instance(_params(settings, rng, max_dimension=settings.max_dimension,
                                                max_pool_size=settings.max_pool_size, mode=LabelMode.GENERAL))
        # 全特徴量でも分離できない問題だけを使う
        if not is_sufficient(inst, inst.feature_ids, Learner.LINEAR):
            instances.append(inst)
    if len(instances) < settings.trials:
        raise ConstructionFailed(f"only {len(instances)} insufficient instances drawn (wanted {settings.trials})")
    return instances


def _protocol(settings: SuiteSettings, seed: int) -> list[Instance]:
    rng = random.Random(f"{seed}:protocol")
    instances = []
    for index in range(settings.protocol_trials):
        mode = LabelMode.SEPARABLE if index % 2 == 0 else LabelMode.GENERAL
        instances.append(generate_random_instance(_params(
            settings, rng, max_dimension=settings.protocol_max_depth,
            max_pool_size=settings.protocol_max_pool_size, mode=mode, lattice=LatticeKind.CHAIN)))
    return instances


def build_suites(settings: SuiteSettings, seed: int, props: Iterable[PropertyId]) -> Suites:
    props = set(props)
    needs = {pool for prop in props for pool in _POOLS[prop]}
    log.info("Generating instances (seed %s): %s", seed, ", ".join(sorted(needs)) or "none")
    return Suites(
        separable=_separable(settings, seed) if "separable" in needs else [],
        insufficient=_insufficient(settings, seed) if "insufficient" in needs else [],
        protocol=_protocol(settings, seed) if "protocol" in needs else [],
        explosion=[generate_1nn_explosion(k) for k in settings.explosion_sizes] if "explosion" in needs else [],
        concept_tight=[generate_concept_spec_tightness(d) for d in settings.tightness_dimensions if d >= 2]
        if PropertyId.P7 in props else [],
        invalidation_tight=[generate_invalidation_tightness(d) for d in settings.tightness_dimensions]
        if PropertyId.P9 in props else [],
    )


_POOLS = {
    PropertyId.P1: ("separable", "insufficient"),
    PropertyId.P2: ("separable", "insufficient"),
    PropertyId.P3: ("separable", "insufficient"),
    PropertyId.P4: ("protocol",),
    PropertyId.P5: ("protocol",),
    PropertyId.P6: ("explosion",),
    PropertyId.P7: ("separable",),
    PropertyId.P8: ("separable", "insufficient"),
    PropertyId.P9: ("insufficient",),
    PropertyId.L1: ("separable", "insufficient"),
}


def run_verification(props: Iterable[PropertyId], seed: int, settings: SuiteSettings = SuiteSettings(), *,
                     budget: SearchBudget = None, instances: Sequence[Instance] = ()) -> VerificationReport:
    """
    指定された性質を、生成した問題と与えられた問題の両方で調べる
    """
    props = sorted(set(props), key=lambda p: list(PropertyId).index(p))
    suites = build_suites(settings, seed, props)
    report = VerificationReport(seed=seed)

    for prop in props:
        pool = [inst for name in _POOLS[prop] for inst in getattr(suites, name)]
        if prop is not PropertyId.P6:
            pool.extend(instances)
        tight = suites.concept_tight if prop is PropertyId.P7 else \
            suites.invalidation_tight if prop is PropertyId.P9 else []
        log.info("Checking %s on %s instances", prop.value, len(pool) + len(tight))
        report.reports.append(check_property(
            prop, pool, budget, tight=tight, definitional_pool_limit=settings.definitional_pool_limit))

    return report
