from enum import Enum
from typing import NamedTuple, Union

from teachcore.errors import InvalidParams

__all__ = ["Infinite", "INFINITE", "Cost", "CostVector", "SearchBudget", "DEFAULT_BUDGET", "cost_value"]


class Infinite(Enum):
    INFINITE = "inf"

    def __str__(self):
        return self.value

    def __repr__(self):
        return "INFINITE"


INFINITE = Infinite.INFINITE
Cost = Union[int, Infinite]


def cost_value(cost: Cost) -> int | str:
    """文書出力用 (無限大は "inf")"""
    return cost.value if cost is INFINITE else cost


class CostVector(NamedTuple):
    representation_cost: int
    concept_spec_cost: Cost
    invalidation_cost: Cost

    def __str__(self):
        return f"({self.representation_cost},{self.concept_spec_cost},{self.invalidation_cost})"

    def to_document(self):
        return dict(representation=self.representation_cost,
                    concept_spec=cost_value(self.concept_spec_cost),
                    invalidation=cost_value(self.invalidation_cost))


class SearchBudget(NamedTuple):
    # None なら対象数 |X|
    max_subset_size: int | None = None
    max_states: int = 10 ** 7

    def check(self):
        if self.max_subset_size is not None and self.max_subset_size < 1:
            raise InvalidParams(f"max_subset_size must be positive (got {self.max_subset_size})")
        if self.max_states < 1:
            raise InvalidParams(f"max_states must be positive (got {self.max_states})")
        return self

    def subset_limit(self, pool_size: int) -> int:
        if self.max_subset_size is None:
            return pool_size
        return min(self.max_subset_size, pool_size)


DEFAULT_BUDGET = SearchBudget()
