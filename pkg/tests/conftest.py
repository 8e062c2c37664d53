import pytest

from teachcore.model import validate_instance


def make_instance(labels: dict[str, int], features: dict[str, dict[str, object]], lattice: list[list[str]]):
    return validate_instance(dict(
        objects=[dict(id=x, label=y) for x, y in labels.items()],
        features=[dict(id=f, values=values) for f, values in features.items()],
        lattice=lattice,
    ))


THRESH4_DOCUMENT = dict(
    objects=[dict(id="x1", label=0), dict(id="x2", label=0), dict(id="x3", label=1), dict(id="x4", label=1)],
    features=[dict(id="f1", values=dict(x1="1", x2="2", x3="3", x4="4"))],
    lattice=[[], ["f1"]],
)


@pytest.fixture
def thresh4_document():
    return dict(THRESH4_DOCUMENT)


@pytest.fixture
def thresh4():
    """f1 = 1,2,3,4 / ラベル 0,0,1,1"""
    return validate_instance(THRESH4_DOCUMENT)


@pytest.fixture
def xor4():
    return make_instance(
        dict(x1=0, x2=1, x3=1, x4=0),
        dict(f1=dict(x1=0, x2=0, x3=1, x4=1), f2=dict(x1=0, x2=1, x3=0, x4=1)),
        [[], ["f1"], ["f1", "f2"]],
    )


@pytest.fixture
def coll():
    """同じ点に異なるラベルの 2 対象"""
    return make_instance(dict(x1=0, x2=1), dict(f1=dict(x1="1/2", x2="1/2")), [[], ["f1"]])


@pytest.fixture
def early():
    """鎖 ∅ ⊂ {f1} ⊂ {f1,f2} で {f1} の時点で 1NN が十分になる問題"""
    return make_instance(
        dict(x1=0, x2=0, x3=1, x4=1),
        dict(f1=dict(x1=1, x2=2, x3=3, x4=4), f2=dict(x1=0, x2=1, x3=0, x4=1)),
        [[], ["f1"], ["f1", "f2"]],
    )
