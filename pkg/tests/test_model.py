from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from teachcore.errors import (
    InvalidDocument, InvalidRational, InvalidLabel, MissingFeatureValue, DuplicateObjectId, LatticeChainViolation,
    UnknownFeatureId, UnknownObject, UnknownFeature, FeatureSetNotInLattice,
)
from teachcore.model import (
    FeatureLattice, TrainingSet, featurize, lattice_successor_features, is_honest, validate_instance,
    instance_document, load_instance, dump_instance, to_rational,
)
from .conftest import THRESH4_DOCUMENT


class TestRational:
    def test_parse(self):
        assert to_rational("3/6") == Fraction(1, 2)
        assert to_rational("-4") == Fraction(-4)
        assert to_rational(7) == Fraction(7)

    @pytest.mark.parametrize("value", ["1/0", "0.5", "abc", 0.5, True, None])
    def test_reject(self, value):
        with pytest.raises(InvalidRational):
            to_rational(value)


class TestValidate:
    def test_minimal(self):
        inst = validate_instance(dict(
            objects=[dict(id=f"x{i}", label=i % 2) for i in range(1, 5)],
            features=[dict(id="f1", values={f"x{i}": str(i) for i in range(1, 5)})],
            lattice=[[], ["f1"]],
        ))
        assert len(inst.objects) == 4
        assert len(inst.lattice) == 2

    def test_missing_value(self):
        doc = dict(THRESH4_DOCUMENT, features=[dict(id="f1", values=dict(x1="1", x2="2", x3="3"))])
        with pytest.raises(MissingFeatureValue) as e:
            validate_instance(doc)
        assert e.value.object_id == "x4"

    def test_lattice_gap(self):
        doc = dict(THRESH4_DOCUMENT,
                   features=THRESH4_DOCUMENT["features"] + [dict(id="f2", values=dict(x1=0, x2=0, x3=0, x4=0))],
                   lattice=[[], ["f1", "f2"]])
        with pytest.raises(LatticeChainViolation) as e:
            validate_instance(doc)
        assert e.value.feature_set == frozenset({"f1", "f2"})

    def test_lattice_without_empty_set(self):
        with pytest.raises(LatticeChainViolation):
            validate_instance(dict(THRESH4_DOCUMENT, lattice=[["f1"]]))

    def test_unknown_lattice_feature(self):
        with pytest.raises(UnknownFeatureId):
            validate_instance(dict(THRESH4_DOCUMENT, lattice=[[], ["f9"]]))

    def test_duplicate_object(self):
        doc = dict(THRESH4_DOCUMENT, objects=THRESH4_DOCUMENT["objects"] + [dict(id="x1", label=1)])
        with pytest.raises(DuplicateObjectId):
            validate_instance(doc)

    @pytest.mark.parametrize("label", [2, -1, True, 0.0, "1"])
    def test_bad_label(self, label):
        doc = dict(THRESH4_DOCUMENT, objects=[dict(id="x1", label=label)] + THRESH4_DOCUMENT["objects"][1:])
        with pytest.raises(InvalidLabel):
            validate_instance(doc)

    def test_extra_object_in_values(self):
        values = dict(x1="1", x2="2", x3="3", x4="4", x5="5")
        with pytest.raises(UnknownObject):
            validate_instance(dict(THRESH4_DOCUMENT, features=[dict(id="f1", values=values)]))

    def test_bad_rational(self):
        values = dict(x1="1", x2="2/0", x3="3", x4="4")
        with pytest.raises(InvalidRational):
            validate_instance(dict(THRESH4_DOCUMENT, features=[dict(id="f1", values=values)]))

    def test_malformed(self):
        with pytest.raises(InvalidDocument):
            validate_instance(dict(objects="nope", lattice=[[]]))
        with pytest.raises(InvalidDocument):
            validate_instance([1, 2, 3])


class TestFeaturize:
    def test_lookup(self, thresh4, xor4):
        assert featurize(thresh4, {"f1"}, "x3") == (3,)
        assert featurize(xor4, {"f1", "f2"}, "x2") == (0, 1)
        assert featurize(xor4, set(), "x2") == ()

    def test_unknown(self, thresh4):
        with pytest.raises(UnknownObject):
            featurize(thresh4, {"f1"}, "x9")
        with pytest.raises(UnknownFeature):
            featurize(thresh4, {"f9"}, "x1")

    @given(st.permutations([0, 1, 2]))
    def test_declaration_order(self, order):
        """特徴量の宣言順を入れ替えても点は変わらない"""
        features = [dict(id=f"f{i + 1}", values=dict(x1=str(i), x2=str(10 * i))) for i in range(3)]
        doc = dict(objects=[dict(id="x1", label=0), dict(id="x2", label=1)],
                   features=[features[i] for i in order],
                   lattice=[[], ["f1"], ["f1", "f2"], ["f1", "f2", "f3"]])
        inst = validate_instance(doc)
        assert featurize(inst, {"f3", "f1", "f2"}, "x2") == (0, 10, 20)


class TestLattice:
    def test_successors(self, xor4):
        assert lattice_successor_features(xor4, set()) == {"f1"}
        assert lattice_successor_features(xor4, {"f1"}) == {"f2"}
        assert lattice_successor_features(xor4, {"f1", "f2"}) == frozenset()

    def test_powerset_successors(self):
        lattice = FeatureLattice.powerset(["a", "b", "c"])
        assert len(lattice) == 8
        assert lattice.successors({"a"}) == {"b", "c"}

    def test_not_in_lattice(self, xor4):
        with pytest.raises(FeatureSetNotInLattice):
            lattice_successor_features(xor4, {"f2"})

    def test_chain_to(self):
        lattice = FeatureLattice.powerset(["a", "b"])
        assert lattice.chain_to({"a", "b"}) == [frozenset(), {"a"}, {"a", "b"}]

    def test_order(self):
        lattice = FeatureLattice([["b"], [], ["a", "b"], ["a"]])
        assert lattice.to_document() == [[], ["a"], ["b"], ["a", "b"]]


class TestTrainingSet:
    def test_honest(self, thresh4):
        assert is_honest(thresh4, TrainingSet([("x1", 0)]))
        assert not is_honest(thresh4, TrainingSet([("x1", 1)]))

    def test_duplicate(self):
        with pytest.raises(DuplicateObjectId):
            TrainingSet([("x1", 0), ("x1", 0)])

    def test_with_example(self, thresh4):
        training_set = TrainingSet.honest(thresh4, ["x3"]).with_example("x1", 0)
        assert training_set.examples == (("x1", 0), ("x3", 1))
        assert training_set.ids == {"x1", "x3"}


class TestDocument:
    @pytest.mark.parametrize("suffix", [".json", ".yml"])
    def test_file(self, tmp_path, thresh4, suffix):
        path = tmp_path / f"thresh4{suffix}"
        dump_instance(thresh4, path)
        loaded = load_instance(path)
        assert instance_document(loaded) == instance_document(thresh4)

    def test_canonical_rationals(self, coll):
        doc = instance_document(coll)
        assert doc.features[0].values == dict(x1="1/2", x2="1/2")

    def test_missing_file(self, tmp_path):
        with pytest.raises(InvalidDocument):
            load_instance(tmp_path / "missing.json")

    def test_broken_file(self, tmp_path):
        path = tmp_path / "broken.yml"
        path.write_text("objects: [\n", encoding="utf-8")
        with pytest.raises(InvalidDocument):
            load_instance(path)
