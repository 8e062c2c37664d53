from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from teachcore.costs import SearchBudget, is_sufficient, set_size, min_invalidation_set
from teachcore.errors import InvalidParams
from teachcore.learners import Learner
from teachcore.model import instance_document
from teachcore.util import canonical_json
from teachcore.verifier import (
    GeneratorKind, GeneratorParams, LabelMode, LatticeKind, PropertyId, SuiteSettings, object_ids, certify,
    generate_instance, generate_random_instance, generate_concept_spec_tightness, generate_invalidation_tightness,
    generate_1nn_explosion, check_property, run_verification,
)

SMALL = SuiteSettings(trials=4, protocol_trials=4, max_dimension=2, max_pool_size=6, protocol_max_pool_size=5,
                      protocol_max_depth=2, explosion_sizes=(2, 3), tightness_dimensions=(1, 2))


class TestGenerators:
    def test_ids(self):
        assert object_ids(3) == ["x1", "x2", "x3"]
        assert object_ids(10)[0] == "x01"

    def test_random_determinism(self):
        params = GeneratorParams(dimension=1, pool_size=4, seed=7)
        first, second = generate_random_instance(params), generate_random_instance(params)
        assert instance_document(first) == instance_document(second)

    def test_random_grid(self):
        inst = generate_random_instance(GeneratorParams(dimension=2, pool_size=6, seed=3, denominator=2,
                                                        lattice=LatticeKind.POWERSET))
        assert len(inst.lattice) == 4
        for values in inst.features.values():
            for value in values.values():
                assert Fraction(-4) <= value <= Fraction(4)
                assert (value * 2).denominator == 1

    @settings(max_examples=20, deadline=None)
    @given(st.integers(0, 10 ** 6), st.integers(1, 3), st.integers(2, 8))
    def test_separable_mode(self, seed, dimension, pool_size):
        inst = generate_random_instance(GeneratorParams(
            dimension=dimension, pool_size=pool_size, seed=seed, mode=LabelMode.SEPARABLE))
        assert inst.has_both_labels()
        assert is_sufficient(inst, inst.feature_ids, Learner.LINEAR)

    @pytest.mark.parametrize("d", [2, 3])
    def test_concept_tightness(self, d):
        inst = generate_concept_spec_tightness(d)
        params = GeneratorParams(kind=GeneratorKind.CONCEPT_TIGHTNESS, dimension=d)
        assert certify(inst, params).summary == f"concept specification cost {d + 1}"

    def test_concept_tightness_rejects_d1(self):
        with pytest.raises(InvalidParams):
            generate_concept_spec_tightness(1)

    def test_invalidation_tightness(self):
        inst = generate_invalidation_tightness(2)
        params = GeneratorParams(kind=GeneratorKind.INVALIDATION_TIGHTNESS, dimension=2)
        assert certify(inst, params).summary == "invalidation cost 4"

    def test_invalidation_tightness_zero(self):
        inst = generate_invalidation_tightness(0)
        assert len(inst.objects) == 2
        assert set_size(min_invalidation_set(inst, set(), Learner.LINEAR)) == 2

    @pytest.mark.parametrize("k", [2, 3])
    def test_explosion(self, k):
        inst = generate_instance(GeneratorParams(kind=GeneratorKind.EXPLOSION, k=k))
        certificate = certify(inst, GeneratorParams(kind=GeneratorKind.EXPLOSION, k=k))
        assert certificate.summary == f"costs 2 vs {2 * k}"
        assert certificate.values["concept_spec_large"] == 2 * k

    @pytest.mark.parametrize("params", [
        GeneratorParams(denominator=0),
        GeneratorParams(denominator=65),
        GeneratorParams(low=Fraction(2), high=Fraction(1)),
        GeneratorParams(low=Fraction(1, 3), high=Fraction(1, 2), denominator=1),
        GeneratorParams(pool_size=1, both_labels=True),
        GeneratorParams(dimension=-1),
    ])
    def test_invalid_params(self, params):
        with pytest.raises(InvalidParams):
            generate_random_instance(params)


class TestProperties:
    @pytest.mark.parametrize("prop", list(PropertyId))
    def test_fixtures_pass(self, prop, thresh4, xor4, coll, early):
        instances = [thresh4, xor4, coll, early]
        if prop is PropertyId.P6:
            instances = [generate_1nn_explosion(2)]
        report = check_property(prop, instances)
        assert report.status == "pass", [v.detail for v in report.violations]
        assert report.complete

    def test_p8_coll(self, coll):
        report = check_property(PropertyId.P8, [coll])
        assert report.status == "pass"
        assert report.checks == 2

    def test_p6_wrong_family(self, thresh4):
        report = check_property(PropertyId.P6, [thresh4])
        assert report.status == "fail"
        assert report.violations[0].instance == instance_document(thresh4)

    def test_p3_checks_every_invalidating_set(self, xor4):
        report = check_property(PropertyId.P3, [xor4])
        assert report.status == "pass"
        assert report.checks > 3

    def test_p3_reports_non_minimal_set(self, xor4, monkeypatch):
        from teachcore.verifier import properties
        real = properties.has_training_error

        # サイズ3の訓練集合だけ空集合で誤りが出ないことにする
        def planted(inst, feature_set, ids, classifier):
            if not feature_set and len(ids) == 3:
                return False
            return real(inst, feature_set, ids, classifier)

        monkeypatch.setattr(properties, "has_training_error", planted)
        report = check_property(PropertyId.P3, [xor4])
        assert report.status == "fail"
        assert {len(v.witness["training_set"]) for v in report.violations} == {3}
        assert {tuple(v.witness["subset"]) for v in report.violations} == {()}

    def test_p3_samples_large_pools(self, xor4):
        report = check_property(PropertyId.P3, [xor4], definitional_pool_limit=2)
        assert report.status == "pass"
        assert report.checks >= 2

    def test_tightness(self):
        report = check_property(PropertyId.P9, [], tight=[generate_invalidation_tightness(1)])
        assert report.status == "pass"
        assert report.checks == 1

    def test_budget(self, xor4):
        report = check_property(PropertyId.P1, [xor4], SearchBudget(max_states=1))
        assert not report.complete
        assert report.notes


class TestVerification:
    def test_small_run(self):
        report = run_verification(list(PropertyId), 42, SMALL)
        assert report.status == "pass", [(r.property, v.detail) for r in report.reports for v in r.violations]
        assert [r.property for r in report.reports] == [p.value for p in PropertyId]

    def test_deterministic(self):
        first = run_verification([PropertyId.P1, PropertyId.P7], 5, SMALL)
        second = run_verification([PropertyId.P7, PropertyId.P1], 5, SMALL)
        assert canonical_json(first.model_dump(mode="json")) == canonical_json(second.model_dump(mode="json"))

    def test_provided_instances(self, coll):
        report = run_verification([PropertyId.P8], 0, SMALL._replace(trials=0), instances=[coll])
        assert report.reports[0].instances == 1

    @pytest.mark.slow
    def test_default_suites(self):
        report = run_verification(list(PropertyId), 42)
        assert report.status == "pass"
