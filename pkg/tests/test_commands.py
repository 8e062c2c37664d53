import json

import pytest

from teachcore.__main__ import run
from teachcore.commands import ExitCode, RunRequest, Command, exit_code_for
from teachcore.errors import InvalidDocument, BudgetExceeded, Stuck, ConstructionFailed
from teachcore.model import dump_instance


@pytest.fixture
def files(tmp_path, thresh4, xor4, coll, early):
    paths = {}
    for name, inst in dict(thresh4=thresh4, xor4=xor4, coll=coll, early=early).items():
        paths[name] = tmp_path / f"{name}.json"
        dump_instance(inst, paths[name])
    return paths


def machine(capsys, *argv):
    code = run([*map(str, argv), "--format", "machine"])
    return code, json.loads(capsys.readouterr().out)


class TestAnalyze:
    def test_thresh4(self, capsys, files):
        code, doc = machine(capsys, "analyze", "--instance", files["thresh4"])
        assert code == 0
        rows = [(r["feature_set"], r["representation"], r["concept_spec"], r["invalidation"]) for r in doc["rows"]]
        assert rows == [([], 0, "inf", 2), (["f1"], 1, 2, "inf")]

    def test_xor4(self, capsys, files):
        code, doc = machine(capsys, "analyze", "--instance", files["xor4"], "--feature-set", "f1,f2")
        assert code == 0
        assert doc["rows"] == [dict(feature_set=["f1", "f2"], learner="lin", representation=2,
                                    concept_spec="inf", invalidation=4)]

    def test_empty_set_1nn(self, capsys, files):
        code, doc = machine(capsys, "analyze", "--instance", files["coll"], "--feature-set", "",
                            "--learner", "1nn")
        assert code == 0
        assert doc["rows"][0]["concept_spec"] == "inf"
        assert doc["rows"][0]["invalidation"] == 2

    def test_table(self, capsys, files):
        assert run(["analyze", "--instance", str(files["thresh4"]), "--learner", "all"]) == 0
        out = capsys.readouterr().out
        assert "1NN" in out and "lin" in out
        assert "(0,inf,2)" in out
        assert "(1,2,inf)" in out

    def test_missing_file(self, tmp_path, capsys):
        assert run(["analyze", "--instance", str(tmp_path / "none.json")]) == ExitCode.INVALID_INPUT

    def test_outside_lattice(self, files, capsys):
        assert run(["analyze", "--instance", str(files["xor4"]), "--feature-set", "f2"]) == ExitCode.INVALID_INPUT

    def test_budget(self, files, capsys):
        code = run(["analyze", "--instance", str(files["xor4"]), "--max-subset-size", "1"])
        assert code == ExitCode.BUDGET_EXHAUSTED


class TestSimulate:
    def test_optimal(self, capsys, files):
        code, doc = machine(capsys, "simulate", "--instance", files["thresh4"], "--protocol", "edf", "--optimal",
                            "--feature-set", "f1")
        assert code == 0
        row = doc["rows"][0]
        assert (row["features"], row["labels"]) == (1, 2)
        assert len(row["plan"]) == 3

    def test_inaccessible(self, capsys, files):
        code, doc = machine(capsys, "simulate", "--instance", files["early"], "--protocol", "edf",
                            "--learner", "1nn", "--optimal", "--feature-set", "f1,f2")
        assert code == 0
        assert (doc["rows"][0]["features"], doc["rows"][0]["labels"], doc["rows"][0]["plan"]) == (2, "inf", None)

    def test_table(self, capsys, files):
        code = run(["simulate", "--instance", str(files["thresh4"]), "--protocol", "all", "--learner", "all",
                    "--optimal"])
        assert code == 0
        out = capsys.readouterr().out
        assert "Open 1NN" in out and "EDF lin" in out

    def test_script(self, tmp_path, capsys, files):
        script = tmp_path / "script.yml"
        script.write_text("- add_feature: f1\n- add_example: x2\n- add_example: x3\n", encoding="utf-8")
        code, doc = machine(capsys, "simulate", "--instance", files["thresh4"], "--script", script)
        assert code == 0
        assert doc["transcript"]["outcome"] == "terminated"
        assert (doc["transcript"]["features"], doc["transcript"]["labels"]) == (1, 2)

    def test_illegal_script(self, tmp_path, capsys, files):
        script = tmp_path / "script.json"
        script.write_text('[{"add_example": "x1"}, {"add_example": "x1"}]', encoding="utf-8")
        code = run(["simulate", "--instance", str(files["thresh4"]), "--script", str(script)])
        assert code == ExitCode.ILLEGAL_SCRIPT
        assert "step 1" in capsys.readouterr().err

    def test_stuck(self, tmp_path, capsys, files):
        script = tmp_path / "script.json"
        script.write_text('[{"add_example": "x1"}, {"add_example": "x2"}, {"add_feature": "f1"}]',
                          encoding="utf-8")
        code = run(["simulate", "--instance", str(files["coll"]), "--script", str(script), "--protocol", "edf",
                    "--learner", "1nn"])
        assert code == ExitCode.ILLEGAL_SCRIPT
        assert "outcome: stuck" in capsys.readouterr().out

    def test_mode_required(self, capsys, files):
        assert run(["simulate", "--instance", str(files["thresh4"])]) == ExitCode.INVALID_INPUT


class TestGenerate:
    def test_invalidation_tightness(self, tmp_path, capsys):
        out = tmp_path / "inv.json"
        code = run(["generate", "--kind", "invalidation-tightness", "--dimension", "2", "--out", str(out)])
        assert code == 0
        assert "invalidation cost 4" in capsys.readouterr().out

        # 生成物はそのまま analyze に渡せる
        code, doc = machine(capsys, "analyze", "--instance", out, "--feature-set", "f1,f2")
        assert code == 0
        assert doc["rows"][0]["invalidation"] == 4

    def test_explosion(self, tmp_path, capsys):
        code, doc = machine(capsys, "generate", "--kind", "1nn-explosion", "--k", "3", "--out", tmp_path / "e.yml")
        assert code == 0
        assert doc["summary"] == "costs 2 vs 6"

    def test_random_identical(self, tmp_path, capsys):
        for name in ("a.json", "b.json"):
            assert run(["generate", "--dimension", "1", "--pool-size", "4", "--seed", "7",
                        "--out", str(tmp_path / name)]) == 0
        assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()

    def test_invalid(self, tmp_path, capsys):
        code = run(["generate", "--kind", "concept-tightness", "--dimension", "1", "--out", str(tmp_path / "c.json")])
        assert code == ExitCode.INVALID_INPUT

    def test_out_required(self, capsys):
        assert run(["generate"]) == ExitCode.INVALID_INPUT


class TestVerify:
    def test_p8_on_coll(self, capsys, files):
        code, doc = machine(capsys, "verify", "P8", "--trials", "0", "--instance", files["coll"])
        assert code == 0
        assert doc["status"] == "pass"
        assert doc["reports"][0]["instances"] == 1

    def test_deterministic(self, capsys):
        outputs = []
        for _ in range(2):
            assert run(["verify", "--properties", "P7", "--trials", "3", "--seed", "42", "--format", "machine"]) == 0
            outputs.append(capsys.readouterr().out)
        assert outputs[0] == outputs[1]

    def test_config_file(self, tmp_path, capsys):
        config = tmp_path / "teachcore.yml"
        code = run(["verify", "P2", "--trials", "2", "--config", str(config)])
        assert code == 0
        assert config.is_file()

    def test_unknown_property(self, capsys):
        assert run(["verify", "P10"]) == ExitCode.INVALID_INPUT


class TestMisc:
    def test_version(self, capsys):
        assert run(["--version"]) == 0
        assert "teachcore" in capsys.readouterr().out

    def test_exit_codes(self):
        assert exit_code_for(InvalidDocument("x")) is ExitCode.INVALID_INPUT
        assert exit_code_for(BudgetExceeded(1, 2)) is ExitCode.BUDGET_EXHAUSTED
        assert exit_code_for(Stuck("x")) is ExitCode.ILLEGAL_SCRIPT
        assert exit_code_for(ConstructionFailed("x")) is ExitCode.CONSTRUCTION_FAILED
        assert exit_code_for(RuntimeError()) is ExitCode.UNEXPECTED

    def test_request(self):
        req = RunRequest.parse(command="analyze", instances=["a.json"], learners=["1nn"])
        assert req.command is Command.ANALYZE
        with pytest.raises(InvalidDocument):
            RunRequest.parse(command="analyze")
