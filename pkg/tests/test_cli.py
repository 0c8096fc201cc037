"""
Tests for the pd-schauder command line: run configuration, the five commands and exit codes.
"""

import io
import json
import math

import numpy as np
import pytest

from main import main
from src.cli import EXIT_CHECK_FAILED, EXIT_INPUT_ERROR, EXIT_OK, CommandRunner, RunConfig
from src.errors import BasisConfigError, PairValidationError
from src.geometry import persistence_plane


class TestRunConfig:

    def test_defaults(self, monkeypatch):
        monkeypatch.delenv("PD_SCHAUDER_SEED", raising=False)
        config = RunConfig.from_args(pair=None, layers=None)
        assert (config.z, config.layers, config.rafter, config.kind, config.format) == (2, 4, 4, "plain", "csv")
        assert config.seed == 42

    def test_seed_from_env(self, monkeypatch):
        monkeypatch.setenv("PD_SCHAUDER_SEED", "7")
        assert RunConfig.from_args().seed == 7

    @pytest.mark.parametrize("values", [{"z": 1}, {"format": "xml"}, {"rafter": 0}, {"kind": "fancy"}])
    def test_invalid_options(self, values):
        with pytest.raises(BasisConfigError):
            RunConfig.from_args(**values)

    def test_presets(self, plane, mixup, barcode2):
        assert RunConfig.from_args(pair="plane").resolve_pair() == plane
        assert RunConfig.from_args(pair="mixup").resolve_pair() == mixup
        assert RunConfig.from_args(pair="barcode:2").resolve_pair() == barcode2

    @pytest.mark.parametrize("name", ["barcode:x", "no-such-file.json"])
    def test_bad_pair(self, name):
        with pytest.raises(PairValidationError):
            RunConfig.from_args(pair=name).resolve_pair()

    def test_basis_config_needs_pair(self):
        with pytest.raises(BasisConfigError):
            RunConfig.from_args().basis_config()

    def test_carries_pair(self):
        assert RunConfig.from_args(format="rects").carries_pair
        assert not RunConfig.from_args(format="jsonl").carries_pair


class TestCommandRunner:

    def test_unknown_command(self):
        assert CommandRunner(RunConfig.from_args()).execute("frobnicate") == EXIT_INPUT_ERROR

    def test_writes_to_given_stream(self):
        buffer = io.StringIO()
        runner = CommandRunner(RunConfig.from_args(pair="plane", layers=0, rafter=1), stdout=buffer)
        assert runner.execute("basis-info") == EXIT_OK
        assert json.loads(buffer.getvalue())["size"] == 3


class TestBasisInfo:

    def test_smallest_plane(self, capsys):
        assert main(["basis-info", "--pair", "plane", "--rafter", "1", "--layers", "0"]) == EXIT_OK
        info = json.loads(capsys.readouterr().out)
        assert info["size"] == 3
        assert info["layer_counts"] == [3]
        assert info["llf_constant"] == pytest.approx(6.0)
        assert info["cfk_constant"] == pytest.approx(4.0)
        assert info["kernel_peaks"] == pytest.approx([1.0 / math.sqrt(2.0)])

    def test_without_pair(self, capsys):
        assert main(["basis-info"]) == EXIT_INPUT_ERROR
        assert "no pair given" in capsys.readouterr().err

    def test_invalid_option(self, capsys):
        assert main(["basis-info", "--pair", "plane", "--z", "1"]) == EXIT_INPUT_ERROR

    def test_missing_command(self, capsys):
        assert main([]) == 2


class TestVectorize:

    def test_empty_csv(self, write_text, capsys):
        path = write_text("empty.csv", "# weight,birth,death\n")
        assert main(["vectorize", "--pair", "plane", path]) == EXIT_OK
        document = json.loads(capsys.readouterr().out)
        assert document["vectors"][0]["entries"] == {}
        assert document["vectors"][0]["points"] == 0

    def test_malformed_row(self, write_text, capsys):
        path = write_text("bad.csv", "1,0,2\n1,x,2\n")
        assert main(["vectorize", "--pair", "plane", path]) == EXIT_INPUT_ERROR
        assert "row 2" in capsys.readouterr().err

    def test_missing_file(self, tmp_path, capsys):
        assert main(["vectorize", "--pair", "plane", str(tmp_path / "nope.csv")]) == EXIT_INPUT_ERROR

    def test_csv_needs_pair(self, write_text, capsys):
        path = write_text("d.csv", "1,0,2\n")
        assert main(["vectorize", path]) == EXIT_INPUT_ERROR

    def test_stacked_l1_is_distance_to_A(self, write_text, capsys):
        path = write_text("d.csv", "1,0.3,1.9\n")
        assert main(["vectorize", "--pair", "plane", "--kind", "stacked", path]) == EXIT_OK
        record = json.loads(capsys.readouterr().out)["vectors"][0]
        d = 1.6 / math.sqrt(2.0)
        assert record["l1"] == pytest.approx(d * (1.0 - 2.0 ** -10))
        assert record["tail_bound"] == pytest.approx(d * 2.0 ** -10)
        assert record["w1_empty"] == pytest.approx(d)

    def test_sparse_to_file(self, write_text, tmp_path, capsys):
        path = write_text("d.jsonl", '{"w": 1, "x": [0, 2]}\n')
        out = tmp_path / "features.json"
        assert main(["vectorize", "--pair", "plane", "--format", "jsonl", "--out", str(out), path]) == EXIT_OK
        document = json.loads(out.read_text())
        assert len(document["vectors"]) == 1
        summary = json.loads(capsys.readouterr().out)
        assert summary["input"] == path

    def test_dense(self, write_text, tmp_path, capsys):
        a = write_text("a.csv", "1,0,2\n")
        b = write_text("b.csv", "-1,0.5,3\n1,1,2\n")
        out = tmp_path / "features.csv"
        assert main(["vectorize", "--pair", "plane", "--dense", "--out", str(out), a, b]) == EXIT_OK
        sidecar = json.loads((tmp_path / "features.csv.json").read_text())
        matrix = np.loadtxt(out, delimiter=",", ndmin=2)
        assert matrix.shape == (2, sidecar["size"])
        assert len(sidecar["columns"]) == sidecar["size"]
        assert sidecar["inputs"] == [a, b]
        lines = capsys.readouterr().out.strip().splitlines()
        assert len(lines) == 2

    def test_dense_matches_sparse(self, write_text, tmp_path, capsys):
        a = write_text("a.csv", "1,0,2\n1,0.3,1.9\n")
        b = write_text("b.csv", "-1,0.5,3\n1,1,2.25\n")
        dense_out = tmp_path / "features.csv"
        sparse_out = tmp_path / "features.json"
        common = ["vectorize", "--pair", "plane", "--layers", "2", "--rafter", "3"]
        assert main(common + ["--dense", "--out", str(dense_out), a, b]) == EXIT_OK
        assert main(common + ["--out", str(sparse_out), a, b]) == EXIT_OK
        dense = np.loadtxt(dense_out, delimiter=",", ndmin=2)
        document = json.loads(sparse_out.read_text())
        sparse = np.zeros((len(document["vectors"]), document["size"]))
        for row, record in enumerate(document["vectors"]):
            for index, value in record["entries"].items():
                sparse[row, int(index)] = value
        assert np.array_equal(dense, sparse)

    def test_dense_needs_out(self, write_text, capsys):
        path = write_text("a.csv", "1,0,2\n")
        assert main(["vectorize", "--pair", "plane", "--dense", path]) == EXIT_INPUT_ERROR

    def test_mixup_infers_pair(self, write_text, capsys):
        path = write_text("m.csv", "0,1,3\n")
        assert main(["vectorize", "--format", "mixup", "--layers", "1", path]) == EXIT_OK
        document = json.loads(capsys.readouterr().out)
        assert document["config"]["pair"]["dimension"] == 3

    def test_rects_pair_mismatch(self, write_text, capsys):
        path = write_text("bars.json", json.dumps({"d": 1, "bars": [{"a": [0], "b": [2]}]}))
        args = ["vectorize", "--format", "rects", "--pair", "barcode:2", path]
        assert main(args) == EXIT_INPUT_ERROR


class TestDistance:

    def test_point_to_empty(self, write_text, capsys):
        a = write_text("a.csv", "1,0,2\n")
        b = write_text("b.csv", "")
        assert main(["distance", "--pair", "plane", a, b]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["w1"] == pytest.approx(math.sqrt(2.0))

    def test_matching(self, write_text, capsys):
        a = write_text("a.csv", "1,0,2\n")
        b = write_text("b.csv", "1,0,2.5\n")
        assert main(["distance", "--pair", "plane", "--matching", a, b]) == EXIT_OK
        document = json.loads(capsys.readouterr().out)
        assert document["w1"] == pytest.approx(0.5)
        assert document["matching"] == [{"from": [0.0, 2.0], "to": [0.0, 2.5]}]

    def test_non_integer_weight(self, write_text, capsys):
        a = write_text("a.csv", "0.5,0,2\n")
        b = write_text("b.csv", "")
        assert main(["distance", "--pair", "plane", a, b]) == EXIT_INPUT_ERROR


class TestCheck:

    def test_peak_suite(self, capsys):
        assert main(["check", "--suite", "peak"]) == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["passed"] is True
        assert [s["name"] for s in report["suites"]] == ["peak"]

    def test_trial_override(self, capsys):
        assert main(["check", "--suite", "stability", "--trials", "20", "--seed", "3"]) == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["seed"] == 3
        assert [(s["name"], s["trials"]) for s in report["suites"]] == [("stability", 20)]

    def test_report_to_file(self, tmp_path, capsys):
        out = tmp_path / "report.json"
        assert main(["check", "--suite", "peak", "--out", str(out)]) == EXIT_OK
        assert json.loads(out.read_text())["passed"] is True

    def test_corrupt_pair_file(self, write_text, capsys):
        path = write_text("pair.json", "{not json")
        assert main(["check", "--suite", "peak", "--pair", path]) == EXIT_INPUT_ERROR

    def test_unknown_suite(self, capsys):
        assert main(["check", "--suite", "nope"]) == 2

    def test_failed_suite_exit_code(self, monkeypatch):
        from src.cli import suites

        def broken(rng, trials):
            raise RuntimeError("boom")

        monkeypatch.setitem(suites.SUITES, "peak", suites.Suite("peak", broken, 1))
        runner = CommandRunner(RunConfig.from_args())
        assert runner.execute("check", {"suites": ["peak"]}) == EXIT_CHECK_FAILED


class TestVizExport:

    def test_signed_bars(self, write_text, capsys):
        doc = {"d": 1, "bars": [{"a": [0], "b": [2], "sign": 1}, {"a": [1], "b": [3], "sign": -1}]}
        path = write_text("bars.json", json.dumps(doc))
        assert main(["viz-export", "--format", "rects", "--layers", "1", path]) == EXIT_OK
        bundle = json.loads(capsys.readouterr().out)
        records = bundle["records"]
        assert [r["orientation"] for r in records] == ["up", "down"]
        assert records[0]["a"] == [0.0] and records[0]["b"] == [2.0]
        assert records[0]["kind"] == "rectangle"
        indices = [s["index"] for s in records[0]["segments"]]
        assert indices == sorted(indices)

    def test_csv_points(self, write_text, capsys):
        path = write_text("d.csv", "1,0,2\n")
        assert main(["viz-export", "--pair", "plane", path]) == EXIT_OK
        record = json.loads(capsys.readouterr().out)["records"][0]
        assert record["point"] == [0.0, 2.0]
        assert record["total"] == pytest.approx(1.0 / math.sqrt(2.0))
        assert record["a"] is None

    def test_rects_on_wrong_pair(self, write_text, capsys):
        path = write_text("bars.json", json.dumps({"d": 1, "bars": [{"a": [0], "b": [2]}]}))
        assert main(["viz-export", "--format", "rects", "--pair", "mixup", path]) == EXIT_INPUT_ERROR


def test_plane_preset_matches_library():
    assert RunConfig.from_args(pair="plane").resolve_pair() == persistence_plane()
