import json
import math

import pytest

from lenselect.cli import main
from lenselect.jobs import JobError, parse_job, render_table, run_job, serialize

TWO_PI = 2 * math.pi


def reeb_job(k, weights, T, task=None):
    doc = {"lens": {"k": k, "weights": weights}, "path": {"reeb": T}}
    if task is not None:
        doc["task"] = task
    return doc


class TestParseJob:
    def test_minimal(self):
        job = parse_job({"lens": {"k": 2, "weights": [1, 1]}})
        assert job.lens.k == 2
        assert job.task is None

    def test_malformed_json(self):
        with pytest.raises(JobError, match=r"\$: malformed"):
            parse_job("{not json")

    def test_non_coprime_weight_field(self):
        with pytest.raises(JobError, match=r"lens\.weights\[0\]"):
            parse_job({"lens": {"k": 4, "weights": [2, 1]}})

    def test_non_hermitian_generator(self):
        seg = {"generator": [[[0, 0], [1, 0]], [[0, 0], [0, 0]]]}
        doc = {
            "lens": {"k": 2, "weights": [1, 1]},
            "path": {"piecewise_hermitian": {"segments": [seg]}},
        }
        with pytest.raises(JobError, match=r"segments\[0\].generator.*asymmetry"):
            parse_job(doc)

    def test_bad_matrix_shape(self):
        seg = {"generator": [[1, 2], [3, 4]]}
        doc = {
            "lens": {"k": 2, "weights": [1, 1]},
            "path": {"piecewise_hermitian": {"segments": [seg]}},
        }
        with pytest.raises(JobError, match=r"\[re, im\]|shape"):
            parse_job(doc)

    def test_unknown_task(self):
        with pytest.raises(JobError, match="unknown task"):
            parse_job({"lens": {"k": 2, "weights": [1, 1]},
                       "task": {"frobnicate": {}}})

    def test_bad_duration(self):
        seg = {"generator": [[[1, 0]]], "duration": -1}
        doc = {
            "lens": {"k": 2, "weights": [1]},
            "path": {"piecewise_hermitian": {"segments": [seg]}},
        }
        with pytest.raises(JobError, match="duration"):
            parse_job(doc)


class TestRunJob:
    def test_maslov_reeb(self):
        job = parse_job(reeb_job(2, [1, 1], TWO_PI, {"maslov": {}}))
        rep = run_job(job)
        assert rep["results"]["mu"] == 4
        assert rep["results"]["reeb_period"] == {
            "num": 1, "den": 2, "approx": pytest.approx(math.pi)
        }

    def test_selectors_identity(self):
        job = parse_job(reeb_job(2, [1, 1], 0.0, {"selectors": {"j_lo": -3,
                                                                "j_hi": 0}}))
        rep = run_job(job)
        for j in range(-3, 1):
            assert rep["results"]["selectors"][str(j)] == pytest.approx(0.0,
                                                                        abs=1e-9)

    def test_norms_reeb_lattice(self):
        T = 3 * math.pi  # 3 T_w on L_2
        job = parse_job(reeb_job(2, [1, 1], T, {"norms": {}}))
        res = run_job(job)["results"]
        assert res["nu"] == {"num": 3, "den": 2,
                             "approx": pytest.approx(T, abs=1e-9)}
        assert res["nu_star"]["num"] == 0
        assert res["nu_star_shift"]["num"] == 3

    def test_geodesic(self):
        job = parse_job({"lens": {"k": 3, "weights": [1, 1]},
                         "task": {"geodesic": {"T": 4 * math.pi}}})
        res = run_job(job)["results"]
        assert res["verdict"] == "certified"
        assert res["lower"] == res["upper"] == 7

    def test_missing_task(self):
        with pytest.raises(JobError, match="task"):
            run_job(parse_job(reeb_job(2, [1, 1], 1.0)))

    def test_missing_path(self):
        job = parse_job({"lens": {"k": 2, "weights": [1, 1]},
                         "task": {"maslov": {}}})
        with pytest.raises(JobError, match="path"):
            run_job(job)

    def test_deterministic_serialization(self):
        doc = reeb_job(2, [1, 1], 1.5, {"selectors": {}})
        a = serialize(run_job(parse_job(json.dumps(doc))))
        b = serialize(run_job(parse_job(json.dumps(doc))))
        assert a == b

    def test_render_table_alignment(self):
        rep = run_job(parse_job(reeb_job(2, [1, 1], 1.0, {"maslov": {}})))
        table = render_table(rep)
        assert "mu" in table
        cols = {line.index(line.split()[-1]) for line in table.splitlines()}
        assert len(cols) == 1  # one aligned value column


class TestMain:
    def test_maslov_exit_zero(self, tmp_path, capsys):
        f = tmp_path / "job.json"
        f.write_text(json.dumps(reeb_job(2, [1, 1], TWO_PI)))
        assert main(["maslov", str(f)]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["results"]["mu"] == 4

    def test_input_error_exit_two(self, tmp_path, capsys):
        f = tmp_path / "bad.json"
        f.write_text(json.dumps({"lens": {"k": 4, "weights": [2, 1]}}))
        assert main(["maslov", str(f)]) == 2
        assert "lens.weights[0]" in capsys.readouterr().err

    def test_missing_file_exit_two(self, capsys):
        assert main(["maslov", "/nonexistent/job.json"]) == 2

    def test_stdin(self, tmp_path, capsys, monkeypatch):
        import io
        import sys

        payload = json.dumps(reeb_job(2, [1, 1], 1.0)).encode()
        monkeypatch.setattr(
            sys, "stdin",
            type("S", (), {"buffer": io.BytesIO(payload)})(),
        )
        assert main(["maslov", "-"]) == 0

    def test_selector_flags(self, tmp_path, capsys):
        f = tmp_path / "job.json"
        f.write_text(json.dumps(reeb_job(2, [1, 1], 0.0)))
        assert main(["selectors", str(f), "--j-lo", "-1", "--j-hi", "2"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert set(out["results"]["selectors"]) == {"-1", "0", "1", "2"}

    def test_verify_exit_zero(self, capsys):
        assert main(["verify", "--suite", "quadratic_core", "--trials", "3"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["results"]["pass"] is True

    def test_table_on_stderr(self, tmp_path, capsys):
        f = tmp_path / "job.json"
        f.write_text(json.dumps(reeb_job(2, [1, 1], 1.0)))
        assert main(["maslov", str(f), "--table"]) == 0
        assert "mu" in capsys.readouterr().err
