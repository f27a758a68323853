"""CLI: subcommands, exit codes, byte-deterministic output."""

import json
import math
import os

import pytest

from qgraph.cli import main
from qgraph.graph import make_figure8, make_star, save_graph


@pytest.fixture
def star_file(tmp_path):
    p = tmp_path / "star.json"
    save_graph(make_star([1.0, 1.0, 1.0]), p)
    return str(p)


@pytest.fixture
def generic_star_file(tmp_path):
    p = tmp_path / "star2.json"
    save_graph(make_star([1.0, 0.7, 1.3]), p)
    return str(p)


@pytest.fixture
def fig8_file(tmp_path):
    p = tmp_path / "fig8.json"
    save_graph(make_figure8(0.7, 1.3), p)
    return str(p)


class TestSpectrum:
    def test_text_output(self, star_file, capsys):
        assert main(["spectrum", star_file, "--window", "-10:0"]) == 0
        out = capsys.readouterr().out
        assert "2 eigenvalue(s)" in out
        assert "-3.32905861" in out

    def test_json_output(self, star_file, capsys):
        assert main(["spectrum", star_file, "--window=-10:10", "--json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["method"] == "edge"
        assert len(doc["eigenvalues"]) == 5
        assert doc["eigenvalues"][0]["lambda"] == pytest.approx(
            -3.3290586132660844, abs=1e-8)

    def test_csv_byte_determinism(self, star_file, capsys):
        argv = ["spectrum", star_file, "--window", "-10:10", "--csv"]
        assert main(argv) == 0
        first = capsys.readouterr().out
        assert main(argv) == 0
        second = capsys.readouterr().out
        assert first == second
        lines = first.strip().split("\n")
        assert lines[0] == "# method=edge"
        assert lines[3] == "lambda,multiplicity"
        # repr floats round-trip exactly
        lam = float(lines[4].split(",")[0])
        assert lam == pytest.approx(-3.3290586132660844, abs=1e-8)

    def test_dtn_method(self, star_file, capsys):
        assert main(["spectrum", star_file, "--window", "-10:9",
                     "--method", "dtn", "--json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert len(doc["eigenvalues"]) == 4

    def test_dtn_pole_diagnostic_exits_3(self, generic_star_file, capsys):
        # pi^2 is both an eigenvalue and a DtN pole for the unit edge
        code = main(["spectrum", generic_star_file, "--window", "8:12",
                     "--method", "dtn"])
        captured = capsys.readouterr()
        assert code == 3
        assert "DtNPole" in captured.err

    def test_bad_window_exits_2(self, star_file, capsys):
        assert main(["spectrum", star_file, "--window", "abc"]) == 2
        assert "window" in capsys.readouterr().err
        assert main(["spectrum", star_file, "--window", "5:1"]) == 2

    def test_missing_file_exits_2(self, tmp_path, capsys):
        assert main(["spectrum", str(tmp_path / "nope.json"),
                     "--window", "-1:1"]) == 2

    def test_malformed_graph_exits_2(self, tmp_path, capsys):
        p = tmp_path / "bad.json"
        p.write_text('{"vertices": [], "edges": "nope"}')
        assert main(["spectrum", str(p), "--window", "-1:1"]) == 2

    def test_internal_error_exits_4(self, star_file, monkeypatch, capsys):
        import qgraph.cli as cli_mod

        def boom(*a, **kw):
            raise RuntimeError("synthetic")

        monkeypatch.setattr(cli_mod, "find_spectrum", boom)
        assert main(["spectrum", star_file, "--window", "-1:1"]) == 4
        assert "internal" in capsys.readouterr().err


class TestSurgery:
    def write_ops(self, tmp_path, ops):
        p = tmp_path / "ops.json"
        p.write_text(json.dumps(ops))
        return str(p)

    def test_transplant_then_extend(self, generic_star_file, tmp_path, capsys):
        ops = self.write_ops(tmp_path, [
            {"op": "transplant", "from_edge": "e2", "to_edge": "e3",
             "amount": 0.2},
            {"op": "extend", "edge": "e1", "amount": 0.5},
        ])
        assert main(["surgery", generic_star_file, ops, "--track", "2",
                     "--json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["track"] == 2
        assert len(doc["steps"]) == 3
        lam1 = [s["lambdas"][0] for s in doc["steps"]]
        # transplanting toward the longer edge strictly lowers the ground
        # state; the extension step has no fixed direction here
        assert lam1[1] < lam1[0]
        assert all(len(s["lambdas"]) == 2 for s in doc["steps"])

    def test_attach_op(self, star_file, tmp_path, capsys):
        ops = self.write_ops(tmp_path, [
            {"op": "attach", "at_vertex": "v0", "length": 0.8},
        ])
        assert main(["surgery", star_file, ops, "--track", "1"]) == 0
        out = capsys.readouterr().out
        assert "attach at v0" in out

    def test_csv_determinism(self, star_file, tmp_path, capsys):
        ops = self.write_ops(tmp_path, [
            {"op": "extend", "edge": "e1", "amount": 0.3},
        ])
        argv = ["surgery", star_file, ops, "--csv"]
        assert main(argv) == 0
        first = capsys.readouterr().out
        assert main(argv) == 0
        assert first == capsys.readouterr().out
        assert first.startswith("# method=edge\nstep,op,lambda_1")

    def test_unknown_op_exits_2(self, star_file, tmp_path, capsys):
        ops = self.write_ops(tmp_path, [{"op": "teleport"}])
        assert main(["surgery", star_file, ops]) == 2
        assert "unknown op" in capsys.readouterr().err

    def test_malformed_op_entry_exits_2(self, star_file, tmp_path, capsys):
        ops = self.write_ops(tmp_path, [{"op": "extend", "edge": "e1"}])
        assert main(["surgery", star_file, ops]) == 2

    def test_non_list_ops_exits_2(self, star_file, tmp_path, capsys):
        p = tmp_path / "ops.json"
        p.write_text('{"op": "extend"}')
        assert main(["surgery", star_file, str(p)]) == 2

    def test_illegal_op_exits_2(self, star_file, tmp_path, capsys):
        # transplanting more than the edge holds
        ops = self.write_ops(tmp_path, [
            {"op": "transplant", "from_edge": "e1", "to_edge": "e2",
             "amount": 5.0},
        ])
        assert main(["surgery", star_file, ops]) == 2


class TestVerify:
    def test_star_ladder_report(self, tmp_path, capsys):
        out_dir = str(tmp_path / "reports")
        assert main(["verify", "star-ladder", "--out", out_dir]) == 0
        stdout = capsys.readouterr().out
        assert stdout.startswith("star-ladder:")
        path = stdout.rsplit("-> ", 1)[1].strip()
        doc = json.loads(open(path).read())
        assert doc["summary"] == {"pass": len(doc["cases"])}
        assert os.path.exists(path[:-5] + ".csv")

    def test_report_content_deterministic(self, tmp_path, capsys):
        # filenames carry a timestamp, but the JSON content must match
        docs = []
        for sub in ("a", "b"):
            out_dir = str(tmp_path / sub)
            assert main(["verify", "star-ladder", "--out", out_dir]) == 0
            path = capsys.readouterr().out.rsplit("-> ", 1)[1].strip()
            docs.append(open(path).read())
        assert docs[0] == docs[1]

    def test_unknown_suite_exits_2(self, capsys):
        assert main(["verify", "does-not-exist"]) == 2
        err = capsys.readouterr().err
        assert "unknown suite" in err and "star-ladder" in err

    def test_failing_suite_exits_3(self, tmp_path, monkeypatch, capsys):
        import qgraph.cli as cli_mod
        from qgraph.experiments import CaseResult, Report

        fake = dict(cli_mod.SUITES)
        fake["broken"] = lambda seed: Report(
            "broken", seed, [CaseResult("x", "fail", -1.0)])
        monkeypatch.setattr(cli_mod, "SUITES", fake)
        code = main(["verify", "broken", "--out", str(tmp_path)])
        captured = capsys.readouterr()
        assert code == 3
        assert "fail: x" in captured.err


class TestSweep:
    def test_stdout_csv(self, capsys):
        assert main(["sweep", "figure8", "--grid", "0.5:1.5:3"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("# family=figure8")
        rows = out.strip().split("\n")[2:]
        assert len(rows) == 3
        for row in rows:
            assert float(row.split(",")[1]) == pytest.approx(-1.0, abs=1e-9)

    def test_out_file_determinism(self, tmp_path, capsys):
        texts = []
        for name in ("s1.csv", "s2.csv"):
            out = str(tmp_path / name)
            assert main(["sweep", "neumann_star", "--grid", "0.5:2.0:4",
                         "--edges", "3", "--out", out]) == 0
            capsys.readouterr()
            texts.append(open(out).read())
        assert texts[0] == texts[1]
        assert texts[0].startswith("# family=neumann_star,n=3,limit=-3.0")

    def test_unknown_family_exits_2(self, capsys):
        assert main(["sweep", "moebius", "--grid", "1:2:3"]) == 2

    def test_bad_grid_exits_2(self, capsys):
        assert main(["sweep", "figure8", "--grid", "1:2"]) == 2
        assert main(["sweep", "figure8", "--grid", "2:1:5"]) == 2
