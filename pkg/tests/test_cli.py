import json

import pytest

import config
import hindlab_main
from helpers import suites
from helpers.actions import sphere_action
from helpers.formats import action_document, graph_document, hypergraph_document
from helpers.graphs import cycle, petersen
from helpers.hypergraphs import kneser_hypergraph


@pytest.fixture(autouse=True)
def keep_signal_handlers(monkeypatch):
    monkeypatch.setattr(hindlab_main.signal, "signal", lambda *args: None)
    monkeypatch.setattr(hindlab_main, "shutdown_requested", False)


def _write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc), encoding="utf-8")
    return str(path)


def test_hind_of_two_sphere(tmp_path, capsys):
    path = _write(tmp_path, "s2.json", action_document(sphere_action(2)))
    assert hindlab_main.main(["hind", path]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report == {"dim": 2, "hind": 2, "ind_bracket": [2, 2], "p": 2, "vanishing": [False, False, False]}


def test_hind_as_tsv(tmp_path, capsys):
    path = _write(tmp_path, "s1.json", action_document(sphere_action(1)))
    assert hindlab_main.main(["hind", path, "--format", "tsv"]) == 0
    assert capsys.readouterr().out == "dim\thind\tind_bracket\tp\tvanishing\n1\t1\t1,1\t2\tfalse,false\n"


def test_malformed_json_exits_1(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{\"complex\": ", encoding="utf-8")
    assert hindlab_main.main(["hind", str(path)]) == 1
    assert "ParseError" in capsys.readouterr().err


def test_missing_input_exits_1(capsys):
    assert hindlab_main.main(["hind"]) == 1
    assert "needs an input file" in capsys.readouterr().err


def test_non_free_action_exits_2(tmp_path, capsys):
    doc = {"complex": {"labels": [0, 1], "maximal_faces": [[0, 1]]}, "p": 2, "generator": [1, 0]}
    assert hindlab_main.main(["hind", _write(tmp_path, "edge.json", doc)]) == 2
    assert "NotFree" in capsys.readouterr().err


def test_graph_over_vertex_cap_exits_3(tmp_path, capsys):
    path = _write(tmp_path, "c30.json", graph_document(cycle(30)))
    assert hindlab_main.main(["graph-bound", path]) == 3
    assert "vertex_cap" in capsys.readouterr().err


def test_vertex_cap_flag_lifts_the_cap(tmp_path):
    path = _write(tmp_path, "c30.json", graph_document(cycle(30)))
    hindlab_main.main(["graph-bound", path, "--vertex-cap", "30"])
    assert config.vertex_cap == 30


def test_graph_bound_of_odd_cycle(tmp_path, capsys):
    path = _write(tmp_path, "c5.json", graph_document(cycle(5)))
    assert hindlab_main.main(["graph-bound", path]) == 0
    assert json.loads(capsys.readouterr().out) == {"chi": 3, "gap": 0, "h_chi": 3}


@pytest.mark.slow
def test_graph_bound_of_petersen(tmp_path, capsys):
    path = _write(tmp_path, "petersen.json", graph_document(petersen()))
    assert hindlab_main.main(["graph-bound", path]) == 0
    assert json.loads(capsys.readouterr().out)["gap"] == 0


def test_hyper_bound(tmp_path, capsys):
    path = _write(tmp_path, "kg.json", hypergraph_document(kneser_hypergraph(4, 1, 3)))
    assert hindlab_main.main(["hyper-bound", path, "--r", "3"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["p"] == 3
    assert report["chi"] == 2
    assert report["gap"] == report["chi"] - report["afl_bound"] >= 0


def test_hyper_bound_needs_p_equal_r(tmp_path, capsys):
    path = _write(tmp_path, "kg.json", hypergraph_document(kneser_hypergraph(4, 1, 3)))
    assert hindlab_main.main(["hyper-bound", path, "--p", "2", "--r", "3"]) == 2
    assert "BadR" in capsys.readouterr().err


def test_hyper_bound_defaults_to_edges_of_size_2(tmp_path, capsys):
    path = _write(tmp_path, "h.json", {"n": 2, "edges": [[0, 1]]})
    assert hindlab_main.main(["hyper-bound", path]) == 0
    assert json.loads(capsys.readouterr().out)["chi"] == 2


def test_usage_errors_exit_1():
    for argv in ([], ["frobnicate"], ["verify", "--dim-cap", "0"], ["hind", "--format", "xml"]):
        with pytest.raises(SystemExit) as excinfo:
            hindlab_main.main(argv)
        assert excinfo.value.code == 1


def test_version_exits_0(capsys):
    with pytest.raises(SystemExit) as excinfo:
        hindlab_main.main(["--version"])
    assert excinfo.value.code == 0
    assert "1.0.0" in capsys.readouterr().out


def test_unknown_suite_exits_1(capsys):
    assert hindlab_main.main(["verify", "--suite", "nope"]) == 1
    assert "UnknownSuite" in capsys.readouterr().err


def test_verify_exit_status_follows_the_suite(monkeypatch, capsys):
    monkeypatch.setitem(suites.SUITES, "ok", lambda seed: [("one", lambda: suites._equal(1, 1))])
    monkeypatch.setitem(suites.SUITES, "bad", lambda seed: [("one", lambda: suites._equal(1, 2))])

    assert hindlab_main.main(["verify", "--suite", "ok"]) == 0
    captured = capsys.readouterr()
    report = json.loads(captured.out)
    assert report["passed"] is True
    assert report["suite"] == "ok"
    assert report["rows"][0]["check"] == "ok/one"
    assert "Suite Summary" in captured.err

    assert hindlab_main.main(["verify", "--suite", "bad", "--format", "tsv"]) == 2
    assert capsys.readouterr().out.startswith("check\texpected\tgot\tpassed\tskipped\n")


def test_one_of_p_and_r_sets_both():
    parser = hindlab_main.build_parser()
    run = hindlab_main.apply_cli_args(parser.parse_args(["hyper-bound", "x.json", "--r", "3", "--seed", "7"]))
    assert (run.p, run.r, run.seed) == (3, 3, 7)
    assert config.seed == 7


def test_health_check(capsys):
    assert hindlab_main.main(["--health-check"]) == 0
    assert "All health checks passed" in capsys.readouterr().out
