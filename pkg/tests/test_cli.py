import json
import shutil

import pytest

from viewmetric.cli import main
from viewmetric.data import load_csv


def run(*argv):
    return main([str(a) for a in argv])


@pytest.fixture
def roll(tmp_path):
    path = tmp_path / "roll.csv"
    assert run("gen", "--dataset", "swiss-roll", "--n", 1500, "--noise", 0, "--seed", 7,
               "--out", path) == 0
    return path


def test_gen_swiss_roll(roll):
    lines = roll.read_text().splitlines()
    assert lines[0] == "x,y,z,t" and len(lines) == 1501
    ds = load_csv(roll, has_header=True, t_column="t")
    assert (ds.n, ds.m) == (1500, 3)


def test_gen_json(tmp_path):
    out = tmp_path / "s.json"
    assert run("gen", "--dataset", "s-curve", "--n", 5, "--format", "json", "--out", out) == 0
    doc = json.loads(out.read_text())
    assert len(doc["points"]) == 5 and len(doc["t"]) == 5


def test_kmeans_labels(roll, tmp_path):
    out = tmp_path / "labels.csv"
    assert run("kmeans", "--input", roll, "--k", 8, "--metric", "view", "--seed", 7,
               "--restarts", 2, "--out", out) == 0
    ds = load_csv(out, label_column="label", has_header=True)
    assert ds.n == 1500
    assert ds.labels.min() >= 0 and ds.labels.max() < 8


def test_kmeans_json(tmp_path):
    data = tmp_path / "d.csv"
    data.write_text("a,b\n0,0\n0,1\n10,0\n10,1\n")
    out = tmp_path / "k.json"
    assert run("kmeans", "--input", data, "--k", 2, "--format", "json", "--out", out) == 0
    doc = json.loads(out.read_text())
    assert doc["labels"][0] == doc["labels"][1] != doc["labels"][2]
    assert sorted(doc["centroids"]) == [[0.0, 0.5], [10.0, 0.5]]


def test_knn_loo(iris_path, tmp_path):
    out = tmp_path / "knn.json"
    assert run("knn", "--input", iris_path, "--k", 5, "--out", out) == 0
    doc = json.loads(out.read_text())
    assert doc["protocol"] == "leave-one-out"
    assert abs(doc["accuracy"] - 0.98) <= 0.03


def test_knn_csv_loadable(iris_path, tmp_path):
    out = tmp_path / "knn.csv"
    assert run("knn", "--input", iris_path, "--protocol", "kfold", "--format", "csv",
               "--out", out) == 0
    ds = load_csv(out, has_header=True)
    assert ds.feature_names == ("accuracy", "n_correct", "n_total")


def test_knn_query(tmp_path):
    train = tmp_path / "train.csv"
    train.write_text("x,y,label\n0,0,0\n10,10,1\n")
    query = tmp_path / "q.csv"
    query.write_text("x,y\n1,1\n9,9\n")
    out = tmp_path / "pred.json"
    assert run("knn", "--input", train, "--k", 1, "--query", query, "--format", "json",
               "--out", out) == 0
    assert json.loads(out.read_text())["labels"] == [0, 1]


def test_eval(tmp_path):
    truth = tmp_path / "t.csv"
    pred = tmp_path / "p.csv"
    truth.write_text("label\n0\n0\n1\n1\n")
    pred.write_text("label\n1\n1\n0\n0\n")
    out = tmp_path / "e.json"
    assert run("eval", "--truth", truth, "--pred", pred, "--out", out) == 0
    text = out.read_text()
    doc = json.loads(text)
    assert set(doc) == {"ari", "homogeneity", "completeness", "v_measure", "ami", "fmi",
                        "best_map_accuracy"}
    assert all(v == 1.0 for v in doc.values())
    assert '"ari": 1.000000' in text


def test_eval_crossed(tmp_path):
    truth = tmp_path / "t.csv"
    pred = tmp_path / "p.csv"
    truth.write_text("0\n0\n1\n1\n")
    pred.write_text("0\n1\n0\n1\n")
    out = tmp_path / "e.json"
    assert run("eval", "--truth", truth, "--pred", pred, "--no-header", "--out", out) == 0
    assert json.loads(out.read_text())["ari"] == -0.5


def test_distmat(tmp_path):
    data = tmp_path / "p.csv"
    data.write_text("1,2,3\n0,0,0\n")
    out = tmp_path / "r.json"
    assert run("distmat", "--input", data, "--no-header", "--out", out) == 0
    doc = json.loads(out.read_text())
    assert doc["positive_count_view"] == 1
    assert doc["rho_view"] == pytest.approx(9.003896913132158, rel=1e-12)


def test_distmat_refuses_large(tmp_path, roll):
    big = tmp_path / "big.csv"
    assert run("gen", "--dataset", "s-curve", "--n", 2001, "--out", big) == 0
    assert run("distmat", "--input", big) == 1


def test_contour(tmp_path):
    out = tmp_path / "c.csv"
    assert run("contour", "--dim", 3, "--fixed", "2=0", "--steps", 5, "--out", out) == 0
    ds = load_csv(out, has_header=True)
    assert ds.n == 25 and ds.feature_names == ("u", "v", "distance")
    origin = ds.points[(ds.points[:, 0] == 0) & (ds.points[:, 1] == 0)]
    assert origin[0, 2] == 0.0


@pytest.mark.parametrize("argv", [
    ["frobnicate"],
    ["gen", "--dataset", "swiss-roll", "--bogus"],
    ["kmeans"],
    ["contour", "--fixed", "nonsense"],
    ["contour", "--dim", "3"],
    [],
])
def test_usage_errors(argv):
    assert main(argv) == 1


def test_data_errors(tmp_path):
    assert run("kmeans", "--input", tmp_path / "missing.csv", "--k", 2) == 2
    bad = tmp_path / "bad.csv"
    bad.write_text("a,b\n1,2\n3\n")
    assert run("kmeans", "--input", bad, "--k", 1) == 2
    unlabelled = tmp_path / "u.csv"
    unlabelled.write_text("a,b\n1,2\n3,4\n")
    assert run("knn", "--input", unlabelled) == 2


def test_numerical_failure_exit_code(tmp_path, monkeypatch):
    import viewmetric.cli as cli
    from viewmetric.spectral import ConvergenceError

    def boom(*a, **k):
        raise ConvergenceError("no convergence")

    monkeypatch.setattr(cli, "spectral_report", boom)
    data = tmp_path / "p.csv"
    data.write_text("1,2\n0,0\n")
    assert run("distmat", "--input", data, "--no-header") == 3


def test_repeat_runs_byte_identical(roll, tmp_path):
    for argv in (["kmeans", "--input", roll, "--k", 8, "--seed", 3, "--restarts", 2],
                 ["kmeans", "--input", roll, "--k", 8, "--format", "json", "--restarts", 2],
                 ["gen", "--dataset", "s-curve", "--n", 300, "--noise", 0.1, "--seed", 2]):
        a, b = tmp_path / "a.out", tmp_path / "b.out"
        assert run(*argv, "--out", a) == 0
        assert run(*argv, "--out", b) == 0
        assert a.read_bytes() == b.read_bytes()


def test_bench_iris_reference(iris_path, tmp_path):
    data = tmp_path / "uci"
    data.mkdir()
    shutil.copy(iris_path, data / "iris.csv")
    out = tmp_path / "bench.json"
    assert run("bench", "--suite", "table2", "--data-dir", data, "--restarts", 2,
               "--quiet", "--out", out) == 0
    report = json.loads(out.read_text())
    iris = [r for r in report["rows"] if r["dataset"] == "iris"]
    assert iris and all(r["status"] == "ok" for r in iris)
    km = [r for r in iris if r["algorithm"] == "kmeans"]
    assert km and all(r["paper_reference"] == 0.9667 for r in km)
    missing = [r for r in report["rows"] if r["status"] == "missing"]
    assert {r["dataset"] for r in missing} == {"breast", "seeds", "glass", "wine", "titanic",
                                                "yeast", "wdbc"}
    assert all(r["measured"] is None for r in missing)


def test_bench_table3_csv(iris_path, tmp_path):
    data = tmp_path / "uci"
    data.mkdir()
    shutil.copy(iris_path, data / "iris.csv")
    out = tmp_path / "bench.csv"
    assert run("bench", "--suite", "table3", "--data-dir", data, "--restarts", 2,
               "--quiet", "--format", "csv", "--out", out) == 0
    assert out.read_text().startswith("dataset,")
