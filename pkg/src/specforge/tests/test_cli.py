import csv
import json

import pytest

from specforge.core.config import settings
from specforge.main import main

QUARTER_CANTOR = ["--ladder", "2", "--repeat", "48", "--type", "II", "--level", "4"]
FAST = ["--window", "64", "--grid", "21", "--trunc", "24", "--threads", "2", "--json-only"]


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_decompose_type1(capsys):
    code, report = run(capsys, "decompose", "--ladder", "2,2", "--type", "I", "--tail", "even", "--json-only")
    assert code == 0
    odd, even = report["outputs"]["odd"], report["outputs"]["even"]
    assert [a["pos"] for a in odd["discrete"]["atoms"]] == [["0"], ["1/2"]]
    assert odd["tail"] is None
    assert even["tail"]["length"] == "1/4"
    assert even["spectrum"] == {"base": [0, 2], "period": 4, "dim": 1}
    assert report["results"][0]["name"] == "factor_chain"


def test_decompose_is_deterministic(capsys):
    argv = ["decompose", *QUARTER_CANTOR, "--json-only"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    assert capsys.readouterr().out == first


@pytest.mark.parametrize(
    "argv",
    [
        ["decompose", "--ladder", "2,1", "--type", "II"],
        ["decompose", "--ladder", "2,x", "--type", "II"],
        ["decompose", "--ladder", "2,2,2", "--type", "I", "--tail", "odd"],
        ["decompose", "--ladder", "2,2", "--type", "I"],
    ],
)
def test_malformed_pairs_exit_2(capsys, argv):
    code, report = run(capsys, *argv, "--json-only")
    assert code == 2
    assert report["exit_code"] == 2


def test_verify_quarter_cantor(capsys):
    code, report = run(capsys, "verify", *QUARTER_CANTOR, *FAST)
    assert code == 0
    assert all(r["passed"] for r in report["results"])
    assert report["inputs"]["window"] == 64


def test_verify_type1(capsys):
    code, _ = run(capsys, "verify", "--ladder", "3,2", "--type", "I", "--tail", "odd", *FAST)
    assert code == 0


def test_verify_wrong_spectrum_exit_1(capsys, tmp_path):
    path = tmp_path / "spectrum.json"
    path.write_text(json.dumps({"base": [0, 2, 4, 6], "period": None, "dim": 1}))
    code, report = run(capsys, "verify", *QUARTER_CANTOR, *FAST, "--spectrum-file", str(path))
    assert code == 1
    assert not all(r["passed"] for r in report["results"])


def test_verify_unreadable_spectrum_exit_2(capsys, tmp_path):
    code, _ = run(capsys, "verify", *QUARTER_CANTOR, *FAST, "--spectrum-file", str(tmp_path / "missing.json"))
    assert code == 2


def test_verify_respects_cap(capsys, monkeypatch):
    monkeypatch.setattr(settings, "max_n", 100)
    code, report = run(capsys, "verify", *QUARTER_CANTOR, *FAST)
    assert code == 2
    assert "cap" in report["results"][0]["detail"]


def test_factor_sets(capsys):
    code, report = run(capsys, "factor-sets", "--A", "0,1,4,5", "--B", "0,2", "--json-only")
    assert code == 0
    assert report["outputs"]["ladder"] == [2, 2, 2]
    assert report["outputs"]["first_side"] == "A"
    assert report["inputs"]["n"] == 8


def test_factor_sets_invalid_exit_2(capsys):
    code, _ = run(capsys, "factor-sets", "--A", "0,1", "--B", "0,1", "--json-only")
    assert code == 2


def test_factor_measures(capsys, tmp_path):
    path = tmp_path / "pair.json"
    path.write_text(json.dumps({
        "p": {"atoms": [{"pos": ["0"], "w": "1/2"}, {"pos": ["1/4"], "w": "1/2"}]},
        "q": {"atoms": [{"pos": ["0"], "w": "1/2"}, {"pos": ["1/2"], "w": "1/2"}]},
    }))
    code, report = run(capsys, "factor-measures", "--file", str(path), "--json-only")
    assert code == 0
    assert report["outputs"] == {"ladder": [2, 2], "first_side": "p", "labels": ["q", "p"]}


def test_factor_measures_float_weight_exit_2(capsys, tmp_path):
    path = tmp_path / "pair.json"
    path.write_text(json.dumps({
        "p": {"atoms": [{"pos": [0], "w": 0.5}, {"pos": ["1/4"], "w": "1/2"}]},
        "q": {"atoms": [{"pos": [0], "w": 1}]},
    }))
    code, _ = run(capsys, "factor-measures", "--file", str(path), "--json-only")
    assert code == 2


def test_enumerate_pairs(capsys):
    code, report = run(capsys, "enumerate-pairs", "--n", "4", "--json-only")
    assert code == 0
    assert report["outputs"]["count"] == 4


def test_enumerate_pairs_above_limit(capsys):
    code, _ = run(capsys, "enumerate-pairs", "--n", "1000", "--json-only")
    assert code == 2


def test_tile_extract(capsys):
    code, report = run(capsys, "tile-extract", "--omega", "101", "--q", "1111", "--json-only")
    assert code == 0
    assert report["outputs"]["offsets"] == ["0", "1"]
    assert report["outputs"]["count"] == 2


def test_tile_extract_no_tiling_exit_1(capsys):
    code, _ = run(capsys, "tile-extract", "--omega", "11", "--q", "111", "--m", "2", "--json-only")
    assert code == 1


def test_tile_extract_bad_bits_exit_2(capsys):
    code, _ = run(capsys, "tile-extract", "--omega", "1a", "--q", "11", "--json-only")
    assert code == 2


def test_qplot_csv(capsys, tmp_path):
    out = tmp_path / "q.csv"
    argv = ["qplot", "--ladder", "2", "--repeat", "48", "--type", "II", "--level", "6",
            "--k-max", "3", "--grid", "11", "--json-only", "--out", str(out)]
    code, report = run(capsys, *argv)
    assert code == 0
    rows = list(csv.reader(out.open()))
    assert rows[0] == ["xi", "Q_1", "bound_1", "Q_2", "bound_2", "Q_3", "bound_3"]
    assert len(rows) == 12
    assert [r["name"] for r in report["results"]] == ["q_upper", "q_monotone", "q_gap"]

    first = out.read_bytes()
    assert main(argv) == 0
    capsys.readouterr()
    assert out.read_bytes() == first


def test_qplot_type1_is_exact(capsys, tmp_path):
    out = tmp_path / "q.csv"
    code, report = run(capsys, "qplot", "--ladder", "2,2", "--type", "I", "--tail", "even", "--side", "even",
                       "--grid", "11", "--json-only", "--out", str(out))
    assert code == 0
    assert report["results"][-1]["name"] == "q_exact"


def test_qplot_bad_grid_exit_2(capsys, tmp_path):
    code, _ = run(capsys, "qplot", *QUARTER_CANTOR, "--grid", "0", "--json-only", "--out", str(tmp_path / "q.csv"))
    assert code == 2


def test_ft_grid(capsys, tmp_path):
    out = tmp_path / "ft.csv"
    code, report = run(capsys, "ft-grid", *QUARTER_CANTOR, "--grid", "5", "--json-only", "--out", str(out))
    assert code == 0
    rows = list(csv.reader(out.open()))
    assert rows[0] == ["xi", "re", "im", "abs", "bound"]
    assert [float(r[0]) for r in rows[1:]] == [-10.0, -5.0, 0.0, 5.0, 10.0]
    assert float(rows[3][3]) == pytest.approx(1.0)
    assert report["outputs"]["rows"] == 5


def test_decompose_empty_ladder(capsys):
    code, report = run(capsys, "decompose", "--ladder", "", "--type", "I", "--tail", "even", "--json-only")
    assert code == 0
    assert report["outputs"]["odd"]["discrete"]["atoms"] == [{"pos": ["0"], "w": "1"}]
    assert report["outputs"]["even"]["tail"]["length"] == "1"
    assert report["outputs"]["even"]["spectrum"] == {"base": [0], "period": 1, "dim": 1}
