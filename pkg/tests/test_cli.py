import io
import json

import pytest

from toricdegen import cli

P2 = [[1, 0], [0, 1], [-1, -1]]
CONIC = {"vertices": P2, "parts": [[[1, 0], [0, 1]], [[-1, -1]]]}
P2_TORIC = {"vertices": P2, "parts": [[0, 1, 2]]}
QUADRIC = {"vertices": [[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, -1, -1]], "parts": [[0, 1], [2, 3]]}


def run(argv):
    buf = io.StringIO()
    code = cli.main(argv, stdout=buf)
    return code, buf.getvalue()


def run_json(argv):
    code, text = run(argv)
    return code, json.loads(text)


@pytest.fixture
def write(tmp_path):
    def _write(data, name="in.json"):
        p = tmp_path / name
        p.write_text(json.dumps(data))
        return str(p)
    return _write


def test_degenerate_conic(write):
    code, out = run_json(["degenerate", write(CONIC)])
    assert code == 0
    assert out["binomials"] == ["x1*x2 - x3^2"]
    assert out["command"] == "degenerate" and out["seed"] == 0


def test_lg_p2(write):
    code, out = run_json(["lg", write(P2_TORIC)])
    assert code == 0
    assert out["potential"] == "x1^-1*x2^-1 + x2 + x1"


def test_lg_conic(write):
    code, out = run_json(["lg", write(CONIC)])
    assert code == 0 and out["newton_equals_delta"]
    assert out["potential"] == "x2^-1 + 2 + x2"


def test_verify_and_find(write):
    code, out = run_json(["verify-nef", write(QUADRIC)])
    assert code == 0 and out["verified"]
    code, out = run_json(["find-amenable", write(QUADRIC), "--bound", "3"])
    assert code == 0 and out["count"] == 3


def test_mutate_quadric(write):
    code, out = run_json(["mutate", write(QUADRIC), "--bound", "3", "--seed", "5"])
    assert code == 0 and out["seed"] == 5


def test_flag_lg():
    code, out = run_json(["flag-lg", "--dims", "1,2,5"])
    assert code == 0
    assert len(out["black"]) == 7 and out["verified"]


def test_ckp_cubic(write):
    path = write({"vertices": [[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, -1, -1]]})
    code, out = run_json(["ckp", "--polytope", path, "--E", "e4", "--S", "e1,e2,e3"])
    assert code == 0 and out["equivalent"]
    assert out["pivots"] == [1]


def test_bad_input(write, tmp_path):
    code, out = run_json(["lg", str(tmp_path / "missing.json")])
    assert code == 2 and "error" in out
    code, _ = run_json(["flag-lg", "--dims", "2,1,4"])
    assert code == 2


def test_non_nef_rejected(write):
    pent = {"vertices": [[1, 0], [0, 1], [-1, 0], [0, -1], [1, 1]], "parts": [[[1, 1]], [0, 1, 2, 3]]}
    code, out = run_json(["verify-nef", write(pent)])
    assert code == 2


def test_invariant_exit(write, monkeypatch):
    monkeypatch.setattr(cli, "check_newton_equals_deltaV", lambda *a, **k: False)
    code, out = run_json(["lg", write(CONIC)])
    assert code == 3 and "error" in out


def test_deterministic(write):
    path = write(QUADRIC)
    first = run(["mutate", path, "--bound", "3"])
    assert first == run(["mutate", path, "--bound", "3"])


def test_text_output(write):
    code, text = run(["degenerate", write(CONIC), "--out", "text"])
    assert code == 0
    assert "x1*x2 - x3^2" in text
    assert "seed: 0" in text
