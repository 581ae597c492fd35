from __future__ import annotations

import json
import subprocess
import sys

import pytest

from ballspace.bundled import load_bundled
from ballspace.cli import main
from ballspace.io import point_from_json, scalar_from_json
from ballspace.shooting import shooting_gap


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_dist(capsys):
    code, out = run(capsys, "dist", "@diamond", "S", "rW@4")
    assert code == 0 and json.loads(out)["distance"] == "6"


def test_hausdorff_balls(capsys):
    code, out = run(capsys, "hausdorff", "@diamond", "--balls", "W", "1", "E", "1")
    assert code == 0 and json.loads(out) == {"hausdorff": "4", "taxicab": "4"}
    code, out = run(capsys, "hausdorff", "@circle", "--balls", "0", "pi", "1", "pi")
    assert code == 0 and json.loads(out)["hausdorff"] == 0


def test_hausdorff_sets(capsys, tmp_path):
    a = tmp_path / "a.json"
    a.write_text(json.dumps({"edges": {"PO": [["0", "1"]]}}))
    code, out = run(capsys, "hausdorff", "@bent_line", "--sets", f"@{a}", '{"rays": {"r": [["0", "1"]]}}')
    assert code == 0 and json.loads(out)["hausdorff"] == "1"


def test_sphere_csv(capsys):
    code, out = run(capsys, "sphere", "@diamond", "WN@1", "5", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "point" and len(out.splitlines()) == 3


def test_shoot_point_witness_round_trip(capsys):
    code, out = run(capsys, "shoot", "point", "@diamond", "N")
    assert code == 1
    doc = json.loads(out)
    g = load_bundled("diamond")
    y = point_from_json(g, doc["witness"]["y"])
    r = scalar_from_json(doc["witness"]["r"])
    assert shooting_gap(g, point_from_json(g, doc["point"]), y, r) == scalar_from_json(doc["witness"]["gap"])
    code, _ = run(capsys, "shoot", "point", "@diamond", "E")
    assert code == 0


def test_shoot_space(capsys):
    code, out = run(capsys, "shoot", "space", "@chain")
    assert code == 1
    holds = [v["point"] for v in json.loads(out)["verdicts"] if v["verdict"] == "holds"]
    assert holds == [{"vertex": "J0"}, {"vertex": "J1"}, {"vertex": "J2"}]
    code, _ = run(capsys, "shoot", "space", "@line_graph")
    assert code == 0


def test_shoot_witness(capsys):
    code, out = run(capsys, "shoot", "witness", "@euclidean2", "[0, 0]", "[1, 0]", "2")
    assert code == 0 and json.loads(out)["witness"] == [-2.0, 0.0]
    code, out = run(capsys, "shoot", "witness", "@circle", "0", "pi", "1")
    assert code == 1 and json.loads(out)["witness"] is None


def test_sigma_verify_exit_codes(capsys):
    assert run(capsys, "sigma", "verify", "@line_graph", "--samples", "30")[0] == 0
    code, out = run(capsys, "sigma", "verify", "@diamond", "--samples", "30")
    assert code == 1 and json.loads(out)["lipschitz"] is True


def test_deterministic_output(capsys):
    a = run(capsys, "sigma", "verify", "@chain", "--samples", "20", "--seed", "5", "--format", "csv")
    b = run(capsys, "sigma", "verify", "@chain", "--samples", "20", "--seed", "5", "--format", "csv")
    assert a == b


def test_constructor_commands(capsys):
    assert run(capsys, "product", "check", "@product_linf", "--samples", "20")[0] == 0
    assert run(capsys, "product", "check", "@product_l2", "--samples", "20")[0] == 0
    assert run(capsys, "quotient", "check", "@chain_mirror", "--samples", "20")[0] == 0
    assert run(capsys, "family", "check", "@diamond_family", "--samples", "10")[0] == 0


def test_lift(capsys):
    from ballspace.bundled import bundled_path

    iso = bundled_path("diamond_swap.iso")
    assert run(capsys, "lift", "@diamond", "--iso", str(iso), "--samples", "10")[0] == 0


def test_oracle_compare(capsys):
    code, out = run(capsys, "oracle", "compare", "@bent_line", "--eps", "1/8", "--samples", "5",
                    "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "operation,input_digest,exact,oracle,bound,pass"


@pytest.mark.parametrize("argv", [
    ["dist", "@nosuch", "a", "b"],
    ["dist", "@diamond", "Z", "N"],
    ["ball", "@diamond", "N", "-1"],
    ["shoot", "point", "@euclidean2", "[0, 0]"],
    ["frobnicate"],
    ["dist", "/no/such/file.json", "a", "b"],
])
def test_usage_errors(capsys, argv):
    assert main(argv) == 2


def test_malformed_json_file(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"space": {"kind": "graph",\n  "vertices": [}}')
    assert main(["dist", str(bad), "a", "b"]) == 2
    assert "line 2" in capsys.readouterr().err


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "ballspace.cli", "dist", "@line", "0", "3/2"],
                         capture_output=True, text=True, check=True).stdout
    assert json.loads(out)["distance"] == "3/2"
