import csv
import io
import json
from pathlib import Path

import pytest

from cvstokes.cli import main
from cvstokes.profiles import read_pgm

SCEN = Path(__file__).resolve().parent.parent / "scenarios"


def _rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_criterion_csv(capsys):
    assert main(["criterion", str(SCEN / "bright_polarization.json")]) == 0
    rows = _rows(capsys.readouterr().out)
    assert len(rows) == 12
    row = next(r for r in rows if (r["sigma"], r["rho"]) == ("2", "3"))
    assert float(row["value"]) == pytest.approx(0.567667, abs=1e-3)
    assert row["violated"] == "true"
    assert float(row["implied_eta"]) == pytest.approx(0.38414, abs=1e-4)
    assert float(row["predicted_db"]) == pytest.approx(-1.599, abs=0.01)


def test_criterion_json_to_file(tmp_path):
    out = tmp_path / "c.json"
    code = main(["--format", "json", "--out", str(out), "criterion", str(SCEN / "equal_intensity.json")])
    assert code == 0
    data = json.loads(out.read_text())
    row = next(r for r in data if (r["sigma"], r["rho"]) == (1, 3))
    assert row["value"] == pytest.approx(0.866022, abs=1e-6)


def test_flags_after_subcommand(tmp_path):
    out = tmp_path / "c.csv"
    assert main(["criterion", str(SCEN / "equal_intensity.json"), "--out", str(out)]) == 0
    assert len(_rows(out.read_text())) == 12


def test_degenerate_exit_codes(capsys):
    assert main(["criterion", str(SCEN / "vacuum.json")]) == 3
    assert "below 1e-12" in capsys.readouterr().err
    # partially degenerate tables pass unless --strict
    assert main(["criterion", str(SCEN / "oracle_small.json")]) == 0
    capsys.readouterr()


def test_strict_flags_partial_degeneracy(tmp_path, capsys):
    p = tmp_path / "s.json"
    p.write_text(json.dumps({"r": 0.0, "v0": 0.0, "network": {"m": 2}}))
    assert main(["criterion", str(p)]) == 0
    assert main(["criterion", str(p), "--strict"]) == 3
    capsys.readouterr()


def test_bad_input_exit_2(tmp_path, capsys):
    assert main(["criterion", str(tmp_path / "missing.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert main(["criterion", str(bad)]) == 2
    assert "error" in capsys.readouterr().err
    with pytest.raises(SystemExit) as info:
        main(["nonsense"])
    assert info.value.code == 2


def test_sweep(capsys):
    code = main(["sweep", str(SCEN / "bright_polarization.json"), "--param", "r",
                 "--from", "0.5", "--to", "1.0", "--steps", "2"])
    assert code == 0
    rows = _rows(capsys.readouterr().out)
    assert len(rows) == 24
    assert {r["param_value"] for r in rows} == {"0.5", "1"}


def test_sweep_needs_range(capsys):
    assert main(["sweep", str(SCEN / "equal_intensity.json")]) == 2
    assert main(["sweep", str(SCEN / "equal_intensity.json"), "--param", "r"]) == 2
    capsys.readouterr()


def test_sweep_from_file(capsys):
    assert main(["sweep", str(SCEN / "unsqueezed_bright.json")]) == 0
    assert len(_rows(capsys.readouterr().out)) == 21 * 12


def test_oracle_check(tmp_path, capsys):
    out = tmp_path / "o.json"
    code = main(["--format", "json", "--out", str(out), "oracle-check", str(SCEN / "oracle_small.json")])
    assert code == 0
    assert json.loads(out.read_text())[0]["passed"]
    assert "1/1 scenarios passed" in capsys.readouterr().out


def test_oracle_check_failure_and_truncation(tmp_path, capsys):
    assert main(["--tolerance", "1e-15", "oracle-check", str(SCEN / "oracle_small.json")]) == 4
    big = tmp_path / "big.json"
    big.write_text(json.dumps({"r": 1.5, "v0": 2, "network": {"m": 8}}))
    assert main(["oracle-check", str(big), "--dim", "8"]) == 5
    capsys.readouterr()


def test_pipeline_defaults(capsys):
    assert main(["pipeline"]) == 0
    cap = capsys.readouterr()
    row = _rows(cap.out)[0]
    assert float(row["predicted_db"]) == pytest.approx(-1.599, abs=0.01)
    assert float(row["implied_eta"]) == pytest.approx(0.38414, abs=1e-4)
    assert "gap" in cap.err


def test_pipeline_from_scenario(capsys):
    assert main(["pipeline", str(SCEN / "bright_polarization.json")]) == 0
    assert main(["pipeline", str(SCEN / "vacuum.json")]) == 2
    capsys.readouterr()


@pytest.mark.parametrize("binary", [False, True])
def test_render(tmp_path, capsys, binary):
    out = tmp_path / "az.pgm"
    args = ["--out", str(out), "render", "azimuthal", "--samples", "64"]
    assert main(args + (["--binary"] if binary else [])) == 0
    img = read_pgm(out)
    assert img.shape == (64, 64) and img[32, 32] == 0
    assert (tmp_path / "az_arrows.csv").exists()
    assert (tmp_path / "az_intensity.csv").exists()
    capsys.readouterr()
