import json
from pathlib import Path

import pytest

from latticeamp.cli import (
    EXIT_DOMAIN,
    EXIT_INVARIANT,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_VALIDATION,
    main,
)

DEMOS = Path(__file__).resolve().parent.parent / "demos"
SETUPS = DEMOS / "setups"
CONFIGS = DEMOS / "configs"


def amplitude_lines(capsys, *argv):
    assert main(["amplitude", *map(str, argv)]) == EXIT_OK
    return dict(line.split(" ", 1) for line in capsys.readouterr().out.splitlines())


def test_open_screen_equals_no_screen(capsys):
    a = amplitude_lines(capsys, SETUPS / "open_screen.txt")["amplitude"]
    b = amplitude_lines(capsys, SETUPS / "no_screen.txt")["amplitude"]
    assert a == b


def test_frozen_self_loop(capsys):
    out = amplitude_lines(capsys, SETUPS / "self_loop.txt", "--config", CONFIGS / "frozen.json")
    assert out["amplitude"] == "1+0i"


@pytest.mark.parametrize("setup", sorted(p.name for p in SETUPS.glob("*.txt")))
def test_oracle_on_bundled_setups(capsys, setup):
    out = amplitude_lines(capsys, SETUPS / setup, "--oracle")
    assert float(out["abs_difference"]) < 1e-12


def test_parse_error_exit(tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("filter t=2 holes=\n")
    assert main(["amplitude", str(f)]) == EXIT_PARSE


def test_validation_error_exit(tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("lattice M=4 tau=1\nsource x=0 t=0\nfilter t=1 holes=7\ndetect x=1 t=2\n")
    assert main(["amplitude", str(f)]) == EXIT_VALIDATION


def test_missing_config(tmp_path):
    assert main(["born-convergence", "--config", str(tmp_path / "nope.json")]) == EXIT_VALIDATION


def test_born_convergence_csv(tmp_path):
    assert main(["born-convergence", "--config", str(CONFIGS / "born.json"), "--out", str(tmp_path)]) == 0
    lines = (tmp_path / "born_convergence.csv").read_text().splitlines()
    assert lines[0] == "N,f,epsilon,p_k,distance_closed,distance_gaussian"
    d = [float(l.split(",")[4]) for l in lines[1:]]
    assert d[0] > d[1] > d[2]


def test_born_domain_error(tmp_path):
    cfg = tmp_path / "born.json"
    cfg.write_text(json.dumps({"p_k": 1.5, "f": 0.3, "epsilon": 0.05, "N_list": [10]}))
    assert main(["born-convergence", "--config", str(cfg)]) == EXIT_DOMAIN


def test_unitarity(tmp_path):
    assert main(["unitarity", "--config", str(CONFIGS / "unitarity.json"), "--out", str(tmp_path)]) == 0
    rows = (tmp_path / "drift.csv").read_text().splitlines()
    assert rows[0] == "step,max_drift" and len(rows) == 102
    assert max(float(r.split(",")[1]) for r in rows[1:]) < 1e-9


def test_unitarity_damped(tmp_path):
    assert main(["unitarity", "--config", str(CONFIGS / "unitarity_damped.json"), "--out", str(tmp_path)]) == 0
    rows = (tmp_path / "drift.csv").read_text().splitlines()[1:]
    assert max(float(r.split(",")[1]) for r in rows) > 1e-3


def test_unitarity_flags_weak_damping(tmp_path):
    cfg = tmp_path / "weak.json"
    cfg.write_text(json.dumps({"hamiltonian": {"M": 4, "tau": 0.1, "gamma": [1e-9] * 4}, "steps": 5}))
    assert main(["unitarity", "--config", str(cfg), "--out", str(tmp_path)]) == EXIT_INVARIANT


def test_entropy_min(tmp_path):
    cfg = tmp_path / "e.json"
    cfg.write_text(json.dumps({"M": 3, "n_rho": 2, "n_samples": 50}))
    assert main(["entropy-min", "--config", str(cfg), "--out", str(tmp_path), "--seed", "4"]) == 0
    ens = (tmp_path / "ensemble_scan.csv").read_text().splitlines()
    basis = (tmp_path / "basis_scan.csv").read_text().splitlines()
    assert ens[0] == "seed,S_A,S_vN,gap" and basis[0] == "seed,S_meas,S_vN,gap"
    assert len(ens) == len(basis) == 101
    assert min(float(r.split(",")[3]) for r in ens[1:] + basis[1:]) >= -1e-9


def test_entropy_min_deterministic(tmp_path):
    cfg = tmp_path / "e.json"
    cfg.write_text(json.dumps({"M": 3, "n_rho": 2, "n_samples": 30, "seed": 9}))
    for name in ("a", "b"):
        assert main(["entropy-min", "--config", str(cfg), "--out", str(tmp_path / name)]) == 0
    for f in ("ensemble_scan.csv", "basis_scan.csv"):
        assert (tmp_path / "a" / f).read_bytes() == (tmp_path / "b" / f).read_bytes()


def test_unitarity_deterministic(tmp_path):
    for name in ("a", "b"):
        main(["unitarity", "--config", str(CONFIGS / "unitarity.json"), "--out", str(tmp_path / name)])
    assert (tmp_path / "a" / "drift.csv").read_bytes() == (tmp_path / "b" / "drift.csv").read_bytes()


def test_algebra_check(tmp_path):
    cfg = tmp_path / "laws.json"
    cfg.write_text(json.dumps({"cases": 100}))
    assert main(["algebra-check", "--config", str(cfg), "--out", str(tmp_path), "--seed", "1"]) == 0
    report = (tmp_path / "algebra_report.txt").read_text()
    assert "0 failed" in report and "not commutative" in report
