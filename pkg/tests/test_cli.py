"""End-to-end CLI behavior: payloads, exit codes, reproducibility."""

import json
import math
import warnings

import numpy as np
import pytest

from ropebound.cli import main
from ropebound.curves import rotation_about_axis, sample_planar_curve
from ropebound.helices import toroidal_correction
from ropebound.io_formats import export_geometry


def _run_json(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_bounds_payload(capsys):
    code, payload = _run_json(capsys, ["bounds", "--q", "3"])
    assert code == 0
    assert payload["bounds"]["best_bound"] == float(f"{49.69911184307752:.12g}")
    assert payload["bounds"]["rigor_flag"] == "rigorous"
    assert payload["run"]["version"]
    assert payload["run"]["flags"]["q"] == 3


def test_bounds_asymptotic(capsys):
    code, payload = _run_json(capsys, ["bounds", "--q", "4", "--asymptotic"])
    assert code == 0
    limit = math.sqrt(8.0 * math.pi) * 3.0 ** 0.25
    assert payload["asymptotic"]["alpha_w_limit"] == float(f"{limit:.12g}")


def test_bounds_usage_errors(capsys):
    with pytest.raises(SystemExit) as err:
        main(["bounds"])
    assert err.value.code == 2
    assert main(["bounds", "--q", "1"]) == 2
    assert "error:" in capsys.readouterr().err


def test_correction_scalar(capsys):
    code, payload = _run_json(capsys, ["correction", "--ratio", "2"])
    assert code == 0
    assert payload["correction"] == float(f"{1.0112292664185119:.12g}")
    code, payload = _run_json(
        capsys, ["correction", "--ratio", "1.5", "--p", "2"]
    )
    assert payload["correction"] == float(f"{1.0261469994820882:.12g}")


def test_correction_degenerate_ratio_rejected():
    with pytest.raises(SystemExit) as err:
        main(["correction", "--ratio", "0.9", "--p", "2"])
    assert err.value.code == 2


def test_correction_table(tmp_path):
    out = tmp_path / "table.csv"
    assert main(["correction", "--table", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("# ropebound ")
    assert lines[1].startswith("# seed=0 ")
    assert lines[2] == "ratio,p=1,p=2,p=3"
    rows = lines[3:]
    assert len(rows) == 32
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for row in rows:
            fields = row.split(",")
            ratio = float(fields[0])
            for p, cell in zip((1, 2, 3), fields[1:]):
                assert float(cell) == pytest.approx(
                    toroidal_correction(ratio, p), abs=1e-9
                )


def test_build_increment_report(capsys, tmp_path):
    geom = tmp_path / "link.vect"
    code, payload = _run_json(
        capsys,
        ["build", "inc4", "--t", "1", "--points", "400", "--out", str(geom)],
    )
    assert code == 0
    assert payload["construction"]["crossing_number"] == 20
    assert payload["verification"]["passed"] is True
    assert payload["metrics"]["min_overall_distance"] >= 2.0 - 0.01
    assert geom.exists()
    # the verified file also passes the standalone checker
    assert main(["check", str(geom)]) == 0
    check = json.loads(capsys.readouterr().out)
    assert check["components"] == 5
    lm = np.array(check["linking_matrix"])
    assert np.all(np.abs(lm[np.triu_indices(5, 1)]) == 1)


def test_build_requires_shell_count():
    with pytest.raises(SystemExit) as err:
        main(["build", "inc4"])
    assert err.value.code == 2


def test_build_planar_family(capsys):
    code, payload = _run_json(
        capsys, ["build", "circles", "--q", "3", "--points", "300"]
    )
    assert code == 0
    assert payload["verification"] == {"embeddable": True, "passed": True}
    assert payload["metrics"]["normalized_length"] > 0


def test_check_fails_thin_geometry(capsys, tmp_path):
    # planar families are scale-free, so their unit-scale files do not meet
    # the absolute clearance-2 standard the checker applies
    circle = sample_planar_curve("circle", {"radius": 1.0}, n_points=100)
    rot = rotation_about_axis((1.0, 0.0, 0.0), 0.5 * math.pi)
    other = circle.transformed(rot, np.array([1.0, 0.0, 0.0]))
    path = tmp_path / "thin.vect"
    export_geometry([circle, other], path=str(path))
    assert main(["check", str(path)]) == 1
    payload = json.loads(capsys.readouterr().out)
    assert payload["verification"]["passed"] is False


def test_optimize_family_guard():
    with pytest.raises(SystemExit) as err:
        main(["optimize", "--family", "toroidal_pair", "--q", "13"])
    assert err.value.code == 2


def test_sweep_csv(tmp_path):
    out = tmp_path / "sweep.csv"
    assert main(
        ["sweep", "inc4", "--tmin", "1", "--tmax", "3", "--out", str(out)]
    ) == 0
    lines = out.read_text().splitlines()
    assert lines[2] == "T,Q,C,alpha_best,alpha_worst,alpha_over_lower_bound"
    rows = [line.split(",") for line in lines[3:]]
    assert [int(r[0]) for r in rows] == [1, 2, 3]
    assert float(rows[0][4]) == float(f"{13.489186019606151:.12g}")
    ratios = [float(r[5]) for r in rows]
    assert all(r > 1.0 for r in ratios)
    # T = 1 has a single shell, so both conventions coincide
    assert rows[0][3] == rows[0][4]


def test_sweep_usage_errors():
    with pytest.raises(SystemExit) as err:
        main(["sweep", "inc4", "--tmin", "4", "--tmax", "2"])
    assert err.value.code == 2


def test_export_and_import_summary(capsys, tmp_path):
    circle = sample_planar_curve("circle", {"radius": 2.0}, n_points=60)
    src = tmp_path / "one.vect"
    export_geometry([circle], path=str(src))
    dst = tmp_path / "one.json"
    assert main(["export", str(src), "--out", str(dst)]) == 0
    capsys.readouterr()
    code, payload = _run_json(capsys, ["import", str(dst)])
    assert code == 0
    assert payload["components"] == 1
    assert payload["vertices"] == [60]
    assert payload["closed"] == [True]
    assert payload["total_length"] == pytest.approx(
        2 * 60 * 2.0 * math.sin(math.pi / 60), rel=1e-9
    )


def test_reruns_are_byte_identical(tmp_path):
    out = tmp_path / "table.csv"
    argv = ["correction", "--table", "--out", str(out)]
    assert main(argv) == 0
    first = out.read_bytes()
    assert main(argv) == 0
    assert out.read_bytes() == first


def test_config_file_defaults(capsys, tmp_path):
    cfg = tmp_path / "defaults.json"
    cfg.write_text(json.dumps({"points": 150}))
    code, payload = _run_json(
        capsys, ["--config", str(cfg), "bounds", "--q", "3"]
    )
    assert code == 0
    assert payload["run"]["flags"]["points"] == 150
    # explicit flags beat config-file defaults
    code, payload = _run_json(
        capsys,
        ["--config", str(cfg), "bounds", "--q", "3", "--points", "220"],
    )
    assert payload["run"]["flags"]["points"] == 220
