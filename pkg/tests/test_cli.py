"""End-to-end command line runs in subprocesses."""
import subprocess
import sys

import pytest

from rabicycle import ModelParams, exact_levels
from rabicycle.sweep import parse_csv


def run_cli(*args, **kw):
    return subprocess.run([sys.executable, "-m", "rabicycle.cli", *args],
                          capture_output=True, text=True, **kw)


def test_spectrum_matches_library():
    proc = run_cli("spectrum", "--g", "1.0", "--omega", "1.0",
                   "--bigomega", "1.0")
    assert proc.returncode == 0
    fields = dict(part.split("=") for part in proc.stdout.split())
    pair = exact_levels(ModelParams(g=1.0, omega=1.0, bigomega=1.0))
    assert float(fields["e0"]) == pair.e0
    assert float(fields["e1"]) == pair.e1
    assert fields["converged"] == "true"


def test_spectrum_both_methods():
    proc = run_cli("spectrum", "--g", "0.5", "--omega", "1.0",
                   "--bigomega", "1.0", "--method", "both")
    assert proc.returncode == 0
    lines = proc.stdout.strip().splitlines()
    assert len(lines) == 2
    assert lines[0].startswith("method=exact")
    assert lines[1].startswith("method=approx")


def test_cycle_run_and_fields():
    proc = run_cli("cycle", "--varied", "g", "--xi1", "0.5",
                   "--alpha", "2.0")
    assert proc.returncode == 0
    out = dict(part.split("=") for part in proc.stdout.split())
    assert float(out["xi2"]) == pytest.approx(0.8093515449787835, abs=1e-9)
    assert float(out["w_total"]) == pytest.approx(0.33584564997093647,
                                                  abs=1e-9)
    assert out["dsc_threshold"] == "false"


def test_cycle_rejects_fixing_the_varied_knob():
    proc = run_cli("cycle", "--varied", "g", "--xi1", "0.5",
                   "--alpha", "2.0", "--g", "1.0")
    assert proc.returncode == 2
    assert "varied" in proc.stderr


def test_cycle_failure_exits_nonzero():
    proc = run_cli("cycle", "--varied", "g", "--xi1", "3.2", "--alpha", "2.0")
    assert proc.returncode == 1
    assert "expansion" in proc.stderr


def test_sweep_stdout(tmp_path):
    cfg = tmp_path / "sweep.cfg"
    cfg.write_text("varied = g\ngrid_start = 0.2\ngrid_stop = 0.6\n"
                   "grid_count = 3\nalphas = 1.5\nmethod = approx\n")
    proc = run_cli("sweep", "--config", str(cfg))
    assert proc.returncode == 0
    table = parse_csv(proc.stdout)
    assert len(table.rows) == 3
    assert all(r.status == "ok" for r in table.rows)


def test_sweep_writes_configured_output(tmp_path):
    out = tmp_path / "rows.csv"
    cfg = tmp_path / "sweep.cfg"
    cfg.write_text("varied = g\ngrid_start = 0.2\ngrid_stop = 0.6\n"
                   "grid_count = 3\nalphas = 1.5\nmethod = approx\n"
                   f"output = {out}\n")
    proc = run_cli("sweep", "--config", str(cfg))
    assert proc.returncode == 0
    assert proc.stdout.strip() == str(out)
    assert len(parse_csv(out.read_text()).rows) == 3


def test_sweep_config_errors_exit_2(tmp_path):
    proc = run_cli("sweep", "--config", str(tmp_path / "missing.cfg"))
    assert proc.returncode == 2
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("varied = g\ngrid_start = 0.2\ngrid_stop = 0.6\n"
                   "grid_count = 3\nalphas = 0.5\n")
    proc = run_cli("sweep", "--config", str(cfg))
    assert proc.returncode == 2
    assert "alphas" in proc.stderr


def test_sweep_all_failed_exits_3(tmp_path):
    cfg = tmp_path / "doomed.cfg"
    cfg.write_text("varied = g\ngrid_start = 3.5\ngrid_stop = 3.8\n"
                   "grid_count = 2\nalphas = 2.0\nmethod = approx\n")
    proc = run_cli("sweep", "--config", str(cfg))
    assert proc.returncode == 3


def test_figure_writes_dataset(tmp_path):
    proc = run_cli("figure", "fig5", "--points", "3", "--out", str(tmp_path))
    assert proc.returncode == 0
    path = tmp_path / "fig5.csv"
    assert proc.stdout.strip() == str(path)
    assert len(parse_csv(path.read_text()).rows) == 3 * 5 * 2


def test_figure_bytes_are_reproducible(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        proc = run_cli("figure", "fig9", "--points", "2", "--out", str(out))
        assert proc.returncode == 0
    assert (a / "fig9.csv").read_bytes() == (b / "fig9.csv").read_bytes()


def test_unknown_figure_id_exits_2():
    proc = run_cli("figure", "fig2")
    assert proc.returncode == 2
