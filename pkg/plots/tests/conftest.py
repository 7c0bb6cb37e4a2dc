import subprocess
import sys
from pathlib import Path

import pytest

# make plot_helpers importable regardless of the pytest rootdir
sys.path.insert(0, str(Path(__file__).resolve().parent))


@pytest.fixture(scope="session")
def cli_datasets(tmp_path_factory):
    """Small datasets produced by the rabicycle CLI, the real producer."""
    out = tmp_path_factory.mktemp("datasets")
    for figure_id, points in (("fig1", 4), ("fig5", 6), ("fig9", 4)):
        cmd = [sys.executable, "-m", "rabicycle.cli", "figure", figure_id,
               "--points", str(points), "--out", str(out)]
        try:
            subprocess.run(cmd, check=True, capture_output=True, timeout=300)
        except (subprocess.CalledProcessError, FileNotFoundError) as exc:
            pytest.skip(f"rabicycle CLI unavailable: {exc}")
    return out
