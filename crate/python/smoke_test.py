"""Smoke test for the Python bindings.

Imports an installed ``lpmhd`` module if there is one; otherwise builds the
extension with cargo and loads it from a temporary directory.

    python python/smoke_test.py
"""

import importlib
import shutil
import subprocess
import sys
import sysconfig
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load_module(workdir: Path):
    try:
        return importlib.import_module("lpmhd")
    except ImportError:
        pass
    subprocess.run(
        ["cargo", "build", "--release", "-p", "lpmhd-python", "--features", "extension-module"],
        cwd=ROOT,
        check=True,
    )
    built = ROOT / "target" / "release" / "liblpmhd_python.so"
    suffix = sysconfig.get_config_var("EXT_SUFFIX") or ".so"
    shutil.copy(built, workdir / f"lpmhd{suffix}")
    sys.path.insert(0, str(workdir))
    return importlib.import_module("lpmhd")


CONFIG = """
[solver]
n = 16
nu = 0.05
mu = 0.05
dt = 0.01
t_end = 0.5
snapshot_interval = 0.05
seed = 4

[solver.initial]
kind = "random-spectrum"
slope = 4.0
energy = 1.0
peak_shell = 1
magnetic_energy = 0.5

[criteria]
c_r = 0.01
"""


def main() -> int:
    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        lp = load_module(tmp)
        print("lpmhd", lp.__version__, "suites:", ", ".join(lp.suites()))

        assert lp.partition_defect(16) <= 1e-12
        passed, text = lp.run_suite("partition")
        assert passed, text
        try:
            lp.run_suite("no-such-suite")
        except ValueError as e:
            assert "energy-budget" in str(e)
        else:
            raise AssertionError("unknown suite accepted")

        cfg = tmp / "run.toml"
        cfg.write_text(CONFIG)
        out = tmp / "out"
        run = lp.simulate(cfg, out)
        assert run["complete"] and run["abort"] is None and run["snapshots"] == 11, run
        info = lp.snapshot_info(out / "snap_000010.lpmhd")
        assert info["n"] == 16 and info["has_b"] and abs(info["t"] - 0.5) < 1e-12, info

        rows = lp.analyze(out, cfg, tmp / "diag.csv")
        assert rows == 11
        rep = lp.criteria(out, cfg, tmp / "report.txt")
        assert len(rep["conditions"]) == 8
        assert rep["lemma_max_ratio"] <= 10.0, rep
        print("criterion:", rep["criterion"])
        for cid, value, threshold, verdict in rep["conditions"]:
            print(f"  ({cid}) {verdict}: {value} vs {threshold}")
        for name in ["report.txt", "report.shells.csv", "report.q_series.csv"]:
            assert (tmp / name).read_text().startswith("# "), name
    print("smoke test passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
