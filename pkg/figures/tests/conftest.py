"""Generates a small CSV corpus once per session via the sfdm CLI.

The figures package consumes only the CLI's CSV files, so the fixtures shell
out to `sfdm` rather than importing from the primary package.
"""

import subprocess

import pytest


def run_sfdm(*args):
    subprocess.run(["sfdm", *args], check=True, capture_output=True)


@pytest.fixture(scope="session")
def data_dir(tmp_path_factory):
    d = tmp_path_factory.mktemp("data")
    small = ["--n", "8", "--alpha", "0.8"]
    for realization in ("pc", "step"):
        run_sfdm("synth", *small, "--realization", realization,
                 "--data", "ones", "--oversample", "8",
                 "--out", str(d / f"synth_{realization}.csv"))
    for alpha in ("0.5", "0.8"):
        run_sfdm("tail", "--n", "8", "--alpha", alpha, "--f-min", "2",
                 "--f-max", "40", "--points", "4",
                 "--out", str(d / f"tail_alpha{alpha}.csv"))
    run_sfdm("oobe-sweep", "--n", "8", "--alpha-min", "0.4", "--alpha-max",
             "0.8", "--alpha-step", "0.2", "--f-max", "15",
             "--out", str(d / "oobe_sweep.csv"))
    # N = 16: the receiver's default prefix (8 sampling intervals) must be
    # shorter than one block
    run_sfdm("evm-sweep", "--n", "16", "--alpha", "0.8", "--points", "8",
             "--out", str(d / "evm_sweep.csv"))
    for dmax in ("0.005", "0.01"):
        # N = 16: the ensemble's default prefix (9 sampling intervals) must
        # fit inside one block
        run_sfdm("evm-mc", "--n", "16", "--alpha", "0.8", "--trials", "12",
                 "--delta-max", dmax,
                 "--out", str(d / f"evm_mc_dmax{dmax}.csv"))
    run_sfdm("window-tradeoff", *small, "--rhos", "0,1,2", "--fmax", "15",
             "--out", str(d / "window_tradeoff.csv"))
    return d
