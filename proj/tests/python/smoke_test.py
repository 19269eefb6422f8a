"""Smoke tests for the python module and the command-line front end."""

import json
import os
import subprocess
import sys
import tempfile

import cheatlab


def approx(a, b, tol):
    assert abs(a - b) <= tol, f"{a} vs {b} (tol {tol})"


def test_catalog():
    ids = cheatlab.models()
    assert len(ids) == 22
    assert "bc_alice" in ids and "scf_switch_bob" in ids
    assert len(cheatlab.protocols()) == 16
    desc = cheatlab.describe("rot2_bob")
    assert ("tau0", 864) in [tuple(v) for v in desc["variables"]]


def test_solve():
    res = cheatlab.solve("bc_alice")
    assert res["status"] == "optimal"
    approx(res["value"], 0.75, 1e-6)

    res = cheatlab.solve("rot2_alice", with_primal=True)
    approx(res["value"], 0.8535533906, 1e-6)
    sigma_b = res["primal"]["sigmaB"]
    approx(sum(sigma_b[i][i].real for i in range(3)), 1.0, 1e-7)
    # the optimizer loads the lost-bit outcome
    approx(sigma_b[2][2].real, 0.8535533906, 1e-3)

    res = cheatlab.verify("rot2_alice", [[0.0732, 0, 0], [0, 0.0732, 0], [0, 0, 0.8536]])
    approx(res["achieved"], 0.8535533906, 1e-3)

    res = cheatlab.solve("wcf_bob", backend="admm")
    assert res["status"] == "optimal"
    approx(res["value"], 0.75, 1e-5)


def test_verify():
    res = cheatlab.verify("bc_alice", [[1 / 6, 0, 0], [0, 1 / 6, 0], [0, 0, 2 / 3]])
    approx(res["achieved"], 0.75, 1e-6)


def test_honest():
    dist = cheatlab.honest_distribution("WCF")
    approx(dist["0"], 0.5, 1e-12)
    approx(dist["1"], 0.5, 1e-12)
    dist = cheatlab.honest_distribution("OT", {"y": 1, "x0": 0, "x1": 1})
    approx(dist["1"], 1.0, 1e-12)
    assert cheatlab.completeness_check("DR3")


def test_export(tmpdir):
    path = os.path.join(tmpdir, "bc_alice.dat-s")
    cheatlab.export_sdpa("bc_alice", path)
    with open(path) as f:
        text = f.read()
    assert "mDIM" in text and "bLOCKsTRUCT" in text


def test_cli(tmpdir):
    exe = os.environ.get("CHEATLAB_BIN")
    if not exe:
        print("CHEATLAB_BIN not set; skipping cli checks")
        return
    out = subprocess.run([exe, "list", "--json"], capture_output=True, text=True)
    assert out.returncode == 0
    listing = json.loads(out.stdout)
    assert len(listing["models"]) == 22

    out = subprocess.run([exe, "solve", "bc_alice"], capture_output=True, text=True)
    assert out.returncode == 0
    approx(json.loads(out.stdout)["value"], 0.75, 1e-6)

    out = subprocess.run([exe, "solve", "nonsense"], capture_output=True, text=True)
    assert out.returncode == 2, out.returncode

    out = subprocess.run([exe], capture_output=True, text=True)
    assert out.returncode == 2

    cand = os.path.join(tmpdir, "cand.json")
    with open(cand, "w") as f:
        json.dump([[0.25, 0, 0], [0, 0.25, 0], [0, 0, 0.5]], f)
    out = subprocess.run([exe, "verify", "switch_alice:bc+ot", cand],
                         capture_output=True, text=True)
    assert out.returncode == 0
    approx(json.loads(out.stdout)["achieved"], 0.728557, 1e-4)

    bad = os.path.join(tmpdir, "bad.json")
    with open(bad, "w") as f:
        json.dump([[1.0, 0, 0], [0, 1.0, 0], [0, 0, 1.0]], f)  # trace 3
    out = subprocess.run([exe, "verify", "bc_alice", bad], capture_output=True, text=True)
    assert out.returncode == 2

    wrong = os.path.join(tmpdir, "wrong_manifest.json")
    with open(wrong, "w") as f:
        json.dump({"rows": [{"model": "bc_alice", "expected": 0.9, "source": "derived",
                             "tol": 1e-6, "suites": ["quick"]}]}, f)
    out = subprocess.run([exe, "reproduce", "--suite", "quick", "--manifest", wrong],
                         capture_output=True, text=True)
    assert out.returncode == 1, out.returncode

    out = subprocess.run([exe, "solve", "bc_alice", "--tol", "1e-300"],
                         capture_output=True, text=True)
    assert out.returncode == 3, out.returncode


def main():
    with tempfile.TemporaryDirectory() as tmpdir:
        test_catalog()
        test_solve()
        test_verify()
        test_honest()
        test_export(tmpdir)
        test_cli(tmpdir)
    print("python smoke: all checks passed")


if __name__ == "__main__":
    sys.exit(main())
