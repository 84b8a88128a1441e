"""End-to-end CLI checks driven through subprocess.

The binary path comes from the POTATOES_CLI environment variable.
"""

import os
import subprocess
import sys
import tempfile

CLI = os.environ.get("POTATOES_CLI", "potatoes")


def run(*args, expect=0):
    proc = subprocess.run([CLI, *args], capture_output=True, text=True)
    if proc.returncode != expect:
        raise AssertionError(
            f"{args} -> rc={proc.returncode}\nstdout: {proc.stdout}\nstderr: {proc.stderr}")
    return proc.stdout


def main():
    with tempfile.TemporaryDirectory() as d:
        graph = os.path.join(d, "g.txt")
        roles = os.path.join(d, "r.txt")
        trace = os.path.join(d, "t.txt")
        clusters = os.path.join(d, "c.txt")
        csv_a = os.path.join(d, "a.csv")
        csv_b = os.path.join(d, "b.csv")

        out = run("gen", "--grid", "4x4", "--radio", "10", "-o", graph)
        assert "n=16" in out and "edges=24" in out

        out = run("assign", "--alg", "st", "-g", graph, "-o", roles, "--eval")
        assert "valid=1" in out

        out = run("eval", "-g", graph, "-r", roles)
        assert "t_min=" in out and "valid=1" in out

        out = run("simulate", "-g", graph, "--D", "2", "--seed", "5", "--budget", "100",
                  "--max-time", "150", "--trace", trace, "--clusters", clusters)
        assert "converged=1" in out
        assert os.path.getsize(trace) > 0
        with open(clusters) as f:
            assert f.read().startswith("cluster ")

        # Random generation without a seed must refuse.
        proc = subprocess.run([CLI, "gen", "--n", "10", "-o", os.path.join(d, "x.txt")],
                              capture_output=True, text=True)
        assert proc.returncode != 0

        # Determinism of sweep output, byte for byte.
        args = ["sweep", "--set", "topology=grid", "--set", "grid=3x3", "--set", "seeds=1,2",
                "--set", "algorithms=st,mis", "--set", "budget=100"]
        run(*args, "-o", csv_a)
        run(*args, "-o", csv_b)
        with open(csv_a, "rb") as fa, open(csv_b, "rb") as fb:
            assert fa.read() == fb.read()

    print("cli checks passed")


if __name__ == "__main__":
    sys.exit(main())
