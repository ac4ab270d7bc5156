"""Compare the compiled and pure-Python simplex kernels.

Each backend runs in its own interpreter (``COHERENT_PURE_PYTHON`` selects
the fallback) on the same workloads: raw pivots on a dense integer
tableau, and the coherence and entailment checks of the rule suite.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, random, time
from coherent import kernels
from coherent.rules import verify_all
from coherent.coherence import extension_interval
from coherent.events import atoms

def best(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter(); fn(); times.append(time.perf_counter() - t)
    return min(times)

def pivots():
    rng = random.Random(0)
    rows = [[rng.randint(-9, 9) for _ in range(40)] for _ in range(30)]
    det = 1
    for k in range(25):
        col = next(j for j in range(40) if rows[k][j])
        det = kernels.pivot(rows, k, col, det)

def propagation():
    A, B, C, D = atoms("A B C D")
    fam = [B.given(A), C.given(B), D.given(C), A.given()]
    for i in range(1, 8):
        extension_interval(fam, [f"{i}/8"] * 4, D.given())

repeat = int(__import__("sys").argv[1])
print(json.dumps({
    "backend": kernels.BACKEND,
    "pivots": best(pivots, repeat),
    "propagation": best(propagation, repeat),
    "rule-suite": best(verify_all, repeat),
}))
"""


def measure(pure: bool, repeat: int) -> dict:
    env = dict(os.environ)
    env["COHERENT_PURE_PYTHON"] = "1" if pure else "0"
    out = subprocess.run(
        [sys.executable, "-c", WORKER, str(repeat)], env=env, capture_output=True, text=True, check=True
    )
    return json.loads(out.stdout)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    fast, slow = measure(False, args.repeat), measure(True, args.repeat)
    if fast["backend"] != "cython":
        print("compiled kernels are not built; both runs use the pure-Python fallback")
    print(f"{'workload':<12} {fast['backend']:>10} {slow['backend']:>10} {'speedup':>8}")
    for key in ("pivots", "propagation", "rule-suite"):
        print(f"{key:<12} {fast[key]:>9.4f}s {slow[key]:>9.4f}s {slow[key] / fast[key]:>7.2f}x")


if __name__ == "__main__":
    main()
