"""Compare the compiled and pure-Python kernel backends.

Each backend runs in its own interpreter (the backend is chosen at import
time), so the workloads are executed in subprocesses with
``GRANVILLE_PURE_PYTHON`` set accordingly.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import json
import os
import subprocess
import sys

WORKLOADS = r"""
import json, random, sys, time
import granville
from granville import classical as cl
from granville.invariance import Decomposition, decompose, expand, invariant_generator
from granville.multipoly import exact_div
from granville.randgen import random_adequate_map, random_coefficients
from granville.suites import suite_lemmas

def product():
    F = cl.XYZ.var(0) + cl.XYZ.var(1) * 2 + cl.XYZ.var(2) * 3 + 1
    G = F ** 12
    H = G * (F ** 9)
    assert exact_div(H, G) == F ** 9

def cyclotomic_product():
    from granville import ExprContext, parse
    ctx = ExprContext(("x", "y", "z"), 12)
    F = parse("w*x + (w^3 - 1)*y + z + w^2", ctx)
    G = F ** 14
    assert exact_div(G * F, G) == F

def roundtrip():
    rng = random.Random(42)
    for i in range(200):
        m = (1, 2, 3, 4, 6)[i % 5]
        map_ = random_adequate_map(rng, m, rng.randint(1, 3))
        coeffs = random_coefficients(rng, map_.ctx, rng.randint(0, 4))
        F = expand(Decomposition(invariant_generator(map_), coeffs))
        assert decompose(F, map_).coeffs == coeffs

def classical():
    for p in (5, 7, 11, 13, 17, 19, 23):
        cl.e3_expansion(p)

def lemmas():
    assert suite_lemmas(seed=1).passed

repeat = int(sys.argv[1])
out = {"backend": granville.BACKEND}
for fn in (product, cyclotomic_product, roundtrip, classical, lemmas):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    out[fn.__name__] = best
print(json.dumps(out))
"""


def run(pure: bool, repeat: int) -> dict:
    env = dict(os.environ, GRANVILLE_PURE_PYTHON="1" if pure else "0")
    proc = subprocess.run([sys.executable, "-c", WORKLOADS, str(repeat)],
                          capture_output=True, text=True, env=env, check=True)
    return json.loads(proc.stdout)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    fast = run(False, args.repeat)
    slow = run(True, args.repeat)
    if fast["backend"] != "cython":
        print("compiled extension not available; both runs use the Python backend")
    names = [k for k in slow if k != "backend"]
    print(f"{'workload':<20}{fast['backend']:>12}{'python':>12}{'speedup':>10}")
    for name in names:
        a, b = fast[name], slow[name]
        print(f"{name:<20}{a:>11.3f}s{b:>11.3f}s{b / a:>9.2f}x")


if __name__ == "__main__":
    main()
