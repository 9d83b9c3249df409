"""Compare the compiled and pure-Python polynomial kernels.

Run with ``python3 benchmarks/bench_kernels.py [--repeat N]``.  Both backends
are fed identical inputs and their outputs are checked for equality before
any timing is reported.
"""

import argparse
import os
import random
import subprocess
import sys
import time

from gmpy2 import mpq

from mouldlab import _pykernels as py
from mouldlab._pykernels import SHIFT

try:
    from mouldlab import _ckernels as cy
except ImportError:
    cy = None


def random_poly(rng, arity, nterms, maxdeg):
    out = {}
    for _ in range(nterms):
        key = 0
        for i in range(arity):
            key += rng.randint(0, maxdeg) << (SHIFT * i)
        out[key] = mpq(rng.randint(-50, 50), rng.randint(1, 12)) or mpq(1)
    return out


def random_images(rng, arity):
    return [[(1 << (SHIFT * j), rng.randint(-1, 1)) for j in range(arity) if rng.random() < 0.5]
            or [(1 << (SHIFT * i), 1)] for i in range(arity)]


def workloads(seed):
    rng = random.Random(seed)
    arity = 5
    polys = [random_poly(rng, arity, 40, 4) for _ in range(6)]
    images = [random_images(rng, arity) for _ in range(6)]
    lin = [(1 << (SHIFT * i), 1) for i in range(arity)]
    prods = [py.p_mul_linear(p, lin) for p in polys]
    return {
        "mul": lambda k: [k.p_mul(a, b) for a in polys for b in polys],
        "substitute": lambda k: [k.p_substitute(p, arity, im) for p in polys for im in images],
        "div_linear": lambda k: [k.p_div_linear(q, lin, 0) for q in prods],
    }


def timeit(fn, repeat):
    best = None
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        t = time.perf_counter() - t
        best = t if best is None else min(best, t)
    return best


END_TO_END = (
    "import time; from mouldlab.library import build_That01; "
    "from mouldlab.mouldcore import dar_inv, fay_operator; "
    "t = time.perf_counter(); fay_operator(dar_inv(build_That01(8))); "
    "print(time.perf_counter() - t)"
)


def end_to_end(pure):
    env = dict(os.environ)
    env["MOULDLAB_PURE"] = "1" if pure else "0"
    out = subprocess.run([sys.executable, "-c", END_TO_END], env=env,
                         capture_output=True, text=True, check=True)
    return float(out.stdout.strip())


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--no-end-to-end", action="store_true")
    args = ap.parse_args(argv)
    if cy is None:
        print("compiled kernels not built; only the Python backend is available")
        return 1
    print("%-14s %12s %12s %8s" % ("kernel", "python [s]", "cython [s]", "speedup"))
    for name, fn in workloads(args.seed).items():
        if fn(py) != fn(cy):
            print("%s: backends disagree" % name)
            return 1
        tp = timeit(lambda: fn(py), args.repeat)
        tc = timeit(lambda: fn(cy), args.repeat)
        print("%-14s %12.4f %12.4f %7.2fx" % (name, tp, tc, tp / tc))
    if not args.no_end_to_end:
        tp = end_to_end(True)
        tc = end_to_end(False)
        print("%-14s %12.4f %12.4f %7.2fx" % ("fay(That01')", tp, tc, tp / tc))
    return 0


if __name__ == "__main__":
    sys.exit(main())
