"""Benchmark: compiled kernels against the pure-Python reference.

Times the two hot operations (sparse graded product and Leibniz
derivative) on randomly generated linear combinations, plus an
end-to-end mode-table workload.  Run:

    python benchmarks/bench_kernels.py
"""

import random
import time
from fractions import Fraction

from jetfact.scalars import Scalar
from jetfact._kernels import kernel_py

try:
    from jetfact._kernels import kernel_cy
except ImportError:
    kernel_cy = None


def random_lc(rng, gens, terms, wmax):
    out = {}
    while len(out) < terms:
        size = rng.randint(1, 3)
        mono = []
        for _ in range(size):
            g = rng.choice(gens)
            m = rng.randint(0, max(wmax // size - 1, 0))
            mono.append((g, m))
        mono.sort(key=lambda f: (f[0], -f[1]))
        out[tuple(mono)] = Scalar(Fraction(rng.randint(1, 5), rng.randint(1, 3)))
    return out


def timeit(fn, repeat):
    t0 = time.perf_counter()
    for _ in range(repeat):
        fn()
    return time.perf_counter() - t0


def bench(name, make_args, py_fn, cy_fn, repeat):
    args = make_args()
    t_py = timeit(lambda: py_fn(*args), repeat)
    line = f"{name:<28} python {t_py*1e6/repeat:9.2f} us"
    if cy_fn is not None:
        t_cy = timeit(lambda: cy_fn(*args), repeat)
        line += f"   compiled {t_cy*1e6/repeat:9.2f} us   speedup {t_py/t_cy:5.2f}x"
        assert py_fn(*args) == cy_fn(*args), "backend results diverge"
    print(line)


def main():
    rng = random.Random(1)
    wmax = 8
    sizes = [(4, 4), (10, 10), (25, 25)]
    for na, nb in sizes:
        a = random_lc(rng, ["x", "y"], na, wmax)
        b = random_lc(rng, ["x", "y"], nb, wmax)
        bench(
            f"lc_mul {na}x{nb} terms",
            lambda a=a, b=b: (a, b, wmax),
            kernel_py.lc_mul,
            kernel_cy.lc_mul if kernel_cy else None,
            repeat=2000,
        )
    a = random_lc(rng, ["x", "y"], 25, wmax)
    bench(
        "lc_derive 25 terms",
        lambda a=a: (a, wmax),
        kernel_py.lc_derive,
        kernel_cy.lc_derive if kernel_cy else None,
        repeat=5000,
    )

    # End-to-end: full mode tables through each backend.
    import os
    import subprocess
    import sys

    code = (
        "import time\n"
        "from jetfact import AlgebraPresentation, VertexAlgebra, vertex_op\n"
        "from jetfact.sampling import Sampler\n"
        "P = AlgebraPresentation(['x','y'], ['x*y'], 8)\n"
        "V = VertexAlgebra(P)\n"
        "s = Sampler(7)\n"
        "pairs = [(s.element(P), s.element(P)) for _ in range(60)]\n"
        "t0 = time.perf_counter()\n"
        "for a, b in pairs:\n"
        "    vertex_op(a, b, V)\n"
        "print(time.perf_counter() - t0)\n"
    )
    results = {}
    for label, env_val in [("compiled", ""), ("python", "1")]:
        env = dict(os.environ)
        if env_val:
            env["JETFACT_PURE_PYTHON"] = env_val
        else:
            env.pop("JETFACT_PURE_PYTHON", None)
        out = subprocess.run(
            [sys.executable, "-c", code], capture_output=True, text=True, env=env
        )
        results[label] = float(out.stdout.strip())
    print(
        f"{'mode tables, 60 pairs W=8':<28} python {results['python']*1e3:9.2f} ms"
        f"   compiled {results['compiled']*1e3:9.2f} ms"
        f"   speedup {results['python']/results['compiled']:5.2f}x"
    )


if __name__ == "__main__":
    main()
