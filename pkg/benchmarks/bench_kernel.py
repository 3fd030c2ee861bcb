"""Compare the compiled and pure-Python quantifier kernels.

Each workload is a list of prepared kernel calls; both backends run the
same calls and must return the same answers.

    python3 benchmarks/bench_kernel.py [--repeat N]
"""
import argparse
import random
import sys
import time
from pathlib import Path

from apfrag import syntax as sx
from apfrag.evaluate import _prepare, compile_property, instantiation_points
from apfrag.interp import example_problem
from apfrag.kernel import available_backends, first_failure
from apfrag.models import FinArray, Model, paper_model

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))
from generators import FormulaGen, model  # noqa: E402


def _call(m, phi):
    comp = compile_property(phi)
    consts, arrays, guards = _prepare(m, comp)
    points = instantiation_points(arrays, guards, len(comp.names))
    rows = [[a[p] for p in points] for a in arrays]
    return comp.program, consts, points, rows, len(comp.names)


def parity_sweep(n):
    p = example_problem()
    return [_call(paper_model(i), f) for i in range(n) for f in (p.a, p.b)]


def sortedness(n):
    j, jj = sx.Var("j"), sx.Var("jj")
    a = sx.Const(sx.array_const("a"))
    phi = sx.Forall((j, jj), sx.implies(sx.le(j, jj), sx.le(sx.select(a, j), sx.select(a, jj))))
    return [_call(paper_model(i), phi) for i in range(0, n, 10)]


def wide_sortedness():
    """Sorted arrays with 300-cell windows: every tuple must be visited."""
    j, jj = sx.Var("j"), sx.Var("jj")
    a = sx.Const(sx.array_const("a"))
    phi = sx.Forall((j, jj), sx.implies(sx.le(j, jj), sx.le(sx.select(a, j), sx.select(a, jj))))
    return [_call(Model({}, {"a": FinArray(-1, 0, tuple(range(k, k + 300)), 10**6)}), phi)
            for k in range(5)]


def random_blocks(n, nvars):
    rng = random.Random(n * 10 + nvars)
    gen = FormulaGen(rng)
    return [_call(model(rng), gen.block(nvars=nvars)) for _ in range(n)]


WORKLOADS = {
    "parity sweep, i < 400": lambda: parity_sweep(400),
    "sortedness on M_i, i < 400": lambda: sortedness(400),
    "random 1-var blocks x 2000": lambda: random_blocks(2000, 1),
    "random 2-var blocks x 500": lambda: random_blocks(500, 2),
    "sortedness, wide windows": lambda: wide_sortedness(),
}


def run(fn, calls, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        out = [fn(*c) for c in calls]
        best = min(best, time.perf_counter() - start)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = dict(available_backends(), auto=first_failure)
    if "cython" not in backends:
        print("compiled kernel not built; only the Python backend is available")
    print(f"{'workload':32} " + " ".join(f"{name:>10}" for name in backends) + "   cython/python")
    for label, build in WORKLOADS.items():
        calls = build()
        # warm the code cache of the Python backend before timing
        backends["python"](*calls[0])
        times, results = {}, {}
        for name, fn in backends.items():
            times[name], results[name] = run(fn, calls, args.repeat)
        if len({tuple(r) for r in results.values()}) != 1:
            raise SystemExit(f"backends disagree on {label}")
        speed = times["python"] / times["cython"] if "cython" in times else 1.0
        print(f"{label:32} " + " ".join(f"{times[n]:>9.4f}s" for n in backends) + f"   {speed:6.1f}x")


if __name__ == "__main__":
    main()
