"""Compare the compiled kernels with the pure-Python fallback.

Run ``python benchmarks/bench_kernels.py``; each case is timed on both
backends and the results are checked to be identical.
"""

from __future__ import annotations

import argparse
import time

from jonestails import kernels
from jonestails.diagram import nahm_data_from_pd
from jonestails.knots import knot_diagram
from jonestails.nahm import _walk_plan, phi0_result
from jonestails.qseries import inv_qfactorial_list


def _convolve_case():
    a = list(inv_qfactorial_list(7, 400))
    b = [(-1) ** i * (i % 5) for i in range(400)]
    return lambda: kernels.convolve(a, b, 400)


def _walk_case(name, N):
    nd = nahm_data_from_pd(knot_diagram(name))
    plan = _walk_plan(nd)
    return lambda: kernels.adm_walk(plan, 2 * (N - 1), 10**9, N, False)[0]


def _phi0_case(name, N):
    nd = nahm_data_from_pd(knot_diagram(name))
    return lambda: phi0_result(nd, N).series


CASES = {
    "convolve 400 terms": _convolve_case,
    "cone walk 7_4, N=40": lambda: _walk_case("7_4", 40),
    "cone walk 8_5, N=50": lambda: _walk_case("8_5", 50),
    "phi0 6_2, N=60": lambda: _phi0_case("6_2", 60),
}


def bench(repeat: int = 3) -> list[tuple]:
    rows = []
    for label, make in CASES.items():
        fn = make()
        times, results = {}, {}
        for be in kernels.available():
            kernels.use_backend(be)
            best = None
            for _ in range(repeat):
                t = time.perf_counter()
                results[be] = fn()
                dt = time.perf_counter() - t
                best = dt if best is None else min(best, dt)
            times[be] = best
        same = len({repr(r) for r in results.values()}) == 1
        rows.append((label, times.get("python"), times.get("compiled"), same))
    kernels.use_backend("compiled" if "compiled" in kernels.available() else "python")
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"{'case':24} {'python s':>10} {'compiled s':>11} {'speedup':>8}  same")
    for label, tp, tc, same in bench(args.repeat):
        sp = f"{tp / tc:7.1f}x" if tp and tc else "    n/a"
        tcs = f"{tc:11.3f}" if tc is not None else "        n/a"
        print(f"{label:24} {tp:10.3f} {tcs} {sp}  {'yes' if same else 'NO'}")


if __name__ == "__main__":
    main()
