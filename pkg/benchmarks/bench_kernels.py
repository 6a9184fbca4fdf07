"""Compare the compiled and pure-Python radial integrators.

Times ``integrate_radial`` on both backends across dimensions and ranges,
checks the outputs are bit-identical, and prints a table.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--json out.json]
"""

import argparse
import json
import statistics
import time

import numpy as np

from nliouville import dimension_constants, family_member, integrate_radial
from nliouville.kernels import BACKENDS

CASES = [(n, r_max, rtol) for n in (2, 3, 4) for r_max in (50.0, 1e3, 1e6) for rtol in (1e-8, 1e-10)]


def time_backend(backend, n, r_max, rtol, repeat):
    dim = dimension_constants(n)
    alpha = family_member(dim, 1.0).alpha
    samples = []
    for _ in range(repeat):
        start = time.perf_counter()
        sol = integrate_radial(alpha, r_max, dim, rtol=rtol, backend=backend)
        samples.append(time.perf_counter() - start)
    return statistics.median(samples), sol


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5, help="timing repetitions per case (median reported)")
    parser.add_argument("--json", metavar="PATH", help="also write the rows as JSON")
    args = parser.parse_args(argv)

    if "cython" not in BACKENDS:
        print("compiled kernel not built; only the pure-Python backend is available")
    backends = [b for b in ("cython", "python") if b in BACKENDS]
    rows = []
    header = f"{'n':>2} {'r_max':>8} {'rtol':>7} {'nodes':>6} " + " ".join(f"{b + ' ms':>10}" for b in backends)
    header += f" {'speedup':>8} {'identical':>9}"
    print(header)
    for n, r_max, rtol in CASES:
        timings, sols = {}, {}
        for b in backends:
            timings[b], sols[b] = time_backend(b, n, r_max, rtol, args.repeat)
        identical = all(
            np.array_equal(getattr(sols[backends[0]], f), getattr(sols[b], f))
            for b in backends[1:]
            for f in ("grid", "u_values", "flux")
        )
        speedup = timings["python"] / timings["cython"] if len(backends) == 2 else float("nan")
        nodes = len(sols[backends[0]].grid)
        rows.append(
            {"n": n, "r_max": r_max, "rtol": rtol, "nodes": nodes, "seconds": timings,
             "speedup": speedup, "identical": identical}
        )
        cells = " ".join(f"{1e3 * timings[b]:>10.2f}" for b in backends)
        print(f"{n:>2} {r_max:>8.0e} {rtol:>7.0e} {nodes:>6} {cells} {speedup:>8.1f} {str(identical):>9}")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(rows, fh, indent=2)
    return 0 if all(r["identical"] for r in rows) else 1


if __name__ == "__main__":
    raise SystemExit(main())
