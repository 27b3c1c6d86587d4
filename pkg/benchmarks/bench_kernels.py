"""Benchmark the numba kernels against the pure-Python fallbacks.

Run with the package installed:

    python benchmarks/bench_kernels.py

The same fallbacks are selected package-wide by O1PPG_PURE_PY=1; here both
implementations run side by side for the comparison.
"""

import random
import time

import numpy as np

from o1ppg import _kernels
from o1ppg.fixtures import fix_k4
from o1ppg.generator import (_component_min_encoding, _min_encoding_fast,
                             _start_darts, _vertex_components,
                             grow_quadrangulations)
from o1ppg.graphs import adjacency_masks
from o1ppg.matching import matchings_of_size
from o1ppg.model import build_o1ppg, validate_quadrangulation
from o1ppg.surface import EmbeddedGraph


def timed(fn, *args):
    t0 = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - t0


def bench_pm_exists(inst):
    """Full 3-matching extendability sweep, the hottest harness loop."""
    ms = list(matchings_of_size(inst, 3))
    full = (1 << inst.n) - 1

    def sweep(fn, adj):
        count = 0
        for m in ms:
            alive = full
            for e in m.edges:
                u, v = inst.edges[e]
                alive &= ~((1 << u) | (1 << v))
            if fn(adj, alive):
                count += 1
        return count

    rows = []
    if _kernels.HAS_NUMBA:
        arr = np.asarray(inst.adj, dtype=np.int64)
        sweep(_kernels._pm_exists_jit, arr)   # warm the JIT
        n1, t1 = timed(sweep, _kernels._pm_exists_jit, arr)
        rows.append(("numba", t1, n1))
    n2, t2 = timed(sweep, _kernels._pm_exists_py, inst.adj)
    rows.append(("pure", t2, n2))
    return f"pm_exists sweep ({len(ms)} 3-matchings, n={inst.n})", rows


def bench_max_matching():
    rng = random.Random(1)
    graphs = []
    for _ in range(2000):
        n = rng.randint(4, 12)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n)
                 if rng.random() < 0.5]
        graphs.append((n, adjacency_masks(n, edges)))

    def sweep(fn, convert):
        total = 0
        for n, masks in graphs:
            total += fn(convert(masks), (1 << n) - 1)
        return total

    rows = []
    if _kernels.HAS_NUMBA:
        sweep(_kernels._max_matching_size_jit,
              lambda m: np.asarray(m, dtype=np.int64))
        n1, t1 = timed(sweep, _kernels._max_matching_size_jit,
                       lambda m: np.asarray(m, dtype=np.int64))
        rows.append(("numba", t1, n1))
    n2, t2 = timed(sweep, _kernels._max_matching_size_py, lambda m: m)
    rows.append(("pure", t2, n2))
    return "max_matching_size (2000 random graphs, n<=12)", rows


def bench_canonical():
    corpus = grow_quadrangulations([fix_k4()], n_max=9)
    systems = [srs for _k, srs in corpus[9]]

    def run_fast():
        out = 0
        for srs in systems:
            comp = _vertex_components(srs)[0]
            out ^= hash(_min_encoding_fast(srs, _start_darts(srs, comp)))
        return out

    def run_pure():
        out = 0
        for srs in systems:
            comp = _vertex_components(srs)[0]
            _c, enc = _component_min_encoding(
                srs, _start_darts(srs, comp))
            out ^= hash(enc)
        return out

    rows = []
    if _kernels.HAS_NUMBA:
        run_fast()
        _n1, t1 = timed(run_fast)
        rows.append(("numba", t1, len(systems)))
    _n2, t2 = timed(run_pure)
    rows.append(("pure", t2, len(systems)))
    return f"canonical encoding ({len(systems)} quadrangulations, n=9)", rows


def main():
    q = validate_quadrangulation(EmbeddedGraph(_n10_srs()))
    inst = build_o1ppg(q)
    benches = [bench_pm_exists(inst), bench_max_matching(),
               bench_canonical()]
    print(f"numba available: {_kernels.HAS_NUMBA}")
    for title, rows in benches:
        print(f"\n{title}")
        base = rows[-1][1]
        for name, t, chk in rows:
            speedup = base / t if t else float("inf")
            print(f"  {name:6s} {t * 1000:9.1f} ms   "
                  f"(x{speedup:5.1f} vs pure, checksum {chk})")


def _n10_srs():
    corpus = grow_quadrangulations([fix_k4()], n_max=10)
    for _key, srs in corpus[10]:
        g = EmbeddedGraph(srs)
        try:
            validate_quadrangulation(g)
            return srs
        except Exception:
            continue
    raise RuntimeError("no polyhedral member at n=10")


if __name__ == "__main__":
    main()
