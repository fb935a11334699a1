#!/usr/bin/env python3
"""Compare the numba and pure-python embedding kernels on search-heavy work.

Run from the repository root:

    python bench/bench_backends.py [--repeat N]

Each workload runs under both backends (selected via POSET_FORGE_BACKEND);
results are wall-clock medians over the repeats.
"""

import argparse
import os
import random
import statistics
import sys
import time


def make_workloads():
    import poset_forge as pf
    from poset_forge.wqo import embeddability_matrix, fence_antichain

    rng = random.Random(12345)

    def rand(n, p, prefix):
        ids = [f"{prefix}{i}" for i in range(n)]
        pairs = [
            (ids[i], ids[j])
            for i in range(n)
            for j in range(i + 1, n)
            if rng.random() < p
        ]
        return pf.make_poset(ids, pairs)

    pairs_sparse = [(rand(12, 0.15, "x"), rand(16, 0.15, "y")) for _ in range(12)]
    pairs_dense = [(rand(12, 0.5, "x"), rand(15, 0.5, "y")) for _ in range(12)]
    fences = [(pf.canonical("fence", k), pf.canonical("fence", 24)) for k in range(4, 12)]

    def embed_batch(batch):
        def work():
            return sum(1 for x, y in batch if pf.embed(x, y) is not None)

        return work

    def fence_matrix():
        fam = fence_antichain(9)
        return sum(sum(row) for row in embeddability_matrix(fam))

    return [
        ("sparse 12->16 (12 pairs)", embed_batch(pairs_sparse)),
        ("dense 12->15 (12 pairs)", embed_batch(pairs_dense)),
        ("zigzags into a long zigzag", embed_batch(fences)),
        ("marked zigzag 9x9 matrix", fence_matrix),
    ]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    workloads = make_workloads()
    results = {}
    for backend in ("numba", "python"):
        os.environ["POSET_FORGE_BACKEND"] = backend
        from poset_forge._search import backend_name

        assert backend_name() == backend
        for name, work in workloads:
            work()  # warm up (jit compilation, caches)
            times = []
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                value = work()
                times.append(time.perf_counter() - t0)
            results[(backend, name)] = (statistics.median(times), value)

    width = max(len(name) for name, _ in workloads)
    print(f"{'workload'.ljust(width)}  {'numba':>10}  {'python':>10}  {'ratio':>7}")
    for name, _ in workloads:
        tn, vn = results[("numba", name)]
        tp, vp = results[("python", name)]
        if vn != vp:
            print(f"{name}: BACKEND MISMATCH ({vn} vs {vp})", file=sys.stderr)
            return 1
        ratio = tp / tn if tn > 0 else float("inf")
        print(f"{name.ljust(width)}  {tn:>9.4f}s  {tp:>9.4f}s  {ratio:>6.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
