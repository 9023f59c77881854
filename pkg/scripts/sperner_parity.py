"""Count panchromatic cells over many random Sperner labelings and time both searches.

    python scripts/sperner_parity.py --dim 3 --k 4 --trials 500 --seed 0
"""

import argparse
import collections
import random
import time

from impossibility_lab.sperner import (
    find_panchromatic_all,
    find_panchromatic_path,
    kuhn_triangulation,
    random_sperner_labeling,
)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--dim", type=int, default=2)
    parser.add_argument("--k", type=int, default=8)
    parser.add_argument("--trials", type=int, default=500)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    t = kuhn_triangulation(args.dim, args.k)
    rng = random.Random(args.seed)
    counts = collections.Counter()
    walk_lengths = []
    brute = path = 0.0
    for _ in range(args.trials):
        labels = random_sperner_labeling(t, rng)
        t0 = time.perf_counter()
        cells = find_panchromatic_all(t, labels)
        t1 = time.perf_counter()
        res = find_panchromatic_path(t, labels)
        t2 = time.perf_counter()
        brute += t1 - t0
        path += t2 - t1
        assert res.cell in cells
        counts[len(cells)] += 1
        walk_lengths.append(len(res.trace))

    print(f"kuhn({args.dim}, {args.k}): {len(t.cells)} cells, {args.trials} labelings")
    print("panchromatic count histogram:", dict(sorted(counts.items())))
    print("all counts odd:", all(c % 2 for c in counts))
    print(f"mean cells visited by path-following: {sum(walk_lengths) / len(walk_lengths):.1f}")
    print(f"time brute force {brute:.3f}s, path-following {path:.3f}s")


if __name__ == "__main__":
    main()
