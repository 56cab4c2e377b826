"""Compare the pure-Python and compiled solver backends.

    python3 benchmarks/bench_kernels.py --sizes 64 256 1024 --repeat 3

Times each algorithm on the binary-numbers grammar family and on a random
grammar, checks that both backends return identical weights and counters,
and prints one row per (instance, algorithm, backend).
"""

import argparse
import random
import sys
import time

from rtgweight.algebra import AffineAlgebra, binary_numbers_costs
from rtgweight.grammar import binary_numbers_grammar, make_grammar, stats
from rtgweight.solver import compiled_available, solve


def random_instance(nt, al, seed):
    rng = random.Random(seed)
    names = [f"N{i}" for i in range(nt)]
    symbols = {"a": 0, "b": 0, "u": 1, "v": 1, "f": 2, "g": 3}
    rules = {n: [] for n in names}
    for _ in range(al):
        f = rng.choice(list(symbols))
        rules[rng.choice(names)].append((f, [rng.choice(names) for _ in range(symbols[f])]))
    costs = AffineAlgebra({f: (rng.randint(0, 4), tuple(rng.randint(1, 3) for _ in range(k)))
                           for f, k in symbols.items()})
    return make_grammar(rules.items(), symbols=symbols), costs


def best_of(fn, repeat):
    best, result = None, None
    for _ in range(repeat):
        t = time.perf_counter()
        result = fn()
        elapsed = time.perf_counter() - t
        best = elapsed if best is None else min(best, elapsed)
    return best, result


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--sizes", type=int, nargs="+", default=[64, 256, 1024],
                   help="n_max values of the binary-numbers family")
    p.add_argument("--random-nt", type=int, default=2000)
    p.add_argument("--random-al", type=int, default=8000)
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--skip-naive-above", type=int, default=4000,
                   help="skip the Python naive solver on grammars with more alternatives")
    args = p.parse_args(argv)

    if not compiled_available():
        print("compiled kernels are not built; nothing to compare", file=sys.stderr)
        return 1

    instances = [(f"binary n_max={n}", binary_numbers_grammar(n), binary_numbers_costs())
                 for n in args.sizes]
    g, costs = random_instance(args.random_nt, args.random_al, seed=1)
    instances.append((f"random nt={args.random_nt}", g, costs))

    print(f"{'instance':<22} {'al':>7} {'algorithm':<8} {'python s':>10} "
          f"{'compiled s':>11} {'speedup':>8}")
    for label, g, alg in instances:
        al = stats(g)[1]
        for algo in ("naive", "liquid", "lazy"):
            tc, rc = best_of(lambda: solve(g, alg, algo, trace=False, backend="compiled"),
                             args.repeat)
            if algo == "naive" and al > args.skip_naive_above:
                print(f"{label:<22} {al:>7} {algo:<8} {'skipped':>10} {tc:>11.4f} {'':>8}")
                continue
            tp, rp = best_of(lambda: solve(g, alg, algo, trace=False, backend="python"),
                             args.repeat)
            same = (rp.weights == rc.weights
                    and rp.stats.alternative_evaluations == rc.stats.alternative_evaluations)
            if not same:
                print(f"backend mismatch on {label} / {algo}", file=sys.stderr)
                return 2
            print(f"{label:<22} {al:>7} {algo:<8} {tp:>10.4f} {tc:>11.4f} {tp / tc:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
