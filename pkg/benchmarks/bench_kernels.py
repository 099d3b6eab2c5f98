"""Compare the compiled and pure-Python kernels on representative workloads.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import random
import timeit
from fractions import Fraction

from cliffpin import _pykernels

try:
    from cliffpin import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def _workloads(rng):
    d = 8
    neg = 0b11110000
    terms_a = {m: Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for m in rng.sample(range(1 << d), 64)}
    terms_b = {m: Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for m in rng.sample(range(1 << d), 64)}
    n = 32
    dense = tuple(tuple(Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(n)) for _ in range(n))
    perm = list(range(n))
    rng.shuffle(perm)
    monomial = tuple(tuple(Fraction(rng.choice((1, -1))) if j == perm[i] else Fraction(0) for j in range(n)) for i in range(n))
    rows = [{rng.randrange(400): Fraction(rng.choice((1, -1))), rng.randrange(400): Fraction(1)} for _ in range(600)]
    pairs = [(rng.randrange(1 << 12), rng.randrange(1 << 12)) for _ in range(2000)]
    square = [[rng.randint(-4, 4) for _ in range(16)] for _ in range(16)]
    return {
        "blade_sign x2000": lambda k: [k.blade_sign(a, b, neg) for a, b in pairs],
        "multiply_terms 64x64": lambda k: k.multiply_terms(terms_a, terms_b, neg),
        "matmul dense 32": lambda k: k.matmul(dense, dense),
        "matmul monomial 32": lambda k: k.matmul(dense, monomial),
        "reduce_rows 600x400": lambda k: k.reduce_rows(rows, 400),
        "integer_adjugate 16": lambda k: k.integer_adjugate([r[:] for r in square]),
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    work = _workloads(random.Random(0))
    backends = [("python", _pykernels)] + ([("cython", _ckernels)] if _ckernels else [])
    print(f"{'workload':<24}" + "".join(f"{name:>12}" for name, _ in backends) + ("     speedup" if _ckernels else ""))
    for label, fn in work.items():
        times = []
        for _, mod in backends:
            timer = timeit.Timer(lambda: fn(mod))
            number, _ = timer.autorange()
            best = min(timer.repeat(repeat=args.repeat, number=number)) / number
            times.append(best)
        line = f"{label:<24}" + "".join(f"{t * 1e3:>10.3f}ms" for t in times)
        if len(times) == 2:
            line += f"{times[0] / times[1]:>11.2f}x"
        print(line)


if __name__ == "__main__":
    main()
