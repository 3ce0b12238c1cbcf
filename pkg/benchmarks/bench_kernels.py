"""Compare the compiled kernels against the pure-Python twins.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each workload runs on both backends, the results are compared, and the
best wall time of N repeats is reported.
"""

import argparse
import random
import sys
import timeit

from dsforge import _kernels_py as pure
from dsforge import construct
from dsforge.containment import _dense_host, _dense_pattern
from dsforge.patterns import make_pattern

try:
    from dsforge import _kernels as fast
except ImportError:
    fast = None


def workloads(rng):
    host = construct.t_pi("uudu", 2, 3).flatten()
    h, sigma, _ = _dense_host(host)
    pat, _ = _dense_pattern(make_pattern("M", 2))
    yield "embed M_2 in t_pi(uudu,2,3) (absent)", "find_embedding", (pat, h, sigma, None, False)
    yield "embed M_2 colex", "find_embedding", (pat, h, sigma, None, True)

    host = construct.t_rho(3, 3, 3).flatten()
    h, sigma, _ = _dense_host(host)
    yield "max_alternation t_rho(3,3,3)", "max_alternation", (h, sigma, 0)

    rand = [rng.randrange(40) for _ in range(4000)]
    yield "max_alternation random 4000/40", "max_alternation", (rand, 40, 0)

    proj = [rng.randrange(3) for _ in range(200_000)]
    yield "greedy_rounds 200k over 3", "greedy_rounds", (proj, 3, [1], True)
    yield "greedy_rounds dbl quotas", "greedy_rounds", (proj, 3, [1] + [2] * 20000 + [1], False)


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args(argv)
    if fast is None:
        print("compiled extension not built; only the pure backend is available")
        return 1
    rng = random.Random(args.seed)
    print(f"{'workload':<40} {'python':>10} {'cython':>10} {'speedup':>8}")
    for name, fn, params in workloads(rng):
        a = getattr(pure, fn)(*params)
        b = getattr(fast, fn)(*params)
        if a != b:
            print(f"{name}: backends disagree ({a!r} vs {b!r})")
            return 1
        tp = min(timeit.repeat(lambda: getattr(pure, fn)(*params), number=1, repeat=args.repeat))
        tc = min(timeit.repeat(lambda: getattr(fast, fn)(*params), number=1, repeat=args.repeat))
        print(f"{name:<40} {tp:>9.4f}s {tc:>9.4f}s {tp / tc:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
