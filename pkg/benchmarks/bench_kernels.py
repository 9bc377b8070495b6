"""Time the pure-Python kernels against the compiled ones.

Both modules are imported directly, so this works regardless of which
backend the package itself selected.  Run from the repository root:

    python3 benchmarks/bench_kernels.py
"""

import argparse
import random
import time

from tigroups import _kernels_py as pure

try:
    from tigroups import _ckernels as cext
except ImportError:
    cext = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def random_keys(count, degree, seed):
    rng = random.Random(seed)
    keys = []
    for _ in range(count):
        images = list(range(degree))
        rng.shuffle(images)
        keys.append(pure.key_from_images(images, degree))
    return keys


def s7_generators():
    cycle = list(range(1, 7)) + [0]
    swap = [1, 0] + list(range(2, 7))
    return [pure.key_from_images(cycle, 7), pure.key_from_images(swap, 7)]


def workloads():
    keys = random_keys(2000, 64, seed=5)
    pairs = list(zip(keys, keys[1:] + keys[:1]))
    gens = s7_generators()

    def compose(mod):
        for a, b in pairs:
            mod.compose(a, b)

    def inverse(mod):
        for a in keys:
            mod.inverse(a)

    def conjugate(mod):
        for a, b in pairs:
            mod.conjugate(a, b)

    def perm_order(mod):
        for a in keys:
            mod.perm_order(a)

    def closure(mod):
        mod.closure_keys(gens, 6000)

    def classes(mod):
        elements = pure.closure_keys(gens, 6000)
        mod.conjugacy_partition(elements, gens)

    return [
        ("compose x2000", compose),
        ("inverse x2000", inverse),
        ("conjugate x2000", conjugate),
        ("perm_order x2000", perm_order),
        ("closure_keys S7", closure),
        ("conjugacy_partition S7", classes),
    ]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    if cext is None:
        print("compiled kernels not built; timing pure backend only")

    print("%-24s %10s %10s %8s" % ("operation", "pure", "compiled", "ratio"))
    for name, work in workloads():
        tp = best_of(lambda: work(pure), args.repeat)
        if cext is None:
            print("%-24s %9.3fms" % (name, tp * 1e3))
            continue
        tc = best_of(lambda: work(cext), args.repeat)
        ratio = tp / tc if tc > 0 else float("inf")
        print("%-24s %9.3fms %9.3fms %7.2fx" % (name, tp * 1e3, tc * 1e3, ratio))


if __name__ == "__main__":
    main()
