"""Time the compiled and pure-Python matching kernels side by side.

Usage::

    python3 benchmarks/bench_kernels.py --n 500 2000 10000 --k 4 --repeat 3

Each row reports the best of ``--repeat`` wall-clock timings. The
end-to-end column runs the full DOC controller on a short dynamic
network with each backend swapped in.
"""

import argparse
import time

import numpy as np

from doccontrol import controller, kernels
from doccontrol.synth import SynthConfig, er_directed, generate_dynamic


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_static(mod, s, repeat):
    out_ptr, out_idx = s.csr("out")
    in_ptr, in_idx = s.csr("in")
    order = np.random.default_rng(0).permutation(s.n).astype(np.intp)

    def augment():
        mate_out = np.full(s.n, -1, dtype=np.intp)
        mate_in = np.full(s.n, -1, dtype=np.intp)
        mod.ordered_augment(s.n, in_ptr, in_idx, mate_out, mate_in, order)

    hk = best_of(lambda: mod.hopcroft_karp(s.n, out_ptr, out_idx), repeat)
    return hk, best_of(augment, repeat)


def bench_dynamic(mod, net, repeat):
    saved = kernels.hopcroft_karp, kernels.ordered_augment
    kernels.hopcroft_karp, kernels.ordered_augment = mod.hopcroft_karp, mod.ordered_augment
    try:
        return best_of(lambda: controller.run(net, 5), repeat)
    finally:
        kernels.hopcroft_karp, kernels.ordered_augment = saved


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, nargs="+", default=[500, 2000, 10000])
    parser.add_argument("--k", type=float, default=4.0)
    parser.add_argument("--r", type=float, default=0.1, help="rewiring ratio for the DOC run")
    parser.add_argument("--t", type=int, default=10, help="snapshots in the DOC run")
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)

    found = kernels.backends()
    print(f"default backend: {kernels.BACKEND}; available: {', '.join(found)}")
    header = f"{'n':>7} {'backend':>8} {'HK (ms)':>10} {'augment (ms)':>13} {'DOC run (ms)':>13}"
    print(header)
    print("-" * len(header))
    for n in args.n:
        s = er_directed(n, args.k, seed=n)
        net = generate_dynamic(SynthConfig(n, args.k, args.r, args.t, seed=n))
        base = None
        for name, mod in found.items():
            hk, aug = bench_static(mod, s, args.repeat)
            doc = bench_dynamic(mod, net, args.repeat)
            print(f"{n:>7} {name:>8} {hk * 1e3:>10.2f} {aug * 1e3:>13.2f} {doc * 1e3:>13.1f}")
            if base is None:
                base = (hk, aug, doc)
            else:
                print(f"{'':>7} {'speedup':>8} {base[0] / hk:>9.1f}x {base[1] / aug:>12.1f}x "
                      f"{base[2] / doc:>12.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
