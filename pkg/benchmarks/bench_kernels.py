"""Numba vs numpy kernel timings.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Prints one line per kernel and size with the best-of-``repeat`` wall time of
each flavour and the speed-up. The numba flavour is warmed up first so JIT
compilation is excluded.
"""
import argparse
import time

import numpy as np

from anaqsim import kernels
from anaqsim.hamiltonians import ISING, _pair_terms
from anaqsim.lattice import build_lattice
from anaqsim.linalg import pauli_masks


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def pauli_case(n):
    geom = build_lattice(n, 1, 1.0, 1.0)
    terms = _pair_terms(geom, ISING)
    enc = [pauli_masks(n, f) for _, f in terms]
    xs = np.array([e[0] for e in enc])
    zs = np.array([e[1] for e in enc])
    cs = np.array([c * e[2] for (c, _), e in zip(terms, enc)], dtype=complex)
    dim = 1 << n

    def run(fn):
        return lambda: fn(np.zeros((dim, dim), complex), xs, zs, cs)

    return run(kernels.pauli_sum_into_numpy), run(kernels.pauli_sum_into_numba)


def coupling_case(n):
    pos = np.random.default_rng(0).uniform(0, 50, (n, 2))
    return (lambda: kernels.pair_couplings_numpy(pos, 1.0)), (lambda: kernels.pair_couplings_numba(pos, 1.0))


def triple_case(n):
    j, _ = kernels.pair_couplings_numpy(np.random.default_rng(1).uniform(0, 50, (n, 2)), 1.0)
    return (lambda: kernels.triple_sum_bruteforce_numpy(j)), (lambda: kernels.triple_sum_bruteforce_numba(j))


CASES = [
    ("pauli_sum_into", pauli_case, (6, 9, 12)),
    ("pair_couplings", coupling_case, (100, 400, 1600)),
    ("triple_sum_bruteforce", triple_case, (50, 150, 400)),
]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    print(f"backend in use: {kernels.BACKEND}")
    print(f"{'kernel':<24}{'size':>6}{'numpy s':>12}{'numba s':>12}{'speedup':>9}")
    for name, make, sizes in CASES:
        for n in sizes:
            f_np, f_nb = make(n)
            f_nb()  # JIT warm-up
            t_np = best_of(f_np, args.repeat)
            t_nb = best_of(f_nb, args.repeat)
            print(f"{name:<24}{n:>6}{t_np:>12.2e}{t_nb:>12.2e}{t_np / t_nb:>9.1f}")


if __name__ == "__main__":
    main()
