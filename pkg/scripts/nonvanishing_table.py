"""Tabulate dim H^n(gl(1|1), center; C) against the brute oracle."""

import argparse
import time
from dataclasses import dataclass

from superkoszul.algebra import make_gl, preset_subalgebra, trivial_module
from superkoszul.cochains import RelativeComplex
from superkoszul.oracle import oracle_cohomology


@dataclass
class Config:
    max_degree: int = 8
    oracle_degree: int = 8


def main(cfg: Config) -> None:
    g = make_gl(1, 1)
    a = preset_subalgebra(g, "center")
    t0 = time.perf_counter()
    cx = RelativeComplex(g, a)
    dims = [cx.cohomology(n).dim for n in range(cfg.max_degree + 1)]
    t1 = time.perf_counter()
    oracle = oracle_cohomology(g, [dict(v) for v in a.space.basis], trivial_module(g), cfg.oracle_degree)
    t2 = time.perf_counter()
    print(" n  dim C^n  dim H^n  oracle  dual(b1^k b2^k) nonzero in H")
    for n, d in enumerate(dims):
        o = oracle[n] if n < len(oracle) else "-"
        dual = ""
        if n % 2 == 0:
            k = n // 2
            dual = str(bool(cx.class_of(n, cx.dual_cochain((1,) * k + (2,) * k))))
        print(f"{n:>2}  {cx.cochains(n).dim:>7}  {d:>7}  {o!s:>6}  {dual}")
    print(f"engine {t1 - t0:.3f}s, oracle {t2 - t1:.3f}s")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-degree", type=int, default=Config.max_degree)
    ap.add_argument("--oracle-degree", type=int, default=Config.oracle_degree)
    args = ap.parse_args()
    main(Config(args.max_degree, args.oracle_degree))
