"""Coefficient of alpha*beta1^i*beta2^j in d(dual of beta1^i*beta2^j) for gl(1|1)/center.

Prints the engine's matrix entry, the brute oracle's value and i - j side by side.
"""

import argparse
from dataclasses import dataclass

from superkoszul.algebra import make_gl, preset_subalgebra, trivial_module
from superkoszul.cochains import RelativeComplex
from superkoszul.oracle import _Brute


@dataclass
class Config:
    total: int = 6
    oracle_total: int = 5


def main(cfg: Config) -> None:
    g = make_gl(1, 1)
    cx = RelativeComplex(g, preset_subalgebra(g, "center"))
    brute = _Brute(g, [], trivial_module(g))
    print(" i  j  engine  oracle  i-j")
    for s in range(cfg.total + 1):
        for i in range(s + 1):
            j = s - i
            D = cx.ambient_coboundary(s)
            col = cx.coord(cx.monomial_index(s)[(1,) * i + (2,) * j], 0)
            row = cx.coord(cx.monomial_index(s + 1)[(0,) + (1,) * i + (2,) * j], 0)
            engine = D.data.get(row, {}).get(col, 0)
            oracle = "-"
            if s <= cfg.oracle_total:
                monos = brute.monos(s)
                f = [0] * len(monos)
                f[monos.index((1,) * i + (2,) * j)] = 1
                oracle = brute.d_of(f, s)[brute.monos(s + 1).index((0,) + (1,) * i + (2,) * j)]
            print(f"{i:>2} {j:>2}  {int(engine):>6}  {oracle!s:>6}  {i - j:>3}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--total", type=int, default=Config.total)
    ap.add_argument("--oracle-total", type=int, default=Config.oracle_total)
    args = ap.parse_args()
    main(Config(args.total, args.oracle_total))
