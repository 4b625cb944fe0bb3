"""Hilbert series and generator degrees of truncated cohomology rings H(g, a; C)."""

import argparse
from dataclasses import dataclass

from superkoszul.algebra import make_gl, preset_subalgebra
from superkoszul.ring import generator_probe, ring_truncation


@dataclass
class Config:
    max_degree: int = 8
    gl21_degree: int = 6


def main(cfg: Config) -> None:
    cases = [(1, 1, s, cfg.max_degree) for s in ("0", "center", "cartan", "g0")]
    cases += [(2, 1, s, cfg.gl21_degree) for s in ("cartan", "g0")]
    for m, n, s, N in cases:
        g = make_gl(m, n)
        rt = ring_truncation(g, preset_subalgebra(g, s), N)
        gp = generator_probe(rt)
        print(f"{g.name:>8} / {s:<7} dims {rt.dims}  generators {gp.degrees}  generated {gp.surjective}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-degree", type=int, default=Config.max_degree)
    ap.add_argument("--gl21-degree", type=int, default=Config.gl21_degree)
    args = ap.parse_args()
    main(Config(args.max_degree, args.gl21_degree))
