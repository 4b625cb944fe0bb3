"""Print E_0 .. E_r and E_inf staircases plus the E_2 and collapse checks."""

import argparse
from dataclasses import dataclass

from superkoszul.documents import resolve_algebra, resolve_module, resolve_subalgebra
from superkoszul.cochains import RelativeComplex
from superkoszul.spectral import FilteredComplex, collapse_detect, e2_factorization_check, staircase


@dataclass
class Config:
    algebra: str = "gl21"
    subalgebra: str = "cartan"
    module: str = "trivial"
    max_degree: int = 4
    pages: int = 3


def main(cfg: Config) -> None:
    g = resolve_algebra(cfg.algebra)
    a = resolve_subalgebra(cfg.subalgebra, g)
    M = resolve_module(cfg.module, g)
    fc = FilteredComplex(RelativeComplex(g, a, M), cfg.max_degree)
    for r in range(cfg.pages + 1):
        print(staircase(fc.page(r, False).dims(), cfg.max_degree, f"E_{r}"))
        print()
    print(staircase(fc.e_infinity(), cfg.max_degree, "E_inf"))
    print()
    e2 = e2_factorization_check(g, a, M, cfg.max_degree, fc)
    print(f"E_2 factorization mismatches: {len(e2.mismatches)}")
    col = collapse_detect(fc)
    print("collapse at E_2:", col.collapsed, "" if col.collapsed else f"witness {col.witness}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    for name, val in vars(Config()).items():
        ap.add_argument("--" + name.replace("_", "-"), type=type(val), default=val)
    main(Config(**vars(ap.parse_args())))
