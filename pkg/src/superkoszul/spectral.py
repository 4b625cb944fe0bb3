"""Filtration by odd argument count and the spectral sequence of the filtered complex.

F^p C^n consists of equivariant cochains that vanish on every monomial with
fewer than p odd arguments (equivalently, more than n - p arguments from
g0/a).  Page cells are computed from the subspace lattice:

    Z_r^p(n) = F^p C^n  ∩  d^{-1}(F^{p+r} C^{n+1})
    E_r^{p,q} = Z_r^p(n) / (Z_{r-1}^{p+1}(n) + d Z_{r-1}^{p-r+1}(n-1)),   n = p + q.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .algebra import (
    EvenSubalgebra,
    LieSuperalgebra,
    Representation,
    check_subalgebra,
    even_part,
    sub_superalgebra,
    trivial_module,
)
from .cochains import RelativeComplex, restriction_matrix
from .linalg import Quotient, RationalMatrix, Subspace, to_fraction


@dataclass(frozen=True)
class PageCell:
    r: int
    p: int
    q: int
    quotient: Quotient

    @property
    def dim(self) -> int:
        return self.quotient.dim


@dataclass
class SpectralPage:
    r: int
    cells: dict = field(default_factory=dict)  # (p, q) -> PageCell
    differentials: dict = field(default_factory=dict)  # (p, q) -> RationalMatrix

    def dims(self) -> dict:
        return {pq: c.dim for pq, c in self.cells.items()}


class FilteredComplex:
    """The equivariant complex with its descending filtration, degrees 0..max_degree+1.

    Page cells are available for total degree <= max_degree; differentials
    d_r out of a cell need its target, so they are available for total
    degree <= max_degree - 1.
    """

    def __init__(self, cx: RelativeComplex, max_degree: int):
        if not even_part(cx.alg).space.contains_space(cx.sub.space):
            raise ValueError("subalgebra must lie in the even part")
        self.cx = cx
        self.max_degree = max_degree
        self.infinity = max_degree + 2
        self._F: dict = {}
        self._Z: dict = {}
        self._cells: dict = {}
        self._pages: dict = {}

    # -- filtration ------------------------------------------------------------

    def cochain_dim(self, n: int) -> int:
        return self.cx.cochains(n).dim

    def d(self, n: int) -> RationalMatrix:
        return self.cx.d_matrix(n)

    def filtration(self, n: int, p: int) -> Subspace:
        """F^p C^n in equivariant coordinates."""
        p = max(p, 0)
        if p > n:
            p = n + 1
        key = (n, p)
        if key not in self._F:
            basis = self.cx.cochains(n).basis
            bad = {c for c in range(self.cx.ambient_dim(n))
                   if self.cx.odd_count(self.cx.monomials(n)[c // self.cx.mdim]) < p}
            rows: dict = {}
            for k, v in enumerate(basis.vectors):
                for c, x in v.items():
                    if c in bad:
                        rows.setdefault(c, {})[k] = x
            m = RationalMatrix.from_rows(self.cx.ambient_dim(n), basis.dim, rows)
            self._F[key] = linalg.kernel(m)
        return self._F[key]

    def block_filtration(self, n: int, p: int) -> Subspace:
        """F^p C^n as the direct sum of the equivariant odd-count blocks of degree >= p."""
        cx = self.cx
        basis = cx.cochains(n).basis
        monos = cx.monomials(n)
        vecs = []
        for k in range(max(p, 0), n + 1):
            cols = [c for c in range(cx.ambient_dim(n)) if cx.odd_count(monos[c // cx.mdim]) == k]
            # equivariant cochains supported on the block: kernel of the off-block coordinates
            keep = set(cols)
            rows: dict = {}
            for j, v in enumerate(basis.vectors):
                for c, x in v.items():
                    if c not in keep:
                        rows.setdefault(c, {})[j] = x
            ker = linalg.kernel(RationalMatrix.from_rows(cx.ambient_dim(n), basis.dim, rows))
            vecs.extend(ker.vectors)
        return linalg.span(basis.dim, vecs)

    def check_axioms(self) -> list[str]:
        """Violations of exhaustive/Hausdorff, nesting and d-compatibility."""
        bad = []
        for n in range(self.max_degree + 1):
            full = linalg.full_space(self.cochain_dim(n))
            if self.filtration(n, 0) != full:
                bad.append(f"F^0 C^{n} is not the whole space")
            if self.filtration(n, n + 1).dim != 0:
                bad.append(f"F^{n + 1} C^{n} is not zero")
            for p in range(n + 1):
                if not self.filtration(n, p).contains_space(self.filtration(n, p + 1)):
                    bad.append(f"F^{p + 1} C^{n} not inside F^{p} C^{n}")
                img = linalg.image_of(self.d(n), self.filtration(n, p))
                if not self.filtration(n + 1, p).contains_space(img):
                    bad.append(f"d F^{p} C^{n} not inside F^{p} C^{n + 1}")
        return bad

    # -- pages -------------------------------------------------------------------

    def cycles(self, r: int, p: int, n: int) -> Subspace:
        """Z_r^p(n) = F^p C^n ∩ d^{-1}(F^{p+r} C^{n+1})."""
        if n < 0:
            return linalg.zero_space(0)
        # the target index uses the unclipped p: Z_r^p = F^p ∩ d^{-1} F^{p+r}
        tp = min(max(p + r, 0), n + 2)
        p = min(max(p, 0), n + 1)
        key = (p, tp, n)
        if key not in self._Z:
            Fp = self.filtration(n, p)
            target = self.filtration(n + 1, tp)
            self._Z[key] = linalg.intersect(Fp, linalg.preimage(self.d(n), target))
        return self._Z[key]

    def _check_range(self, r: int, p: int, q: int) -> None:
        if p < 0 or q < 0:
            raise ValueError("bidegree must be nonnegative")
        if p + q > self.max_degree:
            raise ValueError(f"total degree {p + q} exceeds the built range {self.max_degree}")
        if r < 0 or r > self.infinity:
            raise ValueError(f"page index must lie in 0..{self.infinity}")

    def cell(self, r: int, p: int, q: int) -> PageCell:
        self._check_range(r, p, q)
        key = (r, p, q)
        if key not in self._cells:
            n = p + q
            num = self.cycles(r, p, n)
            den = self.cycles(r - 1, p + 1, n)
            if n >= 1:
                prev = self.cycles(r - 1, p - r + 1, n - 1)
                den = linalg.subspace_sum(den, linalg.image_of(self.d(n - 1), prev))
            self._cells[key] = PageCell(r, p, q, linalg.quotient(num, den))
        return self._cells[key]

    def differential(self, r: int, p: int, q: int) -> RationalMatrix:
        """d_r : E_r^{p,q} -> E_r^{p+r, q-r+1} in the representative bases."""
        self._check_range(r, p, q)
        src = self.cell(r, p, q)
        tp, tq = p + r, q - r + 1
        n = p + q
        if n + 1 > self.max_degree:
            raise ValueError("differential target lies outside the built range")
        if tq < 0 or tp > n + 1:
            return RationalMatrix.zero(0, src.dim)
        tgt = self.cell(r, tp, tq)
        cols = [tgt.quotient.class_of(self.d(n).apply(z)) for z in src.quotient.representatives]
        return RationalMatrix.from_columns(tgt.dim, cols) if cols else RationalMatrix.zero(tgt.dim, 0)

    def page(self, r: int, with_differentials: bool = True) -> SpectralPage:
        if (r, with_differentials) not in self._pages:
            pg = SpectralPage(r)
            for n in range(self.max_degree + 1):
                for p in range(n + 1):
                    pg.cells[(p, n - p)] = self.cell(r, p, n - p)
                    if with_differentials and n < self.max_degree:
                        pg.differentials[(p, n - p)] = self.differential(r, p, n - p)
            self._pages[(r, with_differentials)] = pg
        return self._pages[(r, with_differentials)]

    def e_infinity(self) -> dict:
        return {pq: c.dim for pq, c in self.page(self.infinity, False).cells.items()}


def build_filtration(alg: LieSuperalgebra, a: EvenSubalgebra, M: Representation | None, max_degree: int,
                     even_only: bool = False) -> FilteredComplex:
    check_subalgebra(alg, a)
    return FilteredComplex(RelativeComplex(alg, a, M, even_only), max_degree)


def page(fc: FilteredComplex, r: int, p: int, q: int) -> PageCell:
    return fc.cell(r, p, q)


# ---------------------------------------------------------------------------
# Checks against independent computations


def even_subalgebra_as_algebra(alg: LieSuperalgebra, a: EvenSubalgebra):
    """g0 as an algebra of its own, with a re-expressed in its coordinates."""
    g0_idx = alg.even_indices
    g0 = sub_superalgebra(alg, g0_idx, f"{alg.name}_0")
    pos = {i: k for k, i in enumerate(g0_idx)}
    vecs = [{pos[k]: v for k, v in x.items()} for x in a.vectors]
    return g0, EvenSubalgebra.from_vectors(g0, vecs), g0_idx


def hom_symmetric_module(alg: LieSuperalgebra, M: Representation, p: int) -> Representation:
    """Hom(S^p(g1), M) as a module over the even part (basis order of ``alg.even_indices``).

    (x.phi)(s) = x.phi(s) - sum_i phi(s_1 .. [x, s_i] .. s_p).
    """
    odd = alg.odd_indices
    pos = {o: t for t, o in enumerate(odd)}
    words = list(itertools.combinations_with_replacement(range(len(odd)), p))
    carrier = [(w, m) for w in words for m in range(M.dim)]
    carrier.sort(key=lambda wm: ((p + M.parity(wm[1])) % 2,))
    index = {wm: i for i, wm in enumerate(carrier)}
    n_even = sum(1 for w, m in carrier if (p + M.parity(m)) % 2 == 0)
    dim = len(carrier)
    mats = []
    for x in alg.even_indices:
        mat = [[Fraction(0)] * dim for _ in range(dim)]
        rho = M.action(x)
        adx = {t: {pos[k]: v for k, v in alg.bracket(x, o).items()} for t, o in enumerate(odd)}
        for (w, mp), col in index.items():
            # component (w, mp) of phi feeds x.phi at (w, mo) through rho
            for mo, row in rho.data.items():
                if mp in row:
                    mat[index[(w, mo)]][col] += to_fraction(row[mp])
        for (w, mo), row_i in index.items():
            for i, t in enumerate(w):
                for k, v in adx[t].items():
                    u = tuple(sorted(w[:i] + (k,) + w[i + 1:]))
                    mat[row_i][index[(u, mo)]] -= to_fraction(v)
        mats.append(mat)
    return Representation((n_even, dim - n_even), tuple(mats), f"Hom(S^{p}(g1),{M.name})")


def e0_expected(alg, a, M, p, q) -> int:
    g0, a0, g0_idx = even_subalgebra_as_algebra(alg, a)
    hom = hom_symmetric_module(alg, M if M is not None else trivial_module(alg), p)
    return RelativeComplex(g0, a0, hom).cochains(q).dim


def e1_check(fc: FilteredComplex) -> list[dict]:
    """Compare dim E_1^{p,q} with dim H^q(g0, a; Hom(S^p(g1), M))."""
    cx = fc.cx
    g0, a0, _ = even_subalgebra_as_algebra(cx.alg, cx.sub)
    out = []
    top = fc.max_degree - 1
    for p in range(top + 1):
        hom = hom_symmetric_module(cx.alg, cx.M, p)
        inner = RelativeComplex(g0, a0, hom, cx.even_only)
        for q in range(top - p + 1):
            lhs = fc.cell(1, p, q).dim
            rhs = inner.cohomology(q).dim
            out.append({"p": p, "q": q, "page": lhs, "expected": rhs, "ok": lhs == rhs})
    return out


@dataclass
class E2Report:
    rows: list
    mismatches: list
    classical: bool

    def to_json(self) -> dict:
        return {"classical_flag": self.classical, "cells": self.rows, "mismatches": self.mismatches,
                "mismatch_count": len(self.mismatches)}


def e2_factorization_check(alg, a, M, max_degree: int, fc: FilteredComplex | None = None) -> E2Report:
    """dim E_2^{p,q} against dim H^p(g, g0; M) * dim H^q(g0, a; C) for p + q <= max_degree."""
    if fc is None:
        fc = build_filtration(alg, a, M, max_degree)
    M = fc.cx.M
    rel_g0 = RelativeComplex(alg, even_part(alg), M, fc.cx.even_only)
    g0, a0, _ = even_subalgebra_as_algebra(alg, a)
    inner = RelativeComplex(g0, a0, trivial_module(g0))
    rows, bad = [], []
    for n in range(max_degree + 1):
        for p in range(n + 1):
            q = n - p
            lhs = fc.cell(2, p, q).dim
            rhs = rel_g0.cohomology(p).dim * inner.cohomology(q).dim
            row = {"p": p, "q": q, "e2": lhs, "product": rhs}
            rows.append(row)
            if lhs != rhs:
                bad.append(row)
    return E2Report(rows, bad, bool(alg.classical))


@dataclass
class CollapseReport:
    collapsed: bool
    witness: tuple | None  # (r, p, q) of the first nonzero differential
    checked_up_to: int

    def to_json(self) -> dict:
        return {"collapsed": self.collapsed, "witness": list(self.witness) if self.witness else None,
                "max_total_degree": self.checked_up_to}


def collapse_detect(fc: FilteredComplex, max_degree: int | None = None) -> CollapseReport:
    """True iff every d_r, r >= 2, vanishes on cells of total degree < max_degree."""
    top = fc.max_degree if max_degree is None else min(max_degree, fc.max_degree)
    for r in range(2, fc.infinity + 1):
        for n in range(top):
            for p in range(n + 1):
                if not fc.differential(r, p, n - p).is_zero():
                    return CollapseReport(False, (r, p, n - p), top)
    return CollapseReport(True, None, top)


def edge_vs_restriction(alg, a, max_degree: int, M: Representation | None = None,
                        fc: FilteredComplex | None = None) -> list[dict]:
    """Per degree: rank of res: H^n(g, g0) -> H^n(g, a) against dim E_inf^{n,0}.

    E_inf^{n,0} is the image of the edge map from E_2^{n,0}, so its dimension
    is the edge rank.  The image of res lands in F^n H^n, which is the top
    graded piece.
    """
    if fc is None:
        fc = build_filtration(alg, a, M, max_degree)
    small = fc.cx
    big = RelativeComplex(alg, even_part(alg), small.M, small.even_only)
    out = []
    for n in range(max_degree + 1):
        R = restriction_matrix(big, small, n)
        h_big = big.cohomology(n)
        h_small = small.cohomology(n)
        classes = []
        for rep in h_big.quotient.representatives:
            classes.append(h_small.quotient.class_of(R.apply(rep)))
        res_rank = linalg.rank(RationalMatrix.from_columns(h_small.dim, classes)) if classes else 0
        edge = fc.cell(fc.infinity, n, 0).dim
        out.append({"n": n, "restriction_rank": res_rank, "edge_rank": edge,
                    "e2": fc.cell(2, n, 0).dim, "agree": res_rank == edge})
    return out


# ---------------------------------------------------------------------------
# Reports


def spectral_report(fc: FilteredComplex, pages: int) -> dict:
    out = {"pages": {}, "differential_ranks": {}, "e_infinity": {}}
    for r in range(pages + 1):
        pg = fc.page(r)
        for (p, q), c in sorted(pg.cells.items()):
            out["pages"][f"{r},{p},{q}"] = c.dim
        for (p, q), m in sorted(pg.differentials.items()):
            out["differential_ranks"][f"{r},{p},{q}"] = linalg.rank(m)
    for (p, q), d in sorted(fc.e_infinity().items()):
        out["e_infinity"][f"{p},{q}"] = d
    return out


def staircase(dims: dict, max_degree: int, label: str) -> str:
    """Text grid of a page: q grows upward, p to the right; blank cells outside the range."""
    lines = [label]
    width = max([len(str(v)) for v in dims.values()] + [1]) + 1
    for q in range(max_degree, -1, -1):
        cells = []
        for p in range(max_degree + 1):
            v = dims.get((p, q))
            cells.append((str(v) if v is not None else ".").rjust(width))
        lines.append(f"q={q:<2}|" + "".join(cells))
    lines.append("    +" + "-" * (width * (max_degree + 1)))
    lines.append("     " + "".join(str(p).rjust(width) for p in range(max_degree + 1)) + "  p")
    return "\n".join(lines)
