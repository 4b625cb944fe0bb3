"""The relative Koszul complex C^n(g, a; M) = Hom_a(Lambda_s^n(g/a), M).

Cochains are stored in *ambient* coordinates: one coordinate per pair
(monomial, module basis vector), where a monomial is a sorted tuple of
quotient indices (evens first, even entries distinct, odd entries may
repeat).  A coordinate is the value of the super-alternating multilinear map
on that sorted argument tuple, so the dual pairing has no multinomial
factors.  The a-equivariant cochains form a :class:`Subspace` of the ambient
space; coboundary matrices are written in its echelon basis.
"""

from __future__ import annotations

import bisect
import itertools
from dataclasses import dataclass
from math import comb
from typing import Mapping, NamedTuple, Sequence

from gmpy2 import mpq

from . import linalg
from .algebra import (
    EvenSubalgebra,
    LieSuperalgebra,
    QuotientBasis,
    Representation,
    quotient_basis,
    trivial_module,
)
from .linalg import Quotient, RationalMatrix, Subspace, axpy


class SuperMonomial(NamedTuple):
    """Basis element of Lambda_s^n: an exterior word in the even
    representatives times a symmetric word in the odd ones.

    ``odd`` indexes the odd representatives from 0.
    """

    even: tuple[int, ...]
    odd: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.even) + len(self.odd)

    def args(self, n_even: int) -> tuple[int, ...]:
        """Flat quotient indices (odd ones shifted past the evens)."""
        return self.even + tuple(n_even + o for o in self.odd)


def superext_count(even_dim: int, odd_dim: int, n: int) -> int:
    total = 0
    for p in range(0, min(n, even_dim) + 1):
        if n == p:
            total += comb(even_dim, p)
        elif odd_dim:
            total += comb(even_dim, p) * comb(odd_dim + n - p - 1, n - p)
    return total


def superext_basis(even_dim: int, odd_dim: int, n: int) -> list[SuperMonomial]:
    """Basis of Lambda_s^n(V0 + V1): even-heavy monomials first, lex within."""
    out = []
    for p in range(min(n, even_dim), -1, -1):
        for ev in itertools.combinations(range(even_dim), p):
            for od in itertools.combinations_with_replacement(range(odd_dim), n - p):
                out.append(SuperMonomial(ev, od))
    return out


def tau(i: int, alphas: Sequence[int], beta: int) -> int:
    """Parity exponent of the i-th action term."""
    return (i + alphas[i] * (sum(alphas[:i]) + beta)) % 2


def sigma(i: int, j: int, alphas: Sequence[int]) -> int:
    """Parity exponent of the (i, j) bracket term."""
    return (i + j + alphas[i] * alphas[j] + alphas[i] * sum(alphas[:i]) + alphas[j] * sum(alphas[:j])) % 2


def sort_sign(args: Sequence[int], par: Sequence[int]) -> tuple[int, tuple]:
    """Sign and sorted form of an argument tuple in Lambda_s.

    Swapping neighbours x, y costs ``-(-1)^{|x||y|}``; a repeated even
    argument gives 0.
    """
    sign = 1
    n = len(args)
    for a in range(n):
        x = args[a]
        for b in range(a + 1, n):
            y = args[b]
            if x > y:
                if not (par[x] and par[y]):
                    sign = -sign
            elif x == y and not par[x]:
                return 0, ()
    return sign, tuple(sorted(args))


def _insert_sign(k: int, rest: tuple, par: Sequence[int], n_even_rest: int) -> tuple[int, tuple]:
    """``sort_sign((k,) + rest)`` for sorted ``rest``."""
    pos = bisect.bisect_left(rest, k)
    if par[k]:
        # k moves past the even entries only
        return (-1 if n_even_rest % 2 else 1), rest[:pos] + (k,) + rest[pos:]
    if pos < len(rest) and rest[pos] == k:
        return 0, ()
    return (-1 if pos % 2 else 1), rest[:pos] + (k,) + rest[pos:]


@dataclass(frozen=True, eq=False)
class RelativeCochainSpace:
    degree: int
    monomials: tuple[tuple[int, ...], ...]
    module_dim: int
    basis: Subspace

    @property
    def ambient_dim(self) -> int:
        return self.basis.ambient_dim

    @property
    def dim(self) -> int:
        return self.basis.dim


@dataclass(frozen=True, eq=False)
class CoboundaryMatrix:
    degree: int
    matrix: RationalMatrix


@dataclass(frozen=True, eq=False)
class CohomologyGroup:
    degree: int
    dimension: int
    representatives: tuple[dict, ...]  # ambient cochains
    quotient: Quotient  # Z^n / B^n in equivariant coordinates
    parity_dims: tuple[int, int]

    @property
    def dim(self) -> int:
        return self.dimension


class RelativeComplex:
    """C^*(g, a; M) with per-degree caching.

    ``even_only`` restricts to even cochains (the even-morphism reading of
    Hom_a).
    """

    def __init__(self, alg: LieSuperalgebra, a: EvenSubalgebra, M: Representation | None = None,
                 even_only: bool = False):
        self.alg = alg
        self.sub = a
        self.M = M if M is not None else trivial_module(alg)
        if len(self.M.matrices) != alg.dim:
            raise ValueError("module does not match the algebra")
        self.even_only = even_only
        self.qb: QuotientBasis = quotient_basis(alg, a)
        qb = self.qb
        self.qpar = qb.parities
        self.n_even = qb.n_even
        self.n_odd = qb.n_odd
        self.mdim = self.M.dim
        self.mpar = self.M.parities
        self._brq = [[qb.project(alg.bracket(r, s)) for s in qb.reps] for r in qb.reps]
        self._rho = [self.M.action(r) for r in qb.reps]
        self._mono: dict[int, tuple] = {}
        self._index: dict[int, dict] = {}
        self._cochains: dict[int, RelativeCochainSpace] = {}
        self._ambient_d: dict[int, RationalMatrix] = {}
        self._d: dict[int, CoboundaryMatrix] = {}
        self._h: dict[int, CohomologyGroup] = {}

    # -- bases -------------------------------------------------------------

    def monomials(self, n: int) -> tuple[tuple[int, ...], ...]:
        if n not in self._mono:
            if n < 0:
                self._mono[n] = ()
            else:
                self._mono[n] = tuple(m.args(self.n_even) for m in superext_basis(self.n_even, self.n_odd, n))
            self._index[n] = {m: i for i, m in enumerate(self._mono[n])}
        return self._mono[n]

    def monomial_index(self, n: int) -> dict:
        self.monomials(n)
        return self._index[n]

    def ambient_dim(self, n: int) -> int:
        return len(self.monomials(n)) * self.mdim

    def coord(self, mono_idx: int, m: int) -> int:
        return mono_idx * self.mdim + m

    def split_coord(self, col: int) -> tuple[int, int]:
        return divmod(col, self.mdim)

    def mono_parity(self, mono: tuple) -> int:
        return sum(self.qpar[q] for q in mono) % 2

    def coord_parity(self, n: int, col: int) -> int:
        mi, m = self.split_coord(col)
        return (self.mono_parity(self.monomials(n)[mi]) + self.mpar[m]) % 2

    def odd_count(self, mono: tuple) -> int:
        return sum(self.qpar[q] for q in mono)

    # -- a-action ------------------------------------------------------------

    def a_action_matrix(self, x: Mapping, n: int) -> RationalMatrix:
        """Matrix of f -> x.f on ambient n-cochains (x an algebra vector in a)."""
        if not self.sub.contains(x):
            raise ValueError("element does not lie in the subalgebra")
        qb = self.qb
        adq = [qb.project(self.alg.bracket_vectors(x, {r: 1})) for r in qb.reps]
        rho = self.M.act
        rhox_cols = {m: rho(x, {m: 1}) for m in range(self.mdim)}
        monos = self.monomials(n)
        idx = self.monomial_index(n)
        rows: dict = {}
        for wi, w in enumerate(monos):
            # x.f(w): contributes rho(x)[m_out][m'] f(w)[m']
            for mp, col in rhox_cols.items():
                for mo, v in col.items():
                    r = rows.setdefault(self.coord(wi, mo), {})
                    c = self.coord(wi, mp)
                    r[c] = r.get(c, 0) + v
            # - sum_i f(w_1..[x,w_i]..w_n)
            for i, q in enumerate(w):
                for k, c in adq[q].items():
                    s, srt = sort_sign(w[:i] + (k,) + w[i + 1:], self.qpar)
                    if not s:
                        continue
                    mu = idx[srt]
                    for mo in range(self.mdim):
                        r = rows.setdefault(self.coord(wi, mo), {})
                        cc = self.coord(mu, mo)
                        r[cc] = r.get(cc, 0) - s * c
        dim = self.ambient_dim(n)
        return RationalMatrix.from_rows(dim, dim, rows)

    def cochains(self, n: int) -> RelativeCochainSpace:
        if n not in self._cochains:
            dim = self.ambient_dim(n)
            rows: dict = {}
            off = 0
            for x in self.sub.vectors:
                A = self.a_action_matrix(x, n)
                for r, row in A.data.items():
                    rows[off + r] = row
                off += dim
            if self.even_only:
                for col in range(dim):
                    if self.coord_parity(n, col):
                        rows[off + col] = {col: mpq(1)}
                off += dim
            basis = linalg.kernel(RationalMatrix(max(off, 0), dim, rows)) if rows else linalg.full_space(dim)
            self._cochains[n] = RelativeCochainSpace(n, self.monomials(n), self.mdim, basis)
        return self._cochains[n]

    # -- coboundary ------------------------------------------------------------

    def ambient_coboundary(self, n: int) -> RationalMatrix:
        """The coboundary formula as a matrix on ambient coordinates.

        Only meaningful on a-equivariant cochains, where it does not depend
        on the choice of representatives.
        """
        if n in self._ambient_d:
            return self._ambient_d[n]
        qpar = self.qpar
        mpar = self.mpar
        src = self.monomial_index(n)
        out_monos = self.monomials(n + 1)
        brq = self._brq
        rho = self._rho
        mdim = self.mdim
        rows: dict = {}
        for wi, w in enumerate(out_monos):
            alphas = [qpar[q] for q in w]
            total = sum(alphas)
            prefix = list(itertools.accumulate([0] + alphas))
            # bracket terms, same for every module component
            pair: dict = {}
            for i, j in itertools.combinations(range(len(w)), 2):
                br = brq[w[i]][w[j]]
                if not br:
                    continue
                sg = (i + j + alphas[i] * alphas[j] + alphas[i] * prefix[i] + alphas[j] * prefix[j]) % 2
                rest = w[:i] + w[i + 1:j] + w[j + 1:]
                ne = sum(1 for q in rest if not qpar[q])
                for k, c in br.items():
                    s, srt = _insert_sign(k, rest, qpar, ne)
                    if not s:
                        continue
                    mu = src[srt]
                    v = -s * c if sg else s * c
                    pair[mu] = pair.get(mu, 0) + v
            pair = {k: v for k, v in pair.items() if v}
            for mo in range(mdim):
                row = {mu * mdim + mo: v for mu, v in pair.items()}
                rows[wi * mdim + mo] = row
            # action terms
            for i, q in enumerate(w):
                act = rho[q]
                if act.is_zero():
                    continue
                rest = w[:i] + w[i + 1:]
                mu = src[rest]
                rest_par = (total - alphas[i]) % 2
                for mo, arow in act.data.items():
                    row = rows[wi * mdim + mo]
                    for mp, v in arow.items():
                        fbar = (rest_par + mpar[mp]) % 2
                        t = (i + alphas[i] * (prefix[i] + fbar)) % 2
                        c = mu * mdim + mp
                        row[c] = row.get(c, 0) + (-v if t else v)
        dim_out = self.ambient_dim(n + 1)
        D = RationalMatrix.from_rows(dim_out, self.ambient_dim(n), rows)
        self._ambient_d[n] = D
        return D

    def apply_d(self, f: Mapping, n: int) -> dict:
        return self.ambient_coboundary(n).apply(f)

    def coboundary(self, n: int) -> CoboundaryMatrix:
        """d: C^n -> C^{n+1} in the equivariant bases."""
        if n in self._d:
            return self._d[n]
        src = self.cochains(n)
        tgt = self.cochains(n + 1)
        cols = []
        if src.dim:
            A = self.ambient_coboundary(n)
            for b in src.basis.vectors:
                img = A.apply(b)
                try:
                    cols.append(tgt.basis.coordinates(img))
                except ValueError:
                    raise AssertionError(
                        f"coboundary of an equivariant {n}-cochain is not equivariant"
                    ) from None
        D = CoboundaryMatrix(n, RationalMatrix.from_columns(tgt.dim, cols) if cols
                             else RationalMatrix.zero(tgt.dim, 0))
        self._d[n] = D
        return D

    def d_matrix(self, n: int) -> RationalMatrix:
        if n < 0:
            return RationalMatrix.zero(self.cochains(0).dim, 0)
        return self.coboundary(n).matrix

    # -- cohomology ------------------------------------------------------------

    def cocycles(self, n: int) -> Subspace:
        return linalg.kernel(self.d_matrix(n))

    def coboundaries(self, n: int) -> Subspace:
        if n <= 0:
            return linalg.zero_space(self.cochains(max(n, 0)).dim)
        return linalg.image(self.d_matrix(n - 1))

    def cohomology(self, n: int) -> CohomologyGroup:
        if n not in self._h:
            q = linalg.quotient(self.cocycles(n), self.coboundaries(n))
            basis = self.cochains(n).basis
            reps = tuple(basis.combination(v) for v in q.representatives)
            pd = [0, 0]
            for r in reps:
                pd[self.cochain_parity(n, r)] += 1
            self._h[n] = CohomologyGroup(n, q.dim, reps, q, tuple(pd))
        return self._h[n]

    def cochain_parity(self, n: int, f: Mapping) -> int:
        ps = {self.coord_parity(n, c) for c in f}
        if len(ps) > 1:
            raise ValueError("cochain is not parity-homogeneous")
        return ps.pop() if ps else 0

    def to_equivariant(self, n: int, f: Mapping) -> dict:
        return self.cochains(n).basis.coordinates(f)

    def class_of(self, n: int, f: Mapping) -> dict:
        """Coordinates in the cohomology basis of the class of a cocycle."""
        return self.cohomology(n).quotient.class_of(self.to_equivariant(n, f))

    def cochain(self, n: int, values: Mapping[tuple, Mapping[int, object]]) -> dict:
        """Ambient cochain from ``{sorted monomial: {module index: value}}``."""
        idx = self.monomial_index(n)
        out = {}
        for mono, vals in values.items():
            mi = idx[tuple(mono)]
            for m, v in vals.items():
                if v:
                    out[self.coord(mi, m)] = mpq(v)
        return out

    def dual_cochain(self, mono: Sequence[int], m: int = 0) -> dict:
        """The cochain sending ``mono`` to the m-th module basis vector and every other monomial to 0."""
        mono = tuple(mono)
        return self.cochain(len(mono), {mono: {m: 1}})


# ---------------------------------------------------------------------------
# Function interface


def _complex(alg, a, M=None, even_only=False) -> RelativeComplex:
    return RelativeComplex(alg, a, M, even_only)


def a_action(cx: RelativeComplex, x: Mapping, f: Mapping, n: int) -> dict:
    """``x.f`` for an element x of a and an ambient n-cochain f."""
    return cx.a_action_matrix(x, n).apply(f)


def relative_cochains(alg, a, M, n, even_only: bool = False) -> RelativeCochainSpace:
    return _complex(alg, a, M, even_only).cochains(n)


def coboundary(alg, a, M, n, even_only: bool = False) -> CoboundaryMatrix:
    return _complex(alg, a, M, even_only).coboundary(n)


def cohomology(alg, a, M, n, even_only: bool = False) -> CohomologyGroup:
    return _complex(alg, a, M, even_only).cohomology(n)


def pullback_matrix(small: RelativeComplex, big: RelativeComplex, n: int) -> RationalMatrix:
    """Ambient matrix of f -> f o (g/small -> g/big) on n-cochains."""
    qs, qg = small.qb, big.qb
    L = [qg.project(qs.lift(q)) for q in range(qs.dim)]
    idx = big.monomial_index(n)
    mdim = small.mdim
    rows: dict = {}
    for wi, w in enumerate(small.monomials(n)):
        acc: dict = {}
        for terms in itertools.product(*(L[q].items() for q in w)):
            coef = mpq(1)
            args = []
            for k, c in terms:
                coef *= c
                args.append(k)
            s, srt = sort_sign(args, big.qpar)
            if s:
                mu = idx[srt]
                acc[mu] = acc.get(mu, 0) + s * coef
        for mo in range(mdim):
            rows[wi * mdim + mo] = {mu * mdim + mo: v for mu, v in acc.items() if v}
    return RationalMatrix.from_rows(small.ambient_dim(n), big.ambient_dim(n), rows)


def restriction_matrix(big: RelativeComplex, small: RelativeComplex, n: int) -> RationalMatrix:
    """Inclusion C^n(g, big; M) -> C^n(g, small; M) in equivariant bases."""
    if big.alg is not small.alg or (big.M is not small.M and
                                    (big.M.carrier_dims, big.M.matrices) != (small.M.carrier_dims, small.M.matrices)):
        raise ValueError("complexes must share the algebra and module")
    if not big.sub.space.contains_space(small.sub.space):
        raise ValueError("subalgebras are not nested")
    P = pullback_matrix(small, big, n)
    tgt = small.cochains(n).basis
    cols = [tgt.coordinates(P.apply(b)) for b in big.cochains(n).basis.vectors]
    return RationalMatrix.from_columns(tgt.dim, cols) if cols else RationalMatrix.zero(tgt.dim, 0)


def restriction_map(alg, big: EvenSubalgebra, small: EvenSubalgebra, M, n: int) -> RationalMatrix:
    return restriction_matrix(RelativeComplex(alg, big, M), RelativeComplex(alg, small, M), n)
