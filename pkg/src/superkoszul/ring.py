"""Cup products, the truncated cohomology ring, and Ext(M, M) as a module over it.

Cup product on super-alternating cochains (shuffles over argument positions):

    (f ⌣ g)(w_1 .. w_{m+n}) = sum over position sets I, |I| = m, J = complement,
        eps(I, J) * (-1)^{|g| |w_I|} * f(w_I) g(w_J)

eps(I, J) is the Koszul sign of moving the arguments into the order (w_I, w_J):
each pair a in J, b in I with a < b contributes -(-1)^{|w_a||w_b|}.  |g| is the
parity of g as a map (argument parity plus value parity).  With this choice
d(f ⌣ g) = df ⌣ g + (-1)^m f ⌣ dg and f ⌣ g = (-1)^{mn + |f||g|} g ⌣ f.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Mapping

from gmpy2 import mpq

from . import linalg
from .algebra import EvenSubalgebra, LieSuperalgebra, Representation, dual_tensor_module, trivial_module
from .cochains import RelativeComplex
from .linalg import RationalMatrix, axpy, fstr

Pairing = Callable[[int, int], Mapping[int, object]]


def _by_monomial(cx: RelativeComplex, f: Mapping) -> dict:
    out: dict = {}
    for c, v in f.items():
        mi, m = cx.split_coord(c)
        out.setdefault(mi, {})[m] = v
    return out


def _same_quotient(a: RelativeComplex, b: RelativeComplex) -> None:
    if a.alg is not b.alg or a.qb.reps != b.qb.reps:
        raise ValueError("cochains live on different quotients")


def cup(cx_f: RelativeComplex, f: Mapping, m: int, cx_g: RelativeComplex, g: Mapping, n: int,
        cx_out: RelativeComplex | None = None, pairing: Pairing | None = None) -> dict:
    """Cup product of an m-cochain of ``cx_f`` with an n-cochain of ``cx_g``.

    Without a pairing one side must have trivial coefficients, which then
    act by scalars.  The result is an ambient (m+n)-cochain of ``cx_out``.
    """
    _same_quotient(cx_f, cx_g)
    if pairing is None:
        if cx_f.M.is_trivial:
            pairing = lambda a, b: {b: 1}
            cx_out = cx_out or cx_g
        elif cx_g.M.is_trivial:
            pairing = lambda a, b: {a: 1}
            cx_out = cx_out or cx_f
        else:
            raise ValueError("cup of two module-valued cochains needs a coefficient pairing")
    if cx_out is None:
        raise ValueError("an output complex is required with an explicit pairing")
    _same_quotient(cx_f, cx_out)
    fm = _by_monomial(cx_f, f)
    gm = _by_monomial(cx_g, g)
    if not fm or not gm:
        return {}
    f_idx = cx_f.monomial_index(m)
    g_idx = cx_g.monomial_index(n)
    f_monos = cx_f.monomials(m)
    g_monos = cx_g.monomials(n)
    f_support = {f_monos[i] for i in fm}
    g_support = {g_monos[i] for i in gm}
    par = cx_f.qpar
    gpar = cx_g.mpar
    total = m + n
    out: dict = {}
    for wi, w in enumerate(cx_out.monomials(total)):
        acc: dict = {}
        for I in itertools.combinations(range(total), m):
            wI = tuple(w[k] for k in I)
            if wI not in f_support:
                continue
            Iset = set(I)
            J = [k for k in range(total) if k not in Iset]
            wJ = tuple(w[k] for k in J)
            if wJ not in g_support:
                continue
            sign = 1
            for a in J:
                for b in I:
                    if a < b and not (par[w[a]] and par[w[b]]):
                        sign = -sign
            pI = sum(par[q] for q in wI) % 2
            pJ = sum(par[q] for q in wJ) % 2
            fv = fm[f_idx[wI]]
            gv = gm[g_idx[wJ]]
            for mf, a in fv.items():
                for mg, b in gv.items():
                    s = -sign if (pI and (pJ + gpar[mg]) % 2) else sign
                    for mo, c in pairing(mf, mg).items():
                        acc[mo] = acc.get(mo, 0) + s * a * b * c
        for mo, v in acc.items():
            if v:
                out[cx_out.coord(wi, mo)] = mpq(v)
    return out


# ---------------------------------------------------------------------------
# Truncated cohomology ring


@dataclass
class GradedRingTruncation:
    max_degree: int
    dims: list
    parities: list  # per degree, parity of each representative
    tables: dict  # (i, j) -> {(a, b): coordinate vector in H^{i+j}}
    complex: RelativeComplex = field(repr=False)

    def product(self, i: int, u: Mapping, j: int, v: Mapping) -> dict:
        """Product of classes given by coordinates in the representative bases."""
        out: dict = {}
        T = self.tables[(i, j)]
        for a, x in u.items():
            for b, y in v.items():
                axpy(out, x * y, T[(a, b)])
        return out

    def matrix(self, i: int, j: int) -> list:
        """Rows indexed by (a, b) in lexicographic order; columns by the basis of H^{i+j}."""
        T = self.tables[(i, j)]
        k = self.dims[i + j]
        return [[fstr(T[(a, b)].get(c, 0)) for c in range(k)]
                for a in range(self.dims[i]) for b in range(self.dims[j])]

    def to_json(self) -> dict:
        return {"dims": list(self.dims),
                "tables": {f"{i},{j}": self.matrix(i, j) for (i, j) in sorted(self.tables)}}


def _rep_parities(cx: RelativeComplex, n: int) -> list:
    return [cx.cochain_parity(n, r) for r in cx.cohomology(n).representatives]


def ring_truncation(alg: LieSuperalgebra, a: EvenSubalgebra, max_degree: int,
                    cx: RelativeComplex | None = None) -> GradedRingTruncation:
    """Multiplication tables of H(g, a; C) in degrees i + j <= max_degree."""
    cx = cx or RelativeComplex(alg, a, trivial_module(alg))
    if not cx.M.is_trivial:
        raise ValueError("ring truncation needs trivial coefficients")
    dims = [cx.cohomology(n).dim for n in range(max_degree + 1)]
    pars = [_rep_parities(cx, n) for n in range(max_degree + 1)]
    tables = {}
    for i in range(max_degree + 1):
        for j in range(max_degree + 1 - i):
            reps_i = cx.cohomology(i).representatives
            reps_j = cx.cohomology(j).representatives
            T = {}
            for ai, f in enumerate(reps_i):
                for bj, g in enumerate(reps_j):
                    T[(ai, bj)] = cx.class_of(i + j, cup(cx, f, i, cx, g, j))
            tables[(i, j)] = T
    return GradedRingTruncation(max_degree, dims, pars, tables, cx)


def hilbert_series(rt: GradedRingTruncation) -> list:
    return list(rt.dims)


@dataclass
class GeneratorReport:
    generators: dict  # degree -> list of coordinate vectors
    generated_dims: list
    surjective: bool
    generated_by_half: bool

    @property
    def degrees(self) -> list:
        return [d for d in sorted(self.generators) for _ in self.generators[d]]

    def to_json(self) -> dict:
        return {"generator_degrees": self.degrees, "generated_dims": self.generated_dims,
                "surjective_up_to_bound": self.surjective,
                "heuristic_generated_by_half_bound": self.generated_by_half}


def _span(dim: int, vecs) -> linalg.Subspace:
    return linalg.span(dim, [v for v in vecs if v])


def generator_probe(rt: GradedRingTruncation) -> GeneratorReport:
    """Greedy generators: in each positive degree, a complement of the decomposables.

    The surjectivity test then rebuilds the subalgebra spanned by products of
    the chosen generators and compares dimensions degree by degree.
    """
    N = rt.max_degree
    gens: dict = {}
    for d in range(1, N + 1):
        prods = []
        for i in range(1, d):
            for u in range(rt.dims[i]):
                for v in range(rt.dims[d - i]):
                    prods.append(rt.tables[(i, d - i)][(u, v)])
        dec = _span(rt.dims[d], prods)
        q = linalg.quotient(linalg.full_space(rt.dims[d]), dec)
        if q.dim:
            gens[d] = q.representatives
    generated = {0: linalg.full_space(rt.dims[0]) if rt.dims[0] else linalg.zero_space(0)}
    for d in range(1, N + 1):
        vecs = list(gens.get(d, []))
        for k, gl in gens.items():
            if k >= d:
                continue
            for gvec in gl:
                for s in generated[d - k].vectors:
                    vecs.append(rt.product(k, gvec, d - k, s))
        generated[d] = _span(rt.dims[d], vecs)
    gdims = [generated[d].dim for d in range(N + 1)]
    surj = gdims == list(rt.dims)
    half = surj and all(d <= max(N // 2, 1) for d in gens)
    return GeneratorReport(gens, gdims, surj, half)


# ---------------------------------------------------------------------------
# Ext(M, M) as a module over the ring truncation


@dataclass
class ExtModuleTruncation:
    max_degree: int
    dims: list
    action: dict  # (i, j) -> {(a, b): coordinate vector in Ext^{i+j}}
    annihilators: dict  # i -> Subspace of H^i(C)
    ring: GradedRingTruncation = field(repr=False)
    complex: RelativeComplex = field(repr=False)

    def act(self, i: int, u: Mapping, j: int, v: Mapping) -> dict:
        out: dict = {}
        T = self.action[(i, j)]
        for a, x in u.items():
            for b, y in v.items():
                axpy(out, x * y, T[(a, b)])
        return out

    def to_json(self) -> dict:
        tables = {}
        for (i, j), T in sorted(self.action.items()):
            k = self.dims[i + j]
            tables[f"{i},{j}"] = [[fstr(T[(a, b)].get(c, 0)) for c in range(k)]
                                  for a in range(self.ring.dims[i]) for b in range(self.dims[j])]
        return {"ext_dims": list(self.dims), "ring_dims": list(self.ring.dims), "action_tables": tables,
                "annihilator_dims": {str(i): s.dim for i, s in sorted(self.annihilators.items())},
                "annihilator_bases": {str(i): [{str(k): fstr(v) for k, v in sorted(vec.items())}
                                               for vec in s.vectors]
                                      for i, s in sorted(self.annihilators.items())}}


def ext_module(alg: LieSuperalgebra, a: EvenSubalgebra, M: Representation, max_degree: int,
               ring: GradedRingTruncation | None = None, even_only: bool = False) -> ExtModuleTruncation:
    """Ext^n(M, M) realized as H^n(g, a; M* ⊗ M), with the cup action of H(g, a; C)."""
    N = max_degree
    cx_c = ring.complex if ring is not None else RelativeComplex(alg, a, trivial_module(alg), even_only)
    ring = ring or ring_truncation(alg, a, N, cx_c)
    cx_e = RelativeComplex(alg, a, dual_tensor_module(M), even_only)
    dims = [cx_e.cohomology(n).dim for n in range(N + 1)]
    action = {}
    for i in range(N + 1):
        for j in range(N + 1 - i):
            T = {}
            for ai, f in enumerate(cx_c.cohomology(i).representatives):
                for bj, g in enumerate(cx_e.cohomology(j).representatives):
                    T[(ai, bj)] = cx_e.class_of(i + j, cup(cx_c, f, i, cx_e, g, j))
            action[(i, j)] = T
    ann = {}
    for i in range(N + 1):
        # u in H^i acts on each Ext^j; its matrix entries are linear in u
        rows: dict = {}
        r = 0
        for j in range(N + 1 - i):
            for b in range(dims[j]):
                for c in range(dims[i + j]):
                    row = {a_: action[(i, j)][(a_, b)].get(c, 0) for a_ in range(ring.dims[i])}
                    rows[r] = {k: v for k, v in row.items() if v}
                    r += 1
        ann[i] = linalg.kernel(RationalMatrix.from_rows(r, ring.dims[i], rows))
    return ExtModuleTruncation(N, dims, action, ann, ring, cx_e)
