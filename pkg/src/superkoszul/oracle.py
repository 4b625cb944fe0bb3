"""Slow independent reference for relative cohomology dimensions.

Nothing here reuses the main engine: cochains live on the whole algebra
rather than on a quotient, relativity is imposed through the contraction
condition f(x, ...) = 0 for x in a, signs come from a literal bubble sort,
and all linear algebra is dense Gaussian elimination over Fraction.
Intended for small algebras and low degrees only.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def _rref(rows, ncols):
    """Dense reduced row echelon form; returns (rows, pivot columns)."""
    m = [list(map(Fraction, r)) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def _rank(rows, ncols):
    return len(_rref(rows, ncols)[1]) if rows else 0


def _nullspace(rows, ncols):
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    red, piv = _rref(rows, ncols)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, piv):
            v[p] = -row[f]
        basis.append(v)
    return basis


def _bubble(args, par):
    """Sort by adjacent swaps, tracking the super sign."""
    a = list(args)
    sign = 1
    for i in range(len(a)):
        for j in range(len(a) - 1 - i):
            if a[j] > a[j + 1]:
                x, y = a[j], a[j + 1]
                sign *= 1 if (par[x] and par[y]) else -1
                a[j], a[j + 1] = y, x
    for j in range(len(a) - 1):
        if a[j] == a[j + 1] and not par[a[j]]:
            return 0, None
    return sign, tuple(a)


def _monomials(par, n):
    ev = [i for i, p in enumerate(par) if p == 0]
    od = [i for i, p in enumerate(par) if p == 1]
    out = []
    for k in range(n + 1):
        for e in itertools.combinations(ev, k):
            for o in itertools.combinations_with_replacement(od, n - k):
                out.append(tuple(sorted(e + o)))
    return sorted(set(out))


def _table(alg):
    n = alg.dim
    br = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            br[i][j] = {k: Fraction(int(v.numerator), int(v.denominator)) for k, v in alg.bracket(i, j).items()}
    return br


def _rho(M):
    return [[[Fraction(v) for v in row] for row in mat] for mat in M.matrices]


class _Brute:
    def __init__(self, alg, a_vectors, M):
        self.par = list(alg.parities)
        self.dim = alg.dim
        self.br = _table(alg)
        self.rho = _rho(M)
        self.mdim = M.dim
        self.mpar = list(M.parities)
        self.a = [{int(k): Fraction(v) for k, v in x.items()} for x in a_vectors]
        self._C = {}

    def monos(self, n):
        return _monomials(self.par, n)

    def col(self, idx, mono, m):
        return idx[mono] * self.mdim + m

    def constraints(self, n):
        monos = self.monos(n)
        idx = {w: i for i, w in enumerate(monos)}
        N = len(monos) * self.mdim
        rows = []
        if n == 0:
            for x in self.a:
                for mo in range(self.mdim):
                    row = [Fraction(0)] * N
                    for k, c in x.items():
                        for mp in range(self.mdim):
                            row[mp] += c * self.rho[k][mo][mp]
                    rows.append(row)
            return rows, N
        # contraction with a
        for x in self.a:
            for rest in self.monos(n - 1):
                for mo in range(self.mdim):
                    row = [Fraction(0)] * N
                    for k, c in x.items():
                        s, w = _bubble((k,) + rest, self.par)
                        if s:
                            row[self.col(idx, w, mo)] += s * c
                    if any(row):
                        rows.append(row)
        # equivariance
        for x in self.a:
            for w in monos:
                for mo in range(self.mdim):
                    row = [Fraction(0)] * N
                    for k, c in x.items():
                        for mp in range(self.mdim):
                            if self.rho[k][mo][mp]:
                                row[self.col(idx, w, mp)] += c * self.rho[k][mo][mp]
                    for i, q in enumerate(w):
                        brk = {}
                        for k, c in x.items():
                            for t, v in self.br[k][q].items():
                                brk[t] = brk.get(t, 0) + c * v
                        for t, v in brk.items():
                            if not v:
                                continue
                            s, u = _bubble(w[:i] + (t,) + w[i + 1:], self.par)
                            if s:
                                row[self.col(idx, u, mo)] -= s * v
                    if any(row):
                        rows.append(row)
        return rows, N

    def cochain_basis(self, n):
        if n not in self._C:
            rows, N = self.constraints(n)
            self._C[n] = _nullspace(rows, N)
        return self._C[n]

    def d_of(self, f, n):
        """Apply the coboundary to a dense cochain f of degree n."""
        src = {w: i for i, w in enumerate(self.monos(n))}
        out = []
        md = self.mdim
        for w in self.monos(n + 1):
            al = [self.par[q] for q in w]
            vals = [Fraction(0)] * md
            for i in range(n + 1):
                rest = w[:i] + w[i + 1:]
                base = src[rest] * md
                for mo in range(md):
                    for mp in range(md):
                        r = self.rho[w[i]][mo][mp]
                        if r and f[base + mp]:
                            fbar = (sum(self.par[q] for q in rest) + self.mpar[mp]) % 2
                            t = i + al[i] * (sum(al[:i]) + fbar)
                            vals[mo] += (-1) ** t * r * f[base + mp]
            for i in range(n + 1):
                for j in range(i + 1, n + 1):
                    sg = i + j + al[i] * al[j] + al[i] * sum(al[:i]) + al[j] * sum(al[:j])
                    rest = w[:i] + w[i + 1:j] + w[j + 1:]
                    for k, c in self.br[w[i]][w[j]].items():
                        s, u = _bubble((k,) + rest, self.par)
                        if not s:
                            continue
                        base = src[u] * md
                        for mo in range(md):
                            vals[mo] += (-1) ** sg * s * c * f[base + mo]
            out.extend(vals)
        return out

    def d_rank(self, n):
        if n < 0:
            return 0
        basis = self.cochain_basis(n)
        imgs = [self.d_of(b, n) for b in basis]
        return _rank(imgs, len(self.monos(n + 1)) * self.mdim)


def oracle_cohomology(alg, a_vectors, M, max_degree):
    """dim H^n(g, a; M) for n = 0..max_degree by the brute method.

    ``a_vectors`` is a list of algebra vectors ``{index: value}`` spanning a.
    """
    b = _Brute(alg, a_vectors, M)
    dims = []
    for n in range(max_degree + 1):
        c = len(b.cochain_basis(n))
        dims.append(c - b.d_rank(n) - b.d_rank(n - 1))
    return dims


def oracle_cochain_dims(alg, a_vectors, M, max_degree):
    b = _Brute(alg, a_vectors, M)
    return [len(b.cochain_basis(n)) for n in range(max_degree + 1)]


def oracle_d_squared_zero(alg, a_vectors, M, max_degree):
    """True if d^2 = 0 on relative cochains up to the given degree."""
    b = _Brute(alg, a_vectors, M)
    for n in range(max_degree - 1):
        for f in b.cochain_basis(n):
            if any(b.d_of(b.d_of(f, n), n + 1)):
                return False
    return True


def oracle_invariants(alg, q):
    """dim of the even-part invariants in degree-q polynomials on the odd part.

    The even part acts on odd coordinate functions by minus the transpose of
    the adjoint action, extended as a derivation.
    """
    par = alg.parities
    ev = [i for i in range(alg.dim) if par[i] == 0]
    od = [i for i in range(alg.dim) if par[i] == 1]
    pos = {o: t for t, o in enumerate(od)}
    br = _table(alg)
    monos = list(itertools.combinations_with_replacement(range(len(od)), q))
    idx = {m: i for i, m in enumerate(monos)}
    rows = []
    for x in ev:
        # action on y_t (dual of od[t]): y_t -> -sum_s ad_x[t][s] y_s,
        # where [x, od[s]] = sum_t ad_x[t][s] od[t]
        dual = {}
        for s, o in enumerate(od):
            for k, v in br[x][o].items():
                t = pos[k]
                dual.setdefault(t, {})
                dual[t][s] = dual[t].get(s, 0) - v
        mat = [[Fraction(0)] * len(monos) for _ in monos]
        for mi, m in enumerate(monos):
            for i, t in enumerate(m):
                for s, v in dual.get(t, {}).items():
                    new = tuple(sorted(m[:i] + (s,) + m[i + 1:]))
                    mat[idx[new]][mi] += v
        rows.extend(mat)
    return len(monos) - _rank(rows, len(monos))
