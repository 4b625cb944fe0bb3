import pytest
from hypothesis import given, settings, strategies as st

from superkoszul import linalg
from superkoszul.algebra import adjoint_module, make_gl, preset_subalgebra, trivial_module
from superkoszul.cochains import RelativeComplex
from superkoszul.spectral import (
    FilteredComplex,
    build_filtration,
    collapse_detect,
    e0_expected,
    e1_check,
    e2_factorization_check,
    edge_vs_restriction,
    page,
    spectral_report,
    staircase,
)

GL11, GL21 = make_gl(1, 1), make_gl(2, 1)

INSTANCES = {
    "gl11-center-C": (GL11, "center", "trivial", 5),
    "gl11-0-C": (GL11, "0", "trivial", 4),
    "gl11-0-ad": (GL11, "0", "adjoint", 4),
    "gl11-cartan-ad": (GL11, "cartan", "adjoint", 4),
    "gl21-cartan-C": (GL21, "cartan", "trivial", 4),
    "gl21-g0-ad": (GL21, "g0", "adjoint", 4),
    "gl21-center-C": (GL21, "center", "trivial", 3),
}
_cache = {}


def fc_for(key) -> FilteredComplex:
    if key not in _cache:
        g, s, m, N = INSTANCES[key]
        M = trivial_module(g) if m == "trivial" else adjoint_module(g)
        _cache[key] = build_filtration(g, preset_subalgebra(g, s), M, N)
    return _cache[key]


@pytest.mark.parametrize("key", INSTANCES)
def test_filtration_axioms(key):
    assert fc_for(key).check_axioms() == []


@pytest.mark.parametrize("key", INSTANCES)
def test_filtration_equals_block_description(key):
    fc = fc_for(key)
    for n in range(fc.max_degree + 1):
        for p in range(n + 2):
            assert fc.filtration(n, p) == fc.block_filtration(n, p)


def test_filtration_examples():
    fc = fc_for("gl11-center-C")
    cx = fc.cx
    assert fc.filtration(2, 0).dim == cx.cochains(2).dim
    assert fc.filtration(2, 3).dim == 0
    F22 = fc.filtration(2, 2)
    duals = [cx.to_equivariant(2, cx.dual_cochain(m)) for m in [(1, 1), (1, 2), (2, 2)]]
    assert F22 == linalg.span(cx.cochains(2).dim, duals)


def test_rejects_odd_subalgebra():
    from superkoszul.algebra import EvenSubalgebra
    with pytest.raises(ValueError):
        build_filtration(GL11, EvenSubalgebra.from_indices(GL11, [1]), None, 2)


@pytest.mark.parametrize("key", INSTANCES)
def test_e0_dims(key):
    fc = fc_for(key)
    g, s, m, N = INSTANCES[key]
    for n in range(min(N, 3) + 1):
        for p in range(n + 1):
            assert page(fc, 0, p, n - p).dim == e0_expected(g, fc.cx.sub, fc.cx.M, p, n - p)


@pytest.mark.parametrize("key", INSTANCES)
def test_e1_identification(key):
    assert all(r["ok"] for r in e1_check(fc_for(key)))


@pytest.mark.parametrize("key", INSTANCES)
def test_convergence(key):
    fc = fc_for(key)
    einf = fc.e_infinity()
    for n in range(fc.max_degree + 1):
        assert sum(einf[(p, n - p)] for p in range(n + 1)) == fc.cx.cohomology(n).dim


@pytest.mark.parametrize("key", INSTANCES)
def test_pages_monotone_and_homology_of_previous(key):
    fc = fc_for(key)
    N = fc.max_degree
    for r in range(0, N + 2):
        for n in range(N):
            for p in range(n + 1):
                q = n - p
                dim_now = fc.cell(r, p, q).dim
                assert fc.cell(r + 1, p, q).dim <= dim_now
                out_rank = linalg.rank(fc.differential(r, p, q))
                src = (p - r, q + r - 1)
                in_rank = 0
                if src[0] >= 0 and src[1] >= 0:
                    in_rank = linalg.rank(fc.differential(r, *src))
                assert fc.cell(r + 1, p, q).dim == dim_now - out_rank - in_rank


@pytest.mark.parametrize("key", INSTANCES)
def test_dr_squared_zero(key):
    fc = fc_for(key)
    N = fc.max_degree
    for r in range(N + 2):
        for n in range(N - 1):
            for p in range(n + 1):
                q = n - p
                tp, tq = p + r, q - r + 1
                if tq < 0:
                    continue
                d1 = fc.differential(r, p, q)
                d2 = fc.differential(r, tp, tq)
                assert (d2 @ d1).is_zero()


def test_e2_examples():
    rep = e2_factorization_check(GL11, preset_subalgebra(GL11, "center"), None, 4)
    assert rep.mismatches == []
    fc = build_filtration(GL21, preset_subalgebra(GL21, "g0"), None, 4)
    rep = e2_factorization_check(GL21, preset_subalgebra(GL21, "g0"), None, 4, fc)
    for row in rep.rows:
        if row["q"] > 0:
            assert row["e2"] == 0
    assert fc.cell(2, 0, 0).dim == 1


def test_collapse_examples():
    assert collapse_detect(fc_for("gl21-cartan-C")).collapsed
    assert collapse_detect(build_filtration(GL21, preset_subalgebra(GL21, "g0"), None, 4)).collapsed
    rep = collapse_detect(fc_for("gl11-0-C"))
    assert not rep.collapsed and rep.witness[0] >= 2


def test_parity_pattern_forces_collapse():
    fc = fc_for("gl21-cartan-C")
    N = fc.max_degree
    for n in range(N + 1):
        for p in range(n + 1):
            if p % 2 or (n - p) % 2:
                assert fc.cell(2, p, n - p).dim == 0


def test_edge_examples():
    rows = edge_vs_restriction(GL11, preset_subalgebra(GL11, "center"), 4)
    assert rows[0]["restriction_rank"] == rows[0]["edge_rank"] == 1
    assert all(r["agree"] for r in rows)
    g0 = preset_subalgebra(GL21, "g0")
    for r in edge_vs_restriction(GL21, g0, 3):
        assert r["agree"]
        assert r["restriction_rank"] == RelativeComplex(GL21, g0).cohomology(r["n"]).dim


def test_range_errors():
    fc = fc_for("gl11-center-C")
    with pytest.raises(ValueError):
        fc.cell(0, 3, 3)
    with pytest.raises(ValueError):
        fc.differential(1, 5, 0)
    with pytest.raises(ValueError):
        fc.cell(fc.infinity + 1, 0, 0)


def test_report_and_staircase():
    fc = fc_for("gl11-center-C")
    rep = spectral_report(fc, 2)
    assert rep["pages"]["2,0,0"] == 1 and rep["e_infinity"]["4,0"] == 1
    text = staircase(fc.page(2, False).dims(), fc.max_degree, "E_2")
    assert text.splitlines()[0] == "E_2" and "q=0" in text


@settings(max_examples=15)
@given(st.sampled_from(["center", "cartan", "g0", "0"]), st.sampled_from(["trivial", "adjoint"]))
def test_filtration_axioms_gl11_random(s, m):
    M = trivial_module(GL11) if m == "trivial" else adjoint_module(GL11)
    fc = build_filtration(GL11, preset_subalgebra(GL11, s), M, 3)
    assert fc.check_axioms() == []
