import pytest

from toricarr.arrangement import AffineHyperplane, Window
from toricarr.cells import enumerate_faces
from toricarr.category import (check_acyclic, nerve_chains, boundary_matrices,
                               homology, euler_characteristic, verify_dd_zero)
from toricarr.salvetti import (salvetti_poset, toric_salvetti, is_thick,
                               cw_census, orbit_chain_counts)
from toricarr.cells import FaceCategory


def nerve_homology(cat, max_dim):
    chains = nerve_chains(cat, max_dim)
    cc = boundary_matrices(chains, cat)
    assert verify_dd_zero(cc)
    return chains, homology(cc)


# -- affine Salvetti poset

def test_point_in_line_is_circle():
    lifted = enumerate_faces([AffineHyperplane((1,), 0, 0, 0)], Window([-1], [1]))
    sal = salvetti_poset(lifted, truncated=False)
    assert len(sal.elements) == 4
    chains, h = nerve_homology(sal.as_category(), 1)
    assert [len(d) for d in chains] == [4, 4]
    assert h == [(1, []), (1, [])]


def test_two_generic_lines_are_torus():
    hps = [AffineHyperplane((1, 0), 0, 0, 0), AffineHyperplane((0, 1), 0, 1, 0)]
    lifted = enumerate_faces(hps, Window([-1, -1], [1, 1]))
    sal = salvetti_poset(lifted, truncated=False)
    assert len(sal.elements) == 16
    _, h = nerve_homology(sal.as_category(), 2)
    assert h == [(1, []), (2, []), (1, [])]


def test_chamber_pairs_bound_nothing(catalog):
    sal = salvetti_poset(catalog("one_point").lifted)
    for i, (fid, cid) in enumerate(sal.elements):
        if fid == cid:
            assert sal.grade(i) == 0
            for j in range(len(sal.elements)):
                if i != j:
                    assert not sal.leq(j, i)


# -- toric Salvetti category

def test_zeta_one_point(catalog):
    pipe = catalog("one_point")
    z = pipe.zeta
    assert z.census() == [1, 2]
    cat = z.as_category()
    ok, diags = check_acyclic(cat)
    assert ok, diags
    assert len(cat.nonidentity()) == 4
    chains, h = nerve_homology(cat, 1)
    assert euler_characteristic(chains) == -1
    assert h == [(1, []), (2, [])]


def test_zeta_two_points(catalog):
    z = catalog("two_points").zeta
    assert z.census() == [2, 4]
    cat = z.as_category()
    assert len(cat.nonidentity()) == 8
    chains, h = nerve_homology(cat, 1)
    assert h == [(1, []), (3, [])]


def test_zeta_diagonals(catalog):
    pipe = catalog("diagonals")
    z = pipe.zeta
    assert z.census() == [2, 8, 8]
    counts, chi = cw_census(z)
    assert (counts, chi) == ([2, 8, 8], 2)
    cat = z.as_category()
    ok, diags = check_acyclic(cat)
    assert ok, diags
    chains, h = nerve_homology(cat, 2)
    assert euler_characteristic(chains) == 2 == chi
    assert h[0] == (1, [])


def test_thickness_catalog(catalog):
    assert is_thick(catalog("grid").fc)
    assert not is_thick(catalog("one_point").fc)
    assert not is_thick(catalog("diagonals").fc)


def test_thick_zeta_is_poset(catalog):
    cat = catalog("grid").zeta.as_category()
    seen = {}
    for m in cat.nonidentity():
        key = (cat.source(m), cat.target(m))
        assert key not in seen
        seen[key] = m


def test_thick_on_empty_category():
    fc = FaceCategory(None, [], {}, [], {}, {})
    assert is_thick(fc)


def test_quotient_commutes_with_nerve(catalog):
    for name in ("one_point", "two_points", "diagonals", "grid"):
        pipe = catalog(name)
        n = pipe.spec.rank
        chains = nerve_chains(pipe.zeta.as_category(), n)
        assert orbit_chain_counts(pipe.lifted, n) == [len(d) for d in chains]


def test_window_independent_censuses(catalog):
    for name in ("one_point", "diagonals", "grid"):
        small = catalog(name, 1).zeta
        large = catalog(name, 2).zeta
        assert small.census() == large.census()
        assert len(small.morphisms) == len(large.morphisms)


def test_zeta_connected(catalog):
    for name in ("one_point", "diagonals", "grid"):
        cat = catalog(name).zeta.as_category()
        _, h = nerve_homology(cat, catalog(name).spec.rank)
        assert h[0] == (1, [])
