"""Arrangements off the main catalog: non-primitive characters, walls
backed by several list entries at once, and nonzero angles."""

import json
import subprocess
import sys

from toricarr.arrangement import parse_spec, Window, lift_to_window
from toricarr.cells import enumerate_faces, quotient_faces
from toricarr.category import (nerve_chains, boundary_matrices, homology,
                               euler_characteristic)
from toricarr.salvetti import toric_salvetti, orbit_chain_counts
from toricarr.pi1 import (build_context, presentation_from_context, abelianize,
                          quotient_without_meridians)


def full_pipeline(doc, k=1):
    spec = parse_spec(doc)
    window = Window.standard(spec.rank, k)
    lifted = enumerate_faces(lift_to_window(spec, window), window)
    fc = quotient_faces(lifted)
    z = toric_salvetti(lifted, fc)
    return spec, lifted, fc, z


def zeta_homology(spec, z):
    cat = z.as_category()
    chains = nerve_chains(cat, spec.rank)
    return chains, homology(boundary_matrices(chains, cat))


def test_square_character_has_two_components():
    # t^2 = 1 cuts the circle at both square roots of unity
    spec, lifted, fc, z = full_pipeline(
        '{"rank":1,"hypersurfaces":[{"chi":[2],"q":"0"}]}')
    assert fc.census() == [2, 2]
    chains, h = zeta_homology(spec, z)
    assert h == [(1, []), (3, [])]
    pres = presentation_from_context(build_context(spec, lifted, fc))
    assert len(pres.names) == 3 and pres.relators == ()


def test_coincident_walls_share_geometry():
    # t = 1 and t^2 = 1 overlap at the integers of the lift
    spec, lifted, fc, z = full_pipeline(
        '{"rank":1,"hypersurfaces":[{"chi":[1],"q":"0"},{"chi":[2],"q":"0"}]}')
    assert len(lifted.class_rep) < len(lifted.hyperplanes)
    assert fc.census() == [2, 2]
    chains, h = zeta_homology(spec, z)
    assert h == [(1, []), (3, [])]
    assert orbit_chain_counts(lifted, 1) == [len(d) for d in chains]
    ctx = build_context(spec, lifted, fc)
    pres = presentation_from_context(ctx)
    assert abelianize(pres) == (3, [])


def test_mixed_angles_translate_the_diagonal_pair():
    spec, lifted, fc, z = full_pipeline(
        '{"rank":2,"hypersurfaces":[{"chi":[1,1],"q":"0"},{"chi":[1,-1],"q":"1/2"}]}')
    assert fc.census() == [2, 4, 2]
    assert z.census() == [2, 8, 8]
    chains, h = zeta_homology(spec, z)
    assert euler_characteristic(chains) == 2
    assert h == [(1, []), (4, []), (5, [])]
    assert orbit_chain_counts(lifted, 2) == [len(d) for d in chains]
    ctx = build_context(spec, lifted, fc)
    pres = presentation_from_context(ctx)
    assert abelianize(pres) == (4, [])
    assert abelianize(quotient_without_meridians(pres)) == (2, [])


def test_cli_essentializes_rank_deficient_input(tmp_path):
    doc = '{"rank":2,"hypersurfaces":[{"chi":[2,2],"q":"0"}]}'
    path = tmp_path / "arr.json"
    path.write_text(doc)
    res = subprocess.run([sys.executable, "-m", "toricarr", "validate",
                          str(path), "--format", "json"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    report = json.loads(res.stdout)
    assert report["essential"] is False
    ess = report["essentialization"]
    assert ess["rank"] == 1
    assert ess["basis"] == [[1, 1]]
    assert ess["arrangement"]["hypersurfaces"] == [{"chi": [2], "q": "0"}]
    res2 = subprocess.run([sys.executable, "-m", "toricarr", "salvetti",
                           str(path), "--format", "json"],
                          capture_output=True, text=True)
    assert res2.returncode == 0
    report2 = json.loads(res2.stdout)
    assert report2["face_census"] == [2, 2]
    assert report2["object_census_by_codim"] == [2, 4]
