import json

import pytest

from nodalkit.surface import SurfaceSpec, euler_characteristic, parse_surface


def test_euler_characteristics():
    assert euler_characteristic(SurfaceSpec.sphere()) == 2
    assert euler_characteristic(SurfaceSpec.closed_orientable(1)) == 0
    assert euler_characteristic(SurfaceSpec.closed_orientable(2)) == -2
    assert euler_characteristic(SurfaceSpec.closed_non_orientable(1)) == 1
    assert euler_characteristic(SurfaceSpec.closed_non_orientable(2)) == 0
    assert euler_characteristic(SurfaceSpec.planar_domain(0)) == 1
    assert euler_characteristic(SurfaceSpec.planar_domain(3)) == -2
    assert euler_characteristic(SurfaceSpec.moebius_strip()) == 0


def test_boundary_components():
    assert SurfaceSpec.sphere().boundary_components == 0
    assert SurfaceSpec.planar_domain(0).boundary_components == 1
    assert SurfaceSpec.planar_domain(2).boundary_components == 3
    assert SurfaceSpec.moebius_strip().boundary_components == 1
    assert not SurfaceSpec.sphere().has_boundary
    assert SurfaceSpec.moebius_strip().has_boundary


def test_orientability():
    assert SurfaceSpec.closed_orientable(5).orientable
    assert SurfaceSpec.planar_domain(1).orientable
    assert not SurfaceSpec.closed_non_orientable(2).orientable
    assert not SurfaceSpec.moebius_strip().orientable


def test_closed_model_euler():
    # planar domain caps to a sphere, Moebius strip to a projective plane
    assert SurfaceSpec.planar_domain(4).closed_model_euler() == 2
    assert SurfaceSpec.moebius_strip().closed_model_euler() == 1
    assert SurfaceSpec.closed_orientable(2).closed_model_euler() == -2


def test_json_round_trip():
    for s in [SurfaceSpec.sphere(), SurfaceSpec.closed_orientable(3),
              SurfaceSpec.closed_non_orientable(2),
              SurfaceSpec.planar_domain(1), SurfaceSpec.moebius_strip()]:
        blob = json.dumps(s.to_json())
        assert SurfaceSpec.from_json(json.loads(blob)) == s


def test_parse_surface_names():
    assert parse_surface("sphere") == SurfaceSpec.sphere()
    assert parse_surface("torus") == SurfaceSpec.closed_orientable(1)
    assert parse_surface("projective") == SurfaceSpec.closed_non_orientable(1)
    assert parse_surface("klein") == SurfaceSpec.closed_non_orientable(2)
    assert parse_surface("moebius") == SurfaceSpec.moebius_strip()
    assert parse_surface("disk") == SurfaceSpec.planar_domain(0)
    assert parse_surface("annulus") == SurfaceSpec.planar_domain(1)
    assert parse_surface("genus-3") == SurfaceSpec.closed_orientable(3)
    assert parse_surface("crosscaps-4") == SurfaceSpec.closed_non_orientable(4)
    assert parse_surface("planar-2") == SurfaceSpec.planar_domain(2)
    with pytest.raises(ValueError):
        parse_surface("dodecahedron")


def test_invalid_params():
    with pytest.raises(ValueError):
        SurfaceSpec.closed_orientable(-1)
    with pytest.raises(ValueError):
        SurfaceSpec.closed_non_orientable(0)
    with pytest.raises(ValueError):
        SurfaceSpec.planar_domain(-1)
