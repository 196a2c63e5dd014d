"""Tests for embedded partitions: Euler counts, parity, normalization.

Random sphere / planar-domain partitions come from Delaunay triangulations
(tests/helpers.py); the Euler identity must hold exactly on every sample.
"""

import json
import time

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import helpers
from nodalkit.errors import MalformedEmbedding
from nodalkit.partition import (EmbeddedPartition, PartitionBuilder,
                                check_boundary_parity, dart, normalize,
                                partition_stats, trace_faces, verify_euler)
from nodalkit.surface import SurfaceSpec


def test_circle_on_sphere():
    p = helpers.circle_on_sphere()
    st_ = partition_stats(p)
    assert (st_.kappa, st_.beta, st_.sigma) == (2, 1, 0)
    assert verify_euler(p).passed


def test_theta_graph():
    p = helpers.theta_graph()
    st_ = partition_stats(p)
    assert st_.kappa == 3
    assert st_.sigma == 1  # two nu=3 vertices contribute 1/2 each
    assert st_.faces == 3  # V - E + F = 2 - 3 + 3 = 2
    assert verify_euler(p).passed


def test_figure_eight():
    p = helpers.figure_eight()
    st_ = partition_stats(p)
    assert st_.kappa == 3 and st_.sigma == 1
    assert verify_euler(p).passed


def test_disk_with_diameter():
    p = helpers.disk_with_diameter()
    st_ = partition_stats(p)
    assert st_.kappa == 2
    assert st_.beta == 0
    assert st_.sigma_b == 1  # two rho=1 points, 1/2 each
    assert verify_euler(p).passed


def test_boundary_parity():
    reports = check_boundary_parity(helpers.disk_with_diameter())
    assert len(reports) == 1
    assert reports[0]["rhoSum"] == 2 and reports[0]["met"] and reports[0]["passed"]
    # a circle marker boundary (no singular points) is fine: component not met
    reports = check_boundary_parity(helpers.moebius_core_circle())
    assert reports[0]["met"] is False and reports[0]["passed"]
    # odd rho sum must fail
    b = PartitionBuilder(SurfaceSpec.planar_domain(0), nodal=True)
    z = b.boundary_vertex(1, 0)
    bb = b.edge(z, z, boundary=True, component=0)
    lp = b.edge(z, z)
    b.set_rotation(z, [dart(bb, 0), dart(lp, 0), dart(lp, 1), dart(bb, 1)])
    with pytest.raises(MalformedEmbedding):
        b.build()  # rho=1 but two non-boundary darts attached


def test_moebius_fixtures():
    core, parallel, arc = helpers.moebius_fixtures()
    sc = partition_stats(core)
    assert (sc.kappa, sc.beta, sc.omega) == (1, 1, 0)
    sp = partition_stats(parallel)
    assert (sp.kappa, sp.beta, sp.omega) == (2, 1, 1)
    sa = partition_stats(arc)
    assert (sa.kappa, sa.omega) == (2, 1) and sa.sigma_b == 1
    for p in (core, parallel, arc):
        assert verify_euler(p).passed


def test_torus_non_separating_circle():
    b = PartitionBuilder(SurfaceSpec.closed_orientable(1), nodal=True)
    c = b.circle()
    b.edge(c, c)
    p = b.build()
    st_ = partition_stats(p)
    assert st_.kappa == 1  # complement is one annulus
    r = verify_euler(p)
    assert r.passed  # kappa >= chi + sigma = 0


def test_random_partitions_exact():
    rng = np.random.default_rng(20260824)
    start = time.perf_counter()
    for i in range(1000):
        holes = (None, 0, 2)[i % 3]
        p = helpers.random_planar_partition(rng, planar_holes=holes)
        r = verify_euler(p)
        assert r.passed, (i, r.__dict__)
        st_ = partition_stats(p)
        assert st_.kappa >= 1
    assert time.perf_counter() - start < 5


def test_normalize_preserves_invariants():
    rng = np.random.default_rng(99)
    for i in range(100):
        p = helpers.random_planar_partition(rng, (None, 0)[i % 2])
        before = partition_stats(p)
        n = normalize(p)
        after = partition_stats(n)
        assert after.beta == before.beta
        assert after.kappa - after.sigma == before.kappa - before.sigma
        assert after.omega == before.omega
        assert verify_euler(n).passed
        m = normalize(n)
        assert len(m.vertices) == len(n.vertices)


def test_normalize_figure_eight():
    p = helpers.figure_eight()
    n = normalize(p)
    st_ = partition_stats(n)
    # the nu=4 vertex with a pinched face blows up into a small circle
    assert (st_.kappa, st_.sigma) == (4, 2)
    assert verify_euler(n).passed
    assert len(normalize(n).vertices) == len(n.vertices)


def test_normalize_boundary_tangency():
    p = helpers.disk_tangent_loop()
    before = partition_stats(p)
    assert before.kappa == 2
    n = normalize(p)
    after = partition_stats(n)
    assert after.beta == before.beta
    assert after.kappa - after.sigma == before.kappa - before.sigma
    assert verify_euler(n).passed


def test_normalize_moebius_invariants():
    for p in helpers.moebius_fixtures():
        before = partition_stats(p)
        n = normalize(p)
        after = partition_stats(n)
        assert (after.beta, after.omega) == (before.beta, before.omega)
        assert after.kappa - after.sigma == before.kappa - before.sigma


def test_face_trace_counts():
    assert partition_stats(helpers.circle_on_sphere()).faces == 2
    assert partition_stats(helpers.figure_eight()).faces == 3
    walks = trace_faces(helpers.theta_graph())
    assert len(walks) == 3
    assert sum(len(w.corners) for w in walks) == 2 * 3  # each dart one corner


def test_degree_invariants_enforced():
    b = PartitionBuilder(SurfaceSpec.sphere())
    u = b.interior(3)
    b.edge(u, u)
    with pytest.raises(MalformedEmbedding):
        b.build()  # nu=3 but degree 2
    b = PartitionBuilder(SurfaceSpec.sphere(), nodal=True)
    u = b.interior(3)
    v = b.interior(3)
    for _ in range(3):
        b.edge(u, v)
    b.set_rotation(u, [dart(0, 0), dart(1, 0), dart(2, 0)])
    b.set_rotation(v, [dart(0, 1), dart(2, 1), dart(1, 1)])
    with pytest.raises(MalformedEmbedding):
        b.build()  # nodal partitions need even interior valency >= 4


def test_json_round_trip():
    for p in [helpers.circle_on_sphere(), helpers.disk_with_diameter(),
              helpers.moebius_parallel_circle()]:
        blob = json.dumps(p.to_json())
        q = EmbeddedPartition.from_json(json.loads(blob))
        assert partition_stats(q).to_json() == partition_stats(p).to_json()


@given(st.integers(min_value=0, max_value=2 ** 32 - 1))
@settings(max_examples=40, deadline=None)
def test_euler_property(seed):
    rng = np.random.default_rng(seed)
    p = helpers.random_planar_partition(rng, planar_holes=seed % 3 - 1
                                        if seed % 3 else None)
    assert verify_euler(p).passed
