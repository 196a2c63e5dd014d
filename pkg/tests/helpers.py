"""Shared fixture builders for the test suite.

Hand-built embedded partitions (circle, theta, figure-eight, disk with a
diameter, Moebius-strip curves) plus a random planar-partition generator
based on Delaunay triangulations of random point sets.
"""

import numpy as np
from scipy.spatial import Delaunay

from nodalkit.partition import PartitionBuilder, dart
from nodalkit.surface import SurfaceSpec


def circle_on_sphere():
    b = PartitionBuilder(SurfaceSpec.sphere(), nodal=True)
    c = b.circle()
    b.edge(c, c)
    return b.build()


def theta_graph():
    b = PartitionBuilder(SurfaceSpec.sphere())
    u = b.interior(3)
    v = b.interior(3)
    e0 = b.edge(u, v)
    e1 = b.edge(u, v)
    e2 = b.edge(u, v)
    b.set_rotation(u, [dart(e0, 0), dart(e1, 0), dart(e2, 0)])
    b.set_rotation(v, [dart(e0, 1), dart(e2, 1), dart(e1, 1)])
    return b.build()


def figure_eight():
    b = PartitionBuilder(SurfaceSpec.sphere(), nodal=True)
    u = b.interior(4)
    a0 = b.edge(u, u)
    a1 = b.edge(u, u)
    b.set_rotation(u, [dart(a0, 0), dart(a0, 1), dart(a1, 0), dart(a1, 1)])
    return b.build()


def disk_with_diameter():
    b = PartitionBuilder(SurfaceSpec.planar_domain(0), nodal=True)
    x = b.boundary_vertex(1, 0)
    y = b.boundary_vertex(1, 0)
    b1 = b.edge(x, y, boundary=True, component=0)
    b2 = b.edge(y, x, boundary=True, component=0)
    d0 = b.edge(x, y)
    b.set_rotation(x, [dart(b1, 0), dart(d0, 0), dart(b2, 1)])
    b.set_rotation(y, [dart(b2, 0), dart(d0, 1), dart(b1, 1)])
    return b.build()


def disk_tangent_loop():
    """Nodal loop tangent to the boundary at a single rho=2 point."""
    b = PartitionBuilder(SurfaceSpec.planar_domain(0), nodal=True)
    z = b.boundary_vertex(2, 0)
    bb = b.edge(z, z, boundary=True, component=0)
    lp = b.edge(z, z)
    b.set_rotation(z, [dart(bb, 0), dart(lp, 0), dart(lp, 1), dart(bb, 1)])
    return b.build()


def moebius_core_circle():
    """1-sided core circle: complement is a single annulus-like domain."""
    b = PartitionBuilder(SurfaceSpec.moebius_strip(), nodal=True)
    c = b.circle()
    b.edge(c, c, signature=-1)
    m = b.circle()
    b.edge(m, m, boundary=True, component=0)
    return b.build()


def moebius_parallel_circle():
    """2-sided boundary-parallel circle: Moebius region + annulus region."""
    b = PartitionBuilder(SurfaceSpec.moebius_strip(), nodal=True)
    c = b.circle()
    b.edge(c, c, signature=1)
    m = b.circle()
    b.edge(m, m, boundary=True, component=0)
    return b.build()


def moebius_separating_arc():
    """Trivial arc: cuts off a disk, the other region keeps the cross-cap."""
    b = PartitionBuilder(SurfaceSpec.moebius_strip(), nodal=True)
    x = b.boundary_vertex(1, 0)
    y = b.boundary_vertex(1, 0)
    b1 = b.edge(x, y, boundary=True, component=0)
    b2 = b.edge(y, x, boundary=True, component=0)
    a = b.edge(x, y, signature=1)
    b.set_rotation(x, [dart(b1, 0), dart(a, 0), dart(b2, 1)])
    b.set_rotation(y, [dart(b2, 0), dart(a, 1), dart(b1, 1)])
    return b.build()


def moebius_fixtures():
    return [moebius_core_circle(), moebius_parallel_circle(),
            moebius_separating_arc()]


def random_planar_partition(rng, planar_holes=None):
    """Random embedded partition on the sphere (or a planar domain).

    Delaunay-triangulate a random point set, thin out some edges while
    keeping every vertex degree >= 2, and embed with the counter-clockwise
    rotation read off the coordinates.  Optionally append `planar_holes`+1
    boundary circles (markers far from the triangulation) to obtain a
    partition of a planar domain.
    """
    n = int(rng.integers(6, 15))
    pts = rng.random((n, 2))
    # Delaunay needs non-degenerate input; resample in the rare bad case
    for _ in range(10):
        try:
            tri = Delaunay(pts)
            break
        except Exception:
            pts = rng.random((n, 2))
    edges = set()
    for simplex in tri.simplices:
        for i in range(3):
            a, b = simplex[i], simplex[(i + 1) % 3]
            edges.add((min(a, b), max(a, b)))
    edges = sorted(edges)
    deg = {i: 0 for i in range(n)}
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
    kept = []
    for a, b in edges:
        if deg[a] > 3 and deg[b] > 3 and rng.random() < 0.35:
            deg[a] -= 1
            deg[b] -= 1
        else:
            kept.append((a, b))

    surface = (SurfaceSpec.sphere() if planar_holes is None
               else SurfaceSpec.planar_domain(planar_holes))
    bld = PartitionBuilder(surface, nodal=False)
    vid = {}
    for i in range(n):
        assert deg[i] >= 2
        if deg[i] == 2:
            vid[i] = bld.added()
        else:
            vid[i] = bld.interior(deg[i])
    incident = {i: [] for i in range(n)}
    for a, b in kept:
        e = bld.edge(vid[a], vid[b])
        incident[a].append((e, 0, b))
        incident[b].append((e, 1, a))
    for i in range(n):
        def angle(item):
            _, _, j = item
            v = pts[j] - pts[i]
            return np.arctan2(v[1], v[0])
        order = sorted(incident[i], key=angle)
        bld.set_rotation(vid[i], [dart(e, end) for e, end, _ in order])
    if planar_holes is not None:
        for comp in range(planar_holes + 1):
            m = bld.circle()
            bld.edge(m, m, boundary=True, component=comp)
    return bld.build()
