"""Embedded partitions as signed rotation systems, and the Euler-type formulas.

The boundary set of a regular partition (together with the boundary of the
surface, when there is one) is stored as a multigraph embedded via a signed
rotation system: darts (half-edges), a cyclic dart order per vertex, an edge
pairing, and a +-1 orientation signature per edge.  Faces are traced as mirror
pairs of orbits of the usual embedding-scheme permutation; the number of
complement regions of the graph is F - (c-1) over graph components (each extra
component nests inside a face of the rest).

Planar domains are modeled on the sphere with q+1 distinguished hole faces
(one per boundary circle: the unique traced face whose walk uses only that
circle's boundary edges); kappa = regions - holes.  The Moebius strip is
modeled on the projective plane the same way.

For closed surfaces of genus >= 1 the embedding of a partition need not be
cellular; a region with b boundary circles is traced as b faces.  We report
kappa = regions - defect/2 where defect = chi(completion) - chi(model) counts
the handles/cross-caps hidden inside regions; this is a lower bound for the
true region count, which keeps the Euler inequality check conservative.

The orientability character omega is 1 iff the model surface is
non-orientable and the defect is positive (a cross-cap hides inside some
region, which is then non-orientable); on orientable surfaces every region is
orientable and omega = 0.

All arithmetic is exact (int / Fraction).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import MalformedEmbedding
from .surface import SurfaceSpec

INTERIOR = "InteriorSingular"   # interior singular point, index nu >= 3
BOUNDARY = "BoundarySingular"   # boundary singular point, index rho >= 1
CIRCLE = "CircleMarker"         # marker on a singular-point-free circle
ADDED = "Added"                 # auxiliary vertex from additions / blow-ups

_KINDS = (INTERIOR, BOUNDARY, CIRCLE, ADDED)


@dataclass(frozen=True)
class PartitionVertex:
    id: int
    kind: str
    nu: int = 0          # semi-arc index for interior singular vertices
    rho: int = 0         # hitting-arc index for boundary singular vertices
    component: int = 0   # boundary component, for boundary vertices

    def to_json(self):
        d = {"id": self.id, "kind": self.kind}
        if self.kind == INTERIOR:
            d["nu"] = self.nu
        if self.kind == BOUNDARY:
            d["rho"] = self.rho
            d["component"] = self.component
        return d


def dart(edge: int, end: int) -> int:
    return 2 * edge + end


@dataclass
class EmbeddedPartition:
    """Immutable after construction (treat as frozen; operations return new objects)."""
    surface: SurfaceSpec
    vertices: list                  # list[PartitionVertex], ids = positions
    edge_ends: list                 # list[(u, v)]; dart 2e at u, 2e+1 at v
    edge_boundary: list             # list[bool]
    edge_signature: list            # list[int in {+1, -1}]
    rotation: dict                  # vertex id -> tuple of darts (cyclic, ccw)
    boundary_components: list       # list[list[edge id]] (cycles of boundary edges)
    nodal: bool = False             # flagged as coming from an eigenfunction

    # ------------------------------------------------------------------

    @property
    def n_edges(self) -> int:
        return len(self.edge_ends)

    def vertex_of(self, d: int) -> int:
        u, v = self.edge_ends[d // 2]
        return u if d % 2 == 0 else v

    def theta(self, d: int) -> int:
        return d ^ 1

    def validate(self):
        nv, ne = len(self.vertices), self.n_edges
        for i, v in enumerate(self.vertices):
            if v.id != i:
                raise MalformedEmbedding("vertex ids must be 0..n-1 in order")
            if v.kind not in _KINDS:
                raise MalformedEmbedding("unknown vertex kind %r" % v.kind)
        if not (len(self.edge_boundary) == len(self.edge_signature) == ne):
            raise MalformedEmbedding("edge attribute lists disagree in length")
        seen = {}
        for vid, rot in self.rotation.items():
            for d in rot:
                if d in seen:
                    raise MalformedEmbedding("dart %d in two rotations" % d)
                seen[d] = vid
        if sorted(seen) != list(range(2 * ne)):
            raise MalformedEmbedding("rotations do not cover every dart exactly once")
        for d, vid in seen.items():
            if self.vertex_of(d) != vid:
                raise MalformedEmbedding("dart %d listed at vertex %d but edge says %d"
                                         % (d, vid, self.vertex_of(d)))
        # degree constraints
        for v in self.vertices:
            deg = len(self.rotation.get(v.id, ()))
            if v.kind == INTERIOR:
                if v.nu < 3:
                    raise MalformedEmbedding("interior singular vertex needs nu >= 3")
                if self.nodal and (v.nu % 2 or v.nu < 4):
                    raise MalformedEmbedding("nodal partitions need even interior "
                                             "valency >= 4 (vertex %d has nu=%d)"
                                             % (v.id, v.nu))
                if deg != v.nu:
                    raise MalformedEmbedding("vertex %d: degree %d != nu %d"
                                             % (v.id, deg, v.nu))
            elif v.kind == BOUNDARY:
                if v.rho < 1:
                    raise MalformedEmbedding("boundary singular vertex needs rho >= 1")
                if deg != v.rho + 2:
                    raise MalformedEmbedding("vertex %d: degree %d != rho+2"
                                             % (v.id, deg))
                nb = sum(1 for d in self.rotation[v.id] if self.edge_boundary[d // 2])
                if nb != 2:
                    raise MalformedEmbedding("boundary vertex %d must meet exactly "
                                             "2 boundary darts" % v.id)
            elif deg < 1:
                raise MalformedEmbedding("isolated vertex %d" % v.id)
        # boundary components
        want = self.surface.boundary_components
        if want == 0:
            if any(self.edge_boundary):
                raise MalformedEmbedding("closed surface with boundary edges")
            if self.boundary_components:
                raise MalformedEmbedding("closed surface with boundary components")
            return
        if len(self.boundary_components) != want:
            raise MalformedEmbedding("expected %d boundary components, got %d"
                                     % (want, len(self.boundary_components)))
        claimed = [e for comp in self.boundary_components for e in comp]
        if sorted(claimed) != sorted(i for i in range(self.n_edges)
                                     if self.edge_boundary[i]):
            raise MalformedEmbedding("boundary components must partition the "
                                     "boundary edges")
        for comp in self.boundary_components:
            degs = {}
            for e in comp:
                for x in self.edge_ends[e]:
                    degs[x] = degs.get(x, 0) + 1
            if any(d != 2 for d in degs.values()):
                raise MalformedEmbedding("boundary component is not a disjoint "
                                         "union-free single cycle")
            # connectivity of the cycle
            if comp:
                reach = {self.edge_ends[comp[0]][0]}
                grow = True
                while grow:
                    grow = False
                    for e in comp:
                        u, v = self.edge_ends[e]
                        if (u in reach) != (v in reach):
                            reach.update((u, v))
                            grow = True
                if set(degs) != reach:
                    raise MalformedEmbedding("boundary component is not connected")

    # ------------------------------------------------------------------

    def to_json(self):
        return {
            "formatVersion": 1,
            "surface": self.surface.to_json(),
            "vertices": [v.to_json() for v in self.vertices],
            "edges": [{"ends": list(self.edge_ends[i]),
                       "boundary": bool(self.edge_boundary[i]),
                       "signature": int(self.edge_signature[i])}
                      for i in range(self.n_edges)],
            "rotation": {str(v): list(rot) for v, rot in sorted(self.rotation.items())},
            "boundaryComponents": [list(c) for c in self.boundary_components],
            "nodal": self.nodal,
        }

    @staticmethod
    def from_json(obj):
        surface = SurfaceSpec.from_json(obj["surface"])
        vertices = []
        for v in obj["vertices"]:
            vertices.append(PartitionVertex(int(v["id"]), v["kind"],
                                            nu=int(v.get("nu", 0)),
                                            rho=int(v.get("rho", 0)),
                                            component=int(v.get("component", 0))))
        ends, bnd, sig = [], [], []
        for e in obj["edges"]:
            ends.append(tuple(int(x) for x in e["ends"]))
            bnd.append(bool(e.get("boundary", False)))
            sig.append(int(e.get("signature", 1)))
        rot = {int(k): tuple(int(d) for d in v) for k, v in obj["rotation"].items()}
        comps = [[int(e) for e in c] for c in obj.get("boundaryComponents", [])]
        p = EmbeddedPartition(surface, vertices, ends, bnd, sig, rot, comps,
                              nodal=bool(obj.get("nodal", False)))
        p.validate()
        return p


class PartitionBuilder:
    """Convenience builder; rotations of degree <= 2 vertices are inferred."""

    def __init__(self, surface: SurfaceSpec, nodal: bool = False):
        self.surface = surface
        self.nodal = nodal
        self.vertices = []
        self.edge_ends = []
        self.edge_boundary = []
        self.edge_signature = []
        self.edge_component = []
        self.rotation = {}

    def _vertex(self, kind, **kw):
        v = PartitionVertex(len(self.vertices), kind, **kw)
        self.vertices.append(v)
        return v.id

    def interior(self, nu):
        return self._vertex(INTERIOR, nu=nu)

    def boundary_vertex(self, rho, component=0):
        return self._vertex(BOUNDARY, rho=rho, component=component)

    def circle(self):
        return self._vertex(CIRCLE)

    def added(self):
        return self._vertex(ADDED)

    def edge(self, u, v, boundary=False, signature=1, component=0):
        e = len(self.edge_ends)
        self.edge_ends.append((u, v))
        self.edge_boundary.append(boundary)
        self.edge_signature.append(signature)
        self.edge_component.append(component if boundary else None)
        return e

    def set_rotation(self, v, darts):
        self.rotation[v] = tuple(darts)

    def build(self) -> EmbeddedPartition:
        incident = {v.id: [] for v in self.vertices}
        for e, (u, v) in enumerate(self.edge_ends):
            incident[u].append(dart(e, 0))
            incident[v].append(dart(e, 1))
        for vid, darts in incident.items():
            if vid not in self.rotation:
                if len(darts) > 2:
                    raise MalformedEmbedding("vertex %d has degree %d; rotation "
                                             "must be given" % (vid, len(darts)))
                self.rotation[vid] = tuple(darts)
        ncomp = self.surface.boundary_components
        comps = [[] for _ in range(ncomp)]
        for e in range(len(self.edge_ends)):
            if self.edge_boundary[e]:
                comps[self.edge_component[e]].append(e)
        p = EmbeddedPartition(self.surface, self.vertices, self.edge_ends,
                              self.edge_boundary, self.edge_signature,
                              self.rotation, comps, nodal=self.nodal)
        p.validate()
        return p


# ---------------------------------------------------------------------------
# face tracing
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FaceWalk:
    """One face, represented by one of its two orbit orientations.

    states: ((dart, sign), ...) in walk order; each element means "traverse
    this dart with the current orientation sign".
    """
    states: tuple
    edges: frozenset
    corners: tuple      # vertex visited at each step (after crossing the edge)

    @property
    def degree(self):
        return len(self.states)


def _face_orbits(p: EmbeddedPartition):
    pos = {}
    for vid, rot in p.rotation.items():
        for i, d in enumerate(rot):
            pos[d] = (vid, i)

    def next_state(d, s):
        e = p.theta(d)
        s2 = s * p.edge_signature[d // 2]
        vid, i = pos[e]
        rot = p.rotation[vid]
        nd = rot[(i + 1) % len(rot)] if s2 > 0 else rot[(i - 1) % len(rot)]
        return nd, s2

    orbits = []
    orbit_of = {}
    for d0 in range(2 * p.n_edges):
        for s0 in (1, -1):
            if (d0, s0) in orbit_of:
                continue
            orbit = []
            st = (d0, s0)
            while st not in orbit_of:
                orbit_of[st] = len(orbits)
                orbit.append(st)
                st = next_state(*st)
            if st != (d0, s0):
                raise MalformedEmbedding("face tracing did not close up")
            orbits.append(tuple(orbit))
    return orbits, orbit_of


def trace_faces(p: EmbeddedPartition):
    """Faces as mirror-orbit pairs; returns a list of FaceWalk (one per face)."""
    p.validate()
    orbits, orbit_of = _face_orbits(p)
    used = [False] * len(orbits)
    faces = []
    for i, orbit in enumerate(orbits):
        if used[i]:
            continue
        d, s = orbit[0]
        j = orbit_of[(p.theta(d), -s)]
        used[i] = used[j] = True
        edges = frozenset(d // 2 for d, _ in orbit)
        corners = tuple(p.vertex_of(p.theta(d)) for d, _ in orbit)
        faces.append(FaceWalk(orbit, edges, corners))
    return faces


# ---------------------------------------------------------------------------
# statistics and Euler checks
# ---------------------------------------------------------------------------

def _components(p: EmbeddedPartition):
    """Union-find over vertices through edges; returns (count, label per vertex)."""
    parent = list(range(len(p.vertices)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in p.edge_ends:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[rv] = ru
    labels = [find(v) for v in range(len(p.vertices))]
    return len(set(labels)), labels


@dataclass(frozen=True)
class PartitionStats:
    kappa: int
    beta: int
    sigma_i: Fraction
    sigma_b: Fraction
    omega: int
    b0_boundary: int
    faces: int
    components: int
    regions: int
    defect: int

    @property
    def sigma(self) -> Fraction:
        return self.sigma_i + self.sigma_b

    def to_json(self):
        return {"kappa": self.kappa, "beta": self.beta,
                "sigmaI": str(self.sigma_i), "sigmaB": str(self.sigma_b),
                "sigma": str(self.sigma), "omega": self.omega,
                "b0Boundary": self.b0_boundary, "faces": self.faces,
                "components": self.components, "regions": self.regions,
                "defect": self.defect}


def _hole_faces(p: EmbeddedPartition, faces):
    """One hole face per boundary component: the traced face whose walk uses
    only that component's boundary edges.  For an untouched circle both sides
    qualify; the first is taken (the count is unaffected by the choice)."""
    holes = []
    for ci, comp in enumerate(p.boundary_components):
        comp_edges = set(comp)
        cands = [fi for fi, f in enumerate(faces) if f.edges <= comp_edges]
        cands = [fi for fi in cands if fi not in holes]
        if not cands:
            raise MalformedEmbedding("no hole face for boundary component %d" % ci)
        holes.append(cands[0])
    return holes


def partition_stats(p: EmbeddedPartition) -> PartitionStats:
    faces = trace_faces(p)
    F = len(faces)
    c, labels = _components(p)
    # per-component Euler characteristic of the cellular completion
    vcnt, ecnt, fcnt = {}, {}, {}
    for v in range(len(p.vertices)):
        vcnt[labels[v]] = vcnt.get(labels[v], 0) + 1
    for u, v in p.edge_ends:
        ecnt[labels[u]] = ecnt.get(labels[u], 0) + 1
    for f in faces:
        lab = labels[p.vertex_of(next(iter(f.states))[0])]
        fcnt[lab] = fcnt.get(lab, 0) + 1
    chi_completion = sum(vcnt[l] - ecnt.get(l, 0) + fcnt.get(l, 0) for l in vcnt) \
        - 2 * (c - 1)
    defect = chi_completion - p.surface.closed_model_euler()

    regions = F - (c - 1)
    b0 = p.surface.boundary_components
    if b0:
        _hole_faces(p, faces)  # existence check
        kappa = regions - b0
    elif p.surface.param == 0 and p.surface.orientable:
        kappa = regions
    else:
        kappa = regions - max(0, defect) // 2
    beta = c - b0
    sigma_i = sum((Fraction(v.nu - 2, 2) for v in p.vertices if v.kind == INTERIOR),
                  Fraction(0))
    sigma_b = sum((Fraction(v.rho, 2) for v in p.vertices if v.kind == BOUNDARY),
                  Fraction(0))
    omega = 1 if (not p.surface.orientable and defect > 0) else 0
    if kappa < 1:
        raise MalformedEmbedding("computed kappa %d < 1" % kappa)
    return PartitionStats(kappa, beta, sigma_i, sigma_b, omega, b0,
                          F, c, regions, defect)


@dataclass(frozen=True)
class EulerReport:
    surface: SurfaceSpec
    stats: PartitionStats
    relation: str        # "equality" or "inequality"
    predicted: Fraction
    kappa: int
    passed: bool

    def to_json(self):
        return {"surface": self.surface.to_json(), "relation": self.relation,
                "predicted": str(self.predicted), "kappa": self.kappa,
                "passed": self.passed, "stats": self.stats.to_json()}


def verify_euler(p: EmbeddedPartition) -> EulerReport:
    """Sphere/planar: kappa = 1 + beta + sigma; Moebius: kappa = omega + beta
    + sigma; other closed surfaces: kappa >= chi + sigma."""
    st = partition_stats(p)
    kind = p.surface.kind
    from .surface import euler_characteristic
    if kind == "PlanarDomain" or (kind == "ClosedOrientable" and p.surface.param == 0):
        predicted = 1 + st.beta + st.sigma
        return EulerReport(p.surface, st, "equality", predicted, st.kappa,
                           st.kappa == predicted)
    if kind == "MoebiusStrip":
        predicted = st.omega + st.beta + st.sigma
        return EulerReport(p.surface, st, "equality", predicted, st.kappa,
                           st.kappa == predicted)
    predicted = euler_characteristic(p.surface) + st.sigma
    return EulerReport(p.surface, st, "inequality", predicted, st.kappa,
                       st.kappa >= predicted)


def check_boundary_parity(p: EmbeddedPartition):
    """Per boundary component: if the partition boundary meets it, the total
    hitting index must be even and >= 2 (nodal partitions)."""
    if not p.surface.has_boundary:
        raise MalformedEmbedding("surface has no boundary")
    reports = []
    for ci in range(len(p.boundary_components)):
        rho_sum = sum(v.rho for v in p.vertices
                      if v.kind == BOUNDARY and v.component == ci)
        met = rho_sum > 0
        ok = (not met) or (rho_sum % 2 == 0 and rho_sum >= 2)
        reports.append({"component": ci, "rhoSum": rho_sum, "met": met,
                        "passed": ok})
    return reports


# ---------------------------------------------------------------------------
# normalization (blow-up of locally-disconnected singular points)
# ---------------------------------------------------------------------------

def _violating_vertices(p: EmbeddedPartition):
    """Singular vertices some face visits in two or more rotation corners."""
    faces = trace_faces(p)
    bad = set()
    for f in faces:
        seen = {}
        for v in f.corners:
            seen[v] = seen.get(v, 0) + 1
        for v, n in seen.items():
            if n >= 2 and p.vertices[v].kind in (INTERIOR, BOUNDARY):
                bad.add(v)
    return sorted(bad)


class _Mutable:
    """Working copy of a partition for surgeries."""

    def __init__(self, p: EmbeddedPartition):
        self.surface = p.surface
        self.nodal = p.nodal
        self.vertices = list(p.vertices)
        self.edge_ends = list(p.edge_ends)
        self.edge_boundary = list(p.edge_boundary)
        self.edge_signature = list(p.edge_signature)
        self.rotation = {v: list(r) for v, r in p.rotation.items()}
        self.bcomp = [list(c) for c in p.boundary_components]
        self.edge_component = {}
        for ci, comp in enumerate(self.bcomp):
            for e in comp:
                self.edge_component[e] = ci

    def new_vertex(self, kind, **kw):
        v = PartitionVertex(len(self.vertices), kind, **kw)
        self.vertices.append(v)
        return v.id

    def new_edge(self, u, v, boundary=False, signature=1, component=None):
        e = len(self.edge_ends)
        self.edge_ends.append((u, v))
        self.edge_boundary.append(boundary)
        self.edge_signature.append(signature)
        if boundary:
            self.bcomp[component].append(e)
            self.edge_component[e] = component
        return e

    def reattach(self, d, new_v):
        """Move dart d's endpoint to new_v (rotation entry set separately)."""
        e, side = d // 2, d % 2
        u, v = self.edge_ends[e]
        self.edge_ends[e] = (new_v, v) if side == 0 else (u, new_v)

    def freeze(self) -> EmbeddedPartition:
        p = EmbeddedPartition(self.surface, self.vertices, self.edge_ends,
                              self.edge_boundary, self.edge_signature,
                              {v: tuple(r) for v, r in self.rotation.items()},
                              self.bcomp, nodal=self.nodal)
        p.validate()
        return p


def _blow_up_interior(m: _Mutable, vid: int):
    rot = m.rotation.pop(vid)
    n = len(rot)
    ws = [m.new_vertex(INTERIOR, nu=3) for _ in range(n)]
    for i, d in enumerate(rot):
        m.reattach(d, ws[i])
    circ = [m.new_edge(ws[i], ws[(i + 1) % n]) for i in range(n)]
    for i in range(n):
        out_d = dart(circ[i], 0)                 # towards w_{i+1}
        in_d = dart(circ[(i - 1) % n], 1)        # from w_{i-1}
        m.rotation[ws[i]] = [rot[i], out_d, in_d]
    # vid keeps its slot but becomes degree-0; drop it by re-indexing
    _drop_vertex(m, vid)


def _blow_up_boundary(m: _Mutable, vid: int):
    v = m.vertices[vid]
    rot = list(m.rotation.pop(vid))
    # normalize cyclic order to [b1, arcs..., b2]
    bpos = [i for i, d in enumerate(rot) if m.edge_boundary[d // 2]]
    if len(bpos) != 2:
        raise MalformedEmbedding("boundary vertex %d without 2 boundary darts" % vid)
    n = len(rot)
    i1, i2 = bpos
    if i2 - i1 == 1:               # forward gap empty; arcs wrap around
        start = i2
    elif i2 - i1 == n - 1:         # wrap gap empty; arcs lie between them
        start = i1
    else:
        raise MalformedEmbedding("arc darts at boundary vertex %d are not "
                                 "contiguous" % vid)
    rot = [rot[(start + t) % n] for t in range(n)]
    b1, b2 = rot[0], rot[-1]
    arcs = rot[1:-1]
    rho = len(arcs)
    ci = m.edge_component[b1 // 2]
    z1 = m.new_vertex(BOUNDARY, rho=1, component=ci)
    z2 = m.new_vertex(BOUNDARY, rho=1, component=ci)
    ws = [m.new_vertex(INTERIOR, nu=3) for _ in range(rho)]
    m.reattach(b1, z1)
    m.reattach(b2, z2)
    for i, d in enumerate(arcs):
        m.reattach(d, ws[i])
    chain = [z1] + ws + [z2]
    half = [m.new_edge(chain[i], chain[i + 1]) for i in range(rho + 1)]
    nb = m.new_edge(z1, z2, boundary=True, component=ci)
    m.rotation[z1] = [b1, dart(half[0], 0), dart(nb, 0)]
    m.rotation[z2] = [dart(nb, 1), dart(half[rho], 1), b2]
    for i in range(rho):
        m.rotation[ws[i]] = [arcs[i], dart(half[i + 1], 0), dart(half[i], 1)]
    _drop_vertex(m, vid)


def _drop_vertex(m: _Mutable, vid: int):
    """Remove a now-isolated vertex and renumber ids above it."""
    assert vid not in m.rotation
    del m.vertices[vid]

    def ren(x):
        return x - 1 if x > vid else x

    m.vertices = [PartitionVertex(i, v.kind, nu=v.nu, rho=v.rho,
                                  component=v.component)
                  for i, v in enumerate(m.vertices)]
    m.edge_ends = [(ren(u), ren(v)) for u, v in m.edge_ends]
    m.rotation = {ren(v): r for v, r in m.rotation.items()}


def normalize(p: EmbeddedPartition) -> EmbeddedPartition:
    """Blow up every locally-disconnected singular point by inserting a small
    disk face; preserves (beta, kappa - sigma, omega); idempotent.

    The result is a plain graph partition: the surgery introduces odd-valency
    vertices, so the output does not carry the nodal flag even if the input
    did."""
    current = p
    if p.nodal:
        current = EmbeddedPartition(p.surface, p.vertices, p.edge_ends,
                                    p.edge_boundary, p.edge_signature,
                                    p.rotation, p.boundary_components,
                                    nodal=False)
    for _ in range(len(p.vertices) + p.n_edges + 4):
        bad = _violating_vertices(current)
        if not bad:
            return current
        m = _Mutable(current)
        vid = bad[0]
        if current.vertices[vid].kind == INTERIOR:
            _blow_up_interior(m, vid)
        else:
            _blow_up_boundary(m, vid)
        current = m.freeze()
    raise MalformedEmbedding("normalization did not terminate")
