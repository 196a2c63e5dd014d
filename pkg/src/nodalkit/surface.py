"""Surface descriptors and their topological invariants.

A surface is one of:
  - closed orientable of genus g            (sphere = genus 0)
  - closed non-orientable with c cross-caps (projective plane = 1, Klein = 2)
  - planar domain with q holes              (sphere with q+1 open disks removed;
                                             boundary component 1 is the outer one)
  - Moebius strip                           (projective plane minus a disk)

Immutable value type, safe to share.
"""

from __future__ import annotations

from dataclasses import dataclass

CLOSED_ORIENTABLE = "ClosedOrientable"
CLOSED_NON_ORIENTABLE = "ClosedNonOrientable"
PLANAR_DOMAIN = "PlanarDomain"
MOEBIUS_STRIP = "MoebiusStrip"

_KINDS = (CLOSED_ORIENTABLE, CLOSED_NON_ORIENTABLE, PLANAR_DOMAIN, MOEBIUS_STRIP)


@dataclass(frozen=True)
class SurfaceSpec:
    kind: str
    param: int = 0  # genus / crossCaps / holes; ignored for MoebiusStrip

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError("unknown surface kind: %r" % (self.kind,))
        if self.kind == CLOSED_ORIENTABLE and self.param < 0:
            raise ValueError("genus must be >= 0")
        if self.kind == CLOSED_NON_ORIENTABLE and self.param < 1:
            raise ValueError("crossCaps must be >= 1")
        if self.kind == PLANAR_DOMAIN and self.param < 0:
            raise ValueError("holes must be >= 0")

    # -- convenience constructors ------------------------------------------

    @staticmethod
    def sphere() -> "SurfaceSpec":
        return SurfaceSpec(CLOSED_ORIENTABLE, 0)

    @staticmethod
    def closed_orientable(genus: int) -> "SurfaceSpec":
        return SurfaceSpec(CLOSED_ORIENTABLE, genus)

    @staticmethod
    def closed_non_orientable(cross_caps: int) -> "SurfaceSpec":
        return SurfaceSpec(CLOSED_NON_ORIENTABLE, cross_caps)

    @staticmethod
    def planar_domain(holes: int = 0) -> "SurfaceSpec":
        return SurfaceSpec(PLANAR_DOMAIN, holes)

    @staticmethod
    def moebius_strip() -> "SurfaceSpec":
        return SurfaceSpec(MOEBIUS_STRIP, 0)

    # -- queries ------------------------------------------------------------

    @property
    def has_boundary(self) -> bool:
        return self.kind in (PLANAR_DOMAIN, MOEBIUS_STRIP)

    @property
    def boundary_components(self) -> int:
        """b0 of the boundary of the surface."""
        if self.kind == PLANAR_DOMAIN:
            return self.param + 1
        if self.kind == MOEBIUS_STRIP:
            return 1
        return 0

    @property
    def orientable(self) -> bool:
        return self.kind in (CLOSED_ORIENTABLE, PLANAR_DOMAIN)

    def closed_model_euler(self) -> int:
        """Euler characteristic of the closed model surface (boundary circles capped).

        Planar domains live on the sphere; the Moebius strip on the projective plane.
        """
        if self.kind == CLOSED_ORIENTABLE:
            return 2 - 2 * self.param
        if self.kind == CLOSED_NON_ORIENTABLE:
            return 2 - self.param
        if self.kind == PLANAR_DOMAIN:
            return 2
        return 1  # MoebiusStrip -> projective plane

    # -- JSON ----------------------------------------------------------------

    def to_json(self) -> dict:
        return {"kind": self.kind, "param": self.param}

    @staticmethod
    def from_json(obj: dict) -> "SurfaceSpec":
        return SurfaceSpec(obj["kind"], int(obj.get("param", 0)))


def euler_characteristic(spec: SurfaceSpec) -> int:
    """chi of the surface itself (with boundary, where applicable)."""
    if spec.kind == CLOSED_ORIENTABLE:
        return 2 - 2 * spec.param
    if spec.kind == CLOSED_NON_ORIENTABLE:
        return 2 - spec.param
    if spec.kind == PLANAR_DOMAIN:
        return 1 - spec.param
    return 0  # MoebiusStrip


def parse_surface(text: str) -> SurfaceSpec:
    """Parse CLI-style surface names: sphere, torus, projective, klein,
    genus-G, crosscaps-C, planar-Q (Q holes), moebius."""
    t = text.strip().lower()
    if t in ("sphere", "s2"):
        return SurfaceSpec.sphere()
    if t in ("torus", "t2"):
        return SurfaceSpec.closed_orientable(1)
    if t in ("projective", "projective-plane", "rp2"):
        return SurfaceSpec.closed_non_orientable(1)
    if t in ("klein", "klein-bottle", "k2"):
        return SurfaceSpec.closed_non_orientable(2)
    if t in ("moebius", "mobius", "moebius-strip"):
        return SurfaceSpec.moebius_strip()
    if t in ("disk", "disc"):
        return SurfaceSpec.planar_domain(0)
    if t == "annulus":
        return SurfaceSpec.planar_domain(1)
    for prefix, kind in (("genus-", CLOSED_ORIENTABLE),
                         ("crosscaps-", CLOSED_NON_ORIENTABLE),
                         ("planar-", PLANAR_DOMAIN)):
        if t.startswith(prefix):
            return SurfaceSpec(kind, int(t[len(prefix):]))
    raise ValueError("cannot parse surface name: %r" % (text,))
