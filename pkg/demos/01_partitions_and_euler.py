"""Embedded partitions and the Euler-type counting formulas.

Builds a few small partitions by hand (a circle on the sphere, a theta
graph, curves on the Moebius strip) and prints the face counts, the number
of nodal domains kappa, and the Euler identity checked by the library.
Finishes with the blow-up normalization of a figure-eight.
"""

from nodalkit.partition import PartitionBuilder, dart, normalize, \
    partition_stats, verify_euler
from nodalkit.surface import SurfaceSpec


def show(name, p):
    st = partition_stats(p)
    er = verify_euler(p)
    print("%-22s kappa=%d beta=%d sigma=%s omega=%d faces=%d  %s (%s)"
          % (name, st.kappa, st.beta, st.sigma, st.omega, st.faces,
             "OK" if er.passed else "VIOLATED", er.relation))


# a single circle on the sphere: two domains
b = PartitionBuilder(SurfaceSpec.sphere(), nodal=True)
c = b.circle()
b.edge(c, c)
show("circle on sphere", b.build())

# theta graph: two degree-3 vertices, three domains
b = PartitionBuilder(SurfaceSpec.sphere())
u, v = b.interior(3), b.interior(3)
e0, e1, e2 = b.edge(u, v), b.edge(u, v), b.edge(u, v)
b.set_rotation(u, [dart(e0, 0), dart(e1, 0), dart(e2, 0)])
b.set_rotation(v, [dart(e0, 1), dart(e2, 1), dart(e1, 1)])
show("theta graph", b.build())

# figure eight: one degree-4 vertex whose outer face pinches at the vertex
b = PartitionBuilder(SurfaceSpec.sphere(), nodal=True)
u = b.interior(4)
a0, a1 = b.edge(u, u), b.edge(u, u)
b.set_rotation(u, [dart(a0, 0), dart(a0, 1), dart(a1, 0), dart(a1, 1)])
fig8 = b.build()
show("figure eight", fig8)
norm = normalize(fig8)
show("figure eight, blown up", norm)
print("  -> blow-up kept beta and kappa - sigma:",
      partition_stats(norm).kappa - partition_stats(norm).sigma,
      "==", partition_stats(fig8).kappa - partition_stats(fig8).sigma)

# Moebius strip: a 1-sided core circle vs a 2-sided parallel circle
for name, sig in (("moebius core circle", -1), ("moebius parallel", 1)):
    b = PartitionBuilder(SurfaceSpec.moebius_strip(), nodal=True)
    c = b.circle()
    b.edge(c, c, signature=sig)
    m = b.circle()
    b.edge(m, m, boundary=True, component=0)
    show(name, b.build())
