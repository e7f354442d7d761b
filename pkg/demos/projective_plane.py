"""
The projective plane over F_4
=============================

"""

from k3verify import golay, leech, lorentz, planegeom as pg

pts = pg.enumerate_points()
print(len(pts), "points:", " ".join(pg.fmt(p) for p in pts[:6]), "...")

# k points with no three on a line
print([pg.independent_subsets(k) for k in range(1, 7)])

plane = pg.build_incidence()
print("automorphisms of the incidence graph:", pg.count_automorphisms(plane))
print("|PSL(3,4)| =", pg.psl34_order().psl)

# the 42 roots form the same graph
code = golay.build_code()
basis = leech.build_basis(code)
roots = lorentz.roots_orthogonal_to_R(lorentz.d4_embedding(basis), leech.minimal_vectors(basis, code))
g = lorentz.incidence_graph(roots)
phi = pg.find_isomorphism(g, plane)
for v in range(5):
    print(f"{g.name(v):>6} -> {plane.name(phi[v])}")
