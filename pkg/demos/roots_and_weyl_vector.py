"""
Roots orthogonal to a D4 in Leech + U
=====================================

"""

from k3verify import golay, leech, lorentz
from k3verify.lattice import root_system_type

code = golay.build_code()
basis = leech.build_basis(code)
minvecs = leech.minimal_vectors(basis, code)

emb = lorentz.d4_embedding(basis)
print("Gram(x, y, z, t):", emb.gram(), root_system_type(emb.gram()))

roots = lorentz.roots_orthogonal_to_R(emb, minvecs)
print(len(roots), "roots orthogonal to R")
print(sorted(lorentz.root_name(r) for r in roots))

# they split into two families of 21 forming a bipartite graph
g = lorentz.incidence_graph(roots)
A, B = lorentz.families(g)
print("families:", len(A), len(B), "degrees:", {g.degree(v) for v in range(g.n)})

# projection of the Weyl vector
wp = lorentz.weyl_projection(emb)
print("<w', w'> =", lorentz.rpair(wp, wp))
print("3w' equals the sum of the roots:", 3 * wp == lorentz.RationalVector.of(lorentz.vsum(roots)))

l = lorentz.class_l(roots, A, wp)
print("l^2 =", lorentz.pair(l, l))

# roots extending R to D5, one batch per leg
attached = lorentz.roots_attaching_D5(emb, minvecs)
for leg, rs in attached.items():
    print(leg, len(rs), lorentz.d5_split(rs))
