"""
Elliptic fibration configurations
=================================

Searches run on the intersection graph of the 42 roots.
"""

from k3verify import fibsearch as fs
from k3verify import golay, leech, lorentz

code = golay.build_code()
basis = leech.build_basis(code)
roots = lorentz.roots_orthogonal_to_R(lorentz.d4_embedding(basis), leech.minimal_vectors(basis, code))
g = lorentz.incidence_graph(roots)

# five D4 stars, sixteen sections and one 2-section
cfg = fs.find_d4_configuration(g, g.names.index("C"))
for f in cfg.fibers:
    print("D4:", [g.name(v) for v in f])
print("2-section:", g.name(cfg.extra))
print("problems:", fs.validate(g, cfg))

print(fs.d4_from_every_start(g).details)

# four hexagons and eighteen sections
a5 = fs.find_a5_configuration(g)
for f in a5.fibers:
    print("A5:", [g.name(v) for v in f])
print(fs.a5_report(g).details)
