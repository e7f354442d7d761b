"""
Minimal vectors of the Leech lattice
====================================

Coordinates are the raw ones (scaled by sqrt(8)), so minimal vectors have
squared length 32.
"""

import numpy as np

from k3verify import golay, leech

code = golay.build_code()
basis = leech.build_basis(code)
print("Gram determinant:", leech.verify_basis(basis, code).details["gram_determinant"])

# three shapes: (4^2 0^22), (2^8 0^16) and (3 1^23) up to signs
shapes = leech.minimal_vectors_by_shape(basis, code)
for name, V in shapes.items():
    print(f"{name:>10}: {len(V)}")

V = leech.minimal_vectors(basis, code)
print("total:", len(V))
print("all in the lattice:", bool(leech.contains_many(basis, V).all()))
print("all of norm 32:", bool((np.einsum("ij,ij->i", V, V) == 32).all()))

# nothing shorter exists
print("shorter vectors:", leech.short_vector_census(basis))
