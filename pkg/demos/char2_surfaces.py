"""
Surfaces in characteristic 2
============================

"""

from k3verify.char2 import F4, F16, models

F6 = models.sextic()
print("F6 =", F6)

# the partial derivatives vanish exactly at the 21 points of PG(2,4)
for field in (F4, F16):
    print(field.name(), len(models.common_partial_zeros(F6, field)))

# Dickson's quartic is invariant under GL(3,2)
print(models.dickson_invariance().details)

# the quartic surface x3^4 + F4 has seven nodes
Y = models.quartic_surface()
for pt in models.singular_points(Y, F4):
    print(pt, "multiplicity and rank:", models.tangent_cone_rank(Y, pt))

print(models.quartic_split().details)
print(models.mukai_curve_check().details)
