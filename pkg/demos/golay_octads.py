"""
Octads of the binary Golay code
===============================

"""

from k3verify import golay

# the extended quadratic residue code of length 24
code = golay.build_code()
print(code.dimension, "generators,", len(code.octads), "octads")
print("weights:", code.weight_distribution())

# any five points lie in exactly one octad
five = golay.subset(["inf", 0, 1, 2, 3])
print("octad through inf,0,1,2,3:", golay.labels_of(golay.find_octad(code, five)))

rep = golay.verify_steiner(code.octads)
print("five-subsets covered:", rep.details["covered"], "of", rep.details["five_subsets"])

# the printed table repeats one set
listed = golay.verify_listed_octads(code)
for w in listed.warnings:
    print("warning:", w)
