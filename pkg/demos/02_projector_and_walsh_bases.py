# coding: utf-8

# # One diagonal, two operator bases
#
# Any diagonal over n bits expands in products of projectors P = |1><1| or in
# products of Pauli Z.  A 3-SAT objective uses only masks of weight <= 3 in
# either basis, so its "layer" is 3 no matter how many clauses it has.

import numpy as np

from eqaoa import (
    GeneratorSpec,
    build_sat_diagonal,
    generate_planted_sat,
    layer,
    normalize,
    projector_coefficients,
    projector_to_walsh,
    walsh_coefficients,
)

inst, planted = generate_planted_sat(GeneratorSpec(8, 40, "planted", seed=3))
raw = build_sat_diagonal(inst)
print("clauses satisfied by the planted assignment:", raw.values[planted], "of", inst.m)

h = projector_coefficients(raw)
w = walsh_coefficients(raw)
print("projector terms:", len(h.terms), "layer", layer(h))
print("walsh terms:    ", len(w.terms), "layer", layer(w))

# Integer diagonals have integer projector coefficients, so the round trip is exact.

print("exact round trip:", np.array_equal(h.to_diagonal(), raw.values))

# Rewriting P = (I - Z)/2 term by term lands on the same Walsh expansion.

gap = np.abs(projector_to_walsh(h).dense(np.float64) - w.dense(np.float64)).max()
print("basis change gap:", gap)

# After dividing by m the best state sits at exactly 1.

diag = normalize(raw, inst.m)
print("c_max", diag.c_max, "delta_c", diag.delta_c, "satisfiable", diag.satisfiable)
