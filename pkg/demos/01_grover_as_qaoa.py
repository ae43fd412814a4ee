# coding: utf-8

# # Grover search as a one-term QAOA
#
# A diagonal that is 1 on a marked state and 0 elsewhere turns the QAOA phase
# step into a Grover oracle when gamma = pi.  With a transverse-field mixer in
# place of the diffusion operator we still get amplitude amplification, just
# more slowly.

import math

import numpy as np

from eqaoa import RunConfig, Schedule, grover_diagonal, run_standard
from eqaoa.oracle import dense_evolution

n = 8
marked = {0b10110101}
diag = grover_diagonal(n, marked)
print("nonzero entries:", np.flatnonzero(diag.values))

# Every phase step uses gamma = pi, which flips the sign of the marked amplitude.

p_max = 60
sched = Schedule(n, 2, p_max=p_max, beta=0.35)
traj = run_standard(diag, RunConfig(sched, marked), gamma_s_schedule=[math.pi] * p_max)

probs = traj.target_probabilities
print(f"start {2.0 ** -n:.4f}  best {probs.max():.4f} at p={probs.argmax() + 1}")

# The dense reference builds the 256x256 unitaries explicitly.

ref = dense_evolution(diag.values, [(math.pi, 0.35)] * p_max)
print("max amplitude gap vs dense:", np.abs(ref - traj.state.amplitudes).max())
