"""Encode two scaled vectors three ways and compare their fidelities.

Each closed-form fidelity is recomputed from explicit state vectors, then the
swap-test probability, Bures distance and trace distance are derived from it.

    python demos/01_encodings_and_fidelity.py
"""

import numpy as np

from qikm.distance import (
    bures_distance, fidelity_amplitude, fidelity_angle, fidelity_hybrid, fidelity_oracle,
    swap_test_p0, trace_distance_pure,
)
from qikm.encoding import encode_amplitude, encode_angle, encode_hybrid, split_pair
from qikm.qstate import zero_state

x = np.array([0.20, 0.75, 0.40, 0.90])
c = np.array([0.25, 0.60, 0.55, 0.30])
pair = (0, 2)

print("x =", x)
print("c =", c)

# Angle: the kernel circuit folds U(c)^dagger U(x) into one R_y per qubit,
# so only the difference x - c is ever encoded.
psi = encode_angle(x - c)
print("\nangle state amplitudes:", np.round(np.asarray(psi).real, 4))
f_angle = fidelity_angle(x, c)
print(f"angle fidelity   closed form {f_angle:.12f}  statevector {fidelity_oracle(zero_state(4), psi):.12f}")
print("note the asymmetry: F(c, x) =", round(fidelity_angle(c, x), 6))

# Amplitude: both vectors become normalised 2-qubit states.
f_amp = fidelity_amplitude(x, c)
print(f"amplitude fid.   closed form {f_amp:.12f}  statevector "
      f"{fidelity_oracle(encode_amplitude(x), encode_amplitude(c)):.12f}")

# Hybrid: one qubit holds the pair (x0, x2); the rest are angle-encoded differences.
_, xr = split_pair(x, pair)
_, cr = split_pair(c, pair)
f_hyb = fidelity_hybrid(x, c, pair)
explicit = fidelity_oracle(encode_hybrid(c, pair, -np.ones(2)), encode_hybrid(x, pair, xr - cr))
print(f"hybrid fidelity  closed form {f_hyb:.12f}  statevector {explicit:.12f}")

print("\nfidelity -> measurable and metric quantities")
for name, f in [("angle", f_angle), ("amplitude", f_amp), ("hybrid", f_hyb)]:
    print(f"  {name:<9} P(ancilla=0)={swap_test_p0(f):.4f}  Bures={float(bures_distance(f)):.4f}  "
          f"trace={float(trace_distance_pure(f)):.4f}")
