"""Causal time-domain kernels and their frequency-domain round trip."""
import numpy as np

from disperse import spectral_models as sm
from disperse import temporal_kernels as tk
from disperse.transform_engine import halfline_transform

for model in (sm.Drude(1, 0.5), sm.RegularizedDrude(1, 0.5, 0.1), sm.LorentzSum([(1, 1, 0.1)])):
    k = tk.kernel_for(model)
    tau = np.array([-1.0, 0.0, 1.0, 10.0, 100.0])
    print(f"{k.family.name:26s}", np.round(k(tau), 6))

# the half-line transform of a decaying kernel returns eps(w) - 1
k = tk.kernel_for(sm.LorentzSum([(1, 1, 0.1)]))
for w in (0.5, 1.0, 2.0):
    print(f"w={w}: transform {halfline_transform(k, w):.8f}  eps-1 {sm.eval_epsilon(k.model, w) - 1:.8f}")

# gamma -> 0 approaches the plasma kernel wp^2 tau
print("Drude gamma=1e-6 at tau=1:", tk.kernel_for(sm.Drude(1, 1e-6))(1.0))
