"""Half-line transforms, the cosine-kernel pathology and regularized inversion."""
import numpy as np

from disperse import spectral_models as sm
from disperse import temporal_kernels as tk
from disperse import transform_engine as te

drude = sm.Drude(1.0, 0.5)
print("required sine transform at w=1:", (sm.eval_epsilon(drude, 1.0) - 1).imag)
bad = tk.pathological_kernel(drude, "cos")
print("cosine-inverted kernel gives  :", te.abel_halfline_sine(bad, 1.0, 0.0))

k = tk.kernel_for(drude)
lim = te.abel_limit(k, 1.0, "sin")
print("Abel eta->0 of causal kernel  :", lim.value, "from", np.round(lim.values, 6))

tau = np.linspace(0.5, 5, 4)
ladder = te.RegularizationLadder((0.01, 0.005, 0.0025, 0.00125), order=3)
rec = te.theta_regularized_kernel_recovery(drude, tau, ladder)
oracle = [te.drude_contour_oracle(drude, t).f for t in tau]
for t, v, o in zip(tau, rec.values, oracle):
    print(f"tau={t:4.1f}  recovered {v:.10f}  contour {o:.10f}")
