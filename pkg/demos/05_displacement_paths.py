"""Displacement for a Gaussian pulse by convolution, closed form and spectral synthesis."""
import numpy as np

from disperse import response_lab as rl
from disperse import spectral_models as sm

pulse = rl.GaussianPulse(1.0, 0.2)
drude = sm.Drude(1.0, 0.5)
t = np.linspace(-10, 10, 5)

rep = rl.consistency_report(drude, pulse, t, scenario_id="demo")
print("paths          :", sorted(rep.paths))
print("conv           :", rep.paths["conv"])
print("spectral (D~)  :", rep.paths["spec"])
print("offset         :", rep.offset)
print("residual D(+oo):", rl.residual_displacement(drude, pulse))

lorentz = sm.LorentzSum([(1, 1, 0.1)])
rep = rl.consistency_report(lorentz, pulse, t)
print("Lorentz deviations:", rep.deviations, " at T*:", rep.at_t_star)

probe = rl.limit_order_probe(drude, pulse, [0.1, 0.01, 0.001], [30.0, 1e3, 1e5])
print("T then theta:", probe.limit_T_then_theta, " theta then T:", probe.limit_theta_then_T,
      " gap:", probe.gap)
