"""Permittivity models: evaluation, poles, validation and Kramers-Kronig checks."""
import numpy as np

from disperse import spectral_models as sm

drude = sm.Drude(omega_p=1.0, gamma=0.5)
lorentz = sm.LorentzSum([sm.Oscillator(1.0, 1.0, 0.1)])

print("eps_Drude(1)   =", sm.eval_epsilon(drude, 1.0))
print("eps_Lorentz(0) =", sm.eval_epsilon(lorentz, 0.0))
print("Drude poles    :", sm.poles(drude))
print("Lorentz poles  :", sm.poles(lorentz))

# an overdamped oscillator is rejected with the offending parameter named
print("validate       :", sm.validate(sm.LorentzSum([sm.Oscillator(1, 1, 2.5)])))

# models regular at w = 0 satisfy the dispersion relations
grid = np.linspace(0.1, 3.0, 30)
print("KK residual    :", sm.kramers_kronig_residual(lorentz, grid, sm.PVSettings(cutoff=200)))
