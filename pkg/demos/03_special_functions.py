"""Error functions and the scaled complementary error function."""
import numpy as np

from disperse import special_functions as sf

x = np.array([-2.0, 0.0, 0.5, 3.0, 26.0])
print("erf        :", sf.erf_real(x))
print("erfc       :", sf.erfc_real(x))
print("w(1+1j)    :", sf.faddeeva_w(1 + 1j), " quadrature:", sf.faddeeva_by_quadrature(1 + 1j))

# exp(B^2) erfc(B) stays finite where exp(B^2) alone overflows
for B in (0.5, 30.0, 1e4, 40 - 5j):
    print(f"exp_sq_erfc({B}) = {sf.exp_sq_erfc(B)}")
# a Gaussian prefactor is folded into the exponent for Re B < 0
print("with log_scale:", sf.exp_sq_erfc(-30.0, log_scale=-900.0))
