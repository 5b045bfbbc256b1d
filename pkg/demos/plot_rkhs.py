"""
Kernels from sums of exponentials
=================================

F(x) = sum_lambda e^{i lambda x} over a discrete set is a positive definite
distribution. Smoothing it with a Gaussian gives an element of a Hilbert
space isometric to l^2 of the frequency set.
"""

import numpy as np

from spectralpairs import from_points, generate
from spectralpairs.measures import AtomicMeasure
from spectralpairs.rkhs import (
    FLambda,
    RKHSElement,
    TestFunction,
    bochner_check,
    convolve,
    pairing,
    tempered_bound_check,
)

phi = TestFunction.gaussian()
F = FLambda(from_points([0, 1, 4]))

###############################################################################
# Pairing with a Gaussian picks up one Gaussian transform value per frequency.

print("<F, phi> =", pairing(F, phi))
x = np.linspace(-6, 6, 601)
smooth = convolve(F, phi, x)
print("norm of phi * F:", RKHSElement.from_test_function(phi, F).norm)

###############################################################################
# For the digit-set frequencies the pairings stay bounded level by level by a
# Schwartz seminorm times a convergent sum.

tb = tempered_bound_check(generate(4, {0, 1}, 6), phi, M=1, levels=range(1, 7))
for m, p, c in zip(tb.levels, tb.pairings, tb.constants):
    print(f"level {m}: |<F, phi>| = {p:.4f} <= {tb.seminorm * c:.4f}")

###############################################################################
# Bochner's side: the transform of a positive atomic measure paired with phi.

mu = AtomicMeasure([-1.0, 0.5, 2.0], [0.2, 0.5, 0.3])
print("bochner defect:", bochner_check(mu, phi).defect)

try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots(figsize=(7, 3))
    ax.plot(x, smooth.real, label="Re")
    ax.plot(x, smooth.imag, label="Im")
    ax.set_xlabel("x")
    ax.legend()
    fig.savefig("rkhs_convolution.png", dpi=120, bbox_inches="tight")
