"""
Fourier transforms of Cantor-type measures
==========================================

The quarter Cantor measure is built from the two maps x/4 and (x + 2)/4 with
equal weights. Its transform is an infinite product of cosines, evaluated
here with per-frequency truncation.
"""

import numpy as np

from spectralpairs import fourier_transform, nu3, nu4

###############################################################################
# The transform vanishes at every odd multiple of 2 pi, which is what makes
# the exponentials with frequencies 0, 1, 4, 5, ... orthogonal.

t = np.linspace(0, 16 * np.pi, 2001)
v4 = fourier_transform(nu4(), t)
v3 = fourier_transform(nu3(), t)

for k in (1, 3, 5):
    print(f"|nu4_hat({k} * 2pi)| = {abs(complex(fourier_transform(nu4(), 2 * np.pi * k))):.3e}")

###############################################################################
# The third-scale version has no such zeros. The value at 2 pi is the
# inner product of e_0 and e_1 in its L^2 space.

print(f"|nu3_hat(2pi)| = {abs(complex(fourier_transform(nu3(), 2 * np.pi))):.6f}")

###############################################################################
# Plot both moduli, if matplotlib is around.

try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots(figsize=(8, 3))
    ax.plot(t / (2 * np.pi), np.abs(v4), label="nu4")
    ax.plot(t / (2 * np.pi), np.abs(v3), label="nu3", alpha=0.7)
    ax.set_xlabel("t / 2 pi")
    ax.set_ylabel("|transform|")
    ax.legend()
    fig.savefig("fourier_transform.png", dpi=120, bbox_inches="tight")
