"""
Kaczmarz expansions in L^2 of a singular measure
================================================

Projecting successively onto e_0, e_1, e_2, ... gives an expansion
f = sum <f, g_n> e_n whose auxiliary vectors g_n form a Parseval frame. The
coefficients of g_n come from the reciprocal of the moment series.
"""

import numpy as np

from spectralpairs import (
    FrameSystem,
    frame_coefficients,
    function_moments,
    moments,
    nu4,
    parseval_residual,
    reconstruct,
    two_atom,
)

###############################################################################
# Two atoms at 0 and 1/2: the moments alternate 1, 0, 1, 0, ... and the
# reciprocal series is 1 - z^2.

mom = moments(two_atom(), 8)
frame = FrameSystem.from_moments(mom)
print("alpha:", (frame.alpha.values.real + 0.0).tolist())

indicator = lambda x: (np.asarray(x) == 0).astype(float)  # noqa: E731
fh, norm_sq = function_moments(two_atom(), indicator, 8)
coeffs = frame_coefficients(fh, frame)
print("residual:", parseval_residual(fh, norm_sq, frame).tolist())
print("f at the atoms:", reconstruct(coeffs, [0.0, 0.5], 1).real.tolist())

###############################################################################
# For the quarter Cantor measure the residual ||f||^2 - sum_{n<=N} |<f, g_n>|^2
# decreases monotonically.

N = 128
mom = moments(nu4(), N)
frame = FrameSystem.from_moments(mom)
fh, norm_sq = function_moments(nu4(), lambda x: x, N, depth=14)
resid = parseval_residual(fh, norm_sq, frame)
print(f"||f||^2 = {norm_sq:.6f}, residual at N={N}: {resid[-1]:.3e}")

try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.loglog(np.arange(1, N + 1), resid[1:])
    ax.set_xlabel("N")
    ax.set_ylabel("Parseval residual")
    fig.savefig("kaczmarz_residual.png", dpi=120, bbox_inches="tight")
