"""
Orthogonality and Parseval sums for digit-set frequencies
=========================================================

Frequencies sum_k d_k 4^k with d_k in {0, 1} give orthogonal exponentials for
the quarter Cantor measure. The base-3 analogue does not work for the third
Cantor measure.
"""

import numpy as np

from spectralpairs import generate, gram_matrix, nu3, nu4, orthogonality_test, pair_verdict, parseval_sum

lam4 = generate(4, {0, 1}, 5)
lam3 = generate(3, {0, 1}, 5)
print("base 4:", lam4.elements[:10].tolist())
print("base 3:", lam3.elements[:10].tolist())

###############################################################################
# Gram matrices at c = 2 pi. Every off-diagonal entry for the base-4 pair
# contains a factor that is exactly zero.

g4 = gram_matrix(nu4(), lam4)
g3 = gram_matrix(nu3(), lam3)
print("nu4:", orthogonality_test(g4))
print("nu3:", orthogonality_test(g3, 1e-8))

###############################################################################
# Orthogonality alone says nothing about completeness. A finite surrogate is
# the Parseval sum S_m(t) = sum |nu4_hat(2 pi (t - lambda))|^2 over the
# level-m frequencies, which creeps up towards 1.

probes = (0.1, 0.3, 0.5, 0.7, 0.9)
levels = range(9)
lam8 = generate(4, {0, 1}, 8)
table = np.array([[parseval_sum(nu4(), lam8.at_level(m), t) for m in levels] for t in probes])
for t, row in zip(probes, table):
    print(f"t={t}: 1 - S_8 = {1 - row[-1]:.2e}")

print(pair_verdict(nu3(), generate(3, {0, 1}, 3)).verdict)

try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots(figsize=(6, 4))
    for t, row in zip(probes, table):
        ax.semilogy(list(levels), 1 - row, marker="o", label=f"t={t}")
    ax.set_xlabel("level m")
    ax.set_ylabel("1 - S_m(t)")
    ax.legend()
    fig.savefig("parseval_profile.png", dpi=120, bbox_inches="tight")
