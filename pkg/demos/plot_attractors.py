"""
Sampling IFS attractors
=======================

The chaos game picks a random map at each step. After a short burn-in the
orbit is distributed according to the invariant measure.
"""

from spectralpairs import chaos_game_sample, nu4, sierpinski_gasket

cantor = chaos_game_sample(nu4(), 20000, seed=0)
gasket = chaos_game_sample(sierpinski_gasket(), 20000, seed=0)
print("Cantor sample range:", float(cantor.min()), float(cantor.max()))
print("gasket sample mean:", gasket.mean(axis=0))

try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, (a, b) = plt.subplots(1, 2, figsize=(9, 4))
    a.hist(cantor.ravel(), bins=512)
    a.set_title("nu4")
    b.scatter(gasket[:, 0], gasket[:, 1], s=0.2)
    b.set_aspect("equal")
    b.set_title("Sierpinski gasket")
    fig.savefig("attractors.png", dpi=120, bbox_inches="tight")
