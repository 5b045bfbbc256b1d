"""Spectral-pair analysis for singular measures.

Fourier transforms of self-similar measures, Gram and Parseval evidence for
exponential families, the RKHS of ``F_Lambda = sum exp(i lambda x)`` and the
Kaczmarz Parseval frame in ``L^2(nu)``.
"""
from .kaczmarz import (
    AlphaSequence,
    FrameSystem,
    MomentSequence,
    alpha_from_moments,
    frame_coefficients,
    function_moments,
    g_sequence,
    kaczmarz_iterate,
    parseval_residual,
    reconstruct,
)
from .lambda_sets import SpectrumSet, c_m_constant, from_points, generate, parse_spectrum, separation
from .measures import (
    AtomicMeasure,
    IFSMeasure,
    TransformConfig,
    TruncationError,
    UniformMeasure,
    chaos_game_sample,
    fourier_transform,
    integrate,
    load_measure,
    moments,
    nu3,
    nu4,
    sierpinski_gasket,
    two_atom,
)
from .spectral_analysis import (
    gram_matrix,
    orthogonality_test,
    pair_verdict,
    parseval_frame_norm_lemma_check,
    parseval_sum,
)

__version__ = "0.1.0"
