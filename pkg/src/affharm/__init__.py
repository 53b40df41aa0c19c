"""Harmonic analysis on the real line through the ax+b group.

Signals map to the upper half-plane by covariant transforms (Cauchy and
Poisson integrals, wavelet analysis, interval averaging) and come back by
contravariant transforms (Haar reconstruction, boundary limits, maximal
functions).  The classical operators of the subject arise as compositions
and are exposed directly: Hilbert transform, Hardy-Littlewood maximal
function, Sokhotsky-Plemelj boundary values, transported norms, Carleson
box counts, atomic decomposition.

Hot quadratures run on a compiled core when the optional Cython extension
is built; ``affharm.kernel_backend()`` reports which path is active.
"""

from ._kernels import BACKEND as _BACKEND
from ._kernels import get_num_threads, set_num_threads
from .group import IDENTITY, GroupElement, HaarWeights, compose, haar_weights, inverse
from .signal import (
    RealGrid,
    Signal,
    SpectralSignal,
    fourier,
    hardy_split,
    inner_product,
    interpolate,
    inverse_fourier,
    lp_norm,
    read_signal_csv,
    read_spectral_csv,
    reflect,
    write_signal_csv,
    write_spectral_csv,
)
from .representation import (
    HalfPlaneField,
    co_adjoint,
    conjugate_exponent,
    derived_rep,
    left_regular,
    log_axis,
    quasi_regular,
    read_field_csv,
    write_field_csv,
)
from .fiducial import (
    BUILTIN_NAMES,
    AdmissibilityReport,
    Fiducial,
    admissibility,
    builtin,
    evaluate,
    from_kernel_signal,
)
from .covariant import (
    average_transform,
    cauchy_integral,
    covariant,
    covariant_definitional,
    default_scale_axis,
    family_sup_transform,
    poisson_integral,
    wavelet_transform,
)
from .contravariant import (
    HAAR,
    HARDY,
    HARDY_INF,
    PAIRINGS,
    SUP,
    V_PLUS,
    V_STAR,
    DivergentHaarError,
    PointMassField,
    atom,
    contravariant,
    extended_contravariant,
    is_nucleus,
    reconstruct,
)
from .compositions import (
    hardy_littlewood,
    hilbert_pv,
    hilbert_via_conj_poisson,
    schur_constants,
    sokhotsky_boundary,
)
from .norms import (
    HalfPlaneMeasure,
    carleson_transform,
    conj_poisson_isometry,
    hardy_norm_aff,
    orthogonality_constant,
    transported_norm_contra,
)
from .generators import bandlimited_noise, generate

__version__ = "0.1.0"


def kernel_backend() -> str:
    """Which kernel backend is active: 'compiled' or 'pure'."""
    return _BACKEND
