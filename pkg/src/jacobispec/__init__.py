"""Characteristic functional of Jacobi sequences, the special functions it
generates, and spectra of four explicitly solvable Jacobi-matrix families."""
from . import ffunc, identities, models, specfun, spectral
from .errors import (
    DegenerateError,
    JacobiSpecError,
    LengthExceededError,
    NonConvergenceError,
    ParameterError,
    PoleError,
)
from .ffunc import (
    BilateralSeq,
    TailSeq,
    f_bilateral,
    f_bruteforce,
    f_finite,
    f_tail,
    f_tail_extrapolated,
)
from .models import build_model
from .spectral import (
    Eigenvalue,
    JacobiModel,
    SpectralResult,
    ToleranceConfig,
    char_function,
    eigenvector,
    find_real_eigenvalues,
    oracle_eigenvalues,
    xi,
)

__version__ = "0.1.0"
