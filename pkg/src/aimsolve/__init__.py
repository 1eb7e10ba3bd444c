"""Bound-state spectra by the asymptotic iteration method.

Submodules
----------
series         truncated Taylor-series arithmetic
aim            the iteration engine and eigenvalue search
potentials     Hulthén and Morse parameters, closed forms and AIM problems
specfun        Pochhammer symbols and terminating hypergeometric polynomials
wavefunctions  closed-form radial wavefunctions and their checks
oracle         Numerov shooting solver used for cross-checks
cli            command-line front end
"""

from .aim import (AimConfig, AimError, AimProblem, BracketError, ConvergenceError,
                  DegenerateProblemError, EigenstateRecord, IterationOverflowError,
                  aim_sequence, delta_k, find_eigenvalue, find_spectrum, scaled_delta)
from .oracle import RadialGrid, find_bound_states, integrate_numerov
from .potentials import (H2_MORSE, HulthenParams, MorseParams, closed_form_spectrum,
                         energy_n, epsilon_n, hulthen_potential, make_aim_problem,
                         morse_potential, n_max_bound)
from .series import TaylorSeries, make_series
from .specfun import (ClosedFormShape, confluent_limit_check, gamma_ratio,
                      hyp1f1_terminating, hyp2f1_terminating, pochhammer)
from .wavefunctions import (WavefunctionSpec, make_wavefunction, normalize, ode_residual,
                            orthogonality)

__version__ = "0.1.0"

__all__ = [
    "AimConfig", "AimError", "AimProblem", "BracketError", "ConvergenceError",
    "DegenerateProblemError", "EigenstateRecord", "IterationOverflowError",
    "aim_sequence", "delta_k", "find_eigenvalue", "find_spectrum", "scaled_delta",
    "RadialGrid", "find_bound_states", "integrate_numerov",
    "H2_MORSE", "HulthenParams", "MorseParams", "closed_form_spectrum", "energy_n",
    "epsilon_n", "hulthen_potential", "make_aim_problem", "morse_potential", "n_max_bound",
    "TaylorSeries", "make_series",
    "ClosedFormShape", "confluent_limit_check", "gamma_ratio", "hyp1f1_terminating",
    "hyp2f1_terminating", "pochhammer",
    "WavefunctionSpec", "make_wavefunction", "normalize", "ode_residual", "orthogonality",
]
