"""High-precision laboratory for exponentially small separatrix splitting.

A fourth-order traveling-wave model with a saddle-center equilibrium keeps
a homoclinic pulse only along a countable parameter sequence; this package
measures the exponentially small splitting that governs it, in runtime-
selectable extended precision, and cross-checks the Stokes constant two
independent ways.
"""

from .errors import (BlowUpError, BracketError, ConvergenceError, DomainError,
                     FitError, NoCrossingError, PrecisionError,
                     SeedTooCloseError, SplitLabError)
from .extprec import Complex, Real, elementary, mode_digits, mode_eps
from .integrator import (CrossingRecord, FastOscField, Guard, InnerLineField,
                         ModelField, PlanarField, StepPolicy, flow_time,
                         flow_to_section, step, taylor_jet)
from .inner import (InnerSeries, InnerState, ThetaEstimate, derived_psi,
                    inner_boundary_state, inner_series, psi_series,
                    series_diagnostics, stokes_direct)
from .manifold import (ManifoldSeries, involute, seed_state, unstable_series)
from .model import (Geometry, Params, State, eigenvalues, first_integral,
                    geometry, planar_field, soliton, splitting_amplitude,
                    u0pp_zero_scan, vector_field)
from .splitting import (EpsRoot, ShootPolicy, ShotRecord, ThetaFit,
                        asymptotic_S, find_root, fit_stokes,
                        homoclinic_return, predicted_eps, roots_for_range,
                        shoot, sign_changes_per_interval, sweep)

__version__ = "0.1.0"
