"""hylos: a numerical laboratory for hylomorphic solitons.

Ground states of the nonlinear Schrodinger and Klein-Gordon equations
by radial shooting, boosted solitary waves, conservative evolution on
periodic pseudospectral grids, and the observables (energy, hylenic
charge, momentum, hylomorphy ratio, binding density) that decide
whether matter stays bound.
"""

from .grid import (
    ComplexField,
    Grid,
    PolarFields,
    boundary_leakage,
    divergence,
    field_from_function,
    gradient,
    integrate,
    laplacian,
    load_field,
    make_grid,
    polar_decompose,
    save_field,
)
from .models import (
    ExternalPotential,
    NonlinearModel,
    double_power,
    eval_N,
    eval_W,
    eval_Wprime_complex,
    eval_Wprime_real,
    harmonic_potential,
    hylomorphy_report,
    nprime_over_s,
    power_focusing,
    rest_energy,
    sampled_potential,
    saturating_intro,
    zero_potential,
)
from .observables import (
    DiagnosticsRow,
    KGState,
    NSState,
    angular_momentum,
    barycenter,
    binding_energy_density,
    bound_matter,
    center_velocity,
    charge_density,
    diagnostics_row,
    energy,
    ergocenter,
    hylenic_charge,
    hylomorphy_ratio,
    liapunov_value,
    local_frequency_wavenumber,
    momentum,
    read_diagnostics,
    write_diagnostics,
)
from .groundstate import (
    RadialProfile,
    admissible_frequencies,
    derrick_pohozaev_residual,
    effective_G,
    find_ground_state,
    load_profile,
    profile_to_field,
    save_profile,
    shoot,
)
from .symmetry import (
    BoostSpec,
    galilean_boost,
    galilean_boost_at_time,
    gamma,
    gauge_shift_frequency,
    lorentz_boost_initialdata,
    standing_wave,
)
from .evolve import EvolveConfig, Trajectory, run, step_nkg, step_ns
from .oracles import ParticleTrack, newton_oracle, relativistic_oracle
from .config import config_hash, format_config, load_config, parse_scalar, resolve
from .experiments import (
    Check,
    EXPERIMENTS,
    ExperimentResult,
    experiment_defaults,
    model_from_config,
    run_experiment,
)
from .report import write_report

__version__ = "0.1.0"
