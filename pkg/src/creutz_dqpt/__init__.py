"""Exact Loschmidt-echo zeros, orthogonality scaling and speed limits for quenches of the Creutz ladder."""

from .core import (
    BandEnergies,
    ModelParams,
    MomentumGrid,
    band_energies,
    band_gap,
    block_entries,
    bogoliubov_angle,
    commensurate_sizes,
    gap_closing_modes,
    momentum_grid,
)
from .noise import NoiseEnsemble, ensemble_mean_variance, mixed_le, noisy_qsl_bound, sample_noise
from .qsl import (
    SweepStats,
    TauFExtrema,
    energy_variance,
    first_divergence_time,
    mt_bound,
    qsl_sweep_stats,
    qsl_time,
    qsl_vs_size,
    tau_c_asymptote,
    tau_f_extrema,
    tau_fmax_asymptote,
)
from .quench import (
    LETrace,
    ModeAmplitude,
    QuenchSpec,
    ZeroSolution,
    allowed_modes,
    critical_times,
    delta_c,
    delta_c_asymptote,
    loschmidt_echo,
    mode_amplitude,
    rate_function,
    zero_condition_rhs,
)

__version__ = "0.1.0"
