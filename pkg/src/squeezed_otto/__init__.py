"""Asymmetric quantum harmonic Otto cycle driven by a squeezed hot reservoir."""

from .cycle import (
    SC,
    SE,
    CycleParams,
    EnergyAccount,
    StrokeConfig,
    corner_energies,
    cycle_energetics,
    sudden_expansion_efficiency_exact,
    sudden_expansion_work_exact,
    sudden_lambda,
)
from .errors import ClassificationError, ConfigError, DomainError, NotIrreducibleError, OttoError
from .high_temp import HTParams, HTResult, ht_efficiency, ht_evaluate, ht_heats, ht_work
from .optimize import (
    Cubic,
    Objective,
    Optimum,
    cubic_trig_root,
    eta_max_work,
    eta_upper_bound,
    numeric_argmax,
    optimal_z_efficiency,
    optimal_z_work,
    sc_efficiency_cubic,
    se_efficiency_cubic,
)
from .phase import GridSpec, OperationalMode, PhaseMap, classify, rasterize, region_boundaries

__version__ = "0.1.0"
