"""Cyclic autocorrelation estimation with moving block bootstrap significance bands."""

__version__ = "0.1.0"

from .apfunc import APFunction, eval_ap, fourier_coeff, mean_value_est, rate_constant
from .cyclic import CyclicEstimate, conj_symmetry_check, cyclic_estimator, mbb_cyclic_root, w_series
from .detect import (ScanConfig, ScanResult, SpikeFilter, frequency_scan, infer_period,
                     stationarity_diagnostic)
from .diagnostics import block_variance_profile, ks_distance, mbb_consistency_check
from .mbb import (BootstrapDistribution, BootstrapPlan, bootstrap_root_distribution, mbb_center,
                  num_blocks, quantile, resample)
from .sim import ModulatedSpec, Par1Spec, gen_modulated, gen_par1

__all__ = [
    "APFunction", "eval_ap", "fourier_coeff", "mean_value_est", "rate_constant",
    "CyclicEstimate", "conj_symmetry_check", "cyclic_estimator", "mbb_cyclic_root", "w_series",
    "ScanConfig", "ScanResult", "SpikeFilter", "frequency_scan", "infer_period",
    "stationarity_diagnostic",
    "block_variance_profile", "ks_distance", "mbb_consistency_check",
    "BootstrapDistribution", "BootstrapPlan", "bootstrap_root_distribution", "mbb_center",
    "num_blocks", "quantile", "resample",
    "ModulatedSpec", "Par1Spec", "gen_modulated", "gen_par1",
]
