"""Linear stability and bifurcation analysis of the Kuramoto-Daido model.

Submodules
----------
densities     natural-frequency densities and their Hilbert transforms
spectral      the spectral function D, eigenvalues and the transition point
bifurcation   amplitude-equation coefficients and branches
simulate      finite-N and Galerkin simulators, steady-state measurement
harness       command-line interface and experiment orchestration
"""
from . import bifurcation, densities, errors, simulate, spectral
from .bifurcation import coefficients, fixed_point, predicted_order_parameter
from .densities import Gaussian, Lorentzian, LorentzianMixture
from .spectral import CouplingParams, critical_point

__all__ = [
    "bifurcation", "densities", "errors", "simulate", "spectral",
    "coefficients", "fixed_point", "predicted_order_parameter",
    "Gaussian", "Lorentzian", "LorentzianMixture",
    "CouplingParams", "critical_point",
]

__version__ = "0.1.0"
