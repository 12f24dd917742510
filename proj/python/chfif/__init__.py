"""Coalescence fractal interpolation: systems, exact pairings, orthonormal
scaling bases, detail generators, and multi-level signal transforms."""

from chfif._core import (
    Basis,
    Coefficients,
    System,
    Wavelets,
    __version__,
    build_basis,
    build_basis_from,
    coefficient_energy,
    decompose,
    eval_expression,
    inner,
    preset_config,
    project,
    reconstruct,
    sample_psi,
    solve_wavelets,
    synthesize,
)

__all__ = [
    "Basis",
    "Coefficients",
    "System",
    "Wavelets",
    "__version__",
    "build_basis",
    "build_basis_from",
    "coefficient_energy",
    "decompose",
    "eval_expression",
    "inner",
    "preset_config",
    "project",
    "reconstruct",
    "sample_psi",
    "solve_wavelets",
    "synthesize",
]
