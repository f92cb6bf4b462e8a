"""Dirac Hamiltonians, block-diagonalizing transformations and checks of the
Foldy-Wouthuysen wave-function condition on periodic spectral lattices."""

from . import clifford, hamiltonians, lattice, scenario, spectra, transforms, verify

__version__ = "0.1.0"

__all__ = ["clifford", "lattice", "hamiltonians", "spectra", "transforms", "verify", "scenario",
           "__version__"]
