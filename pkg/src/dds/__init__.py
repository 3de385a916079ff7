"""Spectra of the deformed complex Scarf II Dirac-Weyl model and their numerical verification."""
__version__ = "0.1.0"
