"""Numerical workbench for finite spectral triples, quantum dynamical
semigroups, and discrete Fock-space dilations."""

__version__ = "0.1.0"
