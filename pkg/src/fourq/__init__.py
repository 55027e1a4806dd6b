"""Riemann surfaces of genus q with 4q automorphisms: dihedral actions, Jacobian
decompositions, curve models and invariant period matrices."""

__version__ = "0.1.0"
