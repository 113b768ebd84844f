"""Polynomial representation of affine Hecke algebras via alcove-walk words.

Modules:
  rootsys     root systems and Weyl groups
  affine      alcove walks, geodesic words, Bernstein data
  laurent     exact Laurent polynomials over Z[q^(1/2), t^(1/2)]
  heckerep    Demazure-Lusztig operators and the scattering operators S_xi
  yangbaxter  Weyl-relation form of the Yang-Baxter identities
  spectrum    spectral order, triangularity, eigenfunctions
  innerprod   constant-term scalar product
  cli         command line front end
"""
from .rootsys import RootSystem, build_root_system, parse_type

__version__ = "0.1.0"

__all__ = ["RootSystem", "build_root_system", "parse_type", "__version__"]
