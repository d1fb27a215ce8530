"""Finite computations with generalized rings, their modules, symmetric spectra and spectra of primes."""

from .fincat import PartialBijection, PartialFn, compose, identity
from .genring import (GenRing, GRHom, coefficient_hom, make_F, make_F_monoid, make_from_rig,
                      make_Zreal_rational, symmetric_elements, transpose_elem)
from .rigs import FiniteMonoid, FiniteRig, boolean, tropical01, zmod

__version__ = "0.1.0"

__all__ = ["PartialBijection", "PartialFn", "compose", "identity", "GenRing", "GRHom", "coefficient_hom",
           "make_F", "make_F_monoid", "make_from_rig", "make_Zreal_rational", "symmetric_elements",
           "transpose_elem", "FiniteMonoid", "FiniteRig", "boolean", "tropical01", "zmod"]
