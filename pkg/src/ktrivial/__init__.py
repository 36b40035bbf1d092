"""Exact lattice computations for a nef anticanonical divisor on P^3 blown up
at eight points that is trivial on infinitely many curve classes."""

from .cremona import (
    LatticeMap,
    compose,
    coxeter_step,
    family_start,
    iterate_family,
    point_permutation,
    standard_cremona,
)
from .lattice import (
    P3_8,
    Ambient,
    BlowupLattice,
    CurveClass,
    DivisorClass,
    anticanonical_degree,
    canonical_class,
    degree,
    pair,
    triple_self_intersection,
)
from .spectral import IntPolynomial, char_poly, growth_certificate, jordan_at_one, rank

__version__ = "0.1.0"
