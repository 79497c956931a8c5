"""Exact diagnostics for rank-3 lattices in C^2 with algebraic coordinates.

Decides whether C^2/Gamma splits as C* times an elliptic curve, whether the
lattice is defined over a cubic field, or neither, and certifies each
verdict with exact witnesses.
"""

from .classifier import (CubicArithmetic, Generic, SplitProduct, classify, isogeny_class_report,
                         nonisomorphic_witness, split_construction)
from .elliptic import (IsogenyWitness, ModularMatrix, PeriodRatio, isogenous, isomorphic,
                       period_ratio, reduce_fundamental)
from .exact import FieldElement, IntervalRect, NumberField, RationalPolynomial
from .lattice import (SemiTorusLattice, enumerate_quotients, normalize, quotient_curve,
                      relation_space, validate)
from .orbits import claim2_matrix, orbit_matrix, same_orbit, stabilizer_check
from .report import verify_report

__version__ = "0.1.0"

__all__ = ["CubicArithmetic", "Generic", "SplitProduct", "classify", "isogeny_class_report",
           "nonisomorphic_witness", "split_construction", "IsogenyWitness", "ModularMatrix",
           "PeriodRatio", "isogenous", "isomorphic", "period_ratio", "reduce_fundamental",
           "FieldElement", "IntervalRect", "NumberField", "RationalPolynomial", "SemiTorusLattice",
           "enumerate_quotients", "normalize", "quotient_curve", "relation_space", "validate",
           "claim2_matrix", "orbit_matrix", "same_orbit", "stabilizer_check", "verify_report"]
