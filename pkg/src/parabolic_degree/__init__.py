"""Degree of parabolic quantum groups at roots of unity.

The degree of U_eps(p) for a parabolic subalgebra p of a simple Lie algebra
is ``l ** (delta / 2)`` with ``delta = l(w0) + l(w0_levi) + rk(w0 - w0_levi)``.
This package builds the skew-symmetric commutation matrix whose rank mod
``l`` realizes ``delta`` and checks the supporting lemmas by brute force.
"""

from .cartan import (
    CartanDatum,
    RootSystem,
    build_cartan,
    inner_product,
    is_good,
    positive_roots,
    root_system,
    weight_pairing,
)
from .degree import DegreeMatrixBundle, DegreeReport, assemble, degree_report, sweep_table
from .weyl import (
    BetaSequence,
    ParabolicDatum,
    WeylElement,
    beta_sequence,
    coset_factorize,
    enumerate_group,
    length,
    longest_element,
    parabolic_datum,
    rank_w0_minus_w0levi,
    simple_reflection,
)

__version__ = "0.1.0"

__all__ = [
    "BetaSequence",
    "CartanDatum",
    "DegreeMatrixBundle",
    "DegreeReport",
    "ParabolicDatum",
    "RootSystem",
    "WeylElement",
    "assemble",
    "beta_sequence",
    "build_cartan",
    "coset_factorize",
    "degree_report",
    "enumerate_group",
    "inner_product",
    "is_good",
    "length",
    "longest_element",
    "parabolic_datum",
    "positive_roots",
    "rank_w0_minus_w0levi",
    "root_system",
    "simple_reflection",
    "sweep_table",
    "weight_pairing",
]
