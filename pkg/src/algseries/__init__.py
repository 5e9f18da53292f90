"""Algebraicity of power series over fields of positive characteristic.

Modules:

* :mod:`algseries.fields` exact towers of algebraic extensions;
* :mod:`algseries.series` lazily produced series with rational exponents;
* :mod:`algseries.algebraicity` the coefficient-field criterion and certificates;
* :mod:`algseries.blowup` quadratic transforms of plane curves and branch expansion;
* :mod:`algseries.multivar` series in several variables;
* :mod:`algseries.valuation` valuations defined by arcs and their completions;
* :mod:`algseries.cli` the command-line front end.
"""
from __future__ import annotations

from .algebraicity import (
    AlgebraicCertified,
    Inconclusive,
    NotAlgebraicCertified,
    ann_poly_reconstruct,
    check_full,
    galois_annihilator,
    inseparable_descent,
)
from .blowup import BivarTrunc, RootOracle, expand_branch
from .fields import FieldElement, Tower, make_field
from .multivar import MultiSeries, check_multivar, fiber_series, slice_series
from .series import (
    BivarPolynomial,
    Const,
    ExponentBound,
    FrobeniusFamily,
    IndexedRoot,
    PrimeRadical,
    PuiseuxSeries,
    TermCount,
    hensel_unit_root,
    substitute_poly,
)
from .valuation import (
    build_chain_from_series,
    build_infinite_residue_chain,
    classify_rank_increase,
    completion_witness,
    value_of,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraicCertified",
    "BivarPolynomial",
    "BivarTrunc",
    "Const",
    "ExponentBound",
    "FieldElement",
    "FrobeniusFamily",
    "Inconclusive",
    "IndexedRoot",
    "MultiSeries",
    "NotAlgebraicCertified",
    "PrimeRadical",
    "PuiseuxSeries",
    "RootOracle",
    "TermCount",
    "Tower",
    "ann_poly_reconstruct",
    "build_chain_from_series",
    "build_infinite_residue_chain",
    "check_full",
    "check_multivar",
    "classify_rank_increase",
    "completion_witness",
    "expand_branch",
    "fiber_series",
    "galois_annihilator",
    "hensel_unit_root",
    "inseparable_descent",
    "make_field",
    "slice_series",
    "substitute_poly",
    "value_of",
]
