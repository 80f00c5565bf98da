"""Exact computation of Kummer-theoretic invariants of number fields.

Everything here is exact: rationals are `fractions.Fraction`, p-adics are
integers at a tracked precision, and all group-theoretic answers are
certified by integer linear algebra.  No floating point is used anywhere.
"""

__version__ = "0.1.0"
