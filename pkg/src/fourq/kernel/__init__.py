"""Exact arithmetic: rationals, cyclotomic numbers, polynomials, rational functions."""

from fractions import Fraction as Rat

from fourq.kernel.cyclotomic import (
    CycNum,
    as_cyc,
    cyc_to_complex,
    cyclotomic,
    cyclotomic_polynomial,
    euler_phi,
)
from fourq.kernel.poly import Poly, poly_gcd, poly_xgcd
from fourq.kernel.ratfun import RatFun, ratfun_normalize

__all__ = [
    "Rat",
    "CycNum",
    "as_cyc",
    "cyc_to_complex",
    "cyclotomic",
    "cyclotomic_polynomial",
    "euler_phi",
    "Poly",
    "poly_gcd",
    "poly_xgcd",
    "RatFun",
    "ratfun_normalize",
]
