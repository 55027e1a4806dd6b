"""Rational functions in one indeterminate over an exact field."""

from __future__ import annotations

from typing import Any

from fourq.errors import InvalidConstructionError, PoleError
from fourq.kernel.poly import Poly, poly_gcd


class RatFun:
    """``num / den`` kept with ``gcd(num, den) = 1`` and ``den`` monic.

    Operands that are neither ``RatFun`` nor ``Poly`` are treated as constants.
    A ``Poly`` operand is read as a polynomial in the same indeterminate.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly | Any, den: Poly | Any | None = None, *, var: str = "x", _normal: bool = False):
        if not isinstance(num, Poly):
            num = Poly.constant(num, var)
        var = num.var
        if den is None:
            den = Poly.constant(1, var)
        elif not isinstance(den, Poly):
            den = Poly.constant(den, var)
        if den.is_zero():
            raise InvalidConstructionError("rational function with zero denominator")
        if not _normal:
            num, den = _normalize(num, den)
        self.num: Poly = num.with_var(var)
        self.den: Poly = den.with_var(var)

    @classmethod
    def gen(cls, var: str = "x") -> "RatFun":
        return cls(Poly.gen(var), _normal=True)

    @property
    def var(self) -> str:
        return self.num.var

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def __repr__(self) -> str:
        return f"RatFun({self.num!r}, {self.den!r})"

    def __str__(self) -> str:
        if self.is_polynomial():
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    # -- coercion ---------------------------------------------------------
    def _coerce(self, other: Any) -> "RatFun":
        if isinstance(other, RatFun):
            return other
        if isinstance(other, Poly):
            return RatFun(other)
        return RatFun(Poly.constant(other, self.var), _normal=True)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other: Any) -> "RatFun":
        o = self._coerce(other)
        if self.den == o.den:
            return RatFun(self.num + o.num, self.den)
        return RatFun(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFun":
        return RatFun(-self.num, self.den, _normal=True)

    def __sub__(self, other: Any) -> "RatFun":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Any) -> "RatFun":
        return self._coerce(other) - self

    def __mul__(self, other: Any) -> "RatFun":
        if not isinstance(other, (RatFun, Poly)):
            if other == 0:
                return RatFun(Poly((), self.var), _normal=True)
            return RatFun(self.num.scale(other), self.den, _normal=True)
        o = self._coerce(other)
        return RatFun(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFun":
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        return RatFun(self.den, self.num)

    def __truediv__(self, other: Any) -> "RatFun":
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other: Any) -> "RatFun":
        return self._coerce(other) * self.inverse()

    def __pow__(self, e: int) -> "RatFun":
        if e < 0:
            return self.inverse() ** (-e)
        return RatFun(self.num ** e, self.den ** e, _normal=True)

    def __eq__(self, other: object) -> bool:
        try:
            o = self._coerce(other)
        except Exception:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    # -- evaluation ---------------------------------------------------------
    def __call__(self, value: Any) -> Any:
        d = self.den(value)
        if d == 0:
            raise PoleError(f"pole of {self} at {value}")
        return self.num(value) / d

    def value_at_infinity(self) -> Any:
        """Limit as the indeterminate tends to infinity; PoleError if infinite."""
        dn, dd = self.num.degree, self.den.degree
        if self.num.is_zero() or dn < dd:
            return 0 * self.den.lc
        if dn > dd:
            raise PoleError(f"{self} has a pole at infinity")
        return self.num.lc / self.den.lc

    def compose(self, inner: "RatFun") -> "RatFun":
        """The rational function ``self(inner(t))``."""
        inner = inner if isinstance(inner, RatFun) else RatFun(inner)
        p, q = inner.num, inner.den
        d = max(self.num.degree, self.den.degree, 0)
        powers_p = [Poly.constant(1, p.var)]
        powers_q = [Poly.constant(1, p.var)]
        for _ in range(d):
            powers_p.append(powers_p[-1] * p)
            powers_q.append(powers_q[-1] * q)

        def homog(f: Poly) -> Poly:
            acc = Poly((), p.var)
            for i, c in enumerate(f.coeffs):
                acc = acc + (powers_p[i] * powers_q[d - i]).scale(c)
            return acc

        return RatFun(homog(self.num), homog(self.den))

    def map_coeffs(self, fn) -> "RatFun":
        return RatFun(self.num.map_coeffs(fn), self.den.map_coeffs(fn))


def _normalize(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    if num.is_zero():
        return num, Poly.constant(1, num.var)
    g = poly_gcd(num, den)
    if g.degree > 0:
        num, den = num // g, den // g
    lc = den.lc
    if lc != 1:
        num, den = num / lc, den / lc
    return num, den


def ratfun_normalize(f: RatFun) -> RatFun:
    """Canonical representative: coprime numerator and monic denominator."""
    return RatFun(f.num, f.den)
