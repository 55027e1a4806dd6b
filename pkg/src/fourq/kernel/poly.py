"""Dense univariate polynomials over an arbitrary exact field.

Coefficients may be ``Fraction``, :class:`~fourq.kernel.cyclotomic.CycNum`
or :class:`~fourq.kernel.ratfun.RatFun`; anything supporting ``+ - * /`` and
comparison with ``0`` works.  Bare ``int`` coefficients are promoted to
``Fraction`` so that division stays exact.  Any non-``Poly`` operand is a
scalar coefficient, so a ``RatFun`` in another indeterminate scales
coefficient-wise.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Iterable


def _promote(c: Any) -> Any:
    if isinstance(c, bool):
        return Fraction(int(c))
    if isinstance(c, int):
        return Fraction(c)
    return c


class Poly:
    """Polynomial ``c[0] + c[1] x + ... + c[d] x^d`` with ``c[d] != 0``.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable[Any] = (), var: str = "x"):
        cs = [_promote(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple = tuple(cs)
        self.var = var

    # -- constructors -----------------------------------------------------
    @classmethod
    def gen(cls, var: str = "x") -> "Poly":
        return cls((0, 1), var)

    @classmethod
    def constant(cls, c: Any, var: str = "x") -> "Poly":
        return cls((c,), var)

    @classmethod
    def monomial(cls, c: Any, k: int, var: str = "x") -> "Poly":
        return cls([0] * k + [c], var)

    # -- basic queries ----------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Any:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k: int) -> Any:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poly):
            other = Poly.constant(other, self.var)
        if len(self.coeffs) != len(other.coeffs):
            return False
        return all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)!r}, var={self.var!r})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
            if k == 0:
                terms.append(f"({c})")
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"({c})*{mono}")
        return " + ".join(terms)

    # -- arithmetic -------------------------------------------------------
    def _wrap(self, other: Any) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly.constant(other, self.var)

    def __add__(self, other: Any) -> "Poly":
        o = self._wrap(other)
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(out, self.var)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs], self.var)

    def __sub__(self, other: Any) -> "Poly":
        return self + (-self._wrap(other))

    def __rsub__(self, other: Any) -> "Poly":
        return self._wrap(other) - self

    def __mul__(self, other: Any) -> "Poly":
        if not isinstance(other, Poly):
            if other == 0:
                return Poly((), self.var)
            return Poly([c * other for c in self.coeffs], self.var)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly((), self.var)
        out: list = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return Poly(out, self.var)

    def __rmul__(self, other: Any) -> "Poly":
        if other == 0:
            return Poly((), self.var)
        return Poly([other * c for c in self.coeffs], self.var)

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.constant(1, self.var)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, c: Any) -> "Poly":
        return Poly([x * c for x in self.coeffs], self.var)

    def __truediv__(self, c: Any) -> "Poly":
        """Divide by a scalar (not a polynomial; use ``divmod`` for that)."""
        if isinstance(c, Poly):
            raise TypeError("use divmod for polynomial division")
        return Poly([x / c for x in self.coeffs], self.var)

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if not isinstance(other, Poly):
            other = Poly.constant(other, self.var)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dg = other.degree
        lc = other.lc
        quo: list = [Fraction(0)] * max(0, len(rem) - dg)
        for i in range(len(rem) - 1, dg - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            t = c / lc
            quo[i - dg] = t
            for j, g in enumerate(other.coeffs):
                rem[i - dg + j] = rem[i - dg + j] - t * g
        return Poly(quo, self.var), Poly(rem[:dg], self.var)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self / self.lc

    # -- evaluation and calculus -------------------------------------------
    def __call__(self, value: Any) -> Any:
        acc: Any = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def derivative(self) -> "Poly":
        return Poly([k * self.coeffs[k] for k in range(1, len(self.coeffs))], self.var)

    def compose(self, inner: "Poly") -> "Poly":
        acc = Poly((), inner.var)
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def map_coeffs(self, fn) -> "Poly":
        return Poly([fn(c) for c in self.coeffs], self.var)

    def with_var(self, var: str) -> "Poly":
        return Poly(self.coeffs, var)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm (zero if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Return ``(g, s, t)`` with ``s*a + t*b = g`` and ``g`` monic."""
    var = a.var
    r0, r1 = a, b
    s0, s1 = Poly.constant(1, var), Poly((), var)
    t0, t1 = Poly((), var), Poly.constant(1, var)
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    lc = r0.lc
    return r0 / lc, s0 / lc, t0 / lc
