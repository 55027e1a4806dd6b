"""Exact arithmetic in cyclotomic fields Q(zeta_n).

An element is stored in the power basis ``1, z, ..., z^(phi(n)-1)`` modulo the
n-th cyclotomic polynomial, as an integer numerator vector over one positive
common denominator.  Reduction modulo Phi_n makes equality a coefficient
comparison.  Operands of different conductors are lifted to the lcm.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Any, Iterable

import mpmath

from fourq.errors import PrecisionError
from fourq.kernel.poly import Poly, poly_xgcd

#: Largest number of significant digits ``cyc_to_complex`` will certify.
MAX_DIGITS = 1000


def _divisors(n: int) -> list[int]:
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _int_poly_divexact(num: list[int], den: tuple[int, ...]) -> list[int]:
    # den is monic with integer coefficients, so the quotient stays integral.
    rem = list(num)
    dg = len(den) - 1
    quo = [0] * (len(rem) - dg)
    for i in range(len(rem) - 1, dg - 1, -1):
        c = rem[i]
        if c:
            quo[i - dg] = c
            for j, g in enumerate(den):
                rem[i - dg + j] -= c * g
    if any(rem[:dg]):
        raise ArithmeticError("inexact division of x^n - 1")
    return quo


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients (constant term first) of Phi_n.

    Computed as (x^n - 1) divided exactly by Phi_d for every proper divisor d.
    """
    if n < 1:
        raise ValueError("conductor must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        poly = _int_poly_divexact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def _mobius(n: int) -> int:
    result, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    return -result if m > 1 else result


@lru_cache(maxsize=None)
def _ramanujan_ratio(n: int, k: int) -> Fraction:
    # Tr(zeta_n^k) / phi(n) = mu(n/g) / phi(n/g) with g = gcd(k, n)
    d = n // math.gcd(k, n)
    return Fraction(_mobius(d), euler_phi(d))


def _reduce(vec: list[int], n: int) -> list[int]:
    """Reduce an integer vector (power basis, any length) modulo Phi_n."""
    phi_n = cyclotomic_polynomial(n)
    deg = len(phi_n) - 1
    v = list(vec)
    for i in range(len(v) - 1, deg - 1, -1):
        c = v[i]
        if c:
            base = i - deg
            for j in range(deg):
                g = phi_n[j]
                if g:
                    v[base + j] -= c * g
            v[i] = 0
    v = v[:deg]
    if len(v) < deg:
        v.extend([0] * (deg - len(v)))
    return v


class CycNum:
    """Element of Q(zeta_n): ``sum(num[k] * zeta_n^k) / den``."""

    __slots__ = ("n", "num", "den")

    def __init__(self, n: int, num: Iterable[int], den: int = 1, *, _reduced: bool = False):
        if n < 1:
            raise ValueError("conductor must be positive")
        num = list(num)
        if not _reduced:
            num = _reduce(num, n)
        if den <= 0:
            if den == 0:
                raise ZeroDivisionError("zero denominator")
            den = -den
            num = [-c for c in num]
        g = den
        for c in num:
            if g == 1:
                break
            g = math.gcd(g, c)
        if g > 1:
            num = [c // g for c in num]
            den //= g
        self.n = n
        self.num: tuple[int, ...] = tuple(num)
        self.den = den

    # -- constructors -----------------------------------------------------
    @classmethod
    def from_rational(cls, x: Any, n: int = 1) -> "CycNum":
        x = Fraction(x)
        num = [0] * euler_phi(n)
        num[0] = x.numerator
        return cls(n, num, x.denominator, _reduced=True)

    @classmethod
    def from_power_basis(cls, n: int, coeffs: Iterable[Any]) -> "CycNum":
        """Build ``sum(coeffs[k] * zeta_n^k)``; any length, exponents taken mod n."""
        fr = [Fraction(c) for c in coeffs]
        folded = [Fraction(0)] * n
        for k, c in enumerate(fr):
            folded[k % n] += c
        den = 1
        for c in folded:
            den = den * c.denominator // math.gcd(den, c.denominator)
        return cls(n, [int(c * den) for c in folded], den)

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "CycNum":
        vec = [0] * n
        vec[k % n] = 1
        return cls(n, vec)

    # -- views ------------------------------------------------------------
    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        # 1 is the first power-basis vector, so Q is the span of coordinate 0
        return not any(self.num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    def __complex__(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.n)
        acc = 0j
        for c in reversed(self.num):
            acc = acc * z + c
        return acc / self.den

    def __repr__(self) -> str:
        return f"CycNum({self.n}, {list(self.num)!r}, {self.den})"

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                mono = f"z{self.n}" if k == 1 else f"z{self.n}^{k}"
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms) if terms else "0"

    # -- coercion ---------------------------------------------------------
    def lift(self, m: int) -> "CycNum":
        """Same element viewed in Q(zeta_m); requires n | m."""
        if m == self.n:
            return self
        if m % self.n:
            raise ValueError(f"cannot lift conductor {self.n} to {m}")
        step = m // self.n
        vec = [0] * max(1, step * (len(self.num) - 1) + 1)
        for k, c in enumerate(self.num):
            vec[k * step] = c
        return CycNum(m, vec, self.den)

    @staticmethod
    def _coerce(other: Any) -> "CycNum | None":
        if isinstance(other, CycNum):
            return other
        if isinstance(other, (int, Fraction)):
            return CycNum.from_rational(other)
        return None

    def _align(self, other: "CycNum") -> tuple["CycNum", "CycNum"]:
        if self.n == other.n:
            return self, other
        m = self.n * other.n // math.gcd(self.n, other.n)
        return self.lift(m), other.lift(m)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other: Any) -> "CycNum":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._align(o)
        if a.den == b.den:
            return CycNum(a.n, [x + y for x, y in zip(a.num, b.num)], a.den, _reduced=True)
        return CycNum(
            a.n,
            [x * b.den + y * a.den for x, y in zip(a.num, b.num)],
            a.den * b.den,
            _reduced=True,
        )

    __radd__ = __add__

    def __neg__(self) -> "CycNum":
        return CycNum(self.n, [-c for c in self.num], self.den, _reduced=True)

    def __sub__(self, other: Any) -> "CycNum":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Any) -> "CycNum":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: Any) -> "CycNum":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._align(o)
        if len(b.num) == 1 or b.num[1:] == (0,) * (len(b.num) - 1):
            s = b.num[0]
            return CycNum(a.n, [c * s for c in a.num], a.den * b.den, _reduced=True)
        if len(a.num) == 1 or a.num[1:] == (0,) * (len(a.num) - 1):
            s = a.num[0]
            return CycNum(a.n, [c * s for c in b.num], a.den * b.den, _reduced=True)
        conv = [0] * (len(a.num) + len(b.num) - 1)
        for i, x in enumerate(a.num):
            if x:
                for j, y in enumerate(b.num):
                    if y:
                        conv[i + j] += x * y
        return CycNum(a.n, conv, a.den * b.den)

    __rmul__ = __mul__

    def inverse(self) -> "CycNum":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if all(c == 0 for c in self.num[1:]):
            return CycNum.from_rational(Fraction(self.den, self.num[0]), self.n)
        a = Poly(self.coeffs)
        phi_n = Poly(cyclotomic_polynomial(self.n))
        g, s, _ = poly_xgcd(a, phi_n)
        if g.degree != 0:
            raise ArithmeticError("non-invertible element; Phi_n is irreducible so this is a bug")
        return CycNum.from_power_basis(self.n, s.coeffs) if s.coeffs else CycNum.from_rational(0, self.n)

    def __truediv__(self, other: Any) -> "CycNum":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: Any) -> "CycNum":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int) -> "CycNum":
        if e < 0:
            return self.inverse() ** (-e)
        result = CycNum.from_rational(1, self.n)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- Galois action ------------------------------------------------------
    def galois(self, a: int) -> "CycNum":
        """Apply the automorphism zeta_n -> zeta_n^a (gcd(a, n) = 1)."""
        if math.gcd(a, self.n) != 1:
            raise ValueError(f"{a} is not a unit modulo {self.n}")
        vec = [0] * self.n
        for k, c in enumerate(self.num):
            if c:
                vec[(a * k) % self.n] += c
        return CycNum(self.n, vec, self.den)

    def conjugate(self) -> "CycNum":
        """Complex conjugation, realised as zeta -> zeta^-1."""
        return self.galois(-1)

    def galois_orbit(self) -> list["CycNum"]:
        seen: dict[tuple, CycNum] = {}
        for a in range(1, self.n + 1):
            if math.gcd(a, self.n) == 1:
                img = self.galois(a)
                seen.setdefault((img.num, img.den), img)
        return list(seen.values())

    def degree_over_q(self) -> int:
        """[Q(x) : Q], the number of distinct Galois conjugates."""
        return len(self.galois_orbit())

    # -- canonical form -----------------------------------------------------
    def descend(self) -> "CycNum":
        """Rewrite in the smallest conductor whose field contains the element."""
        from fourq.kernel.linalg import solve_exact

        n = self.n
        if n == 1:
            return self
        for m in _divisors(n):
            if m == n:
                return self
            units_fixing = [
                a for a in range(1, n) if math.gcd(a, n) == 1 and a % m == 1 % m
            ]
            if any(self.galois(a) != self for a in units_fixing):
                continue
            basis = [CycNum.zeta(m, k).lift(n).coeffs for k in range(euler_phi(m))]
            cols = [list(col) for col in zip(*basis)]
            sol = solve_exact(cols, list(self.coeffs))
            if sol is None:
                continue
            return CycNum.from_power_basis(m, sol)
        return self

    def __eq__(self, other: object) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.n == o.n:
            return self.num == o.num and self.den == o.den
        a, b = self._align(o)
        return a.num == b.num and a.den == b.den

    def normalized_trace(self) -> Fraction:
        """Tr(x) / [Q(zeta_n) : Q]; unchanged by lifting, so usable as a hash key."""
        total = Fraction(0)
        for k, c in enumerate(self.num):
            if c:
                total += c * _ramanujan_ratio(self.n, k)
        return total / self.den

    def __hash__(self) -> int:
        return hash(self.normalized_trace())


def cyclotomic(n: int, k: int) -> CycNum:
    """zeta_n^k reduced to the power basis of Q(zeta_n)."""
    if n < 1:
        raise ValueError("conductor must be positive")
    return CycNum.zeta(n, k)


def as_cyc(x: Any) -> CycNum:
    if isinstance(x, CycNum):
        return x
    return CycNum.from_rational(x)


def cyc_to_complex(z: CycNum | int | Fraction, digits: int = 15) -> mpmath.mpc:
    """Evaluate ``z`` at zeta_n = exp(2 pi i / n) with error below 10^-digits.

    Works with ``digits + 10`` guard digits in mpmath; the power-basis sum has
    at most phi(n) terms, each evaluated to full working precision.
    """
    if digits < 1 or digits > MAX_DIGITS:
        raise PrecisionError(f"digits must lie in [1, {MAX_DIGITS}], got {digits}")
    z = as_cyc(z)
    guard = 10 + len(str(max([abs(c) for c in z.num] + [1]))) + len(str(z.n))
    with mpmath.workdps(digits + guard):
        w = mpmath.expjpi(mpmath.mpf(2) / z.n)
        acc = mpmath.mpc(0)
        for c in reversed(z.num):
            acc = acc * w + c
        result = acc / z.den
    return result
