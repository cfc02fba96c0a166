"""Exact arithmetic in Z[L] and rationally scaled classes.

An :class:`LPoly` is an integer polynomial in the Lefschetz class ``L``; a
:class:`ScaledClass` is ``scalar * poly`` with a rational scalar.  Counting
functions are recovered by substituting ``L = q``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

MAX_DEGREE = 200


class DegreeOverflow(ArithmeticError):
    pass


class InexactDivision(ArithmeticError):
    """Division left a nonzero remainder: the quotient is not a Tate polynomial."""

    def __init__(self, dividend, divisor, remainder, message=None):
        self.dividend = dividend
        self.divisor = divisor
        self.remainder = remainder
        super().__init__(message or f"({dividend}) / ({divisor}) leaves remainder {remainder}")


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class LPoly:
    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = _trim(int(x) for x in self.coeffs)
        if len(c) - 1 > MAX_DEGREE:
            raise DegreeOverflow(f"degree {len(c) - 1} exceeds {MAX_DEGREE}")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def const(cls, c: int) -> LPoly:
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> LPoly:
        return cls((0,) * k + (c,))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def __add__(self, other):
        if isinstance(other, int):
            other = LPoly.const(other)
        if not isinstance(other, LPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return LPoly(tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)))

    __radd__ = __add__

    def __neg__(self):
        return LPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, int):
            other = LPoly.const(other)
        if not isinstance(other, LPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return LPoly(tuple(c * other for c in self.coeffs))
        if not isinstance(other, LPoly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return LPoly()
        if self.degree + other.degree > MAX_DEGREE:
            raise DegreeOverflow(f"product degree {self.degree + other.degree} exceeds {MAX_DEGREE}")
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return LPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = LPoly.const(1)
        for _ in range(e):
            out = out * self
        return out

    def __truediv__(self, other):
        return exact_div(self, other)

    def __call__(self, q):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                mono = "L" if k == 1 else f"L^{k}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"LPoly({self})"


L = LPoly.monomial(1)
ONE = LPoly.const(1)
ZERO = LPoly()


def lp_arith(a: LPoly, b: LPoly, op: str) -> LPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def divmod_int(a: LPoly, b: LPoly) -> tuple[LPoly, LPoly]:
    """Long division in Z[L]; stops as soon as a leading coefficient fails to divide.

    Returns (quotient, remainder) with a = quotient*b + remainder.
    """
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    rem = list(a.coeffs)
    q = [0] * max(len(rem) - len(b.coeffs) + 1, 0)
    db, lb = b.degree, b.lead
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k]
        if c == 0:
            continue
        if c % lb:
            break
        f = c // lb
        q[k - db] = f
        for i, bc in enumerate(b.coeffs):
            rem[k - db + i] -= f * bc
    return LPoly(tuple(q)), LPoly(tuple(rem))


def exact_div(a: LPoly, b: LPoly) -> LPoly:
    quo, rem = divmod_int(a, b)
    if not rem.is_zero():
        raise InexactDivision(a, b, rem)
    return quo


def product(polys: Iterable[LPoly]) -> LPoly:
    out = ONE
    for f in polys:
        out = out * f
    return out


@dataclass(frozen=True)
class ScaledClass:
    """``scalar * poly`` kept in canonical form.

    Canonical form moves the content and sign of ``poly`` into ``scalar`` so
    that ``poly`` is primitive with positive leading coefficient; the zero
    class is ``(0, 0)``.  Then ``scalar.denominator`` is the common
    denominator of the expanded coefficients.
    """

    scalar: Fraction
    poly: LPoly

    def __post_init__(self):
        s = Fraction(self.scalar)
        f = self.poly
        if not isinstance(f, LPoly):
            f = LPoly(tuple(f))
        if f.is_zero() or s == 0:
            s, f = Fraction(0), ZERO
        else:
            g = f.content()
            if f.lead < 0:
                g = -g
            if g != 1:
                f = LPoly(tuple(c // g for c in f.coeffs))
                s *= g
        object.__setattr__(self, "scalar", s)
        object.__setattr__(self, "poly", f)

    @classmethod
    def of(cls, poly: LPoly | int, scalar=1) -> ScaledClass:
        if isinstance(poly, int):
            poly = LPoly.const(poly)
        return cls(Fraction(scalar), poly)

    @classmethod
    def from_coeffs(cls, coeffs: Sequence) -> ScaledClass:
        """Build from rational coefficients (index = degree)."""
        fr = [Fraction(c) for c in coeffs]
        d = lcm(*(c.denominator for c in fr)) if fr else 1
        return cls(Fraction(1, d), LPoly(tuple(int(c * d) for c in fr)))

    @property
    def denominator(self) -> int:
        return self.scalar.denominator

    @property
    def degree(self) -> int:
        return self.poly.degree

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def coefficients(self) -> list[Fraction]:
        return [self.scalar * c for c in self.poly.coeffs]

    def _num(self, d: int) -> LPoly:
        # integer polynomial equal to d * self
        return self.poly * int(self.scalar * d)

    def __add__(self, other):
        other = _as_scaled(other)
        if other is None:
            return NotImplemented
        d = lcm(self.scalar.denominator, other.scalar.denominator)
        return ScaledClass(Fraction(1, d), self._num(d) + other._num(d))

    __radd__ = __add__

    def __neg__(self):
        return ScaledClass(-self.scalar, self.poly)

    def __sub__(self, other):
        other = _as_scaled(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_scaled(other)
        if other is None:
            return NotImplemented
        return ScaledClass(self.scalar * other.scalar, self.poly * other.poly)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_scaled(other)
        if other is None:
            return NotImplemented
        return scaled_div(self, other)

    def __call__(self, q) -> Fraction:
        return eval_at(self, q)

    def __str__(self):
        if self.scalar == 1:
            return str(self.poly)
        return f"({self.scalar}) * ({self.poly})"


def _as_scaled(x) -> ScaledClass | None:
    if isinstance(x, ScaledClass):
        return x
    if isinstance(x, (LPoly, int)):
        return ScaledClass.of(x)
    if isinstance(x, Fraction):
        return ScaledClass(x, ONE)
    return None


def scaled_div(a: ScaledClass, b: ScaledClass) -> ScaledClass:
    if b.is_zero():
        raise ZeroDivisionError("division by the zero class")
    try:
        quo = exact_div(a.poly, b.poly)
    except InexactDivision as exc:
        raise InexactDivision(a, b, exc.remainder) from None
    return ScaledClass(a.scalar / b.scalar, quo)


def eval_at(c: ScaledClass, q: int) -> Fraction:
    return c.scalar * c.poly(q)


def gl_order(n: int) -> LPoly:
    """prod_{i<n} (L^n - L^i)."""
    return product(LPoly.monomial(n) - LPoly.monomial(i) for i in range(n))


def proj_space(n: int) -> LPoly:
    """1 + L + ... + L^n; the zero polynomial for n < 0."""
    return LPoly((1,) * (n + 1)) if n >= 0 else ZERO
