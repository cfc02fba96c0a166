"""Prime-field arithmetic for odd primes."""
from __future__ import annotations

from dataclasses import dataclass

MAX_PRIME = 251


class ZeroInverse(ZeroDivisionError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def odd_primes(start: int = 3, count: int | None = None, stop: int | None = None) -> list[int]:
    """Consecutive odd primes from ``start`` on, up to ``count`` items or below ``stop``."""
    out = []
    k = max(start, 3)
    while (count is None or len(out) < count) and (stop is None or k < stop):
        if is_prime(k):
            out.append(k)
        k += 1
    return out


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise ValueError(f"{self.p!r} is not a prime")
        if self.p == 2:
            raise ValueError("characteristic 2 is not supported")
        if self.p > MAX_PRIME:
            raise ValueError(f"prime {self.p} exceeds {MAX_PRIME}")

    def __call__(self, value: int) -> Fp:
        return Fp(value % self.p, self)

    def elements(self):
        return [Fp(v, self) for v in range(self.p)]


@dataclass(frozen=True)
class Fp:
    value: int
    field: PrimeField

    def __post_init__(self):
        if not 0 <= self.value < self.field.p:
            raise ValueError(f"residue {self.value} out of range for p={self.field.p}")

    @property
    def p(self) -> int:
        return self.field.p

    def _coerce(self, other) -> int:
        if isinstance(other, Fp):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self.field(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self.field(self.value - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self.field(o - self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self.field(self.value * o)

    __rmul__ = __mul__

    def __neg__(self):
        return self.field(-self.value)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * fp_inv(self.field(o))

    def __pow__(self, e: int):
        if e < 0:
            return fp_inv(self) ** (-e)
        return self.field(pow(self.value, e, self.p))

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"Fp({self.value} mod {self.p})"


def fp_inv(a: Fp) -> Fp:
    if a.value == 0:
        raise ZeroInverse(f"0 has no inverse mod {a.p}")
    return a.field(pow(a.value, -1, a.p))


def fp_is_square(a: Fp, method: str = "euler") -> bool:
    """Quadratic-residue test; 0 counts as a square.

    ``method`` is ``"euler"`` (a^((p-1)/2) == 1) or ``"scan"`` (search all x).
    """
    if a.value == 0:
        return True
    if method == "euler":
        return pow(a.value, (a.p - 1) // 2, a.p) == 1
    if method == "scan":
        return any(x * x % a.p == a.value for x in range(1, a.p))
    raise ValueError(f"unknown method {method!r}")


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) in {-1, 0, 1} for an odd prime p."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1
