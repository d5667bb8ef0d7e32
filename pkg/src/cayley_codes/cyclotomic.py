"""Integer polynomials in one variable and cyclotomic polynomials.

>>> str(cyclotomic(4))
'1 + x^2'
>>> cyclotomic(5)(1)
5
>>> divides(cyclotomic(2), IntPolynomial((-1, 0, 1)))
True
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from sympy import divisors, isprime

from .errors import InputError, InternalConsistencyError
from .subsets import GroupSubset


@dataclass(frozen=True)
class IntPolynomial:
    """Coefficients ``c0, c1, ...`` (index = degree) with trailing zeros trimmed."""

    coefficients: tuple[int, ...] = ()

    def __post_init__(self):
        c = [int(x) for x in self.coefficients]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coefficients", tuple(c))

    @classmethod
    def monomial(cls, degree: int, coefficient: int = 1) -> IntPolynomial:
        return cls((0,) * degree + (coefficient,))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def leading(self) -> int:
        return self.coefficients[-1] if self.coefficients else 0

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __add__(self, other: IntPolynomial) -> IntPolynomial:
        a, b = self.coefficients, other.coefficients
        n = max(len(a), len(b))
        return IntPolynomial(tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)))

    def __neg__(self) -> IntPolynomial:
        return IntPolynomial(tuple(-c for c in self.coefficients))

    def __sub__(self, other: IntPolynomial) -> IntPolynomial:
        return self + (-other)

    def __mul__(self, other: IntPolynomial) -> IntPolynomial:
        a, b = self.coefficients, other.coefficients
        if not a or not b:
            return IntPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial(tuple(out))

    def __divmod__(self, d: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial]:
        if d.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if d.leading not in (1, -1):
            raise InputError("only monic (or anti-monic) divisors are supported")
        rem = list(self.coefficients)
        dc = d.coefficients
        dd = len(dc) - 1
        quot = [0] * max(len(rem) - dd, 0)
        for k in range(len(rem) - 1, dd - 1, -1):
            c = rem[k] * d.leading  # leading is a unit, so this is exact
            if c:
                quot[k - dd] = c
                for j, y in enumerate(dc):
                    rem[k - dd + j] -= c * y
        return IntPolynomial(tuple(quot)), IntPolynomial(tuple(rem[:dd]) if dd else ())

    def __floordiv__(self, d: IntPolynomial) -> IntPolynomial:
        return divmod(self, d)[0]

    def __mod__(self, d: IntPolynomial) -> IntPolynomial:
        return divmod(self, d)[1]

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        terms = []
        for k, c in enumerate(self.coefficients):
            if c == 0:
                continue
            if k == 0:
                body = str(abs(c))
            else:
                mon = "x" if k == 1 else f"x^{k}"
                body = mon if abs(c) == 1 else f"{abs(c)}*{mon}"
            if not terms:
                terms.append(body if c > 0 else "-" + body)
            else:
                terms.append(("+ " if c > 0 else "- ") + body)
        return " ".join(terms)

    def to_json(self) -> list[int]:
        return list(self.coefficients)


def x_pow_minus_one(n: int) -> IntPolynomial:
    return IntPolynomial((-1,) + (0,) * (n - 1) + (1,))


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> IntPolynomial:
    """The ``n``-th cyclotomic polynomial, by exact division of ``x^n - 1``."""
    if not isinstance(n, int) or n < 1:
        raise InputError(f"cyclotomic index must be a positive integer, got {n!r}")
    f = x_pow_minus_one(n)
    for k in divisors(n)[:-1]:
        q, r = divmod(f, cyclotomic(k))
        if not r.is_zero():
            raise InternalConsistencyError(f"cyclotomic({k}) does not divide x^{n} - 1")
        f = q
    return f


def subset_polynomial(A: GroupSubset, coordinate: int = 0) -> IntPolynomial:
    """``f_A`` with every variable but ``coordinate`` (0-based) set to 1."""
    G = A.group
    if not 0 <= coordinate < G.rank:
        raise InputError(f"coordinate {coordinate} out of range for a rank-{G.rank} group")
    if not A.indices:
        raise InputError("subset polynomial of an empty subset")
    coeffs = [0] * G.factors[coordinate]
    for e in A.elements:
        coeffs[e.coords[coordinate]] += 1
    return IntPolynomial(tuple(coeffs))


def divides(d: IntPolynomial, f: IntPolynomial) -> bool:
    return divmod(f, d)[1].is_zero()


def cyclotomic_divisibility_profile(S: GroupSubset, coordinate: int, p: int, l: int) -> dict[int, bool]:
    """For ``j = 1..l``, whether the ``p^j``-th cyclotomic polynomial divides the subset polynomial."""
    if not isprime(p):
        raise InputError(f"{p} is not prime")
    if l < 1:
        raise InputError("l must be at least 1")
    f = subset_polynomial(S, coordinate)
    return {j: divides(cyclotomic(p**j), f) for j in range(1, l + 1)}


def product(polys: Sequence[IntPolynomial]) -> IntPolynomial:
    out = IntPolynomial((1,))
    for p in polys:
        out = out * p
    return out
