"""Polynomial arithmetic over the prime fields F_p.

Polynomials are represented as tuples of integer coefficients in
{0, ..., p-1}, constant term first, with no trailing zeros; the empty
tuple is the zero polynomial.  The low-level functions in this module
(`padd`, `pmul`, `pdivmod`, ...) operate directly on such tuples and are
used by the rest of the package wherever speed matters.  The `FpPoly`
class is a thin immutable wrapper providing operators, hashing and
printing for the public API.

Irreducible polynomials are enumerated in (degree, code) order, where the
code of (c_0, ..., c_n) is the base-p integer sum(c_i * p^i).  A product
sieve marks every monic reducible of a given degree, so the survivors are
exactly the monic irreducibles; counts are cross-checked elsewhere against
the Moebius-inversion formula I(n) = (1/n) * sum_{d|n} mu(n/d) p^d.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import BudgetExceededError, DomainError

Coeffs = tuple[int, ...]

ZERO: Coeffs = ()
ONE: Coeffs = (1,)


def ptrim(cs: list[int]) -> Coeffs:
    """Drop trailing zeros and freeze."""
    n = len(cs)
    while n > 0 and cs[n - 1] == 0:
        n -= 1
    return tuple(cs[:n])


def pdeg(a: Coeffs) -> int:
    """Degree; -1 for the zero polynomial."""
    return len(a) - 1


def plead(a: Coeffs) -> int:
    """Leading coefficient (0 for the zero polynomial)."""
    return a[-1] if a else 0


def pconst(p: int, c: int) -> Coeffs:
    c %= p
    return (c,) if c else ZERO


def padd(p: int, a: Coeffs, b: Coeffs) -> Coeffs:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return ptrim(out)


def pneg(p: int, a: Coeffs) -> Coeffs:
    return tuple((-c) % p for c in a)


def psub(p: int, a: Coeffs, b: Coeffs) -> Coeffs:
    return padd(p, a, pneg(p, b))


def pmul(p: int, a: Coeffs, b: Coeffs) -> Coeffs:
    if not a or not b:
        return ZERO
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return ptrim(out)


def pscale(p: int, a: Coeffs, c: int) -> Coeffs:
    c %= p
    if c == 0:
        return ZERO
    return ptrim([ai * c % p for ai in a])


def pdivmod(p: int, a: Coeffs, b: Coeffs) -> tuple[Coeffs, Coeffs]:
    """Quotient and remainder; b must be nonzero."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return ZERO, a
    inv_lead = pow(b[-1], p - 2, p) if b[-1] != 1 else 1
    rem = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for shift in range(len(a) - len(b), -1, -1):
        top = rem[shift + len(b) - 1]
        if top:
            f = top * inv_lead % p
            q[shift] = f
            for i, bi in enumerate(b):
                rem[shift + i] = (rem[shift + i] - f * bi) % p
    return ptrim(q), ptrim(rem)


def pmod(p: int, a: Coeffs, b: Coeffs) -> Coeffs:
    return pdivmod(p, a, b)[1]


def pexactdiv(p: int, a: Coeffs, b: Coeffs) -> Coeffs:
    q, r = pdivmod(p, a, b)
    if r:
        raise ArithmeticError("division is not exact")
    return q


def pmonic(p: int, a: Coeffs) -> Coeffs:
    """Scale a nonzero polynomial to leading coefficient 1."""
    lead = plead(a)
    if lead in (0, 1):
        return a
    return pscale(p, a, pow(lead, p - 2, p))


def pgcd(p: int, a: Coeffs, b: Coeffs) -> Coeffs:
    """Monic gcd; gcd(0, 0) = 0."""
    while b:
        a, b = b, pmod(p, a, b)
    return pmonic(p, a)


def pxgcd(p: int, a: Coeffs, b: Coeffs) -> tuple[Coeffs, Coeffs, Coeffs]:
    """(g, u, v) with u*a + v*b = g, g monic."""
    r0, r1 = a, b
    u0, u1 = ONE, ZERO
    v0, v1 = ZERO, ONE
    while r1:
        q, r = pdivmod(p, r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, psub(p, u0, pmul(p, q, u1))
        v0, v1 = v1, psub(p, v0, pmul(p, q, v1))
    lead = plead(r0)
    if lead not in (0, 1):
        c = pow(lead, p - 2, p)
        r0, u0, v0 = pscale(p, r0, c), pscale(p, u0, c), pscale(p, v0, c)
    return r0, u0, v0


def pderiv(p: int, a: Coeffs) -> Coeffs:
    return ptrim([i * a[i] % p for i in range(1, len(a))])


def ppow_mod(p: int, a: Coeffs, e: int, m: Coeffs) -> Coeffs:
    """a^e modulo m by square-and-multiply."""
    result = pmod(p, ONE, m)
    base = pmod(p, a, m)
    while e:
        if e & 1:
            result = pmod(p, pmul(p, result, base), m)
        base = pmod(p, pmul(p, base, base), m)
        e >>= 1
    return result


def peval(p: int, a: Coeffs, x: int) -> int:
    """Evaluate at a field element given as an int mod p."""
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def pcode(p: int, a: Coeffs) -> int:
    """Base-p integer code of the coefficient tuple."""
    acc = 0
    for c in reversed(a):
        acc = acc * p + c
    return acc


def pfromcode(p: int, code: int) -> Coeffs:
    cs = []
    while code:
        code, c = divmod(code, p)
        cs.append(c)
    return tuple(cs)


def _check_prime(p: int) -> None:
    if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise DomainError(f"{p} is not a prime")


@lru_cache(maxsize=None)
def _monic_irreducibles_of_degree(p: int, n: int) -> tuple[Coeffs, ...]:
    # Product sieve: every monic reducible of degree n is g*h with g monic
    # irreducible of degree <= n/2 and h monic of degree n - deg g.
    _check_prime(p)
    if n == 1:
        return tuple((c, 1) for c in range(p))
    composite: set[Coeffs] = set()
    for a in range(1, n // 2 + 1):
        for g in _monic_irreducibles_of_degree(p, a):
            for h in _monic_of_degree(p, n - a):
                composite.add(pmul(p, g, h))
    return tuple(f for f in _monic_of_degree(p, n) if f not in composite)


def _monic_of_degree(p: int, n: int):
    """All monic polynomials of degree n, in code order."""
    for lower in itertools.product(range(p), repeat=n):
        # itertools.product varies the LAST element fastest; we want the
        # base-p code (constant term = least significant digit) ascending.
        yield tuple(reversed(lower)) + (1,)


def is_irreducible(p: int, a: Coeffs) -> bool:
    """Irreducibility of a nonconstant polynomial by trial division."""
    n = pdeg(a)
    if n < 1:
        return False
    if n == 1:
        return True
    for d in range(1, n // 2 + 1):
        for g in _monic_irreducibles_of_degree(p, d):
            if not pmod(p, a, g):
                return False
    return True


def _mobius(n: int) -> int:
    result = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    if n > 1:
        result = -result
    return result


def count_irreducibles(p: int, n: int) -> int:
    """Number of monic irreducible polynomials of degree n over F_p."""
    _check_prime(p)
    if n < 1:
        raise DomainError("degree must be >= 1")
    total = 0
    for d in range(1, n + 1):
        if n % d == 0:
            total += _mobius(n // d) * p**d
    assert total % n == 0
    return total // n


def enumerate_monic_irreducibles(
    p: int, max_degree: int, budget: int = 10**7
) -> list[Coeffs]:
    """Monic irreducibles of degree <= max_degree in (degree, code) order.

    The code order compares coefficient tuples from the constant term up.
    Raises BudgetExceededError when p**max_degree exceeds the budget.
    """
    _check_prime(p)
    if max_degree < 1:
        raise DomainError("max_degree must be >= 1")
    if p**max_degree > budget:
        raise BudgetExceededError(
            f"enumeration of degree-{max_degree} polynomials over F_{p} "
            f"exceeds budget {budget}"
        )
    out: list[Coeffs] = []
    for n in range(1, max_degree + 1):
        out.extend(_monic_irreducibles_of_degree(p, n))
    return out


def iter_monic_irreducibles(p: int):
    """Endless iterator over monic irreducibles in (degree, code) order."""
    for n in itertools.count(1):
        yield from _monic_irreducibles_of_degree(p, n)


def factor_poly(p: int, a: Coeffs) -> dict[Coeffs, int]:
    """Factor a nonzero polynomial into monic irreducibles.

    Returns {irreducible: multiplicity}; the unit (leading coefficient) is
    discarded.  Trial division in enumeration order, fine at desk scale.
    """
    if not a:
        raise DomainError("cannot factor the zero polynomial")
    a = pmonic(p, a)
    factors: dict[Coeffs, int] = {}
    for g in iter_monic_irreducibles(p):
        if pdeg(a) < 1:
            break
        if pdeg(g) > pdeg(a) - pdeg(g):
            # remaining cofactor is irreducible
            if pdeg(a) >= 1:
                factors[a] = factors.get(a, 0) + 1
            break
        while True:
            q, r = pdivmod(p, a, g)
            if r:
                break
            a = q
            factors[g] = factors.get(g, 0) + 1
    return factors


def poly_str(a: Coeffs, var: str = "t") -> str:
    """Human-readable form, highest power first, e.g. 't^3+2*t+1'."""
    if not a:
        return "0"
    terms = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            power = var if i == 1 else f"{var}^{i}"
            terms.append(power if c == 1 else f"{c}*{power}")
    return "+".join(terms)


def coeff_string(a: Coeffs) -> str:
    """Serialized form 'c0,c1,...,cn' (constant term first); '0' for zero."""
    if not a:
        return "0"
    return ",".join(str(c) for c in a)


def parse_coeff_string(p: int, s: str) -> Coeffs:
    try:
        return ptrim([int(part) % p for part in s.split(",")])
    except ValueError as exc:
        raise DomainError(f"bad coefficient string {s!r}") from exc


@dataclass(frozen=True, slots=True)
class FpPoly:
    """Immutable polynomial over F_p.

    Coefficients are stored constant-term first with no trailing zeros.
    """

    p: int
    coeffs: Coeffs

    @staticmethod
    def make(p: int, coeffs) -> "FpPoly":
        return FpPoly(p, ptrim([int(c) % p for c in coeffs]))

    @staticmethod
    def const(p: int, c: int) -> "FpPoly":
        return FpPoly(p, pconst(p, c))

    @staticmethod
    def gen(p: int) -> "FpPoly":
        """The generator t."""
        return FpPoly(p, (0, 1))

    @property
    def degree(self) -> int:
        return pdeg(self.coeffs)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def is_monic(self) -> bool:
        return plead(self.coeffs) == 1

    def leading(self) -> int:
        return plead(self.coeffs)

    def monic(self) -> "FpPoly":
        return FpPoly(self.p, pmonic(self.p, self.coeffs))

    def _same_field(self, other: "FpPoly") -> None:
        if self.p != other.p:
            raise DomainError("polynomials over different prime fields")

    def __add__(self, other: "FpPoly") -> "FpPoly":
        self._same_field(other)
        return FpPoly(self.p, padd(self.p, self.coeffs, other.coeffs))

    def __sub__(self, other: "FpPoly") -> "FpPoly":
        self._same_field(other)
        return FpPoly(self.p, psub(self.p, self.coeffs, other.coeffs))

    def __neg__(self) -> "FpPoly":
        return FpPoly(self.p, pneg(self.p, self.coeffs))

    def __mul__(self, other: "FpPoly") -> "FpPoly":
        self._same_field(other)
        return FpPoly(self.p, pmul(self.p, self.coeffs, other.coeffs))

    def __divmod__(self, other: "FpPoly") -> tuple["FpPoly", "FpPoly"]:
        self._same_field(other)
        q, r = pdivmod(self.p, self.coeffs, other.coeffs)
        return FpPoly(self.p, q), FpPoly(self.p, r)

    def __floordiv__(self, other: "FpPoly") -> "FpPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "FpPoly") -> "FpPoly":
        return divmod(self, other)[1]

    def gcd(self, other: "FpPoly") -> "FpPoly":
        self._same_field(other)
        return FpPoly(self.p, pgcd(self.p, self.coeffs, other.coeffs))

    def derivative(self) -> "FpPoly":
        return FpPoly(self.p, pderiv(self.p, self.coeffs))

    def is_irreducible(self) -> bool:
        return is_irreducible(self.p, self.coeffs)

    def __str__(self) -> str:
        return poly_str(self.coeffs)

    def __repr__(self) -> str:
        return f"FpPoly(p={self.p}, {poly_str(self.coeffs)})"
