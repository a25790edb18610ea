"""Finite residue fields k(p) with integer-coded elements.

Elements of a residue field of size q are the integers 0..q-1.  For a
prime field the code is the element itself; for F_p[u]/(pi) the code is
the base-p encoding of the residue polynomial.  Integer codes keep
reduced points hashable and make functional-graph nodes plain array
indices.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import fppoly
from .errors import UnsupportedPlaceError
from .fields import KIND_INF, KIND_IRREDUCIBLE, KIND_PRIME, Place
from .fppoly import Coeffs


@dataclass(frozen=True, slots=True)
class ResidueField:
    """F_q presented as F_p (modulus None) or F_p[u]/(modulus)."""

    p: int
    modulus: Coeffs | None = None

    def __post_init__(self):
        if self.modulus is not None and fppoly.pdeg(self.modulus) < 2:
            # degree-1 moduli are just F_p in disguise; normalize them away
            object.__setattr__(self, "modulus", None)

    @property
    def deg(self) -> int:
        return 1 if self.modulus is None else fppoly.pdeg(self.modulus)

    @property
    def q(self) -> int:
        return self.p**self.deg

    def elements(self):
        return range(self.q)

    # -- arithmetic on int codes ------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.modulus is None:
            return (a + b) % self.p
        return fppoly.pcode(
            self.p,
            fppoly.padd(self.p, fppoly.pfromcode(self.p, a), fppoly.pfromcode(self.p, b)),
        )

    def neg(self, a: int) -> int:
        if self.modulus is None:
            return (-a) % self.p
        return fppoly.pcode(self.p, fppoly.pneg(self.p, fppoly.pfromcode(self.p, a)))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.modulus is None:
            return (a * b) % self.p
        prod = fppoly.pmul(self.p, fppoly.pfromcode(self.p, a), fppoly.pfromcode(self.p, b))
        return fppoly.pcode(self.p, fppoly.pmod(self.p, prod, self.modulus))

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a residue field")
        if self.modulus is None:
            return pow(a, self.p - 2, self.p)
        g, u, _ = fppoly.pxgcd(self.p, fppoly.pfromcode(self.p, a), self.modulus)
        assert g == fppoly.ONE
        return fppoly.pcode(self.p, fppoly.pmod(self.p, u, self.modulus))

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def from_int(self, n: int) -> int:
        """The image of an integer (the prime subfield element n mod p)."""
        return n % self.p

    def multiplicative_order(self, a: int) -> int:
        """Order of a nonzero element in the unit group of size q-1."""
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative order")
        order = self.q - 1
        n, d = order, 2
        prime_factors = []
        while d * d <= n:
            if n % d == 0:
                prime_factors.append(d)
                while n % d == 0:
                    n //= d
            d += 1
        if n > 1:
            prime_factors.append(n)
        for ell in prime_factors:
            while order % ell == 0 and self.pow(a, order // ell) == 1:
                order //= ell
        return order

    def element_str(self, a: int) -> str:
        if self.modulus is None:
            return str(a)
        return fppoly.poly_str(fppoly.pfromcode(self.p, a), var="u")

    def __str__(self) -> str:
        if self.modulus is None:
            return f"F{self.p}"
        return f"F{self.p}[u]/({fppoly.poly_str(self.modulus, var='u')})"


def residue_field(place: Place) -> ResidueField:
    """The residue field at a non-archimedean place."""
    if place.kind == KIND_PRIME:
        return ResidueField(place.payload)
    if place.kind == KIND_INF:
        return ResidueField(place.field.char)
    if place.kind == KIND_IRREDUCIBLE:
        return ResidueField(place.field.char, place.payload)
    raise UnsupportedPlaceError("the archimedean place has no residue field")


def field_of_size(q: int) -> ResidueField:
    """A deterministic F_q: smallest p with q = p^k, first irreducible modulus."""
    p = 2
    while q % p:
        p += 1
    k = 0
    n = q
    while n > 1:
        if n % p:
            raise ValueError(f"{q} is not a prime power")
        n //= p
        k += 1
    if k == 1:
        return ResidueField(p)
    modulus = fppoly.enumerate_monic_irreducibles(p, k)
    first_of_deg_k = next(cs for cs in modulus if fppoly.pdeg(cs) == k)
    return ResidueField(p, first_of_deg_k)
