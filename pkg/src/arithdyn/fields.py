"""Base fields Q and F_p(t), their elements, places and valuations.

Elements are kept in a canonical form that makes equality and hashing
structural: lowest terms with positive denominator over Q, lowest terms
with monic denominator over F_p(t).  Places are the finite primes plus the
archimedean place of Q, and the monic irreducibles plus the degree
valuation at infinity of F_p(t).  Every non-archimedean place carries the
normalized valuation with value group Z; the infinite place of F_p(t) is
an ordinary non-archimedean place with uniformizer 1/t.

Integer factorization is trial division with an explicit budget: a budget
overflow raises BudgetExceededError, it never produces a wrong answer.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import fppoly
from .errors import (
    BudgetExceededError,
    DomainError,
    UnsupportedPlaceError,
)
from .fppoly import Coeffs, FpPoly

# ---------------------------------------------------------------------------
# base fields


@dataclass(frozen=True, slots=True)
class BaseField:
    """Q (char == 0) or F_p(t) (char == p prime).

    Computations always happen over the prime global field itself; the
    extension degree D appears only as a parameter of bound formulas.
    """

    char: int

    def __post_init__(self):
        if self.char:
            fppoly._check_prime(self.char)

    @property
    def is_rationals(self) -> bool:
        return self.char == 0

    @property
    def is_function_field(self) -> bool:
        return self.char != 0

    def element(self, num, den=1) -> "GlobalFieldElement":
        return make_element(self, num, den)

    def zero(self) -> "GlobalFieldElement":
        return self.element(0)

    def one(self) -> "GlobalFieldElement":
        return self.element(1)

    def gen(self) -> "GlobalFieldElement":
        """The element t of F_p(t)."""
        if self.is_rationals:
            raise DomainError("the rationals have no generator t")
        return GlobalFieldElement(self, (0, 1), fppoly.ONE)

    def __str__(self) -> str:
        return "Q" if self.is_rationals else f"F{self.char}(t)"


QQ = BaseField(0)


@lru_cache(maxsize=None)
def function_field(p: int) -> BaseField:
    return BaseField(p)


# ---------------------------------------------------------------------------
# elements


def _canon_ff(p: int, num: Coeffs, den: Coeffs) -> tuple[Coeffs, Coeffs]:
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return fppoly.ZERO, fppoly.ONE
    g = fppoly.pgcd(p, num, den)
    if g != fppoly.ONE:
        num = fppoly.pexactdiv(p, num, g)
        den = fppoly.pexactdiv(p, den, g)
    lead = fppoly.plead(den)
    if lead != 1:
        c = pow(lead, p - 2, p)
        num = fppoly.pscale(p, num, c)
        den = fppoly.pscale(p, den, c)
    return num, den


@dataclass(frozen=True, slots=True)
class GlobalFieldElement:
    """An exact element of Q or F_p(t), always in canonical lowest terms."""

    field: BaseField
    num: int | Coeffs
    den: int | Coeffs

    # construction goes through make_element / BaseField.element

    @property
    def is_zero(self) -> bool:
        return self.num == 0 or self.num == ()

    def _check(self, other: "GlobalFieldElement") -> None:
        if self.field != other.field:
            raise DomainError("elements of different base fields")

    def as_fraction(self) -> Fraction:
        if not self.field.is_rationals:
            raise DomainError("not a rational number")
        return Fraction(self.num, self.den)

    def num_poly(self) -> FpPoly:
        return FpPoly(self.field.char, self.num)

    def den_poly(self) -> FpPoly:
        return FpPoly(self.field.char, self.den)

    def __add__(self, other):
        self._check(other)
        if self.field.is_rationals:
            return _from_fraction(self.field, self.as_fraction() + other.as_fraction())
        p = self.field.char
        num = fppoly.padd(
            p,
            fppoly.pmul(p, self.num, other.den),
            fppoly.pmul(p, other.num, self.den),
        )
        return GlobalFieldElement(
            self.field, *_canon_ff(p, num, fppoly.pmul(p, self.den, other.den))
        )

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        if self.field.is_rationals:
            return GlobalFieldElement(self.field, -self.num, self.den)
        return GlobalFieldElement(
            self.field, fppoly.pneg(self.field.char, self.num), self.den
        )

    def __mul__(self, other):
        self._check(other)
        if self.field.is_rationals:
            return _from_fraction(self.field, self.as_fraction() * other.as_fraction())
        p = self.field.char
        return GlobalFieldElement(
            self.field,
            *_canon_ff(
                p,
                fppoly.pmul(p, self.num, other.num),
                fppoly.pmul(p, self.den, other.den),
            ),
        )

    def __truediv__(self, other):
        self._check(other)
        if other.is_zero:
            raise ZeroDivisionError("division by zero element")
        if self.field.is_rationals:
            return _from_fraction(self.field, self.as_fraction() / other.as_fraction())
        p = self.field.char
        return GlobalFieldElement(
            self.field,
            *_canon_ff(
                p,
                fppoly.pmul(p, self.num, other.den),
                fppoly.pmul(p, self.den, other.num),
            ),
        )

    def __pow__(self, e: int):
        if e < 0:
            return self.field.one() / self**(-e)
        result = self.field.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __str__(self) -> str:
        if self.field.is_rationals:
            return str(self.num) if self.den == 1 else f"{self.num}/{self.den}"
        num = fppoly.poly_str(self.num)
        if self.den == fppoly.ONE:
            return num
        return f"({num})/({fppoly.poly_str(self.den)})"

    def __repr__(self) -> str:
        return f"<{self} in {self.field}>"


def _from_fraction(field: BaseField, fr: Fraction) -> GlobalFieldElement:
    return GlobalFieldElement(field, fr.numerator, fr.denominator)


def make_element(field: BaseField, num, den=1) -> GlobalFieldElement:
    """Build a canonical element from ints, Fractions, FpPoly or tuples."""
    if field.is_rationals:
        fr = Fraction(
            num.as_fraction() if isinstance(num, GlobalFieldElement) else num
        ) / Fraction(den.as_fraction() if isinstance(den, GlobalFieldElement) else den)
        return _from_fraction(field, fr)
    p = field.char

    def to_coeffs(v) -> Coeffs:
        if isinstance(v, GlobalFieldElement):
            if v.den != fppoly.ONE:
                raise DomainError("expected a polynomial, got a proper fraction")
            return v.num
        if isinstance(v, FpPoly):
            return v.coeffs
        if isinstance(v, tuple):
            return fppoly.ptrim([c % p for c in v])
        if isinstance(v, int):
            return fppoly.pconst(p, v)
        raise DomainError(f"cannot coerce {v!r} into F_{p}[t]")

    return GlobalFieldElement(field, *_canon_ff(p, to_coeffs(num), to_coeffs(den)))


# ---------------------------------------------------------------------------
# integer utilities (trial division, with budgets)


def iter_primes():
    """2, 3, 5, ... by incremental trial division."""
    found: list[int] = []
    for n in itertools.count(2):
        if all(n % q for q in found if q * q <= n):
            found.append(n)
            yield n


def is_prime_int(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def factor_int(n: int, budget: int = 10**6) -> dict[int, int]:
    """Factor |n| (n != 0) by trial division up to `budget`.

    Raises BudgetExceededError if a composite cofactor cannot be certified
    within the budget.
    """
    if n == 0:
        raise DomainError("cannot factor zero")
    n = abs(n)
    factors: dict[int, int] = {}
    for d in itertools.chain((2,), itertools.count(3, 2)):
        if d > budget or d * d > n:
            break
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
    if n > 1:
        if math.isqrt(n) > budget:
            raise BudgetExceededError(
                f"factorization cofactor {n} exceeds trial-division budget"
            )
        factors[n] = factors.get(n, 0) + 1
    return factors


def int_ord(n: int, p: int) -> int:
    """Exact power of p dividing n != 0."""
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def poly_ord(a: Coeffs, p: int, pi: Coeffs) -> int:
    """Exact power of pi dividing a != 0."""
    e = 0
    while True:
        q, r = fppoly.pdivmod(p, a, pi)
        if r:
            return e
        a = q
        e += 1


# ---------------------------------------------------------------------------
# places

KIND_PRIME = "prime"
KIND_IRREDUCIBLE = "irreducible"
KIND_INF = "inf"
KIND_ARCH = "arch"


@dataclass(frozen=True, slots=True)
class Place:
    """A place of the base field.

    kind/payload combinations:
      prime        rational prime q >= 2          (field Q)
      arch         None                           (field Q)
      irreducible  monic irreducible coefficients (field F_p(t))
      inf          None                           (field F_p(t))
    """

    field: BaseField
    kind: str
    payload: int | Coeffs | None = None

    @property
    def is_archimedean(self) -> bool:
        return self.kind == KIND_ARCH

    @property
    def degree(self) -> int:
        """Residue degree over the prime subfield (infinity counts as 1)."""
        if self.kind == KIND_IRREDUCIBLE:
            return fppoly.pdeg(self.payload)
        return 1

    def residue_size(self) -> int:
        if self.kind == KIND_PRIME:
            return self.payload
        if self.kind == KIND_IRREDUCIBLE:
            return self.field.char ** fppoly.pdeg(self.payload)
        if self.kind == KIND_INF:
            return self.field.char
        raise UnsupportedPlaceError("the archimedean place has no residue field")

    def sort_key(self):
        if self.kind == KIND_ARCH:
            return (0, 0, 0)
        if self.kind == KIND_PRIME:
            return (1, self.payload, 0)
        if self.kind == KIND_INF:
            return (0, 0, 0)
        return (1, fppoly.pdeg(self.payload), fppoly.pcode(self.field.char, self.payload))

    def serialize(self) -> str:
        if self.kind == KIND_PRIME:
            return f"p:{self.payload}"
        if self.kind == KIND_IRREDUCIBLE:
            return f"pi:{fppoly.coeff_string(self.payload)}"
        return "inf"

    def __str__(self) -> str:
        if self.kind == KIND_PRIME:
            return f"({self.payload})"
        if self.kind == KIND_IRREDUCIBLE:
            return f"({fppoly.poly_str(self.payload)})"
        return "inf"


def prime_place(q: int) -> Place:
    if not is_prime_int(q):
        raise DomainError(f"{q} is not prime")
    return Place(QQ, KIND_PRIME, q)


def archimedean_place() -> Place:
    return Place(QQ, KIND_ARCH, None)


def irreducible_place(field: BaseField, poly) -> Place:
    if field.is_rationals:
        raise DomainError("irreducible places live over F_p(t)")
    coeffs = poly.coeffs if isinstance(poly, FpPoly) else fppoly.ptrim(list(poly))
    if fppoly.plead(coeffs) != 1:
        raise DomainError("place polynomial must be monic")
    if not fppoly.is_irreducible(field.char, coeffs):
        raise DomainError(f"{fppoly.poly_str(coeffs)} is not irreducible over F_{field.char}")
    return Place(field, KIND_IRREDUCIBLE, coeffs)


def infinite_place(field: BaseField) -> Place:
    if field.is_rationals:
        return archimedean_place()
    return Place(field, KIND_INF, None)


def parse_place(field: BaseField, token: str) -> Place:
    """Parse 'p:7', 'pi:1,1,1' or 'inf'."""
    token = token.strip()
    if token == "inf":
        return infinite_place(field)
    if token.startswith("p:"):
        if not field.is_rationals:
            raise DomainError("'p:' places live over Q")
        return prime_place(int(token[2:]))
    if token.startswith("pi:"):
        return irreducible_place(
            field, fppoly.parse_coeff_string(field.char, token[3:])
        )
    raise DomainError(f"cannot parse place token {token!r}")


@dataclass(frozen=True, slots=True)
class PlaceSet:
    """A finite, duplicate-free set of places of one base field.

    Over Q the archimedean place must be present; over F_p(t) the set must
    simply be non-empty.
    """

    field: BaseField
    places: tuple[Place, ...]

    @property
    def size(self) -> int:
        return len(self.places)

    def __contains__(self, place: Place) -> bool:
        return place in self.places

    def __iter__(self):
        return iter(self.places)

    def finite_places(self) -> tuple[Place, ...]:
        return tuple(p for p in self.places if p.kind in (KIND_PRIME, KIND_IRREDUCIBLE))

    def contains_infinite(self) -> bool:
        return any(p.kind in (KIND_INF, KIND_ARCH) for p in self.places)

    def serialize(self) -> str:
        return ";".join(p.serialize() for p in self.places)

    def __str__(self) -> str:
        return "{" + ", ".join(str(p) for p in self.places) + "}"


def place_set(field: BaseField, places) -> PlaceSet:
    places = list(places)
    for pl in places:
        if pl.field != field:
            raise DomainError("place of a different base field")
    if len(set(places)) != len(places):
        raise DomainError("duplicate places")
    if not places:
        raise DomainError("a place set must be non-empty")
    if field.is_rationals and not any(pl.kind == KIND_ARCH for pl in places):
        raise DomainError("over Q the set must contain the archimedean place")
    return PlaceSet(field, tuple(sorted(places, key=Place.sort_key)))


def parse_place_set(field: BaseField, s: str) -> PlaceSet:
    """Parse a ';'-separated list of place tokens."""
    return place_set(field, [parse_place(field, tok) for tok in s.split(";") if tok.strip()])


# ---------------------------------------------------------------------------
# valuations


def valuation(x: GlobalFieldElement, place: Place) -> int:
    """Normalized valuation of a nonzero element at a non-archimedean place."""
    if x.is_zero:
        raise DomainError("valuation of zero undefined; callers test for zero first")
    if place.kind == KIND_ARCH:
        raise UnsupportedPlaceError("no normalized valuation at the archimedean place")
    if place.field != x.field:
        raise DomainError("place of a different base field")
    if place.kind == KIND_PRIME:
        return int_ord(x.num, place.payload) - int_ord(x.den, place.payload)
    p = x.field.char
    if place.kind == KIND_INF:
        return fppoly.pdeg(x.den) - fppoly.pdeg(x.num)
    return poly_ord(x.num, p, place.payload) - poly_ord(x.den, p, place.payload)


def residue_field_size(place: Place) -> int:
    """|k(p)| at a non-archimedean place."""
    return place.residue_size()


def support(x: GlobalFieldElement, budget: int = 10**6) -> dict[Place, int]:
    """All places with nonzero valuation, mapped to that valuation.

    Over Q the archimedean place is not included (no normalized valuation).
    """
    if x.is_zero:
        raise DomainError("support of zero undefined")
    out: dict[Place, int] = {}
    if x.field.is_rationals:
        for q, e in factor_int(x.num, budget).items():
            if q > 1:
                out[prime_place(q)] = e
        for q, e in factor_int(x.den, budget).items():
            if q > 1:
                out[prime_place(q)] = out.get(prime_place(q), 0) - e
        return {pl: e for pl, e in out.items() if e}
    p = x.field.char
    # factor_poly only emits irreducibles, so skip re-validation
    for pi, e in fppoly.factor_poly(p, x.num).items():
        out[Place(x.field, KIND_IRREDUCIBLE, pi)] = e
    for pi, e in fppoly.factor_poly(p, x.den).items():
        pl = Place(x.field, KIND_IRREDUCIBLE, pi)
        out[pl] = out.get(pl, 0) - e
    v_inf = fppoly.pdeg(x.den) - fppoly.pdeg(x.num)
    if v_inf:
        out[infinite_place(x.field)] = v_inf
    return {pl: e for pl, e in out.items() if e}


def is_s_integer(x: GlobalFieldElement, S: PlaceSet) -> bool:
    """v(x) >= 0 at every place outside S (zero is an S-integer)."""
    if x.is_zero:
        return True
    return all(e >= 0 for pl, e in support(x).items() if pl not in S)


def is_s_unit(x: GlobalFieldElement, S: PlaceSet) -> bool:
    """v(x) == 0 at every place outside S; undefined for zero."""
    if x.is_zero:
        raise DomainError("zero is not an S-unit")
    return all(pl in S for pl in support(x))


# ---------------------------------------------------------------------------
# irreducible enumeration and the small-prime search

count_irreducibles = fppoly.count_irreducibles


def enumerate_monic_irreducibles(
    field_or_p, max_degree: int, budget: int = 10**7
) -> list[FpPoly]:
    """Monic irreducibles of degree <= max_degree in (degree, code) order."""
    p = field_or_p.char if isinstance(field_or_p, BaseField) else field_or_p
    return [
        FpPoly(p, cs)
        for cs in fppoly.enumerate_monic_irreducibles(p, max_degree, budget)
    ]


def iter_places_by_size(field: BaseField):
    """Non-archimedean places in the deterministic scan order.

    Q: primes ascending.  F_p(t): infinity first (smallest residue field,
    fixed tie-break), then monic irreducibles by (degree, code).
    """
    if field.is_rationals:
        for q in iter_primes():
            yield prime_place(q)
        return
    yield infinite_place(field)
    for cs in fppoly.iter_monic_irreducibles(field.char):
        yield Place(field, KIND_IRREDUCIBLE, cs)


def find_small_prime_outside(S: PlaceSet) -> Place:
    """The first place outside S in the scan order, minimizing |k(p)|."""
    for place in iter_places_by_size(S.field):
        if place not in S:
            return place
    raise AssertionError("unreachable: infinitely many places")
