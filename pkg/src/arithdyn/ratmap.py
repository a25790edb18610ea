"""Rational self-maps of P^1 as coprime homogeneous pairs.

A map is a pair (F, G) of homogeneous forms of the same degree d over the
integral ring (Z or F_p[t]), stored by ascending X-power: coefficient i
multiplies X^i Y^(d-i).  The pair is primitive (coefficient content 1)
with a fixed sign/monic convention, which makes map equality structural
and makes "places dividing the resultant" the exact set of bad-reduction
places: any other integral model is a common scalar multiple, which can
only raise the valuation of the resultant.

At the infinite place of F_p(t) the primitive model need not be integral;
the integral model there is t^-M * (F, G) with M the maximal coefficient
degree, so the map has good reduction at infinity exactly when
deg_t Res(F, G) = 2*d*M.

The resultant is the determinant of the 2d x 2d Sylvester matrix,
computed fraction-free (Bareiss) so every intermediate value stays in the
integral ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from . import fppoly
from .errors import (
    DegenerateMapError,
    DomainError,
    PreconditionError,
)
from .fields import (
    KIND_ARCH,
    KIND_INF,
    KIND_IRREDUCIBLE,
    KIND_PRIME,
    BaseField,
    GlobalFieldElement,
    Place,
    factor_int,
    valuation,
)
from .fppoly import Coeffs
from .projective import ProjPoint, ReducedPoint, point_from_raw
from .residue import ResidueField, residue_field

# ---------------------------------------------------------------------------
# integral-ring adapters for fraction-free elimination


class _IntRing:
    zero = 0
    one = 1

    @staticmethod
    def is_zero(a):
        return a == 0

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def exact_div(a, b):
        q, r = divmod(a, b)
        assert r == 0
        return q


class _PolyRing:
    def __init__(self, p: int):
        self.p = p
        self.zero = fppoly.ZERO
        self.one = fppoly.ONE

    @staticmethod
    def is_zero(a):
        return not a

    def mul(self, a, b):
        return fppoly.pmul(self.p, a, b)

    def sub(self, a, b):
        return fppoly.psub(self.p, a, b)

    def neg(self, a):
        return fppoly.pneg(self.p, a)

    def exact_div(self, a, b):
        return fppoly.pexactdiv(self.p, a, b)


def _ring_for(field: BaseField):
    return _IntRing() if field.is_rationals else _PolyRing(field.char)


def _bareiss_det(rows, ring):
    """Fraction-free determinant; all divisions are exact in the ring."""
    n = len(rows)
    m = [list(r) for r in rows]
    sign = 1
    prev = ring.one
    for k in range(n - 1):
        if ring.is_zero(m[k][k]):
            for i in range(k + 1, n):
                if not ring.is_zero(m[i][k]):
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return ring.zero
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = ring.sub(
                    ring.mul(m[i][j], m[k][k]), ring.mul(m[i][k], m[k][j])
                )
                m[i][j] = ring.exact_div(num, prev)
            m[i][k] = ring.zero
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return ring.neg(det) if sign < 0 else det


def sylvester_resultant(field: BaseField, fco: tuple, gco: tuple):
    """Resultant of two degree-d coefficient tuples (ascending X-power)."""
    d = len(fco) - 1
    ring = _ring_for(field)
    frow = list(reversed(fco))  # univariate-in-X descending coefficients
    grow = list(reversed(gco))
    n = 2 * d
    rows = []
    for i in range(d):
        rows.append([ring.zero] * i + frow + [ring.zero] * (n - d - 1 - i))
    for i in range(d):
        rows.append([ring.zero] * i + grow + [ring.zero] * (n - d - 1 - i))
    return _bareiss_det(rows, ring)


# ---------------------------------------------------------------------------
# the map type


@dataclass(frozen=True, slots=True)
class RationalMap:
    """Primitive coprime homogeneous pair (F, G) of equal degree."""

    field: BaseField
    fco: tuple
    gco: tuple

    @property
    def degree(self) -> int:
        return len(self.fco) - 1

    def apply(self, point: ProjPoint) -> ProjPoint:
        return apply_map(self, point)

    def affine_str(self) -> str:
        num = _form_affine_str(self.field, self.fco)
        den = _form_affine_str(self.field, self.gco)
        if den == "1":
            return num
        return f"({num})/({den})"

    def coefficient_arrays(self) -> dict:
        """JSON-ready coefficient arrays, ascending X-power."""
        if self.field.is_rationals:
            return {
                "F": [str(c) for c in self.fco],
                "G": [str(c) for c in self.gco],
                "degree": self.degree,
            }
        return {
            "F": [fppoly.coeff_string(c) for c in self.fco],
            "G": [fppoly.coeff_string(c) for c in self.gco],
            "degree": self.degree,
        }

    def __str__(self) -> str:
        return self.affine_str()


def _form_affine_str(field: BaseField, co: tuple, var: str = "z") -> str:
    terms = []
    for i in range(len(co) - 1, -1, -1):
        c = co[i]
        if c == 0 or c == ():
            continue
        if field.is_rationals:
            cs = str(c)
            unit = cs == "1"
            negunit = cs == "-1"
        else:
            cs = fppoly.poly_str(c)
            unit = cs == "1"
            negunit = False
            if i > 0 and fppoly.pdeg(c) > 0:
                cs = f"({cs})"
        if i == 0:
            term = cs if not negunit else "-1"
        else:
            power = var if i == 1 else f"{var}^{i}"
            if unit:
                term = power
            elif negunit:
                term = f"-{power}"
            else:
                term = f"{cs}*{power}"
        terms.append(term)
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += t if t.startswith("-") else "+" + t
    return out


def make_map(field: BaseField, fco, gco) -> RationalMap:
    """Canonicalize and validate a homogeneous pair.

    Raises DegenerateMapError when the forms share a projective root
    (vanishing resultant) and DomainError on shape problems.
    """
    fco = tuple(fco)
    gco = tuple(gco)
    if len(fco) != len(gco) or len(fco) < 2:
        raise DomainError("forms must have equal degree >= 1")
    if field.is_rationals:
        fco = tuple(int(c) for c in fco)
        gco = tuple(int(c) for c in gco)
        content = 0
        for c in fco + gco:
            content = gcd(content, abs(c))
        if content == 0:
            raise DegenerateMapError("both forms are zero")
        if content > 1:
            fco = tuple(c // content for c in fco)
            gco = tuple(c // content for c in gco)
        # sign convention: highest-power-first leading coefficient positive
        first = next(c for c in fco[::-1] + gco[::-1] if c != 0)
        if first < 0:
            fco = tuple(-c for c in fco)
            gco = tuple(-c for c in gco)
    else:
        p = field.char

        def coerce(c) -> Coeffs:
            if isinstance(c, fppoly.FpPoly):
                return c.coeffs
            if isinstance(c, (tuple, list)):
                return fppoly.ptrim([v % p for v in c])
            return fppoly.pconst(p, c)

        fco = tuple(coerce(c) for c in fco)
        gco = tuple(coerce(c) for c in gco)
        content = fppoly.ZERO
        for c in fco + gco:
            content = fppoly.pgcd(p, content, c)
        if not content:
            raise DegenerateMapError("both forms are zero")
        if content != fppoly.ONE:
            fco = tuple(fppoly.pexactdiv(p, c, content) for c in fco)
            gco = tuple(fppoly.pexactdiv(p, c, content) for c in gco)
        first = next(c for c in fco[::-1] + gco[::-1] if c)
        lead = fppoly.plead(first)
        if lead != 1:
            inv = pow(lead, p - 2, p)
            fco = tuple(fppoly.pscale(p, c, inv) for c in fco)
            gco = tuple(fppoly.pscale(p, c, inv) for c in gco)
    phi = RationalMap(field, fco, gco)
    res = resultant_raw(phi)
    if res == 0 or res == ():
        raise DegenerateMapError("forms share a root: resultant vanishes")
    return phi


@lru_cache(maxsize=4096)
def resultant_raw(phi: RationalMap):
    """Res(F, G) in the integral ring (int or coefficient tuple)."""
    return sylvester_resultant(phi.field, phi.fco, phi.gco)


def resultant(phi: RationalMap) -> GlobalFieldElement:
    """Res(F, G) as an integral element of the base field."""
    return phi.field.element(resultant_raw(phi))


def max_coeff_degree(phi: RationalMap) -> int:
    """Largest t-degree among coefficients (function fields only)."""
    return max(fppoly.pdeg(c) for c in phi.fco + phi.gco)


@lru_cache(maxsize=4096)
def bad_places(phi: RationalMap, budget: int = 10**6) -> frozenset[Place]:
    """Non-archimedean places where no model keeps a unit resultant."""
    res = resultant_raw(phi)
    field = phi.field
    out: set[Place] = set()
    if field.is_rationals:
        for q in factor_int(res, budget):
            out.add(Place(field, KIND_PRIME, q))
        return frozenset(out)
    p = field.char
    if fppoly.pdeg(res) > 0:
        for pi in fppoly.factor_poly(p, res):
            out.add(Place(field, KIND_IRREDUCIBLE, pi))
    # at infinity the integral model is t^-M (F, G); its resultant has
    # v_inf = 2*d*M - deg Res, minimal over all integral models
    if fppoly.pdeg(res) < 2 * phi.degree * max_coeff_degree(phi):
        out.add(Place(field, KIND_INF, None))
    return frozenset(out)


def has_good_reduction(phi: RationalMap, place: Place) -> bool:
    if place.kind == KIND_ARCH:
        raise DomainError("good reduction is defined at non-archimedean places")
    return place not in bad_places(phi)


# ---------------------------------------------------------------------------
# evaluation


def _eval_form_q(co: tuple, x: int, y: int) -> int:
    d = len(co) - 1
    acc = 0
    xp = 1
    yp = [1] * (d + 1)
    for i in range(1, d + 1):
        yp[i] = yp[i - 1] * y
    for i, c in enumerate(co):
        if c:
            acc += c * xp * yp[d - i]
        xp *= x
    return acc


def _eval_form_ff(p: int, co: tuple, x: Coeffs, y: Coeffs) -> Coeffs:
    d = len(co) - 1
    acc = fppoly.ZERO
    xp = fppoly.ONE
    yp = [fppoly.ONE] * (d + 1)
    for i in range(1, d + 1):
        yp[i] = fppoly.pmul(p, yp[i - 1], y)
    for i, c in enumerate(co):
        if c:
            acc = fppoly.padd(p, acc, fppoly.pmul(p, fppoly.pmul(p, c, xp), yp[d - i]))
        xp = fppoly.pmul(p, xp, x)
    return acc


def apply_map(phi: RationalMap, point: ProjPoint) -> ProjPoint:
    """phi(P), renormalized to canonical coprime coordinates."""
    if phi.field != point.field:
        raise DomainError("map and point over different base fields")
    if phi.field.is_rationals:
        return point_from_raw(
            phi.field,
            _eval_form_q(phi.fco, point.x, point.y),
            _eval_form_q(phi.gco, point.x, point.y),
        )
    p = phi.field.char
    return point_from_raw(
        phi.field,
        _eval_form_ff(p, phi.fco, point.x, point.y),
        _eval_form_ff(p, phi.gco, point.x, point.y),
    )


def iterate_map(phi: RationalMap, point: ProjPoint, n: int) -> ProjPoint:
    for _ in range(n):
        point = apply_map(phi, point)
    return point


# ---------------------------------------------------------------------------
# reduction of maps


@dataclass(frozen=True, slots=True)
class ReducedMap:
    """The mod-p map over the residue field, same degree as the original."""

    rfield: ResidueField
    fco: tuple[int, ...]
    gco: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.fco) - 1

    def apply(self, point: ReducedPoint) -> ReducedPoint:
        rf = self.rfield
        if point.rfield != rf:
            raise DomainError("point of a different residue field")
        x, y = point.x, point.y
        d = self.degree
        xp = [1] * (d + 1)
        yp = [1] * (d + 1)
        for i in range(1, d + 1):
            xp[i] = rf.mul(xp[i - 1], x)
            yp[i] = rf.mul(yp[i - 1], y)
        fx = 0
        gx = 0
        for i in range(d + 1):
            fx = rf.add(fx, rf.mul(self.fco[i], rf.mul(xp[i], yp[d - i])))
            gx = rf.add(gx, rf.mul(self.gco[i], rf.mul(xp[i], yp[d - i])))
        return ReducedPoint.make(rf, fx, gx)


def reduce_map(phi: RationalMap, place: Place) -> ReducedMap:
    """Reduce the coefficients at a good-reduction place."""
    if place.kind == KIND_ARCH:
        raise DomainError("cannot reduce at the archimedean place")
    if place in bad_places(phi):
        raise PreconditionError(f"{phi} has bad reduction at {place}")
    rf = residue_field(place)
    field = phi.field
    if place.kind == KIND_PRIME:
        q = place.payload
        return ReducedMap(
            rf,
            tuple(c % q for c in phi.fco),
            tuple(c % q for c in phi.gco),
        )
    p = field.char
    if place.kind == KIND_INF:
        m = max_coeff_degree(phi)

        def red_inf(c: Coeffs) -> int:
            return c[m] if fppoly.pdeg(c) == m else 0

        return ReducedMap(
            rf, tuple(red_inf(c) for c in phi.fco), tuple(red_inf(c) for c in phi.gco)
        )
    pi = place.payload
    return ReducedMap(
        rf,
        tuple(fppoly.pcode(p, fppoly.pmod(p, c, pi)) for c in phi.fco),
        tuple(fppoly.pcode(p, fppoly.pmod(p, c, pi)) for c in phi.gco),
    )


# ---------------------------------------------------------------------------
# multipliers

_INF_MARK = object()  # chart marker for the point at infinity


class _ExactOps:
    """Field operations on GlobalFieldElement for the multiplier kernel."""

    def __init__(self, field: BaseField):
        self.field = field
        self.zero = field.zero()
        self.one = field.one()

    def from_int(self, n: int) -> GlobalFieldElement:
        return self.field.element(n)

    @staticmethod
    def is_zero(a) -> bool:
        return a.is_zero

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def div(a, b):
        return a / b


class _ResidueOps:
    """Same protocol over int codes of a residue field."""

    def __init__(self, rf: ResidueField):
        self.rf = rf
        self.zero = 0
        self.one = 1

    def from_int(self, n: int) -> int:
        return self.rf.from_int(n)

    @staticmethod
    def is_zero(a) -> bool:
        return a == 0

    def add(self, a, b):
        return self.rf.add(a, b)

    def sub(self, a, b):
        return self.rf.sub(a, b)

    def mul(self, a, b):
        return self.rf.mul(a, b)

    def div(self, a, b):
        return self.rf.div(a, b)


def _horner(ops, co: list, z):
    acc = ops.zero
    for c in reversed(co):
        acc = ops.add(ops.mul(acc, z), c)
    return acc


def _deriv(ops, co: list) -> list:
    return [ops.mul(co[i], ops.from_int(i)) for i in range(1, len(co))]


def _rational_derivative(ops, num: list, den: list, z):
    """d/dz (num/den) at z; caller guarantees den(z) != 0."""
    nz = _horner(ops, num, z)
    dz = _horner(ops, den, z)
    npz = _horner(ops, _deriv(ops, num), z)
    dpz = _horner(ops, _deriv(ops, den), z)
    return ops.div(ops.sub(ops.mul(npz, dz), ops.mul(nz, dpz)), ops.mul(dz, dz))


def cycle_multiplier(ops, fco: list, gco: list, cycle: list):
    """Derivative of the n-th iterate along a cycle, by the chain rule.

    `cycle` lists the affine values of the cycle points with _INF_MARK for
    the point at infinity; fco/gco are the affine numerator/denominator
    coefficients (ascending).  Chart changes w = 1/z are applied wherever
    a step enters or leaves infinity, and the telescoped product is the
    chart-independent multiplier of the cycle.
    """
    n = len(cycle)
    frev = list(reversed(fco))
    grev = list(reversed(gco))
    result = ops.one
    for i in range(n):
        z = cycle[i]
        z_next = cycle[(i + 1) % n]
        at_inf = z is _INF_MARK
        next_inf = z_next is _INF_MARK
        if not at_inf and not next_inf:
            factor = _rational_derivative(ops, fco, gco, z)
        elif not at_inf and next_inf:
            factor = _rational_derivative(ops, gco, fco, z)
        elif at_inf and not next_inf:
            # chart w = 1/z; phi(1/w) = frev(w)/grev(w), evaluated at w = 0
            factor = _rational_derivative(ops, frev, grev, ops.zero)
        else:
            factor = _rational_derivative(ops, grev, frev, ops.zero)
        result = ops.mul(result, factor)
        if ops.is_zero(result):
            return result
    return result


@dataclass(frozen=True, slots=True)
class MultiplierValue:
    value: GlobalFieldElement
    period: int
    point: ProjPoint


def affine_coefficients(phi: RationalMap) -> tuple[list, list]:
    """F(z, 1) and G(z, 1) as ascending lists of field elements."""
    field = phi.field
    return (
        [field.element(c) for c in phi.fco],
        [field.element(c) for c in phi.gco],
    )


def multiplier(phi: RationalMap, point: ProjPoint, n: int) -> MultiplierValue:
    """The multiplier of a point with phi^n(point) = point.

    Checked by iteration; raises PreconditionError when the point is not
    n-periodic.
    """
    if n < 1:
        raise PreconditionError("period must be >= 1")
    cycle_pts = [point]
    current = point
    for _ in range(n):
        current = apply_map(phi, current)
        cycle_pts.append(current)
    if cycle_pts[-1] != point:
        raise PreconditionError(f"{point} is not {n}-periodic under {phi}")
    ops = _ExactOps(phi.field)
    fco, gco = affine_coefficients(phi)
    chain = [
        _INF_MARK if q.is_infinity else q.affine() for q in cycle_pts[:-1]
    ]
    value = cycle_multiplier(ops, fco, gco, chain)
    return MultiplierValue(value, n, point)


class Classification:
    ATTRACTING = "attracting"
    INDIFFERENT = "indifferent"
    REPELLING = "repelling"


def classify_periodic_point(
    phi: RationalMap, point: ProjPoint, n: int, place: Place
) -> str:
    """Attracting / indifferent / repelling from the multiplier valuation.

    A vanishing multiplier counts as attracting (valuation +infinity).
    The place must be one of good reduction for phi.
    """
    if place.kind == KIND_ARCH:
        raise DomainError("classification needs a non-archimedean place")
    if place in bad_places(phi):
        raise PreconditionError(f"bad reduction at {place}")
    lam = multiplier(phi, point, n).value
    if lam.is_zero:
        return Classification.ATTRACTING
    v = valuation(lam, place)
    if v > 0:
        return Classification.ATTRACTING
    if v == 0:
        return Classification.INDIFFERENT
    return Classification.REPELLING


# ---------------------------------------------------------------------------
# data for the escape criterion used by orbit iteration


@dataclass(frozen=True, slots=True)
class EscapeProfile:
    """Rigorous divergence data for maps [F : u*Y^d], d >= 2, with unit u
    and unit leading coefficient of F.

    Over Q: a non-unit denominator grows strictly forever, and an integer
    point z with |z| >= radius satisfies |phi(z)| >= 2|z|, so either way
    the orbit is provably infinite.  Over F_p(t) the same holds with
    degrees in place of absolute values.
    """

    radius: int  # escape radius for |z| (Q) or deg z (F_p(t))


def escape_profile(phi: RationalMap) -> EscapeProfile | None:
    """The divergence profile, or None when the criterion does not apply."""
    d = phi.degree
    if d < 2:
        return None
    field = phi.field
    if field.is_rationals:
        if any(phi.gco[i] != 0 for i in range(1, d + 1)):
            return None
        if abs(phi.gco[0]) != 1 or abs(phi.fco[d]) != 1:
            return None
        s = sum(abs(phi.fco[i]) for i in range(d))
        return EscapeProfile(radius=s + 2)
    if any(phi.gco[i] for i in range(1, d + 1)):
        return None
    if fppoly.pdeg(phi.gco[0]) != 0 or fppoly.pdeg(phi.fco[d]) != 0:
        return None
    t = max((fppoly.pdeg(phi.fco[i]) for i in range(d) if phi.fco[i]), default=0)
    return EscapeProfile(radius=max(t + 1, 1))
