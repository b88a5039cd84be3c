"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Elements are rational coefficient vectors on the power basis
1, zeta, ..., zeta^(phi(n)-1), reduced modulo the n-th cyclotomic
polynomial.  The Galois group is (Z/n)* acting by zeta -> zeta^a, and
complex conjugation is a = -1.  Conductors n = 2m with m odd are rejected
(same field as Q(zeta_m)), so field labels are unique.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Optional, Sequence

from .arith import BallComplex, BallReal


# ---------------------------------------------------------------------------
# Integer-arithmetic helpers

def euler_phi(n: int) -> int:
    result = n
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            while m % d == 0:
                m //= d
            result -= result // d
        d += 1
    if m > 1:
        result -= result // m
    return result


def moebius(n: int) -> int:
    if n == 1:
        return 1
    m = n
    k = 0
    d = 2
    while d * d <= m:
        if m % d == 0:
            m //= d
            if m % d == 0:
                return 0
            k += 1
        d += 1
    if m > 1:
        k += 1
    return (-1) ** k


def ramanujan_sum(n: int, k: int) -> int:
    """Sum of zeta_n^(a k) over a in (Z/n)*; exact integer."""
    g = gcd(k % n, n)
    q = n // g
    mu = moebius(q)
    if mu == 0:
        return 0
    return mu * (euler_phi(n) // euler_phi(q))


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, little-endian, computed by exact division."""
    if n == 1:
        return (-1, 1)
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly = _int_poly_exact_div(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


def _int_poly_exact_div(a: list[int], b: list[int]) -> list[int]:
    """Exact division of integer polynomials (b monic up to sign)."""
    a = a[:]
    q = [0] * (len(a) - len(b) + 1)
    lead = b[-1]
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1]
        assert c % lead == 0
        c //= lead
        q[i] = c
        if c:
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    assert all(x == 0 for x in a[: len(b) - 1])
    return q


# ---------------------------------------------------------------------------
# Field and automorphisms

class CycloField:
    """The field Q(zeta_n) with a fixed embedding zeta -> exp(2 pi i / n).

    ``places`` lists one residue a_v per infinite place: the phi(n)/2
    smallest positive a coprime to n, one from each pair {a, n - a}.  The
    place with a_v = 1 corresponds to the fixed embedding itself.
    """

    def __init__(self, n: int):
        if n < 3:
            raise ValueError("conductor must be >= 3")
        if n % 4 == 2:
            raise ValueError(
                "conductor %d = 2 mod 4 rejected: same field as conductor %d" % (n, n // 2)
            )
        self.n = n
        self.degree = euler_phi(n)
        self.poly = cyclotomic_polynomial(n)
        self.units = tuple(a for a in range(1, n) if gcd(a, n) == 1)
        self.places = tuple(a for a in range(1, (n + 1) // 2) if gcd(a, n) == 1)
        assert len(self.places) * 2 == self.degree

    def __repr__(self) -> str:
        return "CycloField(%d)" % self.n

    def __eq__(self, other) -> bool:
        return isinstance(other, CycloField) and self.n == other.n

    def __hash__(self):
        return hash(("CycloField", self.n))

    # -- element constructors

    def elt(self, coeffs: Sequence) -> "CycloElt":
        c = [Fraction(x) for x in coeffs]
        if len(c) > self.degree:
            c = _q_poly_rem(c, self.poly)
        c += [Fraction(0)] * (self.degree - len(c))
        return CycloElt(self, tuple(c))

    def zeta(self, k: int = 1) -> "CycloElt":
        k %= self.n
        mono = [Fraction(0)] * (k + 1)
        mono[k] = Fraction(1)
        return self.elt(mono)

    def one(self) -> "CycloElt":
        return self.elt([1])

    def zero(self) -> "CycloElt":
        return self.elt([])

    def from_rational(self, q) -> "CycloElt":
        return self.elt([Fraction(q)])

    def aut(self, a: int) -> "GaloisAut":
        return GaloisAut(self.n, a)

    def conjugation(self) -> "GaloisAut":
        return GaloisAut(self.n, self.n - 1)

    def torsion_order(self) -> int:
        """Order of the group of roots of unity mu(Q(zeta_n))."""
        return self.n if self.n % 2 == 0 else 2 * self.n


def _q_poly_rem(a: list[Fraction], mod: Sequence[int]) -> list[Fraction]:
    deg = len(mod) - 1
    r = a[:]
    while len(r) > deg:
        lead = r.pop()
        if lead:
            shift = len(r) - deg
            for i in range(deg):
                r[shift + i] -= lead * mod[i]
    return r


@dataclass(frozen=True)
class GaloisAut:
    """The automorphism zeta -> zeta^a of Q(zeta_n), for a in (Z/n)*."""

    n: int
    a: int

    def __post_init__(self):
        object.__setattr__(self, "a", self.a % self.n)
        if gcd(self.a, self.n) != 1:
            raise ValueError("automorphism index %d not coprime to %d" % (self.a, self.n))

    def __mul__(self, other: "GaloisAut") -> "GaloisAut":
        if self.n != other.n:
            raise ValueError("automorphisms of different fields")
        return GaloisAut(self.n, self.a * other.a % self.n)

    def inverse(self) -> "GaloisAut":
        return GaloisAut(self.n, pow(self.a, -1, self.n))

    def is_conjugation(self) -> bool:
        return self.a == self.n - 1

    def __repr__(self) -> str:
        return "GaloisAut(zeta -> zeta^%d mod %d)" % (self.a, self.n)


# ---------------------------------------------------------------------------
# Elements

class CycloElt:
    """Element of Q(zeta_n) as an exact coefficient vector of length phi(n)."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: CycloField, coeffs: tuple[Fraction, ...]):
        self.field = field
        self.coeffs = coeffs

    # -- ring operations

    def _check(self, other: "CycloElt"):
        if self.field != other.field:
            raise ValueError("elements of different fields")

    def __add__(self, other):
        other = self._coerce(other)
        self._check(other)
        return CycloElt(self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        self._check(other)
        return CycloElt(self.field, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return self._coerce(other).__sub__(self)

    def __mul__(self, other):
        other = self._coerce(other)
        self._check(other)
        n = self.field.degree
        out = [Fraction(0)] * (2 * n - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] += a * b
        return self.field.elt(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __neg__(self):
        return CycloElt(self.field, tuple(-a for a in self.coeffs))

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.field.from_rational(other)
        if not isinstance(other, CycloElt):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field.n, self.coeffs))

    def _coerce(self, other) -> "CycloElt":
        if isinstance(other, CycloElt):
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        raise TypeError("cannot combine CycloElt with %r" % type(other))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __pow__(self, e: int) -> "CycloElt":
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "CycloElt":
        """Inverse modulo Phi_n via the extended Euclidean algorithm in Q[x]."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        r0 = [Fraction(c) for c in self.field.poly]
        r1 = list(self.coeffs)
        _q_trim(r1)
        s0: list[Fraction] = []
        s1: list[Fraction] = [Fraction(1)]
        while True:
            q, r = _q_poly_divmod(r0, r1)
            if not r:
                break
            r0, r1 = r1, r
            s0, s1 = s1, _q_poly_sub(s0, _q_poly_mul(q, s1))
        # r1 is a nonzero constant times gcd = constant (Phi_n irreducible)
        if len(r1) != 1:
            raise ZeroDivisionError("element not invertible modulo Phi_n")
        scale = r1[0]
        inv = [c / scale for c in s1]
        return self.field.elt(inv)

    # -- Galois action

    def apply(self, aut: GaloisAut) -> "CycloElt":
        if aut.n != self.field.n:
            raise ValueError("automorphism of a different field")
        n = self.field.n
        out = [Fraction(0)] * n
        for i, c in enumerate(self.coeffs):
            if c:
                out[(aut.a * i) % n] += c
        return self.field.elt(out)

    def conj(self) -> "CycloElt":
        return self.apply(self.field.conjugation())

    # -- rational-ness and integrality

    def as_rational(self) -> Fraction:
        if any(c != 0 for c in self.coeffs[1:]):
            raise ValueError("element is not rational")
        return self.coeffs[0]

    def denominator(self) -> int:
        """lcm of coefficient denominators; 1 iff integral (Z[zeta] is maximal)."""
        d = 1
        for c in self.coeffs:
            d = d * c.denominator // gcd(d, c.denominator)
        return d

    def to_json(self) -> str:
        return json.dumps(
            {"n": self.field.n, "coeffs": [str(c) for c in self.coeffs]}
        )

    @staticmethod
    def from_json(s: str) -> "CycloElt":
        data = json.loads(s)
        field = CycloField(data["n"])
        return field.elt([Fraction(c) for c in data["coeffs"]])

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                if i == 0:
                    terms.append(str(c))
                elif i == 1:
                    terms.append("%s*z" % c)
                else:
                    terms.append("%s*z^%d" % (c, i))
        return "CycloElt(n=%d: %s)" % (self.field.n, " + ".join(terms) or "0")


def _q_trim(a: list[Fraction]) -> list[Fraction]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _q_poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return _q_trim(out)


def _q_poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = list(a) + [Fraction(0)] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return _q_trim(out)


def _q_poly_divmod(a: list[Fraction], b: list[Fraction]):
    if not b:
        raise ZeroDivisionError
    r = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(r) >= len(b) and r:
        coef = r[-1] / b[-1]
        deg = len(r) - len(b)
        q[deg] = coef
        for i, cb in enumerate(b):
            r[deg + i] -= coef * cb
        _q_trim(r)
    return _q_trim(q), r


# ---------------------------------------------------------------------------
# Module-level operations

def apply_aut(aut: GaloisAut, x: CycloElt) -> CycloElt:
    return x.apply(aut)


def norm(x: CycloElt) -> Fraction:
    """Product of all phi(n) conjugates of x, computed exactly."""
    prod = x.field.one()
    for a in x.field.units:
        prod = prod * x.apply(x.field.aut(a))
    return prod.as_rational()


def trace(x: CycloElt) -> Fraction:
    return sum(
        (c * ramanujan_sum(x.field.n, i) for i, c in enumerate(x.coeffs)),
        Fraction(0),
    )


def embed(x: CycloElt, place: int, precision: int = 64) -> BallComplex:
    """Certified enclosure of sigma_v(x) where zeta -> exp(2 pi i a_v / n)."""
    if precision < 16:
        raise ValueError("precision must be >= 16 bits")
    n = x.field.n
    wp = precision + 16
    two_pi = BallReal.pi(wp) * 2
    re = BallReal.zero(wp)
    im = BallReal.zero(wp)
    for i, c in enumerate(x.coeffs):
        if not c:
            continue
        k = (place * i) % n
        if k == 0:
            re = re + BallReal.from_fraction(c, wp)
            continue
        theta = two_pi * Fraction(k, n)
        re = re + theta.cos() * Fraction(c)
        im = im + theta.sin() * Fraction(c)
    return BallComplex(re, im)


def embed_all(x: CycloElt, precision: int = 64) -> list[BallComplex]:
    return [embed(x, a, precision) for a in x.field.places]


def is_root_of_unity(x: CycloElt) -> Optional[int]:
    """Order of x in mu(Q(zeta_n)), or None when x is not a root of unity.

    Decided exactly: mu(k) has order w = lcm(2, n), so x is torsion iff
    x^w = 1.  The cheap necessary condition x x^c = 1 is tested first to
    keep coefficient growth of the powering bounded.
    """
    if x.is_zero():
        raise ZeroDivisionError("zero is not a root of unity candidate")
    if x * x.conj() != x.field.one():
        return None
    w = x.field.torsion_order()
    if (x ** w) != x.field.one():
        return None
    order = w
    for d in sorted(_divisors(w)):
        if (x ** d) == x.field.one():
            order = d
            break
    return order


def _divisors(n: int) -> list[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return out
