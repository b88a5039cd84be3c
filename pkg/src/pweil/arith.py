"""Exact rationals, certified ball arithmetic and truncated Galois-ring arithmetic.

Three layers, used by every other module:

* exact scalars are ``fractions.Fraction`` (arbitrary precision, always reduced);
* ``BallReal`` / ``BallComplex`` wrap mpmath's directed-rounding interval
  kernels, so every operation returns an enclosure of the exact result;
* ``GaloisRing`` / ``PadicElt`` model the unramified local ring
  Z_p[t]/(h(t)) truncated at precision p^K.

All values are immutable; precision is carried per value, never global.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from mpmath.libmp import libmpi
from mpmath.libmp import (
    from_int as _mpf_from_int,
    from_rational as _mpf_from_rational,
    fzero as _fzero,
    round_ceiling as _r_ceil,
    round_floor as _r_floor,
)


class PrecisionTooLow(ArithmeticError):
    """The enclosure is too wide to decide the question; retry with more bits."""


class BranchCutHit(PrecisionTooLow):
    """An argument enclosure straddles the cut at angle pi and cannot pick a side."""


class NotAUnit(ArithmeticError):
    """p-adic operation applied to a non-unit (value divisible by p)."""


# ---------------------------------------------------------------------------
# mpf helpers

def _mpf_to_fraction(x) -> Fraction:
    sign, man, exp, bc = x
    if man == 0:
        if exp == 0:
            return Fraction(0)
        raise OverflowError("interval endpoint is infinite")
    man = int(man)
    if exp >= 0:
        val = Fraction(man << exp)
    else:
        val = Fraction(man, 1 << (-exp))
    return -val if sign else val


def _mpf_is_finite(x) -> bool:
    sign, man, exp, bc = x
    return man != 0 or exp == 0


def _fraction_to_interval(q: Fraction, prec: int):
    lo = _mpf_from_rational(q.numerator, q.denominator, prec, _r_floor)
    hi = _mpf_from_rational(q.numerator, q.denominator, prec, _r_ceil)
    return (lo, hi)


# ---------------------------------------------------------------------------
# BallReal

class BallReal:
    """A real number known to lie in a closed interval [lo, hi].

    Every arithmetic operation rounds outward, so the exact result of the
    corresponding exact-real operation is contained in the returned interval.
    ``prec`` is the working precision in bits for newly created endpoints.
    """

    __slots__ = ("_v", "prec")

    def __init__(self, interval, prec: int):
        self._v = interval
        self.prec = prec

    # -- constructors

    @staticmethod
    def from_int(n: int, prec: int = 53) -> "BallReal":
        m = _mpf_from_int(n)
        return BallReal((m, m), prec)

    @staticmethod
    def from_fraction(q, prec: int = 53) -> "BallReal":
        q = Fraction(q)
        return BallReal(_fraction_to_interval(q, prec), prec)

    @staticmethod
    def from_endpoints(lo, hi, prec: int = 53) -> "BallReal":
        lo = Fraction(lo)
        hi = Fraction(hi)
        if lo > hi:
            raise ValueError("lower endpoint above upper endpoint")
        a = _mpf_from_rational(lo.numerator, lo.denominator, prec, _r_floor)
        b = _mpf_from_rational(hi.numerator, hi.denominator, prec, _r_ceil)
        return BallReal((a, b), prec)

    @staticmethod
    def pi(prec: int) -> "BallReal":
        return BallReal(libmpi.mpi_pi(prec), prec)

    @staticmethod
    def zero(prec: int = 53) -> "BallReal":
        return BallReal((_fzero, _fzero), prec)

    # -- accessors

    @property
    def lower(self) -> Fraction:
        return _mpf_to_fraction(self._v[0])

    @property
    def upper(self) -> Fraction:
        return _mpf_to_fraction(self._v[1])

    @property
    def midpoint(self) -> Fraction:
        return (self.lower + self.upper) / 2

    @property
    def radius(self) -> Fraction:
        return (self.upper - self.lower) / 2

    def is_finite(self) -> bool:
        return _mpf_is_finite(self._v[0]) and _mpf_is_finite(self._v[1])

    def __repr__(self) -> str:
        return "BallReal(%s)" % libmpi.mpi_str(self._v, self.prec)

    def to_str(self, dps: int = 20) -> str:
        return libmpi.mpi_to_str(self._v, dps)

    # -- coercion

    def _coerce(self, other) -> "BallReal":
        if isinstance(other, BallReal):
            return other
        if isinstance(other, int):
            return BallReal.from_int(other, self.prec)
        if isinstance(other, Fraction):
            return BallReal.from_fraction(other, self.prec)
        return NotImplemented  # type: ignore[return-value]

    # -- arithmetic

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        prec = max(self.prec, other.prec)
        return BallReal(libmpi.mpi_add(self._v, other._v, prec), prec)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        prec = max(self.prec, other.prec)
        return BallReal(libmpi.mpi_sub(self._v, other._v, prec), prec)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other.__sub__(self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        prec = max(self.prec, other.prec)
        return BallReal(libmpi.mpi_mul(self._v, other._v, prec), prec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        prec = max(self.prec, other.prec)
        return BallReal(libmpi.mpi_div(self._v, other._v, prec), prec)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other.__truediv__(self)

    def __neg__(self):
        return BallReal(libmpi.mpi_neg(self._v, self.prec), self.prec)

    def __abs__(self):
        return BallReal(libmpi.mpi_abs(self._v, self.prec), self.prec)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        return BallReal(libmpi.mpi_pow_int(self._v, n, self.prec), self.prec)

    def sqrt(self) -> "BallReal":
        return BallReal(libmpi.mpi_sqrt(self._v, self.prec), self.prec)

    def exp(self) -> "BallReal":
        return BallReal(libmpi.mpi_exp(self._v, self.prec), self.prec)

    def log(self) -> "BallReal":
        return BallReal(libmpi.mpi_log(self._v, self.prec), self.prec)

    def atan(self) -> "BallReal":
        return BallReal(libmpi.mpi_atan(self._v, self.prec), self.prec)

    def cos(self) -> "BallReal":
        return BallReal(libmpi.mpi_cos(self._v, self.prec), self.prec)

    def sin(self) -> "BallReal":
        return BallReal(libmpi.mpi_sin(self._v, self.prec), self.prec)

    # -- predicates (certified; True only when provable from the enclosure)

    def contains_zero(self) -> bool:
        return self.lower <= 0 <= self.upper

    def excludes_zero(self) -> bool:
        return self.lower > 0 or self.upper < 0

    def is_positive(self) -> bool:
        return self.lower > 0

    def is_negative(self) -> bool:
        return self.upper < 0

    def is_exact_zero(self) -> bool:
        return self._v[0] == _fzero and self._v[1] == _fzero

    def contains(self, q) -> bool:
        q = Fraction(q)
        return self.lower <= q <= self.upper

    def overlaps(self, other: "BallReal") -> bool:
        return self.lower <= other.upper and other.lower <= self.upper

    def mignitude(self) -> Fraction:
        """Certified lower bound for the absolute value (0 if 0 is enclosed)."""
        if self.contains_zero():
            return Fraction(0)
        return min(abs(self.lower), abs(self.upper))

    def magnitude(self) -> Fraction:
        return max(abs(self.lower), abs(self.upper))


def ball_sum(items: Sequence[BallReal], prec: Optional[int] = None) -> BallReal:
    items = list(items)
    if not items:
        return BallReal.zero(prec or 53)
    acc = items[0]
    for x in items[1:]:
        acc = acc + x
    return acc


# ---------------------------------------------------------------------------
# BallComplex

@dataclass(frozen=True)
class BallComplex:
    """Componentwise enclosure of a complex number."""

    re: BallReal
    im: BallReal

    @staticmethod
    def from_fractions(re, im, prec: int = 53) -> "BallComplex":
        return BallComplex(BallReal.from_fraction(re, prec), BallReal.from_fraction(im, prec))

    def __add__(self, other: "BallComplex") -> "BallComplex":
        return BallComplex(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "BallComplex") -> "BallComplex":
        return BallComplex(self.re - other.re, self.im - other.im)

    def __mul__(self, other) -> "BallComplex":
        if isinstance(other, BallComplex):
            return BallComplex(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        return BallComplex(self.re * other, self.im * other)

    __rmul__ = __mul__

    def __truediv__(self, other: "BallComplex") -> "BallComplex":
        d = other.abs2()
        num = self * other.conj()
        return BallComplex(num.re / d, num.im / d)

    def __neg__(self) -> "BallComplex":
        return BallComplex(-self.re, -self.im)

    def conj(self) -> "BallComplex":
        return BallComplex(self.re, -self.im)

    def abs2(self) -> BallReal:
        return self.re * self.re + self.im * self.im

    def __abs__(self) -> BallReal:
        return self.abs2().sqrt()

    def to_str(self, dps: int = 20) -> str:
        return "(%s) + (%s)i" % (self.re.to_str(dps), self.im.to_str(dps))


def arg_principal(z: BallComplex) -> BallReal:
    """Principal-branch argument of ``z``, certified, with values in (-pi, pi].

    Raises BranchCutHit when the imaginary enclosure straddles 0 on the
    negative real side (the branch cannot be decided at this precision), and
    PrecisionTooLow when the enclosure of ``z`` contains 0.  A point exactly
    on the negative real axis (imaginary part identically zero) yields pi.
    """
    re, im = z.re, z.im
    prec = max(re.prec, im.prec)
    if re.is_positive():
        return (im / re).atan()
    if im.is_positive():
        return BallReal.pi(prec) / 2 - (re / im).atan()
    if im.is_negative():
        return -(BallReal.pi(prec) / 2) - (re / im).atan()
    if im.is_exact_zero():
        if re.is_negative():
            return BallReal.pi(prec)
        raise PrecisionTooLow("argument of an enclosure containing 0")
    if re.is_negative():
        raise BranchCutHit("imaginary enclosure straddles the cut at angle pi")
    raise PrecisionTooLow("argument of an enclosure containing 0")


# ---------------------------------------------------------------------------
# Certified determinant

def ball_det(rows: Sequence[Sequence[BallReal]]) -> BallReal:
    """Enclosure of the determinant of a square BallReal matrix.

    Gaussian elimination with mignitude pivoting; when no usable pivot
    remains the Hadamard bound supplies a (wide but valid) enclosure.
    """
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise ValueError("matrix must be square and nonempty")
    a = [list(r) for r in rows]
    prec = max(x.prec for r in a for x in r)
    if n == 1:
        return a[0][0]
    sign = 1
    pivots: list[BallReal] = []
    for k in range(n):
        best, best_mig = None, Fraction(0)
        for i in range(k, n):
            mig = a[i][k].mignitude()
            if mig > best_mig:
                best, best_mig = i, mig
        if best is None:
            return _hadamard_interval(rows, prec)
        if best != k:
            a[k], a[best] = a[best], a[k]
            sign = -sign
        piv = a[k][k]
        pivots.append(piv)
        for i in range(k + 1, n):
            factor = a[i][k] / piv
            for j in range(k + 1, n):
                a[i][j] = a[i][j] - factor * a[k][j]
    det = pivots[0]
    for piv in pivots[1:]:
        det = det * piv
    return det if sign == 1 else -det


def _hadamard_interval(rows, prec: int) -> BallReal:
    bound = Fraction(1)
    for r in rows:
        s = sum((x.magnitude() ** 2 for x in r), Fraction(0))
        # integer square root of ceil(s), rounded up: coarse but sound
        num = -(-s.numerator // s.denominator)
        root = _isqrt_ceil(num)
        bound *= root
    return BallReal.from_endpoints(-bound, bound, prec)


def _isqrt_ceil(n: int) -> int:
    import math

    r = math.isqrt(n)
    return r if r * r == n else r + 1


# ---------------------------------------------------------------------------
# Rational reconstruction

def rational_reconstruct(x: BallReal, den_bound: int) -> Optional[Fraction]:
    """The unique rational p/q with q <= den_bound inside the ball, if any.

    Requires radius(x) < 1/(2 den_bound^2); two distinct rationals with
    denominator <= den_bound differ by at least 1/den_bound^2, so at most one
    can lie in the interval and the closest-to-midpoint candidate is it.
    """
    if den_bound < 1:
        raise ValueError("den_bound must be >= 1")
    if not x.is_finite():
        raise PrecisionTooLow("interval has infinite endpoints")
    if x.radius >= Fraction(1, 2 * den_bound * den_bound):
        raise PrecisionTooLow(
            "radius %s >= 1/(2*%d^2)" % (x.radius, den_bound)
        )
    cand = x.midpoint.limit_denominator(den_bound)
    return cand if x.contains(cand) else None


# ---------------------------------------------------------------------------
# Polynomials over F_p (dense, little-endian coefficient lists)

def fp_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def fp_add(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return fp_trim(out)


def fp_sub(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return fp_trim(out)


def fp_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % p
    return fp_trim(out)


def fp_divmod(a, b, p):
    a = [c % p for c in a]
    b = [c % p for c in b]
    fp_trim(a)
    fp_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    r = a[:]
    while len(r) >= len(b):
        coef = (r[-1] * inv_lead) % p
        deg = len(r) - len(b)
        q[deg] = coef
        for i, cb in enumerate(b):
            r[deg + i] = (r[deg + i] - coef * cb) % p
        fp_trim(r)
        if not r:
            break
    return fp_trim(q), r


def fp_gcd(a, b, p):
    a, b = a[:], b[:]
    while b:
        _, a = fp_divmod(a, b, p)
        a, b = b, a
    if a:
        inv_lead = pow(a[-1], -1, p)
        a = [(c * inv_lead) % p for c in a]
    return a


def fp_xgcd(a, b, p):
    """Extended gcd in F_p[x]: returns (g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = a[:], b[:]
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = fp_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, fp_sub(s0, fp_mul(q, s1, p), p)
        t0, t1 = t1, fp_sub(t0, fp_mul(q, t1, p), p)
    if r0:
        inv_lead = pow(r0[-1], -1, p)
        r0 = [(c * inv_lead) % p for c in r0]
        s0 = [(c * inv_lead) % p for c in s0]
        t0 = [(c * inv_lead) % p for c in t0]
    return r0, s0, t0


def fp_pow_mod(a, e, mod_poly, p):
    result = [1]
    base = fp_divmod(a, mod_poly, p)[1]
    while e:
        if e & 1:
            result = fp_divmod(fp_mul(result, base, p), mod_poly, p)[1]
        base = fp_divmod(fp_mul(base, base, p), mod_poly, p)[1]
        e >>= 1
    return result


# ---------------------------------------------------------------------------
# Polynomials over Z/m (monic reduction only, used by the Galois ring)

def _zm_rem_monic(a: list[int], h: Sequence[int], m: int) -> list[int]:
    """Remainder of a modulo the monic polynomial h, coefficients mod m."""
    r = [c % m for c in a]
    deg_h = len(h) - 1
    while len(r) > deg_h:
        lead = r[-1]
        if lead:
            shift = len(r) - 1 - deg_h
            for i in range(deg_h):
                r[shift + i] = (r[shift + i] - lead * h[i]) % m
        r.pop()
    while len(r) < deg_h:
        r.append(0)
    return r


# ---------------------------------------------------------------------------
# Galois rings GR(p^K, f) = (Z/p^K)[t]/(h) with h monic of degree f,
# irreducible mod p.

class GaloisRing:
    """Truncated unramified local ring of residue degree f at precision p^K."""

    def __init__(self, p: int, prec: int, f: int, modulus: Sequence[int]):
        if prec < 1 or f < 1:
            raise ValueError("precision and residue degree must be positive")
        if len(modulus) != f + 1:
            raise ValueError("modulus must have degree f")
        self.p = p
        self.prec = prec
        self.f = f
        self.pK = p ** prec
        if modulus[-1] % self.pK != 1:
            raise ValueError("modulus must be monic")
        self.modulus = tuple(c % self.pK for c in modulus)
        self._frob_root: Optional[tuple[int, ...]] = None

    @staticmethod
    def qp(p: int, prec: int) -> "GaloisRing":
        """The degree-1 ring Z/p^K (modulus t)."""
        return GaloisRing(p, prec, 1, (0, 1))

    # -- element constructors

    def elt(self, coeffs: Sequence[int]) -> "PadicElt":
        c = [x % self.pK for x in coeffs]
        if len(c) > self.f:
            c = _zm_rem_monic(c, self.modulus, self.pK)
        else:
            c = c + [0] * (self.f - len(c))
        return PadicElt(self, tuple(c))

    def from_int(self, n: int) -> "PadicElt":
        return self.elt([n])

    def from_fraction(self, q) -> "PadicElt":
        q = Fraction(q)
        if q.denominator % self.p == 0:
            raise NotAUnit("denominator divisible by p")
        inv = pow(q.denominator, -1, self.pK)
        return self.elt([q.numerator * inv])

    def one(self) -> "PadicElt":
        return self.from_int(1)

    def zero(self) -> "PadicElt":
        return self.from_int(0)

    def from_int_poly(self, coeffs: Sequence[int]) -> "PadicElt":
        return self.elt(list(coeffs))

    # -- internal coefficient ops

    def _add(self, a, b):
        return tuple((x + y) % self.pK for x, y in zip(a, b))

    def _sub(self, a, b):
        return tuple((x - y) % self.pK for x, y in zip(a, b))

    def _mul(self, a, b):
        out = [0] * (2 * self.f - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] = (out[i + j] + ca * cb) % self.pK
        return tuple(_zm_rem_monic(out, self.modulus, self.pK))

    # -- ring structure

    def is_unit(self, x: "PadicElt") -> bool:
        return any(c % self.p for c in x.coeffs)

    def inverse(self, x: "PadicElt") -> "PadicElt":
        if not self.is_unit(x):
            raise NotAUnit("element is divisible by p")
        p = self.p
        res = [c % p for c in x.coeffs]
        hbar = [c % p for c in self.modulus]
        g, s, _ = fp_xgcd(fp_trim(res[:]), hbar, p)
        if g != [1]:
            raise NotAUnit("residue is not invertible (modulus not irreducible?)")
        v = self.elt(s)
        # Newton lifting v <- v(2 - x v); quadratic convergence to x^{-1}
        two = self.from_int(2)
        for _ in range(self.prec.bit_length() + 2):
            prod = x * v
            if prod == self.one():
                return v
            v = v * (two - prod)
        if x * v != self.one():
            raise NotAUnit("inverse lifting failed")
        return v

    def power(self, x: "PadicElt", e: int) -> "PadicElt":
        if e < 0:
            return self.power(self.inverse(x), -e)
        result = self.one()
        base = x
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def valuation(self, x: "PadicElt") -> Optional[int]:
        """min p-adic valuation of the coefficients; None when x = 0 mod p^K."""
        best: Optional[int] = None
        for c in x.coeffs:
            if c == 0:
                continue
            v = 0
            while c % self.p == 0:
                c //= self.p
                v += 1
            if best is None or v < best:
                best = v
                if best == 0:
                    return 0
        return best

    # -- Frobenius and norm

    def frobenius_root(self) -> tuple[int, ...]:
        """The root of the modulus congruent to t^p mod p, Newton-lifted to p^K.

        Substituting t by this root is the ring's Frobenius automorphism.
        """
        if self._frob_root is not None:
            return self._frob_root
        if self.f == 1:
            self._frob_root = tuple([(-self.modulus[0]) % self.pK])
            return self._frob_root
        p, pK = self.p, self.pK
        h = list(self.modulus)
        dh = [(i * h[i]) % pK for i in range(1, len(h))]
        r = self.elt(fp_pow_mod([0, 1], p, [c % p for c in h], p))
        for _ in range(self.prec.bit_length() + 2):
            hr = self._eval_poly(h, r)
            if all(c == 0 for c in hr.coeffs):
                break
            dhr = self._eval_poly(dh, r)
            r = r - hr * self.inverse(dhr)
        hr = self._eval_poly(h, r)
        if any(c != 0 for c in hr.coeffs):
            raise ArithmeticError("Frobenius root lifting failed")
        self._frob_root = r.coeffs
        return r.coeffs

    def _eval_poly(self, poly: Sequence[int], x: "PadicElt") -> "PadicElt":
        acc = self.zero()
        for c in reversed(list(poly)):
            acc = acc * x + self.from_int(c)
        return acc

    def frobenius(self, x: "PadicElt") -> "PadicElt":
        root = PadicElt(self, self.frobenius_root())
        acc = self.zero()
        for c in reversed(x.coeffs):
            acc = acc * root + self.from_int(c)
        return acc

    def norm(self, x: "PadicElt") -> int:
        """Product of the f Frobenius conjugates; lands in Z/p^K."""
        acc = x
        prod = x
        for _ in range(self.f - 1):
            acc = self.frobenius(acc)
            prod = prod * acc
        if any(c != 0 for c in prod.coeffs[1:]):
            raise ArithmeticError("norm did not land in the base ring")
        return prod.coeffs[0]

    def at_precision(self, prec: int) -> "GaloisRing":
        if prec == self.prec:
            return self
        pK = self.p ** prec
        return GaloisRing(self.p, prec, self.f, tuple(c % pK for c in self.modulus))

    def __repr__(self) -> str:
        return "GaloisRing(p=%d, prec=%d, f=%d)" % (self.p, self.prec, self.f)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GaloisRing)
            and (self.p, self.prec, self.f, self.modulus)
            == (other.p, other.prec, other.f, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.prec, self.f, self.modulus))


@dataclass(frozen=True)
class PadicElt:
    """Element of a GaloisRing: polynomial of degree < f, coefficients mod p^K."""

    ring: GaloisRing
    coeffs: tuple[int, ...]

    @property
    def p(self) -> int:
        return self.ring.p

    @property
    def precision(self) -> int:
        return self.ring.prec

    @property
    def f(self) -> int:
        return self.ring.f

    def __add__(self, other: "PadicElt") -> "PadicElt":
        return PadicElt(self.ring, self.ring._add(self.coeffs, other.coeffs))

    def __sub__(self, other: "PadicElt") -> "PadicElt":
        return PadicElt(self.ring, self.ring._sub(self.coeffs, other.coeffs))

    def __mul__(self, other: "PadicElt") -> "PadicElt":
        return PadicElt(self.ring, self.ring._mul(self.coeffs, other.coeffs))

    def __neg__(self) -> "PadicElt":
        return PadicElt(self.ring, tuple((-c) % self.ring.pK for c in self.coeffs))

    def __pow__(self, e: int) -> "PadicElt":
        return self.ring.power(self, e)

    def inverse(self) -> "PadicElt":
        return self.ring.inverse(self)

    def is_unit(self) -> bool:
        return self.ring.is_unit(self)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def valuation(self) -> Optional[int]:
        return self.ring.valuation(self)

    def at_precision(self, prec: int) -> "PadicElt":
        ring = self.ring.at_precision(prec)
        return ring.elt(list(self.coeffs))

    def __repr__(self) -> str:
        return "PadicElt(p=%d, K=%d, %r)" % (self.p, self.precision, list(self.coeffs))


def _int_vp(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of zero")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def padic_log(u: PadicElt) -> PadicElt:
    """Iwasawa-normalized p-adic logarithm of a unit of GR(p^K, f).

    The Teichmueller part is killed by raising to the power p^f - 1, the
    series log(1+x) is summed to precision, and the result divided back.
    The output precision is K - g where g <= ceil(log_p K) + 1 accounts for
    the divisions by p inside the series; g is computed exactly below.
    """
    ring = u.ring
    if not ring.is_unit(u):
        raise NotAUnit("padic_log requires a unit")
    p, K, f = ring.p, ring.prec, ring.f
    e_kill = p ** f - 1
    w = ring.power(u, e_kill)
    x = w - ring.one()
    if x.is_zero():
        # Teichmueller element: logarithm is exactly zero at full precision
        return ring.zero()

    # last series index with term valuation possibly below K
    m_max = 1
    while True:
        if m_max - _ilog(m_max, p) >= K:
            break
        m_max += 1
    loss = _ilog(m_max, p)
    K_out = K - loss
    if K_out <= 0:
        raise PrecisionTooLow("precision %d too small for padic_log at p=%d" % (K, p))

    pK = ring.pK
    p_out = p ** K_out
    acc = [0] * f  # accumulates sum of (-1)^(m+1) x^m / m, valid mod p^K_out
    xpow = ring.one()
    for m in range(1, m_max + 1):
        xpow = xpow * x
        a = _int_vp(m, p)
        m_unit = m // (p ** a)
        inv_m = pow(m_unit, -1, pK)
        sign = 1 if m % 2 == 1 else -1
        for i, c in enumerate(xpow.coeffs):
            c = (c * inv_m) % pK
            # true coefficient divisible by p^a and known mod p^K, so the
            # stored representative is divisible by p^a as well
            c //= p ** a
            acc[i] = (acc[i] + sign * c) % p_out
    inv_kill = pow(e_kill % p_out, -1, p_out)
    out_ring = ring.at_precision(K_out)
    return out_ring.elt([(c * inv_kill) % p_out for c in acc])


def _ilog(n: int, p: int) -> int:
    """floor(log_p n) for n >= 1."""
    v = 0
    while n >= p:
        n //= p
        v += 1
    return v
