"""The group E_p(k) of rational p-Weil numbers of weight 0 in k = Q(zeta_n).

Membership, the valuation map alpha into the minus part of the divisor
group at p, the section pi built from generators x_P of the principal
powers P^(M/f), the basis xi_P = x_P^c / x_P, and Jacobi sums as explicit
weight-1 Weil numbers.

The composition alpha o pi is multiplication by -M; pi o alpha is
x -> x^(-M) up to roots of unity.  Both identities are verified exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Optional

from .cyclo import CycloElt, CycloField, is_root_of_unity, norm, ramanujan_sum
from .lattice import BoundTooLarge, row_hnf, short_vectors
from .splitting import PrimeAbove, SplitData, is_prime, ord_at


class NotAWeilUnit(ValueError):
    """The element does not lie in E_p(k)."""


class MinusPartViolation(ValueError):
    """Divisor vector is not in the -1 eigenspace of conjugation."""


class EnumerationBudgetExceeded(RuntimeError):
    """Generator search ran out of enumeration nodes."""


class BadCharacterIndices(ValueError):
    """Jacobi sum character indices must be nonzero with nonzero sum mod n."""


# ---------------------------------------------------------------------------
# Membership

def _strip_prime(n: int, p: int) -> int:
    while n % p == 0:
        n //= p
    return n


def is_weil_unit(x: CycloElt, p: int) -> bool:
    """True iff x lies in E_p(k): all absolute values away from p are 1.

    In a CM field the archimedean conditions are equivalent to the exact
    identity x x^c = 1.  The finite conditions hold iff both x and 1/x are
    integral away from p; since Z[zeta_n] is the maximal order, that is the
    statement that all coefficient denominators are powers of p.
    """
    if x.is_zero():
        raise ZeroDivisionError("membership of zero")
    if x * x.conj() != x.field.one():
        return False
    if _strip_prime(x.denominator(), p) != 1:
        return False
    return _strip_prime(x.inverse().denominator(), p) == 1


# ---------------------------------------------------------------------------
# Divisor vectors indexed by the primes above p

@dataclass(frozen=True)
class DivisorVec:
    """Integer vector on the primes above p (a divisor supported at p)."""

    split: SplitData
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.split.g:
            raise ValueError("coefficient count != number of primes above p")

    def is_minus_part(self) -> bool:
        return all(
            self.coeffs[i] + self.coeffs[self.split.conj_index(i)] == 0
            for i in range(self.split.g)
        )

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: "DivisorVec") -> "DivisorVec":
        return DivisorVec(self.split, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "DivisorVec":
        return DivisorVec(self.split, tuple(-a for a in self.coeffs))

    def __rmul__(self, scalar: int) -> "DivisorVec":
        return DivisorVec(self.split, tuple(scalar * a for a in self.coeffs))

    def to_jsonable(self) -> dict:
        return {self.split.primes[i].label: c for i, c in enumerate(self.coeffs)}


def minus_basis(split: SplitData) -> list[DivisorVec]:
    """The basis P^c - P, for P in S, of the minus part."""
    out = []
    for idx in split.S:
        coeffs = [0] * split.g
        coeffs[split.conj_index(idx)] = 1
        coeffs[idx] = -1
        out.append(DivisorVec(split, tuple(coeffs)))
    return out


def alpha_p_map(x: CycloElt, split: SplitData) -> DivisorVec:
    """The valuation map: x -> -sum_P f(P|p) ord_P(x) . P, in the minus part."""
    if not is_weil_unit(x, split.p):
        raise NotAWeilUnit("alpha is only defined on E_p(k)")
    coeffs = tuple(-split.f * ord_at(pr, x) for pr in split.primes)
    vec = DivisorVec(split, coeffs)
    assert vec.is_minus_part(), "valuation vector escaped the minus part"
    return vec


# ---------------------------------------------------------------------------
# Ideal lattices and generator search

def ideal_basis(prime: PrimeAbove, power: int = 1) -> list[list[int]]:
    """HNF Z-basis (rows of zeta-power coordinates) of P^power."""
    field = prime.field
    deg = field.degree
    if power == 0:
        return [[1 if i == j else 0 for j in range(deg)] for i in range(deg)]
    h_elt = field.elt([c % prime.p for c in prime.h_bar])
    gens = []
    for i in range(deg):
        zi = field.zeta(i)
        gens.append(_int_coeffs(zi * prime.p))
        gens.append(_int_coeffs(zi * h_elt))
    basis, rank = row_hnf(gens)
    assert rank == deg
    # P^(k+1) = p P^k + h(zeta) P^k as Z-modules
    for _ in range(power - 1):
        prods = []
        for row in basis:
            belt = field.elt(row)
            prods.append(_int_coeffs(belt * prime.p))
            prods.append(_int_coeffs(belt * h_elt))
        basis, rank = row_hnf(prods)
        assert rank == deg
    return basis


def _int_coeffs(x: CycloElt) -> list[int]:
    out = []
    for c in x.coeffs:
        assert c.denominator == 1
        out.append(c.numerator)
    return out


def trace_gram(field: CycloField) -> list[list[int]]:
    """Gram matrix of the hermitian trace form Tr(x y^c) on the power basis."""
    deg = field.degree
    return [[ramanujan_sum(field.n, i - j) for j in range(deg)] for i in range(deg)]


def _iroot_ceil(n: int, k: int) -> int:
    """Smallest r with r^k >= n."""
    if n <= 1:
        return n
    r = int(round(n ** (1.0 / k)))
    while r ** k >= n:
        r -= 1
    while r ** k < n:
        r += 1
    return r


def find_generator(prime: PrimeAbove, power: int,
                   node_budget: int = 5_000_000,
                   max_doublings: int = 6) -> Optional[CycloElt]:
    """A generator of the ideal P^power, canonically normalized, or None.

    Enumerates the ideal lattice under the trace form Tr(x x^c) starting at
    1.5x the arithmetic-geometric floor and doubling the radius; an element
    of the ideal whose norm is +-p^(f power) with the right valuation
    profile is a generator.  Among the candidates within the first
    successful radius the one with the lexicographically smallest absolute
    coefficient tuple read from the highest power of zeta down is returned,
    sign fixed by making the first nonzero coefficient positive (this
    prefers generators supported on low powers of zeta).  Returning None is
    evidence, not proof, that P^power is non-principal: the search radius
    covers 1.5 * 2^max_doublings times the minimum possible generator size.
    """
    field = prime.field
    if power == 0:
        return field.one()
    split = prime.split
    assert split is not None
    n_target = prime.p ** (prime.f * power)
    deg = field.degree
    basis = ideal_basis(prime, power)
    gram = trace_gram(field)
    floor = deg * _iroot_ceil(n_target * n_target, deg)
    bound = floor + (floor + 1) // 2
    for _ in range(max_doublings + 1):
        try:
            vectors = short_vectors(basis, bound, gram=gram, node_budget=node_budget)
        except BoundTooLarge as exc:
            raise EnumerationBudgetExceeded(str(exc)) from exc
        candidates = []
        for vec, _norm_sq in vectors:
            elt = field.elt(vec)
            nm = norm(elt)
            if abs(nm) != n_target:
                continue
            if ord_at(prime, elt) != power:
                continue
            if any(ord_at(pr, elt) != 0 for pr in split.primes if pr.index != prime.index):
                continue
            candidates.append(elt)
        if candidates:
            return min(candidates, key=_generator_key)
        bound *= 2
    return None


def _generator_key(x: CycloElt):
    coeffs = [c.numerator for c in x.coeffs]
    rev_abs = tuple(abs(c) for c in reversed(coeffs))
    return (rev_abs, tuple(reversed(coeffs)))


# ---------------------------------------------------------------------------
# The basis of E_p(k) x Q

@dataclass(frozen=True)
class WeilBasis:
    """Exponent M, generators x_P ((x_P) = P^(M/f), x_{P^c} = x_P^c) and the
    basis xi_P = x_P^c / x_P of E_p(k) tensor Q for P in S."""

    split: SplitData
    M: int
    h: int
    x: dict  # prime index in T -> CycloElt
    xi: dict  # prime index in S -> CycloElt

    @property
    def rank(self) -> int:
        return len(self.xi)

    def to_jsonable(self) -> dict:
        return {
            "M": self.M,
            "h": self.h,
            "rank": self.rank,
            "x": {
                self.split.primes[i].label: [str(c) for c in elt.coeffs]
                for i, elt in sorted(self.x.items())
            },
            "xi": {
                self.split.primes[i].label: [str(c) for c in elt.coeffs]
                for i, elt in sorted(self.xi.items())
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_jsonable(), sort_keys=True)


def build_weil_basis(split: SplitData, h_cap: int = 12,
                     node_budget: int = 5_000_000) -> WeilBasis:
    """Construct M, the generators x_P and the basis elements xi_P.

    The class-order h of the primes in S is found by searching generators of
    P^h for h = 1, 2, ...; M = lcm over S of f*h, and generators are raised
    to the power M/(f h) so that (x_P) = P^(M/f) exactly.  All structural
    identities are verified exactly before returning.
    """
    if not split.T:
        return WeilBasis(split, M=1, h=0, x={}, xi={})
    f = split.f
    gens: dict[int, CycloElt] = {}
    h_found: dict[int, int] = {}
    for idx in split.S:
        prime = split.primes[idx]
        for h in range(1, h_cap + 1):
            g = find_generator(prime, h, node_budget=node_budget)
            if g is not None:
                gens[idx] = g
                h_found[idx] = h
                break
        else:
            raise RuntimeError(
                "no generator of %s^h found for h <= %d (class order too large "
                "or search radius exhausted)" % (prime.label, h_cap)
            )
    h_common = max(h_found.values())
    M = lcm(*(f * h for h in h_found.values()))
    x: dict[int, CycloElt] = {}
    for idx in split.S:
        e = M // (f * h_found[idx])
        x[idx] = gens[idx] ** e
    for idx in split.S:
        cidx = split.conj_index(idx)
        x[cidx] = x[idx].conj()
    xi: dict[int, CycloElt] = {}
    for idx in split.S:
        xi[idx] = x[split.conj_index(idx)] / x[idx]

    p = split.p
    for idx in split.T:
        elt = x[idx]
        assert abs(norm(elt)) == Fraction(p) ** M, "generator norm != p^M"
        for pr in split.primes:
            expected = M // f if pr.index == idx else 0
            assert ord_at(pr, elt) == expected, "generator valuation profile broken"
    for idx in split.S:
        assert xi[idx] * xi[idx].conj() == split.field.one()
        assert is_weil_unit(xi[idx], p)
    return WeilBasis(split, M=M, h=h_common, x=x, xi=xi)


def pi_m_map(nu: DivisorVec, basis: WeilBasis) -> CycloElt:
    """pi_M: minus-part divisor -> product over T of x_P^(nu_P), in E_p(k)."""
    if not nu.is_minus_part():
        raise MinusPartViolation("pi_M is only defined on the minus part")
    split = basis.split
    out = split.field.one()
    for idx in split.T:
        e = nu.coeffs[idx]
        if e:
            out = out * (basis.x[idx] ** e)
    return out


# ---------------------------------------------------------------------------
# Structure verification

def verify_weil_basis(basis: WeilBasis, samples: int = 5, seed: int = 0) -> dict:
    """Exact verification of the structural identities of E_p(k).

    Checks (i) alpha o pi = -M id on the minus-part basis, (ii) for sample
    Weil units x the element x^M pi(alpha(x)) is exactly a root of unity,
    (iii) rank = |T|/2, and the valuation profile of every basis element.
    Failures are reported, not raised.
    """
    import random

    split = basis.split
    field = split.field
    checks = []

    for vec in minus_basis(split):
        img = alpha_p_map(pi_m_map(vec, basis), split)
        ok = img.coeffs == tuple(-basis.M * c for c in vec.coeffs)
        checks.append({
            "name": "alpha(pi(%s)) = -M*(%s)" % (vec.to_jsonable(), vec.to_jsonable()),
            "ok": ok,
        })

    rng = random.Random(seed)
    w = field.torsion_order()
    for trial in range(samples if split.S else 0):
        xel = field.zeta(rng.randrange(field.n))
        if rng.random() < 0.5:
            xel = -xel
        for idx in split.S:
            xel = xel * (basis.xi[idx] ** rng.randint(-2, 2))
        y = (xel ** basis.M) * pi_m_map(alpha_p_map(xel, split), basis)
        order = is_root_of_unity(y)
        checks.append({
            "name": "sample %d: x^M pi(alpha(x)) is torsion" % trial,
            "ok": order is not None,
            "order": order,
            "torsion_bound": w,
        })

    checks.append({
        "name": "rank = |T|/2",
        "ok": 2 * len(split.S) == len(split.T),
        "rank": len(split.S),
        "T_size": len(split.T),
    })

    for idx in split.S:
        vec = alpha_p_map(basis.xi[idx], split)
        expected = [0] * split.g
        expected[idx] = basis.M
        expected[split.conj_index(idx)] = -basis.M
        checks.append({
            "name": "alpha(xi_%s) = M*(%s) - M*(%s^c)" % (
                split.primes[idx].label, split.primes[idx].label, split.primes[idx].label),
            "ok": list(vec.coeffs) == expected,
        })

    return {"ok": all(c["ok"] for c in checks), "checks": checks}


# ---------------------------------------------------------------------------
# Jacobi sums: explicit weight-1 Weil numbers for p = 1 mod n

def _primitive_root(p: int) -> int:
    fac = []
    m = p - 1
    d = 2
    while d * d <= m:
        if m % d == 0:
            fac.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        fac.append(m)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in fac):
            return g
    raise ValueError("no primitive root found (p not prime?)")


def jacobi_weil_number(p: int, n: int, a: int, b: int) -> CycloElt:
    """The Jacobi sum -sum_t chi^a(t) chi^b(1-t) in Z[zeta_n], of weight 1.

    chi is the character of F_p* of exact order n sending the smallest
    primitive root to zeta_n; requires p = 1 mod n and a, b, a+b nonzero
    mod n.  The defining identity lambda * lambda^c = p is verified exactly.
    """
    if not is_prime(p):
        raise ValueError("%d is not prime" % p)
    if (p - 1) % n != 0:
        raise BadCharacterIndices("need p = 1 mod n for characters of order n")
    a %= n
    b %= n
    if a == 0 or b == 0 or (a + b) % n == 0:
        raise BadCharacterIndices("indices a, b, a+b must be nonzero mod n")
    field = CycloField(n)
    g = _primitive_root(p)
    dlog = [0] * p
    acc = 1
    for k in range(p - 1):
        dlog[acc] = k
        acc = (acc * g) % p
    counts = [0] * n
    for t in range(2, p):
        e = (a * dlog[t] + b * dlog[(1 - t) % p]) % n
        counts[e] += 1
    lam = field.elt([-c for c in counts])
    check = lam * lam.conj()
    assert check == field.from_rational(p), "Jacobi sum failed lambda*lambda^c = p"
    return lam
