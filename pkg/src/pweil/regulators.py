"""Argument and p-adic regulators of E_p(k), with certified enclosures.

* argument vectors of basis elements at the infinite places, with explicit
  branch offsets;
* bounded search for simultaneous rational relations among those vectors
  modulo 2 pi (a "none" outcome is a certificate at the stated bound and
  precision, never a proof of independence);
* the group determinant built from the conjugates of a basis element under
  a cyclic Galois action, evaluated both directly and through its character
  factorization;
* the Z_p-valued regulator matrix log_p of the modified local absolute
  values at the primes above p, with a heuristic rank;
* the exact dimension of the closure of the argument image in the torus
  (span of the place-incidence vectors eps);
* the consistency identity tying the imaginary part of a Weil number's
  Frobenius exponent to its valuations, checked modulo (2 pi / log q) Q.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .arith import (
    BallComplex,
    BallReal,
    BranchCutHit,
    GaloisRing,
    PadicElt,
    PrecisionTooLow,
    arg_principal,
    ball_det,
    padic_log,
    rational_reconstruct,
)
from .cyclo import CycloElt, GaloisAut, cyclotomic_polynomial, embed, is_root_of_unity
from .lattice import RelationCertificate, find_simultaneous_relation, kernel_basis_int, rank_q
from .splitting import SplitData, hensel_lift_factor, ord_at
from .weilgroup import WeilBasis, alpha_p_map


class BasisMismatch(ValueError):
    """The supplied automorphism does not turn the basis into a group orbit."""


# ---------------------------------------------------------------------------
# Argument vectors

@dataclass(frozen=True)
class ArgVector:
    """Branch-resolved arguments of sigma_v(xi) at every infinite place.

    ``values[v]`` encloses a branch of arg(sigma_v(xi)): the principal value
    plus 2 pi times the integer ``offsets[v]``.  Offsets model the choice of
    lifting and are freely adjustable after the fact.
    """

    xi: CycloElt
    places: tuple[int, ...]
    values: tuple[BallReal, ...]
    offsets: tuple[int, ...]
    precision: int

    def with_offsets(self, offsets: Sequence[int]) -> "ArgVector":
        if len(offsets) != len(self.places):
            raise ValueError("offset count != place count")
        two_pi = BallReal.pi(self.precision) * 2
        vals = []
        for v, k_new in enumerate(offsets):
            delta = k_new - self.offsets[v]
            vals.append(self.values[v] + two_pi * delta if delta else self.values[v])
        return ArgVector(self.xi, self.places, tuple(vals), tuple(offsets), self.precision)

    def to_jsonable(self) -> dict:
        return {
            "places": list(self.places),
            "values": [v.to_str(25) for v in self.values],
            "offsets": list(self.offsets),
            "precision": self.precision,
        }


def certified_arg(x: CycloElt, place: int, precision: int, max_attempts: int = 6) -> BallReal:
    """Principal argument of sigma_v(x) with radius below 2^(-precision/2).

    Retries at doubled working precision near the branch cut instead of
    silently picking a side; an element exactly on the negative real axis
    (only x = -1) resolves exactly.
    """
    target = Fraction(1, 1 << (precision // 2))
    wp = precision + 32
    last: Optional[Exception] = None
    for _ in range(max_attempts):
        try:
            val = arg_principal(embed(x, place, wp))
            if val.radius < target:
                return val
        except (BranchCutHit, PrecisionTooLow) as exc:
            last = exc
        wp *= 2
    if last is not None:
        raise last
    raise PrecisionTooLow("argument radius did not reach 2^-%d" % (precision // 2))


def arg_vector(xi: CycloElt, precision: int = 128) -> ArgVector:
    """Argument vector of a norm-one element at all infinite places."""
    if xi * xi.conj() != xi.field.one():
        raise ValueError("argument vectors require x x^c = 1 (modulus one everywhere)")
    places = xi.field.places
    values = tuple(certified_arg(xi, v, precision) for v in places)
    return ArgVector(xi, places, values, (0,) * len(places), precision)


# ---------------------------------------------------------------------------
# Independence certificates for the argument image modulo 2 pi Q

@dataclass(frozen=True)
class IndependenceReport:
    """Certificate produced by the bounded relation search, plus the exact
    rank-one resolution when the basis has a single element."""

    certificate: RelationCertificate
    rank_one_exact: Optional[bool]
    precision: int
    bound: int

    @property
    def consistent(self) -> bool:
        """False only when a genuine relation was found (falsification case)."""
        return self.certificate.status == "none-up-to-bound" or bool(self.rank_one_exact)

    def to_jsonable(self) -> dict:
        return {
            "certificate": self.certificate.to_jsonable(),
            "rank_one_exact": self.rank_one_exact,
            "precision": self.precision,
            "bound": self.bound,
        }


def argument_independence_certificate(
    basis: WeilBasis,
    bound: int = 10_000,
    precision: int = 512,
    offsets: Optional[Sequence[Sequence[int]]] = None,
) -> IndependenceReport:
    """Bounded search for rational relations among basis argument vectors mod 2 pi.

    A "none-up-to-bound" outcome supports linear independence of the
    argument vectors for any choice of branch (offsets only shift by lattice
    vectors already modded out); a found relation would be a falsification
    candidate and is returned with full provenance.  With a single basis
    element the question degenerates to "xi is not a root of unity", which
    is additionally decided exactly.
    """
    split = basis.split
    if not split.S:
        raise ValueError("empty basis: nothing to test")
    vectors = []
    for i, idx in enumerate(split.S):
        av = arg_vector(basis.xi[idx], precision)
        if offsets is not None:
            av = av.with_offsets(offsets[i])
        vectors.append(av.values)
    two_pi = BallReal.pi(precision + 32) * 2
    cert = find_simultaneous_relation(vectors, two_pi, bound, precision)
    rank_one: Optional[bool] = None
    if len(split.S) == 1:
        rank_one = is_root_of_unity(basis.xi[split.S[0]]) is None
    return IndependenceReport(cert, rank_one, precision, bound)


# ---------------------------------------------------------------------------
# Group determinants for cyclic conjugate bases

@dataclass(frozen=True)
class GroupDetReport:
    sigma: int
    size: int
    thetas: tuple[BallReal, ...]
    delta: BallReal
    delta_factored: BallReal
    nonzero: bool
    precision: int
    offsets: tuple[int, ...]

    def to_jsonable(self) -> dict:
        return {
            "sigma": self.sigma,
            "size": self.size,
            "thetas": [t.to_str(25) for t in self.thetas],
            "delta": self.delta.to_str(25),
            "delta_factored": self.delta_factored.to_str(25),
            "nonzero": self.nonzero,
            "precision": self.precision,
            "offsets": list(self.offsets),
        }


def conjugate_orbit(basis: WeilBasis, sigma: GaloisAut) -> list[CycloElt]:
    """The orbit xi, xi^sigma, ..., of the first basis element, validated
    to be a rational basis of E_p(k) x Q on which <sigma> acts with order |S|.

    Raises BasisMismatch when sigma^|S| does not fix xi exactly (for example
    when sigma^|S| is complex conjugation: xi^c = xi^-1 and no group
    determinant arises) or when the conjugates fail to span.
    """
    split = basis.split
    m = len(split.S)
    if m == 0:
        raise BasisMismatch("empty basis")
    xi0 = basis.xi[split.S[0]]
    orbit = [xi0]
    cur = xi0
    for _ in range(m - 1):
        cur = cur.apply(sigma)
        orbit.append(cur)
    if cur.apply(sigma) != xi0:
        raise BasisMismatch(
            "sigma^%d does not fix xi (the orbit does not close into a group)" % m
        )
    rows = [alpha_p_map(e, split).coeffs for e in orbit]
    if rank_q(rows) != m:
        raise BasisMismatch("conjugates do not span E_p(k) x Q")
    return orbit


def circulant_group_delta(thetas: Sequence[BallReal]) -> tuple[BallReal, BallReal]:
    """|det| of the circulant with first row thetas, and its character product.

    For the cyclic group of order m the group determinant factors as the
    product over the m-th roots of unity omega of |sum_i theta_i omega^i|;
    both enclosures are returned (they must overlap).
    """
    m = len(thetas)
    prec = max(t.prec for t in thetas)
    rows = [[thetas[(c - r) % m] for c in range(m)] for r in range(m)]
    delta = abs(ball_det(rows))
    two_pi = BallReal.pi(prec) * 2
    fact = BallReal.from_int(1, prec)
    for j in range(m):
        re = BallReal.zero(prec)
        im = BallReal.zero(prec)
        for i, t in enumerate(thetas):
            angle = two_pi * Fraction((i * j) % m, m)
            re = re + t * angle.cos()
            im = im + t * angle.sin()
        fact = fact * abs(BallComplex(re, im))
    return delta, fact


def group_determinant(basis: WeilBasis, sigma, precision: int = 256,
                      offsets: Optional[Sequence[int]] = None) -> GroupDetReport:
    """Certified group determinant of the sigma-orbit basis arguments.

    Entry (r, c) of the underlying matrix is the chosen branch of the
    argument of sigma^(c-r)(xi) under the fixed embedding, so the matrix is
    the circulant of the orbit's argument values; a coherent branch choice
    means one offset per orbit element.  The enclosure of |det| and of the
    character-product factorization are both returned with a nonzero flag.
    """
    split = basis.split
    if isinstance(sigma, int):
        sigma = split.field.aut(sigma)
    orbit = conjugate_orbit(basis, sigma)
    m = len(orbit)
    if offsets is None:
        offsets = (0,) * m
    offsets = tuple(offsets)
    base_place = split.field.places[0]
    two_pi = BallReal.pi(precision + 32) * 2
    thetas = []
    for k, elt in enumerate(orbit):
        val = certified_arg(elt, base_place, precision)
        if offsets[k]:
            val = val + two_pi * offsets[k]
        thetas.append(val)
    delta, fact = circulant_group_delta(thetas)
    if not delta.overlaps(fact):
        raise ArithmeticError(
            "determinant and factorization enclosures are disjoint "
            "(soundness violation): %s vs %s" % (delta.to_str(20), fact.to_str(20))
        )
    nonzero = delta.excludes_zero() or fact.excludes_zero()
    return GroupDetReport(
        sigma=sigma.a, size=m, thetas=tuple(thetas), delta=delta,
        delta_factored=fact, nonzero=nonzero, precision=precision, offsets=offsets,
    )


def find_abelian_generator(basis: WeilBasis) -> Optional[GaloisAut]:
    """Smallest a whose automorphism makes the basis a closed cyclic orbit."""
    split = basis.split
    if not split.S:
        return None
    for a in split.field.units:
        aut = split.field.aut(a)
        try:
            conjugate_orbit(basis, aut)
            return aut
        except BasisMismatch:
            continue
    return None


# ---------------------------------------------------------------------------
# The Z_p-valued regulator matrix

@dataclass(frozen=True)
class GrossMatrix:
    """Rows: basis elements xi_P (P in S); columns: all primes above p.

    Entries are log_p of the modified local absolute value (Nv)^(-ord_v)
    times the local norm, each a p-adic integer at the stated precision.
    Row sums vanish (product formula); torsion elements give zero rows.
    """

    split: SplitData
    row_labels: tuple[str, ...]
    entries: tuple[tuple[PadicElt, ...], ...]
    precision: int
    heuristic_rank: int
    row_sum_min_valuation: int

    def to_jsonable(self) -> dict:
        return {
            "rows": list(self.row_labels),
            "columns": [pr.label for pr in self.split.primes],
            "precision": self.precision,
            "entries": [
                [int(e.coeffs[0]) for e in row] for row in self.entries
            ],
            "heuristic_rank": self.heuristic_rank,
            "row_sum_min_valuation": self.row_sum_min_valuation,
        }

    def to_csv(self) -> str:
        lines = ["row," + ",".join(pr.label for pr in self.split.primes)]
        for label, row in zip(self.row_labels, self.entries):
            lines.append(label + "," + ",".join(str(int(e.coeffs[0])) for e in row))
        return "\n".join(lines) + "\n"


def gross_row(x: CycloElt, split: SplitData, K: int = 50) -> list[PadicElt]:
    """log_p of the modified absolute values of x at every prime above p."""
    p = split.p
    f = split.f
    n = split.field.n
    entries = []
    for pr in split.primes:
        den = x.denominator()
        num_coeffs = [int(c * den) for c in x.coeffs]
        v_den = 0
        while den % p == 0:
            den //= p
            v_den += 1
        ord_num = ord_at(pr, x) + v_den  # valuation of the cleared numerator
        K_big = K + f * ord_num
        ring = GaloisRing(p, K_big, f,
                          hensel_lift_factor(cyclotomic_polynomial(n), pr.h_bar, p, K_big)) \
            if K_big != pr.K else pr.ring
        image = ring.from_int_poly(num_coeffs)
        nrm = ring.norm(image)
        assert nrm % (p ** (f * ord_num)) == 0, "norm valuation mismatch"
        unit_num = nrm // (p ** (f * ord_num))
        qp = GaloisRing.qp(p, K)
        u = qp.from_int(unit_num) * qp.inverse(qp.from_int(pow(den, f)))
        entries.append(padic_log(u))
    return entries


def gross_matrix(basis: WeilBasis, split: SplitData, K: int = 50) -> GrossMatrix:
    """The regulator matrix of the basis with heuristic p-adic rank."""
    rows = []
    labels = []
    for idx in split.S:
        rows.append(gross_row(basis.xi[idx], split, K))
        labels.append(split.primes[idx].label)
    out_prec = min((e.precision for row in rows for e in row), default=K)
    norm_rows = [[e.at_precision(out_prec) for e in row] for row in rows]

    min_val = out_prec
    for row in norm_rows:
        total = 0
        for e in row:
            total = (total + e.coeffs[0]) % (split.p ** out_prec)
        v = _int_valuation(total, split.p, out_prec)
        min_val = min(min_val, v)

    rank = _padic_rank([[int(e.coeffs[0]) for e in row] for row in norm_rows],
                       split.p, out_prec)
    return GrossMatrix(
        split=split,
        row_labels=tuple(labels),
        entries=tuple(tuple(row) for row in norm_rows),
        precision=out_prec,
        heuristic_rank=rank,
        row_sum_min_valuation=min_val,
    )


def _int_valuation(c: int, p: int, cap: int) -> int:
    if c == 0:
        return cap
    v = 0
    while c % p == 0 and v < cap:
        c //= p
        v += 1
    return v


def _padic_rank(rows: list[list[int]], p: int, prec: int) -> int:
    """Rank over Q_p at finite precision: pivot on minimal valuation."""
    a = [row[:] for row in rows]
    prec_left = prec
    rank = 0
    live_rows = list(range(len(a)))
    live_cols = list(range(len(a[0]) if a else 0))
    while live_rows and live_cols and prec_left > 0:
        best = None
        for i in live_rows:
            for j in live_cols:
                v = _int_valuation(a[i][j] % (p ** prec_left), p, prec_left)
                if v < prec_left and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            break
        v, pi, pj = best
        rank += 1
        mod = p ** prec_left
        unit = (a[pi][pj] % mod) // (p ** v)
        inv_unit = pow(unit, -1, p ** (prec_left - v))
        for i in live_rows:
            if i == pi:
                continue
            c = a[i][pj] % mod
            assert c % (p ** v) == 0 or _int_valuation(c, p, prec_left) >= v
            factor = ((c // (p ** v)) * inv_unit) % (p ** (prec_left - v))
            if factor:
                for j in live_cols:
                    a[i][j] = (a[i][j] - factor * a[pi][j]) % mod
        live_rows.remove(pi)
        live_cols.remove(pj)
        prec_left -= v
    return rank


# ---------------------------------------------------------------------------
# Closure of the argument image in the torus

@dataclass(frozen=True)
class ClosureReport:
    """Dimension of the closure of the argument image, with the dual basis.

    The closure's dimension equals the rank of the span of the incidence
    vectors eps_{P,P'}(v) in (+1, -1, 0) recording whether sigma_v carries P
    to P' or to its conjugate; the annihilator lattice (the dual of the
    quotient torus) is returned as an integer basis.
    """

    dimension: int
    torus_dimension: int
    c_hat_basis: tuple[tuple[int, ...], ...]
    epsilons: dict

    @property
    def dense(self) -> bool:
        return self.dimension == self.torus_dimension

    def to_jsonable(self) -> dict:
        return {
            "dimension": self.dimension,
            "torus_dimension": self.torus_dimension,
            "dense": self.dense,
            "c_hat_basis": [list(r) for r in self.c_hat_basis],
            "epsilons": {k: list(v) for k, v in self.epsilons.items()},
        }


def epsilon_vector(split: SplitData, i: int, j: int,
                   place_auts: Optional[Sequence[int]] = None) -> tuple[int, ...]:
    """eps_{P_i, P_j}: for each infinite place v, +1 if sigma_v P_i = P_j,
    -1 if sigma_v P_i = P_j^c, else 0."""
    places = tuple(place_auts) if place_auts is not None else split.field.places
    jc = split.conj_index(j)
    out = []
    for a_v in places:
        img = split.act_index(a_v, i)
        if img == j:
            out.append(1)
        elif img == jc:
            out.append(-1)
        else:
            out.append(0)
    return tuple(out)


def closure_dimension(split: SplitData,
                      s_indices: Optional[Sequence[int]] = None,
                      place_auts: Optional[Sequence[int]] = None) -> ClosureReport:
    """Exact dimension of the closure of the argument image in the torus."""
    r2 = len(split.field.places)
    s = list(s_indices) if s_indices is not None else list(split.S)
    eps = {}
    for i in s:
        for j in s:
            key = "%s,%s" % (split.primes[i].label, split.primes[j].label)
            eps[key] = epsilon_vector(split, i, j, place_auts)
    vectors = list(eps.values())
    if not vectors:
        dim = 0
        c_hat = [tuple(1 if i == j else 0 for j in range(r2)) for i in range(r2)]
    else:
        dim = rank_q(vectors)
        transpose = [[vec[v] for vec in vectors] for v in range(r2)]
        c_hat = [tuple(row) for row in kernel_basis_int(transpose)]
    return ClosureReport(
        dimension=dim,
        torus_dimension=r2,
        c_hat_basis=tuple(c_hat),
        epsilons=eps,
    )


# ---------------------------------------------------------------------------
# The angle-valuation identity for Weil numbers of any weight

@dataclass(frozen=True)
class AngleIdentityReport:
    """LHS and RHS of the identity Im(alpha) = sum_P f ord_P(lambda) arg_q(x_P^(1/M))
    modulo (2 pi / log q) Q, with the reconstructed rational."""

    weight: int
    q: int
    M: int
    lhs: BallReal
    t_form: BallReal
    s_form: BallReal
    forms_overlap: bool
    rational: Optional[Fraction]
    den_bound: int
    precision: int
    ords: dict

    @property
    def ok(self) -> bool:
        return self.forms_overlap and self.rational is not None

    def to_jsonable(self) -> dict:
        return {
            "weight": self.weight,
            "q": self.q,
            "M": self.M,
            "lhs": self.lhs.to_str(25),
            "t_form": self.t_form.to_str(25),
            "s_form": self.s_form.to_str(25),
            "forms_overlap": self.forms_overlap,
            "rational": str(self.rational) if self.rational is not None else None,
            "den_bound": self.den_bound,
            "precision": self.precision,
            "ords": self.ords,
            "ok": self.ok,
        }


def weil_angle_identity(lam: CycloElt, split: SplitData, basis: WeilBasis,
                        den_bound: int = 60, precision: int = 512) -> AngleIdentityReport:
    """Check that the valuations of lambda determine Im(alpha) mod (2 pi/log q) Q.

    lambda must satisfy lambda lambda^c = q^w exactly (weight w, q = p).
    The left side is arg(lambda)/log q at the fixed embedding; the right side
    is evaluated both as a sum over T (with the coherent branch
    arg(x_{P^c}) := -arg(x_P)) and as a sum over S in terms of xi_P; the two
    agree as exact reals and their enclosures must overlap.  The difference
    LHS - RHS times log q / 2 pi is then reconstructed as a rational with
    denominator at most den_bound.
    """
    field = split.field
    p = split.p
    t = lam * lam.conj()
    t_rat = t.as_rational()
    if t_rat.denominator != 1 or t_rat <= 0:
        raise ValueError("lambda lambda^c = %s is not a positive integer power of p" % t_rat)
    w = 0
    t_int = t_rat.numerator
    while t_int % p == 0:
        t_int //= p
        w += 1
    if t_int != 1:
        raise ValueError("lambda lambda^c is not a power of p: residue %d" % t_int)

    M = basis.M
    base_place = field.places[0]
    wp = precision + 32
    log_q = BallReal.from_int(p, wp).log()
    lhs = certified_arg(lam, base_place, precision) / log_q

    ords = {pr.label: ord_at(pr, lam) for pr in split.primes}
    theta = {idx: certified_arg(basis.x[idx], base_place, precision) for idx in split.S}

    # T-indexed form: sum over all P in T of f ord_P(lambda) theta_P, with the
    # coherent branch theta_{P^c} = -theta_P
    t_sum = BallReal.zero(wp)
    for idx in split.S:
        cidx = split.conj_index(idx)
        t_sum = t_sum + theta[idx] * (split.f * ords[split.primes[idx].label])
        t_sum = t_sum + (-theta[idx]) * (split.f * ords[split.primes[cidx].label])
    t_form = t_sum / (M * log_q) if split.S else BallReal.zero(wp)

    # S-indexed form: (1/2) sum over S of log-ratio times the coherent branch
    # of arg(xi_P) = -2 theta_P (the derived identity carries the half)
    s_sum = BallReal.zero(wp)
    for idx in split.S:
        cidx = split.conj_index(idx)
        logratio = -split.f * (ords[split.primes[idx].label] - ords[split.primes[cidx].label])
        s_sum = s_sum + (theta[idx] * (-2)) * logratio
    s_form = s_sum / (2 * M * log_q) if split.S else BallReal.zero(wp)

    overlap = t_form.overlaps(s_form)
    ratio = (lhs - t_form) * log_q / (BallReal.pi(wp) * 2)
    rational = rational_reconstruct(ratio, den_bound)
    return AngleIdentityReport(
        weight=w, q=p, M=M, lhs=lhs, t_form=t_form, s_form=s_form,
        forms_overlap=overlap, rational=rational,
        den_bound=den_bound, precision=precision, ords=ords,
    )
