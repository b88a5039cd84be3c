# Walkthrough: how 11 splits in Q(zeta_5) and what E_11(Q(zeta_5)) looks like.
#
# 11 = 1 mod 5, so 11 splits completely into four primes, none fixed by
# complex conjugation.  The group of 11-Weil numbers of weight 0 then has
# rank 2, with an explicit basis built from generators of the primes.

from pweil.cyclo import CycloField, norm
from pweil.splitting import split_prime, ord_at, conj_prime
from pweil.weilgroup import (
    alpha_p_map, build_weil_basis, is_weil_unit, minus_basis, pi_m_map,
    verify_weil_basis,
)

field = CycloField(5)
split = split_prime(field, 11)
print(split)
for pr in split.primes:
    print("  %s: zeta maps to %d mod 11, Frobenius coset %s"
          % (pr.label, pr.root_mod_p(), sorted(pr.coset)))

# conjugation pairs the primes: root r pairs with root r^-1 mod 11
for pr in split.primes:
    print("  conj(%s) = %s" % (pr.label, conj_prime(pr).label))
print("T =", [split.primes[i].label for i in split.T])
print("S =", [split.primes[i].label for i in split.S])

basis = build_weil_basis(split)
print("\nM =", basis.M, " rank =", basis.rank)
for idx in sorted(basis.x):
    x = basis.x[idx]
    print("  x[%s] = %r, norm %s, ord profile %s"
          % (split.primes[idx].label, x, norm(x),
             [ord_at(pr, x) for pr in split.primes]))

# the basis elements xi = x^c / x are Weil units: modulus 1 at every
# archimedean place and valuation only at the primes above 11
for idx in split.S:
    xi = basis.xi[idx]
    print("  xi[%s] = %r" % (split.primes[idx].label, xi))
    print("    member of E_11:", is_weil_unit(xi, 11))
    print("    alpha image:", alpha_p_map(xi, split).to_jsonable())

# alpha o pi is exactly multiplication by -M on the minus part
for vec in minus_basis(split):
    image = alpha_p_map(pi_m_map(vec, basis), split)
    print("alpha(pi(%s)) = %s" % (vec.to_jsonable(), image.to_jsonable()))

report = verify_weil_basis(basis)
print("\nall structure checks pass:", report["ok"])
