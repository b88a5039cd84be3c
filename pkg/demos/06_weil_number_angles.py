# Walkthrough: the valuations of a Weil number determine the angle of its
# Frobenius exponent up to rational multiples of 2 pi / log q.
#
# Jacobi sums provide explicit weight-1 Weil numbers when p = 1 mod n.
# Writing lambda = q^alpha, the imaginary part of alpha is pinned down
# modulo (2 pi / log q) Q by the valuations ord_P(lambda) paired with the
# arguments of the prime generators x_P.  The identity is checked with
# certified enclosures and an exact rational reconstruction of the defect.

from pweil.cyclo import CycloField, norm
from pweil.splitting import split_prime, ord_at
from pweil.weilgroup import build_weil_basis, jacobi_weil_number
from pweil.regulators import weil_angle_identity

field = CycloField(5)
split = split_prime(field, 11)
basis = build_weil_basis(split)

for a, b in ((1, 1), (1, 2), (2, 2), (3, 3)):
    lam = jacobi_weil_number(11, 5, a, b)
    print("chars (%d, %d): lambda = %r" % (a, b, lam))
    print("  lambda lambda^c =", (lam * lam.conj()).as_rational(), " norm =", norm(lam))
    print("  valuations:", {pr.label: ord_at(pr, lam) for pr in split.primes})
    rep = weil_angle_identity(lam, split, basis, den_bound=60, precision=512)
    print("  Im alpha          =", rep.lhs.to_str(25))
    print("  valuation pairing =", rep.t_form.to_str(25))
    print("  defect * log q / 2 pi =", rep.rational, " (T/S forms overlap: %s)"
          % rep.forms_overlap)
    print("  identity holds mod (2 pi/log q) Q:", rep.ok)
