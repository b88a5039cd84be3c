# Walkthrough: the closure of the argument image inside the torus.
#
# The single-valued argument map lands in the product of circles indexed by
# the infinite places.  The dimension of the closure of its image is the
# rank of the incidence vectors eps_{P,P'}(v) in {1,-1,0} recording whether
# sigma_v carries P to P' or to its conjugate.  For completely split p the
# vectors span everything and the image is dense.

from pweil.cyclo import CycloField
from pweil.splitting import split_prime
from pweil.regulators import closure_dimension, epsilon_vector

field = CycloField(5)

for p in (11, 19, 31, 41, 61, 71):
    split = split_prime(field, p)
    rep = closure_dimension(split)
    print("p = %2d: f = %d, |S| = %d, closure dim = %d of %d, dense = %s"
          % (p, split.f, len(split.S), rep.dimension, rep.torus_dimension, rep.dense))

# the eps vectors themselves for the split case, with their exact relations
split = split_prime(field, 11)
for i in split.S:
    for j in split.S:
        e = epsilon_vector(split, i, j)
        print("eps[%s,%s] = %s" % (split.primes[i].label, split.primes[j].label, e))
        cj = split.conj_index(j)
        assert tuple(-x for x in e) == epsilon_vector(split, i, cj)

# a partially split case where the closure is a proper subtorus
field8 = CycloField(8)
for p in (3, 5, 13, 17):
    split = split_prime(field8, p)
    rep = closure_dimension(split)
    print("n=8, p=%2d: closure dim %d of %d, annihilator basis %s"
          % (p, rep.dimension, rep.torus_dimension, [list(r) for r in rep.c_hat_basis]))
