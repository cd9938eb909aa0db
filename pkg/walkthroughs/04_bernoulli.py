# # The Bernoulli identities behind the construction
#
# The quasi-Poisson condition turns SI(N) for even products into identities
# among the coefficients C_{i,j}.  We check them exactly and then replace
# the Bernoulli numbers with free weights.

import random
from fractions import Fraction

from dqpcy import bernoulli, c_coeff, check_ide, residual_bcm, residual_cgen
from dqpcy.identities import admissible_triples, random_weights, script_e, script_e_split

print([str(bernoulli(m)) for m in range(0, 11, 2)])

# ## The smallest instance

lhs = c_coeff(2, 3) + 2 * c_coeff(1, 4)
print(lhs, c_coeff(1, 2) ** 2, residual_cgen(1, 1, 3))

# ## The whole grid up to 2k + 1 = 13

print(all(residual_cgen(*t) == 0 for k in range(2, 7) for t in admissible_triples(k)))
print(all(residual_bcm(k, a, b, 2 * k - 1 - a - b) == 0
          for k in range(2, 9) for a in range(2 * k) for b in range(2 * k - a)))

# ## Free weights
#
# With arbitrary weights the individual residuals are no longer zero, yet
# the C-identity is still the stated combination of two Bernoulli-type
# residuals.  That is an identity of bilinear forms.

w = random_weights(random.Random(1), 14)
print("residual with free weights:", residual_cgen(2, 3, 4, weights=w))
print("combination matches:", all(check_ide(*t, w) == 0
                                  for k in range(2, 7) for t in admissible_triples(k)))

# ## The sums E(l1, l2, l3)

print(script_e(3, 3, 3) == script_e_split(3, 3, 3), script_e(1, 1, 5) == 0,
      script_e(2, 3, 4, w) == script_e(4, 3, 2, w), Fraction(0) == script_e(3, 1, 5))
