# # Double brackets on a truncated polynomial ring
#
# We build Q[t]/(t^3), put a double bracket on it and ask whether the
# bracket is double Poisson, double quasi-Poisson, or neither.

from fractions import Fraction

from dqpcy import (DoubleBracket, check_db1, check_db2, e3_closed_form, is_double_poisson,
                   is_quasi_poisson, monogenic_bracket, triple_bracket,
                   truncated_polynomial_algebra, validate_algebra)
from dqpcy.algebra import basis_vec

# ## The algebra
#
# Basis 1, t, t^2 with structure constants e_i e_j = e_{i+j}.

A = truncated_polynomial_algebra(3)
print(A.basis_names, validate_algebra(A).ok)

# ## A bracket determined by its value on the generator
#
# Index 0 is 1 and index 2 is t^2, so {t, t} = 1/2 (t^2 (x) 1 - 1 (x) t^2)
# reads {(2, 0): 1/2, (0, 2): -1/2}.  Leibniz and skew-symmetry fix the rest.

half = Fraction(1, 2)
table = monogenic_bracket(A, {(2, 0): half, (0, 2): -half}, power_of=[0, 1, 2])
qp = DoubleBracket(A, table, tau=1)
print("skew:", check_db1(qp).ok, " Leibniz:", check_db2(qp).ok)

# ## The triple bracket
#
# For a double Poisson bracket it vanishes.  Here it does not; instead it
# matches tau times the E^3 correction term.

t = basis_vec(1)
print("triple(t,t,t) =", triple_bracket(qp, t, t, t))
print("E^3 term       =", e3_closed_form(A, t, t, t))
print("double Poisson:", is_double_poisson(qp).ok, " quasi-Poisson:", is_quasi_poisson(qp).ok)

# ## The same ring with {t, t} = t (x) 1 - 1 (x) t
#
# This one is double Poisson, so it is quasi-Poisson only for tau = 0.

dp = DoubleBracket(A, monogenic_bracket(A, {(1, 0): 1, (0, 1): -1}, [0, 1, 2]), tau=0)
print("double Poisson:", is_double_poisson(dp).ok)
bad = is_quasi_poisson(dp, tau=1)
print("quasi-Poisson at tau = 1:", bad.ok, " first witness:", bad.witness)
