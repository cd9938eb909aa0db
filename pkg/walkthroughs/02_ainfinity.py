# # The A-infinity structure on A + A^#[-1]
#
# A double quasi-Poisson bracket induces multiplications m_n on the direct
# sum of A and its shifted dual.  Elements are dictionaries keyed by
# (parity, index): parity 0 for A, parity 1 for the dual basis.

from fractions import Fraction

from dqpcy import AInfinityStructure, MixedTuple, c_coeff, load_bundled, m4_closed_form
from dqpcy.algebra import basis_vec

S = AInfinityStructure(load_bundled("qp3").bracket)
print("tau =", S.tau, " active arities up to 8:", S.active_arities(8))

# ## m_2 is the square-zero extension product

t, t2 = basis_vec(1), basis_vec(2)
f = {2: Fraction(1)}  # the functional dual to t^2
print("m2(t, t)  =", S.m(2, MixedTuple((0, 0), (t, t))))
print("m2(t, f)  =", S.m(2, MixedTuple((0, 1), (t, f))))

# ## m_3 comes from the bracket itself

print("m3(t, f, t) =", S.m(3, MixedTuple((0, 1, 0), (t, f, t))))

# ## Even m_n carry Bernoulli coefficients
#
# C_{1,2} = tau/12 is the first of them, and m_4 has three closed forms.

print("C_12 =", c_coeff(1, 2, S.tau), " C_14 =", c_coeff(1, 4, S.tau))
one = basis_vec(0)
f0, f1 = {0: Fraction(1)}, {1: Fraction(1)}  # duals of 1 and t
cases = (("1010", (f0, t, f1, t)), ("0101", (t, f0, t, f1)), ("0110", (t, f0, f0, t)))
for pattern, xs in cases:
    tup = MixedTuple(tuple(int(c) for c in pattern), xs)
    value = S.m(4, tup)
    print(pattern, value, value == m4_closed_form(S.alg, S.tau, pattern, *xs))
