# # Checking the Stasheff identities
#
# SI(N) is quadratic in the multiplications.  We pair it with one more
# element through the natural form and check every basis tuple.

from dqpcy import AInfinityStructure, load_bundled, verify_cyclicity, verify_pcy, verify_si

qp3 = AInfinityStructure(load_bundled("qp3").bracket)

# ## Positive case
#
# The bundled quasi-Poisson example satisfies SI(N) for every N tried.

for rep in verify_si(qp3, 6, mode="exhaustive"):
    print(f"SI({rep.N}): {rep.tuples_checked:6d} tuples, ok = {rep.ok}")

# ## Cyclicity and the pre-Calabi-Yau conditions

print("cyclic up to m_6:", verify_cyclicity(qp3, 6).ok)
for name, rep in verify_pcy(qp3, 6).items():
    print(f"{name}: ok = {rep.ok} on {rep.checked} cases")

# ## Negative control
#
# The double Poisson example with tau forced to 1 is no longer
# quasi-Poisson.  SI(5) notices, and only on the alternating pattern.

bad = AInfinityStructure(load_bundled("dp3").bracket.with_tau(1))
rep = verify_si(bad, 5, mode="exhaustive", n_min=5)[0]
print(f"SI(5) with tau = 1 on dp3: {rep.violation_count} violations")
tup, value = rep.violations[0]
print("witness:", tup, "->", value)

# ## Sampling
#
# Large N is sampled with a seeded generator, so reruns agree exactly.

a = verify_si(qp3, 8, mode="sampled", samples=50, seed=3, n_min=8)[0]
b = verify_si(qp3, 8, mode="sampled", samples=50, seed=3, n_min=8)[0]
print("SI(8) sampled:", a.ok, " reproducible:", a.violations == b.violations)
