"""The quintic operator end to end: coefficients, checks, instantons, powers."""

from cyeq import load_dataset, dataset_index
from cyeq.frobenius import holomorphic_coeffs, yukawa_instantons, fingerprint, powers_of
from cyeq.criteria import classify

D = dataset_index(load_dataset())["1"].operator
print("operator #1:", D)

A = holomorphic_coeffs(D, 6)
print("A_0..A_5:", [int(a) for a in A])

v = classify(D, N=200, M=200)
for c in (v.c1, v.c2, v.c3, v.c4, v.c5):
    print("  %-5s %s" % ("ok" if c.ok else "FAIL", c.detail))
print("Calabi-Yau:", v.overall)

rep = yukawa_instantons(D, 5)
print("N_1..N_5:", [int(n) for n in rep.N])
print("fingerprint:", fingerprint(rep))

pe = powers_of(D, 50)
print("q/z is a %d-th power, y0 a %d-th power" % (pe.r, pe.s))
