"""Build a Hadamard product of two Apery-like sequences and recover its operator."""

from math import comb

from cyeq import load_dataset, dataset_index
from cyeq.exact import PowerSeries
from cyeq.constructions import hadamard_series, fit_operator, FitSpec
from cyeq.operator import apply

N = 80
a = PowerSeries([comb(2 * n, n) ** 2 for n in range(N)])
b = PowerSeries([sum(comb(n, k) ** 2 * comb(n + k, k) for k in range(n + 1)) for n in range(N)])
A = hadamard_series(a, b)

D = fit_operator(A, FitSpec(max_order=4, max_degree=2))
print("fitted:", D)
print("annihilates all %d terms:" % N, not any(apply(D, A).coeffs))
print("equals dataset #25:", D == dataset_index(load_dataset())["25"].operator)
