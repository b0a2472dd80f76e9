"""Reflect #193 at infinity and compare its Yukawa coupling with #198."""

from cyeq import load_dataset, dataset_index
from cyeq.operator import reflect_infinity, local_exponents
from cyeq.frobenius import yukawa_instantons, kq_equivalent

DB = dataset_index(load_dataset())
D = DB["193"].operator
print("exponents of #193 at infinity:", local_exponents(D, "infinity").multiset())

R = reflect_infinity(D, 1)
print("reflected operator equals #198:", R == DB["198"].operator)
w = kq_equivalent(yukawa_instantons(R, 10), yukawa_instantons(DB["198"].operator, 10), 10)
print("K(q) witness:", w)
