"""A small fact4 sweep that rediscovers operator #15."""

from fractions import Fraction as F

from cyeq import load_dataset, dataset_index
from cyeq.search import SweepConfig, sweep_step1, filter_step2

cfg = SweepConfig(family="fact4", A=(6, 8), B=(1, 3), c=(3, 3),
                  spectra=((F(1, 3), F(2, 3)),), N=50, M=200)
step1 = sweep_step1(cfg, jobs=2)
kept = filter_step2(step1, depth=20)
print("step 1: %d candidates, step 2: %d kept" % (len(step1), len(kept)))

target = dataset_index(load_dataset())["15"].operator
for c in kept:
    mark = "  <- #15" if c.operator == target else ""
    print(c.rescaled.label(), "fingerprint", c.step2[1], mark)
