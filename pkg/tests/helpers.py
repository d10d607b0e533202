"""Shared fixtures: golden values and the three reference parameter sets."""

import numpy as np

from orderedbeta import validate_params

# complete-integral golden values (z = 1)
GOLD1 = 0.4868940470437834231542713481277
GOLD2 = 9.9752436394601281551585749018468e-6
GOLD3 = 4.2217553528914884124401921234246e-33

# per-method printed values for the n=100 set (agreement bands)
GOLD3_TAYLOR_N50 = 4.221755352891131e-33
GOLD3_CHEB_N20 = 4.221755352891663e-33


def set1():
    return validate_params([0.8, 0.3, 1.5], [0.4, 1.7, 0.8])


def set2():
    return validate_params([50.8, 0.3, 1.5], [0.4, 1.7, 0.8])


def set3():
    i = np.arange(1, 101)
    a = (2 * i - 1) / 200.0
    return validate_params(a, 1.0 - a)


def random_params(rng, n, lo=0.2, hi=3.0):
    return validate_params(lo + (hi - lo) * rng.random(n), lo + (hi - lo) * rng.random(n))


def rel_err(value, truth):
    return abs(value - truth) / abs(truth)
