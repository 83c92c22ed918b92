import random

import pytest

from ellipq.hpcomplex import HPComplex


@pytest.fixture
def rng():
    return random.Random(20240817)


def rand_hpc(rng, lo=0.1, hi=1.0, prec=256):
    import math

    m = math.exp(rng.uniform(math.log(lo), math.log(hi)))
    ang = rng.uniform(0, 2 * math.pi)
    return HPComplex(m * math.cos(ang), m * math.sin(ang), precision_bits=prec)
