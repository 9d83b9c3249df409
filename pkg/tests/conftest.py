import random

import pytest
import sympy as sp

from mouldlab.exactalg import RatFun


def to_sympy(f):
    """Parse the canonical text form (u or v variables, zN symbols) with sympy."""
    if isinstance(f, RatFun):
        f = f.to_str()
    return sp.sympify(str(f).replace("^", "**"))


def same(f, expected):
    return sp.simplify(to_sympy(f) - sp.sympify(expected)) == 0


@pytest.fixture
def rng():
    return random.Random(20240501)
