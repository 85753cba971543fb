import random

import pytest
from sympy.combinatorics import Permutation, PermutationGroup

from pcengel import corpus
from pcengel.model import validate

# Permutation images of the small-graph generators.  The D8 factors act on
# four points as <(1 3), (0 1)(2 3)>; sympy multiplies left to right, which
# matches the right-action convention x^y = y^-1 x y.
_D8 = (Permutation([[1, 3]], size=10), Permutation([[0, 1], [2, 3]], size=10))
_D8b = (Permutation([[5, 7]], size=10), Permutation([[4, 5], [6, 7]], size=10))


def _t(*pts):
    return Permutation([list(pts)], size=10)


def _comm(u, v):
    return ~u * ~v * u * v


PERM_IMAGES = {
    "COMPLETE_C2_4": {"x": _t(0, 1), "y": _t(2, 3), "a": _t(4, 5), "b": _t(6, 7)},
    "FIVE_EDGE_32": {"w": _comm(*_D8), "x": _D8[0], "y": _D8[1], "a": _t(4, 5), "b": _t(6, 7)},
    "FOUR_EDGE_64": {
        "w": _comm(*_D8), "v": _comm(*_D8b), "x": _D8[0], "y": _D8[1], "a": _D8b[0], "b": _D8b[1],
    },
}
_c = Permutation([[0, 4], [1, 5], [2, 6], [3, 7]], size=10)
PERM_IMAGES["FOUR_EDGE_256"] = {
    "a": _D8[0], "bc": _D8[1], "ac": _D8b[0], "b": _D8b[1], "c": _c, "x": _t(8, 9),
    "w": _comm(_D8[0], _D8[1]), "wc": _comm(_D8b[0], _D8b[1]),
}

SMALL = ("COMPLETE_C2_4", "FIVE_EDGE_32", "FOUR_EDGE_64", "FOUR_EDGE_256")


def perm_of(p, images, e):
    """Image of the normal word of ``e``: x_n^{e_n} ... x_1^{e_1}."""
    out = Permutation(list(range(10)))
    for i in range(p.n, 0, -1):
        out = out * images[p.names[i - 1]] ** e[i - 1]
    return out


def perm_group(name):
    return PermutationGroup(list(PERM_IMAGES[name].values()))


@pytest.fixture(scope="session")
def F():
    return corpus.load_named("F_2_13")


@pytest.fixture(scope="session")
def GB():
    return corpus.load_named("G_BETA")


@pytest.fixture(scope="session")
def GG():
    return corpus.load_named("G_GAMMA")


@pytest.fixture(scope="session")
def small():
    return {n: corpus.load_named(n) for n in SMALL}


def d8_c2():
    """D8 x C2 on (w, x, y, z), order 16; x^y = x w."""
    return validate(
        {
            "name": "D8xC2",
            "generators": [("w", 2), ("x", 2), ("y", 2), ("z", 2)],
            "conj": {(2, 3): ((2, 1), (1, 1))},
        }
    )


def cyclic(n_primes, name="C"):
    """Cyclic group of order prod(n_primes) as a pc presentation x_{k+1}^{p} = x_k."""
    gens = [(f"g{i}", q) for i, q in enumerate(n_primes, start=1)]
    power = {i: ((i - 1, 1),) for i in range(2, len(n_primes) + 1)}
    return validate({"name": name, "generators": gens, "power": power})


def random_element(p, rng=None):
    rng = rng or random.Random(0)
    return tuple(rng.randrange(o) for o in p.orders)
