import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from pcengel import collector as col, corpus
from pcengel.model import generator_element, identity, validate
from pcengel.oracle import oracle_multiply, rewrite_normal_form
from pcengel.textio import evaluate, parse_word

from conftest import PERM_IMAGES, SMALL, cyclic, perm_of

# C7 x| C3 with a^b = a^2: mixed primes, nontrivial conjugation exponents.
META21 = validate({"name": "M21", "generators": [("a", 7), ("b", 3)], "conj": {(1, 2): ((1, 2),)}})
# Heisenberg group mod 3: y^x = y z... written x_i^{x_j} with i < j.
HEIS27 = validate(
    {"name": "H27", "generators": [("z", 3), ("y", 3), ("x", 3)], "conj": {(2, 3): ((2, 1), (1, 1))}}
)
C9 = cyclic([3, 3], "C9")
EXTRA = {"M21": META21, "H27": HEIS27, "C9": C9}


def _all(name):
    return EXTRA[name] if name in EXTRA else corpus.load_named(name)


NAMES = list(corpus.NAMES) + list(EXTRA)


def elements_of(p):
    return st.tuples(*(st.integers(0, o - 1) for o in p.orders))


def test_spot_values(F, GG):
    assert col.collect(F, parse_word(F, "x12 x13 x12 x13")) == generator_element(F, "x11")
    assert col.collect(GG, parse_word(GG, "e17 e18 e17 e18")) == generator_element(GG, "e14")
    assert col.collect(F, parse_word(F, "1")) == identity(F)
    al = corpus.aliases_for("F_2_13")
    assert evaluate(F, "[z,x,y,y] [x,y,z,z] [y,z,x,x]", al) == identity(F)


def test_known_small_products():
    a, b = generator_element(META21, "a"), generator_element(META21, "b")
    assert col.conjugate(META21, a, b) == (2, 0)
    assert col.multiply(META21, a, b) == (2, 1)  # a b = b a^2
    assert col.multiply(META21, b, a) == (1, 1)  # already normal
    assert col.multiply(META21, col.multiply(META21, b, a), col.inverse(META21, b)) == (4, 0)
    g = generator_element(C9, "g2")
    assert col.power(C9, g, 3) == (1, 0)
    assert col.power(C9, g, 9) == (0, 0)


def test_inverse_letters_and_negative_exponents(F):
    for i in range(1, F.n + 1):
        assert col.collect(F, ((i, 1), (i, -1))) == identity(F)
        assert col.collect(F, ((i, -1), (i, 1))) == identity(F)


def test_left_normed_commutator(F):
    x, y, z = (generator_element(F, n) for n in ("x12", "x13", "x14"))
    c = col.left_normed_commutator(F, [x, y, z])
    assert c == col.commutator(F, col.commutator(F, x, y), z)
    assert col.left_normed_commutator(F, [x]) == x
    with pytest.raises(ValueError):
        col.left_normed_commutator(F, [])


def test_small_groups_match_permutations(small):
    # exhaustive check that the collector is a homomorphism onto the permutation model
    for name in ("COMPLETE_C2_4", "FIVE_EDGE_32", "FOUR_EDGE_64"):
        p = small[name]
        imgs = PERM_IMAGES[name]
        elems = list(itertools.product(*(range(o) for o in p.orders)))
        perms = {e: perm_of(p, imgs, e) for e in elems}
        assert len(set(perms.values())) == len(elems)
        for a in elems:
            for b in elems:
                assert perms[col.multiply(p, a, b)] == perms[a] * perms[b]


def test_256_group_matches_permutations(small):
    p = small["FOUR_EDGE_256"]
    imgs = PERM_IMAGES["FOUR_EDGE_256"]
    rng = random.Random(3)
    for _ in range(400):
        a = tuple(rng.randrange(2) for _ in p.orders)
        b = tuple(rng.randrange(2) for _ in p.orders)
        assert perm_of(p, imgs, col.multiply(p, a, b)) == perm_of(p, imgs, a) * perm_of(p, imgs, b)


@pytest.mark.properties
@pytest.mark.parametrize("name", NAMES)
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_oracle_equivalence(name, data):
    p = _all(name)
    a, b = data.draw(elements_of(p)), data.draw(elements_of(p))
    assert col.multiply(p, a, b) == oracle_multiply(p, a, b)


@pytest.mark.properties
@pytest.mark.parametrize("name", ["F_2_13", "G_GAMMA", "FOUR_EDGE_256", "M21", "H27"])
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_oracle_on_raw_words(name, data):
    p = _all(name)
    word = data.draw(st.lists(st.tuples(st.integers(1, p.n), st.integers(1, 2)), max_size=12))
    word = [(i, e % p.orders[i - 1] or 1) for i, e in word]
    assert col.collect(p, word) == rewrite_normal_form(p, word)


@pytest.mark.properties
@pytest.mark.parametrize("name", NAMES)
@settings(max_examples=30, deadline=None)
@given(data=st.data())
def test_group_laws(name, data):
    p = _all(name)
    a, b, c = (data.draw(elements_of(p)) for _ in range(3))
    one = identity(p)
    assert col.multiply(p, col.multiply(p, a, b), c) == col.multiply(p, a, col.multiply(p, b, c))
    assert col.multiply(p, a, one) == a == col.multiply(p, one, a)
    assert col.multiply(p, a, col.inverse(p, a)) == one
    k = data.draw(st.integers(-20, 20))
    assert col.power(p, a, k) == col.product(p, [a] * k if k >= 0 else [col.inverse(p, a)] * -k)
    assert col.conjugate(p, a, b) == col.product(p, [col.inverse(p, b), a, b])
    assert col.commutator(p, a, b) == col.product(p, [col.inverse(p, a), col.inverse(p, b), a, b])


@pytest.mark.properties
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_normal_word_round_trip(data):
    p = corpus.load_named("G_BETA")
    e = data.draw(elements_of(p))
    assert col.collect(p, col.normal_word(p, e)) == e
