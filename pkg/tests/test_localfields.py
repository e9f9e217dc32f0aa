import random
from fractions import Fraction

import pytest

from oracles import conic_solvable_bruteforce
from symmetroid.localfields import (INV_HALF, INV_ZERO, REAL, hilbert_symbol,
                                    is_square_at, normalize_place,
                                    quaternion_invariant, relevant_places,
                                    square_class)

PLACES = [REAL, 2, 3, 5, 7, 11, 13]


def _rand_rat(rng):
    a = 0
    while a == 0:
        a = Fraction(rng.randint(-40, 40), rng.randint(1, 24))
    return a


def test_spec_examples():
    assert hilbert_symbol(1, 11, 7) == 1
    assert hilbert_symbol(-1, -1, REAL) == -1
    assert hilbert_symbol(2, 5, 5) == -1
    assert quaternion_invariant(1, 7, 3) == INV_ZERO
    assert quaternion_invariant(-1, -1, REAL) == INV_HALF
    assert quaternion_invariant(2, 5, 5) == INV_HALF
    for v in PLACES:
        assert is_square_at(36, v)
    assert not is_square_at(-4, REAL)
    assert not is_square_at(3, 2)
    assert square_class(3, 2).unit_class == 3


def test_place_normalization():
    assert normalize_place("inf") == REAL
    assert normalize_place("oo") == REAL
    assert normalize_place("7") == 7
    with pytest.raises(ValueError):
        normalize_place(6)
    with pytest.raises(ValueError):
        normalize_place("xyz")


def test_zero_arguments_rejected():
    with pytest.raises(ValueError):
        hilbert_symbol(0, 3, 5)
    with pytest.raises(ValueError):
        square_class(0, REAL)


def test_symmetry_and_square_invariance():
    rng = random.Random(4)
    for _ in range(300):
        a, b = _rand_rat(rng), _rand_rat(rng)
        v = rng.choice(PLACES)
        assert hilbert_symbol(a, b, v) == hilbert_symbol(b, a, v)
        c = _rand_rat(rng)
        assert hilbert_symbol(a * c * c, b, v) == hilbert_symbol(a, b, v)


def test_bimultiplicativity():
    rng = random.Random(8)
    for v in PLACES:
        for _ in range(1000):
            a, b, b2 = (_rand_rat(rng) for _ in range(3))
            assert hilbert_symbol(a, b * b2, v) == \
                hilbert_symbol(a, b, v) * hilbert_symbol(a, b2, v)


def test_special_identities():
    rng = random.Random(15)
    for _ in range(400):
        a = _rand_rat(rng)
        v = rng.choice(PLACES)
        assert hilbert_symbol(a, -a, v) == 1
        if a != 1:
            assert hilbert_symbol(a, 1 - a, v) == 1


def test_product_formula():
    rng = random.Random(16)
    for _ in range(1000):
        a, b = _rand_rat(rng), _rand_rat(rng)
        prod = 1
        for v in relevant_places(a, b):
            prod *= hilbert_symbol(a, b, v)
        assert prod == 1, (a, b)


def test_brute_force_agreement_sample():
    # the full |a|,|b| <= 30 sweep runs in the acceptance suite; here a
    # randomized slice guards the formulas during development
    rng = random.Random(21)
    for _ in range(250):
        p = rng.choice([2, 3, 5, 7, 11, 13])
        a = rng.randint(-30, 30)
        b = rng.randint(-30, 30)
        if a == 0 or b == 0:
            continue
        want = conic_solvable_bruteforce(a, b, p)
        assert (hilbert_symbol(a, b, p) == 1) == want, (a, b, p)


def test_square_class_canonical_fields():
    sc = square_class(Fraction(50, 3), 5)
    assert sc.val_parity == 0  # v_5(50/3) = 2
    sc2 = square_class(Fraction(2, 5), 5)
    assert sc2.val_parity == 1
    sr = square_class(-7, REAL)
    assert sr.sign == -1 and not sr.is_square()
