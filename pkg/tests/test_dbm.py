"""DBM regions: canonical form, emptiness, affine images and preimages."""

from fractions import Fraction

import pytest

from mplverify.dbm import (
    DBM,
    EMPTY,
    AffineDynamics,
    Bound,
    TOP,
    ZERO,
    dbms_equal,
    image,
    intersect,
    point_dbm,
    preimage,
    sample,
)


def random_dbm(rng, n, lo=-4, hi=4, density=0.5, scale=1):
    cons = []
    for i in range(n):
        for j in range(n):
            if i != j and rng.random() < density:
                cons.append((i, j, rng.randint(lo, hi) * scale, rng.random() < 0.3))
    return DBM.from_constraints(n, cons)


def random_dynamics(rng, n, scale=1):
    g = tuple(rng.randrange(n) for _ in range(n))
    offsets = tuple(rng.randint(-5, 5) * scale for _ in range(n))
    return AffineDynamics(g, offsets)


def test_bound_ordering():
    assert Bound(3, True) < Bound(3, False)
    assert Bound(2, False) < Bound(3, True)
    assert Bound(3, False) < TOP
    assert Bound(0, True) < ZERO
    assert Bound(5, False).add(Bound(-2, True)) == Bound(3, True)
    assert Bound(5, False).shift(2) == Bound(7, False)
    assert TOP.add(Bound(1, False)) == TOP
    assert Bound(2, False).admits(2)
    assert not Bound(2, True).admits(2)


def test_universe_and_simple_emptiness():
    u = DBM.universe(3)
    assert u.canonicalize() is u
    assert u.contains((5, -7, 0))
    # x1 - x2 in [-3, -1] is satisfiable, x1 - x2 in (0, 0) is not
    d = DBM.from_constraints(2, [(0, 1, -1, False), (1, 0, 3, False)])
    assert d.canonicalize() is not EMPTY
    d = DBM.from_constraints(2, [(0, 1, 0, True), (1, 0, 0, True)])
    assert d.canonicalize() is EMPTY
    # strict boundary: x1 - x2 <= 0 and x2 - x1 <= 0 pins the difference
    d = DBM.from_constraints(2, [(0, 1, 0, False), (1, 0, 0, False)]).canonicalize()
    assert d.contains((3, 3))
    assert not d.contains((3, 2))


def test_strictness_matters_for_emptiness():
    # x1 - x2 < 0 together with x2 - x1 <= 0: empty exactly because of <
    strict = DBM.from_constraints(2, [(0, 1, 0, True), (1, 0, 0, False)])
    assert strict.canonicalize() is EMPTY
    non_strict = DBM.from_constraints(2, [(0, 1, 0, False), (1, 0, 0, False)])
    assert non_strict.canonicalize() is not EMPTY


def test_canonicalization_idempotent_and_sample_member(rng):
    for _ in range(1000):
        n = rng.randint(2, 4)
        d = random_dbm(rng, n)
        c = d.canonicalize()
        if c is EMPTY:
            continue
        again = DBM(c.n, c.bounds).canonicalize()
        assert again.bounds == c.bounds
        x = sample(c, rng)
        assert c.contains(x)
        assert d.contains(x)


def test_emptiness_against_grid_oracle(rng):
    """When canonicalization reports empty, no half-step grid point fits."""
    empties = 0
    trials = 0
    while empties < 120 and trials < 2000:
        trials += 1
        n = rng.randint(2, 3)
        d = random_dbm(rng, n, lo=-3, hi=3, density=0.8)
        c = d.canonicalize()
        if c is not EMPTY:
            continue
        empties += 1
        # shift-invariance: pin the last coordinate and grid the rest
        steps = [Fraction(v, 2) for v in range(-10, 11)]
        found = False
        if n == 2:
            points = ([a, Fraction(0)] for a in steps)
        else:
            points = ([a, b, Fraction(0)] for a in steps for b in steps)
        for x in points:
            if d.contains(x):
                found = True
                break
        assert not found, "canonicalization declared a satisfiable DBM empty"
    assert empties >= 100


def test_intersection_is_conjunction(rng):
    for _ in range(300):
        n = rng.randint(2, 4)
        d1, d2 = random_dbm(rng, n), random_dbm(rng, n)
        both = intersect(d1, d2)
        if both is EMPTY:
            continue
        x = sample(both, rng)
        assert d1.contains(x) and d2.contains(x)
    assert intersect(EMPTY, DBM.universe(2)) is EMPTY


def test_image_preimage_adjunction(rng):
    """x in preimage(D, dyn) iff apply(dyn, x) in D, on random points."""
    checked = 0
    while checked < 1000:
        n = rng.randint(2, 4)
        d = random_dbm(rng, n).canonicalize()
        if d is EMPTY:
            continue
        dyn = random_dynamics(rng, n)
        pre = preimage(d, dyn)
        for _ in range(25):
            x = tuple(Fraction(rng.randint(-20, 20), rng.choice([1, 2])) for _ in range(n))
            lhs = pre is not EMPTY and pre.contains(x)
            rhs = d.contains(dyn.apply_scaled(x))
            assert lhs == rhs
            checked += 1


def test_image_is_exact(rng):
    """Forward images are tight: points of D map into the image, and every
    difference profile of the image is realized by some point of D."""
    done = 0
    while done < 200:
        n = rng.randint(2, 4)
        d = random_dbm(rng, n).canonicalize()
        if d is EMPTY:
            continue
        dyn = random_dynamics(rng, n)
        img = image(d, dyn)
        assert img is not EMPTY
        x = sample(d, rng)
        assert img.contains(dyn.apply_scaled(x))
        y = sample(img, rng)
        back = intersect(d, preimage(point_dbm(y), dyn))
        assert back is not EMPTY, "image contains an unrealizable profile"
        done += 1


def test_image_pins_equal_coefficients():
    d = DBM.universe(2)
    dyn = AffineDynamics((0, 0), (3, 1))  # both coordinates read x1
    img = image(d, dyn)
    assert img.bound(0, 1) == Bound(2, False)
    assert img.bound(1, 0) == Bound(-2, False)


def test_point_dbm_and_sample_determinism(rng):
    x = (Fraction(3), Fraction(-1), Fraction(0))
    d = point_dbm(x)
    assert d.contains(x)
    assert not d.contains((Fraction(3), Fraction(0), Fraction(0)))
    # sampling without an rng is deterministic
    u = DBM.from_constraints(2, [(0, 1, 4, False), (1, 0, 0, False)]).canonicalize()
    assert sample(u) == sample(u)


def test_constraint_lines_format():
    d = DBM.from_constraints(2, [(0, 1, 3, True), (1, 0, 0, False)])
    assert d.constraint_lines() == ["x1 - x2 < 3", "x2 - x1 <= 0"]
    scaled = DBM.from_constraints(2, [(0, 1, 2500000, False)])
    assert scaled.constraint_lines(10**6) == ["x1 - x2 <= 2.5"]


def test_dbms_equal(rng):
    for _ in range(50):
        d = random_dbm(rng, 3)
        c = d.canonicalize()
        if c is not EMPTY:
            # equality is modulo canonicalization
            assert dbms_equal(d, c)
    assert dbms_equal(EMPTY, EMPTY)
    assert not dbms_equal(EMPTY, DBM.universe(2))
