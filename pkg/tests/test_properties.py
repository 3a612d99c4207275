"""Property-based checks with hypothesis for the algebraic core."""

from fractions import Fraction

from hypothesis import given, settings, strategies as st

from mplverify import MaxPlusMatrix, mat_vec, parse
from mplverify.dbm import DBM, EMPTY, AffineDynamics, image, intersect, preimage, sample

entry = st.one_of(st.none(), st.integers(min_value=-9, max_value=9))


@st.composite
def regular_matrix(draw, n_min=2, n_max=4):
    n = draw(st.integers(n_min, n_max))
    rows = []
    for _ in range(n):
        row = draw(st.lists(entry, min_size=n, max_size=n))
        if all(v is None for v in row):
            row[draw(st.integers(0, n - 1))] = draw(st.integers(-9, 9))
        rows.append(row)
    return MaxPlusMatrix.from_rows(rows)


@st.composite
def dbm_and_dynamics(draw, n_min=2, n_max=3):
    n = draw(st.integers(n_min, n_max))
    cons = draw(
        st.lists(
            st.tuples(
                st.integers(0, n - 1),
                st.integers(0, n - 1),
                st.integers(-5, 5),
                st.booleans(),
            ),
            max_size=6,
        )
    )
    d = DBM.from_constraints(n, [c for c in cons if c[0] != c[1]])
    g = tuple(draw(st.integers(0, n - 1)) for _ in range(n))
    offs = tuple(draw(st.integers(-5, 5)) for _ in range(n))
    return d, AffineDynamics(g, offs)


@settings(max_examples=60, deadline=None)
@given(regular_matrix(), regular_matrix(), regular_matrix())
def test_matrix_product_associative(a, b, c):
    if not (a.n == b.n == c.n):
        return
    assert ((a @ b) @ c).entries == (a @ (b @ c)).entries


@settings(max_examples=60, deadline=None)
@given(regular_matrix(), st.integers(-30, 30), st.lists(st.integers(-30, 30), min_size=2, max_size=4))
def test_mat_vec_shift_invariant(a, alpha, x):
    if len(x) != a.n:
        return
    shifted = mat_vec(a, [v + alpha for v in x])
    assert shifted == tuple(v + alpha for v in mat_vec(a, x))


@settings(max_examples=100, deadline=None)
@given(dbm_and_dynamics())
def test_canonicalization_idempotent(dd):
    d, _ = dd
    c = d.canonicalize()
    if c is EMPTY:
        assert intersect(d, DBM.universe(d.n)) is EMPTY
    else:
        assert DBM(c.n, c.bounds).canonicalize().bounds == c.bounds
        assert c.contains(sample(c))


@settings(max_examples=100, deadline=None)
@given(dbm_and_dynamics(), st.lists(st.integers(-20, 20), min_size=2, max_size=3))
def test_preimage_adjunction(dd, x):
    d, dyn = dd
    c = d.canonicalize()
    if c is EMPTY or len(x) != c.n:
        return
    pre = preimage(c, dyn)
    member = pre is not EMPTY and pre.contains(x)
    assert member == c.contains(dyn.apply_scaled(x))


@settings(max_examples=100, deadline=None)
@given(dbm_and_dynamics())
def test_image_contains_mapped_samples(dd):
    d, dyn = dd
    c = d.canonicalize()
    if c is EMPTY:
        return
    img = image(c, dyn)
    assert img is not EMPTY
    assert img.contains(dyn.apply_scaled(sample(c)))


@settings(max_examples=60, deadline=None)
@given(st.recursive(
    st.sampled_from(["t1 <= 5", "t2 >= 3", "true", "false"]),
    lambda sub: st.one_of(
        st.tuples(st.sampled_from(["!", "X ", "F ", "G "]), sub).map(lambda t: f"{t[0]}({t[1]})"),
        st.tuples(sub, st.sampled_from([" & ", " | ", " U ", " -> "]), sub).map(
            lambda t: f"({t[0]}){t[1]}({t[2]})"
        ),
    ),
    max_leaves=6,
))
def test_parse_str_round_trip(text):
    f = parse(text)
    assert str(parse(str(f))) == str(f)
