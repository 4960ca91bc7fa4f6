from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistss.linalg import (
    Mat,
    QuotientSpace,
    SubspaceBasis,
    image,
    kernel,
    preimage,
    rref,
    solve_particular,
    span_in_quotient,
    vec,
)

F = Fraction


def small_rationals():
    return st.builds(F, st.integers(-4, 4), st.integers(1, 3))


def small_matrices(max_dim=5):
    return st.integers(1, max_dim).flatmap(
        lambda r: st.integers(1, max_dim).flatmap(
            lambda c: st.lists(
                st.lists(small_rationals(), min_size=c, max_size=c),
                min_size=r,
                max_size=r,
            ).map(lambda rows: Mat(rows, cols=c))
        )
    )


# -- rref -------------------------------------------------------------------


def test_rref_identity():
    r, piv = rref(Mat.identity(3))
    assert r == Mat.identity(3)
    assert piv == (0, 1, 2)


def test_rref_rank_one():
    r, piv = rref(Mat([[2, 4], [1, 2]]))
    assert r == Mat([[1, 2], [0, 0]])
    assert piv == (0,)


def test_rref_zero():
    r, piv = rref(Mat.zeros(2, 3))
    assert r == Mat.zeros(2, 3)
    assert piv == ()


@given(small_matrices())
@settings(max_examples=60, deadline=None)
def test_rref_idempotent(m):
    r, piv = rref(m)
    r2, piv2 = rref(r)
    assert r2 == r and piv2 == piv


# -- degenerate shapes --------------------------------------------------------


def test_empty_matrices():
    zero_rows = Mat.zeros(0, 3)
    assert kernel(zero_rows) == SubspaceBasis.full(3)
    assert image(zero_rows).ambient_dim == 0
    assert solve_particular(zero_rows, ()) == (0, 0, 0)

    zero_cols = Mat.zeros(3, 0)
    assert kernel(zero_cols).ambient_dim == 0
    assert image(zero_cols) == SubspaceBasis.zero(3)
    assert solve_particular(zero_cols, vec([0, 0, 0])) == ()
    assert solve_particular(zero_cols, vec([1, 0, 0])) is None

    assert preimage(zero_rows, SubspaceBasis.zero(0)) == SubspaceBasis.full(3)


def test_empty_matrix_needs_column_count():
    with pytest.raises(ValueError):
        Mat([])
    assert Mat([], cols=4).cols == 4


# -- kernel / image -----------------------------------------------------------


def test_kernel_identity_trivial():
    assert kernel(Mat.identity(4)).dim == 0


def test_kernel_sum_functional():
    k = kernel(Mat([[1, 1]]))
    assert k.rows == (vec([1, -1]),)


def test_image_zero():
    assert image(Mat.zeros(3, 2)).dim == 0


@given(small_matrices())
@settings(max_examples=80, deadline=None)
def test_rank_nullity(m):
    assert kernel(m).dim + image(m).dim == m.cols


@given(small_matrices())
@settings(max_examples=60, deadline=None)
def test_kernel_vectors_map_to_zero(m):
    for row in kernel(m).rows:
        assert all(x == 0 for x in m.apply(row))


# -- canonicality --------------------------------------------------------------


@given(small_matrices(), st.randoms(use_true_random=False))
@settings(max_examples=50, deadline=None)
def test_canonical_basis_independent_of_generators(m, rng):
    rows = [m.row(i) for i in range(m.rows)]
    shuffled = list(rows)
    rng.shuffle(shuffled)
    # also mix in a random row combination
    if len(shuffled) >= 2:
        combo = tuple(a + 2 * b for a, b in zip(shuffled[0], shuffled[1]))
        shuffled.append(combo)
    s1 = SubspaceBasis.span(m.cols, rows)
    s2 = SubspaceBasis.span(m.cols, shuffled)
    assert s1 == s2


# -- solve_particular -----------------------------------------------------------


def test_solve_identity():
    b = vec([3, -1, F(1, 2)])
    assert solve_particular(Mat.identity(3), b) == b


def test_solve_frees_zeroed():
    assert solve_particular(Mat([[1, 1]]), vec([3])) == vec([3, 0])


def test_solve_inconsistent():
    assert solve_particular(Mat([[1], [0]]), vec([0, 1])) is None


@given(small_matrices(), st.data())
@settings(max_examples=60, deadline=None)
def test_solve_reproduces_target(m, data):
    x = vec(data.draw(st.lists(small_rationals(), min_size=m.cols, max_size=m.cols)))
    b = m.apply(x)
    sol = solve_particular(m, b)
    assert sol is not None
    assert m.apply(sol) == b


# -- preimage ---------------------------------------------------------------------


def test_preimage_full_codomain():
    m = Mat([[1, 2], [3, 4]])
    assert preimage(m, SubspaceBasis.full(2)) == SubspaceBasis.full(2)


def test_preimage_identity():
    w = SubspaceBasis.span(2, [vec([1, 1])])
    assert preimage(Mat.identity(2), w) == w


def test_preimage_of_zero_is_kernel():
    m = Mat([[1, 0], [0, 0]])
    assert preimage(m, SubspaceBasis.zero(2)).rows == (vec([0, 1]),)


@given(small_matrices())
@settings(max_examples=60, deadline=None)
def test_preimage_of_image_is_everything(m):
    assert preimage(m, image(m)) == SubspaceBasis.full(m.cols)


# -- quotient spaces ---------------------------------------------------------------


def test_quotient_reps_and_projection():
    z = SubspaceBasis.full(2)
    b = SubspaceBasis.span(2, [vec([1, 1])])
    q = QuotientSpace(z, b)
    assert q.dim == 1
    # project respects the denominator: (1,1) is the zero class
    assert q.project(vec([1, 1])) == (F(0),)
    v = vec([2, 5])
    c = q.project(v)
    assert q.project(q.lift(c)) == c
    # v - lift(c) must be in the denominator
    residual = tuple(a - b_ for a, b_ in zip(v, q.lift(c)))
    assert b.contains(residual)


def test_coords_in_echelon_basis():
    s = SubspaceBasis.span(3, [vec([1, 0, 2]), vec([0, 1, 1])])
    v = vec([3, -2, 4])
    c = s.coords(v)
    assert c == (F(3), F(-2))
    assert s.coords(vec([0, 0, 1])) is None


def test_quotient_requires_containment():
    with pytest.raises(ValueError):
        QuotientSpace(
            SubspaceBasis.span(2, [vec([1, 0])]), SubspaceBasis.span(2, [vec([0, 1])])
        )


def test_span_in_quotient():
    q = QuotientSpace(SubspaceBasis.full(3), SubspaceBasis.span(3, [vec([0, 0, 1])]))
    s = span_in_quotient(q, [vec([1, 0, 0]), vec([2, 0, 5])])
    assert s.dim == 1


@given(small_matrices())
@settings(max_examples=40, deadline=None)
def test_quotient_project_lift_roundtrip(m):
    z = SubspaceBasis.full(m.cols)
    b = kernel(m)
    q = QuotientSpace(z, b)
    for rep in q.coset_reps:
        c = q.project(rep)
        assert q.lift(c) == rep
    for row in b.rows:
        assert q.is_zero_class(row)
        assert all(x == 0 for x in q.project(row))
