import itertools

import pytest
from hypothesis import given, strategies as st

from conftest import matrices
from recolle.gf2 import (BitMatrix, LinearSpan, NoSolution, Subspace, all_matrices, general_linear_group,
                         image, image_and_cokernel, kernel_basis, pullback, pushout, rref, solve, solve_right)


def brute_image(m: BitMatrix) -> set[int]:
    return {m.apply(v) for v in range(1 << m.ncols)}


def brute_kernel(m: BitMatrix) -> set[int]:
    return {v for v in range(1 << m.ncols) if m.apply(v) == 0}


def span_set(s: Subspace) -> set[int]:
    out = {0}
    for b in s.vectors:
        out |= {x ^ b for x in out}
    return out


@given(matrices())
def test_rank_is_log_of_image_size(m):
    assert 1 << m.rank() == len(brute_image(m))


@given(matrices())
def test_kernel_matches_brute_force(m):
    k = kernel_basis(m)
    assert span_set(k) == brute_kernel(m)
    assert k.dim + m.rank() == m.ncols


@given(matrices())
def test_image_and_cokernel(m):
    im, d, proj = image_and_cokernel(m)
    assert span_set(im) == brute_image(m)
    assert d == m.nrows - m.rank()
    assert (proj @ m).is_zero() and proj.rank() == d


@given(matrices())
def test_rref_transform(m):
    red, pivots, tr = rref(m)
    assert tr @ m == red and tr.is_invertible()
    assert len(pivots) == m.rank()


@given(matrices(nrows=3), matrices(nrows=3, max_cols=3))
def test_solve_agrees_with_image_membership(f, t):
    solvable = all(c in brute_image(f) for c in t.columns())
    try:
        g = solve(f, t)
    except NoSolution:
        assert not solvable
    else:
        assert solvable and f @ g == t


@given(matrices(ncols=3), matrices(max_rows=3, ncols=3))
def test_solve_right(e, t):
    try:
        x = solve_right(e, t)
    except NoSolution:
        return
    assert x @ e == t


def test_solve_returns_minimal_solution():
    f = BitMatrix.from_rows([[1, 1, 0]])
    assert solve(f, BitMatrix.from_rows([[1]])).columns() == [0b001]


@given(matrices(), matrices())
def test_product_and_transpose(a, b):
    if a.ncols != b.nrows:
        return
    assert (a @ b).T == b.T @ a.T
    for v in range(1 << b.ncols):
        assert (a @ b).apply(v) == a.apply(b.apply(v))


@pytest.mark.parametrize("n,order", [(0, 1), (1, 1), (2, 6), (3, 168)])
def test_general_linear_group_orders(n, order):
    group = general_linear_group(n)
    assert len(group) == order
    assert all(g @ g.inverse() == BitMatrix.identity(n) for g in group)


def test_all_matrices_count():
    assert len(list(all_matrices(2, 3))) == 64


@given(matrices(nrows=3), matrices(nrows=3))
def test_pullback_dimension(f, g):
    d, p1, p2 = pullback(f, g)
    assert f @ p1 == g @ p2
    brute = sum(1 for a, b in itertools.product(range(1 << f.ncols), range(1 << g.ncols))
                if f.apply(a) == g.apply(b))
    assert 1 << d == brute


@given(matrices(ncols=3), matrices(ncols=3))
def test_pushout_dimension(f, g):
    d, q1, q2 = pushout(f, g)
    assert q1 @ f == q2 @ g
    assert d == f.nrows + g.nrows - BitMatrix.vstack([f, g]).rank()


@given(matrices())
def test_json_round_trip(m):
    assert BitMatrix.from_json(m.to_json()) == m


@given(st.lists(st.integers(0, 31), max_size=6), st.integers(0, 31))
def test_linear_span(vectors, v):
    span = LinearSpan(vectors)
    reachable = {0}
    for b in vectors:
        reachable |= {x ^ b for x in reachable}
    assert 1 << span.rank == len(reachable)
    assert span.contains(v) == (v in reachable)
    if v in reachable:
        c = span.coordinates(v)
        acc = 0
        for i, b in enumerate(vectors):
            if c >> i & 1:
                acc ^= b
        assert acc == v
    for rel in span.relations:
        acc = 0
        for i, b in enumerate(vectors):
            if rel >> i & 1:
                acc ^= b
        assert acc == 0
    assert len(span.relations) == len(vectors) - span.rank


def test_bad_shapes_rejected():
    with pytest.raises(ValueError):
        BitMatrix(1, 1, (2,))
    with pytest.raises(ValueError):
        BitMatrix.identity(2) @ BitMatrix.identity(3)


def test_subspace_canonical():
    a = Subspace.span(3, [0b011, 0b110])
    b = Subspace.span(3, [0b101, 0b011])
    assert a == b and a.dim == 2
    assert image(BitMatrix.identity(3)) == Subspace.full(3)
