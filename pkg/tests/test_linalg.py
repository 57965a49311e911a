from fractions import Fraction as Q

import pytest
from hypothesis import given, settings, strategies as st

from rootsuper import linalg

entry = st.integers(min_value=-4, max_value=4).map(Q)


def square(n):
    return st.lists(st.lists(entry, min_size=n, max_size=n), min_size=n, max_size=n)


@settings(max_examples=100, deadline=None)
@given(st.integers(min_value=1, max_value=4).flatmap(square))
def test_inverse_or_singular(A):
    n = len(A)
    if linalg.det(A) == 0:
        assert linalg.rank(A) < n
        with pytest.raises(ZeroDivisionError):
            linalg.inverse(A)
        return
    I = linalg.matmul(A, linalg.inverse(A))
    assert I == [[Q(int(i == j)) for j in range(n)] for i in range(n)]


@settings(max_examples=100, deadline=None)
@given(st.integers(min_value=1, max_value=4).flatmap(
    lambda n: st.tuples(st.lists(st.lists(entry, min_size=n, max_size=n), min_size=1, max_size=4))))
def test_nullspace_is_killed(data):
    (A,) = data
    ns = linalg.nullspace(A, len(A[0]))
    assert len(ns) == len(A[0]) - linalg.rank(A)
    for v in ns:
        assert all(sum(a * x for a, x in zip(row, v)) == 0 for row in A)


def test_det_and_solve():
    A = [[Q(2), Q(1)], [Q(1), Q(3)]]
    assert linalg.det(A) == 5
    x = linalg.solve(A, [Q(3), Q(4)])
    assert linalg.matmul(A, [[c] for c in x]) == [[Q(3)], [Q(4)]]
