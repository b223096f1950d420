from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from siltloc import BACKEND, GF, QQ
from siltloc._kernels import rref_exact, rref_modp, rref_modp_python
from siltloc.errors import Inconsistent

F5 = GF(5)


def matrices(p=5, max_side=6):
    return st.integers(0, max_side).flatmap(
        lambda r: st.integers(0, max_side).flatmap(
            lambda c: st.lists(st.integers(0, p - 1), min_size=r * c, max_size=r * c).map(
                lambda xs: np.array(xs, dtype=np.int64).reshape(r, c))))


def test_empty_matrix_has_rank_zero():
    assert F5.rank(F5.zeros(0, 0)) == 0


def test_identity_rank_and_pivots():
    _, rank, piv = F5.rref(F5.eye(3))
    assert rank == 3 and piv == [0, 1, 2]


def test_rational_rank_one():
    # second row is twice the first
    assert QQ.rank(QQ.array([[1, 2], [2, 4]])) == 1


def test_solve_zero_system():
    sol = F5.solve(F5.zeros(2, 2), F5.zeros(2, 1))
    assert sol.nullspace.shape[1] == 2


def test_solve_identity():
    sol = F5.solve(F5.eye(2), F5.array([[1], [2]]))
    assert sol.particular[:, 0].tolist() == [1, 2]
    assert sol.nullspace.shape[1] == 0


def test_solve_underdetermined_matches_enumeration():
    m, rhs = F5.array([[1, 1]]), F5.array([[3]])
    sol = F5.solve(m, rhs)
    assert sol.particular[:, 0].tolist() == [3, 0]
    assert sol.nullspace.shape[1] == 1
    # all 25 vectors: exactly 5 solutions
    hits = [(x, y) for x in range(5) for y in range(5) if (x + y) % 5 == 3]
    assert len(hits) == 5 ** sol.nullspace.shape[1]


def test_inconsistent_system_raises():
    with pytest.raises(Inconsistent):
        F5.solve(F5.zeros(1, 1), F5.array([[1]]))


@pytest.mark.parametrize("m, ker, coker", [
    (F5.zeros(2, 2), 2, 2),
    (F5.eye(2), 0, 0),
    (QQ.array([[1, 0], [0, 0]]), 1, 1),
])
def test_kernel_and_cokernel_dims(m, ker, coker):
    f = QQ if m.dtype == object else F5
    assert f.kernel_basis(m).shape[1] == ker
    assert f.cokernel_projection(m)[1] == coker


def test_field_parse_and_scalars():
    assert GF(7).p == 7
    assert F5.inv(2) == 3
    assert QQ.scalar(Fraction(1, 2)) * 2 == 1
    with pytest.raises(ValueError):
        GF(6)


def test_backend_is_reported():
    assert BACKEND in ("cython", "python")


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_rank_equals_rank_of_rref(m):
    r, rank, _ = F5.rref(m)
    assert F5.rank(r) == rank


@settings(max_examples=80, deadline=None)
@given(matrices(), st.integers(0, 2 ** 31))
def test_solve_recovers_solution_modulo_nullspace(m, seed):
    rng = np.random.default_rng(seed)
    x = F5.random(m.shape[1], 1, rng)
    sol = F5.solve(m, F5.matmul(m, x))
    diff = F5.sub(x, sol.particular)
    assert F5.is_zero(F5.matmul(m, sol.particular) - F5.matmul(m, x))
    assert F5.in_span(sol.nullspace, diff[:, 0]) if m.shape[1] else True


@settings(max_examples=60, deadline=None)
@given(matrices(p=7))
def test_compiled_and_python_kernels_agree(m):
    a, b = m.copy(), m.copy()
    pa = rref_modp(a, 7) if a.size else []
    pb = rref_modp_python(b, 7) if b.size else []
    assert list(pa) == list(pb)
    assert np.array_equal(a, b)


@settings(max_examples=40, deadline=None)
@given(matrices(p=5, max_side=4))
def test_rational_and_modular_rank_bound(m):
    # rank over Q of an integer matrix is at least its rank mod 5
    q = QQ.array(m.tolist()) if m.size else QQ.zeros(*m.shape)
    assert QQ.rank(q) >= F5.rank(m)


def test_rref_exact_on_fractions():
    a = np.array([[Fraction(2), Fraction(4)], [Fraction(1), Fraction(3)]], dtype=object)
    piv = rref_exact(a)
    assert list(piv) == [0, 1]
