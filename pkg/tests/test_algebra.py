import numpy as np
import pytest

from siltloc import GF, QQ
from siltloc.algebra import (algebra_from_quiver, opposite_algebra, path_element, quiver, quotient_algebra,
                             t2_algebra)
from siltloc.errors import NotAdmissible, NotFiniteDimensional

F5 = GF(5)


def a2(field=F5):
    return algebra_from_quiver(quiver(2, [("a", 0, 1)]), [], field)


def dual_numbers(field=F5):
    return algebra_from_quiver(quiver(1, [("x", 0, 0)]), [[(1, "x.x")]], field)


def test_a2_path_basis():
    alg = a2()
    assert alg.dim == 3
    assert sorted(alg.labels) == ["a", "e1", "e2"]
    alg.validate()


def test_loop_with_square_relation():
    alg = dual_numbers()
    assert alg.dim == 2
    alg.validate()


def test_free_loop_is_infinite():
    with pytest.raises(NotFiniteDimensional):
        algebra_from_quiver(quiver(1, [("x", 0, 0)]), [], F5)


def test_length_one_relation_rejected():
    with pytest.raises(NotAdmissible):
        algebra_from_quiver(quiver(2, [("a", 0, 1)]), [[(1, "a")]], F5)


def test_linear_a3_with_zero_relation():
    alg = algebra_from_quiver(quiver(3, [("a", 0, 1), ("b", 1, 2)]), [[(1, "b.a")]], QQ)
    assert alg.dim == 5


def test_commutative_square_relation():
    t2 = load_t2()
    assert t2.dim == 9
    # c2.a0 and a1.c1 coincide
    assert np.array_equal(path_element(t2, "c2.a0"), path_element(t2, "a1.c1"))


def load_t2():
    from siltloc.textfmt import load_bundled

    return load_bundled("t2kA2").algebra()


def test_unit_and_idempotents():
    alg = a2()
    one = alg.unit()
    for k in range(alg.dim):
        b = alg.basis_vector(k)
        assert np.array_equal(alg.product(one, b), b)
        assert np.array_equal(alg.product(b, one), b)


def test_arrow_composition_order():
    alg = algebra_from_quiver(quiver(3, [("a", 0, 1), ("b", 1, 2)]), [], F5)
    a, b = path_element(alg, "a"), path_element(alg, "b")
    # b.a means a then b; a.b is not a path
    assert not F5.is_zero(alg.product(b, a))
    assert F5.is_zero(alg.product(a, b))


@pytest.mark.parametrize("build, dim", [(lambda: a2(), 9), (lambda: dual_numbers(), 6)])
def test_triangular_matrix_algebra_dims(build, dim):
    t2 = t2_algebra(build())
    assert t2.dim == dim
    t2.validate()


def test_triangular_matrices_over_field_is_a2():
    k = algebra_from_quiver(quiver(1, []), [], F5)
    t2 = t2_algebra(k)
    assert t2.dim == 3 and t2.n == 2
    t2.validate()


def test_opposite_reverses_products():
    alg = a2()
    op = opposite_algebra(alg)
    for i in range(alg.dim):
        for j in range(alg.dim):
            x, y = alg.basis_vector(i), alg.basis_vector(j)
            assert np.array_equal(op.product(x, y), alg.product(y, x))


def test_quotient_by_radical():
    alg = a2()
    ideal = alg.basis_vector(alg.labels.index("a")).reshape(-1, 1)
    q, proj = quotient_algebra(alg, ideal)
    assert q.dim == 2
    q.validate()
