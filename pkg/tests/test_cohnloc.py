import pytest

from siltloc.cohnloc import (dump_presentation, finite_quotient, invertibility_check, localisation_presentation,
                             localise, matrix_unit_check, normal_forms, t2_factorisation_check, t2_path_algebra,
                             torsion_free_comparison, universal_factorisation)
from siltloc.errors import NotStabilised
from siltloc.homalg import identity_projmap
from siltloc.modules import simple
from siltloc.ringepi import identity_ring_hom, same_ring_under, silting_ring_epi


@pytest.fixture
def alg(ka2):
    return ka2.algebra()


def _units(loc):
    lab = loc.algebra.labels
    return {(0, 0): lab.index("e1"), (1, 1): lab.index("e2"), (1, 0): lab.index("a"), (0, 1): lab.index("a^-1")}


def test_empty_set_presents_the_algebra(alg):
    rep = normal_forms(localisation_presentation(alg, []), 5)
    assert rep.stabilised and rep.dimension == 3
    loc = finite_quotient(rep)
    assert same_ring_under(loc.ring_hom, identity_ring_hom(alg).verify())


def test_identity_inverts_to_idempotent(alg):
    loc = localise(alg, [identity_projmap(alg, [0])])
    assert loc.algebra.dim == alg.dim
    assert "e1^-1" not in loc.algebra.labels


def test_inverse_symbol_and_relations(ka2):
    p = localisation_presentation(ka2.algebra(), ka2.sigma("rad"))
    assert "a^-1" in p.symbol_names
    lines = dump_presentation(p).splitlines()
    assert "symbol a^-1: 2 -> 1" in lines
    # over GF(2), a.a^-1 - e2 is written with a plus sign
    assert "relation 1*a.a^-1 + 1*e2 = 0" in lines
    assert "relation 1*a^-1.a + 1*e1 = 0" in lines


def test_kA2_at_a_is_matrix_ring(ka2):
    loc = localise(ka2.algebra(), ka2.sigma("rad"), bound=6)
    assert [len(layer) for layer in loc.report.layers][:2] == [2, 2]
    assert loc.algebra.dim == 4
    assert matrix_unit_check(loc.algebra, _units(loc))
    assert all(loc.invertible)


def test_dual_numbers_collapse(dual):
    rep = normal_forms(localisation_presentation(dual.algebra(), dual.sigma("x")), 4)
    assert rep.stabilised and rep.dimension == 0


def test_kronecker_does_not_stabilise(kron):
    rep = normal_forms(localisation_presentation(kron.algebra(), kron.sigma("a")), 5)
    assert not rep.stabilised
    with pytest.raises(NotStabilised):
        finite_quotient(rep)


def test_invertibility_checks(ka2):
    alg = ka2.algebra()
    rad = ka2.sigma("rad")[0]
    ident = identity_ring_hom(alg).verify()
    assert not invertibility_check(ident, rad)
    assert invertibility_check(ident, identity_projmap(alg, [0, 1]))
    loc = localise(alg, [rad])
    assert invertibility_check(loc.ring_hom, rad)


def test_universal_factorisation(ka2):
    alg = ka2.algebra()
    rad = ka2.sigma("rad")
    loc = localise(alg, rad)
    g = silting_ring_epi(simple(alg, 0), rad[0])
    h = universal_factorisation(loc, g)
    assert h is not None
    # the identity does not invert a, so it does not factor
    assert universal_factorisation(loc, identity_ring_hom(alg).verify()) is None


def test_t2_path_algebra_matches(alg):
    t2 = t2_path_algebra(alg)
    assert t2.dim == 9 and t2.n == 4
    t2.validate()


@pytest.mark.parametrize("name", ["rad", "id", "p1zero"])
def test_t2_factorisation(ka2, name):
    cmp = t2_factorisation_check(ka2.algebra(), ka2.sigma(name))
    assert cmp.agrees and cmp.stabilised_a and cmp.stabilised_t2


def test_t2_factorisation_empty(alg):
    cmp = t2_factorisation_check(alg, [])
    assert cmp.agrees and sum(cmp.counts_a) == alg.dim


def test_torsion_free_counts(ka3, dual):
    for name in ka3.sigmas:
        a, b, _ = torsion_free_comparison(ka3.algebra(), ka3.sigma(name))
        assert a == b
    a, b, red = torsion_free_comparison(dual.algebra(), dual.sigma("x"))
    assert red.algebra.dim == 0 and a == b
