import pytest

from siltloc.errors import MissingIndecomposableList
from siltloc.homalg import minimal_presentation, zero_projmap
from siltloc.modules import direct_sum, in_add, is_isomorphic, power, projective, regular_module, simple, zero_module
from siltloc.silting import (bongartz_complete, gen_class, indecomposables_by_enumeration,
                             is_partial_silting, is_partial_tilting, is_silting, is_tau_rigid, is_tilting,
                             projective_part, silting_census, silting_from_sigma, silting_to_mor)
from siltloc.torsion import is_divisible


@pytest.fixture
def alg(ka2):
    return ka2.algebra()


def test_projective_is_partial_silting(alg):
    p1 = projective(alg, 0)
    assert is_partial_silting(p1, zero_projmap(alg, [], [0]))


def test_simple_with_minimal_presentation(alg):
    s1 = simple(alg, 0)
    assert is_partial_silting(s1, minimal_presentation(s1).sigma)


def test_presentation_choice_matters(alg):
    s2 = simple(alg, 1)
    assert is_partial_silting(s2, zero_projmap(alg, [], [1]))
    # adding P1 -> 0 asks for Hom(P1, S2) = 0 and for divisibility of S2 by it
    omega = zero_projmap(alg, [], [1]).direct_sum(zero_projmap(alg, [0], []))
    assert is_partial_silting(s2, omega)
    # adding P2 -> 0 asks for Hom(P2, S2) = 0, which fails
    bad = zero_projmap(alg, [], [1]).direct_sum(zero_projmap(alg, [1], []))
    assert not is_partial_silting(s2, bad)


def test_silting_verdicts(ka2):
    alg = ka2.algebra()
    inds = ka2.module_list()
    a = regular_module(alg)
    assert is_silting(a, zero_projmap(alg, [], [0, 1]), inds).silting
    t = direct_sum([projective(alg, 0), simple(alg, 0)], alg)
    v = is_silting(t, minimal_presentation(t).sigma, inds)
    assert v.silting and v.route_b
    s1 = simple(alg, 0)
    v = is_silting(s1, minimal_presentation(s1).sigma, inds)
    assert v.partial and not v.silting


def test_route_b_needs_list(alg):
    s1 = simple(alg, 0)
    with pytest.raises(MissingIndecomposableList):
        is_silting(s1, minimal_presentation(s1).sigma, require_list=True)


def test_tilting(alg):
    assert is_tilting(regular_module(alg)).tilting
    rep = is_tilting(direct_sum([projective(alg, 0), simple(alg, 0)], alg))
    assert rep.tilting and rep.coresolution is not None
    approx, q = rep.coresolution
    assert is_isomorphic(approx.target, power(projective(alg, 0), 2))[0]
    assert is_isomorphic(q.target, simple(alg, 0))[0]
    assert not is_tilting(simple(alg, 0)).tilting
    assert is_partial_tilting(simple(alg, 0))


def test_bongartz_completion(alg):
    s1 = simple(alg, 0)
    t = bongartz_complete(s1)
    assert is_tilting(t).tilting
    assert in_add(projective(alg, 0), t) and in_add(s1, t)


def test_tau_rigidity(ka3, kron):
    assert all(is_tau_rigid(x) for x in ka3.module_list())
    assert not is_tau_rigid(kron.module("R"))


def test_projective_part(alg):
    omega = minimal_presentation(simple(alg, 0)).sigma.direct_sum(zero_projmap(alg, [0], []))
    assert projective_part(omega) == [1, 0]


def test_transfer_examples(ka2):
    alg = ka2.algebra()
    inds = ka2.module_list()
    t = direct_sum([projective(alg, 0), simple(alg, 0)], alg)
    rep = silting_to_mor(t, minimal_presentation(t).sigma, inds)
    assert rep.agrees and rep.silting_a and rep.tilting_t2
    # T = 0 with omega = A -> 0: the divisible class is {0}
    rep = silting_to_mor(zero_module(alg), zero_projmap(alg, [0, 1], []), inds)
    assert rep.agrees and rep.partial_a
    rep = silting_to_mor(regular_module(alg), zero_projmap(alg, [], [0, 1]), inds)
    assert rep.tilting_t2


def test_silting_from_maps(ka2):
    alg = ka2.algebra()
    inds = ka2.module_list()
    cand = silting_from_sigma(ka2.sigma("rad"), corpus=inds)
    want = direct_sum([projective(alg, 0), simple(alg, 0)], alg)
    assert gen_class(cand.module, inds) == gen_class(want, inds)
    cand = silting_from_sigma(ka2.sigma("p1zero"), corpus=inds)
    assert gen_class(cand.module, inds) == gen_class(simple(alg, 1), inds)
    cand = silting_from_sigma([zero_projmap(alg, [], [0, 1])], corpus=inds)
    assert all(is_divisible(cand.omega, x) for x in inds)


def test_enumeration_finds_indecomposables(ka2, ka3):
    assert len(indecomposables_by_enumeration(ka2.algebra())) == 3
    assert len(indecomposables_by_enumeration(ka3.algebra())) == 6


def test_census_counts(ka2):
    census = silting_census(ka2.algebra(), ka2.module_list())
    assert len(census.silting_classes) == 5
    assert len(census.entries) == 8
