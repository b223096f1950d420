import numpy as np
import pytest

from siltloc.errors import Divergent
from siltloc.homalg import ProjMap, identity_projmap, minimal_presentation, zero_projmap
from siltloc.modules import is_isomorphic, projective, regular_module, simple, zero_module
from siltloc.ringepi import (closed_under_extensions, identity_ring_hom, idempotent_quotient_epi,
                             in_image_category, is_epimorphism, localisation_silting_check, quotient_epi, reflect,
                             restrict, same_ring_under, silting_from_flat_epi, silting_ring_epi, tor1_dim,
                             tor_extension_check, torsion_reduce, unit_is_universal, xb_membership)


@pytest.fixture
def alg(ka2):
    return ka2.algebra()


@pytest.fixture
def rad(alg):
    return minimal_presentation(simple(alg, 0)).sigma


def test_membership_examples(alg, rad):
    assert all(xb_membership(identity_projmap(alg, [0]), x) for x in (simple(alg, 0), projective(alg, 0)))
    assert xb_membership(rad, projective(alg, 0))
    assert not xb_membership(rad, simple(alg, 0))


def test_reflection_of_members_is_identity(alg, rad):
    p1 = projective(alg, 0)
    res = reflect(p1, rad)
    assert res.reflected.dim == p1.dim and res.trace == []


def test_reflection_of_p2_is_p1(ka2, rad):
    alg = ka2.algebra()
    res = reflect(projective(alg, 1), rad)
    assert is_isomorphic(res.reflected, projective(alg, 0))[0]
    assert [step for step, _ in res.trace] == ["extend"]
    assert unit_is_universal(res, ka2.module_list(), rad)


def test_reflection_over_dual_numbers_is_zero(dual):
    x = dual.sigma("x")
    assert reflect(dual.module("A"), x).reflected.dim == 0


def test_reflection_caps(kron):
    # localising the Kronecker algebra at a is infinite dimensional
    with pytest.raises(Divergent):
        reflect(regular_module(kron.algebra()), kron.sigma("a"), steps=4, total_dim=20)


def test_identity_epimorphism(alg):
    f = identity_ring_hom(alg).verify()
    assert f.epimorphism and f.tor1_vanishes
    # T1 = 0 with the empty presentation: every module is a B-module
    t = silting_ring_epi(zero_module(alg), ProjMap(alg, [], []))
    assert t.target.dim == alg.dim and same_ring_under(t, f) and same_ring_under(f, t)
    # T1 = A with 0 -> A: only the zero module has Hom(A, X) = 0
    assert silting_ring_epi(regular_module(alg), zero_projmap(alg, [], [0, 1])).target.dim == 0


def test_silting_epi_kA2_is_full_matrix_ring(ka2, rad):
    alg = ka2.algebra()
    f = silting_ring_epi(simple(alg, 0), rad, corpus=ka2.module_list())
    assert f.target.dim == 4 and f.epimorphism and tor1_dim(f) == 0
    assert f.is_multiplicative()
    # simple: the centre is one dimensional
    b = f.target
    centre = [x for x in range(b.dim)]
    fld = b.field
    rows = []
    for k in range(b.dim):
        e = b.basis_vector(k)
        rows.append(np.stack([fld.sub(b.product(b.basis_vector(i), e), b.product(e, b.basis_vector(i)))
                              for i in centre]).reshape(-1))
    assert b.dim - fld.rank(fld.array(np.stack(rows).T)) == 1
    # B is P1 + P1 as a left A-module
    assert tuple(restrict(f).dimvec) == (2, 2)


def test_silting_epi_dual_numbers(dual):
    a = dual.algebra()
    x = dual.sigma("x")[0]
    # (k, x) is not partial silting, but the reflection still exists and is zero
    assert silting_ring_epi(dual.module("k"), x, check=False).target.dim == 0
    assert silting_ring_epi(zero_module(a), ProjMap(a, [0], [])).target.dim == 0


def test_idempotent_quotients(alg, ka2):
    full = idempotent_quotient_epi(alg, [0, 1])
    assert full.ring_hom.target.dim == 0
    none = idempotent_quotient_epi(alg, [])
    assert none.ring_hom.target.dim == alg.dim
    q = idempotent_quotient_epi(alg, [1], corpus=ka2.module_list())
    assert q.ring_hom.target.dim == 1 and q.idempotent_ideal and q.perp_matches
    assert q.ring_hom.tor1_vanishes


def test_non_idempotent_ideal_has_tor(dual):
    a = dual.algebra()
    ideal = a.basis_vector(a.labels.index("x")).reshape(-1, 1)
    f = quotient_epi(a, ideal)
    assert f.tor1_dim == 1
    tor0, closed = tor_extension_check(f, dual.module_list())
    assert not tor0 and not closed


def test_epimorphism_and_module_tests(ka2, rad):
    alg = ka2.algebra()
    f = silting_ring_epi(simple(alg, 0), rad)
    assert is_epimorphism(f)
    for x in ka2.module_list():
        assert in_image_category(f, x) == xb_membership(rad, x)
    assert closed_under_extensions(lambda m: in_image_category(f, m), ka2.module_list())


def test_torsion_reduction(alg, rad, dual):
    assert torsion_reduce([rad], alg).algebra.dim == alg.dim
    assert torsion_reduce(dual.sigma("x")).algebra.dim == 0
    assert torsion_reduce([identity_projmap(alg, [0])], alg).algebra.dim == alg.dim


def test_flat_epi_identity(ka2):
    alg = ka2.algebra()
    rep = silting_from_flat_epi(identity_ring_hom(alg).verify(), ka2.module_list())
    assert rep.quotient.dim == 0 and rep.silting


def test_flat_epi_to_matrix_ring(ka2, rad):
    alg = ka2.algebra()
    f = silting_ring_epi(simple(alg, 0), rad)
    rep = silting_from_flat_epi(f, ka2.module_list())
    assert rep.silting and rep.gen_matches and rep.xb_matches and rep.divisible_classes_agree
    assert tuple(rep.candidate.module.dimvec) == (3, 2)


@pytest.mark.parametrize("name", ["rad", "p1zero", "id"])
def test_localisation_membership_kA2(ka2, name):
    rep = localisation_silting_check(ka2.sigma(name), ka2.module_list(), ka2.algebra())
    assert rep.passed and rep.partial_silting


def test_localisation_membership_kA3_presentation_of_s2(ka3):
    rep = localisation_silting_check(ka3.sigma("s2pres"), ka3.module_list(), ka3.algebra())
    assert rep.passed and len(rep.rows) == 6
