"""Acceptance suite: eleven end-to-end criteria with time limits.

Run under pytest, or directly with ``python tests/test_acceptance.py`` to get
the plain report (one PASS/FAIL line per criterion followed by the computed
details). The report contains no timings, so two runs must be identical.
"""
from __future__ import annotations

import dataclasses
import itertools
import subprocess
import sys
import time
from pathlib import Path

import numpy as np
import pytest

from siltloc.cohnloc import localise, matrix_unit_check, torsion_free_comparison
from siltloc.errors import Diverged
from siltloc.homalg import in_perp, in_perp1, partial_tilting_from_set
from siltloc.homalg import ProjMap
from siltloc.modules import zero_module, direct_sum, is_isomorphic, projective, simple
from siltloc.morcat import (cokernel_divisible_membership, corpus_objects, ext1_vanishes_all, from_projmap,
                            mor_ext1_homotopy, mor_ext1_resolution, mor_ext1_t2, random_object, random_projmap,
                            same_classes)
from siltloc.ringepi import (_combine, idempotent_quotient_epi, localisation_silting_check, partial_silting_from_sigma,
                             quotient_epi, same_ring_under, silting_from_flat_epi, silting_ring_epi,
                             tor_extension_check)
from siltloc.silting import gen_class, indecomposables_by_enumeration, silting_census, silting_to_mor
from siltloc.textfmt import load_bundled

BUNDLED = ["kA2", "kA3", "kronecker", "dual", "t2kA2"]
REPORT: dict[int, tuple[bool, float, float, list[str]]] = {}


def _sets(cf):
    return [(name, cf.sigma(name)) for name in cf.sigmas]


def _silting_epi(sigmas, alg):
    """Silting epimorphism of the approximation output, or of the maps themselves
    when the approximation does not stop (no finitely generated T1 exists)."""
    try:
        omega, t1, _ = partial_silting_from_sigma(sigmas, alg, cap=16)
    except Diverged:
        omega = _combine(sigmas)
        return silting_ring_epi(omega.cokernel().target, omega, check=False), "maps themselves"
    return silting_ring_epi(t1, omega), "approximation"


# ----------------------------------------------------------------------
# the criteria; each returns (passed, detail lines)

def c1_ext_oracles():
    lines, ok = [], True
    corpus_pairs = 0
    for name in BUNDLED:
        cf = load_bundled(name)
        objs = corpus_objects(cf.module_list(), [s for _, s in _sets(cf)])
        bl = [o for o in objs if o.projmap is not None]
        for z in bl:
            for w in objs:
                a, b, c = mor_ext1_resolution(z, w), mor_ext1_homotopy(z, w), mor_ext1_t2(z, w)
                corpus_pairs += 1
                if not (a.dim == b.dim == c and same_classes(a, b)):
                    ok = False
                    lines.append(f"corpus mismatch {name} {z.name} {w.name}: {a.dim} {b.dim} {c}")
    rng = np.random.default_rng(20240501)
    random_pairs, nonzero = 0, 0
    for name in BUNDLED:
        cf = dataclasses.replace(load_bundled(name), field="GF(5)")
        alg = cf.algebra()
        pool = cf.module_list() + [projective(alg, v) for v in range(alg.n)]
        for _ in range(50):
            z = from_projmap(random_projmap(alg, rng, max_dim=8))
            w = random_object(pool, rng, max_dim=8)
            a, b, c = mor_ext1_resolution(z, w), mor_ext1_homotopy(z, w), mor_ext1_t2(z, w)
            random_pairs += 1
            nonzero += a.dim > 0
            if not (a.dim == b.dim == c and same_classes(a, b)):
                ok = False
                lines.append(f"random mismatch {name} {z} {w}: {a.dim} {b.dim} {c}")
    lines.append(f"corpus pairs {corpus_pairs}; random pairs over GF(5) {random_pairs}, nonzero Ext {nonzero}")
    return ok and random_pairs >= 200 and nonzero > 0, lines


def c2_membership():
    ok, n = True, 0
    lines = []
    for name in BUNDLED:
        cf = load_bundled(name)
        sets = _sets(cf)
        objs = corpus_objects(cf.module_list(), [s for _, s in sets])
        for sname, sg in sets:
            agree = 0
            for w in objs:
                n += 1
                same = cokernel_divisible_membership(sg, w) == ext1_vanishes_all(sg, w)
                agree += same
                ok &= same
            lines.append(f"{name}/{sname}: {agree}/{len(objs)} objects agree")
    lines.append(f"{n} (set, object) pairs")
    return ok, lines


def _census(name):
    alg = load_bundled(name).algebra()
    dimvec_a = [sum(projective(alg, v).dimvec[u] for v in range(alg.n)) for u in range(alg.n)]
    inds = indecomposables_by_enumeration(alg, dimvec_a)
    return alg, inds, silting_census(alg, inds)


def c3_census():
    lines, ok = [], True
    for name, want in (("kA2", 5), ("kA3", 14)):
        _, inds, census = _census(name)
        got = len(census.silting_classes)
        ok &= got == want
        lines.append(f"{name}: {len(inds)} indecomposables, {len(census.entries)} candidates, "
                     f"{got} silting classes (expected {want})")
    return ok, lines


def c4_transfer():
    lines, ok = [], True
    for name in ("kA2", "kA3"):
        _, inds, census = _census(name)
        agree = 0
        for e in census.entries:
            rep = silting_to_mor(e.module, e.omega, inds)
            agree += rep.agrees
        ok &= agree == len(census.entries)
        lines.append(f"{name}: transfer verdicts agree on {agree}/{len(census.entries)} candidates")
    return ok, lines


def _matrix_units(alg):
    """Search for a relabelling of the basis as the matrix units of M_2(k)."""
    if alg.dim != 4:
        return None
    for perm in itertools.permutations(range(4)):
        units = dict(zip([(0, 0), (0, 1), (1, 0), (1, 1)], perm))
        if matrix_unit_check(alg, units):
            return units
    return None


def c5_localisation():
    lines = []
    ka2 = load_bundled("kA2")
    rad = ka2.sigma("rad")
    loc = localise(ka2.algebra(), rad, bound=6)
    units = _matrix_units(loc.algebra)
    omega, t1, _ = partial_silting_from_sigma(rad, ka2.algebra())
    f = silting_ring_epi(t1, omega)
    units_b = _matrix_units(f.target)
    same = same_ring_under(loc.ring_hom, f) and same_ring_under(f, loc.ring_hom)
    lines.append(f"kA2 at rad: stabilised {loc.report.stabilised}, dim {loc.algebra.dim}, "
                 f"matrix units {units is not None}")
    lines.append(f"silting epi: dim {f.target.dim}, matrix units {units_b is not None}, "
                 f"same ring under A {same}")
    dual = load_bundled("dual")
    x = dual.sigma("x")
    loc0 = localise(dual.algebra(), x, bound=6)
    f0, route = _silting_epi(x, dual.algebra())
    lines.append(f"dual numbers at x: localisation dim {loc0.algebra.dim}, "
                 f"reflection ring dim {f0.target.dim} (omega from the {route})")
    zero_pair = silting_ring_epi(zero_module(dual.algebra()), ProjMap(dual.algebra(), [0], []))
    lines.append(f"dual numbers, partial silting pair (0, A -> 0): silting epi dim {zero_pair.target.dim}")
    ok = (loc.report.stabilised and loc.algebra.dim == 4 and units is not None and f.target.dim == 4
          and units_b is not None and same and loc0.report.stabilised and loc0.algebra.dim == 0
          and f0.target.dim == 0 and zero_pair.target.dim == 0)
    return ok, lines


def c6_pipeline():
    lines, ok = [], True
    for name in ("kA2", "kA3"):
        cf = load_bundled(name)
        corpus = cf.module_list()
        for sname, sg in _sets(cf):
            rep = localisation_silting_check(sg, corpus, cf.algebra())
            ok &= rep.passed
            lines.append(f"{name}/{sname}: T1 {tuple(rep.module.dimvec)}, "
                         f"{sum(r[1] for r in rep.rows)}/{len(rep.rows)} in the subcategory, "
                         f"{'PASS' if rep.passed else 'FAIL'}")
    p1zero = load_bundled("kA2").sigma("p1zero")
    injective = all(s.field.rank(s.realise().matrix) == s.realise().source.dim for s in p1zero)
    lines.append(f"p1zero injective: {injective}")
    return ok and not injective, lines


def c7_approximation():
    lines = []
    cf = load_bundled("kA3")
    alg = cf.algebra()
    inds = indecomposables_by_enumeration(alg)
    gens = [simple(alg, 0), simple(alg, 1)]
    t1, _ = partial_tilting_from_set(gens, alg)
    want = direct_sum([simple(alg, 0), cf.module("I2")], alg)
    iso = is_isomorphic(t1, want)[0]
    perp1 = all(in_perp1(gens, x) == in_perp1([t1], x) for x in inds)
    perp = all(in_perp(gens, x) == in_perp([t1], x) for x in inds)
    lines.append(f"kA3 from S1, S2: T1 {tuple(t1.dimvec)}, isomorphic to S1 + (1,1,0): {iso}")
    lines.append(f"Ext-perp classes equal on {len(inds)} indecomposables: {perp1}; Hom+Ext-perp: {perp}")
    kr = load_bundled("kronecker")
    try:
        partial_tilting_from_set([kr.module("R")], kr.algebra(), cap=10)
        diverged = False
    except Diverged as exc:
        diverged = True
        lines.append(f"Kronecker regular module: Diverged after {len(exc.trace)} steps, "
                     f"dimension {exc.trace[-1][2]}")
    return iso and perp1 and perp and diverged and len(inds) == 6, lines


def c8_torsion_free():
    lines, ok = [], True
    for name in BUNDLED:
        cf = load_bundled(name)
        for sname, sg in _sets(cf):
            a, b, red = torsion_free_comparison(cf.algebra(), sg, bound=6)
            ok &= a == b
            lines.append(f"{name}/{sname}: counts {a} vs {b}; reduced algebra dim {red.algebra.dim}")
    dual = load_bundled("dual")
    _, _, red = torsion_free_comparison(dual.algebra(), dual.sigma("x"), bound=6)
    ok &= red.algebra.dim == 0
    return ok, lines


def c9_flat_epi():
    cf = load_bundled("kA2")
    alg = cf.algebra()
    corpus = cf.module_list()
    loc = localise(alg, cf.sigma("rad"))
    rep = silting_from_flat_epi(loc.ring_hom, corpus)
    target = gen_class(direct_sum([projective(alg, 0), simple(alg, 0)], alg), corpus)
    gen = gen_class(rep.candidate.module, corpus)
    lines = [f"candidate {tuple(rep.candidate.module.dimvec)}, silting {rep.silting}, "
             f"Gen class matches P1 + S1: {gen == target}, B-module table matches: {rep.xb_matches}"]
    return rep.silting and gen == target and rep.xb_matches and rep.gen_matches, lines


def _ring_homs():
    out = []
    for name in ("kA2", "kA3", "dual"):
        cf = load_bundled(name)
        alg = cf.algebra()
        for sname, sg in _sets(cf):
            f, route = _silting_epi(sg, alg)
            out.append((f"{name} silting epi of {sname} ({route})", f, cf.module_list()))
            loc = localise(alg, sg)
            out.append((f"{name} localisation at {sname}", loc.ring_hom, cf.module_list()))
        for v in range(alg.n):
            q = idempotent_quotient_epi(alg, [v])
            out.append((f"{name} quotient by vertex {v + 1}", q.ring_hom, cf.module_list()))
        rad = alg.field.zeros(alg.dim, 0)
        cols = [alg.basis_vector(k).reshape(-1, 1) for k in alg.radical_indices()]
        if cols:
            rad = alg.field.hstack(cols, alg.dim)
        out.append((f"{name} quotient by the radical", quotient_epi(alg, rad), cf.module_list()))
    return out


def c10_tor_closure():
    lines, ok = [], True
    vanish = 0
    for label, f, corpus in _ring_homs():
        tor0, closed = tor_extension_check(f, corpus)
        vanish += tor0
        ok &= tor0 == closed
        lines.append(f"{label}: Tor_1 vanishes {tor0}, closed under extensions {closed}")
    return ok and 0 < vanish, lines


def c11_determinism():
    script = Path(__file__).resolve()
    runs = [subprocess.run([sys.executable, str(script), "--report", "--only", "1-10"],
                           capture_output=True, timeout=280) for _ in range(2)]
    same = runs[0].stdout == runs[1].stdout and runs[0].returncode == runs[1].returncode
    return same and bool(runs[0].stdout), [f"two report runs byte-identical: {same} "
                                           f"({len(runs[0].stdout)} bytes)"]


CRITERIA = {
    1: ("Ext^1 in Mor(A): resolution, homotopy and T2 routes agree", c1_ext_oracles, 30),
    2: ("Ext-orthogonal iff cokernel divisible", c2_membership, 5),
    3: ("silting census: 5 classes on kA2, 14 on kA3", c3_census, 120),
    4: ("silting verdicts transfer to tilting over T2(A)", c4_transfer, 120),
    5: ("localisation of kA2 at the radical map is M_2(k); dual numbers give 0", c5_localisation, 5),
    6: ("localisation membership equals silting membership", c6_pipeline, 60),
    7: ("partial tilting by approximation; Kronecker diverges", c7_approximation, 10),
    8: ("torsion-free reduction preserves normal-form counts", c8_torsion_free, 30),
    9: ("silting module from the flat epimorphism kA2 -> M_2(k)", c9_flat_epi, 10),
    10: ("Tor_1 vanishes iff closed under extensions", c10_tor_closure, 30),
    11: ("two full runs give identical reports", c11_determinism, 300),
}


def run_criterion(k: int):
    title, fn, limit = CRITERIA[k]
    t0 = time.perf_counter()
    ok, lines = fn()
    elapsed = time.perf_counter() - t0
    REPORT[k] = (bool(ok), elapsed, limit, lines)
    return bool(ok), elapsed, limit, lines


def summary_line(k: int) -> str:
    ok, elapsed, limit, _ = REPORT[k]
    in_time = elapsed <= limit
    verdict = "PASS" if ok and in_time else "FAIL"
    return f"criterion {k:2d} {verdict}  {CRITERIA[k][0]}  ({elapsed:.1f}s, limit {limit}s)"


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k):
    ok, elapsed, limit, lines = run_criterion(k)
    print(summary_line(k))
    for line in lines:
        print("   ", line)
    assert ok, "\n".join(lines)
    assert elapsed <= limit, f"took {elapsed:.1f}s, limit {limit}s"


def _parse_only(text: str) -> list[int]:
    lo, _, hi = text.partition("-")
    return list(range(int(lo), int(hi or lo) + 1))


if __name__ == "__main__":
    import argparse

    ap = argparse.ArgumentParser()
    ap.add_argument("--report", action="store_true", help="deterministic report without timings")
    ap.add_argument("--only", default="1-11")
    args = ap.parse_args()
    failed = False
    for k in _parse_only(args.only):
        ok, elapsed, limit, lines = run_criterion(k)
        if args.report:
            print(f"criterion {k:2d} {'PASS' if ok else 'FAIL'}  {CRITERIA[k][0]}")
        else:
            print(summary_line(k))
        for line in lines:
            print("   ", line)
        failed |= not ok or (not args.report and elapsed > limit)
    sys.exit(1 if failed else 0)
