"""Partial silting, silting and tilting checks, Bongartz completion and the
transfer of silting data to the morphism category."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from .algebra import FDAlgebra
from .errors import MissingIndecomposableList, OracleDisagreement, PresentationMismatch
from .homalg import (ProjMap, ext1, ext1_dim, extension_from_cocycles,
                     minimal_presentation, partial_tilting_from_set, pd_at_most_one, projmap_from_hom,
                     proj_sum, ar_translate)
from .modules import (FDModule, ModuleHom, cokernel, direct_sum, direct_sum_data, hom_basis, hom_dim,
                      in_add, in_gen, iso_indecomposable, summands, indecomposable_decomposition, is_indecomposable, is_isomorphic,
                      projective_cover, radical, regular_module, representation, zero_module)
from .morcat import from_projmap, mor_direct_sum, mor_to_t2, regular_object, t2_of, t2_to_mor
from .torsion import is_divisible


# ----------------------------------------------------------------------
# presentations and the projective part of omega

def projective_part(omega: ProjMap) -> list[int]:
    """Multiplicity per vertex of the summand ``P -> 0`` split off ``omega``.

    Computed as the top of ``(ker omega + rad P1) / rad P1``.
    """
    f = omega.field
    real = omega.realise()
    p1 = real.source
    ker = f.kernel_basis(real.matrix) if real.target.dim else f.eye(p1.dim)
    rad = radical(p1).matrix
    out = []
    for v in range(omega.alg.n):
        b = p1.block(v)
        r = f.rank(rad[b, :]) if rad.shape[1] else 0
        both = f.hstack([rad[b, :], ker[b, :]], p1.dimvec[v]) if p1.dimvec[v] else f.zeros(0, 0)
        out.append((f.rank(both) if both.size else 0) - r)
    return out


def canonical_presentation(t: FDModule, extra_vertices: Sequence[int] = ()) -> ProjMap:
    """Minimal presentation of ``t`` plus ``P_v -> 0`` for each listed vertex."""
    sig = minimal_presentation(t).sigma
    if not extra_vertices:
        return sig
    alg = t.alg
    extra = ProjMap(alg, list(extra_vertices), [])
    return sig.direct_sum(extra)


def support(t: FDModule) -> list[int]:
    return [v for v, d in enumerate(t.dimvec) if d]


def check_presentation(t: FDModule, omega: ProjMap) -> None:
    if not is_isomorphic(omega.cokernel().target, t)[0]:
        raise PresentationMismatch("cokernel of the presentation is not isomorphic to the module")


def summand_count(t: FDModule) -> int:
    return len(indecomposable_decomposition(t)) if t.dim else 0


def is_tau_rigid(t: FDModule) -> bool:
    if t.dim == 0:
        return True
    return hom_dim(t, ar_translate(t)) == 0


# ----------------------------------------------------------------------

def is_partial_silting(t: FDModule, omega: ProjMap, *, check: bool = True) -> bool:
    """``T`` lies in the divisible class of ``omega`` (which is a torsion class).

    Cross-checked against the tau-rigidity criterion.
    """
    if check:
        check_presentation(t, omega)
    direct = is_divisible(omega, t)
    pp = projective_part(omega)
    hom_p = sum(pp[v] * t.dimvec[v] for v in range(t.alg.n))
    air = is_tau_rigid(t) and hom_p == 0
    if direct != air:
        raise OracleDisagreement(f"partial silting: divisibility says {direct}, tau-rigidity says {air}")
    return direct


@dataclass
class SiltingVerdict:
    silting: bool
    partial: bool
    route_a: bool
    route_b: bool | None
    summands: int
    projective_vertices: int


def is_silting(t: FDModule, omega: ProjMap, indecomposables: Sequence[FDModule] | None = None, *,
               require_list: bool = False, check: bool = True) -> SiltingVerdict:
    """Route (a): tau-rigid, ``Hom(P_omega, T) = 0`` and the summand count
    equals the vertex count. Route (b): ``Gen T`` equals the divisible class on
    a complete list of indecomposables."""
    if check:
        check_presentation(t, omega)
    n = t.alg.n
    partial = is_partial_silting(t, omega, check=False)
    pp = projective_part(omega)
    pverts = sum(1 for x in pp if x)
    count = summand_count(t)
    route_a = partial and count + pverts == n
    route_b = None
    if indecomposables is None:
        if require_list:
            raise MissingIndecomposableList("route (b) needs the complete list of indecomposables")
    else:
        route_b = gen_class(t, indecomposables) == divisible_class(omega, indecomposables)
        if route_b != route_a:
            raise OracleDisagreement(f"silting: AIR count says {route_a}, Gen = D check says {route_b}")
    return SiltingVerdict(route_a, partial, route_a, route_b, count, pverts)


def gen_class(t: FDModule, mods: Sequence[FDModule]) -> frozenset[int]:
    return frozenset(i for i, x in enumerate(mods) if in_gen(t, x))


def divisible_class(omega, mods: Sequence[FDModule]) -> frozenset[int]:
    return frozenset(i for i, x in enumerate(mods) if is_divisible(omega, x))


# ----------------------------------------------------------------------
# tilting

@dataclass
class TiltingReport:
    tilting: bool
    pd_ok: bool
    self_orthogonal: bool
    coresolution: tuple | None = None   # (A -> T0, T0 -> T1) when found


def basic_summands(t: FDModule) -> list[FDModule]:
    """One representative per isomorphism class of indecomposable summand."""
    out: list[FDModule] = []
    for x in summands(t):
        if not any(iso_indecomposable(x, y) for y in out):
            out.append(x)
    return out


def left_approximation(x: FDModule, t: FDModule) -> ModuleHom:
    """A left ``add(T)``-approximation of ``x``.

    Candidate maps go from ``x`` to the basic summands ``T_i`` of ``T``; a
    candidate is dropped whenever the rest still induce every map into
    every ``T_j``.
    """
    f = x.field
    pieces = basic_summands(t) if t.dim else []
    cands = [(i, g) for i, p in enumerate(pieces) for g in hom_basis(x, p)]
    if not cands:
        return ModuleHom(x, zero_module(x.alg), f.zeros(0, x.dim))
    need = [len(hom_basis(x, p)) for p in pieces]

    def covers(sel) -> bool:
        for j, pj in enumerate(pieces):
            if not need[j]:
                continue
            cols = [f.matmul(h, cands[k][1]).reshape(-1, 1)
                    for k in sel for h in hom_basis(pieces[cands[k][0]], pj)]
            if not cols or f.rank(f.hstack(cols, pj.dim * x.dim)) < need[j]:
                return False
        return True

    sel = list(range(len(cands)))
    for k in range(len(cands)):
        trial = [j for j in sel if j != k]
        if trial and covers(trial):
            sel = trial
    ds = direct_sum_data([pieces[cands[k][0]] for k in sel], x.alg)
    mat = f.zeros(ds.module.dim, x.dim)
    for inc, k in zip(ds.inclusions, sel):
        mat = f.add(mat, f.matmul(inc.matrix, cands[k][1]))
    return ModuleHom(x, ds.module, mat)


def is_tilting(t: FDModule) -> TiltingReport:
    alg = t.alg
    pd_ok = all(pd_at_most_one(x) for x in summands(t)) if t.dim else True
    self_orth = ext1_dim(t, t) == 0
    if not (pd_ok and self_orth):
        return TiltingReport(False, pd_ok, self_orth)
    a = regular_module(alg)
    approx = left_approximation(a, t)
    if not approx.is_injective():
        return TiltingReport(False, pd_ok, self_orth)
    q = cokernel(approx)
    ok = in_add(q.target, t)
    return TiltingReport(ok, pd_ok, self_orth, (approx, q) if ok else None)


def is_partial_tilting(t: FDModule) -> bool:
    if t.dim == 0:
        return True
    pd_ok = all(pd_at_most_one(x) for x in summands(t))
    return pd_ok and ext1_dim(t, t) == 0


def bongartz_complete(t: FDModule) -> FDModule:
    """``E + T`` where ``0 -> R -> E -> T^r -> 0`` is the universal extension of the regular module."""
    r = regular_module(t.alg)
    data = ext1(t, r)
    ext = extension_from_cocycles(r, data.presentation, data.cocycles)
    if ext1_dim(t, ext.middle) != 0:
        raise OracleDisagreement("Bongartz extension is not orthogonal to T")
    return direct_sum([ext.middle, t], t.alg)


# ----------------------------------------------------------------------
# the morphism category side

@dataclass
class TransferReport:
    partial_a: bool
    partial_t2: bool
    silting_a: bool
    tilting_t2: bool

    @property
    def agrees(self) -> bool:
        return self.partial_a == self.partial_t2 and self.silting_a == self.tilting_t2


def silting_to_mor(t: FDModule, omega: ProjMap, indecomposables=None) -> TransferReport:
    """Compare the A-side verdicts with partial tilting of ``Z_omega`` and
    tilting of ``Z_omega + Z_{id_A}`` over ``T2(A)``."""
    verdict = is_silting(t, omega, indecomposables)
    z = mor_to_t2(from_projmap(omega))
    partial_t2 = is_partial_tilting(z)
    reg = mor_to_t2(regular_object(t.alg))
    zz = mor_to_t2(mor_direct_sum([from_projmap(omega), regular_object(t.alg)]))
    # a sum's summands are those of its parts
    zz._summands = summands(z) + summands(reg)
    tilting_t2 = is_tilting(zz).tilting
    rep = TransferReport(verdict.partial, partial_t2, verdict.silting, tilting_t2)
    if not rep.agrees:
        raise OracleDisagreement(f"A-side and T2-side verdicts differ: {rep}")
    return rep


def t2_module_to_projmap(x: FDModule) -> ProjMap:
    """Read a ``T2(A)``-module whose two ends are projective as a map between projectives."""
    z = t2_to_mor(x)
    f = x.field
    cm = projective_cover(z.M)
    cn = projective_cover(z.N)
    if cm.source.dim != z.M.dim or cn.source.dim != z.N.dim:
        raise ValueError("module does not come from a map between projectives")
    inv_n = f.inverse(cn.matrix) if z.N.dim else f.zeros(0, 0)
    g = f.chain(inv_n, z.g.matrix, cm.matrix) if z.M.dim and z.N.dim else f.zeros(cn.source.dim, cm.source.dim)
    src = proj_sum(z.alg, cm.vertices)
    tgt = proj_sum(z.alg, cn.vertices)
    return projmap_from_hom(ModuleHom(src.module, tgt.module, g), src, tgt)


@dataclass
class SiltingCandidate:
    module: FDModule
    omega: ProjMap
    partial_tilting_t2: FDModule | None = None
    tilting_t2: FDModule | None = None
    trace: list = dc_field(default_factory=list)


def silting_from_sigma(sigmas: Sequence[ProjMap], alg: FDAlgebra | None = None, *, cap: int = 32,
                       corpus: Sequence[FDModule] | None = None) -> SiltingCandidate:
    """Approximation sequences of the ``Z_sigma`` over ``T2(A)``, Bongartz
    completion, then read back ``omega`` and ``T = Coker omega``."""
    sig = list(sigmas)
    alg = alg or sig[0].alg
    gens = [mor_to_t2(from_projmap(s)) for s in sig]
    gens = [g for g in gens if g.dim]
    if gens:
        t1, seqs = partial_tilting_from_set(gens, cap=cap)
        trace = [q.trace for q in seqs]
    else:
        t1, trace = zero_module(t2_of(alg)), []
    tilt = bongartz_complete(t1) if t1.dim else regular_module(t2_of(alg))
    omega = None
    for x, _ in indecomposable_decomposition(tilt):
        pm = t2_module_to_projmap(x)
        omega = pm if omega is None else omega.direct_sum(pm)
    t = omega.cokernel().target
    cand = SiltingCandidate(t, omega, t1, tilt, trace)
    if corpus is not None and divisible_class(omega, corpus) != divisible_class(sig, corpus):
        raise OracleDisagreement("divisible classes of omega and of the input set differ")
    return cand


# ----------------------------------------------------------------------
# census of silting classes

def enumerate_representations(alg: FDAlgebra, bound: Sequence[int]):
    """All modules over F_p given by arrow matrices with dimension vector
    componentwise at most ``bound`` (path algebras only; relations checked)."""
    f = alg.field
    if f.p is None:
        raise ValueError("enumeration needs a prime field")
    arrows = alg.generators
    for dv in itertools.product(*[range(b + 1) for b in bound]):
        if not any(dv):
            continue
        shapes = [(dv[alg.corners[g][1]], dv[alg.corners[g][0]]) for g in arrows]
        sizes = [r * c for r, c in shapes]
        for entries in itertools.product(range(f.p), repeat=sum(sizes)):
            blocks = {}
            pos = 0
            for g, (r, c), s in zip(arrows, shapes, sizes):
                blocks[g] = np.array(entries[pos:pos + s], dtype=np.int64).reshape(r, c)
                pos += s
            try:
                yield representation(alg, dv, blocks, check=bool(alg.relations))
            except ValueError:
                continue


def indecomposables_by_enumeration(alg: FDAlgebra, bound: Sequence[int] | None = None) -> list[FDModule]:
    """Isoclasses of indecomposables among all representations under ``bound``."""
    if bound is None:
        bound = regular_module(alg).dimvec
    found: list[FDModule] = []
    for m in enumerate_representations(alg, bound):
        if not is_indecomposable(m):
            continue
        if any(x.dimvec == m.dimvec and is_isomorphic(x, m)[0] for x in found):
            continue
        found.append(m)
    found.sort(key=lambda x: (x.dim, tuple(-d for d in x.dimvec)))
    return found


@dataclass
class CensusEntry:
    subset: tuple[int, ...]
    module: FDModule
    omega: ProjMap
    verdict: SiltingVerdict
    gen: frozenset


@dataclass
class Census:
    indecomposables: list[FDModule]
    entries: list[CensusEntry]

    @property
    def silting_classes(self) -> set[frozenset]:
        return {e.gen for e in self.entries if e.verdict.silting}


def silting_census(alg: FDAlgebra, indecomposables: Sequence[FDModule] | None = None) -> Census:
    """Test every sum of distinct indecomposables with its canonical presentation."""
    inds = list(indecomposables) if indecomposables is not None else indecomposables_by_enumeration(alg)
    entries = []
    for r in range(len(inds) + 1):
        for subset in itertools.combinations(range(len(inds)), r):
            t = direct_sum([inds[i] for i in subset], alg)
            supp = set(support(t))
            outside = [v for v in range(alg.n) if v not in supp]
            omega = canonical_presentation(t, outside)
            verdict = is_silting(t, omega, inds, check=False)
            entries.append(CensusEntry(subset, t, omega, verdict, gen_class(t, inds)))
    return Census(inds, entries)
