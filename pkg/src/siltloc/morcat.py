"""The morphism category Mor(A) and its identification with T2(A)-modules.

An object ``Z_g`` is a module map ``g: M -> N``. Over ``T2(A)`` (lower
triangular matrices ``(a 0; b c)``) it becomes the module ``M + N`` where
``(a,0;0,0)`` acts on ``M``, ``(0,0;0,c)`` on ``N`` and ``(0,0;b,0)`` sends
``m`` to ``b g(m)``. Vertex ``v`` of ``A`` gives vertices ``v`` (the ``M``
end) and ``n + v`` (the ``N`` end).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import FDAlgebra, t2_algebra
from .errors import NotInBL
from .homalg import ProjMap, ext1_dim
from .modules import (FDModule, ModuleHom, direct_sum_data, hom_basis, identity, is_projective,
                      projective, zero_module)


class MorObject:
    """``Z_g`` for a homomorphism ``g: M -> N``; ``projmap`` is kept when known."""

    def __init__(self, g: ModuleHom, projmap: ProjMap | None = None, name: str | None = None):
        self.g = g
        self.projmap = projmap
        self.name = name

    @property
    def alg(self) -> FDAlgebra:
        return self.g.source.alg

    @property
    def M(self) -> FDModule:
        return self.g.source

    @property
    def N(self) -> FDModule:
        return self.g.target

    @property
    def dim(self) -> int:
        return self.M.dim + self.N.dim

    @property
    def in_BL(self) -> bool:
        return self.projmap is not None or (is_projective(self.M) and is_projective(self.N))

    in_L = in_BL  # all modules here are finitely generated

    def __repr__(self):
        return f"Z({self.M.dimvec} -> {self.N.dimvec})"


@dataclass
class MorMorphism:
    source: MorObject
    target: MorObject
    top: np.ndarray      # M -> M'
    bottom: np.ndarray   # N -> N'


def from_projmap(sigma: ProjMap, name=None) -> MorObject:
    return MorObject(sigma.realise(), sigma, name=name or sigma.name)


def identity_object(m: FDModule) -> MorObject:
    return MorObject(identity(m))


def zero_to(m: FDModule) -> MorObject:
    """``Z_{(0 -> X)}``."""
    return MorObject(ModuleHom(zero_module(m.alg), m, m.field.zeros(m.dim, 0)))


def to_zero(m: FDModule) -> MorObject:
    return MorObject(ModuleHom(m, zero_module(m.alg), m.field.zeros(0, m.dim)))


def t2_of(alg: FDAlgebra) -> FDAlgebra:
    cached = alg.__dict__.get("_t2")
    if cached is None:
        cached = t2_algebra(alg)
        alg._t2 = cached
    return cached


def mor_to_t2(z: MorObject) -> FDModule:
    cached = z.__dict__.get("_t2mod")
    if cached is not None:
        return cached
    alg = z.alg
    t2 = t2_of(alg)
    f = alg.field
    d = alg.dim
    m, n = z.M, z.N
    dim = m.dim + n.dim
    acts = []
    for k in range(d):
        a = f.zeros(dim, dim)
        a[:m.dim, :m.dim] = m.acts[k]
        acts.append(a)
    for k in range(d):
        a = f.zeros(dim, dim)
        a[m.dim:, m.dim:] = n.acts[k]
        acts.append(a)
    for k in range(d):
        a = f.zeros(dim, dim)
        a[m.dim:, :m.dim] = f.matmul(n.acts[k], z.g.matrix)
        acts.append(a)
    mod = FDModule(t2, list(m.dimvec) + list(n.dimvec), acts, check=False)
    z._t2mod = mod
    return mod


def t2_to_mor(x: FDModule) -> MorObject:
    t2 = x.alg
    alg = t2.base
    f = alg.field
    n = alg.n
    d = alg.dim
    mdim = x.offsets[n]
    m_acts = [x.acts[k][:mdim, :mdim] for k in range(d)]
    n_acts = [x.acts[d + k][mdim:, mdim:] for k in range(d)]
    mm = FDModule(alg, x.dimvec[:n], m_acts, check=False)
    nn = FDModule(alg, x.dimvec[n:], n_acts, check=False)
    g = f.zeros(nn.dim, mm.dim)
    for i in alg.idempotents:
        g = f.add(g, x.acts[2 * d + i][mdim:, :mdim])
    return MorObject(ModuleHom(mm, nn, g))


def mor_direct_sum(objs) -> MorObject:
    objs = list(objs)
    alg = objs[0].alg
    f = alg.field
    ms = direct_sum_data([o.M for o in objs], alg)
    ns = direct_sum_data([o.N for o in objs], alg)
    g = f.zeros(ns.module.dim, ms.module.dim)
    for o, pi, ij in zip(objs, ms.projections, ns.inclusions):
        g = f.add(g, f.chain(ij.matrix, o.g.matrix, pi.matrix))
    pm = None
    if all(o.projmap is not None for o in objs):
        pm = objs[0].projmap
        for o in objs[1:]:
            pm = pm.direct_sum(o.projmap)
        return from_projmap(pm)
    return MorObject(ModuleHom(ms.module, ns.module, g))


# ----------------------------------------------------------------------
# Hom in Mor(A)

def mor_hom(z: MorObject, w: MorObject) -> list[MorMorphism]:
    """Commutative squares ``(alpha, beta)`` with ``h alpha = beta g``."""
    f = z.alg.field
    ab = hom_basis(z.M, w.M)
    bb = hom_basis(z.N, w.N)
    size = w.N.dim * z.M.dim
    cols = [f.matmul(w.g.matrix, a).reshape(-1, 1) for a in ab]
    cols += [f.neg(f.matmul(b, z.g.matrix)).reshape(-1, 1) for b in bb]
    if not cols:
        return []
    if size == 0:
        ker = f.eye(len(cols))
    else:
        ker = f.kernel_basis(f.hstack(cols, size))
    out = []
    for c in range(ker.shape[1]):
        top = f.zeros(w.M.dim, z.M.dim)
        bot = f.zeros(w.N.dim, z.N.dim)
        for i, a in enumerate(ab):
            if ker[i, c] != 0:
                top = f.add(top, f.scale(ker[i, c], a))
        for j, b in enumerate(bb):
            if ker[len(ab) + j, c] != 0:
                bot = f.add(bot, f.scale(ker[len(ab) + j, c], b))
        out.append(MorMorphism(z, w, top, bot))
    return out


def mor_hom_dim(z: MorObject, w: MorObject) -> int:
    return len(mor_hom(z, w))


# ----------------------------------------------------------------------
# the standard resolution of Z_sigma

@dataclass
class StdResolution:
    """``0 -> P1 --d--> P0 --e--> Z_sigma -> 0`` with ``P1 = Z_{0->P}`` and
    ``P0 = Z_{P -> Q+P}``."""

    z: MorObject
    p1: MorObject
    p0: MorObject
    d: MorMorphism
    e: MorMorphism


def _require_bl(z: MorObject) -> ProjMap:
    if z.projmap is None:
        raise NotInBL("object is not given as a map between projectives")
    return z.projmap


def std_resolution(z: MorObject) -> StdResolution:
    sig = _require_bl(z)
    f = z.alg.field
    real = sig.realise()
    p, q = real.source, real.target
    qp = direct_sum_data([q, p], z.alg)
    # P0: P --(0, id)--> Q + P
    g0 = qp.inclusions[1].matrix
    p0 = MorObject(ModuleHom(p, qp.module, g0))
    p1 = zero_to(p)
    # P1 -> P0: 0 on M, (-sigma, id) on N
    d_bot = f.add(f.neg(f.matmul(qp.inclusions[0].matrix, real.matrix)), qp.inclusions[1].matrix)
    d = MorMorphism(p1, p0, f.zeros(p.dim, 0), d_bot)
    # P0 -> Z_sigma: id on M, (id, sigma) on N
    e_bot = f.add(qp.projections[0].matrix, f.matmul(real.matrix, qp.projections[1].matrix))
    e = MorMorphism(p0, z, f.eye(p.dim), e_bot)
    return StdResolution(z, p1, p0, d, e)


def check_resolution(res: StdResolution) -> bool:
    """Exactness of the standard resolution, component by component."""
    f = res.z.alg.field
    comp_bot = f.matmul(res.e.bottom, res.d.bottom)
    if not f.is_zero(comp_bot):
        return False
    # top row: 0 -> P --id--> P ; bottom row: P -> Q+P -> Q exact and surjective
    ranks_ok = (f.rank(res.e.top) == res.z.M.dim and f.rank(res.e.bottom) == res.z.N.dim
                and f.rank(res.d.bottom) == res.p1.N.dim)
    return ranks_ok and res.p1.N.dim + res.z.N.dim == res.p0.N.dim


# ----------------------------------------------------------------------
# Ext^1 in Mor(A), three ways

@dataclass
class MorExt:
    dim: int
    classes: list[np.ndarray]   # representatives h in Hom(P, N), as matrices
    boundaries: np.ndarray      # columns spanning the boundary subspace (flattened h)
    cycles: np.ndarray
    field: object = None


def mor_ext1_resolution(z: MorObject, w: MorObject) -> MorExt:
    """Cokernel of ``Hom(P0(Z), W) -> Hom(P1(Z), W)`` via the standard resolution."""
    res = std_resolution(z)
    f = z.alg.field
    p = res.p1.N
    size = w.N.dim * p.dim
    cyc = [x.bottom.reshape(-1, 1) for x in mor_hom(res.p1, w)]
    bnd = [f.matmul(x.bottom, res.d.bottom).reshape(-1, 1) for x in mor_hom(res.p0, w)]
    return _quotient(f, cyc, bnd, size, (w.N.dim, p.dim))


def mor_ext1_homotopy(z: MorObject, w: MorObject) -> MorExt:
    """``Hom(P, N)`` modulo ``{g u - v sigma}``."""
    sig = _require_bl(z)
    f = z.alg.field
    real = sig.realise()
    p, q = real.source, real.target
    size = w.N.dim * p.dim
    cyc = [h.reshape(-1, 1) for h in hom_basis(p, w.N)]
    bnd = [f.matmul(w.g.matrix, u).reshape(-1, 1) for u in hom_basis(p, w.M)]
    bnd += [f.matmul(v, real.matrix).reshape(-1, 1) for v in hom_basis(q, w.N)]
    return _quotient(f, cyc, bnd, size, (w.N.dim, p.dim))


def _quotient(f, cyc, bnd, size, shape) -> MorExt:
    z = f.image_basis(f.hstack(cyc, size)) if cyc and size else f.zeros(size, 0)
    b = f.image_basis(f.hstack(bnd, size)) if bnd and size else f.zeros(size, 0)
    reps = f.complement_columns(b, z) if z.shape[1] else f.zeros(size, 0)
    classes = [reps[:, c].reshape(shape) for c in range(reps.shape[1])]
    return MorExt(z.shape[1] - b.shape[1], classes, b, z, f)


def mor_ext1_t2(z: MorObject, w: MorObject) -> int:
    return ext1_dim(mor_to_t2(z), mor_to_t2(w))


def same_classes(a: MorExt, b: MorExt) -> bool:
    """Whether two routes give the same quotient of ``Hom(P, N)``.

    The boundary spaces must coincide and the class representatives of one
    route must stay independent modulo the boundaries of the other.
    """
    if a.dim != b.dim or a.boundaries.shape != b.boundaries.shape:
        return False
    f = a.field
    size = a.boundaries.shape[0]
    if size == 0:
        return True
    if f.rank(f.hstack([a.boundaries, b.boundaries], size)) != a.boundaries.shape[1]:
        return False
    if not a.classes:
        return True
    reps = f.hstack([c.reshape(-1, 1) for c in a.classes], size)
    return f.rank(f.hstack([b.boundaries, reps], size)) == b.boundaries.shape[1] + len(a.classes)


def is_boundary(z: MorObject, w: MorObject, h: np.ndarray) -> bool:
    data = mor_ext1_homotopy(z, w)
    f = z.alg.field
    if data.boundaries.shape[0] == 0:
        return True
    return f.in_span(data.boundaries, h.reshape(-1, 1))


# ----------------------------------------------------------------------
# mapping cone

@dataclass
class ConeSequence:
    """``0 -> Z_g -> Z_c -> Z_sigma -> 0`` with ``c = (g h; 0 sigma)``."""

    cone: MorObject
    inc: MorMorphism
    proj: MorMorphism
    h: np.ndarray


def mapping_cone_extension(z: MorObject, w: MorObject, h: np.ndarray) -> ConeSequence:
    """Extension of ``Z_sigma`` by ``Z_g`` realising the class of ``h: P -> N``."""
    sig = _require_bl(z)
    f = z.alg.field
    real = sig.realise()
    p, q = real.source, real.target
    top = direct_sum_data([w.M, p], z.alg)
    bot = direct_sum_data([w.N, q], z.alg)
    c = f.add(f.add(f.chain(bot.inclusions[0].matrix, w.g.matrix, top.projections[0].matrix),
                    f.chain(bot.inclusions[0].matrix, h, top.projections[1].matrix)),
              f.chain(bot.inclusions[1].matrix, real.matrix, top.projections[1].matrix))
    cone = MorObject(ModuleHom(top.module, bot.module, c))
    inc = MorMorphism(w, cone, top.inclusions[0].matrix, bot.inclusions[0].matrix)
    proj = MorMorphism(cone, z, top.projections[1].matrix, bot.projections[1].matrix)
    return ConeSequence(cone, inc, proj, h)


def class_of_extension(z: MorObject, w: MorObject, seq: ConeSequence) -> np.ndarray:
    """Recover ``h in Hom(P, N)`` from an extension by lifting ``P0(Z) -> Z``."""
    res = std_resolution(z)
    f = z.alg.field
    e = seq.cone
    lifts = mor_hom(res.p0, e)
    target_top = res.e.top.reshape(-1, 1)
    target_bot = res.e.bottom.reshape(-1, 1)
    cols = [f.vstack([f.matmul(seq.proj.top, x.top).reshape(-1, 1), f.matmul(seq.proj.bottom, x.bottom).reshape(-1, 1)],
                     1) for x in lifts]
    rhs = f.vstack([target_top, target_bot], 1)
    sol = f.solve(f.hstack(cols, rhs.shape[0]), rhs).particular[:, 0]
    bot = f.zeros(e.N.dim, res.p0.N.dim)
    for c, x in zip(sol, lifts):
        if c != 0:
            bot = f.add(bot, f.scale(c, x.bottom))
    restricted = f.matmul(bot, res.d.bottom)      # P -> cone N-part, lands in N
    return f.solve(seq.inc.bottom, restricted).particular


def is_split(seq: ConeSequence) -> bool:
    """Whether the projection onto ``Z_sigma`` has a section in Mor(A)."""
    f = seq.cone.alg.field
    z = seq.proj.target
    sections = mor_hom(z, seq.cone)
    if not sections:
        return z.dim == 0
    cols = [f.vstack([f.matmul(seq.proj.top, s.top).reshape(-1, 1),
                      f.matmul(seq.proj.bottom, s.bottom).reshape(-1, 1)], 1) for s in sections]
    rhs = f.vstack([f.eye(z.M.dim).reshape(-1, 1), f.eye(z.N.dim).reshape(-1, 1)], 1)
    try:
        f.solve(f.hstack(cols, rhs.shape[0]), rhs)
    except Exception:
        return False
    return True


# ----------------------------------------------------------------------

def cokernel_divisible_membership(sigmas, w: MorObject) -> bool:
    """Whether ``Coker(g)`` is divisible by every map in ``sigmas``."""
    from .modules import cokernel
    from .torsion import is_divisible

    return is_divisible(sigmas, cokernel(w.g).target)


def ext1_vanishes_all(sigmas, w: MorObject) -> bool:
    return all(mor_ext1_resolution(from_projmap(s), w).dim == 0 for s in sigmas)


def regular_object(alg: FDAlgebra) -> MorObject:
    """``Z_{id_A}`` with its map between projectives."""
    from .homalg import identity_projmap

    cached = alg.__dict__.get("_regular_object")
    if cached is None:
        cached = from_projmap(identity_projmap(alg, list(range(alg.n))), name="Z_id_A")
        alg._regular_object = cached
    return cached


# ----------------------------------------------------------------------
# test corpora

def corpus_objects(modules, sigma_sets=()) -> list[MorObject]:
    """``0 -> X``, ``X -> 0`` and ``id_X`` for each module, then every ``Z_sigma``."""
    out = []
    for x in modules:
        tag = x.name or f"X{len(out)}"
        for build, label in ((zero_to, "0->"), (to_zero, "->0:"), (identity_object, "id:")):
            obj = build(x)
            obj.name = f"{label}{tag}"
            out.append(obj)
    for sigmas in sigma_sets:
        out.extend(from_projmap(s) for s in sigmas)
    return out


def random_projmap(alg: FDAlgebra, rng: np.random.Generator, *, max_terms: int = 2,
                   max_dim: int = 8) -> ProjMap:
    """Random map between sums of indecomposable projectives of total dimension at most ``max_dim``."""
    f = alg.field
    pdim = [projective(alg, v).dim for v in range(alg.n)]
    while True:
        dom = sorted(rng.integers(0, alg.n, size=int(rng.integers(0, max_terms + 1))).tolist())
        cod = sorted(rng.integers(0, alg.n, size=int(rng.integers(0, max_terms + 1))).tolist())
        if sum(pdim[v] for v in dom + cod) <= max_dim:
            break
    ent = f.zeros(len(cod) * len(dom), alg.dim).reshape(len(cod), len(dom), alg.dim)
    for j, c in enumerate(cod):
        for i, d in enumerate(dom):
            for k in alg.corner_indices(c, d):
                ent[j, i, k] = f.scalar(int(rng.integers(0, 5)))
    return ProjMap(alg, dom, cod, ent)


def random_object(modules, rng: np.random.Generator, *, max_dim: int = 8) -> MorObject:
    """``Z_g`` for a random combination ``g`` of a Hom basis between two pool modules."""
    pool = [m for m in modules if m.dim <= max_dim]
    while True:
        m, n = (pool[int(i)] for i in rng.integers(0, len(pool), size=2))
        if m.dim + n.dim <= max_dim:
            break
    f = m.field
    basis = hom_basis(m, n)
    mat = f.zeros(n.dim, m.dim)
    for b in basis:
        mat = f.add(mat, f.scale(f.scalar(int(rng.integers(0, 5))), b))
    return MorObject(ModuleHom(m, n, mat), name=f"rand:{m.name}->{n.name}")
