"""Maps between projectives, presentations, Ext^1, the AR translate, and
approximation sequences built from universal extensions."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from .algebra import FDAlgebra
from .errors import Diverged, PdTooLarge
from .modules import (DirectSum, FDModule, ModuleHom, cokernel, direct_sum, direct_sum_data, hom_basis,
                      identity, injective, is_isomorphic, kernel, projective, projective_cover)

DEFAULT_ITERATIONS = 32
DEFAULT_TOTAL_DIM = 10_000


# ----------------------------------------------------------------------
# maps between projectives

def proj_sum(alg: FDAlgebra, vertices: Sequence[int]) -> DirectSum:
    """``sum_i A e_{v_i}`` with its inclusions; generator ``e_{v_i}`` of summand ``i``."""
    ds = direct_sum_data([projective(alg, v) for v in vertices], alg)
    ds.vertices = list(vertices)
    return ds


def generator_vector(ds: DirectSum, i: int) -> np.ndarray:
    alg = ds.module.alg
    v = ds.vertices[i]
    p = projective(alg, v)
    x = alg.field.zeros(p.dim, 1)
    x[p.basis_index.index(alg.idempotents[v]), 0] = alg.field.scalar(1)
    return alg.field.matmul(ds.inclusions[i].matrix, x)[:, 0]


class ProjMap:
    """A map ``sum_i A e_{d_i} -> sum_j A e_{c_j}`` between projectives.

    ``entries[j, i]`` is the coordinate vector of the image of ``e_{d_i}`` in
    the summand ``A e_{c_j}``; it lies in ``e_{d_i} A e_{c_j}`` (a
    combination of paths from ``c_j`` to ``d_i``) and the map acts by right
    multiplication.
    """

    def __init__(self, alg: FDAlgebra, domain: Sequence[int], codomain: Sequence[int],
                 entries: np.ndarray | None = None, *, name: str | None = None):
        self.alg = alg
        self.domain = list(domain)
        self.codomain = list(codomain)
        f = alg.field
        if entries is None:
            entries = f.zeros(len(self.codomain) * len(self.domain), alg.dim).reshape(
                len(self.codomain), len(self.domain), alg.dim)
        self.entries = entries
        self.name = name
        for j, c in enumerate(self.codomain):
            for i, d in enumerate(self.domain):
                if not alg.element_corner_ok(entries[j, i], c, d):
                    raise ValueError(f"entry ({j},{i}) is not in e_{d + 1} A e_{c + 1}")
        self._real = None

    @property
    def field(self):
        return self.alg.field

    def __repr__(self):
        tag = f" {self.name}" if self.name else ""
        return f"ProjMap{tag}({[v + 1 for v in self.domain]} -> {[v + 1 for v in self.codomain]})"

    def source_sum(self) -> DirectSum:
        return self.realise().source_data

    def target_sum(self) -> DirectSum:
        return self.realise().target_data

    def realise(self) -> ModuleHom:
        """The map as a :class:`ModuleHom` between direct sums of projectives."""
        if self._real is not None:
            return self._real
        alg, f = self.alg, self.field
        src = proj_sum(alg, self.domain)
        tgt = proj_sum(alg, self.codomain)
        mat = f.zeros(tgt.module.dim, src.module.dim)
        for i, d in enumerate(self.domain):
            pd_ = projective(alg, d)
            for j, c in enumerate(self.codomain):
                r = self.entries[j, i]
                if not np.any(r != 0):
                    continue
                pc = projective(alg, c)
                pos = {k: n for n, k in enumerate(pc.basis_index)}
                comp = f.zeros(pc.dim, pd_.dim)
                for col, b in enumerate(pd_.basis_index):
                    prod = f.reduce(np.tensordot(r, alg.mult[b], axes=(0, 0)))
                    for k in np.nonzero(prod)[0]:
                        comp[pos[k], col] = prod[k]
                mat = f.add(mat, f.chain(tgt.inclusions[j].matrix, comp, src.projections[i].matrix))
        h = ModuleHom(src.module, tgt.module, mat)
        h.source_data, h.target_data = src, tgt
        self._real = h
        return h

    def hom_matrix(self, x: FDModule) -> np.ndarray:
        """``Hom(sigma, X)`` as a matrix ``sum_j e_{c_j} X -> sum_i e_{d_i} X``."""
        f = self.field
        rows = [x.dimvec[d] for d in self.domain]
        cols = [x.dimvec[c] for c in self.codomain]
        ro = np.concatenate([[0], np.cumsum(rows)]).astype(int)
        co = np.concatenate([[0], np.cumsum(cols)]).astype(int)
        out = f.zeros(int(ro[-1]), int(co[-1]))
        for j, c in enumerate(self.codomain):
            for i, d in enumerate(self.domain):
                r = self.entries[j, i]
                if not np.any(r != 0) or not rows[i] or not cols[j]:
                    continue
                out[ro[i]:ro[i + 1], co[j]:co[j + 1]] = x.act(r)[x.block(d), x.block(c)]
        return out

    def direct_sum(self, other: "ProjMap") -> "ProjMap":
        f = self.field
        a, b = self.entries, other.entries
        ent = f.zeros((a.shape[0] + b.shape[0]) * (a.shape[1] + b.shape[1]), self.alg.dim).reshape(
            a.shape[0] + b.shape[0], a.shape[1] + b.shape[1], self.alg.dim)
        ent[:a.shape[0], :a.shape[1]] = a
        ent[a.shape[0]:, a.shape[1]:] = b
        return ProjMap(self.alg, self.domain + other.domain, self.codomain + other.codomain, ent)

    def is_injective(self) -> bool:
        return self.realise().is_injective()

    def cokernel(self) -> ModuleHom:
        """Projection from the codomain onto ``Coker(sigma)``."""
        if not hasattr(self, "_coker"):
            self._coker = cokernel(self.realise())
        return self._coker


def projmap_from_hom(h: ModuleHom, src: DirectSum, tgt: DirectSum) -> ProjMap:
    """Read off the matrix of a homomorphism between sums of projectives."""
    alg = h.source.alg
    f = alg.field
    ent = f.zeros(len(tgt.vertices) * len(src.vertices), alg.dim).reshape(
        len(tgt.vertices), len(src.vertices), alg.dim)
    for i in range(len(src.vertices)):
        img = f.matmul(h.matrix, generator_vector(src, i).reshape(-1, 1))
        for j, c in enumerate(tgt.vertices):
            comp = f.matmul(tgt.projections[j].matrix, img)[:, 0]
            pc = projective(alg, c)
            for n, k in enumerate(pc.basis_index):
                ent[j, i, k] = comp[n]
    return ProjMap(alg, src.vertices, tgt.vertices, ent)


def identity_projmap(alg: FDAlgebra, vertices: Sequence[int]) -> ProjMap:
    f = alg.field
    n = len(vertices)
    ent = f.zeros(n * n, alg.dim).reshape(n, n, alg.dim)
    for i, v in enumerate(vertices):
        ent[i, i, alg.idempotents[v]] = f.scalar(1)
    return ProjMap(alg, vertices, vertices, ent)


def zero_projmap(alg: FDAlgebra, domain: Sequence[int], codomain: Sequence[int]) -> ProjMap:
    return ProjMap(alg, domain, codomain)


def projmap_from_paths(alg: FDAlgebra, domain, codomain, entries: dict) -> ProjMap:
    """``entries`` maps ``(j, i)`` to an element given as text or coordinates."""
    from .algebra import path_element

    pm = ProjMap(alg, domain, codomain)
    for (j, i), x in entries.items():
        pm.entries[j, i] = path_element(alg, x) if not isinstance(x, np.ndarray) else x
    return ProjMap(alg, domain, codomain, pm.entries)


# ----------------------------------------------------------------------
# presentations

@dataclass
class Presentation:
    """``P1 --sigma--> P0 --proj--> M -> 0``."""

    sigma: ProjMap
    module: FDModule
    proj: ModuleHom
    minimal: bool = False


def _cover_data(m: FDModule):
    cov = projective_cover(m)
    ds = cov.sum_data
    ds.vertices = cov.vertices
    return cov, ds


def minimal_presentation(m: FDModule) -> Presentation:
    cache = m.__dict__.get("_min_pres")
    if cache is not None:
        return cache
    cov, p0 = _cover_data(m)
    k = kernel(cov)
    cov1, p1 = _cover_data(k.source)
    sig = ModuleHom(p1.module, p0.module, m.field.matmul(k.matrix, cov1.matrix))
    pm = projmap_from_hom(sig, p1, p0)
    pres = Presentation(pm, m, ModuleHom(pm.realise().target, m, cov.matrix), minimal=True)
    m._min_pres = pres
    return pres


def presentation_from_projmap(sigma: ProjMap) -> Presentation:
    q = sigma.cokernel()
    return Presentation(sigma, q.target, q)


def projective_resolution(m: FDModule, length: int) -> list[ProjMap]:
    """Differentials ``d_1, ..., d_length`` of a minimal projective resolution."""
    out = []
    cov, p0 = _cover_data(m)
    cur_ds, cur_map = p0, cov
    for _ in range(length):
        k = kernel(cur_map)
        if k.source.dim == 0:
            break
        cov1, p1 = _cover_data(k.source)
        d = ModuleHom(p1.module, cur_ds.module, m.field.matmul(k.matrix, cov1.matrix))
        out.append(projmap_from_hom(d, p1, cur_ds))
        cur_ds, cur_map = p1, ModuleHom(p1.module, cur_ds.module, d.matrix)
    return out


def pd_at_most_one(m: FDModule) -> bool:
    return minimal_presentation(m).sigma.is_injective()


# ----------------------------------------------------------------------
# Ext^1

@dataclass
class ExtData:
    dim: int
    cocycles: list[np.ndarray]          # vectors in sum_i e_{d_i} N (images of generators of P1)
    presentation: Presentation
    cycle_space: np.ndarray = dc_field(repr=False, default=None)
    boundary_space: np.ndarray = dc_field(repr=False, default=None)


def _cycle_constraints(pres: Presentation, n: FDModule) -> np.ndarray:
    """Rows cutting out ``{phi in Hom(P1, N) : phi(ker sigma) = 0}``."""
    sig = pres.sigma
    f = n.field
    real = sig.realise()
    p1 = real.source_data
    ker = f.kernel_basis(real.matrix) if real.target.dim else f.eye(real.source.dim)
    nd = sum(n.dimvec[d] for d in sig.domain)
    if ker.shape[1] == 0 or nd == 0:
        return f.zeros(0, nd)
    alg = n.alg
    offs = np.concatenate([[0], np.cumsum([n.dimvec[d] for d in sig.domain])]).astype(int)
    rows = []
    for c in range(ker.shape[1]):
        x = ker[:, c]
        block = f.zeros(n.dim, nd)
        for i, d in enumerate(sig.domain):
            comp = f.matmul(p1.projections[i].matrix, x.reshape(-1, 1))[:, 0]
            pdm = projective(alg, d)
            elt = f.zeros(alg.dim, 1)[:, 0]
            for pos, k in enumerate(pdm.basis_index):
                elt[k] = comp[pos]
            if n.dimvec[d]:
                block[:, offs[i]:offs[i + 1]] = n.act(elt)[:, n.block(d)]
        rows.append(block)
    return f.vstack(rows, nd)


def ext1_from_presentation(pres: Presentation, n: FDModule) -> ExtData:
    f = n.field
    hm = pres.sigma.hom_matrix(n)
    nd = hm.shape[0]
    cons = _cycle_constraints(pres, n)
    z = f.kernel_basis(cons) if cons.shape[0] else f.eye(nd)
    b = f.image_basis(hm) if hm.size else f.zeros(nd, 0)
    cocycles_mat = f.complement_columns(b, z) if z.shape[1] else f.zeros(nd, 0)
    cocycles = [cocycles_mat[:, c] for c in range(cocycles_mat.shape[1])]
    return ExtData(z.shape[1] - b.shape[1], cocycles, pres, z, b)


def ext1(m: FDModule, n: FDModule) -> ExtData:
    return ext1_from_presentation(minimal_presentation(m), n)


def ext1_dim(m: FDModule, n: FDModule) -> int:
    return ext1(m, n).dim


# ----------------------------------------------------------------------
# Nakayama functor and AR translate

def nakayama(sigma: ProjMap) -> ModuleHom:
    """``nu(sigma) : sum_i D(e_{d_i} A) -> sum_j D(e_{c_j} A)``."""
    alg, f = sigma.alg, sigma.field
    src = direct_sum_data([injective(alg, d) for d in sigma.domain], alg)
    tgt = direct_sum_data([injective(alg, c) for c in sigma.codomain], alg)
    mat = f.zeros(tgt.module.dim, src.module.dim)
    for i, d in enumerate(sigma.domain):
        idm = injective(alg, d)
        for j, c in enumerate(sigma.codomain):
            r = sigma.entries[j, i]
            if not np.any(r != 0):
                continue
            icm = injective(alg, c)
            comp = f.zeros(icm.dim, idm.dim)
            for row, y in enumerate(icm.basis_index):
                prod = f.reduce(np.tensordot(r, alg.mult[:, y, :], axes=(0, 0)))  # r * y
                for col, b in enumerate(idm.basis_index):
                    comp[row, col] = prod[b]
            mat = f.add(mat, f.chain(tgt.inclusions[j].matrix, comp, src.projections[i].matrix))
    return ModuleHom(src.module, tgt.module, mat)


def ar_translate(m: FDModule) -> FDModule:
    sig = minimal_presentation(m).sigma
    if not sig.domain:
        from .modules import zero_module

        return zero_module(m.alg)
    return kernel(nakayama(sig)).source


def injectively_stable_hom_dim(n: FDModule, x: FDModule) -> int:
    """``dim Hom(N, X)`` modulo maps factoring through an injective module."""
    f = n.field
    hb = hom_basis(n, x)
    if not hb:
        return 0
    through = []
    for v in range(n.alg.n):
        iv = injective(n.alg, v)
        for h in hom_basis(n, iv):
            for g in hom_basis(iv, x):
                through.append(f.matmul(g, h).reshape(-1, 1))
    full = f.hstack([b.reshape(-1, 1) for b in hb], n.dim * x.dim)
    sub = f.rank(f.hstack(through, n.dim * x.dim)) if through else 0
    return f.rank(full) - sub


def projectively_stable_hom_dim(n: FDModule, x: FDModule) -> int:
    f = n.field
    hb = hom_basis(n, x)
    if not hb:
        return 0
    through = []
    for v in range(n.alg.n):
        pv = projective(n.alg, v)
        for h in hom_basis(n, pv):
            for g in hom_basis(pv, x):
                through.append(f.matmul(g, h).reshape(-1, 1))
    full = f.hstack([b.reshape(-1, 1) for b in hb], n.dim * x.dim)
    sub = f.rank(f.hstack(through, n.dim * x.dim)) if through else 0
    return f.rank(full) - sub


# ----------------------------------------------------------------------
# universal extensions and approximation sequences

@dataclass
class Extension:
    """``0 -> X --inc--> E --proj--> S^d -> 0``."""

    middle: FDModule
    inc: ModuleHom
    proj: ModuleHom
    multiplicity: int


def extension_from_cocycles(x: FDModule, pres: Presentation, cocycles: Sequence[np.ndarray]) -> Extension:
    """Pushout of ``d`` copies of the presentation along the given cocycles."""
    f = x.field
    alg = x.alg
    sig = pres.sigma
    d = len(cocycles)
    s = pres.module
    if d == 0:
        return Extension(x, identity(x), ModuleHom(x, direct_sum([], alg), f.zeros(0, x.dim)), 0)
    real = sig.realise()
    p1, p0 = real.source_data, real.target_data
    p1d = direct_sum_data([p1.module] * d, alg)
    p0d = direct_sum_data([p0.module] * d, alg)
    mid = direct_sum_data([x, p0d.module], alg)
    # cocycle phi_c : P1 -> X determined by images of generators
    offs = np.concatenate([[0], np.cumsum([x.dimvec[v] for v in sig.domain])]).astype(int)
    psi = f.zeros(mid.module.dim, p1d.module.dim)
    for c, cyc in enumerate(cocycles):
        phi = f.zeros(x.dim, p1.module.dim)
        for i, v in enumerate(sig.domain):
            gen_img = f.zeros(x.dim, 1)
            gen_img[x.block(v), 0] = cyc[offs[i]:offs[i + 1]]
            pv = projective(alg, v)
            comp = f.zeros(x.dim, pv.dim)
            for col, k in enumerate(pv.basis_index):
                comp[:, col] = f.matmul(x.acts[k], gen_img)[:, 0]
            phi = f.add(phi, f.matmul(comp, p1.projections[i].matrix))
        col_c = p1d.projections[c].matrix
        part_x = f.neg(f.chain(mid.inclusions[0].matrix, phi, col_c))
        part_p = f.chain(mid.inclusions[1].matrix, p0d.inclusions[c].matrix, real.matrix, col_c)
        psi = f.add(psi, f.add(part_x, part_p))
    q = cokernel(ModuleHom(p1d.module, mid.module, psi))
    e = q.target
    inc = ModuleHom(x, e, f.matmul(q.matrix, mid.inclusions[0].matrix))
    sd = direct_sum_data([s] * d, alg)
    to_s = f.zeros(sd.module.dim, mid.module.dim)
    for c in range(d):
        to_s = f.add(to_s, f.chain(sd.inclusions[c].matrix, pres.proj.matrix, p0d.projections[c].matrix,
                                   mid.projections[1].matrix))
    sec = f.right_inverse(q.matrix) if e.dim else f.zeros(mid.module.dim, 0)
    proj = ModuleHom(e, sd.module, f.matmul(to_s, sec))
    return Extension(e, inc, proj, d)


def universal_extension(x: FDModule, s: FDModule) -> Extension:
    """Universal extension of ``x`` by copies of ``s``."""
    data = ext1(s, x)
    return extension_from_cocycles(x, data.presentation, data.cocycles)


@dataclass
class ApproxSequence:
    start: FDModule
    middle: FDModule
    inc: ModuleHom
    proj: ModuleHom
    certificate: list[FDModule]
    trace: list[tuple[int, int, int]]  # (generator index, multiplicity, total dim)


def approx_sequence(generators: Sequence[FDModule], s: FDModule, *, cap: int = DEFAULT_ITERATIONS,
                    total_dim: int = DEFAULT_TOTAL_DIM, check_pd: bool = True) -> ApproxSequence:
    """Iterate universal extensions until ``Ext^1(G, -)`` vanishes for every generator."""
    gens = list(generators)
    if check_pd:
        for g in gens:
            if not pd_at_most_one(g):
                raise PdTooLarge("generators must have projective dimension at most one")
    cur = s
    inc = identity(s)
    certificate = [s]
    trace: list = []
    iterations = 0
    while True:
        changed = False
        for gi, g in enumerate(gens):
            data = ext1(g, cur)
            if data.dim == 0:
                continue
            if iterations >= cap:
                raise Diverged(f"approximation did not stabilise within {cap} iterations", trace)
            ext = extension_from_cocycles(cur, data.presentation, data.cocycles)
            iterations += 1
            cur = ext.middle
            inc = ext.inc @ inc
            certificate.extend([g] * data.dim)
            trace.append((gi, data.dim, cur.dim))
            if cur.dim > total_dim:
                raise Diverged(f"approximation exceeded total dimension {total_dim}", trace)
            changed = True
        if not changed:
            break
    proj = cokernel(inc)
    return ApproxSequence(s, cur, inc, proj, certificate, trace)


def partial_tilting_from_set(generators: Sequence[FDModule], alg: FDAlgebra | None = None, *,
                             cap: int = DEFAULT_ITERATIONS, total_dim: int = DEFAULT_TOTAL_DIM):
    """``T_1 = sum of the middle terms of the approximation sequences``.

    Returns ``(T_1, sequences)``.
    """
    gens = list(generators)
    if not gens:
        if alg is None:
            raise ValueError("empty generator set needs an algebra")
        return direct_sum([], alg), []
    seqs = [approx_sequence(gens, g, cap=cap, total_dim=total_dim) for g in gens]
    return direct_sum([q.middle for q in seqs]), seqs


def in_perp1(gens: Sequence[FDModule], x: FDModule) -> bool:
    return all(ext1_dim(g, x) == 0 for g in gens)


def in_perp(gens: Sequence[FDModule], x: FDModule) -> bool:
    from .modules import hom_dim

    return all(hom_dim(g, x) == 0 and ext1_dim(g, x) == 0 for g in gens)


def certificate_ok(seq: ApproxSequence, generators: Sequence[FDModule]) -> bool:
    for piece in seq.certificate:
        if not any(is_isomorphic(piece, g)[0] for g in generators):
            return False
    return sum(p.dim for p in seq.certificate) == seq.middle.dim


def syzygy(m: FDModule) -> ModuleHom:
    return kernel(projective_cover(m))
