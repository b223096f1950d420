"""Finite-dimensional left modules, homomorphisms and basic constructions.

A module's underlying space is laid out in vertex blocks: the coordinates of
``e_0 M`` come first, then ``e_1 M`` and so on. The action of every algebra
basis element is stored as a full square matrix.
"""
from __future__ import annotations

import itertools
from collections import OrderedDict
from typing import Sequence

import numpy as np

from .algebra import FDAlgebra
from .errors import NotInjective, Undecided

ENUM_CAP = 1 << 12
RANDOM_TRIES = 400
QUICK_TRIES = 24


class FDModule:
    """A left module over ``alg`` with dimension vector ``dimvec``.

    ``acts[k]`` is the matrix of the basis element ``k`` of ``alg``.
    """

    def __init__(self, alg: FDAlgebra, dimvec: Sequence[int], acts: Sequence[np.ndarray],
                 *, check: bool = True, name: str | None = None):
        self.alg = alg
        self.dimvec = tuple(int(x) for x in dimvec)
        self.acts = list(acts)
        self.name = name
        self.offsets = [0]
        for x in self.dimvec:
            self.offsets.append(self.offsets[-1] + x)
        if len(self.dimvec) != alg.n:
            raise ValueError("dimension vector length differs from vertex count")
        if check:
            self.validate()

    @property
    def field(self):
        return self.alg.field

    @property
    def dim(self) -> int:
        return self.offsets[-1]

    def block(self, v: int) -> slice:
        return slice(self.offsets[v], self.offsets[v + 1])

    def __repr__(self):
        tag = f" {self.name}" if self.name else ""
        return f"FDModule{tag}(dimvec={self.dimvec})"

    def act(self, x: np.ndarray) -> np.ndarray:
        """Matrix of an arbitrary algebra element (coordinate vector)."""
        f = self.field
        out = f.zeros(self.dim, self.dim)
        for k in range(self.alg.dim):
            if x[k] != 0:
                out = f.add(out, f.scale(x[k], self.acts[k]))
        return out

    def gen_matrix(self, k: int) -> np.ndarray:
        return self.acts[k]

    def validate(self) -> None:
        f = self.field
        alg = self.alg
        for v, i in enumerate(alg.idempotents):
            proj = f.zeros(self.dim, self.dim)
            b = self.block(v)
            proj[b, b] = f.eye(self.dimvec[v])
            if np.any(self.acts[i] != proj):
                raise ValueError("idempotent does not act as its grading projection")
        for k, (s, t) in enumerate(alg.corners):
            m = self.acts[k]
            mask = np.ones(m.shape, dtype=bool)
            mask[self.block(t), self.block(s)] = False
            if np.any(m[mask] != 0):
                raise ValueError(f"action of {alg.labels[k]} does not respect the grading")
        for i in range(alg.dim):
            for j in range(alg.dim):
                lhs = f.matmul(self.acts[i], self.acts[j])
                rhs = f.zeros(self.dim, self.dim)
                for k in np.nonzero(alg.mult[i, j])[0]:
                    rhs = f.add(rhs, f.scale(alg.mult[i, j, k], self.acts[k]))
                if np.any(lhs != rhs):
                    raise ValueError(f"action is not multiplicative on {alg.labels[i]}*{alg.labels[j]}")


class ModuleHom:
    """A homomorphism ``source -> target`` given by a matrix."""

    def __init__(self, source: FDModule, target: FDModule, matrix: np.ndarray, *, check: bool = False):
        self.source = source
        self.target = target
        self.matrix = matrix
        if matrix.shape != (target.dim, source.dim):
            raise ValueError(f"matrix shape {matrix.shape} does not match {target.dim}x{source.dim}")
        if check and not is_homomorphism(source, target, matrix):
            raise ValueError("matrix does not intertwine the actions")

    @property
    def field(self):
        return self.source.field

    def __matmul__(self, other: "ModuleHom") -> "ModuleHom":
        return ModuleHom(other.source, self.target, self.field.matmul(self.matrix, other.matrix))

    def rank(self) -> int:
        return self.field.rank(self.matrix)

    def is_injective(self) -> bool:
        return self.rank() == self.source.dim

    def is_surjective(self) -> bool:
        return self.rank() == self.target.dim

    def is_zero(self) -> bool:
        return self.field.is_zero(self.matrix)


def is_homomorphism(m: FDModule, n: FDModule, mat: np.ndarray) -> bool:
    f = m.field
    for g in list(m.alg.generators) + list(m.alg.idempotents):
        if np.any(f.matmul(mat, m.acts[g]) != f.matmul(n.acts[g], mat)):
            return False
    return True


def identity(m: FDModule) -> ModuleHom:
    return ModuleHom(m, m, m.field.eye(m.dim))


def zero_hom(m: FDModule, n: FDModule) -> ModuleHom:
    return ModuleHom(m, n, m.field.zeros(n.dim, m.dim))


# ----------------------------------------------------------------------
# construction

def from_generators(alg: FDAlgebra, dimvec: Sequence[int], gens: dict, *, check=True,
                    name=None) -> FDModule:
    """Module from full matrices of the algebra generators.

    ``gens`` maps generator basis indices to square matrices on the
    vertex-block layout; unlisted generators act by zero.
    """
    f = alg.field
    offs = [0]
    for x in dimvec:
        offs.append(offs[-1] + x)
    dim = offs[-1]
    idem = []
    for v in range(alg.n):
        p = f.zeros(dim, dim)
        p[offs[v]:offs[v + 1], offs[v]:offs[v + 1]] = f.eye(dimvec[v])
        idem.append(p)
    words, coeffs = alg.expansion()
    cache: dict = {}

    def word_mat(w):
        if w in cache:
            return cache[w]
        if w[0] == "e":
            out = idem[w[1]]
        else:
            head = gens.get(w[0])
            head = f.zeros(dim, dim) if head is None else head
            out = head if len(w) == 1 else f.matmul(head, word_mat(w[1:]))
        cache[w] = out
        return out

    acts = []
    for k in range(alg.dim):
        m = f.zeros(dim, dim)
        for c, w in zip(coeffs[k], words):
            if c != 0:
                m = f.add(m, f.scale(c, word_mat(w)))
        acts.append(m)
    return FDModule(alg, dimvec, acts, check=check, name=name)


def representation(alg: FDAlgebra, dimvec: Sequence[int], arrows: dict, *, check=True,
                   name=None) -> FDModule:
    """Module from one block matrix per arrow.

    ``arrows`` maps arrow names (or generator basis indices) to matrices of
    shape ``dimvec[target] x dimvec[source]``.
    """
    f = alg.field
    dimvec = list(dimvec)
    offs = np.concatenate([[0], np.cumsum(dimvec)]).astype(int)
    dim = int(offs[-1])
    label_index = {lab: k for k, lab in enumerate(alg.labels)}
    gens = {}
    for key, block in arrows.items():
        k = label_index[key] if isinstance(key, str) else key
        s, t = alg.corners[k]
        block = f.array(block).reshape(dimvec[t], dimvec[s])
        m = f.zeros(dim, dim)
        m[offs[t]:offs[t + 1], offs[s]:offs[s + 1]] = block
        gens[k] = m
    return from_generators(alg, dimvec, gens, check=check, name=name)


def arrow_block(m: FDModule, k: int) -> np.ndarray:
    s, t = m.alg.corners[k]
    return m.acts[k][m.block(t), m.block(s)]


def _module_on_basis(alg: FDAlgebra, idx: list[int], name=None) -> tuple[FDModule, list[int]]:
    """Submodule of the left regular module spanned by basis elements ``idx``
    (which must span a left ideal); returns module and the ordered index list."""
    f = alg.field
    order = sorted(idx, key=lambda k: (alg.corners[k][1], idx.index(k)))
    dimvec = [sum(1 for k in order if alg.corners[k][1] == v) for v in range(alg.n)]
    pos = {k: i for i, k in enumerate(order)}
    acts = []
    for a in range(alg.dim):
        m = f.zeros(len(order), len(order))
        for k in order:
            prod = alg.mult[a, k]
            for j in np.nonzero(prod)[0]:
                m[pos[j], pos[k]] = prod[j]
        acts.append(m)
    return FDModule(alg, dimvec, acts, check=False, name=name), order


def projective(alg: FDAlgebra, v: int) -> FDModule:
    """The indecomposable projective ``A e_v``."""
    cache = alg.__dict__.setdefault("_proj_cache", {})
    if v not in cache:
        mod, order = _module_on_basis(alg, alg.corner_indices(source=v), name=f"P{v + 1}")
        mod.basis_index = order
        cache[v] = mod
    return cache[v]


def regular_module(alg: FDAlgebra) -> FDModule:
    mod, order = _module_on_basis(alg, list(range(alg.dim)), name="A")
    mod.basis_index = order
    return mod


def simple(alg: FDAlgebra, v: int) -> FDModule:
    dv = [0] * alg.n
    dv[v] = 1
    return representation(alg, dv, {}, check=False, name=f"S{v + 1}")


def injective(alg: FDAlgebra, v: int) -> FDModule:
    """The indecomposable injective ``D(e_v A)``.

    Dual basis element ``b*`` for ``b`` in ``e_v A`` sits at vertex
    ``source(b)``; ``a`` acts on ``D(e_v A)`` by the transpose of right
    multiplication by ``a``.
    """
    cache = alg.__dict__.setdefault("_inj_cache", {})
    if v in cache:
        return cache[v]
    f = alg.field
    idx = alg.corner_indices(target=v)
    order = sorted(idx, key=lambda k: (alg.corners[k][0], idx.index(k)))
    pos = {k: i for i, k in enumerate(order)}
    dimvec = [sum(1 for k in order if alg.corners[k][0] == w) for w in range(alg.n)]
    acts = []
    for a in range(alg.dim):
        # (a . phi)(x) = phi(x a); on dual basis: a . b* = sum_x [coeff of b in x a] x*
        m = f.zeros(len(order), len(order))
        for x in order:
            prod = alg.mult[x, a]
            for b in np.nonzero(prod)[0]:
                if b in pos:
                    m[pos[x], pos[b]] = prod[b]
        acts.append(m)
    mod = FDModule(alg, dimvec, acts, check=False, name=f"I{v + 1}")
    mod.basis_index = order
    cache[v] = mod
    return mod


def zero_module(alg: FDAlgebra) -> FDModule:
    return FDModule(alg, [0] * alg.n, [alg.field.zeros(0, 0) for _ in range(alg.dim)], check=False, name="0")


# ----------------------------------------------------------------------
# direct sums and sub/quotient modules

class DirectSum:
    """Direct sum with its canonical inclusions and projections."""

    def __init__(self, module: FDModule, inclusions: list[ModuleHom], projections: list[ModuleHom]):
        self.module = module
        self.inclusions = inclusions
        self.projections = projections


def direct_sum_data(mods: Sequence[FDModule], alg: FDAlgebra | None = None) -> DirectSum:
    mods = list(mods)
    if not mods:
        if alg is None:
            raise ValueError("empty direct sum needs an algebra")
        z = zero_module(alg)
        return DirectSum(z, [], [])
    alg = mods[0].alg
    f = alg.field
    dimvec = [sum(m.dimvec[v] for m in mods) for v in range(alg.n)]
    dim = sum(dimvec)
    # position of (summand i, coordinate c) in the sum
    pos = 0
    perms = [[0] * m.dim for m in mods]
    for v in range(alg.n):
        for i, m in enumerate(mods):
            for c in range(m.offsets[v], m.offsets[v + 1]):
                perms[i][c] = pos
                pos += 1
    incs = []
    for i, m in enumerate(mods):
        e = f.zeros(dim, m.dim)
        for c, g in enumerate(perms[i]):
            e[g, c] = f.scalar(1)
        incs.append(e)
    acts = []
    for k in range(alg.dim):
        a = f.zeros(dim, dim)
        for i, m in enumerate(mods):
            idx = np.array(perms[i], dtype=int)
            if len(idx):
                a[np.ix_(idx, idx)] = m.acts[k]
        acts.append(a)
    total = FDModule(alg, dimvec, acts, check=False)
    inclusions = [ModuleHom(m, total, e) for m, e in zip(mods, incs)]
    projections = [ModuleHom(total, m, np.array(e.T, copy=True)) for m, e in zip(mods, incs)]
    return DirectSum(total, inclusions, projections)


def direct_sum(mods: Sequence[FDModule], alg: FDAlgebra | None = None) -> FDModule:
    return direct_sum_data(mods, alg).module


def power(m: FDModule, n: int) -> FDModule:
    return direct_sum([m] * n, m.alg)


def hom_between_sums(src: DirectSum, tgt: DirectSum, blocks) -> ModuleHom:
    """Map between direct sums from a matrix of component homs (``blocks[j][i]: src_i -> tgt_j``)."""
    f = src.module.field
    mat = f.zeros(tgt.module.dim, src.module.dim)
    for j, row in enumerate(blocks):
        for i, h in enumerate(row):
            if h is None:
                continue
            hm = h.matrix if isinstance(h, ModuleHom) else h
            mat = f.add(mat, f.chain(tgt.inclusions[j].matrix, hm, src.projections[i].matrix))
    return ModuleHom(src.module, tgt.module, mat)


def _graded_basis(m: FDModule, span: np.ndarray) -> list[np.ndarray]:
    """Per-vertex bases (in block coordinates) of a graded subspace."""
    f = m.field
    out = []
    for v in range(m.alg.n):
        b = m.block(v)
        blk = span[b, :]
        out.append(f.image_basis(blk) if blk.shape[1] and blk.shape[0] else f.zeros(m.dimvec[v], 0))
    return out


def submodule(m: FDModule, span: np.ndarray, *, check: bool = True) -> ModuleHom:
    """Inclusion of the submodule spanned by the columns of ``span``."""
    f = m.field
    if span.shape[1] and check:
        full = f.image_basis(span)
        for g in list(m.alg.generators) + list(m.alg.idempotents):
            if not f.in_span(full, f.matmul(m.acts[g], full)):
                raise ValueError("subspace is not a submodule")
    # graded pieces: e_v applied to span
    proj = [f.matmul(m.acts[i], span) if span.shape[1] else span for i in m.alg.idempotents]
    blocks = []
    for v in range(m.alg.n):
        b = m.block(v)
        blocks.append(f.image_basis(proj[v][b, :]) if proj[v].shape[1] and m.dimvec[v] else f.zeros(m.dimvec[v], 0))
    dimvec = [bl.shape[1] for bl in blocks]
    inc = f.zeros(m.dim, sum(dimvec))
    c = 0
    for v, bl in enumerate(blocks):
        inc[m.block(v), c:c + bl.shape[1]] = bl
        c += bl.shape[1]
    return _restrict(m, inc, dimvec)


def _restrict(m: FDModule, inc: np.ndarray, dimvec) -> ModuleHom:
    f = m.field
    if inc.shape[1] == 0:
        z = zero_module(m.alg)
        return ModuleHom(z, m, inc)
    left = f.left_inverse(inc)
    acts = [f.chain(left, a, inc) for a in m.acts]
    sub = FDModule(m.alg, dimvec, acts, check=False)
    return ModuleHom(sub, m, inc)


def quotient(m: FDModule, span: np.ndarray) -> ModuleHom:
    """Projection onto ``m / span`` (``span`` spanning a submodule)."""
    f = m.field
    blocks = _graded_basis(m, span) if span.shape[1] else [f.zeros(d, 0) for d in m.dimvec]
    qs, secs, dimvec = [], [], []
    for v, bl in enumerate(blocks):
        d = m.dimvec[v]
        if bl.shape[1]:
            q, qd = f.cokernel_projection(bl)
        else:
            q, qd = f.eye(d), d
        qs.append(q)
        secs.append(f.right_inverse(q) if qd else f.zeros(d, 0))
        dimvec.append(qd)
    q = f.block_diag(qs)
    s = f.block_diag(secs)
    acts = [f.chain(q, a, s) for a in m.acts]
    quo = FDModule(m.alg, dimvec, acts, check=False)
    return ModuleHom(m, quo, q)


def kernel(h: ModuleHom) -> ModuleHom:
    f = h.field
    return submodule(h.source, f.kernel_basis(h.matrix) if h.target.dim else f.eye(h.source.dim), check=False)


def image(h: ModuleHom) -> ModuleHom:
    f = h.field
    span = f.image_basis(h.matrix) if h.source.dim else f.zeros(h.target.dim, 0)
    return submodule(h.target, span, check=False)


def cokernel(h: ModuleHom) -> ModuleHom:
    f = h.field
    span = f.image_basis(h.matrix) if h.source.dim else f.zeros(h.target.dim, 0)
    return quotient(h.target, span)


def quotient_by(inclusion: ModuleHom) -> ModuleHom:
    if not inclusion.is_injective():
        raise NotInjective("claimed inclusion has a nonzero kernel")
    return quotient(inclusion.target, inclusion.matrix)


def factor_through(h: ModuleHom, inc: ModuleHom) -> ModuleHom:
    """The map ``h'`` with ``inc @ h' = h`` when the image of ``h`` lies in that of ``inc``."""
    f = h.field
    sol = f.solve(inc.matrix, h.matrix)
    return ModuleHom(h.source, inc.source, sol.particular)


def lift_along(h: ModuleHom, epi: ModuleHom) -> ModuleHom:
    """Some ``h'`` with ``epi @ h' = h`` for ``h`` from a projective (solved over homs)."""
    f = h.field
    hb = hom_basis(h.source, epi.source)
    if not hb:
        return zero_hom(h.source, epi.source)
    cols = [f.matmul(epi.matrix, b).reshape(-1, 1) for b in hb]
    sol = f.solve(f.hstack(cols, h.matrix.size), h.matrix.reshape(-1, 1)).particular[:, 0]
    return ModuleHom(h.source, epi.source, combine(f, hb, sol, (epi.source.dim, h.source.dim)))


def combine(f, mats, coeffs, shape) -> np.ndarray:
    """``sum_i coeffs[i] * mats[i]``."""
    if not len(mats):
        return f.zeros(*shape)
    nz = [i for i, c in enumerate(coeffs) if c != 0]
    if not nz:
        return f.zeros(*shape)
    stack = np.stack([mats[i] for i in nz])
    cs = np.array([coeffs[i] for i in nz], dtype=stack.dtype)
    return f.reduce(np.tensordot(cs, stack, axes=(0, 0)))


# ----------------------------------------------------------------------
# Hom spaces

def hom_system(m: FDModule, n: FDModule) -> tuple[np.ndarray, list[tuple[int, int, int]]]:
    """Intertwining system on the vertex-block unknowns of ``Hom(m, n)``.

    Returns the coefficient matrix and, per vertex, ``(offset, rows, cols)``
    of the row-major block ``phi_v : e_v m -> e_v n``.
    """
    f = m.field
    alg = m.alg
    layout = []
    off = 0
    for v in range(alg.n):
        layout.append((off, n.dimvec[v], m.dimvec[v]))
        off += n.dimvec[v] * m.dimvec[v]
    nvars = off
    rows = []
    for g in alg.generators:
        s, t = alg.corners[g]
        ng = n.acts[g][n.block(t), n.block(s)]
        mg = m.acts[g][m.block(t), m.block(s)]
        r = n.dimvec[t] * m.dimvec[s]
        if r == 0:
            continue
        eq = f.zeros(r, nvars)
        os_, ns, ms = layout[s]
        ot, nt, mt = layout[t]
        if ns * ms:
            eq[:, os_:os_ + ns * ms] = f.kron(ng, f.eye(ms))
        if nt * mt:
            eq[:, ot:ot + nt * mt] = f.sub(eq[:, ot:ot + nt * mt], f.kron(f.eye(nt), mg.T))
        rows.append(eq)
    system = f.vstack(rows, nvars) if rows else f.zeros(0, nvars)
    return system, layout


def _unpack(m: FDModule, n: FDModule, layout, vec) -> np.ndarray:
    f = m.field
    mat = f.zeros(n.dim, m.dim)
    for v, (off, r, c) in enumerate(layout):
        if r * c:
            mat[n.block(v), m.block(v)] = vec[off:off + r * c].reshape(r, c)
    return mat


HOM_CACHE_SIZE = 512
_HOM_CACHE: OrderedDict = OrderedDict()


def hom_basis(m: FDModule, n: FDModule) -> list[np.ndarray]:
    """Basis of ``Hom(m, n)`` as matrices."""
    key = (id(m), id(n))
    hit = _HOM_CACHE.get(key)
    if hit is not None and hit[0] is m and hit[1] is n:
        _HOM_CACHE.move_to_end(key)
        return hit[2]
    f = m.field
    system, layout = hom_system(m, n)
    nvars = system.shape[1]
    if nvars == 0:
        basis = []
    else:
        ker = f.kernel_basis(system) if system.shape[0] else f.eye(nvars)
        basis = [_unpack(m, n, layout, ker[:, j]) for j in range(ker.shape[1])]
    _HOM_CACHE[key] = (m, n, basis)
    if len(_HOM_CACHE) > HOM_CACHE_SIZE:
        _HOM_CACHE.popitem(last=False)
    return basis


def hom_space(m: FDModule, n: FDModule) -> list[ModuleHom]:
    return [ModuleHom(m, n, b) for b in hom_basis(m, n)]


def hom_dim(m: FDModule, n: FDModule) -> int:
    return len(hom_basis(m, n))


def end_basis(m: FDModule) -> list[np.ndarray]:
    return hom_basis(m, m)


# ----------------------------------------------------------------------
# isomorphism and decomposition

def _coeff_vectors(f, k: int, rng: np.random.Generator):
    """Coefficient vectors: exhaustive when small, then seeded random."""
    if f.p is not None and f.p ** k <= ENUM_CAP:
        for tup in itertools.product(range(f.p), repeat=k):
            yield np.array(tup, dtype=np.int64)
        return
    for i in range(k):
        e = f.zeros(k, 1)[:, 0]
        e[i] = f.scalar(1)
        yield e
    for _ in range(RANDOM_TRIES):
        yield f.random(k, 1, rng, bound=7)[:, 0]


def _exhaustive(f, k: int) -> bool:
    return f.p is not None and f.p ** k <= ENUM_CAP


def is_isomorphic(m: FDModule, n: FDModule, *, seed: int = 0) -> tuple[bool, ModuleHom | None]:
    """Decide ``m ~ n`` by searching for an invertible homomorphism.

    Raises :class:`Undecided` when the search is inconclusive.
    """
    if m.dimvec != n.dimvec:
        return False, None
    if m.dim == 0:
        return True, ModuleHom(m, n, m.field.zeros(0, 0))
    f = m.field
    hb = hom_basis(m, n)
    if not hb:
        return False, None
    # rank of the generic element: if even the sum of all images misses, no iso
    if f.rank(f.hstack(hb, n.dim)) < n.dim:
        return False, None
    hback = hom_basis(n, m)
    if len(hback) != len(hb) or f.rank(f.hstack(hback, m.dim)) < m.dim:
        return False, None
    rng = np.random.default_rng(seed)
    for c in _coeff_vectors(f, len(hb), rng):
        mat = combine(f, hb, c, (n.dim, m.dim))
        if f.rank(mat) == m.dim:
            return True, ModuleHom(m, n, mat)
    if _exhaustive(f, len(hb)):
        return False, None
    raise Undecided(f"no isomorphism found after {RANDOM_TRIES} samples (dim Hom = {len(hb)})")


def _is_nilpotent(f, mat: np.ndarray) -> bool:
    n = mat.shape[0]
    p = mat
    k = 1
    while k < n:
        p = f.matmul(p, p)
        k *= 2
    return f.is_zero(p)


def _fitting_power(f, mat: np.ndarray) -> np.ndarray:
    n = mat.shape[0]
    p = mat
    k = 1
    while k < n:
        p = f.matmul(p, p)
        k *= 2
    return p


def find_splitting(m: FDModule, *, seed: int = 0) -> np.ndarray | None:
    """An endomorphism that is neither nilpotent nor invertible, or ``None``
    if ``End(m)`` is local.

    Cheap seeded tries come first; a negative answer is only returned after
    exhaustive enumeration or a locality certificate. Raises
    :class:`Undecided` when neither outcome can be certified.
    """
    f = m.field
    if m.dim == 0:
        return None
    eb = end_basis(m)
    k = len(eb)
    if k == 1:
        return None
    rng = np.random.default_rng(seed)
    nilpotent = []

    def probe(c):
        mat = combine(f, eb, c, (m.dim, m.dim))
        if f.rank(mat) == m.dim:
            return None
        if _is_nilpotent(f, mat):
            nilpotent.append(mat.reshape(-1, 1))
            return None
        return mat

    ident = f.eye(k)
    quick = [ident[i] for i in range(k)]
    quick += [f.random(k, 1, rng, bound=7)[:, 0] for _ in range(QUICK_TRIES)]
    for c in quick:
        hit = probe(c)
        if hit is not None:
            return hit
    if _exhaustive(f, k):
        for c in _coeff_vectors(f, k, rng):
            if np.any(c != 0):
                hit = probe(c)
                if hit is not None:
                    return hit
        return None
    for c in _coeff_vectors(f, k, rng):
        if np.any(c != 0):
            hit = probe(c)
            if hit is not None:
                return hit
    # certify locality: the nilpotents found span an ideal J with E/J a field
    stack = f.hstack(nilpotent, m.dim * m.dim) if nilpotent else f.zeros(m.dim * m.dim, 0)
    j = f.image_basis(stack) if stack.shape[1] else stack
    for x in range(j.shape[1]):
        xm = j[:, x].reshape(m.dim, m.dim)
        for b in eb:
            for prod in (f.matmul(xm, b), f.matmul(b, xm)):
                if not f.in_span(j, prod.reshape(-1, 1)):
                    raise Undecided("could not certify that the endomorphism ring is local")
    quo = k - j.shape[1]
    if quo == 1:
        return None
    if f.p is not None and f.p ** quo <= ENUM_CAP:
        ebm = f.hstack([b.reshape(-1, 1) for b in eb], m.dim * m.dim)
        comp = f.complement_columns(j, ebm)
        for tup in itertools.product(range(f.p), repeat=quo):
            if not any(tup):
                continue
            mat = f.matmul(comp, np.array(tup, dtype=np.int64).reshape(-1, 1)).reshape(m.dim, m.dim)
            if f.rank(mat) < m.dim:
                if _is_nilpotent(f, mat):
                    raise Undecided("nilpotent ideal of the endomorphism ring is incomplete")
                return mat
        return None
    raise Undecided("could not certify that the endomorphism ring is local")


def is_indecomposable(m: FDModule) -> bool:
    return m.dim > 0 and find_splitting(m) is None


def split(m: FDModule, phi: np.ndarray) -> tuple[ModuleHom, ModuleHom]:
    """Fitting decomposition ``m = im phi^N + ker phi^N`` as two inclusions."""
    f = m.field
    p = _fitting_power(f, phi)
    ker = f.kernel_basis(p)
    img = f.image_basis(p)
    return submodule(m, img, check=False), submodule(m, ker, check=False)


def indecomposable_summands(m: FDModule) -> list[ModuleHom]:
    """Inclusions of indecomposable summands whose sum is ``m``."""
    if m.dim == 0:
        return []
    phi = find_splitting(m)
    if phi is None:
        return [identity(m)]
    out = []
    for inc in split(m, phi):
        for sub in indecomposable_summands(inc.source):
            out.append(inc @ sub)
    return out


def indecomposable_decomposition(m: FDModule) -> list[tuple[FDModule, int]]:
    """Pairwise non-isomorphic indecomposable summands with multiplicities."""
    groups: list[list] = []
    for inc in indecomposable_summands(m):
        x = inc.source
        for g in groups:
            if is_isomorphic(g[0], x)[0]:
                g[1] += 1
                break
        else:
            groups.append([x, 1])
    return [(g[0], g[1]) for g in groups]


def dedupe(mods: Sequence[FDModule]) -> list[FDModule]:
    out: list[FDModule] = []
    for x in mods:
        if not any(is_isomorphic(y, x)[0] for y in out):
            out.append(x)
    return out


# ----------------------------------------------------------------------
# radical, top, trace

def radical(m: FDModule) -> ModuleHom:
    f = m.field
    rad = m.alg.radical_indices()
    cols = [m.acts[k] for k in rad if not f.is_zero(m.acts[k])]
    span = f.image_basis(f.hstack(cols, m.dim)) if cols and m.dim else f.zeros(m.dim, 0)
    return submodule(m, span, check=False)


def top_dimvec(m: FDModule) -> list[int]:
    r = radical(m).source
    return [a - b for a, b in zip(m.dimvec, r.dimvec)]


def trace(t: FDModule, x: FDModule) -> ModuleHom:
    """Inclusion of the trace of ``t`` in ``x`` (sum of images of all maps)."""
    f = x.field
    hb = hom_basis(t, x)
    span = f.image_basis(f.hstack(hb, x.dim)) if hb and x.dim else f.zeros(x.dim, 0)
    return submodule(x, span, check=False)


def trace_of_set(ts: Sequence[FDModule], x: FDModule) -> ModuleHom:
    f = x.field
    hb = [b for t in ts for b in hom_basis(t, x)]
    span = f.image_basis(f.hstack(hb, x.dim)) if hb and x.dim else f.zeros(x.dim, 0)
    return submodule(x, span, check=False)


def in_gen(t: FDModule, x: FDModule) -> bool:
    """Whether ``x`` is a quotient of a finite direct sum of copies of ``t``."""
    return trace(t, x).source.dim == x.dim


def iso_indecomposable(x: FDModule, y: FDModule) -> bool:
    """Isomorphism test for two indecomposable modules.

    ``End(x)`` is local, so ``x ~ y`` exactly when some composite ``g f`` of
    basis maps ``f: x -> y`` and ``g: y -> x`` is invertible.
    """
    if x.dimvec != y.dimvec:
        return False
    f = x.field
    fwd = hom_basis(x, y)
    back = hom_basis(y, x)
    return any(f.rank(f.matmul(g, h)) == x.dim for h in fwd for g in back)


def summands(m: FDModule) -> list[FDModule]:
    """Indecomposable summands (with repetition), cached on the module."""
    cached = m.__dict__.get("_summands")
    if cached is None:
        cached = [inc.source for inc in indecomposable_summands(m)]
        m._summands = cached
    return cached


def in_add(c: FDModule, t: FDModule) -> bool:
    """Whether ``c`` is a direct summand of some ``t^n``.

    That holds iff ``id_c`` is a sum of composites ``c -> t -> c``, which is
    a linear condition on ``Hom(c, t)`` and ``Hom(t, c)``.
    """
    if c.dim == 0:
        return True
    f = c.field
    outs = hom_basis(c, t)
    ins = hom_basis(t, c)
    if not outs or not ins:
        return False
    target = f.eye(c.dim).reshape(-1, 1)
    g = np.stack(outs)
    span = f.zeros(c.dim * c.dim, 0)
    for h in ins:
        prods = f.reduce(np.einsum("ij,bjk->bik", h, g)).reshape(len(outs), -1).T
        span = f.image_basis(f.hstack([span, prods], c.dim * c.dim))
        if f.in_span(span, target[:, 0]):
            return True
    return False


def projective_cover(m: FDModule) -> ModuleHom:
    """Minimal epimorphism from a direct sum of indecomposable projectives."""
    f = m.field
    alg = m.alg
    rad = radical(m)
    gens: list[tuple[int, np.ndarray]] = []
    for v in range(alg.n):
        b = m.block(v)
        rb = rad.matrix[b, :]
        rb = f.image_basis(rb) if rb.size else f.zeros(m.dimvec[v], 0)
        comp = f.complement_columns(rb, f.eye(m.dimvec[v])) if m.dimvec[v] else f.zeros(0, 0)
        for c in range(comp.shape[1]):
            vec = f.zeros(m.dim, 1)[:, 0]
            vec[b] = comp[:, c]
            gens.append((v, vec))
    return map_from_projectives(m, gens)


def map_from_projectives(m: FDModule, gens: Sequence[tuple[int, np.ndarray]]) -> ModuleHom:
    """The map ``sum_i A e_{v_i} -> m`` sending ``e_{v_i}`` to ``gens[i][1]``."""
    f = m.field
    alg = m.alg
    projs = [projective(alg, v) for v, _ in gens]
    ds = direct_sum_data(projs, alg)
    mat = f.zeros(m.dim, ds.module.dim)
    for (v, x), p, pr in zip(gens, projs, ds.projections):
        comp = f.zeros(m.dim, p.dim)
        for c, k in enumerate(p.basis_index):
            comp[:, c] = f.matmul(m.acts[k], x.reshape(-1, 1))[:, 0]
        mat = f.add(mat, f.matmul(comp, pr.matrix))
    out = ModuleHom(ds.module, m, mat)
    out.vertices = [v for v, _ in gens]
    out.sum_data = ds
    return out


def is_projective(m: FDModule) -> bool:
    cov = projective_cover(m)
    return cov.source.dim == m.dim
