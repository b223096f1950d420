"""Universal localisation by generators and relations.

For each map ``sigma: sum A e_{d_i} -> sum A e_{c_j}`` (right multiplication
by the matrix ``M[i][j] = r_ji``) we adjoin one symbol per entry of an
inverse matrix ``N``, with ``N[j][i]`` running from ``d_i`` to ``c_j``, and
impose ``M N = 1`` and ``N M = 1`` entrywise. Bounded completion then gives
normal words degree by degree; when the census stops growing the normal
words span a finite-dimensional algebra with explicit structure constants.

Stabilisation at a bound is evidence, not proof, of finite dimension.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from .algebra import FDAlgebra, algebra_from_quiver, algebra_from_rewriter
from .errors import Inconsistent, NotStabilised, SiltlocError
from .field import Field
from .homalg import ProjMap
from .rewriting import PathQuiver, PolyRing, Rewriter, Symbol
from .ringepi import RingHom, base_change

Poly = dict


@dataclass
class RingPresentation:
    """Quiver with original arrows first, then the adjoined inverse symbols."""

    quiver: PathQuiver
    field: Field
    relations: list
    base: FDAlgebra
    n_original: int
    sigmas: list
    inverse_symbols: list = dc_field(default_factory=list)   # (sigma index, j, i, symbol index)

    @property
    def symbol_names(self) -> list[str]:
        return [s.name for s in self.quiver.symbols]


def _element_poly(alg: FDAlgebra, x: np.ndarray) -> Poly:
    return {alg.paths[k]: x[k] for k in range(alg.dim) if x[k] != 0}


def _require_paths(alg: FDAlgebra) -> None:
    if alg.quiver is None or alg.paths is None:
        raise SiltlocError("localisation needs an algebra given by a quiver with relations")


def _inverse_name(alg: FDAlgebra, sigma: ProjMap, s: int, j: int, i: int, taken: set) -> str:
    base = sigma.name or f"s{s + 1}"
    if len(sigma.domain) == 1 and len(sigma.codomain) == 1:
        poly = _element_poly(alg, sigma.entries[0, 0])
        if len(poly) == 1:
            (w, c), = poly.items()
            if c == 1 and w[0] >= 0:
                base = alg.quiver.name(w)
        name = f"{base}^-1"
    else:
        name = f"{base}^-1[{j + 1},{i + 1}]"
    while name in taken:
        name += "'"
    taken.add(name)
    return name


def localisation_presentation(alg: FDAlgebra, sigmas: Sequence[ProjMap], *,
                              extra_relations: Sequence[Poly] = ()) -> RingPresentation:
    """Generators and relations for ``A_Sigma`` (plus optional extra relations)."""
    _require_paths(alg)
    q0 = alg.quiver
    f = alg.field
    symbols = list(q0.symbols)
    inv = []
    taken = {s.name for s in symbols}
    sig = list(sigmas)
    for s, sigma in enumerate(sig):
        for j, c in enumerate(sigma.codomain):
            for i, d in enumerate(sigma.domain):
                inv.append((s, j, i, len(symbols)))
                symbols.append(Symbol(_inverse_name(alg, sigma, s, j, i, taken), d, c))
    q = PathQuiver(q0.n, symbols)
    ring = PolyRing(q, f)
    rels = [dict(r) for r in (alg.relations or [])] + [dict(r) for r in extra_relations]
    one = f.scalar(1)
    for s, sigma in enumerate(sig):
        sym = {(j, i): k for ss, j, i, k in inv if ss == s}
        m = {(i, j): _element_poly(alg, sigma.entries[j, i])
             for j in range(len(sigma.codomain)) for i in range(len(sigma.domain))}
        nd, nc = len(sigma.domain), len(sigma.codomain)
        # M N = 1 on the domain side
        for i in range(nd):
            for i2 in range(nd):
                acc: Poly = {}
                for j in range(nc):
                    acc = ring.add(acc, ring.mul(m[(i, j)], {(sym[(j, i2)],): one}))
                if i == i2:
                    acc = ring.add(acc, {q.idem(sigma.domain[i]): one}, -1)
                if acc:
                    rels.append(acc)
        # N M = 1 on the codomain side
        for j in range(nc):
            for j2 in range(nc):
                acc = {}
                for i in range(nd):
                    acc = ring.add(acc, ring.mul({(sym[(j, i)],): one}, m[(i, j2)]))
                if j == j2:
                    acc = ring.add(acc, {q.idem(sigma.codomain[j]): one}, -1)
                if acc:
                    rels.append(acc)
    return RingPresentation(q, f, rels, alg, len(q0.symbols), sig, inv)


# ----------------------------------------------------------------------

@dataclass
class NormalFormReport:
    bound: int
    layers: list            # normal words (names) per degree 0..bound
    stabilised: bool
    bound_exceeded: bool
    presentation: RingPresentation = dc_field(repr=False)
    rewriter: Rewriter = dc_field(repr=False, default=None)

    @property
    def counts(self) -> list[int]:
        return [len(x) for x in self.layers]

    @property
    def dimension(self) -> int | None:
        return sum(self.counts) if self.stabilised else None


def normal_forms(p: RingPresentation, bound: int) -> NormalFormReport:
    """Bounded completion in deglex order; words of length up to ``bound``."""
    if bound < 1:
        raise ValueError("degree bound must be at least 1")
    rw = Rewriter(p.quiver, p.field, p.relations, bound)
    layers = rw.normal_words(bound)
    exceeded = rw.state.bound_exceeded
    quiet = any(not layers[k] and not layers[k + 1] for k in range(len(layers) - 1))
    names = [[p.quiver.name(w) for w in layer] for layer in layers]
    return NormalFormReport(bound, names, quiet and not exceeded, exceeded, p, rw)


def dump_presentation(p: RingPresentation) -> str:
    """One relation per line, words as dot-separated symbols."""
    q = p.quiver
    out = [f"vertices {q.n}"]
    for s in q.symbols:
        out.append(f"symbol {s.name}: {s.source + 1} -> {s.target + 1}")
    for r in p.relations:
        terms = sorted(r.items(), key=lambda kv: q.key(kv[0]), reverse=True)
        body = " + ".join(f"{c}*{q.name(w)}" for w, c in terms)
        out.append(f"relation {body} = 0")
    return "\n".join(out) + "\n"


# ----------------------------------------------------------------------

@dataclass
class Localisation:
    presentation: RingPresentation
    report: NormalFormReport
    algebra: FDAlgebra
    ring_hom: RingHom
    invertible: list


def finite_quotient(report: NormalFormReport) -> Localisation:
    """The algebra on the normal words and the canonical map ``A -> A_Sigma``."""
    if not report.stabilised:
        raise NotStabilised(f"normal forms did not stabilise within degree {report.bound}")
    p, rw = report.presentation, report.rewriter
    loc = algebra_from_rewriter(rw, report.bound, relations=p.relations, basic=False)
    base = p.base
    f = p.field
    index = {w: k for k, w in enumerate(loc.paths)}
    mat = f.zeros(loc.dim, base.dim)
    for k, w in enumerate(base.paths):
        for x, c in rw.reduce({w: f.scalar(1)}).items():
            mat[index[x], k] = c
    hom = RingHom(base, loc, mat, name="localisation").verify()
    inv = [invertibility_check(hom, s) for s in p.sigmas]
    return Localisation(p, report, loc, hom, inv)


def localise(alg: FDAlgebra, sigmas: Sequence[ProjMap], bound: int = 6) -> Localisation:
    return finite_quotient(normal_forms(localisation_presentation(alg, sigmas), bound))


def invertibility_check(f: RingHom, sigma: ProjMap) -> bool:
    """Whether ``B (x)_A sigma`` is bijective."""
    m = base_change(f, sigma)
    if m.shape[0] != m.shape[1]:
        return False
    return m.shape[0] == 0 or f.field.rank(m) == m.shape[0]


def matrix_unit_check(alg: FDAlgebra, units: dict) -> bool:
    """``units[(r, c)]`` is a basis index; checks ``E_rc E_st = delta_cs E_rt`` and that they form a basis."""
    n = int(round(len(units) ** 0.5))
    if n * n != len(units) or alg.dim != len(units) or len(set(units.values())) != len(units):
        return False
    f = alg.field
    for (r, c), x in units.items():
        for (s, t), y in units.items():
            prod = alg.product(alg.basis_vector(x), alg.basis_vector(y))
            want = alg.basis_vector(units[(r, t)]) if c == s else f.zeros(alg.dim, 1)[:, 0]
            if not np.array_equal(prod, want):
                return False
    return True


# ----------------------------------------------------------------------
# universal property

def universal_factorisation(loc: Localisation, g: RingHom) -> np.ndarray | None:
    """The unique ring map ``h: A_Sigma -> C`` with ``h f = g``, or None.

    Images of the inverse symbols are solved for linearly from ``M N = 1``
    and ``N M = 1`` in ``C``; ``h`` is then checked on all products of
    basis words.
    """
    p, b = loc.presentation, loc.algebra
    c_alg = g.target
    fld = g.field
    base = p.base
    if c_alg.dim == 0:
        return fld.zeros(0, b.dim)
    images: dict[int, np.ndarray] = {}
    for k in range(p.n_original):
        w = (k,)
        if w in base.paths:
            images[k] = g.matrix[:, base.paths.index(w)]
        else:
            images[k] = fld.zeros(c_alg.dim, 1)[:, 0]
    for s, sigma in enumerate(p.sigmas):
        syms = [(j, i, k) for ss, j, i, k in p.inverse_symbols if ss == s]
        nd, nc, dc = len(sigma.domain), len(sigma.codomain), c_alg.dim
        nvar = len(syms) * dc
        pos = {(j, i): t for t, (j, i, _) in enumerate(syms)}
        rows, rhs = [], []
        ge = lambda v: g(base.basis_vector(base.idempotents[v]))
        for i in range(nd):
            for i2 in range(nd):
                blk = fld.zeros(dc, nvar)
                for j in range(nc):
                    left = c_alg.left_mult(g(sigma.entries[j, i]))
                    t = pos[(j, i2)]
                    blk[:, t * dc:(t + 1) * dc] = fld.add(blk[:, t * dc:(t + 1) * dc], left)
                rows.append(blk)
                rhs.append(ge(sigma.domain[i]) if i == i2 else fld.zeros(dc, 1)[:, 0])
        for j in range(nc):
            for j2 in range(nc):
                blk = fld.zeros(dc, nvar)
                for i in range(nd):
                    right = c_alg.right_mult(g(sigma.entries[j2, i]))
                    t = pos[(j, i)]
                    blk[:, t * dc:(t + 1) * dc] = fld.add(blk[:, t * dc:(t + 1) * dc], right)
                rows.append(blk)
                rhs.append(ge(sigma.codomain[j]) if j == j2 else fld.zeros(dc, 1)[:, 0])
        # corner conditions: N[j][i] = g(e_c) N[j][i] g(e_d)
        for (j, i), t in pos.items():
            proj = fld.chain(c_alg.left_mult(ge(sigma.codomain[j])), c_alg.right_mult(ge(sigma.domain[i])))
            blk = fld.zeros(dc, nvar)
            blk[:, t * dc:(t + 1) * dc] = fld.sub(fld.eye(dc), proj)
            rows.append(blk)
            rhs.append(fld.zeros(dc, 1)[:, 0])
        if not nvar:
            continue
        sysm = fld.vstack(rows, nvar)
        vec = np.concatenate([r.reshape(-1) for r in rhs]).reshape(-1, 1)
        try:
            sol = fld.solve(sysm, vec)
        except Inconsistent:
            return None
        if sol.nullspace.shape[1]:
            return None
        for (j, i, k), t in zip(syms, range(len(syms))):
            images[k] = sol.particular[t * dc:(t + 1) * dc, 0]
    # images of the normal words
    h = fld.zeros(c_alg.dim, b.dim)
    for col, w in enumerate(b.paths):
        if w[0] < 0:
            h[:, col] = g(base.basis_vector(base.idempotents[-w[0] - 1]))
            continue
        acc = images[w[0]]
        for sym in w[1:]:
            acc = c_alg.product(acc, images[sym])
        h[:, col] = acc
    hom = RingHom(b, c_alg, h)
    if not hom.is_multiplicative() or not np.array_equal(fld.matmul(h, loc.ring_hom.matrix), g.matrix):
        return None
    return h


# ----------------------------------------------------------------------
# comparison with the triangular matrix ring

def t2_path_algebra(alg: FDAlgebra) -> FDAlgebra:
    """``T2(A)`` as a quiver with relations.

    Two copies of the quiver (vertex ``v`` of copy ``c`` is ``v + c n``),
    connecting arrows ``c_v: v -> v + n`` and the commutativity relations
    ``c_t . a = a' . c_s`` for ``a: s -> t``.
    """
    _require_paths(alg)
    q0, n = alg.quiver, alg.n
    arrows = [(s.name + "_0", s.source, s.target) for s in q0.symbols]
    arrows += [(s.name + "_1", s.source + n, s.target + n) for s in q0.symbols]
    arrows += [(f"c{v + 1}", v, v + n) for v in range(n)]
    q = PathQuiver(2 * n, [Symbol(*a) for a in arrows])
    m = len(q0.symbols)
    f = alg.field

    def shift(w, copy):
        if w[0] < 0:
            return q.idem(-w[0] - 1 + copy * n)
        return tuple(x + copy * m for x in w)

    rels = []
    for r in alg.relations or []:
        for copy in (0, 1):
            rels.append({shift(w, copy): c for w, c in r.items()})
    for k, s in enumerate(q0.symbols):
        ct, cs = 2 * m + s.target, 2 * m + s.source
        rels.append({(ct, k): f.scalar(1), (k + m, cs): f.scalar(-1)})
    t2 = algebra_from_quiver(q, rels, f, admissible=True)
    t2.copy_shift = (n, m)
    return t2


def _t2_sigma(alg: FDAlgebra, t2: FDAlgebra, sigma: ProjMap) -> ProjMap:
    """Monomorphic presentation ``Z_{0->P} -> Z_{0->Q} + Z_{id_P}`` of ``Z_sigma`` over ``T2(A)``."""
    n, m = t2.copy_shift
    f = alg.field
    index = {w: k for k, w in enumerate(t2.paths)}
    dom = [d + n for d in sigma.domain]
    cod = [c + n for c in sigma.codomain] + list(sigma.domain)
    pm = ProjMap(t2, dom, cod)
    for j in range(len(sigma.codomain)):
        for i in range(len(sigma.domain)):
            for w, c in _element_poly(alg, sigma.entries[j, i]).items():
                w1 = (-(-w[0] - 1 + n) - 1,) if w[0] < 0 else tuple(x + m for x in w)
                pm.entries[j, i, index[w1]] += c
    for i, d in enumerate(sigma.domain):
        pm.entries[len(sigma.codomain) + i, i, index[(2 * m + d,)]] = f.scalar(1)
    pm.entries = f.reduce(pm.entries)
    return ProjMap(t2, dom, cod, pm.entries)


@dataclass
class T2Comparison:
    counts_t2: list
    counts_a: list
    stabilised_t2: bool
    stabilised_a: bool

    @property
    def agrees(self) -> bool:
        return self.counts_t2 == self.counts_a


def t2_factorisation_check(alg: FDAlgebra, sigmas: Sequence[ProjMap], bound: int = 6) -> T2Comparison:
    """Normal-form counts of ``T2(A)`` localised at the ``Z_sigma`` and at
    ``0 -> Z_{id_A}`` against those of ``A_Sigma``."""
    t2 = t2_path_algebra(alg)
    n = alg.n
    kill = ProjMap(t2, [], list(range(n)))
    maps = [_t2_sigma(alg, t2, s) for s in sigmas] + [kill]
    rep_t2 = normal_forms(localisation_presentation(t2, maps), bound)
    rep_a = normal_forms(localisation_presentation(alg, sigmas), bound)
    return T2Comparison(rep_t2.counts, rep_a.counts, rep_t2.stabilised, rep_a.stabilised)


def torsion_free_comparison(alg: FDAlgebra, sigmas: Sequence[ProjMap], bound: int = 6):
    """Normal-form counts of ``A_Sigma`` and of the torsion-free quotient localised at the induced maps."""
    from .ringepi import torsion_reduce

    red = torsion_reduce(sigmas, alg)
    extra = []
    for c in range(red.ideal.shape[1]):
        poly = {alg.paths[k]: red.ideal[k, c] for k in range(alg.dim) if red.ideal[k, c] != 0}
        if poly:
            extra.append(poly)
    a = normal_forms(localisation_presentation(alg, sigmas), bound)
    b = normal_forms(localisation_presentation(alg, sigmas, extra_relations=extra), bound)
    return a.counts, b.counts, red
