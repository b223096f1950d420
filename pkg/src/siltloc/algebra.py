"""Finite-dimensional algebras with a vertex (Peirce) decomposition.

Conventions
-----------
* Left modules throughout. An arrow ``a: i -> j`` acts as a linear map
  ``e_i X -> e_j X``.
* Products are written right to left: the path ``p * q`` means "``q`` then
  ``p``", so ``a = e_j * a * e_i`` for ``a: i -> j``.
* Every basis element ``b`` lives in a single corner ``e_t * b * e_s``;
  ``corners[k] == (s, t)`` records source and target vertex.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import NotAdmissible, NotFiniteDimensional, NotTwoSidedIdeal
from .field import Field
from .rewriting import PathQuiver, Rewriter, Symbol

Quiver = PathQuiver
Arrow = Symbol


def quiver(n: int, arrows: Sequence[tuple[str, int, int]]) -> Quiver:
    """Quiver with ``n`` vertices (0-based) and ``(name, source, target)`` arrows."""
    return PathQuiver(n, [Symbol(name, s, t) for name, s, t in arrows])


class FDAlgebra:
    """A finite-dimensional algebra given by structure constants.

    Attributes:
        field: ground field.
        n: number of vertices (orthogonal idempotents summing to one).
        labels: printable name of each basis element.
        corners: ``(source, target)`` vertex of each basis element.
        mult: array of shape ``(d, d, d)``; ``mult[i, j]`` holds the
            coordinates of ``b_i * b_j``.
        idempotents: basis index of ``e_v`` for each vertex.
        generators: basis indices of non-idempotent algebra generators.
        paths: for path algebras, the word of each basis element.
        basic: whether the non-idempotent basis elements span the radical.
    """

    def __init__(self, field: Field, n: int, labels, corners, mult, idempotents,
                 generators, *, paths=None, quiver=None, relations=None,
                 basic=True, check=True):
        self.field = field
        self.n = n
        self.labels = list(labels)
        self.corners = [tuple(c) for c in corners]
        self.mult = mult
        self.idempotents = list(idempotents)
        self.generators = list(generators)
        self.paths = paths
        self.quiver = quiver
        self.relations = relations or []
        self.basic = basic
        self._expansion = None
        self._regular = None
        if check:
            self.validate()

    @property
    def dim(self) -> int:
        return len(self.labels)

    def __repr__(self):
        return f"FDAlgebra(dim={self.dim}, vertices={self.n}, field={self.field})"

    # ------------------------------------------------------------------
    def unit(self) -> np.ndarray:
        u = self.field.zeros(self.dim, 1)[:, 0]
        for i in self.idempotents:
            u[i] = self.field.scalar(1)
        return u

    def basis_vector(self, k: int) -> np.ndarray:
        v = self.field.zeros(self.dim, 1)[:, 0]
        v[k] = self.field.scalar(1)
        return v

    def product(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        if self.dim == 0:
            return x
        t = np.tensordot(x, self.mult, axes=(0, 0))  # (d, d): sum_i x_i c_ijk
        return self.field.reduce(np.tensordot(y, t, axes=(0, 0)))

    def left_mult(self, x: np.ndarray) -> np.ndarray:
        """Matrix of ``y -> x * y`` in the basis."""
        if self.dim == 0:
            return self.field.zeros(0, 0)
        t = self.field.reduce(np.tensordot(x, self.mult, axes=(0, 0)))  # [j, k]
        return np.array(t.T, copy=True)

    def right_mult(self, y: np.ndarray) -> np.ndarray:
        """Matrix of ``x -> x * y`` in the basis."""
        if self.dim == 0:
            return self.field.zeros(0, 0)
        t = self.field.reduce(np.tensordot(y, self.mult, axes=(0, 1)))  # [i, k]
        return np.array(t.T, copy=True)

    def corner_indices(self, source: int | None = None, target: int | None = None) -> list[int]:
        return [k for k, (s, t) in enumerate(self.corners)
                if (source is None or s == source) and (target is None or t == target)]

    def element_corner_ok(self, x: np.ndarray, source: int, target: int) -> bool:
        return all(x[k] == 0 for k, c in enumerate(self.corners) if c != (source, target))

    def radical_indices(self) -> list[int]:
        ids = set(self.idempotents)
        return [k for k in range(self.dim) if k not in ids]

    # ------------------------------------------------------------------
    def validate(self) -> None:
        """Check associativity, unit, orthogonal idempotents and corner grading.

        For basic algebras the radical is also checked to be a nilpotent ideal.
        """
        f = self.field
        d = self.dim
        if d == 0:
            return
        m = self.mult
        # associativity: (b_i b_j) b_k = b_i (b_j b_k)
        lhs = f.reduce(np.tensordot(m, m, axes=(2, 0)))           # [i, j, k, l]
        rhs = f.reduce(np.tensordot(m, m, axes=(1, 2)))           # [i, l', j, k] -> reorder
        rhs = f.reduce(np.transpose(rhs, (0, 2, 3, 1)))           # c_{jk}^{l'} c_{i l'}^{l}
        if np.any(lhs != rhs):
            raise ValueError("multiplication is not associative")
        u = self.unit()
        for k in range(d):
            e = self.basis_vector(k)
            if np.any(self.product(u, e) != e) or np.any(self.product(e, u) != e):
                raise ValueError("sum of idempotents is not a unit")
        for v, i in enumerate(self.idempotents):
            for w, j in enumerate(self.idempotents):
                p = self.product(self.basis_vector(i), self.basis_vector(j))
                expect = self.basis_vector(i) if v == w else f.zeros(d, 1)[:, 0]
                if np.any(p != expect):
                    raise ValueError("idempotents are not orthogonal")
        for k, (s, t) in enumerate(self.corners):
            b = self.basis_vector(k)
            ei = self.basis_vector(self.idempotents[t])
            ej = self.basis_vector(self.idempotents[s])
            if np.any(self.product(self.product(ei, b), ej) != b):
                raise ValueError(f"basis element {self.labels[k]} not in its corner")
        if self.basic:
            rad = self.radical_indices()
            for i in range(d):
                for j in rad:
                    for x in (self.mult[i, j], self.mult[j, i]):
                        if any(x[k] != 0 for k in self.idempotents):
                            raise ValueError("radical is not an ideal")
            # nilpotency: rad^(d+1) = 0
            span = [self.basis_vector(k) for k in rad]
            for _ in range(d + 1):
                if not span:
                    break
                nxt = [self.product(x, self.basis_vector(r)) for x in span for r in rad]
                nxt = [x for x in nxt if np.any(x != 0)]
                if nxt:
                    mat = f.image_basis(np.stack(nxt, axis=1))
                    span = [mat[:, c] for c in range(mat.shape[1])]
                else:
                    span = []
            if span:
                raise ValueError("radical is not nilpotent")

    # ------------------------------------------------------------------
    def expansion(self):
        """Express each basis element through products of generators.

        Returns ``(words, coeffs)``: ``words`` is a list of generator index
        tuples (leftmost factor first; ``()`` with a vertex tag for
        idempotents) and ``coeffs[k]`` the coefficients of basis element
        ``k`` in those words.
        """
        if self._expansion is not None:
            return self._expansion
        f = self.field
        d = self.dim
        words: list[tuple] = []
        vecs: list[np.ndarray] = []
        for v, i in enumerate(self.idempotents):
            words.append(("e", v))
            vecs.append(self.basis_vector(i))
        layer = [(w, x) for w, x in zip(words, vecs)]
        span = f.image_basis(np.stack(vecs, axis=1)) if vecs else f.zeros(d, 0)
        rank = span.shape[1]
        while rank < d and layer:
            nxt = []
            for w, x in layer:
                for g in self.generators:
                    y = self.product(self.basis_vector(g), x)
                    if not np.any(y != 0):
                        continue
                    cand = f.hstack([span, y.reshape(-1, 1)], d)
                    rk = f.rank(cand)
                    if rk > rank:
                        span, rank = cand, rk
                        nw = ((g,) if w[0] == "e" else (g,) + w)
                        words.append(nw)
                        vecs.append(y)
                        nxt.append((nw, y))
            layer = nxt
        if rank < d:
            raise ValueError("generators do not generate the algebra")
        w_mat = np.stack(vecs, axis=1)
        coeffs = f.solve(w_mat, f.eye(d)).particular.T  # row k: coefficients of b_k
        self._expansion = (words, coeffs)
        return self._expansion

    def left_regular_module(self):
        from .modules import regular_module

        if self._regular is None:
            self._regular = regular_module(self)
        return self._regular


# ----------------------------------------------------------------------
# construction from a quiver with relations

def _path_poly(q: Quiver, field: Field, terms) -> dict:
    """``terms``: iterable of ``(coeff, word)`` with words as name tuples or 'e<v>'."""
    poly: dict = {}
    for c, path in terms:
        if isinstance(path, str):
            if path.startswith("e") and path[1:].isdigit():
                w = q.idem(int(path[1:]) - 1)
            else:
                w = q.word(path.split("."))
        elif isinstance(path, tuple) and path and isinstance(path[0], int):
            w = path
        else:
            w = q.word(path)
        v = poly.get(w, 0) + field.scalar(c)
        poly[w] = field.scalar(v)
    return {w: c for w, c in poly.items() if c != 0}


def algebra_from_quiver(q: Quiver, relations, field: Field, *, length_cap: int = 24,
                        admissible: bool = True) -> FDAlgebra:
    """Path algebra ``k Q / (relations)`` with its reduced path basis.

    ``relations`` is a list of polynomials, each either a dict ``word ->
    coeff`` or an iterable of ``(coeff, path)`` pairs.
    """
    polys = [r if isinstance(r, dict) else _path_poly(q, field, r) for r in relations]
    if admissible:
        for r in polys:
            if any(PathQuiver.length(w) < 2 for w in r):
                raise NotAdmissible("relations must be combinations of paths of length >= 2")
    rw = Rewriter(q, field, polys, length_cap)
    return algebra_from_rewriter(rw, length_cap, relations=polys)


def algebra_from_rewriter(rw: Rewriter, length_cap: int, *, relations=None,
                          generator_names=None, basic=True, check=True) -> FDAlgebra:
    """The algebra spanned by the normal words of a completed rewriting system."""
    layers = rw.normal_words(length_cap)
    if layers[-1] or rw.state.bound_exceeded:
        raise NotFiniteDimensional(f"path reduction did not terminate within length {length_cap}")
    q, f = rw.q, rw.field
    words = [w for layer in layers for w in layer]
    index = {w: k for k, w in enumerate(words)}
    d = len(words)
    live = [v for v in range(q.n) if v not in rw.state.killed]
    vmap = {v: i for i, v in enumerate(live)}
    mult = f.zeros(d * d, d).reshape(d, d, d) if d else f.zeros(0, 0).reshape(0, 0, 0)
    for i, u in enumerate(words):
        for j, v in enumerate(words):
            x = q.concat(u, v)
            if x is None:
                continue
            for w, c in rw.reduce({x: f.scalar(1)}).items():
                mult[i, j, index[w]] = c
    corners = [(vmap[q.src(w)], vmap[q.tgt(w)]) for w in words]
    idems = [index[q.idem(v)] for v in live]
    gens = [index[(s,)] for s in range(len(q.symbols)) if (s,) in index]
    labels = [q.name(w) for w in words]
    if d:
        # relabel idempotents by their new vertex number
        for v in live:
            labels[index[q.idem(v)]] = f"e{v + 1}"
    alg = FDAlgebra(f, len(live), labels, corners, mult, idems, gens,
                    paths=words, quiver=q, relations=relations, basic=basic, check=check)
    alg.vertex_names = [v for v in live]
    alg.rewriter = rw
    return alg


def path_element(alg: FDAlgebra, terms) -> np.ndarray:
    """Coordinates of a path-algebra element given as ``(coeff, path)`` pairs or text."""
    from .textfmt import parse_element

    if isinstance(terms, str):
        terms = parse_element(terms)
    poly = _path_poly(alg.quiver, alg.field, terms)
    red = alg.rewriter.reduce(poly)
    index = {w: k for k, w in enumerate(alg.paths)}
    x = alg.field.zeros(alg.dim, 1)[:, 0]
    for w, c in red.items():
        x[index[w]] = c
    return x


# ----------------------------------------------------------------------
# general constructions

def algebra_from_matrices(field: Field, spanning: Sequence[np.ndarray],
                          idempotents: Sequence[np.ndarray], *, labels_prefix="b",
                          basic=False) -> tuple[FDAlgebra, np.ndarray]:
    """Subalgebra of a matrix algebra, with Peirce basis for ``idempotents``.

    ``spanning`` must span a subalgebra (closed under products) containing
    the given orthogonal idempotents, which sum to the identity. Returns the
    algebra and a ``(N*N, d)`` matrix whose columns are the flattened basis
    matrices.
    """
    f = field
    if not idempotents:
        alg = FDAlgebra(f, 0, [], [], f.zeros(0, 0).reshape(0, 0, 0), [], [], basic=basic)
        return alg, f.zeros(0, 0)
    size = idempotents[0].shape[0]
    flat = f.hstack([m.reshape(-1, 1) for m in spanning], size * size)
    span = f.image_basis(flat) if flat.shape[1] else f.zeros(size * size, 0)
    cols = []
    corners = []
    labels = []
    idem_idx = []
    n = len(idempotents)
    for s in range(n):
        for t in range(n):
            # corner e_t X e_s
            pieces = [f.chain(idempotents[t], span[:, c].reshape(size, size), idempotents[s]).reshape(-1, 1)
                      for c in range(span.shape[1])]
            block = f.hstack(pieces, size * size)
            if s == t:
                e = idempotents[s].reshape(-1, 1)
                basis = f.hstack([e, f.complement_columns(e, block)], size * size)
                idem_idx.append(len(cols))
            else:
                basis = f.image_basis(block) if block.shape[1] else block
            for c in range(basis.shape[1]):
                cols.append(basis[:, c:c + 1])
                corners.append((s, t))
                labels.append(f"e{s + 1}" if (s == t and c == 0) else f"{labels_prefix}{len(cols) - 1}")
    basis_mat = f.hstack(cols, size * size)
    d = basis_mat.shape[1]
    mult = f.zeros(d * d, d).reshape(d, d, d)
    for i in range(d):
        bi = basis_mat[:, i].reshape(size, size)
        prods = f.hstack([f.matmul(bi, basis_mat[:, j].reshape(size, size)).reshape(-1, 1) for j in range(d)],
                         size * size)
        coords = f.solve(basis_mat, prods).particular
        mult[i] = coords.T
    gens = [k for k in range(d) if k not in idem_idx]
    alg = FDAlgebra(f, n, labels, corners, mult, idem_idx, gens, basic=basic)
    return alg, basis_mat


def quotient_algebra(alg: FDAlgebra, ideal: np.ndarray) -> tuple[FDAlgebra, np.ndarray]:
    """``A / I`` for a two-sided ideal spanned by the columns of ``ideal``.

    Returns the quotient algebra and the projection matrix ``A -> A/I``.
    Vertices whose idempotent lies in ``I`` are dropped. For path algebras the
    quotient keeps a path presentation (relations extended by ``I``).
    """
    f = alg.field
    d = alg.dim
    ideal = f.image_basis(ideal) if ideal.shape[1] else f.zeros(d, 0)
    for c in range(ideal.shape[1]):
        x = ideal[:, c]
        for k in range(d):
            b = alg.basis_vector(k)
            for y in (alg.product(b, x), alg.product(x, b)):
                if not f.in_span(ideal, y):
                    raise NotTwoSidedIdeal("subspace is not a two-sided ideal")
    if alg.quiver is not None and alg.paths is not None:
        extra = []
        for c in range(ideal.shape[1]):
            extra.append({alg.paths[k]: ideal[k, c] for k in range(d) if ideal[k, c] != 0})
        rels = list(alg.relations) + extra
        rw = Rewriter(alg.quiver, f, rels, max(8, max((len(w) for w in alg.paths if w[0] >= 0), default=0) * 2 + 2))
        quo = algebra_from_rewriter(rw, rw.state.bound, relations=rels, basic=alg.basic)
        proj = f.zeros(quo.dim, d)
        index = {w: k for k, w in enumerate(quo.paths)}
        for k, w in enumerate(alg.paths):
            for x, c in rw.reduce({w: f.scalar(1)}).items():
                proj[index[x], k] = c
        return quo, proj
    # generic: quotient by complement of ideal, corner by corner
    keep_vertices = [v for v in range(alg.n) if not f.in_span(ideal, alg.basis_vector(alg.idempotents[v]))]
    q_proj, qdim = f.cokernel_projection(ideal) if ideal.shape[1] else (f.eye(d), d)
    # section: choose basis elements of A mapping to a basis of A/I, corner by corner
    chosen = []
    for k in range(d):
        cand = chosen + [k]
        if f.rank(q_proj[:, cand]) == len(cand):
            chosen = cand
    # prefer idempotents first
    chosen_idx = [alg.idempotents[v] for v in keep_vertices]
    for k in chosen:
        if k not in chosen_idx:
            test = chosen_idx + [k]
            if f.rank(q_proj[:, test]) == len(test):
                chosen_idx.append(k)
    for k in range(d):
        if len(chosen_idx) == qdim:
            break
        if k not in chosen_idx:
            test = chosen_idx + [k]
            if f.rank(q_proj[:, test]) == len(test):
                chosen_idx.append(k)
    sec = q_proj[:, chosen_idx]
    to_new = f.solve(sec, q_proj).particular  # coordinates of images in chosen basis
    nd = len(chosen_idx)
    mult = f.zeros(nd * nd, nd).reshape(nd, nd, nd)
    for a, i in enumerate(chosen_idx):
        for b, j in enumerate(chosen_idx):
            mult[a, b] = f.matmul(to_new, alg.mult[i, j].reshape(-1, 1))[:, 0]
    vmap = {v: i for i, v in enumerate(keep_vertices)}
    corners = [(vmap[alg.corners[k][0]], vmap[alg.corners[k][1]]) for k in chosen_idx]
    idems = list(range(len(keep_vertices)))
    gens = [i for i, k in enumerate(chosen_idx) if k not in alg.idempotents]
    quo = FDAlgebra(f, len(keep_vertices), [alg.labels[k] for k in chosen_idx], corners, mult, idems, gens,
                    basic=alg.basic)
    return quo, to_new


def t2_algebra(alg: FDAlgebra) -> FDAlgebra:
    """Lower triangular 2x2 matrices over ``alg``.

    Basis order: ``(a,0;0,0)`` for each basis element ``a`` (vertex copy 0,
    the *source* end ``M`` of a map), then ``(0,0;0,a)`` (copy 1, the target
    end ``N``), then ``(0,0;a,0)`` (the connecting part). Vertex ``v`` of
    copy ``c`` becomes ``v + c * n``.
    """
    f = alg.field
    d, n = alg.dim, alg.n
    D = 3 * d
    mult = f.zeros(D * D, D).reshape(D, D, D)
    top, bot, off = 0, d, 2 * d
    # (a1 0; b1 c1)(a2 0; b2 c2) = (a1 a2, 0; b1 a2 + c1 b2, c1 c2)
    for i in range(d):
        for j in range(d):
            c = alg.mult[i, j]
            mult[top + i, top + j, top:top + d] = c
            mult[bot + i, bot + j, bot:bot + d] = c
            mult[off + i, top + j, off:off + d] = c
            mult[bot + i, off + j, off:off + d] = c
    labels = ([f"({l},0;0,0)" for l in alg.labels] + [f"(0,0;0,{l})" for l in alg.labels]
              + [f"(0,0;{l},0)" for l in alg.labels])
    corners = ([(s, t) for s, t in alg.corners] + [(s + n, t + n) for s, t in alg.corners]
               + [(s, t + n) for s, t in alg.corners])
    idems = [top + i for i in alg.idempotents] + [bot + i for i in alg.idempotents]
    gens = ([top + g for g in alg.generators] + [bot + g for g in alg.generators]
            + [off + i for i in alg.idempotents])
    t2 = FDAlgebra(f, 2 * n, labels, corners, mult, idems, gens, basic=alg.basic)
    t2.base = alg
    return t2


def zero_algebra(field: Field) -> FDAlgebra:
    return FDAlgebra(field, 0, [], [], field.zeros(0, 0).reshape(0, 0, 0), [], [], basic=True)


def opposite_algebra(alg: FDAlgebra) -> FDAlgebra:
    mult = np.array(np.transpose(alg.mult, (1, 0, 2)), copy=True)
    corners = [(t, s) for s, t in alg.corners]
    return FDAlgebra(alg.field, alg.n, alg.labels, corners, mult, alg.idempotents, alg.generators,
                     basic=alg.basic)
