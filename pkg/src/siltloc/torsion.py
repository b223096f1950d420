"""Classes of modules cut out by a set of maps between projectives.

For a set ``sigmas`` of maps ``sigma: P -> Q``:

* divisible: ``Hom(sigma, X)`` onto for every ``sigma``;
* torsion-free: ``Hom(sigma, X)`` one-to-one for every ``sigma``;
* torsion: generated by the cokernels, reached by trace iteration;
* reduced: no nonzero divisible submodule.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import Undecided
from .homalg import ProjMap
from .modules import (FDModule, ModuleHom, direct_sum, hom_dim, injective, quotient, submodule, trace,
                      trace_of_set)

BRUTE_FORCE_CAP = 4096


def _as_list(sigmas) -> list[ProjMap]:
    if isinstance(sigmas, ProjMap):
        return [sigmas]
    return list(sigmas)


def is_divisible(sigmas, x: FDModule) -> bool:
    f = x.field
    for s in _as_list(sigmas):
        m = s.hom_matrix(x)
        if m.shape[0] and f.rank(m) < m.shape[0]:
            return False
    return True


def is_torsionfree(sigmas, x: FDModule) -> bool:
    f = x.field
    for s in _as_list(sigmas):
        m = s.hom_matrix(x)
        if m.shape[1] and f.rank(m) < m.shape[1]:
            return False
    return True


def in_x_sigma(sigmas, x: FDModule) -> bool:
    """``Hom(sigma, X)`` bijective for every ``sigma``."""
    return is_divisible(sigmas, x) and is_torsionfree(sigmas, x)


def cokernels(sigmas) -> list[FDModule]:
    return [s.cokernel().target for s in _as_list(sigmas)]


def is_torsion(sigmas, x: FDModule) -> bool:
    return torsion_part(sigmas, x).inclusion.source.dim == x.dim


def is_reduced(sigmas, x: FDModule, **kw) -> bool:
    return divisible_part(sigmas, x, **kw).source.dim == 0


# ----------------------------------------------------------------------

@dataclass
class TorsionReport:
    module: FDModule
    divisible: bool
    torsionfree: bool
    torsion: bool
    inclusion: ModuleHom       # torsion part -> module
    projection: ModuleHom      # module -> module / torsion part
    iterations: int

    @property
    def in_x_sigma(self) -> bool:
        return self.divisible and self.torsionfree


def torsion_part(sigmas, x: FDModule) -> TorsionReport:
    """Largest submodule in the torsion class generated by the cokernels."""
    f = x.field
    gens = [c for c in cokernels(sigmas) if c.dim]
    span = f.zeros(x.dim, 0)
    iterations = 0
    while True:
        q = quotient(x, span)
        y = q.target
        t = trace_of_set(gens, y) if gens and y.dim else None
        if t is None or t.source.dim == 0:
            break
        iterations += 1
        # preimage of the trace: span + section(t)
        sec = f.right_inverse(q.matrix)
        lifted = f.matmul(sec, t.matrix)
        span = f.image_basis(f.hstack([span, lifted], x.dim))
    inc = submodule(x, span, check=False)
    proj = quotient(x, span)
    return TorsionReport(x, is_divisible(sigmas, x), is_torsionfree(sigmas, x),
                         inc.source.dim == x.dim, inc, proj, iterations)


# ----------------------------------------------------------------------

def all_submodules(x: FDModule, cap: int = BRUTE_FORCE_CAP) -> list[np.ndarray]:
    """Every submodule of ``x`` (column bases in reduced echelon form).

    Only for prime fields with ``p ** dim <= cap``.
    """
    f = x.field
    if f.p is None or f.p ** x.dim > cap:
        raise Undecided("module too large for submodule enumeration")
    gens = list(x.alg.generators) + list(x.alg.idempotents)

    def closure(cols: np.ndarray) -> np.ndarray:
        span = f.image_basis(cols) if cols.shape[1] else cols
        while True:
            ext = [span] + [f.matmul(x.acts[g], span) for g in gens]
            new = f.image_basis(f.hstack(ext, x.dim))
            if new.shape[1] == span.shape[1]:
                return new
            span = new

    def key(b: np.ndarray):
        return (b.shape[1], b.T.tobytes())

    zero = f.zeros(x.dim, 0)
    seen = {key(zero): zero}
    frontier = [zero]
    vectors = [v for v in f.vec_iter(x.dim) if np.any(v != 0)]
    while frontier:
        nxt = []
        for u in frontier:
            for v in vectors:
                if u.shape[1] and f.in_span(u, v):
                    continue
                w = closure(f.hstack([u, v.reshape(-1, 1)], x.dim))
                k = key(w)
                if k not in seen:
                    seen[k] = w
                    nxt.append(w)
        frontier = nxt
    return sorted(seen.values(), key=lambda b: (b.shape[1], b.T.tobytes()))


def divisible_part(sigmas, x: FDModule, *, silting: FDModule | None = None,
                   strategy: str | None = None) -> ModuleHom:
    """Largest submodule of ``x`` that is divisible.

    ``strategy`` is ``"trace"`` (needs a silting module ``T`` with
    ``Gen T`` equal to the divisible class; the part is the trace of ``T``)
    or ``"brute"`` (submodule enumeration under a size cap). Without a
    silting module the brute-force route is used, raising
    :class:`Undecided` above the cap.
    """
    sig = _as_list(sigmas)
    if not sig:
        return submodule(x, x.field.eye(x.dim), check=False)
    if strategy is None:
        strategy = "trace" if silting is not None else "brute"
    if strategy == "trace":
        if silting is None:
            raise ValueError("trace strategy needs a silting module")
        return trace(silting, x)
    f = x.field
    best = f.zeros(x.dim, 0)
    for b in all_submodules(x):
        sub = submodule(x, b, check=False).source
        if is_divisible(sig, sub):
            best = f.image_basis(f.hstack([best, b], x.dim))
    inc = submodule(x, best, check=False)
    if not is_divisible(sig, inc.source):
        raise AssertionError("sum of divisible submodules is not divisible")
    return inc


# ----------------------------------------------------------------------

@dataclass
class PairReport:
    ok: bool
    message: str = ""
    witness: tuple = ()


def verify_torsion_pair(modules: Sequence[FDModule], in_t: Callable[[FDModule], bool],
                        in_f: Callable[[FDModule], bool]) -> PairReport:
    """Check ``Hom(T, F) = 0`` and the canonical sequences on a module list."""
    ts = [m for m in modules if in_t(m)]
    fs = [m for m in modules if in_f(m)]
    for t in ts:
        for fm in fs:
            if t.dim and fm.dim and hom_dim(t, fm):
                return PairReport(False, "nonzero Hom from torsion to torsion-free module", (t, fm))
    for x in modules:
        t = trace_of_set([m for m in ts if m.dim], x) if ts else submodule(x, x.field.zeros(x.dim, 0))
        sub = t.source
        quo = quotient(x, t.matrix).target
        if not in_t(sub):
            return PairReport(False, "trace of the torsion class is not torsion", (x,))
        if not in_f(quo):
            return PairReport(False, "quotient by the torsion part is not torsion-free", (x,))
    return PairReport(True)


def injective_cogenerator(alg) -> FDModule:
    """``D(A)``, the sum of the indecomposable injectives."""
    return direct_sum([injective(alg, v) for v in range(alg.n)], alg)


def injective_iff_cogenerator_divisible(sigmas) -> bool:
    """All maps injective iff ``D(A)`` is divisible."""
    sig = _as_list(sigmas)
    if not sig:
        return True
    da = injective_cogenerator(sig[0].alg)
    return all(s.is_injective() for s in sig) == is_divisible(sig, da)
