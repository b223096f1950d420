"""Command-line front end.

Exit status: 0 when every internal check passed, 1 when a check failed,
2 for unreadable input or unknown names, 3 when a computation hit its caps
(divergence, no stabilisation, undecided isomorphism).

Default caps come from ``SILTLOC_CAPS``, e.g. ``steps=64,dim=4096,bound=6,cap=32``.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .errors import (Diverged, NotFiniteDimensional, NotStabilised, OracleDisagreement, ParseError, SiltlocError,
                     Undecided)
from .textfmt import CorpusFile, bundled_path, load_corpus

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAPS = 0, 1, 2, 3

DEFAULT_CAPS = {"steps": 64, "dim": 4096, "bound": 6, "cap": 32}


def caps_from_env(text: str | None = None) -> dict:
    caps = dict(DEFAULT_CAPS)
    text = os.environ.get("SILTLOC_CAPS", "") if text is None else text
    for item in filter(None, (x.strip() for x in text.split(","))):
        key, _, val = item.partition("=")
        if key not in caps or not val.isdigit():
            raise ValueError(f"bad caps entry {item!r}")
        caps[key] = int(val)
    return caps


class Report:
    """Collects lines and the worst outcome."""

    def __init__(self, out):
        self.out = out
        self.failed = False

    def line(self, text: str = "") -> None:
        print(text, file=self.out)

    def check(self, label: str, ok: bool) -> None:
        self.line(f"{label}: {'PASS' if ok else 'FAIL'}")
        if not ok:
            self.failed = True


def _load(path: str) -> CorpusFile:
    p = Path(path)
    if not p.exists() and not p.suffix:
        bp = bundled_path(path)
        if bp.is_file():
            return load_corpus(bp)
    return load_corpus(p)


def _yes(b) -> str:
    return "yes" if b else "no"


def _dv(m) -> str:
    return "(" + ",".join(str(x) for x in m.dimvec) + ")"


def _indecomposables(cf: CorpusFile):
    from .silting import indecomposables_by_enumeration

    if cf.complete:
        return cf.module_list()
    return indecomposables_by_enumeration(cf.algebra())


def _mult_table(rep: Report, alg) -> None:
    labels = alg.labels
    for i in range(alg.dim):
        for j in range(alg.dim):
            prod = alg.mult[i, j]
            if not np.any(prod != 0):
                continue
            terms = " + ".join(f"{c}*{labels[k]}" for k, c in enumerate(prod) if c != 0)
            rep.line(f"  {labels[i]} * {labels[j]} = {terms}")


# ----------------------------------------------------------------------
# commands

def cmd_check(args, rep: Report, caps: dict) -> None:
    """Validate the algebra (associativity, idempotents, radical) and every module and map set."""
    cf = _load(args.file)
    alg = cf.algebra()
    alg.validate()
    rep.line(f"algebra {cf.name or args.file}: field {cf.field}, {alg.n} vertices, dimension {alg.dim}")
    rep.check("associativity, idempotents, radical nilpotency", True)
    for spec in cf.modules:
        m = cf.module(spec.name)
        rep.check(f"module {spec.name} {_dv(m)}", True)
    for name in cf.sigmas:
        maps = cf.sigma(name)
        rep.check(f"map set {name} ({len(maps)} maps)", True)


def cmd_silting(args, rep: Report, caps: dict) -> None:
    """Tau-rigid / partial silting / silting / tilting verdicts, or a census of silting classes."""
    from .silting import (canonical_presentation, indecomposables_by_enumeration, is_silting, is_tau_rigid,
                          is_tilting, silting_census, support)

    cf = _load(args.file)
    alg = cf.algebra()
    if args.enumerate:
        bound = [args.dim_bound] * alg.n if args.dim_bound else None
        inds = indecomposables_by_enumeration(alg, bound)
        census = silting_census(alg, inds)
        silt = [e for e in census.entries if e.verdict.silting]
        rep.line(f"indecomposables: {len(inds)} " + " ".join(_dv(m) for m in inds))
        rep.line(f"candidates: {len(census.entries)}")
        rep.line(f"silting candidates: {len(silt)}")
        rep.line(f"{len(census.silting_classes)} silting classes")
        return
    inds = _indecomposables(cf)
    names = args.modules or [s.name for s in cf.modules]
    rep.line(f"{'module':<10} {'dimvec':<12} {'tau-rigid':<10} {'partial':<8} {'silting':<8} tilting")
    for name in names:
        t = cf.module(name)
        outside = [v for v in range(alg.n) if v not in set(support(t))]
        omega = canonical_presentation(t, outside)
        v = is_silting(t, omega, inds)
        tilt = is_tilting(t).tilting
        rep.line(f"{name:<10} {_dv(t):<12} {_yes(is_tau_rigid(t)):<10} {_yes(v.partial):<8} "
                 f"{_yes(v.silting):<8} {_yes(tilt)}")


def cmd_localize(args, rep: Report, caps: dict) -> None:
    """Normal forms of the universal localisation, its finite quotient and invertibility witnesses."""
    from .cohnloc import dump_presentation, finite_quotient, localisation_presentation, normal_forms

    cf = _load(args.file)
    alg = cf.algebra()
    pres = localisation_presentation(alg, cf.sigma(args.sigma))
    bound = args.bound or caps["bound"]
    if args.dump:
        rep.line(dump_presentation(pres).rstrip())
    nf = normal_forms(pres, bound)
    for d, words in enumerate(nf.layers):
        rep.line(f"degree {d}: {len(words)} " + " ".join(words))
    if not nf.stabilised:
        why = "bound exceeded" if nf.bound_exceeded else "still growing"
        rep.line(f"not stabilised at bound {bound} ({why})")
        raise NotStabilised(f"normal forms did not stabilise at bound {bound}")
    rep.line(f"stabilised, dim {nf.dimension}")
    loc = finite_quotient(nf)
    _mult_table(rep, loc.algebra)
    rep.line(f"epimorphism: {_yes(loc.ring_hom.epimorphism)}; Tor_1 vanishes: {_yes(loc.ring_hom.tor1_vanishes)}")
    for s, ok in zip(loc.presentation.sigmas, loc.invertible):
        rep.check(f"B (x) {s.name} invertible", ok)
    rep.check("ring epimorphism", bool(loc.ring_hom.epimorphism))


def cmd_ringepi(args, rep: Report, caps: dict) -> None:
    """The ring epimorphism of a partial silting presentation and its B-module table."""
    from .ringepi import (closed_under_extensions, in_image_category, partial_silting_from_sigma,
                          silting_ring_epi, xb_membership)

    cf = _load(args.file)
    alg = cf.algebra()
    maps = cf.sigma(args.sigma)
    if args.from_sigma:
        omega, t1, _ = partial_silting_from_sigma(maps, alg, cap=caps["cap"])
    else:
        omega = maps[0]
        for m in maps[1:]:
            omega = omega.direct_sum(m)
        t1 = omega.cokernel().target
    rep.line(f"T1 {_dv(t1)}; omega {[v + 1 for v in omega.domain]} -> {[v + 1 for v in omega.codomain]}")
    mods = cf.module_list()
    f = silting_ring_epi(t1, omega, steps=caps["steps"], total_dim=caps["dim"])
    rep.line(f"B: dimension {f.target.dim}, {f.target.n} vertices")
    _mult_table(rep, f.target)
    rep.line(f"epimorphism: {_yes(f.epimorphism)}; Tor_1 dimension: {f.tor1_dim}")
    rep.line(f"{'module':<10} {'dimvec':<12} {'Hom(omega,X) iso':<18} B-module")
    for x in mods:
        a, b = xb_membership(omega, x), in_image_category(f, x)
        rep.line(f"{x.name:<10} {_dv(x):<12} {_yes(a):<18} {_yes(b)}")
        if a != b:
            rep.failed = True
    closed = closed_under_extensions(lambda m: in_image_category(f, m), mods)
    rep.check("Tor_1 = 0 iff B-modules closed under extensions", f.tor1_vanishes == closed)
    rep.check("ring epimorphism", bool(f.epimorphism))


def cmd_locsilt(args, rep: Report, caps: dict) -> None:
    """Every universal localisation is a silting ring epimorphism: compare the two membership tests."""
    from .ringepi import localisation_silting_check

    cf = _load(args.file)
    rep_ = localisation_silting_check(cf.sigma(args.sigma), cf.module_list(), cf.algebra(), cap=caps["cap"])
    rep.line(f"T1 {_dv(rep_.module)}; partial silting: {_yes(rep_.partial_silting)}")
    rep.line(f"{'module':<10} {'Hom(omega,X) iso':<18} {'divisible, coker-perp':<22} verdict")
    for name, lhs, rhs in rep_.rows:
        rep.line(f"{name:<10} {_yes(lhs):<18} {_yes(rhs):<22} {'PASS' if lhs == rhs else 'FAIL'}")
    rep.check("membership tables identical", rep_.passed)


def cmd_torsion(args, rep: Report, caps: dict) -> None:
    """Divisible / torsion-free / torsion verdicts and the torsion part of a module."""
    from .torsion import torsion_part

    cf = _load(args.file)
    x = cf.module(args.module)
    r = torsion_part(cf.sigma(args.sigma), x)
    rep.line(f"module {args.module} {_dv(x)}")
    rep.line(f"divisible: {_yes(r.divisible)}")
    rep.line(f"torsion-free: {_yes(r.torsionfree)}")
    rep.line(f"torsion: {_yes(r.torsion)}")
    rep.line(f"Hom(sigma, X) bijective: {_yes(r.in_x_sigma)}")
    rep.line(f"torsion part {_dv(r.inclusion.source)} after {r.iterations} steps; "
             f"quotient {_dv(r.projection.target)}")


def cmd_morcat(args, rep: Report, caps: dict) -> None:
    """Ext^1 in the morphism category by resolution, by homotopy classes and over T2(A)."""
    from .morcat import (from_projmap, is_split, mapping_cone_extension, mor_ext1_homotopy,
                         mor_ext1_resolution, mor_ext1_t2, same_classes)

    cf = _load(args.file)
    zs = cf.sigma(args.sigma)
    gs = cf.sigma(args.g)
    for s in zs:
        for g in gs:
            z, w = from_projmap(s), from_projmap(g)
            a = mor_ext1_resolution(z, w)
            b = mor_ext1_homotopy(z, w)
            c = mor_ext1_t2(z, w)
            rep.line(f"Ext^1(Z_{s.name}, Z_{g.name}): resolution {a.dim}, homotopy {b.dim}, T2 {c}")
            rep.check(f"  agreement {s.name}/{g.name}", a.dim == b.dim == c and same_classes(a, b))
            if args.cone:
                for k, h in enumerate(a.classes):
                    seq = mapping_cone_extension(z, w, h)
                    rep.line(f"  cone of class {k + 1}: dim {seq.cone.dim}, split {_yes(is_split(seq))}")


# ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="siltloc", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"siltloc {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help=cmd_check.__doc__)
    c.add_argument("file")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("silting", help=cmd_silting.__doc__)
    c.add_argument("file")
    c.add_argument("modules", nargs="*")
    c.add_argument("--enumerate", action="store_true")
    c.add_argument("--dim-bound", type=int, default=None)
    c.set_defaults(func=cmd_silting)

    c = sub.add_parser("localize", help=cmd_localize.__doc__)
    c.add_argument("file")
    c.add_argument("sigma")
    c.add_argument("--bound", type=int, default=None)
    c.add_argument("--dump", action="store_true")
    c.set_defaults(func=cmd_localize)

    c = sub.add_parser("ringepi", help=cmd_ringepi.__doc__)
    c.add_argument("file")
    c.add_argument("sigma")
    c.add_argument("--from-sigma", action="store_true",
                   help="first build the partial silting presentation from the map set")
    c.add_argument("--caps", default=None, help="override caps, e.g. steps=10,dim=100")
    c.set_defaults(func=cmd_ringepi)

    c = sub.add_parser("locsilt", help=cmd_locsilt.__doc__)
    c.add_argument("file")
    c.add_argument("sigma")
    c.set_defaults(func=cmd_locsilt)

    c = sub.add_parser("torsion", help=cmd_torsion.__doc__)
    c.add_argument("file")
    c.add_argument("sigma")
    c.add_argument("module")
    c.set_defaults(func=cmd_torsion)

    c = sub.add_parser("morcat", help=cmd_morcat.__doc__)
    c.add_argument("file")
    c.add_argument("sigma")
    c.add_argument("g")
    c.add_argument("--cone", action="store_true")
    c.set_defaults(func=cmd_morcat)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    rep = Report(out)
    try:
        caps = caps_from_env()
        if getattr(args, "caps", None):
            caps.update(caps_from_env(args.caps))
        args.func(args, rep, caps)
    except ParseError as exc:
        print(f"{args.file}: parse error at {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (OSError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (Diverged, NotStabilised, Undecided, NotFiniteDimensional) as exc:
        rep.line(f"stopped: {type(exc).__name__}: {exc}")
        for step in getattr(exc, "trace", []) or []:
            rep.line(f"  trace: {step}")
        return EXIT_CAPS
    except (OracleDisagreement, SiltlocError) as exc:
        rep.line(f"check failed: {type(exc).__name__}: {exc}")
        return EXIT_FAIL
    return EXIT_FAIL if rep.failed else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
