"""Plain-text corpus files: an algebra, named modules and named map sets.

Example::

    # the path algebra of 1 -> 2
    name kA2
    field GF(2)
    quiver 2
      a: 1 -> 2
    relations
    module S1
      dimvec 1 0
    module P1
      dimvec 1 1
      a = [1]
    sigma rad
      2 -> 1 : a
    complete

Vertices are numbered from 1. A path is a dot-separated list of arrow names
with the rightmost arrow traversed first (``b.a`` is ``a`` then ``b``);
``e3`` is the trivial path at vertex 3. Elements are sums of terms
``coeff*path``. An arrow ``a: i -> j`` acts on a module by a
``dim_j x dim_i`` matrix, rows separated by ``;``.

A map line in a ``sigma`` block reads ``d1 d2 ... -> c1 c2 ... : M`` for
the map from ``A e_d1 + ...`` to ``A e_c1 + ...``; ``M`` has one row per
codomain summand and one comma-separated entry per domain summand, and
acts by right multiplication. An empty side is written ``0``.
``complete`` marks the module list as all indecomposables up to iso.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from .errors import ParseError
from .field import Field

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_']*$")
_IDEM = re.compile(r"e[0-9]+$")
_TERM = re.compile(r"\s*([+-])?\s*(?:([0-9]+(?:/[0-9]+)?)\s*\*?\s*)?([A-Za-z_][A-Za-z0-9_'.]*)?\s*")


def parse_element(text: str, *, line: int = 0, column: int = 1) -> list[tuple[Fraction, str]]:
    """``"2*b.a - e1"`` -> ``[(2, "b.a"), (-1, "e1")]``; ``"0"`` is the empty sum."""
    s = text.strip()
    if s in ("", "0"):
        return []
    out = []
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot read term at {s[pos:]!r}", line, column + pos)
        sign, coeff, path = m.groups()
        if not first and sign is None:
            raise ParseError("terms must be joined by + or -", line, column + pos)
        c = Fraction(coeff) if coeff else Fraction(1)
        if sign == "-":
            c = -c
        if path is None:
            if coeff is None:
                raise ParseError("empty term", line, column + pos)
            raise ParseError("scalar terms need a path (use e<v> for vertices)", line, column + pos)
        out.append((c, path))
        pos = m.end()
        first = False
    return out


def format_element(terms) -> str:
    if not terms:
        return "0"
    parts = []
    for k, (c, path) in enumerate(terms):
        c = Fraction(c)
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = path if mag == 1 else f"{mag}*{path}"
        if k == 0:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


def parse_matrix(text: str, *, line: int = 0, column: int = 1) -> list[list[Fraction]]:
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ParseError("matrix must be written [r11 r12; r21 r22]", line, column)
    body = s[1:-1].strip()
    if not body:
        return []
    rows = []
    for r in body.split(";"):
        try:
            rows.append([Fraction(x) for x in r.split()])
        except ValueError as exc:
            raise ParseError(f"bad matrix entry: {exc}", line, column) from None
    if len({len(r) for r in rows}) > 1:
        raise ParseError("matrix rows have different lengths", line, column)
    return rows


def format_matrix(rows) -> str:
    return "[" + "; ".join(" ".join(str(Fraction(x)) for x in r) for r in rows) + "]"


# ----------------------------------------------------------------------

@dataclass
class ModuleSpec:
    name: str
    dimvec: list[int]
    arrows: dict = dc_field(default_factory=dict)   # arrow name -> rows


@dataclass
class MapSpec:
    domain: list[int]        # 0-based vertices
    codomain: list[int]
    entries: list            # [j][i] -> element terms


@dataclass
class CorpusFile:
    name: str = ""
    field: str = "GF(2)"
    vertices: int = 0
    arrows: list = dc_field(default_factory=list)        # (name, src, tgt), 0-based
    relations: list = dc_field(default_factory=list)     # element terms
    modules: list = dc_field(default_factory=list)       # ModuleSpec
    sigmas: dict = dc_field(default_factory=dict)        # name -> [MapSpec]
    complete: bool = False

    # -- builders ------------------------------------------------------
    def build_field(self) -> Field:
        return Field.parse(self.field)

    def algebra(self):
        cached = self.__dict__.get("_alg")
        if cached is None:
            from .algebra import algebra_from_quiver, quiver

            q = quiver(self.vertices, self.arrows)
            cached = algebra_from_quiver(q, self.relations, self.build_field())
            cached.name = self.name
            self._alg = cached
        return cached

    def module(self, name: str):
        from .modules import representation

        for spec in self.modules:
            if spec.name == name:
                alg = self.algebra()
                f = alg.field
                blocks = {a: f.array([[f.scalar(x) for x in r] for r in rows],
                                     shape=self._shape(spec, a)) for a, rows in spec.arrows.items()}
                return representation(alg, spec.dimvec, blocks, name=name)
        raise KeyError(f"no module named {name!r}")

    def _shape(self, spec: ModuleSpec, arrow: str) -> tuple[int, int]:
        for n, s, t in self.arrows:
            if n == arrow:
                return spec.dimvec[t], spec.dimvec[s]
        raise KeyError(arrow)

    def module_list(self) -> list:
        return [self.module(s.name) for s in self.modules]

    def sigma(self, name: str) -> list:
        from .algebra import path_element
        from .homalg import ProjMap

        if name not in self.sigmas:
            raise KeyError(f"no map set named {name!r}")
        alg = self.algebra()
        out = []
        for k, ms in enumerate(self.sigmas[name]):
            pm = ProjMap(alg, ms.domain, ms.codomain)
            for j in range(len(ms.codomain)):
                for i in range(len(ms.domain)):
                    pm.entries[j, i] = path_element(alg, ms.entries[j][i])
            out.append(ProjMap(alg, ms.domain, ms.codomain, pm.entries,
                               name=name if len(self.sigmas[name]) == 1 else f"{name}{k + 1}"))
        return out


# ----------------------------------------------------------------------

def _strip_comment(line: str) -> str:
    i = line.find("#")
    return line if i < 0 else line[:i]


def _vertex_list(text: str, n: int, line: int, col: int) -> list[int]:
    t = text.strip()
    if t == "0":
        return []
    out = []
    for tok in t.split():
        if not tok.isdigit() or not 1 <= int(tok) <= n:
            raise ParseError(f"bad vertex {tok!r}", line, col)
        out.append(int(tok) - 1)
    return out


def parse_corpus(text: str) -> CorpusFile:
    """Parse a corpus file; raises :class:`ParseError` with 1-based line and column."""
    cf = CorpusFile()
    section = None
    current = None
    seen_field = False
    for ln, raw in enumerate(text.splitlines(), start=1):
        body = _strip_comment(raw).rstrip()
        if not body.strip():
            continue
        indent = len(body) - len(body.lstrip())
        col = indent + 1
        s = body.strip()
        head, _, rest = s.partition(" ")
        rest = rest.strip()
        if head == "name" and indent == 0:
            cf.name, section = rest, None
        elif head == "field" and indent == 0:
            try:
                Field.parse(rest)
            except ValueError as exc:
                raise ParseError(str(exc), ln, col + 6) from None
            cf.field, section, seen_field = rest, None, True
        elif head == "quiver" and indent == 0:
            if not rest.isdigit():
                raise ParseError("quiver needs a vertex count", ln, col + 7)
            cf.vertices, section = int(rest), "quiver"
        elif s == "relations" and indent == 0:
            section = "relations"
        elif head == "module" and indent == 0:
            if not _NAME.match(rest):
                raise ParseError(f"bad module name {rest!r}", ln, col + 7)
            current = ModuleSpec(rest, [0] * cf.vertices)
            cf.modules.append(current)
            section = "module"
        elif head == "sigma" and indent == 0:
            if not _NAME.match(rest):
                raise ParseError(f"bad map set name {rest!r}", ln, col + 6)
            cf.sigmas[rest] = []
            current, section = rest, "sigma"
        elif s == "complete" and indent == 0:
            cf.complete, section = True, None
        elif section == "quiver":
            m = re.match(r"([^:\s]+)\s*:\s*([0-9]+)\s*->\s*([0-9]+)$", s)
            if not m:
                raise ParseError("arrow lines read 'name: src -> tgt'", ln, col)
            name, a, b = m.group(1), int(m.group(2)), int(m.group(3))
            if not _NAME.match(name) or _IDEM.match(name):
                raise ParseError(f"bad arrow name {name!r}", ln, col)
            if not (1 <= a <= cf.vertices and 1 <= b <= cf.vertices):
                raise ParseError("arrow endpoint out of range", ln, col)
            if any(n == name for n, _, _ in cf.arrows):
                raise ParseError(f"duplicate arrow {name!r}", ln, col)
            cf.arrows.append((name, a - 1, b - 1))
        elif section == "relations":
            cf.relations.append(parse_element(s, line=ln, column=col))
        elif section == "module":
            if head == "dimvec":
                try:
                    dv = [int(x) for x in rest.split()]
                except ValueError:
                    raise ParseError("dimvec needs integers", ln, col) from None
                if len(dv) != cf.vertices:
                    raise ParseError("dimvec length differs from vertex count", ln, col)
                current.dimvec = dv
            else:
                m = re.match(r"([^=\s]+)\s*=\s*(.*)$", s)
                if not m:
                    raise ParseError("module lines read 'dimvec ...' or 'arrow = [..]'", ln, col)
                arrow = m.group(1)
                match = [(n, a, b) for n, a, b in cf.arrows if n == arrow]
                if not match:
                    raise ParseError(f"unknown arrow {arrow!r}", ln, col)
                rows = parse_matrix(m.group(2), line=ln, column=col + m.start(2))
                _, a, b = match[0]
                r, c = current.dimvec[b], current.dimvec[a]
                if (len(rows), len(rows[0]) if rows else c) != (r, c) and r * c:
                    raise ParseError(f"matrix for {arrow} must be {r}x{c}", ln, col)
                current.arrows[arrow] = rows
        elif section == "sigma":
            m = re.match(r"([0-9 ]+)->([0-9 ]+):(.*)$", s)
            if not m:
                raise ParseError("map lines read 'd1 d2 -> c1 : entries'", ln, col)
            dom = _vertex_list(m.group(1), cf.vertices, ln, col)
            cod = _vertex_list(m.group(2), cf.vertices, ln, col)
            if not dom:
                if m.group(3).replace(";", "").strip():
                    raise ParseError("a map out of 0 has no entries", ln, col)
                entries = [[] for _ in cod]
            else:
                rows_txt = m.group(3).split(";") if m.group(3).strip() else []
                entries = [[parse_element(x, line=ln, column=col) for x in r.split(",")] for r in rows_txt]
            if len(entries) != len(cod) or any(len(r) != len(dom) for r in entries):
                raise ParseError(f"entries must form a {len(cod)}x{len(dom)} array", ln, col)
            cf.sigmas[current].append(MapSpec(dom, cod, entries))
        else:
            raise ParseError(f"unexpected line {s!r}", ln, col)
    if not seen_field:
        raise ParseError("missing 'field' line", 1, 1)
    if cf.vertices == 0:
        raise ParseError("missing 'quiver' section", 1, 1)
    return cf


def format_corpus(cf: CorpusFile) -> str:
    """Inverse of :func:`parse_corpus` up to whitespace and comments."""
    out = []
    if cf.name:
        out.append(f"name {cf.name}")
    out.append(f"field {cf.field}")
    out.append(f"quiver {cf.vertices}")
    for n, a, b in cf.arrows:
        out.append(f"  {n}: {a + 1} -> {b + 1}")
    out.append("relations")
    for r in cf.relations:
        out.append(f"  {format_element(r)}")
    for m in cf.modules:
        out.append(f"module {m.name}")
        out.append("  dimvec " + " ".join(str(x) for x in m.dimvec))
        for a, rows in m.arrows.items():
            out.append(f"  {a} = {format_matrix(rows)}")
    for name, maps in cf.sigmas.items():
        out.append(f"sigma {name}")
        for ms in maps:
            dom = " ".join(str(v + 1) for v in ms.domain) or "0"
            cod = " ".join(str(v + 1) for v in ms.codomain) or "0"
            body = "; ".join(", ".join(format_element(x) for x in row) for row in ms.entries)
            out.append(f"  {dom} -> {cod} : {body}".rstrip())
    if cf.complete:
        out.append("complete")
    return "\n".join(out) + "\n"


def load_corpus(path) -> CorpusFile:
    with open(path, encoding="utf-8") as fh:
        return parse_corpus(fh.read())


def bundled_path(name: str):
    """Path of a corpus file shipped with the package (``kA2``, ``kA3``, ...)."""
    from importlib import resources

    return resources.files("siltloc") / "data" / f"{name}.alg"


def load_bundled(name: str) -> CorpusFile:
    return parse_corpus(bundled_path(name).read_text(encoding="utf-8"))


def matrix_to_rows(m: np.ndarray) -> list[list[Fraction]]:
    return [[Fraction(int(x)) if not isinstance(x, Fraction) else x for x in r] for r in m]
