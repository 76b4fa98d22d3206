"""Line-oriented instance files.

    # comment
    ring VARS = x,y,z,w ; char = 32003 ; ideal = x^3, x^2*y, x*y^2, y^3, x*w
    module X = free deg 0
    module M = coker [ x^2 ]
    module P = coker deg 0,0 [ x, y ; 0, x ]
    submodule N of X = (x*y), (y^2), (z), (w)
    module XmodN = X / N
    element g = u + v

Presentation rows index the generators of F0; entries in a row are separated
by commas and rows by semicolons.  Submodule generators are vectors over the
free cover of the ambient module.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import InputError
from .exactla import FieldSpec
from . import gmod
from .ring import MonomialQuotientRing, parse_monomial

_NAME = r"[A-Za-z_][A-Za-z_0-9]*"


def _err(msg, line, col=None):
    return InputError(msg, line=line, column=col)


def _split_top(text, sep):
    """Split on ``sep`` outside parentheses/brackets; returns (piece, offset) pairs."""
    out, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == sep and depth == 0:
            out.append((text[start:i], start))
            start = i + 1
    out.append((text[start:], start))
    return out


def _strip_off(piece, off):
    lead = len(piece) - len(piece.lstrip())
    return piece.strip(), off + lead


@dataclass
class RingDecl:
    var_names: tuple
    char: int
    ideal: tuple
    artinian_flag: bool | None = None

    def format(self):
        ring = MonomialQuotientRing(self.var_names, self.ideal, FieldSpec.from_char(self.char))
        gens = ", ".join(ring.mono_str(g) for g in ring.ideal_gens)
        s = f"ring VARS = {','.join(self.var_names)} ; char = {self.char} ; ideal = {gens}"
        if self.artinian_flag is False:
            s += " ; artinian = false"
        return s


@dataclass
class ModuleDecl:
    name: str
    kind: str                  # free | coker | quotient | sub
    degs: tuple = ()
    rows: tuple = ()           # coker: tuple of tuples of RingElem
    ambient: str = ""
    sub: str = ""

    def format(self):
        if self.kind == "free":
            return f"module {self.name} = free deg {','.join(map(str, self.degs))}"
        if self.kind == "coker":
            body = " ; ".join(", ".join(str(r) for r in row) for row in self.rows)
            return f"module {self.name} = coker deg {','.join(map(str, self.degs))} [ {body} ]"
        if self.kind == "quotient":
            return f"module {self.name} = {self.ambient} / {self.sub}"
        return f"module {self.name} = sub {self.sub}"

    def key(self):
        return (self.name, self.kind, self.degs, tuple(tuple(str(r) for r in row) for row in self.rows),
                self.ambient, self.sub)


@dataclass
class SubmoduleDecl:
    name: str
    ambient: str
    gens: tuple

    def format(self):
        body = ", ".join("(" + ", ".join(str(r) for r in g) + ")" for g in self.gens)
        return f"submodule {self.name} of {self.ambient} = {body}"

    def key(self):
        return (self.name, self.ambient, tuple(tuple(str(r) for r in g) for g in self.gens))


@dataclass
class ElementDecl:
    name: str
    elem: object

    def format(self):
        return f"element {self.name} = {self.elem}"

    def key(self):
        return (self.name, str(self.elem))


@dataclass
class InstanceFile:
    ring_decl: RingDecl
    ring: MonomialQuotientRing
    decls: list = field(default_factory=list)
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __eq__(self, other):
        return (isinstance(other, InstanceFile) and self.ring == other.ring
                and self.ring_decl.artinian_flag == other.ring_decl.artinian_flag
                and [(type(d).__name__, d.key()) for d in self.decls]
                == [(type(d).__name__, d.key()) for d in other.decls])

    def names(self):
        return [d.name for d in self.decls]

    def decl(self, name):
        for d in self.decls:
            if d.name == name:
                return d
        raise InputError(f"unknown name {name!r}")

    def format(self):
        return "\n".join([self.ring_decl.format()] + [d.format() for d in self.decls]) + "\n"

    # realization -------------------------------------------------------------

    def presented(self, name):
        obj = self.module(name)
        if not isinstance(obj, gmod.PresentedModule):
            raise InputError(f"{name!r} is not a free or cokernel module")
        return obj

    def module(self, name):
        """PresentedModule or Subquotient for a module name; a submodule name gives N as a module."""
        if name in self._cache:
            return self._cache[name]
        d = self.decl(name)
        if isinstance(d, SubmoduleDecl):
            obj = gmod.submodule_as_module(self.submodule(name))
        elif isinstance(d, ElementDecl):
            raise InputError(f"{name!r} is an element, not a module")
        elif d.kind == "free":
            obj = gmod.PresentedModule.free(self.ring, d.degs)
        elif d.kind == "coker":
            obj = gmod.PresentedModule.coker(self.ring, d.rows, d.degs)
        elif d.kind == "quotient":
            obj = gmod.quotient(self.presented(d.ambient), self.submodule(d.sub))
        else:
            obj = gmod.submodule_as_module(self.submodule(d.sub))
        self._cache[name] = obj
        return obj

    def submodule(self, name):
        key = ("sub", name)
        if key in self._cache:
            return self._cache[key]
        d = self.decl(name)
        if not isinstance(d, SubmoduleDecl):
            raise InputError(f"{name!r} is not a submodule")
        X = self.presented(d.ambient)
        W = gmod.span_closure(X, d.gens, None, label=name)
        self._cache[key] = W
        return W

    def element(self, name):
        d = self.decl(name)
        if not isinstance(d, ElementDecl):
            raise InputError(f"{name!r} is not an element")
        return d.elem


def _parse_ring(body, lineno, off, char_override):
    parts = _split_top(body, ";")
    opts = {}
    for piece, poff in parts:
        piece, poff = _strip_off(piece, off + poff)
        if not piece:
            continue
        m = re.fullmatch(r"(\w+)\s*=\s*(.*)", piece, re.S)
        if not m:
            raise _err(f"expected key = value, got {piece!r}", lineno, poff + 1)
        key = m.group(1).lower()
        if key in opts:
            raise _err(f"duplicate ring option {key!r}", lineno, poff + 1)
        opts[key] = (m.group(2).strip(), poff + m.start(2))
    if "vars" not in opts:
        raise _err("ring needs VARS = ...", lineno, off + 1)
    names = [v.strip() for v in opts["vars"][0].split(",")]
    for v in names:
        if not re.fullmatch(_NAME, v):
            raise _err(f"bad variable name {v!r}", lineno, opts["vars"][1] + 1)
    char = 32003
    if "char" in opts:
        try:
            char = int(opts["char"][0])
        except ValueError:
            raise _err(f"bad characteristic {opts['char'][0]!r}", lineno, opts["char"][1] + 1) from None
    if char_override is not None:
        char = char_override
    try:
        field_ = FieldSpec.from_char(char)
    except InputError as e:
        raise _err(str(e), lineno, opts.get("char", ("", off))[1] + 1) from None
    flag = None
    if "artinian" in opts:
        val = opts["artinian"][0].lower()
        if val not in ("true", "false"):
            raise _err("artinian must be true or false", lineno, opts["artinian"][1] + 1)
        flag = val == "true"
    ideal = []
    if "ideal" in opts and opts["ideal"][0]:
        text, ioff = opts["ideal"]
        for piece, poff in _split_top(text, ","):
            piece, poff = _strip_off(piece, ioff + poff)
            try:
                ideal.append(parse_monomial(names, field_, piece))
            except InputError as e:
                raise _relocated(e, lineno, poff + 1) from None
    unknown = set(opts) - {"vars", "char", "ideal", "artinian"}
    if unknown:
        raise _err(f"unknown ring option {sorted(unknown)[0]!r}", lineno, off + 1)
    try:
        ring = MonomialQuotientRing(names, ideal, field_)
    except InputError as e:
        raise _err(str(e), lineno, off + 1) from None
    if not ring.ideal_gens and flag is not False:
        raise _err("ring must be a proper quotient or explicitly flagged artinian=false", lineno, off + 1)
    if flag is not None and flag != ring.artinian:
        raise _err(f"artinian = {str(flag).lower()} contradicts the ideal", lineno, off + 1)
    return RingDecl(tuple(names), char, tuple(ring.ideal_gens), flag), ring


def _relocated(e, lineno, col):
    """Re-anchor a parser error (columns relative to the snippet) in the file."""
    m = re.match(r"column (\d+): (.*)", str(e), re.S)
    if m:
        return _err(m.group(2), lineno, col + int(m.group(1)) - 1)
    return _err(str(e), lineno, col)


def _parse_elem(ring, text, lineno, col):
    try:
        r = ring.parse(text)
    except InputError as e:
        raise _relocated(e, lineno, col) from None
    if not r.is_homogeneous():
        raise _err(f"inhomogeneous element {r}", lineno, col)
    return r


def _parse_degs(text, lineno, col):
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise _err(f"bad degree list {text!r}", lineno, col) from None


def parse_instance(text, char=None):
    ring_decl = ring = None
    decls = []
    seen = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        col0 = len(line) - len(line.lstrip())
        line = line.strip()
        m = re.match(r"(\w+)\s+", line)
        kw = m.group(1) if m else line
        if kw == "ring":
            if ring is not None:
                raise _err("second ring declaration", lineno, col0 + 1)
            mm = re.match(r"ring\s+", line)
            ring_decl, ring = _parse_ring(line[mm.end():], lineno, col0 + mm.end(), char)
            continue
        if ring is None:
            raise _err("the ring must be declared first", lineno, col0 + 1)
        if kw == "module":
            mm = re.fullmatch(rf"module\s+({_NAME})\s*=\s*(.*)", line, re.S)
            if not mm:
                raise _err("expected: module NAME = ...", lineno, col0 + 1)
            name, body = mm.group(1), mm.group(2).strip()
            bcol = col0 + mm.start(2) + 1
            d = _parse_module(ring, name, body, lineno, bcol, seen)
        elif kw == "submodule":
            mm = re.fullmatch(rf"submodule\s+({_NAME})\s+of\s+({_NAME})\s*=\s*(.*)", line, re.S)
            if not mm:
                raise _err("expected: submodule NAME of MODULE = (..), ...", lineno, col0 + 1)
            name, amb, body = mm.groups()
            if amb not in seen or seen[amb] not in ("free", "coker"):
                raise _err(f"unknown free/cokernel module {amb!r}", lineno, col0 + mm.start(2) + 1)
            rank = len(next(x for x in decls if x.name == amb).degs)
            gens = []
            for piece, poff in _split_top(body, ","):
                piece, poff = _strip_off(piece, col0 + mm.start(3) + poff)
                if not (piece.startswith("(") and piece.endswith(")")):
                    raise _err("submodule generators are written (a, b, ...)", lineno, poff + 1)
                ents = []
                for e, eoff in _split_top(piece[1:-1], ","):
                    e, eoff = _strip_off(e, poff + 1 + eoff)
                    ents.append(_parse_elem(ring, e, lineno, eoff + 1))
                if len(ents) != rank:
                    raise _err(f"generator has {len(ents)} entries, {amb} has rank {rank}", lineno, poff + 1)
                degs = {r.degree + a for r, a in zip(ents, next(x for x in decls if x.name == amb).degs)
                        if not r.is_zero()}
                if len(degs) > 1:
                    raise _err("inhomogeneous generator vector", lineno, poff + 1)
                gens.append(tuple(ents))
            d = SubmoduleDecl(name, amb, tuple(gens))
        elif kw == "element":
            mm = re.fullmatch(rf"element\s+({_NAME})\s*=\s*(.*)", line, re.S)
            if not mm:
                raise _err("expected: element NAME = expr", lineno, col0 + 1)
            d = ElementDecl(mm.group(1), _parse_elem(ring, mm.group(2).strip(), lineno, col0 + mm.start(2) + 1))
        else:
            raise _err(f"unknown declaration {kw!r}", lineno, col0 + 1)
        if d.name in seen or d.name in ring.var_names:
            raise _err(f"name {d.name!r} already defined", lineno, col0 + 1)
        seen[d.name] = getattr(d, "kind", "sub" if isinstance(d, SubmoduleDecl) else "element")
        decls.append(d)
    if ring is None:
        raise _err("no ring declaration", 1, 1)
    return InstanceFile(ring_decl, ring, decls)


def _parse_module(ring, name, body, lineno, bcol, seen):
    if body.startswith("free"):
        mm = re.fullmatch(r"free(?:\s+deg\s+(.*))?", body, re.S)
        if not mm:
            raise _err("expected: free deg a,b,...", lineno, bcol)
        degs = _parse_degs(mm.group(1), lineno, bcol + mm.start(1)) if mm.group(1) else (0,)
        return ModuleDecl(name, "free", degs)
    if body.startswith("coker"):
        mm = re.fullmatch(r"coker(?:\s+deg\s+([-0-9,\s]+?))?\s*\[(.*)\]\s*", body, re.S)
        if not mm:
            raise _err("expected: coker [deg a,b] [ row ; row ]", lineno, bcol)
        inner = mm.group(2)
        icol = bcol + mm.start(2)
        rows = []
        for rtext, roff in _split_top(inner, ";"):
            row = []
            for e, eoff in _split_top(rtext, ","):
                e, eoff = _strip_off(e, icol + roff + eoff)
                if not e:
                    raise _err("empty matrix entry", lineno, eoff)
                row.append(_parse_elem(ring, e, lineno, eoff))
            rows.append(tuple(row))
        if len({len(r) for r in rows}) != 1:
            raise _err("presentation rows have different lengths", lineno, icol)
        degs = _parse_degs(mm.group(1), lineno, bcol + mm.start(1)) if mm.group(1) else (0,) * len(rows)
        if len(degs) != len(rows):
            raise _err("one degree per presentation row expected", lineno, bcol)
        try:
            gmod.PresentedModule.coker(ring, rows, degs)
        except InputError as e:
            raise _err(str(e), lineno, icol) from None
        return ModuleDecl(name, "coker", degs, tuple(rows))
    mm = re.fullmatch(rf"({_NAME})\s*/\s*({_NAME})", body)
    if mm:
        amb, sub = mm.groups()
        if seen.get(amb) not in ("free", "coker"):
            raise _err(f"unknown free/cokernel module {amb!r}", lineno, bcol)
        if seen.get(sub) != "sub":
            raise _err(f"unknown submodule {sub!r}", lineno, bcol + mm.start(2))
        return ModuleDecl(name, "quotient", ambient=amb, sub=sub)
    mm = re.fullmatch(rf"sub\s+({_NAME})", body)
    if mm:
        if seen.get(mm.group(1)) != "sub":
            raise _err(f"unknown submodule {mm.group(1)!r}", lineno, bcol + mm.start(1))
        return ModuleDecl(name, "sub", sub=mm.group(1))
    raise _err("module must be free, coker, A / N or sub N", lineno, bcol)


def load_instance(path, char=None):
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read(), char=char)
