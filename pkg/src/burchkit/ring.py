"""Standard-graded monomial quotient rings k[x1..xn]/I and their elements."""

from __future__ import annotations

import re
from fractions import Fraction
from functools import cached_property

import numpy as np

from .errors import InputError
from .exactla import FieldSpec


def divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def normalize_ideal(monomials):
    """Minimal generators of the monomial ideal, in descending lex order."""
    gens = sorted(set(tuple(int(e) for e in m) for m in monomials), key=lambda m: (sum(m), m))
    keep = []
    for m in gens:
        if not any(divides(g, m) for g in keep):
            keep.append(m)
    return sorted(keep, reverse=True)


class MonomialQuotientRing:
    """R = k[x1..xn]/I with I generated by monomials; all variables in degree 1."""

    def __init__(self, var_names, ideal=(), field=None):
        names = tuple(str(v).strip() for v in var_names)
        if not names:
            raise InputError("ring needs at least one variable")
        for v in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", v):
                raise InputError(f"bad variable name {v!r}")
        if len(set(names)) != len(names):
            raise InputError("duplicate variable names")
        self.var_names = names
        self.n = len(names)
        self.field = field or FieldSpec.prime()
        gens = []
        for m in ideal:
            m = tuple(int(e) for e in m)
            if len(m) != self.n or min(m) < 0:
                raise InputError(f"bad exponent vector {m}")
            if sum(m) == 0:
                raise InputError("the unit ideal does not define a graded ring here")
            gens.append(m)
        self.ideal_gens = tuple(normalize_ideal(gens))
        self._basis = {}
        self._index = {}
        self._maps = {}

    # identity ------------------------------------------------------------

    def key(self):
        return (self.var_names, self.field, self.ideal_gens)

    def __eq__(self, other):
        return isinstance(other, MonomialQuotientRing) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        gens = ", ".join(self.mono_str(g) for g in self.ideal_gens)
        return f"k[{','.join(self.var_names)}]/({gens}) over {self.field.label}"

    # monomial bookkeeping ------------------------------------------------

    def reduced(self, m):
        return not any(divides(g, m) for g in self.ideal_gens)

    def degree_basis(self, d):
        """Standard monomials of degree d, descending lex order."""
        if d < 0:
            return []
        if d not in self._basis:
            if d == 0:
                basis = [tuple([0] * self.n)]
            else:
                cand = set()
                for m in self.degree_basis(d - 1):
                    for i in range(self.n):
                        e = list(m)
                        e[i] += 1
                        cand.add(tuple(e))
                basis = sorted((m for m in cand if self.reduced(m)), reverse=True)
            self._basis[d] = basis
            self._index[d] = {m: i for i, m in enumerate(basis)}
        return self._basis[d]

    def index(self, d):
        self.degree_basis(d)
        return self._index.get(d, {})

    def hilbert_value(self, d):
        return len(self.degree_basis(d))

    @cached_property
    def artinian(self):
        pure = set()
        for g in self.ideal_gens:
            nz = [i for i, e in enumerate(g) if e]
            if len(nz) == 1:
                pure.add(nz[0])
        return len(pure) == self.n

    @cached_property
    def socle_bound(self):
        """Smallest s with R_s = 0 (None when R is not Artinian)."""
        if not self.artinian:
            return None
        d = 0
        while self.hilbert_value(d):
            d += 1
        return d

    def artinian_profile(self):
        return {"artinian": self.artinian, "s": self.socle_bound}

    @cached_property
    def is_field(self):
        return self.artinian and self.socle_bound == 1

    def mono_map(self, mu, d):
        """Index map R_d -> R_{d+|mu|} for multiplication by the monomial mu (-1 = zero)."""
        key = (mu, d)
        hit = self._maps.get(key)
        if hit is None:
            e = sum(mu)
            idx = self.index(d + e)
            hit = np.array([idx.get(mono_mul(m, mu), -1) for m in self.degree_basis(d)], dtype=np.int64)
            self._maps[key] = hit
        return hit

    def mult_matrix(self, r, d):
        """Matrix of v -> r v from R_d to R_{d+deg r} (rows = source basis)."""
        e = r.degree
        F = self.field
        src = self.hilbert_value(d)
        tgt = self.hilbert_value(d + e) if e is not None else 0
        out = F.zeros((src, tgt))
        if r.is_zero() or src == 0 or tgt == 0:
            return out
        rows = np.arange(src)
        for mu, c in r.terms:
            mp = self.mono_map(mu, d)
            ok = mp >= 0
            out[rows[ok], mp[ok]] = out[rows[ok], mp[ok]] + c
        return F.norm(out)

    # elements ------------------------------------------------------------

    def elem(self, terms):
        return RingElem(self, terms)

    def zero(self):
        return RingElem(self, {})

    def one(self):
        return RingElem(self, {tuple([0] * self.n): 1})

    def var(self, i):
        if isinstance(i, str):
            i = self.var_names.index(i)
        e = [0] * self.n
        e[i] = 1
        return RingElem(self, {tuple(e): 1})

    def variables(self):
        return [self.var(i) for i in range(self.n)]

    def monomial(self, m, c=1):
        return RingElem(self, {tuple(m): c})

    def mono_str(self, m):
        parts = []
        for name, e in zip(self.var_names, m):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    def parse(self, text):
        """Parse a polynomial expression such as ``x^2*y - 3/2*z``."""
        return _Parser(self, text).run()

    def mul(self, a, b):
        return a * b

    def with_field(self, field):
        return MonomialQuotientRing(self.var_names, self.ideal_gens, field)


class RingElem:
    """A reduced element of a MonomialQuotientRing (immutable)."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring, terms):
        F = ring.field
        clean = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for m, c in items:
            m = tuple(m)
            if not ring.reduced(m):
                continue
            c = F.scalar(c)
            c = F.scalar(clean.get(m, 0) + c) if m in clean else c
            if c:
                clean[m] = c
            else:
                clean.pop(m, None)
        self.ring = ring
        self.terms = tuple(sorted(clean.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True))
        self._hash = None

    def _check(self, other):
        if not isinstance(other, RingElem):
            other = RingElem(self.ring, {tuple([0] * self.ring.n): other})
        elif other.ring != self.ring:
            raise InputError("ring mismatch")
        return other

    def __add__(self, other):
        other = self._check(other)
        d = dict(self.terms)
        for m, c in other.terms:
            d[m] = d.get(m, 0) + c
        return RingElem(self.ring, d)

    __radd__ = __add__

    def __neg__(self):
        return RingElem(self.ring, {m: -c for m, c in self.terms})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        d = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = mono_mul(m1, m2)
                d[m] = d.get(m, 0) + c1 * c2
        return RingElem(self.ring, d)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = self.ring.one()
        for _ in range(int(k)):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, RingElem):
            try:
                other = self._check(other)
            except Exception:
                return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.terms)
        return self._hash

    def is_zero(self):
        return not self.terms

    @property
    def degree(self):
        """Degree of a homogeneous element; None for zero or inhomogeneous."""
        degs = {sum(m) for m, _ in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def is_homogeneous(self):
        return len({sum(m) for m, _ in self.terms}) <= 1

    def is_unit(self):
        return any(sum(m) == 0 for m, _ in self.terms)

    def monomials(self):
        return [m for m, _ in self.terms]

    def __str__(self):
        if not self.terms:
            return "0"
        F = self.ring.field
        out = []
        for m, c in self.terms:
            ms = self.ring.mono_str(m)
            if F.is_prime:
                v = c if c <= F.p // 2 else c - F.p
                neg = v < 0
                cs = str(-v if neg else v)
            else:
                neg = c < 0
                cs = F.fmt(-c if neg else c)
            if ms == "1":
                body = cs
            elif cs == "1":
                body = ms
            else:
                body = f"{cs}*{ms}"
            if out:
                out.append(("- " if neg else "+ ") + body)
            else:
                out.append(("-" if neg else "") + body)
        return " ".join(out)

    __repr__ = __str__


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


class _Parser:
    def __init__(self, ring, text):
        self.ring = ring
        self.text = text
        self.toks = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                break
            col = m.start(m.lastindex) + 1
            if m.group(1):
                self.toks.append(("num", int(m.group(1)), col))
            elif m.group(2):
                self.toks.append(("var", m.group(2), col))
            else:
                self.toks.append(("op", m.group(3), col))
            pos = m.end()
        self.i = 0

    def fail(self, msg, col=None):
        if col is None:
            col = self.toks[self.i][2] if self.i < len(self.toks) else len(self.text) + 1
        raise _located(msg, col)

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None, len(self.text) + 1)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def run(self):
        if not self.toks:
            self.fail("empty expression", 1)
        e = self.expr()
        if self.i != len(self.toks):
            self.fail(f"unexpected {self.peek()[1]!r}")
        return e

    def expr(self):
        sign = 1
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                acc = acc + t if val == "+" else acc - t
            else:
                return acc

    def term(self):
        acc = self.factor()
        while True:
            kind, val, col = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = acc * self.factor()
            elif kind == "op" and val == "/":
                self.take()
                k2, v2, c2 = self.take()
                if k2 != "num" or v2 == 0:
                    self.fail("division only by a nonzero integer", c2)
                acc = acc * self.ring.field.scalar(Fraction(1, v2))
            else:
                return acc

    def factor(self):
        kind, val, col = self.take()
        if kind == "num":
            base = RingElem(self.ring, {tuple([0] * self.ring.n): val})
        elif kind == "var":
            if val not in self.ring.var_names:
                self.fail(f"unknown variable {val!r}", col)
            base = self.ring.var(val)
        elif kind == "op" and val == "(":
            base = self.expr()
            k2, v2, c2 = self.take()
            if v2 != ")":
                self.fail("expected ')'", c2)
        elif kind == "op" and val == "-":
            return -self.factor()
        else:
            self.fail("expected a number, variable or '('", col)
        kind, val, col = self.peek()
        if kind == "op" and val == "^":
            self.take()
            k2, v2, c2 = self.take()
            if k2 != "num":
                self.fail("malformed exponent", c2)
            base = base ** v2
        return base


def _located(msg, col):
    err = InputError(f"column {col}: {msg}")
    err.column = col
    return err


def parse_monomial(var_names, field, text):
    """Parse a monomial ideal generator; anything else is rejected."""
    r = _Parser(_FreeRing.of(var_names, field), text).run()
    if len(r.terms) != 1:
        raise InputError(f"ideal generator {text.strip()!r} is not a monomial")
    m, c = r.terms[0]
    if sum(m) == 0:
        raise InputError("ideal generator must have positive degree")
    return m


class _FreeRing:
    """Polynomial ring on the same variables, used to read ideal generators."""

    _cache = {}

    @classmethod
    def of(cls, var_names, field):
        key = (tuple(var_names), field)
        if key not in cls._cache:
            cls._cache[key] = MonomialQuotientRing(var_names, (), field)
        return cls._cache[key]
