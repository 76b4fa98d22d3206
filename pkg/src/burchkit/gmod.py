"""Graded modules over a MonomialQuotientRing and the submodule calculus.

Everything is computed one degree at a time.  A module X = coker(F1 -> F0)
is handled through coordinates of its free cover F0; a submodule N of X is
stored, per degree, as a subspace of (F0)_d that contains the image of the
presentation.  Subspaces are kept in RREF.  Components are computed lazily
and cached, so a window can be queried past its nominal bound D; the bound
only limits which degrees a certificate is allowed to look at.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from . import exactla as la
from .errors import InputError, InsufficientWindow, InvariantBreach
from .ring import RingElem


# ---------------------------------------------------------------------------
# free modules and maps


class FreeModule:
    """⊕_j R(-a_j)."""

    def __init__(self, ring, degs):
        self.ring = ring
        self.degs = tuple(int(a) for a in degs)
        self._blocks = {}
        self._mono = {}
        self._mult = {}

    @property
    def rank(self):
        return len(self.degs)

    def key(self):
        return (self.ring.key(), self.degs)

    def __eq__(self, other):
        return isinstance(other, FreeModule) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"FreeModule({list(self.degs)})"

    @property
    def lo(self):
        return min(self.degs) if self.degs else 0

    @property
    def gmax(self):
        return max(self.degs) if self.degs else -1

    def blocks(self, d):
        hit = self._blocks.get(d)
        if hit is None:
            off = 0
            hit = []
            for j, a in enumerate(self.degs):
                n = self.ring.hilbert_value(d - a)
                hit.append((j, off, n))
                off += n
            hit = (tuple(hit), off)
            self._blocks[d] = hit
        return hit

    def dim(self, d):
        return self.blocks(d)[1]

    def basis(self, d):
        return [(j, m) for j, a in enumerate(self.degs) for m in self.ring.degree_basis(d - a)]

    def coords(self, vec, d):
        """Coordinates of a homogeneous vector of RingElems lying in degree d."""
        F = self.ring.field
        out = F.zeros(self.dim(d))
        blocks, _ = self.blocks(d)
        for (j, off, n), r in zip(blocks, vec):
            if r.is_zero():
                continue
            idx = self.ring.index(d - self.degs[j])
            for m, c in r.terms:
                if m not in idx:
                    raise InputError(f"component {j} is not homogeneous of degree {d - self.degs[j]}")
                out[off + idx[m]] = c
        return out

    def vector(self, row, d):
        blocks, _ = self.blocks(d)
        out = []
        for j, off, n in blocks:
            basis = self.ring.degree_basis(d - self.degs[j])
            out.append(RingElem(self.ring, {basis[i]: row[off + i] for i in range(n) if row[off + i]}))
        return tuple(out)

    def vector_degree(self, vec):
        """Degree of a homogeneous vector (None for zero); rejects inhomogeneous input."""
        if len(vec) != self.rank:
            raise InputError(f"vector has {len(vec)} entries, free module has rank {self.rank}")
        degs = set()
        for r, a in zip(vec, self.degs):
            if r.is_zero():
                continue
            if not r.is_homogeneous():
                raise InputError(f"inhomogeneous entry {r}")
            degs.add(r.degree + a)
        if len(degs) > 1:
            raise InputError("inhomogeneous vector: entries sit in different degrees")
        return degs.pop() if degs else None

    def _mono_index(self, mu, d):
        key = (mu, d)
        hit = self._mono.get(key)
        if hit is None:
            e = sum(mu)
            src_b, _ = self.blocks(d)
            tgt_b, _ = self.blocks(d + e)
            src, tgt = [], []
            for (j, so, sn), (_, to, tn) in zip(src_b, tgt_b):
                if sn == 0 or tn == 0:
                    continue
                mp = self.ring.mono_map(mu, d - self.degs[j])
                ok = np.flatnonzero(mp >= 0)
                src.append(so + ok)
                tgt.append(to + mp[ok])
            hit = (np.concatenate(src) if src else np.zeros(0, np.int64),
                   np.concatenate(tgt) if tgt else np.zeros(0, np.int64))
            self._mono[key] = hit
        return hit

    def mono_apply(self, V, mu, d):
        """Rows of V (in degree d) multiplied by the monomial mu."""
        F = self.ring.field
        out = F.zeros((V.shape[0], self.dim(d + sum(mu))))
        src, tgt = self._mono_index(mu, d)
        if len(src):
            out[:, tgt] = V[:, src]
        return out

    def elem_apply(self, V, r, d):
        F = self.ring.field
        e = r.degree
        if e is None:
            if r.is_zero():
                raise InputError("multiplication by zero has no degree; use a homogeneous element")
            raise InputError(f"inhomogeneous multiplier {r}")
        out = F.zeros((V.shape[0], self.dim(d + e)))
        for mu, c in r.terms:
            out = out + c * self.mono_apply(V, mu, d)
        return F.norm(out)

    def mult_matrix(self, r, d):
        key = (r, d)
        hit = self._mult.get(key)
        if hit is None:
            hit = self.elem_apply(self.ring.field.eye(self.dim(d)), r, d)
            self._mult[key] = hit
        return hit

    def var_images(self, V, d):
        """All x_i * (rows of V), stacked; V lives in degree d."""
        F = self.ring.field
        n1 = self.dim(d + 1)
        if V.shape[0] == 0:
            return F.zeros((0, n1))
        parts = []
        for i in range(self.ring.n):
            e = [0] * self.ring.n
            e[i] = 1
            parts.append(self.mono_apply(V, tuple(e), d))
        return np.vstack(parts)


class ModuleMap:
    """Homogeneous map source -> target; ``cols[j]`` is the image of generator j."""

    def __init__(self, source, target, cols):
        self.source = source
        self.target = target
        cols = tuple(tuple(c) for c in cols)
        if len(cols) != source.rank:
            raise InputError("one column per source generator expected")
        for j, col in enumerate(cols):
            if len(col) != target.rank:
                raise InputError("column length must equal the target rank")
            for i, r in enumerate(col):
                if r.is_zero():
                    continue
                if not r.is_homogeneous() or r.degree != source.degs[j] - target.degs[i]:
                    raise InputError(
                        f"entry ({i},{j}) = {r} is not homogeneous of degree "
                        f"{source.degs[j] - target.degs[i]}")
        self.cols = cols
        self._mat = {}

    @property
    def ring(self):
        return self.source.ring

    def entry(self, i, j):
        return self.cols[j][i]

    def entries(self):
        return [self.cols[j][i] for j in range(self.source.rank) for i in range(self.target.rank)]

    def matrix(self, d):
        """(dim source_d) x (dim target_d) matrix, row convention."""
        hit = self._mat.get(d)
        if hit is None:
            F = self.ring.field
            rows = []
            for j, a in enumerate(self.source.degs):
                basis = self.ring.degree_basis(d - a)
                if not basis:
                    continue
                c = self.target.coords(self.cols[j], a).reshape(1, -1)
                for mu in basis:
                    rows.append(self.target.mono_apply(c, mu, a))
            hit = np.vstack(rows) if rows else F.zeros((0, self.target.dim(d)))
            self._mat[d] = hit
        return hit

    def is_minimal(self):
        return not any(r.is_unit() for r in self.entries())

    def __repr__(self):
        rows = []
        for i in range(self.target.rank):
            rows.append(", ".join(str(self.cols[j][i]) for j in range(self.source.rank)))
        return "[ " + " ; ".join(rows) + " ]"


class PresentedModule:
    """coker(presentation: F1 -> F0)."""

    def __init__(self, presentation):
        self.presentation = presentation
        self.F0 = presentation.target
        self.F1 = presentation.source
        self.ring = self.F0.ring
        self._im = {}
        self._full = None
        self._zero = None

    @classmethod
    def free(cls, ring, degs=(0,)):
        F0 = FreeModule(ring, degs)
        return cls(ModuleMap(FreeModule(ring, ()), F0, ()))

    @classmethod
    def coker(cls, ring, rows, degs=None):
        """Cokernel of a matrix given by rows (row i <-> generator i of F0)."""
        rows = [list(r) for r in rows]
        if not rows:
            raise InputError("presentation needs at least one row")
        width = {len(r) for r in rows}
        if len(width) != 1:
            raise InputError("presentation rows have different lengths")
        ncols = width.pop()
        degs = tuple(degs) if degs is not None else (0,) * len(rows)
        if len(degs) != len(rows):
            raise InputError("one degree per presentation row expected")
        cols, cdegs = [], []
        for j in range(ncols):
            col = [rows[i][j] for i in range(len(rows))]
            found = set()
            for i, r in enumerate(col):
                if r.is_zero():
                    continue
                if not r.is_homogeneous():
                    raise InputError(f"inhomogeneous presentation entry {r}")
                found.add(r.degree + degs[i])
            if len(found) > 1:
                raise InputError(f"presentation column {j} is not homogeneous")
            if not found:
                continue
            cols.append(col)
            cdegs.append(found.pop())
        F0 = FreeModule(ring, degs)
        return cls(ModuleMap(FreeModule(ring, cdegs), F0, cols))

    @property
    def minimal(self):
        return self.presentation.is_minimal()

    @property
    def lo(self):
        return self.F0.lo

    @property
    def gmax(self):
        return self.F0.gmax

    @property
    def maxcol(self):
        return max(self.F1.degs) if self.F1.degs else -1

    def im(self, d):
        hit = self._im.get(d)
        if hit is None:
            F = self.ring.field
            hit = la.row_space(F, self.presentation.matrix(d), self.F0.dim(d))
            self._im[d] = hit
        return hit

    def full(self):
        if self._full is None:
            F = self.ring.field
            self._full = SubmoduleWindow(self, lambda d: F.eye(self.F0.dim(d)), None,
                                         gen_bound=self.F0.gmax, label="X")
        return self._full

    def zero(self):
        if self._zero is None:
            F = self.ring.field
            self._zero = SubmoduleWindow(self, lambda d: F.zeros((0, self.F0.dim(d))), None,
                                         gen_bound=self.F0.lo - 1, label="0")
        return self._zero

    def as_module(self):
        return Subquotient(self.full(), self.zero())

    def dim(self, d):
        return self.F0.dim(d) - self.im(d).shape[0]

    def with_ring(self, ring):
        F0 = FreeModule(ring, self.F0.degs)
        F1 = FreeModule(ring, self.F1.degs)
        cols = [[ring.elem(r.terms) for r in col] for col in self.presentation.cols]
        return PresentedModule(ModuleMap(F1, F0, cols))

    def __repr__(self):
        return f"coker {self.presentation!r} on F0 degrees {list(self.F0.degs)}"


def as_module(M):
    if isinstance(M, Subquotient):
        return M
    if isinstance(M, PresentedModule):
        return M.as_module()
    if isinstance(M, SubmoduleWindow):
        return Subquotient(M, M.ambient.zero())
    raise InputError(f"not a module: {M!r}")


# ---------------------------------------------------------------------------
# submodules


class SubmoduleWindow:
    """A graded submodule N of X, realized degreewise inside (F0)_d.

    ``rule(d)`` returns rows spanning N_d modulo the presentation image; the
    image is added here, so stored spaces always contain it.  ``D`` is the
    nominal window; ``gen_bound`` bounds the degrees of generators of N
    (None when unknown).
    """

    def __init__(self, ambient, rule, D, gen_bound=None, label=""):
        self.ambient = ambient
        self._rule = rule
        self.D = D
        self._gen_bound = gen_bound
        self.label = label
        self._space = {}
        self._piv = {}

    @property
    def ring(self):
        return self.ambient.ring

    @property
    def F0(self):
        return self.ambient.F0

    @property
    def gen_bound(self):
        if self._gen_bound is not None:
            return self._gen_bound
        R = self.ring
        if R.artinian:
            return self.F0.gmax + R.socle_bound - 1
        return None

    def space(self, d):
        hit = self._space.get(d)
        if hit is None:
            F = self.ring.field
            n = self.F0.dim(d)
            if n == 0:
                hit = F.zeros((0, 0))
            else:
                rows = self._rule(d)
                hit = la.row_space(F, la.stack(F, [rows, self.ambient.im(d)], n), n)
            self._space[d] = hit
            self._piv[d] = la.pivots_of(hit)
        return hit

    def pivots(self, d):
        self.space(d)
        return self._piv[d]

    def dim(self, d):
        """dim of N_d as a subspace of X_d."""
        return self.space(d).shape[0] - self.ambient.im(d).shape[0]

    def contains_vec(self, d, v):
        return la.contains(self.ring.field, self.space(d), self.pivots(d), v)

    def le(self, other, d):
        return la.subspace_le(self.ring.field, self.space(d), other.space(d))

    def equal_at(self, other, d):
        return self.space(d).shape == other.space(d).shape and self.le(other, d)

    def projector(self, d):
        F = self.ring.field
        return la.projector(F, self.space(d), self.pivots(d), self.F0.dim(d))[0]

    def element(self, d, row):
        return self.F0.vector(row, d)

    def dims(self, lo=None, hi=None):
        lo = self.F0.lo if lo is None else lo
        hi = self.D if hi is None else hi
        return [self.dim(d) for d in range(lo, hi + 1)]

    def __repr__(self):
        return f"SubmoduleWindow({self.label or '?'}, D={self.D})"


def _check_same(a, b):
    if a.ambient is not b.ambient and (a.F0 != b.F0):
        raise InputError("submodules live in different modules")


def full_window(X, D=None):
    W = X.full()
    return W if D is None else SubmoduleWindow(X, W._rule, D, W._gen_bound, "X")


def zero_window(X, D=None):
    W = X.zero()
    return W if D is None else SubmoduleWindow(X, W._rule, D, W._gen_bound, "0")


def span_closure(X, elements, D, base=None, label="N"):
    """Submodule of X generated by homogeneous elements (vectors over F0), plus ``base``."""
    F = X.ring.field
    by_deg = {}
    for vec in elements:
        vec = tuple(vec)
        d = X.F0.vector_degree(vec)
        if d is None:
            continue
        if D is not None and d > D:
            raise InputError(f"generator of degree {d} lies above the window D={D}")
        by_deg.setdefault(d, []).append(X.F0.coords(vec, d))
    if base is not None:
        _check_same(base, X.full())
    gb = max(by_deg) if by_deg else X.F0.lo - 1
    if base is not None:
        gb = None if base.gen_bound is None else max(gb, base.gen_bound)
    holder = []

    def rule(d):
        parts = []
        if d in by_deg:
            parts.append(np.vstack(by_deg[d]))
        parts.append(X.F0.var_images(holder[0].space(d - 1), d - 1))
        if base is not None:
            parts.append(base.space(d))
        return la.stack(F, parts, X.F0.dim(d))

    W = SubmoduleWindow(X, rule, D, gen_bound=gb, label=label)
    holder.append(W)
    W.generators = [(d, v) for d in sorted(by_deg) for v in by_deg[d]]
    return W


def m_multiple(N, power=1):
    """(m^power) N."""
    X = N.ambient
    F = X.ring.field
    cur = N
    for _ in range(power):
        prev = cur
        bound = None if prev.gen_bound is None else prev.gen_bound + 1

        def rule(d, prev=prev):
            return X.F0.var_images(prev.space(d - 1), d - 1)

        cur = SubmoduleWindow(X, rule, N.D, gen_bound=bound, label=f"m{prev.label}")
    return cur


def _homog_positive(J, what):
    out = []
    for g in J:
        if not isinstance(g, RingElem):
            raise InputError(f"{what}: expected ring elements")
        if g.is_zero():
            continue
        if not g.is_homogeneous():
            raise InputError(f"{what}: {g} is not homogeneous")
        if g.degree == 0:
            raise InputError(f"{what}: degree-0 generator {g}")
        out.append(g)
    return out


def colon(N, J, label=None):
    """(N :_X J) for J given by homogeneous generators of positive degree."""
    X = N.ambient
    F = X.ring.field
    J = _homog_positive(J, "colon")
    if not J:
        return full_window(X, N.D)
    emax = max(g.degree for g in J)

    def rule(d):
        n = X.F0.dim(d)
        blocks = []
        for g in J:
            e = g.degree
            if X.F0.dim(d + e) == 0:
                continue
            G = X.F0.mult_matrix(g, d)
            blocks.append(F.matmul(G, N.projector(d + e)))
        if not blocks:
            return F.eye(n)
        return la.left_kernel(F, np.hstack(blocks))

    D = None if N.D is None else N.D - emax
    return SubmoduleWindow(X, rule, D, gen_bound=None, label=label or f"({N.label}:J)")


def maximal_ideal_gens(ring):
    return ring.variables()


def colon_m(N):
    return colon(N, maximal_ideal_gens(N.ring), label=f"({N.label}:m)")


def colon_by_element(N, X, x):
    """{v in X : x v in N}."""
    if not isinstance(x, RingElem) or not x.is_homogeneous() or x.is_zero():
        raise InputError("colon_by_element needs a nonzero homogeneous element")
    if x.degree == 0:
        raise InputError("colon_by_element needs an element of positive degree")
    if N.ambient is not X and N.F0 != X.F0:
        raise InputError("submodule does not live in X")
    return colon(N, [x], label=f"({N.label}:{x})")


def sum_windows(A, B):
    _check_same(A, B)
    F = A.ring.field
    gb = None if A.gen_bound is None or B.gen_bound is None else max(A.gen_bound, B.gen_bound)
    return SubmoduleWindow(A.ambient, lambda d: la.stack(F, [A.space(d), B.space(d)], A.F0.dim(d)),
                           A.D, gen_bound=gb, label=f"{A.label}+{B.label}")


def intersect_windows(A, B):
    _check_same(A, B)
    F = A.ring.field
    return SubmoduleWindow(A.ambient, lambda d: la.intersect(F, A.space(d), B.space(d), A.F0.dim(d)),
                           A.D, gen_bound=None, label=f"{A.label}∩{B.label}")


# ---------------------------------------------------------------------------
# subquotients (modules given as num/den inside one F0)


class Subquotient:
    """The module num/den, den ⊆ num submodules of the same X."""

    def __init__(self, num, den):
        _check_same(num, den)
        self.num = num
        self.den = den
        self.ambient = num.ambient
        self.ring = num.ring
        self.F0 = num.F0
        self._comp = {}
        self._act = {}
        self._top = {}

    @property
    def lo(self):
        return self.F0.lo if self.F0.rank else 0

    @property
    def gen_bound(self):
        gb = self.num.gen_bound
        if gb is None and self.den.gen_bound is not None and self.ring.artinian:
            gb = self.F0.gmax + self.ring.socle_bound - 1
        return gb

    def comp(self, d):
        """(reps, proj): reps rows lift a basis of Q_d to F0_d; proj maps num_d to Q_d coords."""
        hit = self._comp.get(d)
        if hit is None:
            F = self.ring.field
            n = self.F0.dim(d)
            if n == 0:
                hit = (F.zeros((0, 0)), F.zeros((0, 0)))
            else:
                P, keep = la.projector(F, self.den.space(d), self.den.pivots(d), n)
                A = F.matmul(self.num.space(d), P)
                Qr, qpiv = la.rref_rows(F, A) if A.shape[0] else (F.zeros((0, len(keep))), [])
                reps = F.zeros((len(qpiv), n))
                if len(qpiv):
                    reps[:, keep] = Qr
                proj = P[:, qpiv] if len(qpiv) else F.zeros((n, 0))
                hit = (reps, proj)
            self._comp[d] = hit
        return hit

    def dim(self, d):
        return self.comp(d)[0].shape[0]

    def coords(self, d, v):
        return self.ring.field.matmul(v.reshape(1, -1), self.comp(d)[1])[0]

    def act(self, r, d):
        """Matrix of multiplication by homogeneous r: Q_d -> Q_{d+deg r}."""
        key = (r, d)
        hit = self._act.get(key)
        if hit is None:
            F = self.ring.field
            e = r.degree
            reps, _ = self.comp(d)
            _, proj = self.comp(d + e)
            if reps.shape[0] == 0 or proj.shape[1] == 0:
                hit = F.zeros((reps.shape[0], proj.shape[1]))
            else:
                hit = F.matmul(self.F0.elem_apply(reps, r, d), proj)
            self._act[key] = hit
        return hit

    def top(self, limit=None):
        """Top degree when finite length is certified by a vanishing component, else None.

        Returns ``lo - 1`` for the zero module.  Scanning stops at ``limit``
        (ignored over Artinian rings, where the scan always terminates).
        """
        key = limit if not self.ring.artinian else "art"
        if key in self._top:
            return self._top[key]
        g = self.gen_bound
        res = None
        if g is not None:
            if self.ring.artinian:
                stop = self.F0.gmax + self.ring.socle_bound
            else:
                stop = limit
            d = max(self.lo, g)
            while stop is not None and d <= stop:
                if self.dim(d) == 0:
                    res = d - 1
                    while res >= self.lo and self.dim(res) == 0:
                        res -= 1
                    break
                d += 1
        self._top[key] = res
        return res

    def is_zero(self, limit=None):
        t = self.top(limit)
        return t is not None and t < self.lo

    def element(self, d, coords_row):
        F = self.ring.field
        reps, _ = self.comp(d)
        v = F.matmul(np.asarray(coords_row, dtype=F.dtype).reshape(1, -1), reps)[0]
        return self.F0.vector(v, d)

    def dims(self, lo, hi):
        return {d: self.dim(d) for d in range(lo, hi + 1)}

    def __repr__(self):
        return f"Subquotient({self.num.label}/{self.den.label})"


def quotient(X, N):
    """X/N as a Subquotient."""
    return Subquotient(X.full(), N)


def submodule_as_module(N):
    return Subquotient(N, N.ambient.zero())


def component_space(X, d):
    """Basis of X_d: list of F0-vectors (RingElem tuples) and the dimension."""
    Q = as_module(X)
    reps, _ = Q.comp(d)
    return [Q.F0.vector(r, d) for r in reps], reps.shape[0]


def minimal_generators(Q, upto):
    """Greedy minimal homogeneous generators of Q in degrees <= upto: [(d, rep row)]."""
    Q = as_module(Q)
    F = Q.ring.field
    out = []
    for d in range(Q.lo, upto + 1):
        q = Q.dim(d)
        if q == 0:
            continue
        prev = Q.dim(d - 1)
        if prev:
            imgs = [Q.act(x, d - 1) for x in Q.ring.variables()]
            S = la.row_space(F, np.vstack(imgs), q)
        else:
            S = F.zeros((0, q))
        piv = la.pivots_of(S)
        cur = S
        eye = F.eye(q)
        for i in range(q):
            if cur.shape[0] == q:
                break
            if not la.contains(F, cur, piv, eye[i]):
                out.append((d, Q.comp(d)[0][i]))
                cur = la.row_space(F, np.vstack([cur, eye[i:i + 1]]), q)
                piv = la.pivots_of(cur)
    return out


def mu(Q, upto):
    return len(minimal_generators(Q, upto))


# ---------------------------------------------------------------------------
# certificates


@dataclass
class Certificate:
    verdict: str
    witness: Any = None
    window: Any = None
    detail: dict = field(default_factory=dict)

    @property
    def exact(self):
        return self.verdict in ("holds", "fails")

    @property
    def holds(self):
        return self.verdict.startswith("holds")

    def to_json(self):
        w = None
        if self.witness is not None:
            deg, vec = self.witness
            w = {"degree": deg, "element": [str(r) for r in vec]}
        return {"verdict": self.verdict, "witness": w, "window": self.window,
                "detail": {k: v for k, v in self.detail.items()}}


def _finite_top(X, N, D):
    """Top degree of X/N if certified finite length inside the window (else None)."""
    Q = quotient(X, N)
    t = Q.top(D)
    return t


def _window_verdict(ok_found, exact_ok, D, required, require_exact, pos, neg):
    if ok_found:
        return pos
    if exact_ok:
        return neg
    if require_exact:
        raise InsufficientWindow("X/N is not certified finite length inside the window", required)
    return neg + "-in-window"


def is_burch(X, N, D, require_exact=False):
    """Burch test, definitional and colon forms."""
    F = X.ring.field
    lo = X.F0.lo
    C = colon_m(N)
    A = m_multiple(C)
    B = m_multiple(N)
    C2 = colon_m(B)
    def_diff = [d for d in range(lo, D + 1) if not A.le(B, d)]
    col_diff = [d for d in range(lo, D + 1) if not C.le(C2, d)]
    # the forms line up degree by degree: a witness x*c at degree d comes from c at d-1
    def_set = set(def_diff)
    col_set = {d + 1 for d in col_diff if d + 1 <= D}
    if def_set != col_set:
        raise InvariantBreach(f"Burch forms disagree: m(N:m)!=mN at {def_diff}, colon at {col_diff}")
    witness = None
    if def_diff:
        d = def_diff[0]
        basis = C.space(d - 1)
        for x in X.ring.variables():
            imgs = X.F0.elem_apply(basis, x, d - 1)
            for row in imgs:
                if not B.contains_vec(d, row):
                    witness = (d, X.F0.vector(row, d))
                    break
            if witness:
                break
        if witness is None:
            raise InvariantBreach("Burch difference without a product witness")
    t = _finite_top(X, N, D)
    exact_ok = t is not None and D >= t + 2
    required = None if t is None else t + 2
    verdict = _window_verdict(bool(def_diff), exact_ok, D, required, require_exact, "holds", "fails")
    return Certificate(verdict, witness, D, {
        "definitional": bool(def_diff), "colon_form": bool(col_diff),
        "quotient_top": t})


def is_weakly_m_full(X, N, D, require_exact=False):
    lo = X.F0.lo
    C2 = colon_m(m_multiple(N))
    diff = [d for d in range(lo, D + 1) if not C2.le(N, d)]
    witness = None
    if diff:
        d = diff[0]
        for row in C2.space(d):
            if not N.contains_vec(d, row):
                witness = (d, X.F0.vector(row, d))
                break
    t = _finite_top(X, N, D)
    exact_ok = t is not None and D >= t + 2
    if diff:
        return Certificate("fails", witness, D, {"quotient_top": t})
    if exact_ok:
        return Certificate("holds", None, D, {"quotient_top": t})
    if require_exact:
        raise InsufficientWindow("X/N is not certified finite length inside the window",
                                 None if t is None else t + 2)
    return Certificate("holds-in-window", None, D, {"quotient_top": t})


def is_m_full(X, N, D, x=None, samples=64, seed=0):
    """(mN :_X x) = N for a supplied x, or for one of a few random linear forms."""
    R = X.ring
    F = R.field
    cands = []
    if x is not None:
        cands = [x]
    else:
        rng = random.Random(seed)
        bound = F.p if F.is_prime else 97
        for _ in range(samples):
            coeffs = [rng.randrange(bound) for _ in range(R.n)]
            if not any(coeffs):
                continue
            cands.append(sum((c * v for c, v in zip(coeffs, R.variables())), R.zero()))
    t = _finite_top(X, N, D)
    exact_ok = t is not None and D >= t + 2
    mN = m_multiple(N)
    lo = X.F0.lo
    for cand in cands:
        W = colon_by_element(mN, X, cand)
        if all(W.equal_at(N, d) for d in range(lo, D + 1)):
            verdict = "holds" if exact_ok else "holds-in-window"
            return Certificate(verdict, (cand.degree, (cand,)), D, {"element": str(cand), "quotient_top": t})
    if x is not None:
        return Certificate("fails", None, D, {"element": str(x), "quotient_top": t})
    return Certificate("fails-in-window", None, D, {"sampled": len(cands), "quotient_top": t})


def socle_window(X, N):
    """Soc(X/N) = (N:_X m)/N."""
    return Subquotient(colon_m(N), N)


def annihilator_window(M, D):
    """ann(M) as a window inside R."""
    Q = as_module(M)
    R = Q.ring
    F = R.field
    Rmod = PresentedModule.free(R, (0,))
    gb = Q.gen_bound
    gens = minimal_generators(Q, gb if gb is not None else D)
    den = Q.den

    def rule(e):
        n = R.hilbert_value(e)
        if n == 0:
            return F.zeros((0, 0))
        blocks = []
        monos = R.degree_basis(e)
        for a, v in gens:
            if Q.F0.dim(a + e) == 0:
                continue
            rows = np.vstack([Q.F0.mono_apply(v.reshape(1, -1), mu, a) for mu in monos])
            blocks.append(F.matmul(rows, den.projector(a + e)))
        if not blocks:
            return F.eye(n)
        return la.left_kernel(F, np.hstack(blocks))

    W = SubmoduleWindow(Rmod, rule, D, gen_bound=None, label="ann")
    W.module = Q
    return W


def is_faithful(M, D):
    R = as_module(M).ring
    W = annihilator_window(M, D)
    hi = R.socle_bound - 1 if R.artinian else D
    for e in range(0, hi + 1):
        if W.dim(e):
            return Certificate("fails", (e, W.F0.vector(W.space(e)[0], e)), D, {})
    if R.artinian:
        return Certificate("holds", None, D, {"route": "all degrees below the socle bound"})
    if isinstance(M, PresentedModule):
        j = free_summand_generator(M)
        if j is not None:
            return Certificate("holds", None, D, {"route": f"free summand on generator {j}"})
    return Certificate("holds-in-window", None, D, {"route": "window scan"})


def free_summand_generator(X):
    """Index j such that generator j of X spans a free summand R(-a_j), if one exists."""
    R = X.ring
    Rq = PresentedModule.free(R, (0,)).as_module()
    for j, a in enumerate(X.F0.degs):
        for f in hom_space(X, Rq, -a):
            val = f[j]
            if val.shape[0] and np.any(val):
                return j
    return None


def hom_space(M, X, d):
    """Basis of Hom(M, X)_d; each element is its value list on the F0-generators of M.

    Values are rows in F0-coordinates of X (degree d + a_j for generator j).
    """
    if not isinstance(M, PresentedModule):
        raise InputError("hom_space needs a presented source module")
    Q = as_module(X)
    F = Q.ring.field
    G0 = M.F0.degs
    G1 = M.F1.degs
    sizes = [Q.dim(d + a) for a in G0]
    offs = np.cumsum([0] + sizes)
    nvar = int(offs[-1])
    if nvar == 0:
        return []
    tsizes = [Q.dim(d + b) for b in G1]
    toffs = np.cumsum([0] + tsizes)
    ncon = int(toffs[-1])
    C = F.zeros((nvar, ncon))
    for c, b in enumerate(G1):
        if tsizes[c] == 0:
            continue
        for j, a in enumerate(G0):
            r = M.presentation.cols[c][j]
            if r.is_zero() or sizes[j] == 0:
                continue
            C[offs[j]:offs[j + 1], toffs[c]:toffs[c + 1]] = Q.act(r, d + a)
    K = la.left_kernel(F, C) if ncon else F.eye(nvar)
    out = []
    for row in K:
        vals = []
        for j, a in enumerate(G0):
            reps, _ = Q.comp(d + a)
            part = row[offs[j]:offs[j + 1]]
            vals.append(F.matmul(part.reshape(1, -1), reps)[0] if sizes[j] else F.zeros(Q.F0.dim(d + a)))
        out.append(vals)
    return out


def maximal_ideal_module(R):
    """m presented on generators x_1..x_n (degree 1).

    Relations: Koszul pairs x_j e_i - x_i e_j, and (g/x_i) e_i for each ideal
    generator g and each variable x_i dividing it.  Any relation sum r_i x_i = 0
    lifts to the polynomial ring as an element of I, which these generate.
    """
    n = R.n
    F0 = FreeModule(R, (1,) * n)
    cols, degs = [], []
    for i in range(n):
        for j in range(i + 1, n):
            col = [R.zero()] * n
            col[i] = R.var(j)
            col[j] = -R.var(i)
            cols.append(col)
            degs.append(2)
    for g in R.ideal_gens:
        for i in range(n):
            if g[i]:
                e = list(g)
                e[i] -= 1
                col = [R.zero()] * n
                col[i] = R.monomial(tuple(e))
                cols.append(col)
                degs.append(sum(g))
    return PresentedModule(ModuleMap(FreeModule(R, degs), F0, cols))


def _hom_degree_range(M, Q, D):
    lo_q = Q.lo
    t = Q.top(D)
    hi_q = t if t is not None else D
    return lo_q - max(M.F0.degs), hi_q - min(M.F0.degs), t is not None


def trace_window(M, X, D):
    """τ_M(X) = Σ_f im f as a submodule of X (X given as a module)."""
    Q = as_module(X)
    dlo, dhi, exact = _hom_degree_range(M, Q, D)
    gens = []
    for d in range(dlo, dhi + 1):
        for f in hom_space(M, Q, d):
            for j, a in enumerate(M.F0.degs):
                if np.any(f[j]):
                    gens.append(Q.F0.vector(f[j], d + a))
    W = span_closure(Q.ambient, gens, None, base=Q.den, label="trace")
    W.D = D
    W.exact = exact
    return W


def burch_embeddable(N, D):
    """Is N isomorphic to a Burch submodule of some module, i.e. τ_m(N) ⊄ mN."""
    Q = as_module(N)
    R = Q.ring
    m = maximal_ideal_module(R)
    dlo, dhi, exact = _hom_degree_range(m, Q, D)
    mN = sum_windows(m_multiple(Q.num), Q.den)
    for d in range(dlo, dhi + 1):
        for f in hom_space(m, Q, d):
            for j in range(R.n):
                v = f[j]
                if np.any(v) and not mN.contains_vec(d + 1, v):
                    return Certificate("holds", (d + 1, Q.F0.vector(v, d + 1)), D,
                                       {"hom_degree": d})
    return Certificate("fails" if exact else "fails-in-window", None, D, {})
