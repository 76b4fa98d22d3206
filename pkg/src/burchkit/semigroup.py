"""Numerical semigroups and relative ideals E + H.

A relative ideal I is stored as ``(lo, mask)`` with ``lo = min I`` and
``mask[k]`` telling whether ``lo + k`` lies in I for 0 <= k <= F + 1.  Every
integer z >= lo + F + 1 is in I because z - lo > F lies in H, so the mask is
a complete description and (lo, mask) is canonical.
"""

from __future__ import annotations

import heapq
from functools import cached_property
from math import gcd

import numpy as np

from .errors import InputError, InvariantBreach


def _closure_bits(gens, limit):
    """Bitmask of ⟨gens⟩ ∩ [0, limit]."""
    full = (1 << (limit + 1)) - 1
    s = 1
    for g in gens:
        prev = 0
        while s != prev:
            prev = s
            s = (s | (s << g)) & full
    return s


class NumericalSemigroup:
    def __init__(self, gens):
        gens = sorted({int(g) for g in gens})
        if not gens or gens[0] <= 0:
            raise InputError("generators must be positive integers")
        g = 0
        for a in gens:
            g = gcd(g, a)
        if g != 1:
            raise InputError(f"generators have gcd {g}, not 1")
        minimal = []
        bits = 1
        for a in gens:
            if not (bits >> a) & 1:
                minimal.append(a)
                bits = _closure_bits(minimal, gens[-1])
        self.gens = tuple(minimal)
        self.apery_min = self._apery_dijkstra(self.gens[0])
        self.frobenius = max(self.apery_min) - self.gens[0]
        size = self.frobenius + max(self.gens) + 2
        z = np.arange(size)
        ap = np.array(self.apery_min, dtype=np.int64)
        self.table = z >= ap[z % self.gens[0]]

    def _apery_dijkstra(self, m):
        dist = [None] * m
        dist[0] = 0
        heap = [(0, 0)]
        while heap:
            d, r = heapq.heappop(heap)
            if d > dist[r]:
                continue
            for a in self.gens:
                nd, nr = d + a, (r + a) % m
                if dist[nr] is None or nd < dist[nr]:
                    dist[nr] = nd
                    heapq.heappush(heap, (nd, nr))
        return dist

    def __repr__(self):
        return "⟨" + ",".join(map(str, self.gens)) + "⟩"

    def __eq__(self, other):
        return isinstance(other, NumericalSemigroup) and self.gens == other.gens

    def __hash__(self):
        return hash(self.gens)

    @property
    def multiplicity(self):
        return self.gens[0]

    @property
    def embdim(self):
        return len(self.gens)

    def contains(self, z):
        z = int(z)
        if z < 0:
            return False
        if z > self.frobenius:
            return True
        return bool(self.table[z])

    def contains_vec(self, z):
        z = np.asarray(z)
        out = z > self.frobenius
        mid = (z >= 0) & ~out
        out[mid] = self.table[z[mid]]
        return out

    @cached_property
    def gaps(self):
        return [int(z) for z in np.flatnonzero(~self.table[: max(self.frobenius + 1, 0)])]

    def apery(self, m):
        m = int(m)
        if m <= 0 or not self.contains(m):
            raise InputError(f"{m} is not a positive element of {self}")
        if m == self.gens[0]:
            return list(self.apery_min)
        return self._apery_dijkstra(m)

    @cached_property
    def pf(self):
        """Gaps f with f + a_i in H for every minimal generator a_i."""
        gaps = np.array(self.gaps, dtype=np.int64)
        if gaps.size == 0:
            return []
        ok = np.ones(gaps.size, dtype=bool)
        for a in self.gens:
            ok &= self.contains_vec(gaps + a)
        return [int(f) for f in gaps[ok]]

    def pf_via_apery(self):
        """Maximal elements of Ap(H, a1) under ≤_H, minus a1 (cross-check)."""
        a1 = self.gens[0]
        ap = self.apery_min
        out = []
        for w in ap:
            if all(not (v != w and v - w >= 0 and self.contains(v - w)) for v in ap):
                out.append(w - a1)
        return sorted(out)

    @property
    def type(self):
        return len(self.pf)

    @property
    def symmetric(self):
        # H = N has no gaps; F = -1 and K = H, so count it as symmetric
        return self.frobenius == -1 or self.pf == [self.frobenius]

    def profile(self):
        return {"multiplicity": self.multiplicity, "embdim": self.embdim,
                "minimal_multiplicity": self.multiplicity == self.embdim,
                "symmetric": self.symmetric, "frobenius": self.frobenius, "type": self.type}

    # ideals ----------------------------------------------------------------

    def ideal(self, elements):
        return RelativeIdeal.from_generators(self, elements)

    @cached_property
    def as_ideal(self):
        return RelativeIdeal(self, 0, self.contains_vec(np.arange(self.frobenius + 2)))

    @cached_property
    def maximal_ideal(self):
        a1 = self.gens[0]
        return RelativeIdeal(self, a1, self.contains_vec(a1 + np.arange(self.frobenius + 2)))

    @cached_property
    def canonical_ideal(self):
        """K = {F - z : z ∉ H}."""
        F = self.frobenius
        k = np.arange(F + 2)
        return RelativeIdeal(self, 0, ~self.contains_vec(F - k))


class RelativeIdeal:
    """E + H for a finite E ⊂ Z."""

    __slots__ = ("H", "lo", "mask", "_gens")

    def __init__(self, H, lo, mask):
        mask = np.asarray(mask, dtype=bool)
        L = H.frobenius + 2
        nz = np.flatnonzero(mask)
        if nz.size == 0:
            raise InvariantBreach("empty relative ideal")
        shift = int(nz[0])
        lo = int(lo) + shift
        m = np.ones(L, dtype=bool)
        take = mask[shift:shift + L]
        m[: take.size] = take
        self.H = H
        self.lo = lo
        self.mask = m
        self._gens = None

    @classmethod
    def from_generators(cls, H, elements):
        E = sorted({int(e) for e in elements})
        if not E:
            raise InputError("a relative ideal needs at least one generator")
        lo = E[0]
        z = lo + np.arange(H.frobenius + 2)
        mask = np.zeros(z.size, dtype=bool)
        for e in E:
            mask |= H.contains_vec(z - e)
        return cls(H, lo, mask)

    def contains_vec(self, z):
        k = np.asarray(z) - self.lo
        L = self.mask.size
        out = k >= L
        mid = (k >= 0) & ~out
        out[mid] = self.mask[k[mid]]
        return out

    def __contains__(self, z):
        return bool(self.contains_vec(np.array([z]))[0])

    @property
    def generators(self):
        """Normalized generators: elements not of the form (element) + a_i."""
        if self._gens is None:
            z = self.lo + np.arange(self.mask.size + max(self.H.gens))
            ok = self.contains_vec(z)
            for a in self.H.gens:
                ok &= ~self.contains_vec(z - a)
            self._gens = [int(x) for x in z[ok]]
        return self._gens

    def __eq__(self, other):
        return (isinstance(other, RelativeIdeal) and self.H == other.H and self.lo == other.lo
                and bool(np.array_equal(self.mask, other.mask)))

    def __hash__(self):
        return hash((self.H, self.lo, self.mask.tobytes()))

    def is_translate_of(self, other):
        return bool(np.array_equal(self.mask, other.mask))

    def translate(self, c):
        return RelativeIdeal(self.H, self.lo + c, self.mask)

    def le(self, other):
        z = self.lo + np.arange(self.mask.size)
        return bool(np.all(~self.mask | other.contains_vec(z)))

    def __repr__(self):
        return f"{{{','.join(map(str, self.generators))}}} + {self.H}"


def rel_add(I, J):
    """I + J = {i + j}; generated by pairwise sums of generators."""
    lo = I.lo + J.lo
    z = lo + np.arange(I.mask.size)
    mask = np.zeros(z.size, dtype=bool)
    for g in J.generators:
        mask |= I.contains_vec(z - g)
    return RelativeIdeal(I.H, lo, mask)


def rel_colon(I, J):
    """I - J = {z : z + J ⊆ I}.

    z + J ⊆ I iff z + g ∈ I for every generator g of J, since I + H ⊆ I.
    If z < min I - min J then z + min J ∉ I.  If z >= min I - min J + F + 1 then
    z + g >= min I + F + 1 for every g >= min J, and all such integers lie in
    I.  So only z in [min I - min J, min I - min J + F] need testing.
    """
    start = I.lo - J.lo
    z = start + np.arange(I.H.frobenius + 2)
    ok = np.ones(z.size, dtype=bool)
    for g in J.generators:
        ok &= I.contains_vec(z + g)
    ok[-1] = True
    return RelativeIdeal(I.H, start, ok)


def canonical_ideal(H):
    return H.canonical_ideal


def surjection_criterion(H):
    """PF route (every f has f + a_i = a_j) and colon route (2M - M = M); must agree."""
    gens = set(H.gens)
    via_pf = all(any(f + a in gens for a in H.gens) for f in H.pf)
    M = H.maximal_ideal
    via_colon = rel_colon(rel_add(M, M), M) == M
    if via_pf != via_colon:
        raise InvariantBreach(f"surjection routes disagree on {H}: pf={via_pf}, colon={via_colon}")
    return {"verdict": via_pf, "via_pf": via_pf, "via_colon": via_colon}


def canonical_trace(H):
    K = H.canonical_ideal
    return rel_add(K, rel_colon(H.as_ideal, K))


def nearly_gorenstein(H):
    return H.maximal_ideal.le(canonical_trace(H))


def self_dual_check(H):
    M = H.maximal_ideal
    dual = rel_colon(H.canonical_ideal, M)
    return dual.is_translate_of(M)


def msq_cross_check(H):
    """True iff some f in PF has f + M ⊆ 2M (should mirror a failing colon route)."""
    M = H.maximal_ideal
    M2 = rel_add(M, M)
    return any(M.translate(f).le(M2) for f in H.pf)


def summary(H):
    s = surjection_criterion(H)
    prof = H.profile()
    return {"gens": list(H.gens), "frobenius": H.frobenius, "pf": H.pf, "gaps": len(H.gaps),
            **prof, "surjection": s["verdict"], "via_pf": s["via_pf"], "via_colon": s["via_colon"],
            "nearly_gorenstein": nearly_gorenstein(H), "self_dual": self_dual_check(H)}


def minimal_tuples(max_gen, max_val):
    """All minimal generating tuples a1 < ... < al (l <= max_gen, ai <= max_val), gcd 1."""
    out = []

    def rec(prefix, bits, g):
        if prefix and g == 1:
            out.append(tuple(prefix))
        if len(prefix) == max_gen:
            return
        start = prefix[-1] + 1 if prefix else 1
        for a in range(start, max_val + 1):
            if (bits >> a) & 1:
                continue
            nb = bits
            full = (1 << (max_val + 1)) - 1
            prev = 0
            while nb != prev:
                prev = nb
                nb = (nb | (nb << a)) & full
            rec(prefix + [a], nb, gcd(g, a))

    rec([], 1, 0)
    return out
