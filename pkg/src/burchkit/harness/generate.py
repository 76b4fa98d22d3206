"""Seeded random Artinian instances for the property suite."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations_with_replacement

from .. import gmod, resolve
from ..exactla import FieldSpec
from ..ring import MonomialQuotientRing

IMAX = 2
VAR_NAMES = ("x", "y", "z")


@dataclass
class InstanceSpec:
    seed: int
    n: int
    s: int
    ideal: tuple               # exponent tuples
    x_kind: str                # R | R2 | coker
    x_rows: tuple              # coker presentation of X (strings), rows over F0
    n_gens: tuple              # submodule generators of X (tuples of strings)
    n_colon: bool              # N replaced by (N :_X m), biasing toward weakly m-full N
    m_rows: tuple              # presentation of M (strings)
    m_degs: tuple
    D: int

    def to_json(self):
        return {"seed": self.seed, "n": self.n, "s": self.s, "ideal": [list(g) for g in self.ideal],
                "X": {"kind": self.x_kind, "rows": [list(r) for r in self.x_rows]},
                "N": {"gens": [list(g) for g in self.n_gens], "colon_m": self.n_colon},
                "M": {"rows": [list(r) for r in self.m_rows], "degs": list(self.m_degs)},
                "D": self.D}


@dataclass
class Instance:
    spec: InstanceSpec
    ring: MonomialQuotientRing
    X: gmod.PresentedModule
    N: gmod.SubmoduleWindow
    M: gmod.PresentedModule
    D: int


def _monomials(n, d):
    out = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return sorted(out, reverse=True)


def _random_form(rng, ring, d, density=0.6):
    """Random homogeneous element of degree d (may be zero)."""
    basis = ring.degree_basis(d)
    terms = {}
    for m in basis:
        if rng.random() < density:
            terms[m] = rng.choice([1, 1, 1, 2, -1, 3])
    return ring.elem(terms)


def _random_ring(rng):
    n = rng.choice([2, 2, 3])
    s = rng.choice([3, 4, 5]) if n == 2 else rng.choice([3, 3, 4])
    ideal = _monomials(n, s)
    extra = rng.choice([0, 0, 1, 2])
    for _ in range(extra):
        d = rng.randint(2, s - 1)
        ideal.append(rng.choice(_monomials(n, d)))
    ring = MonomialQuotientRing(VAR_NAMES[:n], ideal, FieldSpec.prime())
    return ring


def generate_instance(seed):
    rng = random.Random(seed)
    while True:
        ring = _random_ring(rng)
        if ring.hilbert_value(2) > 0:      # keep m^2 != 0 so Burch examples exist
            break
    n = ring.n
    s = ring.socle_bound

    x_kind = rng.choice(["R", "R", "R2", "coker"])
    x_rows = ()
    if x_kind == "R":
        X = gmod.PresentedModule.free(ring, (0,))
    elif x_kind == "R2":
        X = gmod.PresentedModule.free(ring, (0, 0))
    else:
        rows = [[_random_form(rng, ring, 1, 0.4) for _ in range(2)] for _ in range(2)]
        X = gmod.PresentedModule.coker(ring, rows, (0, 0))
        x_rows = tuple(tuple(str(r) for r in row) for row in rows)

    r0 = X.F0.rank
    gens = []
    for _ in range(rng.randint(1, 3)):
        d = rng.choice([1, 1, 2])
        comps = []
        for j in range(r0):
            if r0 > 1 and rng.random() < 0.4:
                comps.append(ring.zero())
            else:
                comps.append(_random_form(rng, ring, d, 0.5))
        gens.append(tuple(comps))

    mr = rng.choice([1, 1, 2])
    mc = rng.choice([1, 2])
    while True:
        mrows = [[_random_form(rng, ring, 1, 0.5) for _ in range(mc)] for _ in range(mr)]
        if any(not e.is_zero() for row in mrows for e in row):
            break
    M = gmod.PresentedModule.coker(ring, mrows, (0,) * mr)

    n_colon = rng.random() < 0.25
    N = gmod.span_closure(X, gens, None, label="N")
    if n_colon:
        N = gmod.colon_m(N)
    # the top of X bounds the top of every subquotient of X, so this window certifies all of them
    D = resolve.suggest_window(M, X, IMAX)
    spec = InstanceSpec(seed, n, s, tuple(ring.ideal_gens), x_kind, x_rows,
                        tuple(tuple(str(c) for c in g) for g in gens), n_colon,
                        tuple(tuple(str(e) for e in row) for row in mrows), (0,) * mr, D)
    N.D = D
    return Instance(spec, ring, X, N, M, D)
