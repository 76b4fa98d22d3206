"""Seeded falsification suite: theorem contrapositives on random Artinian instances.

Every check reads only certified quantities.  A check whose hypothesis is
certified false is vacuous; one whose hypothesis cannot be certified is a
skip.  Over an Artinian ring a nonfree module has infinite projective
dimension, so "vanishing ⇒ pd M < t" is checked as "M nonfree ⇒ no
vanishing": certified vanishing for a nonfree M is a violation and
certified non-vanishing is a pass.
"""

from __future__ import annotations

import json
import random
from collections import Counter
from dataclasses import dataclass, field

from .. import gmod, resolve
from ..errors import InvariantBreach
from ..gmod import FreeModule, ModuleMap, PresentedModule
from .generate import IMAX, generate_instance

PASS, VACUOUS, SKIP, VIOLATION = "pass", "vacuous", "skip", "violation"

PROPERTIES = (
    "resolution", "tor_symmetry", "colon_composition",
    "dep", "burchalter", "mN", "wb", "l", "subre",
    "c2", "finpd3_tor", "finpd3_ext", "cor9",
    "wfinpd", "th411", "t1", "t8", "jfull1", "ten", "ext1_k", "bpd",
)


@dataclass
class Outcome:
    prop: str
    case: str
    result: str
    data: dict = field(default_factory=dict)


@dataclass
class SuiteReport:
    suite: str
    seed: int
    count: int
    instances: int
    counts: dict               # prop -> {pass, vacuous, skip, violation}
    violations: list           # (instance seed, prop, case, data)
    burch_rate: float
    self_test: bool = True

    @property
    def passed(self):
        return not self.violations and self.self_test

    def skip_rate(self, prop):
        c = self.counts[prop]
        total = sum(c.values())
        return c.get(SKIP, 0) / total if total else 0.0

    def max_skip_rate(self):
        return max((self.skip_rate(p) for p in self.counts), default=0.0)

    def to_json(self):
        return {
            "suite": self.suite, "seed": self.seed, "count": self.count,
            "instances": self.instances, "passed": self.passed, "self_test": self.self_test,
            "burch_rate": round(self.burch_rate, 4),
            "properties": {p: {**{k: self.counts[p].get(k, 0) for k in (PASS, VACUOUS, SKIP, VIOLATION)},
                               "skip_rate": round(self.skip_rate(p), 4)}
                           for p in sorted(self.counts)},
            "violations": [{"instance": s, "property": p, "case": c, "data": d}
                           for s, p, c, d in self.violations],
        }

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True, indent=2)


# ---------------------------------------------------------------------------
# tri-valued helpers: True / False certified, None unknown


def _tor_state(rep, i):
    st = rep.status.get(i)
    if st == "zero":
        return True
    if st == "nonzero":
        return False
    return None


def _both(a, b):
    """Certified conjunction of two vanishing states."""
    if a is False or b is False:
        return False
    if a is None or b is None:
        return None
    return True


def _contrapositive(vanish):
    """Check 'M nonfree ⇒ not all of these Tor/Ext vanish', given their joint vanishing state."""
    if vanish is None:
        return SKIP
    return VIOLATION if vanish else PASS


def _window_le(A, B, lo, hi):
    return all(A.le(B, d) for d in range(lo, hi + 1))


def _is_zero(W, lo, hi):
    return all(W.dim(d) == 0 for d in range(lo, hi + 1))


class Context:
    """Lazily computed, cached quantities of one instance."""

    def __init__(self, inst):
        self.inst = inst
        self.X, self.N, self.M, self.D = inst.X, inst.N, inst.M, inst.D
        self.R = inst.ring
        self.lo = self.X.F0.lo
        self.hi = self.X.F0.gmax + self.R.socle_bound   # every subquotient of X vanishes above this
        self._cache = {}

    def get(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    @property
    def res(self):
        return self.get("res", lambda: resolve.minimal_resolution(self.M, IMAX + 1, self.D))

    @property
    def nonfree(self):
        def f():
            p = resolve.pd_probe(self.M, IMAX + 1, self.D, self.res)
            return {"nonfree": True, "free": False}.get(p["verdict"])
        return self.get("nonfree", f)

    @property
    def burch(self):
        return self.get("burch", lambda: gmod.is_burch(self.X, self.N, self.D))

    @property
    def wmf(self):
        return self.get("wmf", lambda: gmod.is_weakly_m_full(self.X, self.N, self.D))

    @property
    def Q(self):
        return self.get("Q", lambda: gmod.quotient(self.X, self.N))

    @property
    def Nmod(self):
        return self.get("Nmod", lambda: gmod.submodule_as_module(self.N))

    def mpow(self, n):
        return self.get(("mpow", n), lambda: gmod.m_multiple(self.N, n))

    def tor(self, key, module):
        return self.get(("tor", key), lambda: resolve.tor_dims(self.M, module, IMAX, self.D, self.res))

    def ext(self, key, module):
        return self.get(("ext", key), lambda: resolve.ext_dims(self.M, module, IMAX, self.D, self.res))

    def nonzero_sub(self, W):
        return not _is_zero(W, self.lo, self.hi)

    def ann(self, key, module):
        return self.get(("ann", key), lambda: gmod.annihilator_window(module, self.D))

    def entries_in(self, i, key, module):
        """I_1(∂_i) ⊆ ann(module), checked in every degree where R is nonzero."""
        E = resolve.entry_ideal(self.res.differential(i), self.D)
        A = self.ann(key, module)
        return all(E.le(A, e) for e in range(0, self.R.socle_bound))


def _verdict(c):
    return {"holds": True, "fails": False}.get(c.verdict)


# ---------------------------------------------------------------------------
# properties; each yields Outcome records


def p_resolution(ctx):
    resolve.check_resolution(ctx.res)
    yield Outcome("resolution", "exact-minimal", PASS)


def p_tor_symmetry(ctx):
    a = ctx.tor("Q", ctx.Q)
    rQ = resolve.minimal_resolution(ctx.Q, IMAX + 1, ctx.D)
    b = resolve.tor_dims(ctx.Q, ctx.M, IMAX, ctx.D, rQ)
    bad = [(i, d, v, b.dims[(i, d)]) for (i, d), v in a.dims.items()
           if a.exact[(i, d)] and b.exact.get((i, d)) and v != b.dims[(i, d)]]
    for i in range(IMAX + 1):
        sa, sb = a.status[i], b.status[i]
        if {sa, sb} == {"zero", "nonzero"}:
            bad.append((i, None, sa, sb))
    yield Outcome("tor_symmetry", "M,X/N", VIOLATION if bad else PASS, {"mismatch": bad})


def p_colon_composition(ctx):
    R = ctx.R
    x = R.var(0)
    y = R.var(1)
    lhs = gmod.colon(ctx.N, [x * y]) if not (x * y).is_zero() else None
    if lhs is None:
        yield Outcome("colon_composition", "(N:xy)", VACUOUS)
        return
    rhs = gmod.colon(gmod.colon(ctx.N, [x]), [y])
    ok = all(lhs.equal_at(rhs, d) for d in range(ctx.lo, ctx.hi + 1))
    yield Outcome("colon_composition", "(N:xy)=((N:x):y)", PASS if ok else VIOLATION)


def p_dep(ctx):
    b = _verdict(ctx.burch)
    if b is None:
        yield Outcome("dep", "socle", SKIP)
        return
    if not b:
        yield Outcome("dep", "socle", VACUOUS)
        return
    soc = gmod.socle_window(ctx.X, ctx.N)
    nz = any(soc.dim(d) for d in range(ctx.lo, ctx.hi + 1))
    yield Outcome("dep", "socle", PASS if nz else VIOLATION)


def p_burchalter(ctx):
    # is_burch raises InvariantBreach when the two forms disagree
    c = ctx.burch
    ok = c.detail["definitional"] == c.detail["colon_form"]
    yield Outcome("burchalter", "forms", PASS if ok else VIOLATION, {"verdict": c.verdict})


def p_mN(ctx):
    mN = ctx.mpow(1)
    if not ctx.nonzero_sub(mN):
        yield Outcome("mN", "mN Burch", VACUOUS)
        return
    v = _verdict(gmod.is_burch(ctx.X, mN, ctx.D))
    yield Outcome("mN", "mN Burch", SKIP if v is None else (PASS if v else VIOLATION))


def p_wb(ctx):
    w = _verdict(ctx.wmf)
    if w is None:
        yield Outcome("wb", "wmf+socle", SKIP)
        return
    soc = gmod.socle_window(ctx.X, ctx.N)
    nz = any(soc.dim(d) for d in range(ctx.lo, ctx.hi + 1))
    if not (w and nz):
        yield Outcome("wb", "wmf+socle", VACUOUS)
        return
    b = _verdict(ctx.burch)
    yield Outcome("wb", "wmf+socle", SKIP if b is None else (PASS if b else VIOLATION))


def p_l(ctx):
    C = gmod.colon_m(ctx.N)
    v = _verdict(gmod.is_weakly_m_full(ctx.X, C, ctx.D))
    yield Outcome("l", "(N:m) wmf", SKIP if v is None else (PASS if v else VIOLATION))


def p_subre(ctx):
    w = _verdict(ctx.wmf)
    if w is None:
        yield Outcome("subre", "Y", SKIP)
        return
    if not w:
        yield Outcome("subre", "Y", VACUOUS)
        return
    C2 = gmod.colon_m(ctx.mpow(1))
    rng = random.Random(ctx.inst.spec.seed)
    extra = tuple(ctx.R.var(rng.randrange(ctx.R.n)) if j == 0 else ctx.R.zero()
                  for j in range(ctx.X.F0.rank))
    Ys = {"(N:m)": gmod.colon_m(ctx.N),
          "N+Rv": gmod.span_closure(ctx.X, [extra], None, base=ctx.N, label="Y")}
    for name, Y in Ys.items():
        inside = gmod.intersect_windows(C2, Y)
        ok = _window_le(inside, ctx.N, ctx.lo, ctx.hi)
        yield Outcome("subre", name, PASS if ok else VIOLATION)


def _burch_gate(ctx, prop, case):
    b = _verdict(ctx.burch)
    nf = ctx.nonfree
    if b is None or nf is None:
        return Outcome(prop, case, SKIP)
    if not b or not nf:
        return Outcome(prop, case, VACUOUS)
    return None


def p_c2(ctx):
    g = _burch_gate(ctx, "c2", "t=1")
    if g:
        yield g
        return
    T = ctx.tor("Q", ctx.Q)
    yield Outcome("c2", "t=1", _contrapositive(_both(_tor_state(T, 1), _tor_state(T, 2))),
                  {"tor": [T.status[1], T.status[2]]})


def p_finpd3_tor(ctx):
    g = _burch_gate(ctx, "finpd3_tor", "t=2")
    if g:
        yield g
        return
    T = ctx.tor("N", ctx.Nmod)
    yield Outcome("finpd3_tor", "t=2", _contrapositive(_both(_tor_state(T, 1), _tor_state(T, 2))),
                  {"tor": [T.status[1], T.status[2]]})


def p_finpd3_ext(ctx):
    g = _burch_gate(ctx, "finpd3_ext", "t=1")
    if g:
        yield g
        return
    E = ctx.ext("N", ctx.Nmod)
    yield Outcome("finpd3_ext", "t=1", _contrapositive(_both(_tor_state(E, 1), _tor_state(E, 2))),
                  {"ext": [E.status[1], E.status[2]]})


def p_cor9(ctx):
    nf = ctx.nonfree
    for n in (1, 2):
        W = ctx.mpow(n)
        case = f"n={n}"
        if nf is None:
            yield Outcome("cor9", case, SKIP)
            continue
        if not nf or not ctx.nonzero_sub(W):
            yield Outcome("cor9", case, VACUOUS)
            continue
        Tq = ctx.tor(("Xm", n), gmod.quotient(ctx.X, W))
        Tw = ctx.tor(("m", n), gmod.submodule_as_module(W))
        yield Outcome("cor9", case + " (1)",
                      _contrapositive(_both(_tor_state(Tq, 1), _tor_state(Tq, 2))))
        yield Outcome("cor9", case + " (2)",
                      _contrapositive(_both(_tor_state(Tq, 1), _tor_state(Tw, 1))))
        yield Outcome("cor9", case + " (3)",
                      _contrapositive(_both(_tor_state(Tw, 1), _tor_state(Tw, 2))))


def _wmf_gate(ctx):
    """Shared hypotheses of the weakly m-full corollaries: N wmf and N ⊆ mX."""
    w = _verdict(ctx.wmf)
    if w is None:
        return None
    if not w:
        return False
    mX = gmod.m_multiple(ctx.X.full())
    return _window_le(ctx.N, mX, ctx.lo, ctx.hi)


def _faithful(ctx):
    return ctx.get("faithful", lambda: _verdict(gmod.is_faithful(ctx.X, ctx.D)))


def p_wfinpd(ctx):
    g = _wmf_gate(ctx)
    T = None
    for t in range(0, IMAX + 1):
        if g is None:
            yield Outcome("wfinpd", f"t={t}", SKIP)
            continue
        if not g:
            yield Outcome("wfinpd", f"t={t}", VACUOUS)
            continue
        T = T or ctx.tor("N", ctx.Nmod)
        z = _tor_state(T, t)
        # (1): Tor_t(M,N) = 0 ⇒ I_1(∂_{t+1}) ⊆ ann(X)
        if z is None:
            yield Outcome("wfinpd", f"t={t} (1)", SKIP)
        elif not z:
            yield Outcome("wfinpd", f"t={t} (1)", VACUOUS)
        else:
            ok = ctx.entries_in(t + 1, "X", ctx.X)
            yield Outcome("wfinpd", f"t={t} (1)", PASS if ok else VIOLATION)
        # (2): X faithful and M nonfree ⇒ Tor_t(M,N) ≠ 0
        f, nf = _faithful(ctx), ctx.nonfree
        if f is None or nf is None:
            yield Outcome("wfinpd", f"t={t} (2)", SKIP)
        elif not (f and nf):
            yield Outcome("wfinpd", f"t={t} (2)", VACUOUS)
        else:
            yield Outcome("wfinpd", f"t={t} (2)", _contrapositive(z))


def p_th411(ctx):
    g = _wmf_gate(ctx)
    T = None
    for t in range(1, IMAX + 1):
        if g is None:
            yield Outcome("th411", f"t={t}", SKIP)
            continue
        if not g:
            yield Outcome("th411", f"t={t}", VACUOUS)
            continue
        T = T or ctx.tor("Q", ctx.Q)
        z = _tor_state(T, t)
        if z is None:
            yield Outcome("th411", f"t={t} (1)", SKIP)
        elif not z:
            yield Outcome("th411", f"t={t} (1)", VACUOUS)
        else:
            ok = ctx.entries_in(t, "X", ctx.X)
            yield Outcome("th411", f"t={t} (1)", PASS if ok else VIOLATION)
        f, nf = _faithful(ctx), ctx.nonfree
        if f is None or nf is None:
            yield Outcome("th411", f"t={t} (2)", SKIP)
        elif not (f and nf):
            yield Outcome("th411", f"t={t} (2)", VACUOUS)
        else:
            yield Outcome("th411", f"t={t} (2)", _contrapositive(z))


def p_t1(ctx):
    mN = ctx.mpow(1)
    T = ctx.tor("mN", gmod.submodule_as_module(mN))
    for t in range(0, IMAX + 1):
        z = _tor_state(T, t)
        if z is None:
            yield Outcome("t1", f"t={t}", SKIP)
        elif not z:
            yield Outcome("t1", f"t={t}", VACUOUS)
        else:
            ok = ctx.entries_in(t + 1, "N", ctx.Nmod)
            yield Outcome("t1", f"t={t}", PASS if ok else VIOLATION)


def p_t8(ctx):
    mN = ctx.mpow(1)
    T = ctx.tor("mN", gmod.submodule_as_module(mN))
    for t in range(0, IMAX):
        hyp = _both(_tor_state(T, t), _tor_state(T, t + 1))
        if hyp is None:
            yield Outcome("t8", f"t={t}", SKIP)
        elif not hyp:
            yield Outcome("t8", f"t={t}", VACUOUS)
        else:
            beta = ctx.res.rank(t + 1)
            done = ctx.res.is_complete(t + 1)
            if not done:
                yield Outcome("t8", f"t={t}", SKIP)
                continue
            ok = beta == 0 or not ctx.nonzero_sub(mN)
            yield Outcome("t8", f"t={t}", PASS if ok else VIOLATION, {"beta": beta})


def _ideal_times(X, J):
    R = X.ring
    gens = []
    for g in J:
        for j in range(X.F0.rank):
            gens.append(tuple(g if k == j else R.zero() for k in range(X.F0.rank)))
    return gmod.span_closure(X, gens, None, label="JX")


def p_jfull1(ctx):
    R = ctx.R
    Js = {"m": R.variables(), "(x)": [R.var(0)]}
    T = None
    for name, J in Js.items():
        JX = _ideal_times(ctx.X, J)
        mJX = gmod.m_multiple(JX)
        mJ = [x * g for x in R.variables() for g in J if not (x * g).is_zero()]
        if not mJ:
            yield Outcome("jfull1", name, VACUOUS)
            continue
        lhs = gmod.colon(ctx.N, J)
        rhs = gmod.colon(ctx.mpow(1), mJ)
        hyp = (_window_le(ctx.N, mJX, ctx.lo, ctx.hi)
               and all(lhs.equal_at(rhs, d) for d in range(ctx.lo, ctx.hi + 1)))
        # X/(N:J) is finite length over an Artinian ring
        if not hyp:
            yield Outcome("jfull1", name, VACUOUS)
            continue
        T = T or ctx.tor("Q", ctx.Q)
        for t in range(1, IMAX + 1):
            z = _tor_state(T, t)
            case = f"{name} t={t}"
            if z is None:
                yield Outcome("jfull1", case, SKIP)
            elif not z:
                yield Outcome("jfull1", case, VACUOUS)
            else:
                ok = ctx.entries_in(t, ("JX", name), gmod.submodule_as_module(JX))
                yield Outcome("jfull1", case, PASS if ok else VIOLATION)


def p_ten(ctx):
    R = ctx.R
    Rfree = PresentedModule.free(R, (0,))
    rng = random.Random(ctx.inst.spec.seed + 7)
    for k in range(2):
        d = rng.choice([1, 1, 2])
        mono = rng.choice(R.degree_basis(d))
        I = gmod.span_closure(Rfree, [(R.monomial(mono),)], None, label="I")
        case = f"I=({R.mono_str(mono)})"
        T1 = resolve.tor_dims(ctx.M, gmod.quotient(Rfree, I), 1, ctx.D, ctx.res)
        z = _tor_state(T1, 1)
        if z is None:
            yield Outcome("ten", case, SKIP)
            continue
        if not z:
            yield Outcome("ten", case, VACUOUS)
            continue
        T0 = resolve.tor_dims(ctx.M, gmod.submodule_as_module(I), 0, ctx.D, ctx.res)
        IM = gmod.submodule_as_module(_ideal_times(ctx.M, [R.monomial(mono)]))
        top = ctx.M.F0.gmax + R.socle_bound
        bad = [e for e in range(0, top + 1) if T0.value(0, e) != IM.dim(e)]
        yield Outcome("ten", case, VIOLATION if bad else PASS, {"degrees": bad})


def p_ext1_k(ctx):
    b = _verdict(ctx.burch)
    if b is None:
        yield Outcome("ext1_k", "Ext1(k,N)", SKIP)
        return
    if not b:
        yield Outcome("ext1_k", "Ext1(k,N)", VACUOUS)
        return
    k = _residue_field(ctx.R)
    E = resolve.ext_dims(k, ctx.Nmod, 1, ctx.D)
    st = E.status[1]
    res = PASS if st == "nonzero" else VIOLATION if st == "zero" else SKIP
    yield Outcome("ext1_k", "Ext1(k,N)", res, {"status": st})


def _residue_field(R):
    return PresentedModule.coker(R, [R.variables()], (0,))


def p_bpd(ctx):
    R = ctx.R
    for r in (1, 2):
        Fr = PresentedModule.free(R, (0,) * r)
        c = gmod.burch_embeddable(Fr.as_module(), ctx.D)
        res = VIOLATION if c.verdict == "holds" else PASS if c.verdict == "fails" else SKIP
        yield Outcome("bpd", f"R^{r}", res, {"verdict": c.verdict})


CHECKS = {
    "resolution": p_resolution, "tor_symmetry": p_tor_symmetry,
    "colon_composition": p_colon_composition, "dep": p_dep, "burchalter": p_burchalter,
    "mN": p_mN, "wb": p_wb, "l": p_l, "subre": p_subre, "c2": p_c2,
    "finpd3_tor": p_finpd3_tor, "finpd3_ext": p_finpd3_ext, "cor9": p_cor9,
    "wfinpd": p_wfinpd, "th411": p_th411, "t1": p_t1, "t8": p_t8, "jfull1": p_jfull1,
    "ten": p_ten, "ext1_k": p_ext1_k, "bpd": p_bpd,
}


def evaluate_instance(inst, props=PROPERTIES):
    ctx = Context(inst)
    out = []
    for name in props:
        try:
            out.extend(CHECKS[name](ctx))
        except InvariantBreach as exc:
            out.append(Outcome(name, "invariant", VIOLATION, {"error": str(exc)}))
    return out, ctx


def run_property_suite(seed=42, count=200, props=PROPERTIES, self_test=True):
    counts = {p: Counter() for p in props}
    violations = []
    burch = 0
    for k in range(count):
        inst = generate_instance(seed * 100003 + k)
        outcomes, ctx = evaluate_instance(inst, props)
        if "burch" in ctx._cache and ctx.burch.verdict == "holds":
            burch += 1
        for o in outcomes:
            counts[o.prop][o.result] += 1
            if o.result == VIOLATION:
                violations.append((inst.spec.seed, o.prop, o.case, _plain(o.data)))
    violations.sort(key=lambda v: (v[0], v[1], v[2]))
    st = planted_breach_detected() if self_test else True
    return SuiteReport("random", seed, count, count, {p: dict(c) for p, c in counts.items()},
                       violations, burch / count if count else 0.0, st)


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    return str(x)


def planted_breach_detected(seed=0):
    """Self-test: splice a trivial summand R(-a) --1--> R(-a) into a resolution."""
    inst = generate_instance(seed)
    res = resolve.minimal_resolution(inst.M, 1, inst.D)
    R = inst.ring
    F1, F0 = res.frees[1], res.frees[0]
    a = F0.degs[0]
    F1b = FreeModule(R, tuple(F1.degs) + (a,))
    cols = [list(c) for c in res.maps[0].cols]
    cols.append([R.one() if j == 0 else R.zero() for j in range(F0.rank)])
    res.frees[1] = F1b
    res.maps[0] = ModuleMap(F1b, F0, cols)
    try:
        resolve.check_resolution(res)
    except InvariantBreach:
        return True
    return False
