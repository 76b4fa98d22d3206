"""Command-line front end.

Exit codes: 0 success or pass, 1 check failure or counterexample, 2 input error.
"""

from __future__ import annotations

import argparse
import sys
from importlib import resources
from pathlib import Path

from .. import gmod, resolve, semigroup
from ..errors import InputError, InsufficientWindow
from ..instance import load_instance, parse_instance
from . import report

BUILTIN = ("ex81", "ex82", "ex83")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _load(path, char):
    p = Path(path)
    if p.exists():
        return load_instance(p, char=char)
    stem = p.name.split(".")[0]
    if stem in BUILTIN:
        text = resources.files("burchkit.data").joinpath(f"{stem}.inst").read_text(encoding="utf-8")
        return parse_instance(text, char=char)
    raise InputError(f"no such instance file: {path}")


def _gens(text):
    try:
        return [int(g) for g in text.replace(" ", "").split(",") if g]
    except ValueError:
        raise InputError(f"generators must be comma-separated integers, got {text!r}") from None


# ---------------------------------------------------------------------------
# commands; each returns (exit code, result dict)


def cmd_semigroup(a):
    H = semigroup.NumericalSemigroup(_gens(a.gens))
    flags = [a.pf, a.surjection, a.nearly_gorenstein, a.self_dual, a.profile, a.apery is not None]
    full = a.all or not any(flags)
    r = {"gens": list(H.gens)}
    if full or a.pf:
        r.update(frobenius=H.frobenius, pf=H.pf, type=H.type)
    if full or a.profile:
        r.update(H.profile())
        r["pf"] = H.pf
    if full or a.surjection:
        r["surjection"] = semigroup.surjection_criterion(H)
    if full or a.nearly_gorenstein:
        r["nearly_gorenstein"] = semigroup.nearly_gorenstein(H)
    if full or a.self_dual:
        r["self_dual"] = semigroup.self_dual_check(H)
    if a.apery is not None:
        r["apery"] = {"m": a.apery, "set": H.apery(a.apery)}
    return 0, r


def _check_window(X, N, D):
    if D is not None:
        return D
    Q = gmod.quotient(X, N)
    R = X.ring
    if R.artinian:
        t = Q.top()
    else:
        s = max((sum(g) for g in R.ideal_gens), default=1)
        gb = Q.gen_bound if Q.gen_bound is not None else X.F0.gmax
        t = Q.top(gb + 2 * s + 2)
    if t is None:
        raise InputError("X/N is not certified finite length; pass -D explicitly")
    return t + 2


def cmd_check(a):
    inst = _load(a.file, a.char)
    decl = inst.decl(a.submodule)
    if getattr(decl, "ambient", None) != a.inside:
        raise InputError(f"submodule {a.submodule!r} is declared inside {getattr(decl, 'ambient', None)!r}, "
                         f"not {a.inside!r}")
    X = inst.presented(a.inside)
    N = inst.submodule(a.submodule)
    D = _check_window(X, N, a.D)
    checks = {}
    if a.burch or not (a.weakly_m_full or a.m_full_with):
        checks["burch"] = gmod.is_burch(X, N, D)
    if a.weakly_m_full:
        checks["weakly_m_full"] = gmod.is_weakly_m_full(X, N, D)
    if a.m_full_with:
        try:
            x = inst.element(a.m_full_with)
        except InputError:
            x = inst.ring.parse(a.m_full_with)
        checks["m_full"] = gmod.is_m_full(X, N, D, x=x)
    code = 0 if all(c.holds for c in checks.values()) else 1
    return code, {"file": str(a.file), "submodule": a.submodule, "ambient": a.inside, "D": D,
                  "field": inst.ring.field.label, "checks": {k: c.to_json() for k, c in checks.items()}}


def cmd_resolve(a):
    inst = _load(a.file, a.char)
    M = inst.module(a.M)
    res = resolve.minimal_resolution(M, a.t, a.D)
    resolve.check_resolution(res)
    bt = resolve.betti_table(M, a.t, a.D, res)
    diffs = [[[str(r) for r in col] for col in dmap.cols] for dmap in res.maps]
    return 0, {"file": str(a.file), "module": a.M, "t": a.t, "D": a.D, "field": inst.ring.field.label,
               "betti": bt.to_json(), "differentials": diffs, "verified": True}


def _homology(a, kind):
    inst = _load(a.file, a.char)
    M = inst.module(a.M)
    N = inst.module(a.N)
    if a.auto_window:
        D = resolve.suggest_window(M, N, a.i)
    elif a.D is not None:
        D = a.D
    else:
        raise InputError("give -D or --auto-window")
    rep = (resolve.tor_dims if kind == "tor" else resolve.ext_dims)(M, N, a.i, D)
    out = rep.to_json()
    out.update(file=str(a.file), M=a.M, N=a.N, imax=a.i, field=inst.ring.field.label,
               auto_window=bool(a.auto_window))
    return 0, out


def cmd_tor(a):
    return _homology(a, "tor")


def cmd_ext(a):
    return _homology(a, "ext")


def cmd_verify(a):
    if a.suite == "paper":
        from ..harness.fixtures import run_fixture_suite
        r = run_fixture_suite()
    else:
        from ..harness.properties import run_property_suite
        if a.count < 1:
            raise InputError("--count must be >= 1")
        r = run_property_suite(a.seed, a.count)
    return (0 if r.passed else 1), r.to_json()


def cmd_enumerate(a):
    from ..harness.semigroups import enumerate_semigroups
    if a.max_gen < 1 or a.max_val < 1:
        raise InputError("--max-gen and --max-val must be positive")
    r = enumerate_semigroups(a.max_gen, a.max_val)
    return (0 if r.passed else 1), r.to_json()


# ---------------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the JSON report")
    files = argparse.ArgumentParser(add_help=False)
    files.add_argument("file", help="instance file (ex81, ex82, ex83 name the bundled examples)")
    files.add_argument("--char", type=int, default=None, help="override the ring characteristic (0 = Q)")

    p = _Parser(prog="burchkit", description="Burch submodules, resolutions and semigroup checks",
                parents=[common])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("semigroup", parents=[common], help="numerical semigroup invariants")
    s.add_argument("gens", help="comma-separated generators, e.g. 9,10,61,62")
    s.add_argument("--pf", action="store_true")
    s.add_argument("--apery", type=int, metavar="M")
    s.add_argument("--surjection", action="store_true")
    s.add_argument("--nearly-gorenstein", action="store_true")
    s.add_argument("--self-dual", action="store_true")
    s.add_argument("--profile", action="store_true")
    s.add_argument("--all", action="store_true")
    s.set_defaults(fn=cmd_semigroup, name="semigroup")

    c = sub.add_parser("check", parents=[common, files], help="Burch / weakly m-full / m-full tests")
    c.add_argument("--submodule", required=True)
    c.add_argument("--in", dest="inside", required=True)
    c.add_argument("--burch", action="store_true")
    c.add_argument("--weakly-m-full", action="store_true")
    c.add_argument("--m-full-with", metavar="ELT")
    c.add_argument("-D", type=int, default=None)
    c.set_defaults(fn=cmd_check, name="check")

    r = sub.add_parser("resolve", parents=[common, files], help="minimal free resolution")
    r.add_argument("-M", required=True)
    r.add_argument("-t", type=int, required=True)
    r.add_argument("-D", type=int, required=True)
    r.set_defaults(fn=cmd_resolve, name="resolve")

    for name, fn in (("tor", cmd_tor), ("ext", cmd_ext)):
        h = sub.add_parser(name, parents=[common, files], help=f"{name.capitalize()} dimensions")
        h.add_argument("-M", required=True)
        h.add_argument("-N", required=True)
        h.add_argument("-i", type=int, required=True)
        g = h.add_mutually_exclusive_group()
        g.add_argument("-D", type=int, default=None)
        g.add_argument("--auto-window", action="store_true")
        h.set_defaults(fn=fn, name=name)

    v = sub.add_parser("verify", parents=[common], help="regression and property suites")
    vs = v.add_subparsers(dest="suite", required=True, parser_class=_Parser)
    vp = vs.add_parser("paper", parents=[common])
    vp.set_defaults(fn=cmd_verify, name="verify paper")
    vr = vs.add_parser("random", parents=[common])
    vr.add_argument("--seed", type=int, default=42)
    vr.add_argument("--count", type=int, default=200)
    vr.set_defaults(fn=cmd_verify, name="verify random")

    e = sub.add_parser("enumerate", parents=[common], help="exhaustive enumerations")
    es = e.add_subparsers(dest="what", required=True, parser_class=_Parser)
    eg = es.add_parser("semigroups", parents=[common])
    eg.add_argument("--max-gen", type=int, default=4)
    eg.add_argument("--max-val", type=int, default=40)
    eg.set_defaults(fn=cmd_enumerate, name="enumerate semigroups")
    return p


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    want_json = "--json" in argv
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
        code, result = a.fn(a)
        name = a.name
    except (InputError, InsufficientWindow) as exc:
        msg = str(exc)
        if isinstance(exc, InsufficientWindow) and exc.required is not None:
            msg += f" (need D >= {exc.required})"
        if want_json:
            print(report.dumps(report.envelope("error", 2, {"error": msg})))
        else:
            print(f"error: {msg}", file=sys.stderr)
        return 2
    if want_json:
        print(report.dumps(report.envelope(name, code, result)))
    else:
        print(report.render(name, result))
    return code


if __name__ == "__main__":
    sys.exit(main())
