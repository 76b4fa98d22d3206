"""Human-readable rendering and the JSON envelope shared by every command."""

from __future__ import annotations

import json
from importlib import resources

SCHEMA_VERSION = 1


def envelope(command, exit_code, result):
    return {"schema_version": SCHEMA_VERSION, "command": command, "exit_code": exit_code,
            "result": result}


def dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


def load_schema():
    text = resources.files("burchkit.data").joinpath("report_schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def _fmt_set(xs):
    return "{" + ",".join(map(str, xs)) + "}"


def render_semigroup(r):
    lines = [f"H = ⟨{','.join(map(str, r['gens']))}⟩"]
    keys = [("frobenius", "Frobenius number"), ("pf", "PF(H)"), ("type", "type"),
            ("multiplicity", "multiplicity"), ("embdim", "embedding dimension"),
            ("minimal_multiplicity", "minimal multiplicity"), ("symmetric", "symmetric"),
            ("surjection", "surjection criterion"), ("nearly_gorenstein", "nearly Gorenstein"),
            ("self_dual", "self canonical dual")]
    for k, label in keys:
        if k not in r:
            continue
        v = r[k]
        if k == "pf":
            v = _fmt_set(v)
        elif k == "surjection":
            v = f"{v['verdict']} (via PF: {v['via_pf']}, via colon: {v['via_colon']})"
        lines.append(f"  {label}: {v}")
    if "apery" in r:
        lines.append(f"  Ap(H, {r['apery']['m']}) = {_fmt_set(r['apery']['set'])}")
    return "\n".join(lines)


def render_check(r):
    lines = [f"{r['submodule']} ⊆ {r['ambient']}, window D = {r['D']}"]
    for name, cert in r["checks"].items():
        line = f"  {name}: {cert['verdict']}"
        w = cert.get("witness")
        if w:
            line += f"  (witness in degree {w['degree']}: ({', '.join(w['element'])}))"
        lines.append(line)
    return "\n".join(lines)


def render_betti(r):
    lines = [f"resolution of {r['module']} through F_{r['t']}, window D = {r['D']}"]
    for i, tot in enumerate(r["betti"]["totals"]):
        degs = [e for e in r["betti"]["entries"] if e["i"] == i]
        parts = ", ".join(f"{e['count']}×R(-{e['degree']})" for e in degs) or "0"
        cert = r["betti"]["certified"][str(i)]
        tag = "complete" if cert == "all" else f"generators of degree ≤ {cert}"
        lines.append(f"  F_{i}: rank {tot}  [{parts}]  ({tag})")
    lines.append(f"  checks (∂∘∂ = 0, minimal, exact in window): {'ok' if r['verified'] else 'FAILED'}")
    return "\n".join(lines)


def render_homology(r):
    kind = r["kind"]
    name = "Tor" if kind == "tor" else "Ext"
    lines = [f"{name}({r['M']}, {r['N']}), window D = {r['D']}"]
    for i, info in sorted(r["by_index"].items(), key=lambda kv: int(kv[0])):
        idx = f"{name}_{i}" if kind == "tor" else f"{name}^{i}"
        st = info["status"]
        dims = ", ".join(f"{v} in degree {d}" for d, v in sorted(info["dims"].items(), key=lambda kv: int(kv[0])))
        if st == "zero":
            desc = "= 0 (certified)"
        elif st == "nonzero":
            desc = f"≠ 0 (witness degree {info['witness_degree']})"
        elif st == "zero-in-window":
            desc = "= 0 inside the window only"
        else:
            desc = "unknown"
        lines.append(f"  {idx}: {desc}" + (f"; dims: {dims}" if dims else ""))
    return "\n".join(lines)


def render_fixtures(r):
    lines = []
    for fx in r["fixtures"]:
        lines.append(f"{fx['fixture']} [{fx['field']}]: {'pass' if fx['passed'] else 'FAIL'}")
        for c in fx["checks"]:
            mark = "ok " if c["ok"] else "XX "
            lines.append(f"    {mark}{c['name']}: expected {c['expected']}, computed {c['computed']}")
    lines.append(f"fixture suite: {'pass' if r['passed'] else 'FAIL'}")
    return "\n".join(lines)


def render_random(r):
    lines = [f"random suite: seed {r['seed']}, {r['instances']} instances, Burch rate {r['burch_rate']:.1%}"]
    lines.append(f"  {'property':<20}{'pass':>7}{'vacuous':>9}{'skip':>6}{'viol':>6}{'skip%':>8}")
    for p, c in r["properties"].items():
        lines.append(f"  {p:<20}{c['pass']:>7}{c['vacuous']:>9}{c['skip']:>6}{c['violation']:>6}"
                     f"{c['skip_rate']:>8.1%}")
    lines.append(f"  planted non-minimal resolution detected: {r['self_test']}")
    for v in r["violations"]:
        lines.append(f"  VIOLATION instance {v['instance']} {v['property']} [{v['case']}]: {v['data']}")
    lines.append(f"random suite: {'pass' if r['passed'] else 'FAIL'} ({len(r['violations'])} violations)")
    return "\n".join(lines)


def render_semigroups(r):
    lines = [f"semigroups with ≤ {r['max_gen']} generators, each ≤ {r['max_val']}: {r['total']}"]
    for k, v in r["checks"].items():
        lines.append(f"  {k}: {v['holds']} hold, {v['fails']} fail")
    lines.append("  (nearly Gorenstein ∧ surjection) vs self canonical dual:")
    for row in r["open_question_table"]:
        lines.append(f"    {str(row['nearly_gorenstein_and_surjection']):<6} {str(row['self_dual']):<6} {row['count']}")
    for g, row in sorted(r["notable"].items()):
        lines.append(f"  ⟨{g}⟩: surjection {row['surjection']}, nearly Gorenstein {row['nearly_gorenstein']}, "
                     f"self dual {row['self_dual']}")
    lines.append(f"enumeration: {'pass' if r['passed'] else 'FAIL'}")
    return "\n".join(lines)


RENDERERS = {
    "semigroup": render_semigroup, "check": render_check, "resolve": render_betti,
    "tor": render_homology, "ext": render_homology, "verify paper": render_fixtures,
    "verify random": render_random, "enumerate semigroups": render_semigroups,
}


def render(command, result):
    return RENDERERS[command](result)
