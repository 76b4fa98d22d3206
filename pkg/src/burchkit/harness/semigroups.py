"""Exhaustive cross-validation over small numerical semigroups."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field

from .. import semigroup as sg
from ..errors import InvariantBreach


@dataclass
class SemigroupReport:
    max_gen: int
    max_val: int
    total: int
    checks: dict                    # invariant -> [holds, fails]
    table: dict                     # (ng ∧ surj, self_dual) -> count
    failures: list = field(default_factory=list)
    notable: dict = field(default_factory=dict)

    @property
    def passed(self):
        return not self.failures

    def to_json(self):
        return {"suite": "semigroups", "max_gen": self.max_gen, "max_val": self.max_val,
                "total": self.total, "passed": self.passed,
                "checks": {k: {"holds": v[0], "fails": v[1]} for k, v in sorted(self.checks.items())},
                "open_question_table": [{"nearly_gorenstein_and_surjection": a, "self_dual": b, "count": c}
                                        for (a, b), c in sorted(self.table.items())],
                "failures": self.failures, "notable": self.notable}

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True, indent=2)


NOTABLE = ((4, 5, 6), (2, 3), (3, 4, 5), (9, 10, 61, 62))


def check_semigroup(H):
    """Invariant name -> bool, plus the summary row."""
    try:
        s = sg.surjection_criterion(H)
        agree = True
    except InvariantBreach:
        M = H.maximal_ideal
        via_colon = sg.rel_colon(sg.rel_add(M, M), M) == M
        s = {"verdict": None, "via_pf": not via_colon, "via_colon": via_colon}
        agree = False
    ng = sg.nearly_gorenstein(H)
    sd = sg.self_dual_check(H)
    K = H.canonical_ideal
    sym = H.symmetric
    checks = {
        "via_pf_eq_via_colon": agree,
        "symmetric_implies_nearly_gorenstein": (not sym) or ng,
        "symmetric_iff_pf_is_frobenius": sym == (H.pf == [H.frobenius] or H.frobenius == -1),
        "symmetric_implies_K_translate_of_H": (not sym) or K.is_translate_of(H.as_ideal),
        "pf_via_apery": H.frobenius == -1 or H.pf == H.pf_via_apery(),
        "msq_cross_check": sg.msq_cross_check(H) == (not s["via_colon"]),
        "K_dual_of_dual_of_M": sg.rel_colon(K, sg.rel_colon(K, H.maximal_ideal)) == H.maximal_ideal,
    }
    row = {"gens": list(H.gens), "surjection": s["verdict"], "nearly_gorenstein": ng,
           "self_dual": sd, "symmetric": sym}
    return checks, row


def enumerate_semigroups(max_gen=4, max_val=40):
    checks = {}
    table = Counter()
    failures = []
    notable = {}
    tuples = sg.minimal_tuples(max_gen, max_val)
    for gens in tuples:
        H = sg.NumericalSemigroup(gens)
        res, row = check_semigroup(H)
        for k, ok in res.items():
            c = checks.setdefault(k, [0, 0])
            c[0 if ok else 1] += 1
            if not ok:
                failures.append({"gens": list(gens), "check": k})
        table[(bool(row["nearly_gorenstein"] and row["surjection"]), bool(row["self_dual"]))] += 1
        if gens in NOTABLE:
            notable[",".join(map(str, gens))] = row
    return SemigroupReport(max_gen, max_val, len(tuples), checks, dict(table), failures, notable)
