import pytest

from burchkit import MonomialQuotientRing, gmod, resolve
from burchkit.errors import InputError
from burchkit.gmod import FreeModule, ModuleMap, PresentedModule
from burchkit.harness.fixtures import load


def residue(R):
    return PresentedModule.coker(R, [R.variables()])


def betti(M, t, D):
    r = resolve.minimal_resolution(M, t, D)
    return [r.rank(i) for i in range(t + 1)]


def test_residue_field_dual_numbers(field):
    R = MonomialQuotientRing("x", [(2,)], field)
    assert betti(residue(R), 5, 7) == [1] * 6


def test_residue_field_node(field):
    R = MonomialQuotientRing("xy", [(1, 1)], field)
    assert betti(residue(R), 4, 8) == [1, 2, 2, 2, 2]


def test_residue_field_square_zero(field):
    R = MonomialQuotientRing("xy", [(2, 0), (1, 1), (0, 2)], field)
    bt = resolve.betti_table(residue(R), 4, 6)
    assert bt.totals() == [1, 2, 4, 8, 16]
    assert bt.row(3) == {3: 8}


def test_free_module(field):
    R = MonomialQuotientRing("xy", [(1, 1)], field)
    F = PresentedModule.free(R, (0, 1))
    assert betti(F, 3, 4) == [2, 0, 0, 0]
    assert resolve.pd_probe(F, 2, 4)["verdict"] == "free"
    assert resolve.is_free(F, 4) is True


def test_zero_module(field):
    R = MonomialQuotientRing("x", [(2,)], field)
    Z = PresentedModule.coker(R, [[R.one()]])
    r = resolve.minimal_resolution(Z, 2, 3)
    assert [r.rank(i) for i in range(3)] == [0, 0, 0]
    T = resolve.tor_dims(Z, residue(R), 1, 3)
    assert T.status[0] == "zero" and T.status[1] == "zero"


def test_nonminimal_presentation_is_minimalized(field):
    R = MonomialQuotientRing("x", [(3,)], field)
    x = R.var(0)
    # coker of [1, x] on two generators is R/(x) presented with a unit
    M = PresentedModule.coker(R, [[R.one(), R.zero()], [R.zero(), x]], (0, 0))
    assert not M.minimal
    r = resolve.minimal_resolution(M, 2, 6)
    assert [r.rank(i) for i in range(3)] == [1, 1, 1]
    resolve.check_resolution(r)


def test_window_below_generators(field):
    R = MonomialQuotientRing("x", [(2,)], field)
    M = PresentedModule.free(R, (3,))
    with pytest.raises(InputError):
        resolve.minimal_resolution(M, 1, 2)


def test_periodic_ru_81(field):
    inst = load("ex81", field.char)
    Ru = inst.presented("Ru")
    assert betti(Ru, 6, 10) == [1] * 7
    p = resolve.pd_probe(Ru, 3, 10)
    assert p["verdict"] == "nonfree"


def test_tor_81(field):
    inst = load("ex81", field.char)
    T = resolve.tor_dims(inst.presented("Ru"), inst.presented("Rv"), 1, 10)
    assert T.status[1] in ("zero", "zero-in-window")
    assert all(v == 0 for (i, _), v in T.dims.items() if i == 1)


def test_tor_with_free_second_argument(field):
    inst = load("ex83", field.char)
    M = inst.presented("M")
    R = inst.presented("X")
    T = resolve.tor_dims(M, R, 2, 6)
    assert T.status[1] != "nonzero" and T.status[2] != "nonzero"
    assert [T.value(0, d) for d in range(4)] == [M.dim(d) for d in range(4)]


def test_tor_83(field):
    inst = load("ex83", field.char)
    M, Q = inst.presented("M"), inst.module("XmodN")
    D = resolve.suggest_window(M, Q, 2)
    T = resolve.tor_dims(M, Q, 2, D)
    assert T.status[1] == "zero"
    assert T.status[2] == "nonzero" and T.witness[2] == 3


def test_tor_symmetry_83(field):
    inst = load("ex83", field.char)
    M, Q = inst.presented("M"), inst.module("XmodN")
    a = resolve.tor_dims(M, Q, 2, 8)
    b = resolve.tor_dims(Q, M, 2, 8)
    for key, v in a.dims.items():
        if a.exact[key] and b.exact.get(key):
            assert v == b.dims[key]


def test_ext_81(field):
    inst = load("ex81", field.char)
    Ru = inst.presented("Ru")
    E = resolve.ext_dims(Ru, Ru, 1, 10)
    assert E.status[1] in ("zero", "zero-in-window")


def test_ext_k_k_dual_numbers(field):
    R = MonomialQuotientRing("x", [(2,)], field)
    k = residue(R)
    E = resolve.ext_dims(k, k, 1, 4)
    assert E.total(1) == 1 and E.status[1] == "nonzero"


def test_ext0_of_free_is_module(field):
    R = MonomialQuotientRing("x", [(3,)], field)
    F = PresentedModule.free(R)
    N = PresentedModule.coker(R, [[R.var(0) ** 2]])
    E = resolve.ext_dims(F, N, 0, 5)
    assert [E.value(0, d) for d in range(3)] == [N.dim(d) for d in range(3)]


def test_entry_ideal(field):
    R = MonomialQuotientRing("xy", [(2, 0), (0, 2)], field)
    F0 = FreeModule(R, (0,))
    F1 = FreeModule(R, (1, 1))
    d = ModuleMap(F1, F0, [[R.var(0)], [R.var(1)]])
    E = resolve.entry_ideal(d)
    assert [E.dim(e) for e in range(4)] == [0, 2, 1, 0]
    Z = ModuleMap(F1, F0, [[R.zero()], [R.zero()]])
    assert [resolve.entry_ideal(Z).dim(e) for e in range(3)] == [0, 0, 0]


def test_suggest_window_formula(field):
    R2 = MonomialQuotientRing("x", [(2,)], field)
    k2 = residue(R2)
    assert resolve.suggest_window(k2, k2, 3) == 4
    R3 = MonomialQuotientRing("x", [(3,)], field)
    k3 = residue(R3)
    assert resolve.suggest_window(k3, k3, 2) == 6
    assert resolve.suggest_window(k3, k3, 0) == 0 + 2 + 0


def test_require_window(field):
    from burchkit.errors import InsufficientWindow
    R = MonomialQuotientRing("x", [(2,)], field)
    k = residue(R)
    with pytest.raises(InsufficientWindow) as exc:
        resolve.require_window(2, k, k, 3)
    assert exc.value.required == 4


def test_check_resolution_detects_unit_entry(field):
    R = MonomialQuotientRing("x", [(2,)], field)
    r = resolve.minimal_resolution(residue(R), 1, 3)
    F0 = r.frees[0]
    F1 = FreeModule(R, tuple(r.frees[1].degs) + (0,))
    r.frees[1] = F1
    r.maps[0] = ModuleMap(F1, F0, [list(c) for c in r.maps[0].cols] + [[R.one()]])
    from burchkit.errors import InvariantBreach
    with pytest.raises(InvariantBreach):
        resolve.check_resolution(r)


def test_deterministic(field):
    inst = load("ex83", field.char)
    M = inst.presented("M")
    a = resolve.minimal_resolution(M, 3, 8)
    b = resolve.minimal_resolution(load("ex83", field.char).presented("M"), 3, 8)
    assert [[str(e) for e in m.entries()] for m in a.maps] == [[str(e) for e in m.entries()] for m in b.maps]
