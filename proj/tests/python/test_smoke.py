from pathlib import Path

import pytest

import skewfun as sf

ROOT = Path(__file__).resolve().parents[2]
DEMO = str(ROOT / "demo" / "demo.json")
FIXTURES = ROOT / "tests" / "fixtures"


def test_structures():
    b = sf.builtin("boolean")
    assert b.elements == ["0", "1"]
    assert b.add("1", "0") == "1"
    assert b.check_law("left-dist")
    assert "quasi-solvable" in sf.laws()
    m = sf.builtin("max-plus:2")
    assert m.mul("1", "1") == "2"
    assert m.mul("bot", "2") == "bot"
    v = sf.builtin("right-dist-only").check_law("left-dist")
    assert not v
    assert len(v.witness.items) == 3
    with pytest.raises(sf.InputError):
        sf.builtin("nope")
    with pytest.raises(sf.CapacityError):
        sf.builtin("chain:17").ideals()


def test_ordinals():
    w = sf.Ordinal.omega()
    two = sf.Ordinal.finite(2)
    assert two * w == w
    assert str(w * two) == "w*2"
    assert sf.Ordinal.finite(1) + w == w
    assert w < w + sf.Ordinal.finite(1)
    assert sf.Ordinal("w^2 + w*3 + 1") > sf.Ordinal("w^2")


def test_functionals():
    sp = sf.FunctionSpace(["x1", "x2", "x3"], sf.builtin("chain:3"))
    assert len(sp) == 27
    nu = sf.sup_over(sp, ["x1", "x3"])
    assert nu(["1", "2", "0"]) == "1"
    report = sf.check_idempotent(nu)
    assert report["join-preserving"]
    assert not report["meet-preserving"]
    assert report["meet-preserving"].witness.items == ["{x1: 1, x2: 0, x3: 0}", "{x1: 0, x2: 0, x3: 1}"]

    mono = sf.FunctionSpace(["x1", "x2", "x3"], sf.builtin("chain:3"), monotone="nondecreasing")
    assert len(mono) == 10
    assert all(sf.check_idempotent(sf.sup_over(mono, ["x1", "x3"])).values())

    d = sf.dirac(sp, "x2")
    assert d(["0", "2", "1"]) == "2"
    assert sf.support_of(d) == ["x2"]


def test_families_and_monad():
    sp = sf.FunctionSpace(["x1", "x2"], sf.builtin("boolean"))
    assert len(sf.enumerate_family(sp, "all")) == 16
    assert len(sf.enumerate_family(sp, "order_weak")) == 5
    idem = sf.enumerate_family(sp, "idempotent")
    assert idem[0] == sf.dirac(sp, "x1") or idem[0] == sf.dirac(sp, "x2")
    m = sf.monad_check(sp)
    assert m["holds"]
    assert m["level_sizes"] == [2, 2, 2, 2]


def test_pushforward():
    b = sf.builtin("boolean")
    x = sf.FunctionSpace(["x1", "x2"], b)
    y = sf.FunctionSpace(["y1", "y2"], b)
    pf = sf.pushforward(y, [1, 1], sf.dirac(x, "x1"))
    assert pf == sf.dirac(y, "y2")


def test_convolution():
    b = sf.builtin("boolean")
    z2 = sf.right_regular(["e", "a"], [["e", "a"], ["a", "e"]], "e", b)
    assert sf.check_action(z2)
    assert z2.apply("a", ["1", "0"]) == ["0", "1"]
    g = sf.group_space(z2)
    assert sf.convolve(sf.dirac(g, "a"), sf.dirac(g, "a"), z2) == sf.dirac(g, "e")
    assert sf.check_invariant(sf.sup_over(g, ["e", "a"]), z2)
    assert not sf.check_invariant(sf.dirac(g, "e"), z2)
    alg = sf.convolution_algebra(z2, "max")
    assert alg["saturated"]
    assert len(alg["members"]) == 5
    assert all(alg["quasiring"].values())
    assert all(alg["ideal"].values())


def test_nonassoc_witness():
    r = sf.find_nonassoc_witness(sf.builtin("boolean"), 0, 3, 1)
    assert r["found"]
    assert len(r["triple"]) == 3


def test_cli_surface():
    code, report = sf.run_suite(DEMO, "all", seed=7, format="records")
    assert code == 0
    again = sf.run_suite(DEMO, "all", seed=7, format="records")[1]
    assert report == again
    code, _ = sf.run_suite(str(FIXTURES / "broken_dist.json"), "laws")
    assert code == 1
    assert sf.evaluate(DEMO, "nu([0, 1, 1])") == "1"
    with pytest.raises(sf.InputError, match="/structures/T/mul/1/1"):
        sf.run_suite(str(FIXTURES / "undefined_element.json"))
