import random

import pytest
from hypothesis import given

from vkernets.errors import IteratedApplication, NotAValue, StaleRedex, TermSyntaxError
from vkernets.terms import (Abs, App, ESub, FuelExhausted, NormalForm, TermRedex, Var, alpha_equiv, develop,
                            find_redexes, fv, is_value, is_well_named, kernelize, normalize, parse_term,
                            residuals, show, size, step, subst, well_name)

from conftest import terms

x, y, z, w = Var("x"), Var("y"), Var("z"), Var("w")
I = Abs("x", x)


def _no_bad_heads(t):
    if isinstance(t, App):
        return is_value(t.fun) and _no_bad_heads(t.fun) and _no_bad_heads(t.arg)
    if isinstance(t, Abs):
        return _no_bad_heads(t.body)
    if isinstance(t, ESub):
        return _no_bad_heads(t.body) and _no_bad_heads(t.defn)
    return True


class TestParse:
    def test_atoms_and_application(self):
        assert parse_term("x") == x
        assert parse_term(r"(\x.x) y") == App(I, y)
        assert parse_term(r"λx. x") == I

    def test_substitution_syntax(self):
        assert parse_term("x[x/y]") == ESub(x, "x", y)
        assert parse_term("(x y)[x/z][y/w]") == ESub(ESub(App(x, y), "x", z), "y", w)

    def test_iterated_application_rejected(self):
        with pytest.raises(IteratedApplication):
            parse_term("(x y) z")
        with pytest.raises(IteratedApplication):
            parse_term("x y z")

    @pytest.mark.parametrize("bad", ["", "(x", r"\x", "x[x/y", "x )", "x [y]"])
    def test_syntax_errors(self, bad):
        with pytest.raises(TermSyntaxError):
            parse_term(bad)

    @given(terms())
    def test_show_parses_back(self, t):
        assert parse_term(show(t)) == t


class TestBasics:
    def test_fv(self):
        assert fv(x) == {"x"}
        assert fv(Abs("x", App(x, y))) == {"y"}
        assert fv(ESub(x, "x", y)) == {"y"}

    def test_size(self):
        assert size(x) == 1
        assert size(App(I, y)) == 4

    def test_well_name_examples(self):
        assert well_name(Abs("x", Abs("x", x))) == Abs("x", Abs("x1", Var("x1")))
        assert well_name(App(I, x)) == App(Abs("x1", Var("x1")), x)
        t = parse_term(r"(\y. y) z")
        assert well_name(t) == t

    @given(terms())
    def test_well_name_idempotent(self, t):
        assert is_well_named(t)
        assert well_name(t) == t

    def test_subst(self):
        Iy = Abs("y", y)
        assert subst(x, "x", Iy) == Iy
        assert subst(z, "x", Iy) == z
        assert subst(App(x, x), "x", w) == App(w, w)
        with pytest.raises(NotAValue):
            subst(x, "x", App(y, z))


class TestKernelize:
    def test_iterated_application(self):
        t = kernelize(parse_term("(a b) c", extended=True))
        assert t == ESub(App(Var("w"), Var("c")), "w", App(Var("a"), Var("b")))

    def test_value_heads_unchanged(self):
        t = parse_term(r"(\x. x y) (\z. z)")
        assert kernelize(t) == t

    def test_delta(self):
        d = r"(\x. x x)"
        t = kernelize(parse_term(f"{d} (y z) {d}", extended=True))
        # the head delta (y z) is named, the argument delta stays in place
        assert isinstance(t, ESub) and t.var == "w"
        assert alpha_equiv(t.body, App(Var("w"), parse_term(d)))
        assert alpha_equiv(t.defn, parse_term(f"{d} (y z)"))
        assert parse_term(show(t)) == t


class TestRedexes:
    def test_examples(self):
        assert find_redexes(App(I, y)) == [TermRedex("m", ())]
        assert find_redexes(ESub(x, "x", y)) == [TermRedex("e", (), "x")]
        t = ESub(x, "x", ESub(z, "w", App(Var("a"), Var("b"))))
        assert find_redexes(t) == [TermRedex("e", (), "x")]

    def test_not_a_redex(self):
        # the substituted term is an application, not a value with substitutions
        assert find_redexes(ESub(x, "x", App(y, z))) == []

    def test_steps(self):
        assert step(App(I, y), TermRedex("m", ())) == ESub(x, "x", y)
        assert step(ESub(x, "x", y), TermRedex("e", (), "x")) == y
        t = ESub(x, "x", ESub(Var("v0"), "z", w))
        assert step(t, TermRedex("e", (), "x")) == ESub(Var("v0"), "z", w)

    def test_stale(self):
        with pytest.raises(StaleRedex):
            step(App(I, y), TermRedex("e", (), "x"))
        with pytest.raises(StaleRedex):
            step(x, TermRedex("m", (0, 1)))

    @given(terms())
    def test_steps_keep_invariants(self, t):
        for r in find_redexes(t):
            s = step(t, r)
            assert is_well_named(s)
            assert _no_bad_heads(s)
            assert fv(s) <= fv(t)

    def test_erasing_step_drops_free_variable(self):
        t = parse_term("y[x/z]")
        assert fv(step(t, find_redexes(t)[0])) == {"y"}


class TestNormalize:
    def test_identity_application(self):
        for strategy in ("leftmost", "rightmost", "random"):
            out = normalize(App(I, y), strategy)
            assert isinstance(out, NormalForm)
            assert out.term == y and out.steps == {"m": 1, "e": 1}

    def test_variable(self):
        out = normalize(x)
        assert out.term == x and out.total == 0

    def test_delta_term_is_stuck_under_substitution(self):
        t = kernelize(parse_term(r"(\x. x x) (y z) (\x. x x)", extended=True))
        out = normalize(t)
        assert isinstance(out, NormalForm) and out.steps == {"m": 1}
        # an application of y remains inside a substitution
        assert "y z" in show(out.term)

    def test_fuel(self):
        omega = parse_term(r"(\x. x x) (\y. y y)")
        out = normalize(omega, fuel=10)
        assert isinstance(out, FuelExhausted) and out.total == 10


class TestResiduals:
    @given(terms())
    def test_developments_join_peaks(self, t):
        rs = find_redexes(t)
        for r1 in rs[:3]:
            for r2 in rs[:3]:
                if r1 == r2:
                    continue
                t1, t2 = step(t, r1), step(t, r2)
                s1, _ = develop(t1, residuals(t, r1, [r2], t1))
                s2, _ = develop(t2, residuals(t, r2, [r1], t2))
                assert alpha_equiv(s1, s2)

    def test_duplicated_residual(self):
        # the inner redex is copied to both occurrences of x
        t = parse_term(r"(x x)[x/\y. (\z. z) y]")
        e, m = find_redexes(t)
        t1 = step(t, e)
        assert len(residuals(t, e, [m], t1)) == 2

    def test_erased_residual(self):
        t = parse_term(r"a[x/\y. (\z. z) y]")
        e, m = find_redexes(t)
        assert residuals(t, e, [m], step(t, e)) == []


def test_random_terms_are_kernel_terms():
    from vkernets.generate import random_term
    rng = random.Random(3)
    for _ in range(200):
        t = random_term(rng, 40)
        assert _no_bad_heads(t) and is_well_named(t)
