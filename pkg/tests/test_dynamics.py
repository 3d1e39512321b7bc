import pytest
from hypothesis import given

from vkernets.correctness import is_correct
from vkernets.dynamics import Cut, find_cuts, normalize_net, reduce_e_der, reduce_e_weak, reduce_m, step_net
from vkernets.errors import NotECut, NotMCut, StaleCut
from vkernets.iso import net_iso
from vkernets.nets import WEAK, misplaced_weakenings, validate_net
from vkernets.terms import find_redexes, parse_term
from vkernets.translation import translate

from conftest import terms_with_weakenings

T = lambda s, X=(): translate(parse_term(s), X)


def fire_only(G):
    (c,) = find_cuts(G)
    return step_net(G, c)


class TestCuts:
    def test_examples(self):
        assert [c.kind for c in find_cuts(T(r"(\x. x) y"))] == ["m"]
        (c,) = find_cuts(T("x[x/y]"))
        assert (c.kind, c.consumer, c.k) == ("e", "der", 1)
        assert find_cuts(T("x")) == []

    def test_contracted_cut(self):
        (c,) = find_cuts(T(r"(x x)[x/\z. z]"))
        assert (c.consumer, c.k) == ("der", 2)

    def test_weakening_cut(self):
        (c,) = find_cuts(T("y[x/z]"))
        assert (c.consumer, c.k) == ("weak", 1)

    def test_substitution_of_an_application_is_no_cut(self):
        assert find_cuts(T("x[x/y z]")) == []


class TestRules:
    @pytest.mark.parametrize("before, after, X", [
        (r"(\x. x) y", "x[x/y]", ()),
        (r"(\x. z) y", "z[x/y]", ()),
        ("x[x/y]", "y", ()),
        (r"(x x)[x/\z. z]", r"(\z. z) (\z1. z1)", ()),
        (r"(\y. x)[x/z]", r"\y. z", ()),
        ("y[x/z]", "y", {"z"}),
        (r"y[x/\w. w]", "y", ()),
        (r"\u. y[x/u]", r"\u. y", ()),
    ])
    def test_single_steps(self, before, after, X):
        G = fire_only(T(before))
        assert net_iso(G, T(after, X))
        assert validate_net(G) == [] and is_correct(G) and misplaced_weakenings(G) == []

    def test_erased_target_still_used(self):
        # z is erased with the value but still used by the body
        G = fire_only(T("z[y/z]"))
        assert net_iso(G, T("z"))
        assert not any(l.kind == WEAK for l in G.links)

    def test_wrong_rule(self):
        G = T(r"(\x. x) y")
        (c,) = find_cuts(G)
        with pytest.raises(NotECut):
            reduce_e_der(G, c)
        with pytest.raises(NotECut):
            reduce_e_weak(G, c)
        H = T("x[x/y]")
        with pytest.raises(NotMCut):
            reduce_m(H, find_cuts(H)[0])

    def test_stale(self):
        with pytest.raises(StaleCut):
            step_net(T("x"), Cut("m", "#1"))

    def test_normalize(self):
        G, steps, done = normalize_net(T(r"(\x. x) y"))
        assert done and steps == 2 and net_iso(G, T("y"))
        omega = T(r"(\x. x x) (\y. y y)")
        G, steps, done = normalize_net(omega, fuel=7)
        assert not done and steps == 7


@given(terms_with_weakenings())
def test_steps_preserve_correctness(tX):
    G = translate(*tX)
    assert len(find_cuts(G)) == len(find_redexes(tX[0]))
    for c in find_cuts(G)[:4]:
        H = step_net(G, c)
        assert validate_net(H) == [] and is_correct(H)
        assert misplaced_weakenings(H) == []
