import random

from hypothesis import given, strategies as st

from vkernets.corpus import EQUATIONS, equation_pair
from vkernets.generate import random_term, random_vo_instance
from vkernets.iso import net_iso
from vkernets.structural import vo_equiv, vo_key
from vkernets.terms import App, ESub, Var, parse_term, well_name
from vkernets.translation import translate

from conftest import terms


def test_bundled_pairs():
    for name in EQUATIONS:
        lhs, rhs = equation_pair(name)
        assert vo_equiv(lhs, rhs), name


def test_distinct_free_variables():
    assert not vo_equiv(Var("x"), Var("y"))


def test_side_conditions_matter():
    # y occurs in s, so the two substitutions may not commute
    assert not vo_equiv(parse_term("(x a)[x/y][y/b]"), parse_term("(x a)[y/b][x/y]"))
    # x is free in v: no hoisting
    assert not vo_equiv(parse_term(r"(\z. x) (x x)[x/b]"), parse_term(r"((\z. x) (x x))[x/b]"))


def test_alpha_invariant():
    assert vo_equiv(parse_term(r"\x. x[y/a]"), parse_term(r"\z. z[u/a]"))


@given(st.sampled_from(sorted(EQUATIONS)), st.integers(0, 10**6))
def test_random_instances(name, seed):
    lhs, rhs = random_vo_instance(random.Random(seed), name)
    assert vo_equiv(lhs, rhs)


@given(terms(), terms(), terms())
def test_equivalence_relation(a, b, c):
    assert vo_equiv(a, a)
    assert vo_equiv(a, b) == vo_equiv(b, a)
    if vo_equiv(a, b) and vo_equiv(b, c):
        assert vo_equiv(a, c)


@given(st.sampled_from(sorted(EQUATIONS)), st.integers(0, 10**6))
def test_congruence(name, seed):
    rng = random.Random(seed)
    lhs, rhs = random_vo_instance(rng, name, max_size=8)
    ctx = random_term(rng, 8, free=("a",))
    # plug both sides into the same substitution context
    plug = lambda t: well_name(ESub(ctx, "hole", t))
    assert vo_equiv(plug(lhs), plug(rhs))
    plug = lambda t: well_name(App(Var("a"), t))
    assert vo_equiv(plug(lhs), plug(rhs))


@given(terms(max_size=15), terms(max_size=15))
def test_key_agrees_with_nets(a, b):
    # equal keys must give isomorphic nets (the converse is the open claim)
    if vo_key(a) == vo_key(b):
        assert net_iso(translate(a), translate(b))


def test_quotient_matches_nets_on_small_terms():
    # every term up to size 7 over one free variable: two terms share a
    # net exactly when they are structurally equivalent
    from collections import defaultdict
    from vkernets.generate import enumerate_terms
    from vkernets.iso import canonical_key
    by_key = defaultdict(set)
    by_net = defaultdict(set)
    for n in range(1, 8):
        for t in enumerate_terms(n, free=("a",)):
            k, c = vo_key(t), canonical_key(translate(t))
            by_key[k].add(c)
            by_net[c].add(k)
    assert all(len(v) == 1 for v in by_key.values())
    assert all(len(v) == 1 for v in by_net.values())
