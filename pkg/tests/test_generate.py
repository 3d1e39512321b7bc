import random

import pytest
from hypothesis import given, strategies as st

from vkernets.generate import (FREE, WEAK_POOL, count_terms, enumerate_terms, random_corpus, random_term,
                               random_vo_instance)
from vkernets.terms import ESub, alpha_key, fv, is_well_named, size

# terms of each exact size, closed and over one free variable
CLOSED = [0, 1, 2, 7, 30, 121, 554, 2641]
ONE_FREE = [1, 2, 6, 25, 100, 456, 2187, 11010]


@pytest.mark.parametrize("n", range(1, 9))
def test_counts_match_enumeration(n):
    closed = list(enumerate_terms(n, free=()))
    assert len(closed) == count_terms(n, free=()) == CLOSED[n - 1]
    assert len(list(enumerate_terms(n))) == count_terms(n) == ONE_FREE[n - 1]


@pytest.mark.parametrize("n", range(1, 8))
def test_enumeration_is_exact_and_alpha_distinct(n):
    ts = list(enumerate_terms(n, free=("a",)))
    assert all(size(t) == n and is_well_named(t) and fv(t) <= {"a"} for t in ts)
    assert len({alpha_key(t) for t in ts}) == len(ts)


@given(st.integers(0, 10**6))
def test_enumeration_is_complete(seed):
    t = random_term(random.Random(seed), 7, free=("a",))
    assert alpha_key(t) in {alpha_key(s) for s in enumerate_terms(size(t), free=("a",))}


def test_corpus_is_reproducible():
    a = random_corpus(50, seed=9)
    assert a == random_corpus(50, seed=9)
    for t, X in a:
        assert size(t) <= 50 and is_well_named(t)
        assert X <= set(WEAK_POOL) and fv(t) <= set(FREE)


@given(st.sampled_from(["vo_cs", "vo_1", "vo_2"]), st.integers(0, 10**6))
def test_equation_side_conditions(name, seed):
    lhs, rhs = random_vo_instance(random.Random(seed), name)
    assert is_well_named(lhs) and is_well_named(rhs)
    if name == "vo_cs":
        inner, outer = lhs.body, lhs
        assert inner.var not in fv(outer.defn) and outer.var not in fv(inner.defn)
    elif name == "vo_1":
        assert rhs.var not in fv(lhs.fun)
    else:
        assert isinstance(lhs.defn, ESub) and lhs.defn.var not in fv(lhs.body)


def test_unknown_equation():
    with pytest.raises(ValueError):
        random_vo_instance(random.Random(0), "vo_9")
