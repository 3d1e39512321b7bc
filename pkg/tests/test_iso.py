import random

from hypothesis import given, strategies as st

from vkernets.iso import canonical_key, iso_mapping, net_iso
from vkernets.nets import Net
from vkernets.terms import parse_term
from vkernets.translation import translate

from conftest import terms_with_weakenings


def renamed(G, seed):
    rng = random.Random(seed)
    internal = [n for n in G.nodes if n not in G.free_vars]
    fresh = [f"n{i}" for i in range(len(internal))]
    rng.shuffle(fresh)
    m = dict(zip(internal, fresh))
    links = {l: l.rename(m) for l in G.links}
    boxes = {links[p]: {links[l] for l in members} for p, members in G.boxes.items()}
    return Net.build(links.values(), boxes, m.get(G.root, G.root)), m


def test_same_net():
    G = translate(parse_term(r"(\x. x x) y"))
    assert net_iso(G, G)


def test_free_variables_match_by_name():
    assert not net_iso(translate(parse_term("x")), translate(parse_term("y")))


def test_box_membership_matters():
    # same links up to renaming, but the dereliction on y sits in or out of the box
    inside = translate(parse_term(r"\x. y"))
    outside = translate(parse_term(r"(\x. x) y"))
    assert not net_iso(inside, outside)


@given(terms_with_weakenings(), st.integers(0, 1000))
def test_renaming_invariance(tX, seed):
    t, X = tX
    G = translate(t, X)
    H, m = renamed(G, seed)
    assert canonical_key(G) == canonical_key(H)
    assert net_iso(G, H)
    mapping = iso_mapping(G, H)
    assert mapping is not None
    # the witness respects links
    assert {l.rename(mapping) for l in G.links} == H.links


@given(terms_with_weakenings(), terms_with_weakenings())
def test_agrees_with_vf2(a, b):
    from vkernets.iso import _vf2
    G, H = translate(*a), translate(*b)
    assert net_iso(G, H) == _vf2(G, H).is_isomorphic()


@given(st.sampled_from(["vo_cs", "vo_1", "vo_2"]), st.integers(0, 10**6))
def test_equation_instances_agree_with_vf2(name, seed):
    from vkernets.generate import random_vo_instance
    from vkernets.iso import _vf2
    lhs, rhs = random_vo_instance(random.Random(seed), name, max_size=8)
    G, H = translate(lhs), translate(rhs)
    assert _vf2(G, H).is_isomorphic()
    assert net_iso(G, H)
