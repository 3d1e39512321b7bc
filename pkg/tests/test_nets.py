import json

import pytest
from hypothesis import given

from vkernets.errors import FormatError
from vkernets.nets import (BANG, DER, PAR, TENSOR, WEAK, Link, Net, deserialize, export_dot, free_weakenings,
                           level, misplaced_weakenings, serialize, validate_net)
from vkernets.terms import parse_term
from vkernets.translation import translate

from conftest import terms_with_weakenings


def conditions(G):
    return {v.condition for v in validate_net(G)}


def test_translation_of_variable_validates():
    assert validate_net(translate(parse_term("x"))) == []


def test_two_links_into_an_m_node():
    links = [Link(BANG, ("r",), ("#1",)), Link(DER, ("#1",), ("x",)), Link(BANG, ("s",), ("#1",))]
    assert "Multiplicative" in conditions(Net.build(links, {}, "r"))


def test_weakening_contracted_with_dereliction():
    links = [Link(BANG, ("r",), ("#1",)), Link(DER, ("#1",), ("x",)), Link(WEAK, (), ("x",))]
    assert "Exponential" in conditions(Net.build(links, {}, "r"))


def test_root_with_incoming_link():
    links = [Link(BANG, ("r",), ("#1",)), Link(DER, ("#1",), ("r",))]
    assert "Root" in conditions(Net.build(links, {}, "r"))


def test_par_link_without_box():
    G = translate(parse_term(r"\x. x"))
    broken = Net(G.nodes, G.links, {}, G.root, G.free_vars)
    assert "Boxes" in conditions(broken)


def test_weakened_box_free_variable():
    # y is free in the box and weakened inside it
    inner = [Link(BANG, ("q",), ("#2",)), Link(DER, ("#2",), ("x",)), Link(WEAK, (), ("y",))]
    par = Link(PAR, ("#1", "x"), ("q",))
    G = Net.build([Link(BANG, ("r",), ("#1",)), par] + inner, {par: inner}, "r")
    assert "Boxes/Border" in conditions(G)


def test_internal_node_entered_from_outside():
    inner = [Link(BANG, ("q",), ("#2",)), Link(DER, ("#2",), ("x",)),
             Link(BANG, ("s",), ("#3",)), Link(DER, ("#3",), ("x",))]
    par = Link(PAR, ("#1", "x"), ("q",))
    # a dereliction outside the box reaching the internal node s
    links = [Link(TENSOR, ("r",), ("#4", "t")), Link(DER, ("#4",), ("s",)), Link(BANG, ("t",), ("#1",)), par]
    G = Net.build(links + inner, {par: inner}, "r")
    assert "Boxes/InternalClosure" in conditions(G)


def test_levels():
    G = translate(parse_term(r"\x. \y. x y"))
    assert level(G, G.root) == 0
    pars = sorted(G.boxes, key=lambda p: len(G.boxes[p]))
    inner, outer = pars
    assert level(G, outer) == 0
    # a par-link is not inside its own box
    assert level(G, inner) == 1
    ders = [l for l in G.links if l.kind == DER]
    assert sorted(level(G, d) for d in ders) == [2, 2]


def test_free_weakenings():
    assert free_weakenings(translate(parse_term("x"), {"y"})) == {"y"}
    assert free_weakenings(translate(parse_term("x"))) == set()
    # the weakening on x sits inside the box
    G = translate(parse_term(r"\x. y"))
    assert free_weakenings(G) == set()
    assert any(l.kind == WEAK for l in G.links)


@given(terms_with_weakenings())
def test_serialization_round_trip(tX):
    t, X = tX
    G = translate(t, X)
    assert deserialize(serialize(G)) == G
    assert misplaced_weakenings(G) == []


@pytest.mark.parametrize("text", ["not json", "[]", '{"nodes": []}',
                                  '{"nodes": [{"id": "a", "type": "q"}], "links": [], "boxes": [], '
                                  '"root": "a", "freeVars": []}'])
def test_bad_json(text):
    with pytest.raises(FormatError):
        deserialize(text)


def test_wrong_principal_rejected():
    data = json.loads(serialize(translate(parse_term("x"))))
    data["links"][0]["principal"] = "nowhere"
    with pytest.raises(FormatError):
        deserialize(json.dumps(data))


def test_dot_has_clusters():
    text = export_dot(translate(parse_term(r"\x. \y. x")))
    assert text.startswith("digraph")
    assert text.count("subgraph cluster_") == 2
    assert text.rstrip().endswith("}")
