from hypothesis import given

from vkernets.bisim import (check_local_confluence, check_one_step, cosimulate, effective_weakenings, join,
                            join_peak, mirror, net_reduction_graph, redex_bijection, term_reduction_graph)
from vkernets.corpus import delta_term
from vkernets.dynamics import find_cuts
from vkernets.iso import net_iso
from vkernets.terms import find_redexes, kernelize, normalize, parse_term, step
from vkernets.translation import translate

from conftest import terms, terms_with_weakenings

P = parse_term


class TestBijection:
    def test_examples(self):
        assert [(r.kind, c.kind) for r, c in redex_bijection(P(r"(\x. x) y")).pairs] == [("m", "m")]
        assert [(r.kind, c.kind) for r, c in redex_bijection(P("x[x/y]")).pairs] == [("e", "e")]
        assert len(redex_bijection(P("x"))) == 0

    @given(terms_with_weakenings())
    def test_total_and_injective(self, tX):
        t, X = tX
        bij = redex_bijection(t, X)
        assert [r for r, _ in bij.pairs] == find_redexes(t)
        assert sorted(c for _, c in bij.pairs) == sorted(find_cuts(bij.net))
        assert all(r.kind == c.kind for r, c in bij.pairs)

    def test_mirror_on_renamed_net(self):
        from test_iso import renamed
        t = P(r"(\x. x x) ((\y. y) z)")
        G, _ = renamed(translate(t), 3)
        assert len(mirror(t, G, ())) == 2


class TestCosimulation:
    def test_identity(self):
        tr = cosimulate(P(r"(\x. x) y"))
        assert [s.kind for s in tr.steps] == ["m", "e"] and tr.normal
        assert tr.term == P("y")

    def test_erasure(self):
        tr = cosimulate(P("y[x/z]"))
        assert len(tr.steps) == 1 and tr.normal
        assert net_iso(tr.net, translate(P("y"), {"z"}))

    def test_delta(self):
        tr = cosimulate(delta_term())
        assert tr.normal and len(tr.steps) == 1
        assert not find_cuts(tr.net)

    def test_json_lines(self):
        import json
        lines = cosimulate(P(r"(\x. x) y")).json_lines().splitlines()
        assert len(lines) == 3
        assert json.loads(lines[-1])["steps"] == 2

    @given(terms_with_weakenings(max_size=20))
    def test_lengths_agree(self, tX):
        t, X = tX
        for strategy in ("leftmost", "rightmost"):
            tr = cosimulate(t, X, strategy=strategy, fuel=30)
            out = normalize(t, strategy, fuel=30, avoid=tr.X)
            assert len(tr.steps) == out.total

    @given(terms_with_weakenings(max_size=20))
    def test_one_step_both_ways(self, tX):
        assert check_one_step(*tX) == len(find_redexes(tX[0]))

    def test_random_strategy_is_seeded(self):
        t = P(r"((\x. x) a)[y/(\u. u) b]")
        a = cosimulate(t, strategy="random", seed=4)
        b = cosimulate(t, strategy="random", seed=4)
        assert [s.redex for s in a.steps] == [s.redex for s in b.steps]


class TestConfluence:
    def test_no_peak(self):
        r = check_local_confluence(P("x"))
        assert r.ok and r.peaks == 0

    def test_both_orders(self):
        t = kernelize(P(r"(\x. x) ((\y. y) z)"))
        r = check_local_confluence(t)
        assert r.ok and r.peaks == 1

    def test_duplicating_peak(self):
        t = P(r"(x x)[x/\y. (\z. z) y]")
        e, m = find_redexes(t)
        p1, p2 = join_peak(t, e, m)
        # the copied redex is fired in both copies
        assert len(p1) == 2 and len(p2) == 1

    def test_bfs_join(self):
        t = P(r"(x x)[x/\y. (\z. z) y]")
        e, m = find_redexes(t)
        assert join(step(t, e), step(t, m)) is not None

    @given(terms(max_size=30))
    def test_random_terms(self, t):
        assert check_local_confluence(t).ok


class TestTermination:
    def test_omega_loops(self):
        omega = P(r"(\x. x x) (\y. y y)")
        assert term_reduction_graph(omega).status == "loop"
        assert net_reduction_graph(translate(omega)).status == "loop"

    @given(terms(max_size=14))
    def test_transfer(self, t):
        a = term_reduction_graph(t, limit=300)
        b = net_reduction_graph(translate(t, effective_weakenings(t, ())), limit=300)
        if "unknown" not in (a.status, b.status):
            assert a.status == b.status
            assert a.longest == b.longest
