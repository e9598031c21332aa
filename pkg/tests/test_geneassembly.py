import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from maxpivot import IllegalStringError, RuleInapplicableError, overlap_graph, parse_legal_string
from maxpivot.geneassembly import (
    LegalString,
    Sym,
    apply_graph_rule,
    apply_sdr,
    apply_snr,
    apply_spr,
    apply_strategy,
    apply_string_rule,
    applicable_string_rules,
    complete_contractions,
    gdr,
    gnr,
    gnr_exceptions,
    gnrdom_family,
    gnrdom_family_from_maximal,
    gpr,
    inverse,
    occurs_once_in_interval,
    parse_graph_rule,
    parse_string_rule,
    random_legal_string,
    simulation_failures,
    verify_simulation,
    verify_theorem_ga_gnr,
    y_interval,
)
from maxpivot.orbit import all_graphs, dual_orbit
from reference_graphs import CONTRACTED, G, G_DUAL_P, make

U = parse_legal_string("q p s q' r p s r")
ACTIN = "3 4 4 5 6 7 5 6 7 8 9 3' 2' 2 8 9"


def legal(text):
    return parse_legal_string(text)


def sdr_oracle(u: LegalString, x: Sym, y: Sym):
    """Try every way of cutting u as u1 x u2 y u3 x u4 y u5."""
    s = u.symbols
    results = set()
    for a, b, c, d in combinations(range(len(s)), 4):
        if s[a] == x and s[b] == y and s[c] == x and s[d] == y:
            u1, u2, u3, u4, u5 = s[:a], s[a + 1:b], s[b + 1:c], s[c + 1:d], s[d + 1:]
            results.add(u1 + u4 + u3 + u2 + u5)
    return results


def overlap_oracle(u: LegalString):
    """Letters overlap when their occurrences interleave; loops on letters occurring in both signs."""
    letters = u.letters()
    edges = []
    for a, b in combinations(letters, 2):
        i1, i2 = u.positions(a)
        j1, j2 = u.positions(b)
        if (i1 < j1 < i2 < j2) or (j1 < i1 < j2 < i2):
            edges.append((a, b))
    loops = [a for a in letters if u.symbols[u.positions(a)[0]].barred != u.symbols[u.positions(a)[1]].barred]
    return letters, edges, loops


@st.composite
def legal_strings(draw, max_letters=6):
    k = draw(st.integers(0, max_letters))
    symbols = [Sym(chr(ord("a") + i), draw(st.booleans())) for i in range(k) for _ in range(2)]
    return LegalString(tuple(draw(st.permutations(symbols))))


# --- parsing ----------------------------------------------------------------

def test_parse_example():
    assert [str(s) for s in U.symbols] == ["q", "p", "s", "q'", "r", "p", "s", "r"]
    assert U.letters() == ["p", "q", "r", "s"]
    assert str(U) == "q p s q' r p s r"


def test_parse_actin_string():
    u = legal(ACTIN)
    assert len(u) == 16
    assert u.letters() == [str(i) for i in range(2, 10)]


def test_parse_compact_and_empty():
    assert parse_legal_string("qpsq'rpsr") == U
    assert len(parse_legal_string("")) == 0
    assert len(parse_legal_string("λ")) == 0


@pytest.mark.parametrize("text", ["p q p", "p", "p p p", "a'b a b"])
def test_parse_rejects(text):
    with pytest.raises(IllegalStringError):
        parse_legal_string(text)


def test_inverse():
    assert inverse(legal("p q' q p'").symbols) == legal("p q' q p'").symbols
    assert inverse(legal("p q p q").symbols) == legal("q' p' q' p'").symbols


# --- string rules --------------------------------------------------------

def test_snr():
    with pytest.raises(RuleInapplicableError):
        apply_snr(U, "q")
    assert str(apply_snr(legal("s' s' p p"), "s'")) == "p p"
    assert len(apply_snr(legal("s' s'"), "s'")) == 0


def test_spr_example_chain():
    step1 = apply_spr(U, "q")
    assert str(step1) == "s' p' r p s r"
    step2 = apply_spr(step1, "p'")
    step3 = apply_spr(step2, "r'")
    assert str(step3) == "s' s'"
    assert len(apply_snr(step3, "s'")) == 0


def test_spr_rejects():
    with pytest.raises(RuleInapplicableError):
        apply_spr(U, "p")
    with pytest.raises(RuleInapplicableError):
        apply_spr(U, "z")


def test_sdr_example():
    x, y = Sym("p"), Sym("s")
    assert sdr_oracle(U, x, y) == {legal("q q' r r").symbols}
    assert str(apply_sdr(U, "p", "s")) == "q q' r r"


def test_sdr_rejects():
    with pytest.raises(RuleInapplicableError):
        apply_sdr(U, "p", "p")
    with pytest.raises(RuleInapplicableError):
        apply_sdr(U, "s", "p")
    assert sdr_oracle(U, Sym("s"), Sym("p")) == set()


@given(legal_strings())
@settings(max_examples=150, deadline=None)
def test_sdr_matches_oracle(u):
    for a, b in combinations(u.letters(), 2):
        for x in (Sym(a), Sym(a, True)):
            for y in (Sym(b), Sym(b, True)):
                expected = sdr_oracle(u, x, y)
                try:
                    got = {apply_sdr(u, x, y).symbols}
                except RuleInapplicableError:
                    got = set()
                assert got == expected


@given(legal_strings())
@settings(max_examples=100, deadline=None)
def test_rules_shorten_strings(u):
    for rule in applicable_string_rules(u):
        assert len(apply_string_rule(u, rule)) == len(u) - (4 if rule.kind == "sdr" else 2)


def test_string_rule_parsing():
    rule = parse_string_rule("spr:q'")
    assert rule.kind == "spr" and rule.operands == (Sym("q", True),)
    assert str(parse_string_rule("sdr:p,s")) == "sdr:p,s"
    with pytest.raises(ValueError):
        parse_string_rule("sdr:p")
    with pytest.raises(ValueError):
        parse_string_rule("xyz:p")


def test_applicable_rules_on_example():
    # one rule per elementary pivot of G: {q}, {p,r}, {p,s}, {r,s}
    rules = [str(r) for r in applicable_string_rules(U)]
    assert rules == ["spr:q", "sdr:p,r", "sdr:p,s", "sdr:s,r"]


# --- intervals and overlap graph ----------------------------------------

def test_y_interval_example():
    iv = y_interval(U, "q")
    assert (iv.start, iv.end) == (0, 2)
    assert [str(s) for s in iv.slice(U)] == ["q", "p", "s"]
    assert occurs_once_in_interval(U, "p", "q")
    assert not occurs_once_in_interval(U, "r", "q")


def test_y_interval_barred_both_ends():
    u = legal("x' y y x'")
    iv = y_interval(u, "x")
    assert (iv.start, iv.end) == (1, 2)


def test_overlap_graph_example():
    assert overlap_graph(U) == G


def test_overlap_graph_empty():
    assert overlap_graph(legal("")).n == 0


@given(legal_strings())
@settings(max_examples=200, deadline=None)
def test_overlap_graph_matches_interleaving(u):
    letters, edges, loops = overlap_oracle(u)
    expected = make(" ".join(a + b for a, b in edges), "".join(loops), letters)
    assert overlap_graph(u) == expected


# --- graph rules ------------------------------------------------------------

def test_graph_rules_examples():
    assert apply_graph_rule(G, gpr("q")) == CONTRACTED["prs"]
    assert apply_graph_rule(G, gdr("p", "s")) == make("", "q", "qr")
    assert apply_graph_rule(make("", "", "ab"), gnr("a")) == make("", "", "b")


@pytest.mark.parametrize("rule", [gpr("p"), gdr("p", "q"), gdr("q", "s"), gnr("p"), gdr("p", "p")])
def test_graph_rules_reject(rule):
    with pytest.raises(RuleInapplicableError):
        apply_graph_rule(G, rule)


def test_graph_rule_parsing():
    assert parse_graph_rule("gdr:p,s") == gdr("p", "s")
    assert str(gpr("q")) == "gpr(q)"
    with pytest.raises(ValueError):
        parse_graph_rule("gpr:p,q")


def test_spr_simulated_by_gpr():
    assert overlap_graph(apply_spr(U, "q")) == apply_graph_rule(G, gpr("q"))
    assert overlap_graph(apply_sdr(U, "p", "s")) == apply_graph_rule(G, gdr("p", "s"))


# --- simulation -----------------------------------------------------------

def test_simulation_example():
    assert simulation_failures(U) == []
    assert verify_simulation(legal(ACTIN))


def test_gnr_exception_witness():
    w = legal("x y y x")
    assert verify_simulation(w)
    g = overlap_graph(w)
    assert g.rows[g.position("x")] == 0
    with pytest.raises(RuleInapplicableError):
        apply_snr(w, "x")
    assert gnr_exceptions(w) == ["x"]
    assert gnr_exceptions(legal("x x")) == []


@given(legal_strings())
@settings(max_examples=200, deadline=None)
def test_simulation_property(u):
    assert simulation_failures(u) == []


def test_random_legal_string_is_reproducible():
    a = [str(random_legal_string(random.Random(3))) for _ in range(5)]
    b = [str(random_legal_string(random.Random(3))) for _ in range(5)]
    assert a == b
    rng = random.Random(0)
    assert all(len(random_legal_string(rng).letters()) <= 6 for _ in range(100))


# --- complete contractions ------------------------------------------------

def test_complete_contractions_example():
    strategies = complete_contractions(G)
    assert {s.gnrdom for s in strategies} == {frozenset("s"), frozenset("r"), frozenset("p")}
    texts = {str(s) for s in strategies}
    assert "gpr(q) gpr(p) gpr(r) gnr(s)" in texts
    for s in strategies:
        assert apply_strategy(G, s).n == 0


def test_complete_contractions_empty_graph():
    from maxpivot import Graph

    strategies = complete_contractions(Graph.empty())
    assert len(strategies) == 1
    assert strategies[0].steps == () and strategies[0].gnrdom == frozenset()


def test_complete_contractions_limit():
    assert len(complete_contractions(G, limit=2)) == 2


def test_gnrdom_examples():
    expected = frozenset({frozenset("s"), frozenset("r"), frozenset("p")})
    assert gnrdom_family(G) == expected
    assert gnrdom_family(G_DUAL_P) == expected
    assert gnrdom_family_from_maximal(G) == expected
    assert verify_theorem_ga_gnr(G)


def test_gnrdom_agrees_with_strategies():
    for g in all_graphs("abc")[::3]:
        assert {s.gnrdom for s in complete_contractions(g, limit=None)} == gnrdom_family(g)


def test_gnrdom_constant_on_dual_orbit():
    for g in all_graphs("abcd")[::37]:
        families = {gnrdom_family(h) for h in dual_orbit(g).nodes}
        assert len(families) == 1
        assert families == {gnrdom_family_from_maximal(g)}
