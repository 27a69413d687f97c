import random
from itertools import combinations

import pytest

from teamseq.errors import DomainMismatch, ResourceLimit
from teamseq.semantics import (Team, big_or, closure_properties,
                               eval_classical, find_countermodel_bruteforce,
                               satisfies, sequent_valid, team_from_json,
                               team_to_json)
from teamseq.syntax import (gd_paths, is_classical, parse_formula,
                            parse_sequent, subformula_at, substitute_at)

from conftest import gen_formula, gen_sequent

pf, ps = parse_formula, parse_sequent


def team(domain, *rows):
    return Team(tuple(domain), frozenset(tuple(r) for r in rows))


def all_teams(domain):
    n = len(domain)
    vals = [tuple((i >> (n - 1 - k)) & 1 for k in range(n))
            for i in range(1 << n)]
    for size in range(len(vals) + 1):
        for combo in combinations(vals, size):
            yield Team(tuple(domain), frozenset(combo))


def test_satisfaction_golden():
    f = pf("p || ~p")
    assert not satisfies(team("p", (1,), (0,)), f)
    assert satisfies(team("p", (1,)), f)
    assert satisfies(team("p"), f)  # empty team
    # split disjunction needs a genuine cover
    g = pf("p | ~p")
    assert satisfies(team("p", (1,), (0,)), g)


def test_empty_team_property_random():
    rng = random.Random(23)
    for _ in range(200):
        f = gen_formula(rng, rng.randint(0, 4), 2)
        dom = tuple(sorted({"p", "q", "r"}))
        assert satisfies(Team(dom, frozenset()), f)


def test_downward_closure_exhaustive():
    rng = random.Random(29)
    for _ in range(40):
        f = gen_formula(rng, rng.randint(0, 3), 2, vars=("p", "q"))
        for t in all_teams(("p", "q")):
            if satisfies(t, f):
                for k in range(len(t.members)):
                    for sub in combinations(t.members, k):
                        assert satisfies(Team(t.domain, frozenset(sub)), f)


def test_flatness_of_classical():
    rng = random.Random(31)
    for _ in range(40):
        f = gen_formula(rng, rng.randint(0, 3), 0, vars=("p", "q"))
        assert is_classical(f)
        for t in all_teams(("p", "q")):
            point = all(satisfies(Team(t.domain, frozenset({v})), f)
                        for v in t.members)
            assert satisfies(t, f) == point
            # singleton satisfaction matches single-valuation truth
            for v in t.members:
                assert (satisfies(Team(t.domain, frozenset({v})), f)
                        == eval_classical(f, dict(zip(t.domain, v))))


def test_global_disjunction_distribution():
    # replacing a global disjunction occurrence by either disjunct covers
    # exactly the satisfying teams of the original
    rng = random.Random(37)
    checked = 0
    while checked < 40:
        f = gen_formula(rng, rng.randint(1, 4), 2, vars=("p", "q"))
        paths = gd_paths(f)
        if not paths:
            continue
        checked += 1
        path = rng.choice(paths)
        node = subformula_at(f, path)
        fl = substitute_at(f, path, node.left)
        fr = substitute_at(f, path, node.right)
        for t in all_teams(("p", "q")):
            assert satisfies(t, f) == (satisfies(t, fl) or satisfies(t, fr))


def test_domain_mismatch():
    with pytest.raises(DomainMismatch):
        satisfies(team("p", (1,)), pf("q"))


def test_sequent_valid_golden():
    assert sequent_valid(ps("(p||~p)|(p||~p) => p||~p, p||~p"))
    assert not sequent_valid(ps("(p||~p)|(p||~p) => p||~p"))
    assert not sequent_valid(ps("p | ~p => p || ~p"))
    assert sequent_valid(ps("p => p"))
    # empty succedent reads as bot
    assert sequent_valid(ps("bot =>"))
    assert not sequent_valid(ps("=>"))


def test_budget():
    with pytest.raises(ResourceLimit):
        sequent_valid(ps("a & b & c & d & e => a"))
    # four variables is the default cap and stays feasible
    assert sequent_valid(ps("a & b & c & d => a & b"))


def test_countermodel_golden():
    cm = find_countermodel_bruteforce(ps("p||(p|~p) => p||~p"))
    assert cm == team("p", (1,), (0,))
    assert find_countermodel_bruteforce(ps("p => p")) is None
    # over the empty domain the countermodel is the team holding the
    # empty valuation
    cm0 = find_countermodel_bruteforce(ps("=> bot"))
    assert cm0 == Team((), frozenset({()}))


def test_countermodel_order_smallest_first():
    cm = find_countermodel_bruteforce(ps("p => q"))
    assert cm == Team(("p", "q"), frozenset({(1, 0)}))


def test_countermodel_agrees_with_validity():
    rng = random.Random(41)
    for _ in range(150):
        s = gen_sequent(rng)
        cm = find_countermodel_bruteforce(s)
        assert (cm is None) == sequent_valid(s)
        if cm is not None:
            assert all(satisfies(cm, f) for f in s.ant)
            assert not satisfies(cm, big_or(s.suc))


def test_closure_properties_golden():
    rep = closure_properties(pf("p || ~p"), ("p",))
    assert (rep.empty_team, rep.downward_closed, rep.union_closed, rep.flat) \
        == (True, True, False, False)
    rep = closure_properties(pf("bot"), ())
    assert rep.flat
    rng = random.Random(43)
    for _ in range(25):
        f = gen_formula(rng, rng.randint(0, 3), 0)
        rep = closure_properties(f, ("p", "q", "r"))
        assert rep.flat and rep.empty_team and rep.downward_closed \
            and rep.union_closed


def test_closure_properties_random_nonclassical():
    rng = random.Random(47)
    for _ in range(25):
        f = gen_formula(rng, rng.randint(0, 3), 2, vars=("p", "q"))
        rep = closure_properties(f, ("p", "q"))
        assert rep.empty_team and rep.downward_closed
        assert rep.flat == (rep.empty_team and rep.downward_closed
                            and rep.union_closed)


def test_team_json():
    t = team("pq", *[(1, 0), (0, 1)])
    t = Team(("p", "q"), frozenset({(1, 0), (0, 1)}))
    assert team_from_json(team_to_json(t)) == t
    assert team_to_json(t) == {"vars": ["p", "q"], "team": [[0, 1], [1, 0]]}
