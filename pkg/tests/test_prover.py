import random
from itertools import product

import pytest

from teamseq.calculus import (Derivation, RuleApp, check_derivation,
                              is_cutfree)
from teamseq.errors import NonClassicalInput, ResourceLimit
from teamseq.prover import (ClassicalCountermodel, lift_countermodel,
                            prove_classical, prove_or_countermodel,
                            _stage2_candidates)
from teamseq.resolutions import resolutions_multiset
from teamseq.semantics import (Team, big_or, eval_classical,
                               find_countermodel_bruteforce, satisfies,
                               sequent_valid)
from teamseq.syntax import (And, Gd, Neg, Prop, Sequent, mset,
                            parse_formula, parse_sequent)

from conftest import gen_sequent, gen_side

pf, ps = parse_formula, parse_sequent
p, q = Prop("p"), Prop("q")


def team(domain, *rows):
    return Team(tuple(domain), frozenset(tuple(r) for r in rows))


def test_classical_golden():
    d = prove_classical(ps("p & ~p =>"))
    check_derivation(d)
    rules = [d.rule.rule, d.premises[0].rule.rule,
             d.premises[0].premises[0].rule.rule]
    assert rules == ["LAnd", "LNeg", "At"]

    cm = prove_classical(ps("p => q"))
    assert isinstance(cm, ClassicalCountermodel)
    assert cm.team == team("pq", (1, 0)) or cm.team == Team(("p", "q"),
                                                            frozenset({(1, 0)}))
    assert cm.atomic == ps("p => q")

    cm0 = prove_classical(ps("=>"))
    assert cm0.team == Team((), frozenset({()}))


def test_classical_rejects_nonclassical():
    with pytest.raises(NonClassicalInput):
        prove_classical(ps("p || q => p"))


def _truth_table_valid(s: Sequent) -> bool:
    vs = sorted(s.props())
    for bits in product((0, 1), repeat=len(vs)):
        v = dict(zip(vs, bits))
        if all(eval_classical(f, v) for f in s.ant) and \
                not any(eval_classical(f, v) for f in s.suc):
            return False
    return True


def test_classical_agreement_random():
    rng = random.Random(101)
    for _ in range(400):
        s = Sequent(gen_side(rng, 2, 3, 0), gen_side(rng, 2, 3, 0))
        out = prove_classical(s)
        if isinstance(out, Derivation):
            check_derivation(out)
            assert _truth_table_valid(s), s
        else:
            assert not _truth_table_valid(s), s
            # the trace's team is a genuine countermodel
            assert all(satisfies(out.team, f) for f in s.ant)
            assert not satisfies(out.team, big_or(s.suc))


def test_golden_countermodel():
    out = prove_or_countermodel(ps("p||(p|~p) => p||~p"))
    assert out == team("p", (0,), (1,))


def test_golden_validity_deep():
    s = ps("(r&x)|(((p&x)||(q&x))|(y&x)) => (x&(r|(p|y)))||(x&(r|(q|y)))")
    d = prove_or_countermodel(s)
    assert isinstance(d, Derivation)
    check_derivation(d)
    assert is_cutfree(d)
    assert d.conclusion == s


def test_immediate_deep_right():
    d = prove_or_countermodel(ps("p => p || ~p"))
    check_derivation(d)
    assert d.rule.rule == "RGd" and d.rule.side == "L"
    assert d.premises[0].rule.rule == "At"


def test_produced_derivations_are_cutfree():
    rng = random.Random(103)
    done = 0
    while done < 60:
        d = prove_or_countermodel(gen_sequent(rng))
        if isinstance(d, Team):
            continue
        done += 1
        assert is_cutfree(d)
        check_derivation(d)


def test_decision_matches_oracle():
    rng = random.Random(107)
    for _ in range(300):
        s = gen_sequent(rng)
        verdict = sequent_valid(s)
        out = prove_or_countermodel(s)
        if isinstance(out, Team):
            assert not verdict
            assert out.domain == tuple(sorted(s.props()))
            assert all(satisfies(out, f) for f in s.ant)
            assert not satisfies(out, big_or(s.suc))
        else:
            assert verdict
            check_derivation(out)


def test_stage2_candidate_count_matches_resolutions():
    rng = random.Random(109)
    for _ in range(100):
        suc = gen_side(rng, 2, 3, 2)
        cands = _stage2_candidates(suc)
        as_multisets = {mset(r for _, r in pairing) for pairing in cands}
        assert as_multisets == set(resolutions_multiset(suc))


def test_budget_exhaustion():
    with pytest.raises(ResourceLimit):
        prove_or_countermodel(ps("p => p"), node_budget=0)


def test_lift_countermodel_cases():
    t = team("p", (1,), (0,))
    # negation on the left restricts to the refuting valuations
    out = lift_countermodel(RuleApp("LNeg", formula=Neg(p)), [t])
    assert out == team("p", (0,))
    # the two-premise deep right rule takes unions
    out = lift_countermodel(RuleApp("RGd", formula=Gd(p, Neg(p))),
                            [team("p", (1,)), team("p", (0,))])
    assert out == t
    # pass-through cases
    for tag in ("RNeg", "LAnd", "ROr", "LOr", "LGd", "RAnd"):
        assert lift_countermodel(RuleApp(tag, formula=And(p, p)), [t]) == t
    from teamseq.errors import CaseMismatch
    with pytest.raises(CaseMismatch):
        lift_countermodel(RuleApp("Cut", cutformula=p), [t])
    with pytest.raises(CaseMismatch):
        lift_countermodel(RuleApp("RGd", formula=Gd(p, q)), [t])


def test_lift_matches_oracle_on_lneg():
    # countermodel of the premise maps to one of the conclusion
    t = team("p", (1,), (0,))
    s_prem = ps("=> p, p")  # t refutes it
    assert not satisfies(t, big_or(s_prem.suc))
    lifted = lift_countermodel(RuleApp("LNeg", formula=Neg(p)), [t])
    s_concl = ps("~p => p")
    assert all(satisfies(lifted, f) for f in s_concl.ant)
    assert not satisfies(lifted, big_or(s_concl.suc))


def test_reported_countermodel_is_first_failing_branch():
    # the first antecedent split (left disjunct) succeeds, the second
    # fails; the report comes from the second
    out = prove_or_countermodel(ps("p||(p|~p) => p||~p"))
    assert out == team("p", (0,), (1,))
    # brute force agrees here
    assert find_countermodel_bruteforce(ps("p||(p|~p) => p||~p")) == out
