import random

import pytest

from teamseq.errors import DegreeOutOfRange, LabelAbsent
from teamseq.resolutions import (ResolutionStep, apply_resolution_step,
                                 gd_label, partial_resolutions,
                                 resolution_steps, resolutions,
                                 resolutions_multiset)
from teamseq.semantics import Team, satisfies, sequent_valid
from teamseq.syntax import (Gd, Prop, Sequent, gd_count, is_classical, mset,
                            parse_formula)

from conftest import gen_formula, gen_side

pf = parse_formula


def rset(*texts):
    return frozenset(pf(t) for t in texts)


def test_resolutions_golden():
    assert resolutions(pf("p || (q || r)")) == rset("p", "q", "r")
    assert resolutions(pf("p & ~q")) == rset("p & ~q")
    assert resolutions(pf("(p||q) | s")) == rset("p | s", "q | s")


def test_resolutions_are_classical():
    rng = random.Random(53)
    for _ in range(200):
        f = gen_formula(rng, rng.randint(0, 4), 3)
        rs = resolutions(f)
        assert rs
        assert all(is_classical(g) for g in rs)
        if is_classical(f):
            assert rs == {f}


def test_resolutions_multiset_golden():
    ms = resolutions_multiset([pf("p||(q||r)"), pf("s||r")])
    want = {mset([pf(a), pf(b)]) for a, b in
            [("p", "s"), ("p", "r"), ("q", "s"), ("q", "r"), ("r", "s"),
             ("r", "r")]}
    assert ms == frozenset(want)
    assert resolutions_multiset([pf("p & q")]) == {mset([pf("p & q")])}
    dup = resolutions_multiset([pf("p||q"), pf("p||q")])
    assert dup == {mset([pf("p"), pf("p")]), mset([pf("p"), pf("q")]),
                   mset([pf("q"), pf("q")])}


def test_partial_resolutions_golden():
    f = pf("p || (q || r)")
    assert partial_resolutions(f, 0) == {f}
    assert partial_resolutions(f, 1) == rset("p", "q || r", "p || q", "p || r")
    assert partial_resolutions(f, 2) == rset("p", "q", "r")
    with pytest.raises(DegreeOutOfRange):
        partial_resolutions(f, 3)
    with pytest.raises(DegreeOutOfRange):
        partial_resolutions(f, -1)


def test_full_degree_partial_resolutions_are_resolutions():
    rng = random.Random(59)
    for _ in range(100):
        f = gen_formula(rng, rng.randint(0, 4), 3)
        k = gd_count(f)
        assert partial_resolutions(f, k) == resolutions(f)
        assert len(resolutions(f)) <= 2 ** k


def test_labelled_steps_golden():
    lf = gd_label(pf("p || (q || r)"))
    assert dict(lf.labels) == {(): 0, (1,): 1}
    a = apply_resolution_step(lf, ResolutionStep("R", 0))
    assert a.formula == pf("q || r")
    assert dict(a.labels) == {(): 1}
    b = apply_resolution_step(a, ResolutionStep("L", 1))
    assert b.formula == Prop("q")
    c = apply_resolution_step(lf, ResolutionStep("L", 1))
    assert c.formula == pf("p || q")
    with pytest.raises(LabelAbsent):
        apply_resolution_step(b, ResolutionStep("L", 0))


def test_step_order_independence():
    rng = random.Random(61)
    checked = 0
    while checked < 60:
        f = gen_formula(rng, rng.randint(1, 4), 3)
        lf = gd_label(f)
        labels = [lab for _, lab in lf.labels]
        if len(labels) < 2:
            continue
        checked += 1
        l1, l2 = rng.sample(labels, 2)
        s1 = ResolutionStep(rng.choice("LR"), l1)
        s2 = ResolutionStep(rng.choice("LR"), l2)
        def run(first, second):
            try:
                return apply_resolution_step(
                    apply_resolution_step(lf, first), second)
            except LabelAbsent:
                # the second step's occurrence sat inside the disjunct the
                # first step discarded
                return None
        one = run(s1, s2)
        other = run(s2, s1)
        if one is not None and other is not None:
            assert one == other


def test_normal_form_equivalence_against_oracle():
    # every team satisfies a formula iff it satisfies some resolution
    rng = random.Random(67)
    from itertools import combinations as comb
    vals = [(a, b) for a in (0, 1) for b in (0, 1)]
    teams = [Team(("p", "q"), frozenset(c))
             for size in range(5) for c in comb(vals, size)]
    for _ in range(40):
        f = gen_formula(rng, rng.randint(0, 3), 2, vars=("p", "q"))
        rs = resolutions(f)
        for t in teams:
            assert satisfies(t, f) == any(satisfies(t, g) for g in rs)


def test_split_property():
    # a classical multiset entails a global disjunction iff it entails a
    # disjunct
    rng = random.Random(71)
    for _ in range(60):
        lam = gen_side(rng, 2, 2, 0)
        phi = gen_formula(rng, rng.randint(0, 2), 1)
        psi = gen_formula(rng, rng.randint(0, 2), 1)
        whole = sequent_valid(Sequent(lam, (Gd(phi, psi),)))
        parts = (sequent_valid(Sequent(lam, (phi,)))
                 or sequent_valid(Sequent(lam, (psi,))))
        assert whole == parts


def test_entailment_reduces_to_resolutions():
    # entailment holds iff each antecedent resolution entails some
    # succedent resolution
    rng = random.Random(73)
    for _ in range(50):
        gamma = gen_side(rng, 2, 2, 2)
        psi = gen_formula(rng, rng.randint(0, 3), 2)
        lhs = sequent_valid(Sequent(gamma, (psi,)))
        rhs = all(any(sequent_valid(Sequent(xi, (alpha,)))
                      for alpha in resolutions(psi))
                  for xi in resolutions_multiset(gamma))
        assert lhs == rhs


def test_resolution_steps_reach_target():
    rng = random.Random(79)
    for _ in range(100):
        f = gen_formula(rng, rng.randint(0, 4), 3)
        for target in resolutions(f):
            steps = resolution_steps(f, target)
            cur = f
            for before, path, side in steps:
                assert before == cur
                node = before
                for i in path:
                    node = (node.left, node.right)[i]
                from teamseq.syntax import substitute_at
                cur = substitute_at(before, path,
                                    node.left if side == "L" else node.right)
            assert cur == target
