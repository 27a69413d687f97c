"""Shared generators and helpers for the test suite.

Random formulas and sequents are drawn with a seeded RNG: at most three
variables, bounded depth, and a bounded number of global disjunctions per
sequent side (the oracle is doubly exponential, so tests stay small).
"""

import random

from teamseq.calculus import Derivation, make_cut
from teamseq.prover import prove_or_countermodel
from teamseq.syntax import (And, BOT, Gd, Neg, Or, Prop, Sequent, gd_count)

VARS = ("p", "q", "r")


def gen_classical(rng: random.Random, depth: int, vars=VARS):
    if depth == 0 or rng.random() < 0.3:
        return BOT if rng.random() < 0.1 else Prop(rng.choice(vars))
    roll = rng.random()
    if roll < 0.3:
        return Neg(gen_classical(rng, depth - 1, vars))
    op = And if roll < 0.65 else Or
    return op(gen_classical(rng, depth - 1, vars),
              gen_classical(rng, depth - 1, vars))


def gen_formula(rng: random.Random, depth: int, gd_budget: int, vars=VARS):
    if depth == 0 or rng.random() < 0.25:
        return BOT if rng.random() < 0.1 else Prop(rng.choice(vars))
    roll = rng.random()
    if roll < 0.2:
        return Neg(gen_classical(rng, depth - 1, vars))
    left = gen_formula(rng, depth - 1, gd_budget, vars)
    right = gen_formula(rng, depth - 1, gd_budget - gd_count(left), vars)
    ops = [And, Or]
    if gd_count(left) + gd_count(right) < gd_budget:
        ops.append(Gd)
    return rng.choice(ops)(left, right)


def gen_side(rng: random.Random, max_formulas: int, depth: int, gd_budget: int,
             vars=VARS):
    out = []
    remaining = gd_budget
    for _ in range(rng.randint(0, max_formulas)):
        f = gen_formula(rng, rng.randint(0, depth), remaining, vars)
        remaining -= gd_count(f)
        out.append(f)
    return tuple(out)


def gen_sequent(rng: random.Random, max_formulas=2, depth=4, gd_per_side=2,
                vars=VARS):
    return Sequent(gen_side(rng, max_formulas, depth, gd_per_side, vars),
                   gen_side(rng, max_formulas, depth, gd_per_side, vars))


def identity_derivation(f) -> Derivation:
    d = prove_or_countermodel(Sequent((f,), (f,)))
    assert isinstance(d, Derivation), f
    return d


def inject_cut(d: Derivation, phi) -> Derivation:
    """Test scaffolding: detour a derivation through a cut on a succedent
    formula against its identity derivation; the endsequent is unchanged."""
    assert phi in d.conclusion.suc
    return make_cut(d, identity_derivation(phi), phi)
