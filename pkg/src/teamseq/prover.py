"""Decision procedure: cutfree derivation or explicit countermodel team.

Proof search runs in three stages.  Stage 1 splits the antecedent along
its global disjunctions (left deep rule, inverted), leaving classical
antecedents.  Stage 2 searches, for each classical antecedent, among the
succedent's resolutions (the right deep rule is only "invertible" in the
choice sense, so this stage is a disjunctive search with backtracking).
Stage 3 is a backward search over the invertible classical rules, which
either closes every branch with an axiom or exposes an invalid atomic
sequent.  Failures produce countermodels that are lifted back down the
inverted rules; successes reassemble a cutfree derivation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .calculus import (Derivation, RuleApp, make_at, make_land, make_lbot,
                       make_lgd, make_lneg, make_lor, make_rand, make_rgd,
                       make_rneg, make_ror)
from .errors import CaseMismatch, NonClassicalInput, ResourceLimit
from .resolutions import resolution_choices, resolution_steps
from .semantics import Team, eval_classical
from .syntax import (And, Bot, Formula, Neg, Or, Prop, Sequent, gd_paths,
                     is_classical, mset, mset_add, mset_remove,
                     subformula_at, substitute_at)

DEFAULT_NODE_BUDGET = 10 ** 6


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def spend(self, what: str) -> None:
        self.used += 1
        if self.used > self.limit:
            raise ResourceLimit(f"search budget {self.limit} exhausted "
                                f"while expanding {what}")


@dataclass(frozen=True)
class ClassicalCountermodel:
    """Failure trace of the classical search: the lifted countermodel team
    and the invalid atomic sequent it originated from."""

    team: Team
    atomic: Sequent


def _restrict_team(team: Team, alpha: Formula) -> Team:
    """Keep the valuations whose singleton fails `alpha`."""
    keep = frozenset(v for v in team.members
                     if not eval_classical(alpha, dict(zip(team.domain, v))))
    return Team(team.domain, keep)


def lift_countermodel(rule: RuleApp, premise_models) -> Team:
    """Turn countermodels of a rule's premise(s) into one of its conclusion."""
    models = list(premise_models)
    if not models:
        raise CaseMismatch(f"{rule.rule}: no premise countermodel supplied")
    if len({m.domain for m in models}) != 1:
        raise CaseMismatch("premise countermodels on different domains")
    match rule.rule:
        case "LNeg":
            return _restrict_team(models[0], rule.formula.child)
        case "RNeg" | "LAnd" | "ROr" | "LOr" | "LGd":
            return models[0]
        case "RAnd":
            return models[0]
        case "RGd":
            if len(models) != 2:
                raise CaseMismatch("RGd lifting needs countermodels to both "
                                   "disjunct premises")
            return Team(models[0].domain, models[0].members | models[1].members)
    raise CaseMismatch(f"no countermodel lifting for rule {rule.rule}")


# ---------------------------------------------------------------------------
# Classical backward search

def _first(pool, pred):
    for f in pool:
        if pred(f):
            return f
    return None


def _prove_classical(ant, suc, domain, budget: _Budget):
    budget.spend("classical sequent")
    bot = Bot()
    if bot in ant:
        return make_lbot(ant, suc)
    shared = _first(ant, lambda f: isinstance(f, Prop) and f in suc)
    if shared is not None:
        return make_at(ant, suc, shared)

    f = _first(ant, lambda g: isinstance(g, And))
    if f is not None:
        sub = _prove_classical(mset_add(mset_remove(ant, f), f.left, f.right),
                               suc, domain, budget)
        return sub if isinstance(sub, ClassicalCountermodel) else make_land(sub, f)

    f = _first(suc, lambda g: isinstance(g, Or))
    if f is not None:
        sub = _prove_classical(ant, mset_add(mset_remove(suc, f), f.left, f.right),
                               domain, budget)
        return sub if isinstance(sub, ClassicalCountermodel) else make_ror(sub, f)

    f = _first(ant, lambda g: isinstance(g, Neg))
    if f is not None:
        sub = _prove_classical(mset_remove(ant, f), mset_add(suc, f.child),
                               domain, budget)
        if isinstance(sub, ClassicalCountermodel):
            return ClassicalCountermodel(_restrict_team(sub.team, f.child),
                                         sub.atomic)
        return make_lneg(sub, f)

    f = _first(suc, lambda g: isinstance(g, Neg))
    if f is not None:
        sub = _prove_classical(mset_add(ant, f.child), mset_remove(suc, f),
                               domain, budget)
        return sub if isinstance(sub, ClassicalCountermodel) else make_rneg(sub, f)

    f = _first(suc, lambda g: isinstance(g, And))
    if f is not None:
        rest = mset_remove(suc, f)
        left = _prove_classical(ant, mset_add(rest, f.left), domain, budget)
        if isinstance(left, ClassicalCountermodel):
            return left
        right = _prove_classical(ant, mset_add(rest, f.right), domain, budget)
        if isinstance(right, ClassicalCountermodel):
            return right
        return make_rand(left, right, f)

    f = _first(ant, lambda g: isinstance(g, Or))
    if f is not None:
        rest = mset_remove(ant, f)
        left = _prove_classical(mset_add(rest, f.left), suc, domain, budget)
        if isinstance(left, ClassicalCountermodel):
            return left
        right = _prove_classical(mset_add(rest, f.right), suc, domain, budget)
        if isinstance(right, ClassicalCountermodel):
            return right
        return make_lor(left, right, f)

    # atomic and not an axiom: the valuation making the antecedent true
    v = tuple(1 if Prop(x) in ant else 0 for x in domain)
    return ClassicalCountermodel(Team(domain, frozenset({v})),
                                 Sequent(ant, suc))


def prove_classical(s: Sequent, domain=None,
                    node_budget: int = DEFAULT_NODE_BUDGET):
    """Backward root-first search over the invertible classical rules.

    Returns a checked cutfree Derivation when the sequent is valid, or a
    ClassicalCountermodel carrying the witnessing team otherwise.
    """
    if not s.is_classical():
        raise NonClassicalInput(f"nonclassical formula in {s}")
    if domain is None:
        domain = tuple(sorted(s.props()))
    return _prove_classical(s.ant, s.suc, tuple(domain), _Budget(node_budget))


# ---------------------------------------------------------------------------
# Full proof search

def _stage2_candidates(suc):
    """Succedent resolution candidates in search order, as pairings
    (formula, chosen resolution) in canonical formula order."""
    return resolution_choices(suc)


def _rebuild_succedent(deriv: Derivation, pairing) -> Derivation:
    """Reintroduce the succedent's global disjunctions above `deriv`,
    walking each formula's resolution steps in reverse."""
    for formula, chosen in pairing:
        steps = resolution_steps(formula, chosen)
        for before, path, side in reversed(steps):
            deriv = make_rgd(deriv, before, path, side)
    return deriv


def _first_gd_formula(ant):
    for f in ant:
        if not is_classical(f):
            return f, gd_paths(f)[0]
    return None


def _search_branch(ant, suc, domain, budget, candidates):
    """Stage 2 + 3 for one classical antecedent: returns a Derivation of
    `ant => suc` or the union team over all failed candidates."""
    failures: list[Team] = []
    seen: set[tuple] = set()
    for pairing in candidates:
        budget.spend("succedent candidate")
        lam = mset(r for _, r in pairing)
        if lam in seen:
            continue
        seen.add(lam)
        out = _prove_classical(ant, lam, domain, budget)
        if isinstance(out, Derivation):
            return _rebuild_succedent(out, pairing)
        failures.append(out.team)
    members = frozenset().union(*(t.members for t in failures))
    return Team(domain, members)


def _search(ant, suc, domain, budget, candidates):
    budget.spend("antecedent split")
    hit = _first_gd_formula(ant)
    if hit is None:
        return _search_branch(ant, suc, domain, budget, candidates)
    f, path = hit
    node = subformula_at(f, path)
    rest = mset_remove(ant, f)
    left = _search(mset_add(rest, substitute_at(f, path, node.left)),
                   suc, domain, budget, candidates)
    if isinstance(left, Team):
        return left
    right = _search(mset_add(rest, substitute_at(f, path, node.right)),
                    suc, domain, budget, candidates)
    if isinstance(right, Team):
        return right
    return make_lgd(left, right, f, path)


def prove_or_countermodel(s: Sequent, node_budget: int = DEFAULT_NODE_BUDGET):
    """Decide `s`: a cutfree Derivation if valid, a countermodel Team if not.

    Deterministic: antecedent splits take the first nonclassical formula
    (canonical order) at its lowest-labelled occurrence; succedent
    candidates are tried left-disjunct first; the reported countermodel is
    the one lifted from the first failing antecedent branch.
    """
    domain = tuple(sorted(s.props()))
    budget = _Budget(node_budget)
    candidates = _stage2_candidates(s.suc)
    return _search(s.ant, s.suc, domain, budget, candidates)
