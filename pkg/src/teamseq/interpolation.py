"""Sequent interpolants from cutfree derivations, Maehara style.

A partition sequent splits each side of a sequent in two; an interpolant
of `G1 ; G2 => L1 ; D2` is a formula derivable on the left flank
(`G1 => L1, phi`) and usable on the right (`G2, phi => D2`) whose signed
variables are confined to both flanks.  The first succedent block must be
classical; otherwise no interpolant need exist.

The extraction walks the derivation once, assigning each axiom its local
interpolant and combining premise interpolants per rule and per the block
holding the principal formula; both flank derivations are built alongside.
"""

from __future__ import annotations

from dataclasses import dataclass

from .calculus import (Derivation, check_derivation, is_cutfree, make_at,
                       make_land, make_lbot, make_lgd, make_lneg, make_lor,
                       make_rand, make_rgd, make_rneg, make_ror)
from .errors import (ContainsCut, NonClassicalLambda1, PartitionMismatch,
                     ResourceLimit, ShapeMismatch, TeamSeqError)
from .prover import prove_or_countermodel
from .semantics import Team, sequent_valid
from .syntax import (And, BOT, Bot, Formula, Gd, Neg, Or, PartitionSequent,
                     Sequent, is_classical, mset, mset_add, mset_remove,
                     render, signed_props, subformula_at, substitute_at)


@dataclass(frozen=True)
class PolarityBounds:
    positive: frozenset[str]
    negative: frozenset[str]


@dataclass(frozen=True)
class InterpolationResult:
    interpolant: Formula
    left_derivation: Derivation    # G1 => L1, interpolant
    right_derivation: Derivation   # G2, interpolant => D2
    polarity_report: PolarityBounds


@dataclass(frozen=True)
class NotEntailed:
    countermodel: Team


def _signed_union(formulas):
    pos: frozenset[str] = frozenset()
    neg: frozenset[str] = frozenset()
    for f in formulas:
        p, n = signed_props(f)
        pos |= p
        neg |= n
    return pos, neg


def polarity_bounds(p: PartitionSequent) -> PolarityBounds:
    """Allowed signed vocabulary for an interpolant of `p`."""
    g1p, g1n = _signed_union(p.gamma1)
    l1p, l1n = _signed_union(p.delta1)
    g2p, g2n = _signed_union(p.gamma2)
    d2p, d2n = _signed_union(p.delta2)
    pos = (g1p | l1n) & (g2n | d2p)
    neg = (g1n | l1p) & (g2p | d2n)
    return PolarityBounds(pos, neg)


def _weaken_r(d, fs):
    from .transforms import weaken
    for f in fs:
        d = weaken(d, "R", f)
    return d


def _weaken_l(d, fs):
    from .transforms import weaken
    for f in fs:
        d = weaken(d, "L", f)
    return d


def _allocate_weak(weak, l1, d2):
    """Assign implicit-weakening occurrences to the partition blocks,
    preferring the second block."""
    w1: list[Formula] = []
    w2: list[Formula] = []
    l1_rest, d2_rest = list(l1), list(d2)
    for w in weak or ():
        if w in d2_rest:
            d2_rest.remove(w)
            w2.append(w)
        elif w in l1_rest:
            l1_rest.remove(w)
            w1.append(w)
        else:
            raise PartitionMismatch("weakening content missing from succedent")
    return mset(w1), mset(w2), mset(l1_rest), mset(d2_rest)


def _interp(d: Derivation, g1, g2, l1, d2):
    """Returns (interpolant, left derivation, right derivation)."""
    r = d.rule
    tag = r.rule

    if tag == "Cut":
        raise ContainsCut("interpolation requires a cutfree derivation")

    if tag == "At":
        p = r.formula
        in_g1 = p in g1
        in_l1 = p in l1
        if in_g1 and in_l1:
            return (BOT,
                    make_at(g1, mset_add(l1, BOT), p),
                    make_lbot(mset_add(g2, BOT), d2))
        if in_g1:
            return (p,
                    make_at(g1, mset_add(l1, p), p),
                    make_at(mset_add(g2, p), d2, p))
        if in_l1:
            np = Neg(p)
            return (np,
                    make_rneg(make_at(mset_add(g1, p), l1, p), np),
                    make_lneg(make_at(g2, mset_add(d2, p), p), np))
        nb = Neg(BOT)
        return (nb,
                make_rneg(make_lbot(mset_add(g1, BOT), l1), nb),
                make_lneg(make_at(g2, mset_add(d2, BOT), p), nb))

    if tag == "LBot":
        if Bot() in g1:
            return (BOT,
                    make_lbot(g1, mset_add(l1, BOT)),
                    make_lbot(mset_add(g2, BOT), d2))
        nb = Neg(BOT)
        return (nb,
                make_rneg(make_lbot(mset_add(g1, BOT), l1), nb),
                make_lneg(make_lbot(g2, mset_add(d2, BOT)), nb))

    f = r.formula

    if tag == "LNeg":
        if f in g1:
            phi, l, rr = _interp(d.premises[0], mset_remove(g1, f), g2,
                                 mset_add(l1, f.child), d2)
            return phi, make_lneg(l, f), rr
        phi, l, rr = _interp(d.premises[0], g1, mset_remove(g2, f),
                             l1, mset_add(d2, f.child))
        return phi, l, make_lneg(rr, f)

    if tag == "RNeg":
        if f in l1:
            phi, l, rr = _interp(d.premises[0], mset_add(g1, f.child), g2,
                                 mset_remove(l1, f), d2)
            return phi, make_rneg(l, f), rr
        phi, l, rr = _interp(d.premises[0], g1, mset_add(g2, f.child),
                             l1, mset_remove(d2, f))
        return phi, l, make_rneg(rr, f)

    if tag == "LAnd":
        if f in g1:
            phi, l, rr = _interp(d.premises[0],
                                 mset_add(mset_remove(g1, f), f.left, f.right),
                                 g2, l1, d2)
            return phi, make_land(l, f), rr
        phi, l, rr = _interp(d.premises[0], g1,
                             mset_add(mset_remove(g2, f), f.left, f.right),
                             l1, d2)
        return phi, l, make_land(rr, f)

    if tag == "ROr":
        if f in l1:
            phi, l, rr = _interp(d.premises[0], g1, g2,
                                 mset_add(mset_remove(l1, f), f.left, f.right),
                                 d2)
            return phi, make_ror(l, f), rr
        phi, l, rr = _interp(d.premises[0], g1, g2, l1,
                             mset_add(mset_remove(d2, f), f.left, f.right))
        return phi, l, make_ror(rr, f)

    if tag == "RAnd":
        w1, w2, l1r, d2r = _allocate_weak(r.weak, l1, d2)
        if f in l1r:
            lam1 = mset_remove(l1r, f)
            (a1, la, ra) = _interp(d.premises[0], g1, g2,
                                   mset_add(lam1, f.left), d2r)
            (a2, lb, rb) = _interp(d.premises[1], g1, g2,
                                   mset_add(lam1, f.right), d2r)
            phi = Or(a1, a2)
            left = make_ror(make_rand(_weaken_r(la, (a2,)),
                                      _weaken_r(lb, (a1,)), f, w1), phi)
            right = make_lor(ra, rb, phi, w2)
            return phi, left, right
        d2p = mset_remove(d2r, f)
        (p1, la, ra) = _interp(d.premises[0], g1, g2, l1r,
                               mset_add(d2p, f.left))
        (p2, lb, rb) = _interp(d.premises[1], g1, g2, l1r,
                               mset_add(d2p, f.right))
        phi = And(p1, p2)
        left = make_rand(la, lb, phi, w1)
        right = make_land(make_rand(_weaken_l(ra, (p2,)),
                                    _weaken_l(rb, (p1,)), f, w2), phi)
        return phi, left, right

    if tag == "LOr":
        w1, w2, l1r, d2r = _allocate_weak(r.weak, l1, d2)
        if f in g1:
            g1p = mset_remove(g1, f)
            (a1, la, ra) = _interp(d.premises[0], mset_add(g1p, f.left), g2,
                                   l1r, d2r)
            (a2, lb, rb) = _interp(d.premises[1], mset_add(g1p, f.right), g2,
                                   l1r, d2r)
            phi = Or(a1, a2)
            left = make_ror(make_lor(_weaken_r(la, (a2,)),
                                     _weaken_r(lb, (a1,)), f, w1), phi)
            right = make_lor(ra, rb, phi, w2)
            return phi, left, right
        g2p = mset_remove(g2, f)
        (a1, la, ra) = _interp(d.premises[0], g1, mset_add(g2p, f.left),
                               l1r, d2r)
        (a2, lb, rb) = _interp(d.premises[1], g1, mset_add(g2p, f.right),
                               l1r, d2r)
        phi = And(a1, a2)
        left = make_rand(la, lb, phi, w1)
        right = make_lor(make_land(_weaken_l(ra, (a2,)), phi),
                         make_land(_weaken_l(rb, (a1,)), phi), f, w2)
        return phi, left, right

    if tag == "LGd":
        node = subformula_at(f, r.path)
        fl = substitute_at(f, r.path, node.left)
        fr = substitute_at(f, r.path, node.right)
        if f in g1:
            g1p = mset_remove(g1, f)
            (p1, la, ra) = _interp(d.premises[0], mset_add(g1p, fl), g2, l1, d2)
            (p2, lb, rb) = _interp(d.premises[1], mset_add(g1p, fr), g2, l1, d2)
            if all(is_classical(g) for g in d2):
                phi = Or(p1, p2)
                left = make_ror(make_lgd(_weaken_r(la, (p2,)),
                                         _weaken_r(lb, (p1,)), f, r.path), phi)
                right = make_lor(ra, rb, phi, ())
                return phi, left, right
            phi = Gd(p1, p2)
            left = make_lgd(make_rgd(la, phi, (), "L"),
                            make_rgd(lb, phi, (), "R"), f, r.path)
            right = make_lgd(ra, rb, phi, ())
            return phi, left, right
        g2p = mset_remove(g2, f)
        (p1, la, ra) = _interp(d.premises[0], g1, mset_add(g2p, fl), l1, d2)
        (p2, lb, rb) = _interp(d.premises[1], g1, mset_add(g2p, fr), l1, d2)
        phi = And(p1, p2)
        left = make_rand(la, lb, phi, ())
        right = make_lgd(make_land(_weaken_l(ra, (p2,)), phi),
                         make_land(_weaken_l(rb, (p1,)), phi), f, r.path)
        return phi, left, right

    if tag == "RGd":
        if f not in d2:
            raise PartitionMismatch(
                f"nonclassical principal {render(f)} outside the second "
                f"succedent block")
        node = subformula_at(f, r.path)
        chosen = node.left if r.side == "L" else node.right
        fc = substitute_at(f, r.path, chosen)
        phi, l, rr = _interp(d.premises[0], g1, g2, l1,
                             mset_add(mset_remove(d2, f), fc))
        return phi, l, make_rgd(rr, f, r.path, r.side)

    raise ShapeMismatch(f"interpolation does not handle rule {tag}")


def interpolate_partition(d: Derivation,
                          partition: PartitionSequent) -> InterpolationResult:
    """Extract a sequent interpolant of `partition` from a cutfree
    derivation of its flattening."""
    if not is_cutfree(d):
        raise ContainsCut("interpolation requires a cutfree derivation")
    if not all(is_classical(f) for f in partition.delta1):
        raise NonClassicalLambda1(
            "the first succedent block must be classical")
    if partition.flatten() != d.conclusion:
        raise PartitionMismatch(
            f"partition flattens to {partition.flatten()}, derivation "
            f"concludes {d.conclusion}")
    phi, left, right = _interp(d, partition.gamma1, partition.gamma2,
                               partition.delta1, partition.delta2)
    return InterpolationResult(phi, left, right, polarity_bounds(partition))


def craig_lyndon(phi: Formula, psi: Formula,
                 node_budget: int = 10 ** 6):
    """Interpolant between an entailment's two sides, or NotEntailed with
    a countermodel."""
    out = prove_or_countermodel(Sequent((phi,), (psi,)), node_budget)
    if isinstance(out, Team):
        return NotEntailed(out)
    partition = PartitionSequent((phi,), (), (), (psi,))
    return interpolate_partition(out, partition)


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    failures: tuple[str, ...]

    def __bool__(self):
        return self.ok


def verify_interpolant(result: InterpolationResult,
                       partition: PartitionSequent) -> VerificationReport:
    """Re-check an interpolation result from scratch: both flank
    derivations, their endsequents, oracle validity (within budget), and
    the polarity inclusions."""
    failures: list[str] = []
    phi = result.interpolant
    left_goal = Sequent(partition.gamma1, mset_add(partition.delta1, phi))
    right_goal = Sequent(mset_add(partition.gamma2, phi), partition.delta2)

    for name, deriv, goal in (("left", result.left_derivation, left_goal),
                              ("right", result.right_derivation, right_goal)):
        try:
            check_derivation(deriv)
        except TeamSeqError as e:
            failures.append(f"{name} derivation fails checking: {e}")
            continue
        if deriv.conclusion != goal:
            failures.append(f"{name} derivation concludes {deriv.conclusion}, "
                            f"expected {goal}")

    for name, goal in (("left", left_goal), ("right", right_goal)):
        try:
            if not sequent_valid(goal):
                failures.append(f"{name} sequent {goal} is not valid")
        except ResourceLimit:
            pass  # beyond desk scale; the checked derivation still certifies

    bounds = polarity_bounds(partition)
    pos, neg = signed_props(phi)
    if not pos <= bounds.positive:
        failures.append(f"positive variables {sorted(pos - bounds.positive)} "
                        f"outside the allowed vocabulary")
    if not neg <= bounds.negative:
        failures.append(f"negative variables {sorted(neg - bounds.negative)} "
                        f"outside the allowed vocabulary")
    return VerificationReport(not failures, tuple(failures))
