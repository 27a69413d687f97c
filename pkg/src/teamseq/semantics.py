"""Brute-force team-semantics oracle.

Teams are sets of valuations over an explicit variable domain.  Everything
here enumerates exhaustively (the split-disjunction clause searches all
covers t = s + u), so it is doubly exponential in the number of variables;
`max_vars` caps that (default 4).  This module is the ground truth against
which the calculus, prover, and transformations are tested.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

from .errors import DomainMismatch, ResourceLimit
from .syntax import (And, Bot, BOT, Formula, Gd, Neg, Or, Prop, Sequent,
                     props)

DEFAULT_MAX_VARS = 4


@dataclass(frozen=True)
class Team:
    """A set of valuations; each valuation is a 0/1 tuple over `domain`."""

    domain: tuple[str, ...]
    members: frozenset[tuple[int, ...]]

    def __post_init__(self):
        object.__setattr__(self, "domain", tuple(self.domain))
        object.__setattr__(self, "members", frozenset(tuple(v) for v in self.members))
        for v in self.members:
            if len(v) != len(self.domain) or any(b not in (0, 1) for b in v):
                raise ValueError(f"valuation {v} does not fit domain {self.domain}")

    def __str__(self):
        rows = ",".join("{" + ",".join(map(str, v)) + "}" for v in sorted(self.members))
        return f"Team({','.join(self.domain)}: {rows})"


def team_to_json(t: Team):
    return {"vars": list(t.domain), "team": sorted(list(v) for v in t.members)}


def team_from_json(obj) -> Team:
    return Team(tuple(obj["vars"]), frozenset(tuple(row) for row in obj["team"]))


def eval_classical(f: Formula, valuation: dict[str, int]) -> bool:
    """Single-valuation truth of a classical formula."""
    match f:
        case Prop(name):
            return bool(valuation[name])
        case Bot():
            return False
        case Neg(c):
            return not eval_classical(c, valuation)
        case And(l, r):
            return eval_classical(l, valuation) and eval_classical(r, valuation)
        case Or(l, r):
            return eval_classical(l, valuation) or eval_classical(r, valuation)
    raise DomainMismatch(f"not classical: {f}")


def big_or(formulas) -> Formula:
    """Fold a multiset into a split disjunction; the empty fold is `bot`."""
    fs = list(formulas)
    if not fs:
        return BOT
    return reduce(Or, fs)


def big_and(formulas) -> Formula:
    fs = list(formulas)
    if not fs:
        return Neg(BOT)
    return reduce(And, fs)


class _Space:
    """Satisfaction sets over all teams on a fixed domain.

    Valuations are indexed 0..2^n-1 (first domain variable = most
    significant bit); a team is a bitmask over valuation indices; the
    satisfaction set of a formula is a bitmask over team masks.
    """

    def __init__(self, domain: tuple[str, ...]):
        self.domain = tuple(domain)
        self.n = len(self.domain)
        self.nvals = 1 << self.n
        self.nteams = 1 << self.nvals
        self.full = (1 << self.nteams) - 1
        self._sets: dict[Formula, int] = {}
        self._memo: dict[tuple[Formula, int], bool] = {}

    def val_bit(self, vindex: int, var: str) -> int:
        i = self.domain.index(var)
        return (vindex >> (self.n - 1 - i)) & 1

    def valuation(self, vindex: int) -> tuple[int, ...]:
        return tuple((vindex >> (self.n - 1 - i)) & 1 for i in range(self.n))

    def team_mask(self, team: Team) -> int:
        if tuple(team.domain) != self.domain:
            raise DomainMismatch(f"team domain {team.domain} != {self.domain}")
        mask = 0
        for v in team.members:
            idx = 0
            for b in v:
                idx = (idx << 1) | b
            mask |= 1 << idx
        return mask

    def team(self, mask: int) -> Team:
        members = frozenset(self.valuation(i) for i in range(self.nvals)
                            if (mask >> i) & 1)
        return Team(self.domain, members)

    def _check_domain(self, f: Formula) -> None:
        extra = props(f) - set(self.domain)
        if extra:
            raise DomainMismatch(f"variables {sorted(extra)} outside domain "
                                 f"{self.domain}")

    # -- single-team satisfaction (memoized, early exit) -------------------
    def sat(self, mask: int, f: Formula) -> bool:
        key = (f, mask)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        match f:
            case Prop(name):
                i = self.domain.index(name)
                out = all((v >> (self.n - 1 - i)) & 1
                          for v in self._members(mask))
            case Bot():
                out = mask == 0
            case Neg(c):
                out = all(not self.sat(1 << v, c) for v in self._members(mask))
            case And(l, r):
                out = self.sat(mask, l) and self.sat(mask, r)
            case Or(l, r):
                out = self._sat_split(mask, l, r)
            case Gd(l, r):
                out = self.sat(mask, l) or self.sat(mask, r)
        self._memo[key] = out
        return out

    def _members(self, mask: int):
        v = 0
        while mask:
            if mask & 1:
                yield v
            mask >>= 1
            v += 1

    def _sat_split(self, mask: int, l: Formula, r: Formula) -> bool:
        # all covers mask = s | u: iterate s over submasks, then u over
        # supersets of mask \ s inside mask.
        s = mask
        while True:
            if self.sat(s, l):
                rest = mask & ~s
                w = s
                while True:
                    if self.sat(rest | w, r):
                        return True
                    if w == 0:
                        break
                    w = (w - 1) & s
            if s == 0:
                return False
            s = (s - 1) & mask

    # -- full satisfaction sets (for sweeps over all teams) ----------------
    def sat_set(self, f: Formula) -> int:
        hit = self._sets.get(f)
        if hit is not None:
            return hit
        match f:
            case Prop(name):
                i = self.domain.index(name)
                bad = 0
                for v in range(self.nvals):
                    if not (v >> (self.n - 1 - i)) & 1:
                        bad |= 1 << v
                out = self._avoiding(bad)
            case Bot():
                out = 1
            case Neg(c):
                sub = self.sat_set(c)
                bad = 0
                for v in range(self.nvals):
                    if (sub >> (1 << v)) & 1:
                        bad |= 1 << v
                out = self._avoiding(bad)
            case And(l, r):
                out = self.sat_set(l) & self.sat_set(r)
            case Gd(l, r):
                out = self.sat_set(l) | self.sat_set(r)
            case Or(l, r):
                out = self._or_set(self.sat_set(l), self.sat_set(r))
        self._sets[f] = out
        return out

    def _avoiding(self, bad_vals: int) -> int:
        """Set of all team masks disjoint from `bad_vals`.

        Submasks of the complement form a product over its bits, so the
        indicator doubles once per allowed valuation.
        """
        out = 1  # the empty team
        for v in range(self.nvals):
            if not (bad_vals >> v) & 1:
                out |= out << (1 << v)
        return out

    def _or_set(self, sl: int, sr: int) -> int:
        """Exact cover image {s | u : s in sl, u in sr} over team masks.

        Counts covers via zeta/Moebius transforms on the subset lattice:
        with A(t) = #{s <= t in sl} and B likewise, the number of pairs
        with union exactly t is sum_{r <= t} (-1)^{|t\\r|} A(r)B(r).
        """
        n_t = self.nteams
        a = [(sl >> t) & 1 for t in range(n_t)]
        b = [(sr >> t) & 1 for t in range(n_t)]
        for i in range(self.nvals):
            bit = 1 << i
            for t in range(n_t):
                if t & bit:
                    a[t] += a[t ^ bit]
                    b[t] += b[t ^ bit]
        p = [x * y for x, y in zip(a, b)]
        for i in range(self.nvals):
            bit = 1 << i
            for t in range(n_t):
                if t & bit:
                    p[t] -= p[t ^ bit]
        out = 0
        for t in range(n_t):
            if p[t]:
                out |= 1 << t
        return out


def _space_for(domain, max_vars: int) -> _Space:
    if len(domain) > max_vars:
        raise ResourceLimit(f"{len(domain)} variables exceeds budget {max_vars}")
    return _Space(tuple(domain))


def satisfies(team: Team, f: Formula) -> bool:
    """Team satisfaction, straight from the defining clauses."""
    if not props(f) <= set(team.domain):
        raise DomainMismatch(f"{sorted(props(f) - set(team.domain))} not in "
                             f"team domain {team.domain}")
    space = _Space(team.domain)
    return space.sat(space.team_mask(team), f)


def sequent_valid(s: Sequent, max_vars: int = DEFAULT_MAX_VARS) -> bool:
    """True iff every team satisfying the antecedent satisfies the split
    disjunction of the succedent, over the sequent's own variables."""
    domain = tuple(sorted(s.props()))
    space = _space_for(domain, max_vars)
    goal = space.sat_set(big_or(s.suc))
    hyp = space.full
    for f in s.ant:
        hyp &= space.sat_set(f)
    return hyp & ~goal == 0


def _ordered_masks(space: _Space) -> list[int]:
    def key(m: int):
        members = tuple(v for v in range(space.nvals) if (m >> v) & 1)
        return (len(members), members)

    return sorted(range(1 << space.nvals), key=key)


def find_countermodel_bruteforce(s: Sequent,
                                 max_vars: int = DEFAULT_MAX_VARS) -> Team | None:
    """First team (by size, then membership order) witnessing invalidity."""
    domain = tuple(sorted(s.props()))
    space = _space_for(domain, max_vars)
    goal = space.sat_set(big_or(s.suc))
    hyp = space.full
    for f in s.ant:
        hyp &= space.sat_set(f)
    bad = hyp & ~goal
    if bad == 0:
        return None
    for m in _ordered_masks(space):
        if (bad >> m) & 1:
            return space.team(m)
    return None


@dataclass(frozen=True)
class ClosureReport:
    empty_team: bool
    downward_closed: bool
    union_closed: bool
    flat: bool


def closure_properties(f: Formula, domain,
                       max_vars: int = DEFAULT_MAX_VARS) -> ClosureReport:
    """Exhaustively check the four team-semantic closure properties."""
    domain = tuple(domain)
    if not props(f) <= set(domain):
        raise DomainMismatch(f"{sorted(props(f) - set(domain))} not in {domain}")
    space = _space_for(domain, max_vars)
    sat = space.sat_set(f)
    nteams = 1 << space.nvals

    empty = bool(sat & 1)

    downward = True
    for t in range(nteams):
        if not (sat >> t) & 1:
            continue
        s = (t - 1) & t
        while True:
            if not (sat >> s) & 1:
                downward = False
                break
            if s == 0:
                break
            s = (s - 1) & t
        if not downward:
            break

    sat_teams = [t for t in range(nteams) if (sat >> t) & 1]
    union = all((sat >> (a | b)) & 1 for a in sat_teams for b in sat_teams)

    flat = True
    for t in range(nteams):
        pointwise = all((sat >> (1 << v)) & 1
                        for v in range(space.nvals) if (t >> v) & 1)
        if bool((sat >> t) & 1) != pointwise:
            flat = False
            break

    # internal consistency: flatness coincides with the three-way conjunction
    assert flat == (empty and downward and union), \
        f"flatness disagreement for {f} on {domain}"
    return ClosureReport(empty, downward, union, flat)
