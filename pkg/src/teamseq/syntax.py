"""Formulas, occurrence paths, sequents, and their text/JSON forms.

The language has a classical core (variables, `bot`, `~`, `&`, and the
split disjunction `|`) extended with a second, global disjunction `||`.
Negation applies to classical formulas only, so `||` never occurs below
`~`; constructors enforce this.

Operator precedence is `~` > `&` > `|` > `||`, binary operators associate
to the right.  `render` emits minimal parentheses and round-trips through
`parse_formula`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .errors import InvalidPath, NonClassicalNegation, ParseError

_VAR_RE = re.compile(r"[a-z][a-zA-Z0-9_]*")


class Formula:
    """Base class; concrete nodes are Prop, Bot, Neg, And, Or, Gd."""

    __slots__ = ()


@dataclass(frozen=True)
class Prop(Formula):
    name: str

    def __post_init__(self):
        if not _VAR_RE.fullmatch(self.name):
            raise ValueError(f"bad variable name: {self.name!r}")


@dataclass(frozen=True)
class Bot(Formula):
    pass


@dataclass(frozen=True)
class Neg(Formula):
    child: Formula

    def __post_init__(self):
        if not is_classical(self.child):
            raise NonClassicalNegation(
                f"negation of nonclassical formula: {render(self.child)}")


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Gd(Formula):
    """Global (question-forming) disjunction, written `||`."""

    left: Formula
    right: Formula


BOT = Bot()


def children(f: Formula) -> tuple[Formula, ...]:
    match f:
        case Prop() | Bot():
            return ()
        case Neg(c):
            return (c,)
        case And(l, r) | Or(l, r) | Gd(l, r):
            return (l, r)
    raise TypeError(f"not a formula: {f!r}")


@lru_cache(maxsize=None)
def is_classical(f: Formula) -> bool:
    """True iff no global disjunction occurs in f."""
    if isinstance(f, Gd):
        return False
    return all(is_classical(c) for c in children(f))


@lru_cache(maxsize=None)
def props(f: Formula) -> frozenset[str]:
    if isinstance(f, Prop):
        return frozenset({f.name})
    out: frozenset[str] = frozenset()
    for c in children(f):
        out |= props(c)
    return out


def signed_props(f: Formula) -> tuple[frozenset[str], frozenset[str]]:
    """Variables with a positive (even-negation) / negative occurrence."""
    pos: set[str] = set()
    neg: set[str] = set()

    def walk(g: Formula, parity: bool) -> None:
        match g:
            case Prop(name):
                (pos if parity else neg).add(name)
            case Bot():
                pass
            case Neg(c):
                walk(c, not parity)
            case And(l, r) | Or(l, r) | Gd(l, r):
                walk(l, parity)
                walk(r, parity)

    walk(f, True)
    return frozenset(pos), frozenset(neg)


def symbol_count(f: Formula) -> int:
    """Number of atom and connective occurrences (parentheses excluded)."""
    return 1 + sum(symbol_count(c) for c in children(f))


# ---------------------------------------------------------------------------
# Occurrence paths

OccurrencePath = tuple  # sequence of child indices; () addresses the root


def subformula_at(f: Formula, path) -> Formula:
    cur = f
    for i, step in enumerate(path):
        kids = children(cur)
        if step < 0 or step >= len(kids):
            raise InvalidPath(f"path {list(path)} invalid at step {i} in {render(f)}")
        cur = kids[step]
    return cur


def substitute_at(f: Formula, path, replacement: Formula) -> Formula:
    """Replace exactly the occurrence addressed by `path` with `replacement`."""
    if not path:
        return replacement
    step, rest = path[0], tuple(path[1:])
    match f:
        case Neg(c):
            if step != 0:
                raise InvalidPath(f"path step {step} at a negation")
            return Neg(substitute_at(c, rest, replacement))
        case And(l, r) | Or(l, r) | Gd(l, r):
            if step == 0:
                l = substitute_at(l, rest, replacement)
            elif step == 1:
                r = substitute_at(r, rest, replacement)
            else:
                raise InvalidPath(f"path step {step} at a binary node")
            return type(f)(l, r)
    raise InvalidPath(f"path descends below a leaf in {render(f)}")


def gd_paths(f: Formula) -> tuple[tuple[int, ...], ...]:
    """Paths of all global-disjunction occurrences, in left-to-right
    (infix-position) order; the k-th path carries label k."""
    out: list[tuple[int, ...]] = []

    def walk(g: Formula, prefix: tuple[int, ...]) -> None:
        match g:
            case And(l, r) | Or(l, r):
                walk(l, prefix + (0,))
                walk(r, prefix + (1,))
            case Gd(l, r):
                walk(l, prefix + (0,))
                out.append(prefix)
                walk(r, prefix + (1,))
            case _:
                pass

    walk(f, ())
    return tuple(out)


def gd_count(f: Formula) -> int:
    return len(gd_paths(f))


# ---------------------------------------------------------------------------
# Rendering

_PREC = {Gd: 1, Or: 2, And: 3, Neg: 4, Prop: 5, Bot: 5}
_OPS = {Gd: "||", Or: "|", And: "&"}


@lru_cache(maxsize=None)
def render(f: Formula) -> str:
    return _render(f, 0)


def _render(f: Formula, ctx: int) -> str:
    prec = _PREC[type(f)]
    match f:
        case Prop(name):
            return name
        case Bot():
            return "bot"
        case Neg(c):
            s = "~" + _render(c, prec)
        case And(l, r) | Or(l, r) | Gd(l, r):
            s = f"{_render(l, prec + 1)} {_OPS[type(f)]} {_render(r, prec)}"
    return f"({s})" if prec < ctx else s


# ---------------------------------------------------------------------------
# Multisets of formulas (canonical sorted tuples)

Multiset = tuple  # tuple[Formula, ...] sorted by rendered string


def mset(items) -> tuple[Formula, ...]:
    return tuple(sorted(items, key=render))


def mset_add(m, *items) -> tuple[Formula, ...]:
    return mset(m + tuple(items))


def mset_remove(m, item) -> tuple[Formula, ...]:
    """Remove one occurrence of `item` (must be present)."""
    out = list(m)
    out.remove(item)
    return tuple(out)


def mset_sub(m, other) -> tuple[Formula, ...]:
    """Multiset difference; every element of `other` must occur in `m`."""
    out = list(m)
    for x in other:
        out.remove(x)
    return tuple(out)


def mset_leq(small, big) -> bool:
    """Multiset inclusion."""
    pool = list(big)
    for x in small:
        if x not in pool:
            return False
        pool.remove(x)
    return True


# ---------------------------------------------------------------------------
# Sequents

@dataclass(frozen=True)
class Sequent:
    ant: tuple[Formula, ...]
    suc: tuple[Formula, ...]

    def __post_init__(self):
        object.__setattr__(self, "ant", mset(self.ant))
        object.__setattr__(self, "suc", mset(self.suc))

    def props(self) -> frozenset[str]:
        out: frozenset[str] = frozenset()
        for f in self.ant + self.suc:
            out |= props(f)
        return out

    def is_classical(self) -> bool:
        return all(is_classical(f) for f in self.ant + self.suc)

    def __str__(self):
        return render_sequent(self)


@dataclass(frozen=True)
class PartitionSequent:
    gamma1: tuple[Formula, ...]
    gamma2: tuple[Formula, ...]
    delta1: tuple[Formula, ...]
    delta2: tuple[Formula, ...]

    def __post_init__(self):
        for field in ("gamma1", "gamma2", "delta1", "delta2"):
            object.__setattr__(self, field, mset(getattr(self, field)))

    def flatten(self) -> Sequent:
        return Sequent(self.gamma1 + self.gamma2, self.delta1 + self.delta2)

    def __str__(self):
        return render_partition(self)


def render_sequent(s: Sequent) -> str:
    left = ", ".join(render(f) for f in s.ant)
    right = ", ".join(render(f) for f in s.suc)
    return f"{left} => {right}".strip()


def render_partition(p: PartitionSequent) -> str:
    def side(a, b):
        return f"{', '.join(map(render, a))} ; {', '.join(map(render, b))}"

    return f"{side(p.gamma1, p.gamma2)} => {side(p.delta1, p.delta2)}".strip()


# ---------------------------------------------------------------------------
# Parsing

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<arrow>=>)|(?P<gd>\|\|)|(?P<or>\|)|(?P<and>&)|(?P<neg>~)"
    r"|(?P<lpar>\()|(?P<rpar>\))|(?P<comma>,)|(?P<semi>;)"
    r"|(?P<word>[A-Za-z][A-Za-z0-9_]*))"
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"unexpected character {text[pos]!r} at {pos}",
                             position=pos)
        kind = m.lastgroup
        value = m.group(m.lastgroup)
        tokens.append((kind, value, m.start(m.lastgroup)))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {kind} at position {tok[2]}, got {tok[1]!r}",
                             position=tok[2], expected=kind)
        return tok

    # precedence-climbing with right associativity
    def formula(self) -> Formula:
        return self.gd()

    def gd(self) -> Formula:
        left = self.disj()
        if self.peek()[0] == "gd":
            self.next()
            return Gd(left, self.gd())
        return left

    def disj(self) -> Formula:
        left = self.conj()
        if self.peek()[0] == "or":
            self.next()
            return Or(left, self.disj())
        return left

    def conj(self) -> Formula:
        left = self.neg()
        if self.peek()[0] == "and":
            self.next()
            return And(left, self.conj())
        return left

    def neg(self) -> Formula:
        tok = self.peek()
        if tok[0] == "neg":
            self.next()
            child = self.neg()
            if not is_classical(child):
                raise NonClassicalNegation(
                    f"`~` scopes over `||` at position {tok[2]}")
            return Neg(child)
        return self.atom()

    def atom(self) -> Formula:
        kind, value, pos = self.next()
        if kind == "word":
            if value == "bot":
                return BOT
            if not _VAR_RE.fullmatch(value):
                raise ParseError(f"bad variable name {value!r} at {pos}",
                                 position=pos)
            return Prop(value)
        if kind == "lpar":
            f = self.formula()
            self.expect("rpar")
            return f
        raise ParseError(f"expected a formula at position {pos}, got {value!r}",
                         position=pos, expected="formula")

    def formula_list(self) -> list[Formula]:
        if self.peek()[0] in ("arrow", "semi", "eof"):
            return []
        out = [self.formula()]
        while self.peek()[0] == "comma":
            self.next()
            out.append(self.formula())
        return out


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    f = p.formula()
    p.expect("eof")
    return f


def parse_sequent(text: str):
    """Parse `G => D`, or the partitioned form `G1 ; G2 => D1 ; D2`.

    Comma-separated formulas form multisets (duplicates kept); empty sides
    and empty partition blocks are allowed.  Returns a Sequent, or a
    PartitionSequent when `;` is present.
    """
    p = _Parser(text)
    ant1 = p.formula_list()
    partitioned = p.peek()[0] == "semi"
    ant2: list[Formula] = []
    if partitioned:
        p.next()
        ant2 = p.formula_list()
    p.expect("arrow")
    suc1 = p.formula_list()
    suc2: list[Formula] = []
    if partitioned:
        p.expect("semi")
        suc2 = p.formula_list()
    elif p.peek()[0] == "semi":
        raise ParseError("partition marker `;` on one side only",
                         position=p.peek()[2])
    p.expect("eof")
    if partitioned:
        return PartitionSequent(tuple(ant1), tuple(ant2), tuple(suc1), tuple(suc2))
    return Sequent(tuple(ant1), tuple(suc1))


# ---------------------------------------------------------------------------
# JSON encoding

def formula_to_json(f: Formula):
    match f:
        case Prop(name):
            return {"op": "prop", "name": name}
        case Bot():
            return {"op": "bot"}
        case Neg(c):
            return {"op": "neg", "c": formula_to_json(c)}
        case And(l, r):
            return {"op": "and", "l": formula_to_json(l), "r": formula_to_json(r)}
        case Or(l, r):
            return {"op": "or", "l": formula_to_json(l), "r": formula_to_json(r)}
        case Gd(l, r):
            return {"op": "gd", "l": formula_to_json(l), "r": formula_to_json(r)}
    raise TypeError(f"not a formula: {f!r}")


def formula_from_json(obj) -> Formula:
    op = obj["op"]
    if op == "prop":
        return Prop(obj["name"])
    if op == "bot":
        return BOT
    if op == "neg":
        return Neg(formula_from_json(obj["c"]))
    binops = {"and": And, "or": Or, "gd": Gd}
    if op in binops:
        return binops[op](formula_from_json(obj["l"]), formula_from_json(obj["r"]))
    raise ParseError(f"unknown formula op {op!r}")


def sequent_to_json(s: Sequent):
    return {"ant": [formula_to_json(f) for f in s.ant],
            "suc": [formula_to_json(f) for f in s.suc]}


def sequent_from_json(obj) -> Sequent:
    return Sequent(tuple(formula_from_json(x) for x in obj["ant"]),
                   tuple(formula_from_json(x) for x in obj["suc"]))
