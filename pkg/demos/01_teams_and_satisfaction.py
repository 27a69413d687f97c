"""Teams, the two disjunctions, and closure properties.

A team is a set of valuations; formulas are evaluated against teams, not
single rows.  The split disjunction `|` asks the team to divide into
subteams covering the disjuncts; the global disjunction `||` asks the
whole team to settle on one disjunct.
"""

from teamseq import (Team, closure_properties, parse_formula, render,
                     satisfies)

both = Team(("p",), frozenset({(1,), (0,)}))   # one row with p, one without
only_p = Team(("p",), frozenset({(1,)}))
empty = Team(("p",), frozenset())

split = parse_formula("p | ~p")
glob = parse_formula("p || ~p")

print("team {p=1, p=0}:")
print(f"  {render(split)} ->", satisfies(both, split))
print(f"  {render(glob)}  ->", satisfies(both, glob))
print("team {p=1}:")
print(f"  {render(glob)}  ->", satisfies(only_p, glob))
print("empty team satisfies everything:", satisfies(empty, glob))

print()
print("closure properties over {p}:")
for text in ("p | ~p", "p || ~p", "bot"):
    rep = closure_properties(parse_formula(text), ("p",))
    print(f"  {text:10s} empty={rep.empty_team} downward={rep.downward_closed}"
          f" union={rep.union_closed} flat={rep.flat}")

print()
print("the global disjunction breaks union closure: each singleton above")
print("settles on a disjunct, but their union settles on neither.")
