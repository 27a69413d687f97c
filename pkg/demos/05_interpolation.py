"""Interpolants from cutfree derivations.

A partition sequent splits both sides in two; the extracted interpolant is
derivable from the first flank and suffices for the second, using only
vocabulary shared in the right polarities.  The first succedent block must
be classical; without that restriction interpolants need not exist.
"""

from teamseq import (NotEntailed, craig_lyndon, interpolate_partition,
                     parse_formula, parse_sequent, prove_or_countermodel,
                     render, signed_props, verify_interpolant)
from teamseq.errors import NonClassicalLambda1

part = parse_sequent("(p||q)|r ; ~p => r|s ; q||x")
d = prove_or_countermodel(part.flatten())
res = interpolate_partition(d, part)
print(f"partition:   {part}")
print(f"interpolant: {render(res.interpolant)}")
print("verified:   ", bool(verify_interpolant(res, part)))

print()
out = craig_lyndon(parse_formula("p & q"), parse_formula("p | r"))
print("p & q  entails  p | r  via:", render(out.interpolant))
pos, neg = signed_props(out.interpolant)
print("  signed vocabulary:", sorted(pos), "positive,", sorted(neg),
      "negative")

out = craig_lyndon(parse_formula("p"), parse_formula("q"))
assert isinstance(out, NotEntailed)
print("p does not entail q; countermodel:", out.countermodel)

print()
bad = parse_sequent(
    "p||~p ; q||~q => (p||~p)&(q||~q)&r ; (p||~p)&(q||~q)&~r")
d = prove_or_countermodel(bad.flatten())
try:
    interpolate_partition(d, bad)
except NonClassicalLambda1 as e:
    print("nonclassical first succedent block rejected:", e)
    print("(and indeed no interpolant exists for this partition at all)")
