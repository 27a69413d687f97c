"""Proof transformations: normal form, cut elimination, resolution split.

Every cutfree derivation can be rearranged into phases: classical rules at
the top, then the right deep rule, then the left deep rule.  Cuts are
eliminated by normalizing both premises, cutting resolution against
resolution inside the classical subsystem, and reassembling the phases.
"""

from teamseq import (check_derivation, cutrank, is_cutfree, is_normal,
                     normalize, eliminate_cuts, parse_formula, parse_sequent,
                     prove_or_countermodel, reassemble, render,
                     resolve_derivation)
from teamseq.calculus import make_cut

d = prove_or_countermodel(parse_sequent("p||q => q||p"))
print("endsequent:", d.conclusion)
res = resolve_derivation(d)
print("classical branches (antecedent resolution -> succedent resolution):")
for xi in sorted(res.branches, key=lambda k: [render(f) for f in k]):
    lhs = ", ".join(render(f) for f in xi)
    rhs = ", ".join(render(f) for f in res.mapping[xi])
    print(f"  {lhs}  =>  {rhs}")
back = reassemble(res)
check_derivation(back)
print("reassembled endsequent matches:", back.conclusion == d.conclusion)

print()
d1 = prove_or_countermodel(parse_sequent("a | (p||q) => p||q, a"))
d2 = prove_or_countermodel(parse_sequent("b, p||q => (b&p) || (b&q)"))
cut = make_cut(d1, d2, parse_formula("p||q"))
print("cut endsequent:", cut.conclusion)
print("cutrank before:", cutrank(cut))
e = eliminate_cuts(cut)
check_derivation(e)
print("after elimination: cutfree =", is_cutfree(e),
      " same endsequent =", e.conclusion == cut.conclusion)

n = normalize(e)
print("normalized: phase-ordered =", is_normal(n),
      " same endsequent =", n.conclusion == e.conclusion)
