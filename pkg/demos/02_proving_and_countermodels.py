"""Deciding sequents: cutfree derivations or explicit countermodels.

Sequent commas mean conjunction on the left and split disjunction on the
right.  The prover either assembles a cutfree derivation or lifts a
countermodel team out of a failed branch.
"""

import json

from teamseq import (Derivation, check_derivation, derivation_to_json,
                     find_countermodel_bruteforce, height, parse_sequent,
                     prove_or_countermodel, team_to_json)

invalid = parse_sequent("p||(p|~p) => p||~p")
out = prove_or_countermodel(invalid)
print(f"{invalid}")
print("  countermodel:", json.dumps(team_to_json(out)))
print("  brute force agrees:",
      find_countermodel_bruteforce(invalid) == out)

print()
deep = parse_sequent(
    "(r&x)|(((p&x)||(q&x))|(y&x)) => (x&(r|(p|y)))||(x&(r|(q|y)))")
d = prove_or_countermodel(deep)
assert isinstance(d, Derivation)
check_derivation(d)
print(f"{deep}")
print(f"  proved: derivation of height {height(d)}, checker accepts")
print("  (a shallow rule for the global disjunction cannot derive this;")
print("   the deep rules reach inside the split disjunction)")

print()
valid = parse_sequent("p => p || ~p")
d = prove_or_countermodel(valid)
print(f"{valid}")
print("  derivation JSON:", json.dumps(derivation_to_json(d)))
