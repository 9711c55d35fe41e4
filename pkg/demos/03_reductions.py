"""
SAT and QBF as subpower membership
==================================

Encode small formulas as membership instances and watch the closure
search reproduce their truth values.
"""

from subpower import (
    CnfFormula,
    Q3SatFormula,
    catalog,
    check_witness,
    eval_q3sat,
    find_nphard_triple,
    q3sat_to_smp,
    q3sat_witness,
    sat_to_smp,
    solve_closure,
)
from subpower.reduce import satisfying_assignment, sat_witness

B2 = catalog("brandt_b2").semigroup
triple = find_nphard_triple(B2)
print("rs = st = s triple in B2:", [B2.name(x) for x in triple])

for clauses in ([[1, -2], [2, 3], [-1, -3]], [[1], [-1, 2], [-2]]):
    F = CnfFormula(max(abs(l) for c in clauses for l in c), clauses)
    inst = sat_to_smp(B2, triple, F)
    z = satisfying_assignment(F)
    res = solve_closure(inst)
    print(f"{clauses}: satisfiable={z is not None}, member={res.member}, power n={inst.n}")
    if z is not None:
        print("   assignment word", sat_witness(F, z), "valid:", check_witness(inst, sat_witness(F, z)))

# forall x exists y: (x or y) and (not x or not y)
entry = catalog("brandt_b2_1")
F = Q3SatFormula(1, [(1, 2, 2), (-1, -2, -2)])
inst = q3sat_to_smp(entry.semigroup, entry.pspace_triple, F)
res = solve_closure(inst)
print("QBF true:", eval_q3sat(F), " member:", res.member, " closure states:", res.closure_size)
word = q3sat_witness(F)
print("strategy word", word, "valid:", check_witness(inst, word))
