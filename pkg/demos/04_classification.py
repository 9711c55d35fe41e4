"""
Complexity verdicts for catalog semigroups
==========================================

Each verdict carries elements that re-verify by direct multiplication.
"""

from subpower import catalog, classify, verify_verdict

names = [
    "brandt_b2",
    "a2",
    "brandt_b2_1",
    "a2_1",
    "rees:11,11",
    "rees_1:11,11",
    "rees_1:10,00",
    "full_transformation:3",
    "symmetric_inverse:2",
    "matrix_semigroup:2",
    "cyclic_group:2",
]

for name in names:
    entry = catalog(name)
    S = entry.semigroup
    v = classify(S, entry.rees)
    ev = {k: S.name(x) for k, x in v.evidence.items() if k in "rstn" and len(k) == 1}
    ok = verify_verdict(S, v, entry.rees)
    print(f"{name:24s} {v.klass.value:18s} evidence {ev}  re-verified={ok}")
