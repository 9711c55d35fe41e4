"""
Subpower membership over a one-block Rees matrix semigroup
==========================================================

Compare the breadth-first closure search with the polynomial one-block
algorithm on random instances, then shorten a witness word.
"""

import random

from subpower import (
    ReesStructure,
    SmpInstance,
    check_witness,
    shorten_word,
    solve_closure,
    solve_one_block,
    words_equivalent_rees,
)

# ones exactly on rows {1} x columns {1, 2}
R = ReesStructure([[1, 1, 0], [0, 0, 0]])
S = R.semigroup
print("S_P has", S.size, "elements, block =", R.block)

rng = random.Random(0)
agree = 0
for _ in range(200):
    n = rng.randint(1, 4)
    gens = [tuple(rng.randrange(S.size) for _ in range(n)) for _ in range(3)]
    target = tuple(rng.randrange(S.size) for _ in range(n))
    inst = SmpInstance(S, gens, target)
    agree += solve_one_block(inst, R) == solve_closure(inst).member
print(f"one-block algorithm agrees with the closure on {agree}/200 instances")

# a member instance with a witness from the closure
a = (R.name_index(1, 1), R.name_index(1, 2), R.name_index(2, 1))
b = (R.name_index(1, 2), R.name_index(1, 1), R.name_index(1, 1))
inst = SmpInstance(S, [a, b], tuple(S.table[S.table[a, b], a]))
res = solve_closure(inst)
print("witness:", res.witness, "valid:", check_witness(inst, res.witness))

# long words collapse to short equivalent ones
word = [1, 2, 1, 2, 1, 3, 1, 2, 3, 3, 1, 2, 1]
short = shorten_word(word)
print(word, "->", short, "equivalent:", words_equivalent_rees(word, short))
