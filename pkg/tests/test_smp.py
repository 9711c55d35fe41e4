import itertools
import random

import pytest

from subpower import (
    BudgetExceeded,
    ReesStructure,
    SmpInstance,
    check_witness,
    compress_witness_one_block_identity,
    edge_set,
    generated_subpower,
    np_certificate,
    shorten_word,
    solve_closure,
    solve_one_block,
    words_equivalent_rees,
)
from subpower import smp
from subpower.smp import one_block_witness, shortening_bound

from conftest import all_one_block_matrices, naive_closure, random_one_block_instance


@pytest.fixture
def corner():
    """S_P for P = (1 0; 0 0) and the generator ([1,1],[1,2])."""
    R = ReesStructure([[1, 0], [0, 0]])
    a = (R.name_index(1, 1), R.name_index(1, 2))
    return R, a


def test_generator_is_target(b2):
    S = b2.semigroup
    inst = SmpInstance(S, [(0, 1), (2, 3)], (2, 3))
    res = solve_closure(inst)
    assert res.member and res.witness == [1]


def test_corner_member(corner):
    R, a = corner
    S = R.semigroup
    inst = SmpInstance(S, [a], (R.name_index(1, 1), S.zero))
    res = solve_closure(inst)
    assert res.member and res.witness == [0, 0]
    assert solve_one_block(inst, R)
    assert check_witness(inst, one_block_witness(inst, R))


def test_corner_non_member(corner):
    R, a = corner
    S = R.semigroup
    inst = SmpInstance(S, [a], (R.name_index(1, 2), S.zero))
    res = solve_closure(inst)
    assert not res.member and res.witness is None and res.closure_size == 2
    assert not solve_one_block(inst, R)


def test_instance_validation(b2):
    S = b2.semigroup
    with pytest.raises(ValueError):
        SmpInstance(S, [], (0,))
    with pytest.raises(ValueError):
        SmpInstance(S, [(0, 1)], (0,))
    with pytest.raises(ValueError):
        SmpInstance(S, [(0, 9)], (0, 0))


def test_check_witness(b2):
    S = b2.semigroup
    inst = SmpInstance(S, [(0, 1)], (3, 3))
    assert not check_witness(inst, [0])
    with pytest.raises(IndexError):
        check_witness(inst, [1])
    with pytest.raises(ValueError):
        check_witness(inst, [])


def test_closure_matches_naive_oracle(full_catalog):
    rng = random.Random(3)
    for entry in full_catalog:
        S = entry.semigroup
        for _ in range(8):
            n = rng.randint(1, 3)
            gens = [tuple(rng.randrange(S.size) for _ in range(n)) for _ in range(rng.randint(1, 3))]
            closed = naive_closure(S, gens)
            if len(closed) > 5000:
                continue
            got = {tuple(row) for row in generated_subpower(S, gens).tolist()}
            assert got == closed
            for target in list(closed)[:5] + [tuple(rng.randrange(S.size) for _ in range(n))]:
                res = solve_closure(SmpInstance(S, gens, target))
                assert res.member == (target in closed)
                if res.member:
                    assert check_witness(SmpInstance(S, gens, target), res.witness)
                else:
                    assert res.closure_size == len(closed)


def brute_least_word(inst, max_len=8):
    k = len(inst.generators)
    for length in range(1, max_len + 1):
        for word in itertools.product(range(k), repeat=length):
            if inst.evaluate(word) == inst.target:
                return list(word)
    return None


def test_witness_is_shortest_then_lexicographic(b21):
    S = b21.semigroup
    rng = random.Random(5)
    checked = 0
    for _ in range(150):
        n = rng.randint(1, 3)
        gens = [tuple(rng.randrange(S.size) for _ in range(n)) for _ in range(rng.randint(1, 3))]
        target = tuple(rng.randrange(S.size) for _ in range(n))
        inst = SmpInstance(S, gens, target)
        res = solve_closure(inst)
        if res.member and len(res.witness) <= 6:
            assert res.witness == brute_least_word(inst, len(res.witness))
            checked += 1
    assert checked > 20


def test_storage_modes_agree(monkeypatch, b21):
    S = b21.semigroup
    rng = random.Random(8)
    cases = []
    for _ in range(40):
        n = rng.randint(1, 4)
        gens = [tuple(rng.randrange(S.size) for _ in range(n)) for _ in range(rng.randint(1, 3))]
        target = tuple(rng.randrange(S.size) for _ in range(n))
        cases.append(SmpInstance(S, gens, target))
    dense = [solve_closure(c) for c in cases]
    tuples = [smp._solve_closure_tuples(c, 10**6) for c in cases]
    monkeypatch.setattr(smp, "_DENSE_LIMIT", 0)
    sparse = [solve_closure(c) for c in cases]
    for a, b, c in zip(dense, sparse, tuples):
        assert a.to_json() == b.to_json() == c.to_json()


def test_huge_power_uses_tuple_search(b2):
    S = b2.semigroup
    n = 30  # 5^30 does not fit in packed 64-bit codes
    e, x = S.index("[1,1]"), S.index("[1,2]")
    gens = [(e,) * n, (x,) * n]
    res = solve_closure(SmpInstance(S, gens, (S.zero,) * n))
    assert res.member and res.witness == [1, 0]  # [1,2][1,1] = 0


def test_budget_errors(b21):
    S = b21.semigroup
    gens = [(0, 1, 2, 3), (3, 2, 1, 0), (1, 5, 5, 2)]
    inst = SmpInstance(S, gens, (4, 4, 4, 5))
    with pytest.raises(BudgetExceeded) as info:
        solve_closure(inst, limit=3)
    assert info.value.budget == 3
    with pytest.raises(ValueError):
        solve_closure(inst, limit=0)


def test_budget_monotone(b21):
    S = b21.semigroup
    rng = random.Random(9)
    for _ in range(30):
        n = rng.randint(1, 4)
        gens = [tuple(rng.randrange(S.size) for _ in range(n)) for _ in range(rng.randint(1, 3))]
        inst = SmpInstance(S, gens, tuple(rng.randrange(S.size) for _ in range(n)))
        seen_member = False
        for limit in (2, 5, 20, 100, 10**4):
            try:
                res = solve_closure(inst, limit)
            except BudgetExceeded:
                assert not seen_member
                continue
            assert res.closure_size <= min(S.size**n, limit)
            if seen_member:
                assert res.member
            seen_member = seen_member or res.member


# -- one-block algorithm -------------------------------------------------------


def test_one_block_exhaustive_2x2():
    count = 0
    for P in all_one_block_matrices(2, 2):
        R = ReesStructure(P)
        S = R.semigroup
        for n in (1, 2):
            tuples = list(itertools.product(range(S.size), repeat=n))
            for k in (1, 2):
                for gens in itertools.combinations(tuples, k):
                    closed = {tuple(r) for r in generated_subpower(S, gens).tolist()}
                    for b in tuples[:: 3 if n == 2 else 1]:
                        inst = SmpInstance(S, gens, b)
                        word = one_block_witness(inst, R)
                        assert (word is not None) == (b in closed)
                        if word is not None:
                            assert check_witness(inst, word)
                        count += 1
    assert count > 10_000


def test_one_block_random_against_closure():
    rng = random.Random(12)
    for _ in range(300):
        R, inst = random_one_block_instance(rng)
        assert solve_one_block(inst, R) == solve_closure(inst).member


def test_one_block_rejects():
    A2 = ReesStructure([[1, 1], [1, 0]])
    inst = SmpInstance(A2.semigroup, [(0,)], (0,))
    with pytest.raises(ValueError):
        solve_one_block(inst, A2)
    R1 = ReesStructure([[1]], adjoin_identity=True)
    inst = SmpInstance(R1.semigroup, [(0,)], (0,))
    with pytest.raises(ValueError):
        solve_one_block(inst, R1)
    other = ReesStructure([[1, 1]])
    inst = SmpInstance(ReesStructure([[1], [1]]).semigroup, [(0,)], (0,))
    with pytest.raises(ValueError):
        solve_one_block(inst, other)


# -- words ---------------------------------------------------------------------


def test_edge_set_examples():
    e = edge_set([1])
    assert e.first == e.last == 1 and e.edges == frozenset()
    assert edge_set([1, 2, 1, 2, 1]).edges == {(1, 2), (2, 1)}
    assert edge_set([1, 1]).edges == {(1, 1)}
    with pytest.raises(ValueError):
        edge_set([])


def test_words_equivalent_examples():
    assert words_equivalent_rees([1, 2, 3], [1, 2, 3])
    assert words_equivalent_rees([1, 2, 1, 2, 1], [1, 2, 1])
    assert not words_equivalent_rees([1, 2], [2, 1])


def test_shorten_examples():
    assert shorten_word([1, 2, 1, 2, 1]) == [1, 2, 1]
    assert shorten_word([1]) == [1]
    for length in range(2, 12):
        assert len(shorten_word([1] * length)) <= shortening_bound(1)


def evaluate_letters(S, word, assignment):
    return S.product([assignment[x] for x in word])


def test_shorten_random_words(b2, a2):
    rng = random.Random(21)
    for _ in range(300):
        k = rng.randint(1, 4)
        word = [rng.randint(1, k) for _ in range(rng.randint(1, 60))]
        short = shorten_word(word)
        assert len(short) <= min(len(word), shortening_bound(k))
        assert words_equivalent_rees(word, short)
        for S in (b2.semigroup, a2.semigroup):
            for _ in range(20):
                assign = {x: rng.randrange(S.size) for x in range(1, k + 1)}
                assert evaluate_letters(S, word, assign) == evaluate_letters(S, short, assign)


def test_np_certificate():
    rng = random.Random(31)
    found = 0
    for _ in range(200):
        R, inst = random_one_block_instance(rng)
        cert = np_certificate(inst, R)
        member = solve_closure(inst).member
        assert (cert is not None) == member
        if cert is not None:
            found += 1
            assert check_witness(inst, cert)
            assert len(cert) <= shortening_bound(len(inst.generators))
    assert found > 50


def test_np_certificate_non_rees_matrix_rejected():
    R1 = ReesStructure([[1]], adjoin_identity=True)
    with pytest.raises(ValueError):
        np_certificate(SmpInstance(R1.semigroup, [(0,)], (0,)), R1)


# -- compression -----------------------------------------------------------------


def test_compress_example():
    R = ReesStructure([[1]], adjoin_identity=True)
    S = R.semigroup
    p, one = R.name_index(1, 1), R.one_index
    inst = SmpInstance(S, [(p, one), (one, one)], (p, one))
    assert compress_witness_one_block_identity(inst, R, [0, 1, 1, 0]) == [0, 0]


def test_compress_trivial_cases():
    R = ReesStructure([[1, 0], [0, 0]], adjoin_identity=True)
    S = R.semigroup
    inst = SmpInstance(S, [(0, 1), (R.one_index, 0)], (0, 1))
    assert compress_witness_one_block_identity(inst, R, [0]) == [0]
    with pytest.raises(ValueError):
        compress_witness_one_block_identity(inst, R, [1])


def test_compress_lone_zero():
    R = ReesStructure([[1]], adjoin_identity=True)
    S = R.semigroup
    one, z = R.one_index, R.zero_index
    inst = SmpInstance(S, [(z, one), (one, 0)], (z, 0))
    out = compress_witness_one_block_identity(inst, R, [1, 0, 1])
    assert check_witness(inst, out) and len(out) <= 4


def test_compress_random():
    rng = random.Random(41)
    done = 0
    while done < 200:
        R, inst = random_one_block_instance(rng, identity=True)
        res = solve_closure(inst)
        if not res.member:
            continue
        for word in (res.witness, res.witness + [w for w in res.witness]):
            if not check_witness(inst, word):
                continue
            out = compress_witness_one_block_identity(inst, R, word)
            assert check_witness(inst, out)
            assert len(out) <= max(2 * inst.n, 1) or len(out) == len(word) <= 1
        done += 1


def test_instance_to_json(b2):
    inst = SmpInstance(b2.semigroup, [(0, 1)], (0, 4))
    data = smp.instance_to_json(inst, "brandt_b2")
    assert data == {"semigroup": "brandt_b2", "n": 2, "generators": [[0, 1]], "target": [0, 4]}
    assert smp.instance_to_json(inst)["semigroup"]["table"] == b2.semigroup.table.tolist()


def test_compress_all_identity_target():
    R = ReesStructure([[1, 0]], adjoin_identity=True)
    S = R.semigroup
    one = R.one_index
    inst = SmpInstance(S, [(one, one), (0, one)], (one, one))
    assert compress_witness_one_block_identity(inst, R, [0, 0, 0, 0, 0]) == [0]
