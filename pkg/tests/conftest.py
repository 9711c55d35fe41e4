import itertools

import numpy as np
import pytest

from subpower import FiniteSemigroup, catalog
from subpower.rees import standard_catalog


def naive_closure(S: FiniteSemigroup, gens):
    """Subsemigroup of S^n generated by gens, by plain fixpoint iteration."""
    table = S.table.tolist()
    gens = [tuple(g) for g in gens]
    closed = set(gens)
    frontier = list(closed)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple(table[a][b] for a, b in zip(x, g))
                if y not in closed:
                    closed.add(y)
                    nxt.append(y)
        frontier = nxt
    return closed


def ideal_classes(S: FiniteSemigroup):
    """Green's classes by comparing principal ideals directly.

    Returns dicts element -> frozenset for xS^1, S^1x, S^1xS^1.
    """
    t = S.table.tolist()
    n = S.size
    right = {x: frozenset([x] + [t[x][a] for a in range(n)]) for x in range(n)}
    left = {x: frozenset([x] + [t[a][x] for a in range(n)]) for x in range(n)}
    two = {}
    for x in range(n):
        s = set(left[x])
        for y in list(left[x]):
            s.update(t[y][a] for a in range(n))
        two[x] = frozenset(s)
    return right, left, two


def partition_from(labels):
    groups = {}
    for x, c in enumerate(labels):
        groups.setdefault(c, set()).add(x)
    return sorted(sorted(g) for g in groups.values())


def partition_by_key(keys: dict):
    groups = {}
    for x, k in keys.items():
        groups.setdefault(k, set()).add(x)
    return sorted(sorted(g) for g in groups.values())


@pytest.fixture(scope="session")
def full_catalog():
    return standard_catalog()


@pytest.fixture(scope="session")
def b2():
    return catalog("brandt_b2")


@pytest.fixture(scope="session")
def b21():
    return catalog("brandt_b2_1")


@pytest.fixture(scope="session")
def a2():
    return catalog("a2")


def all_one_block_matrices(rows, cols):
    """Every one-block 0-1 matrix of the given shape."""
    out = []
    for P in itertools.product((0, 1), repeat=rows * cols):
        P = np.array(P).reshape(rows, cols)
        r = P.any(axis=1)
        c = P.any(axis=0)
        if P[np.ix_(r, c)].all():
            out.append(P)
    return out


def random_one_block_matrix(rng, max_dim=3):
    """Random P whose 1-entries form a (possibly empty) rectangle."""
    rows, cols = rng.randint(1, max_dim), rng.randint(1, max_dim)
    delta = [lam for lam in range(rows) if rng.random() < 0.6]
    J = [i for i in range(cols) if rng.random() < 0.6]
    P = np.zeros((rows, cols), dtype=int)
    P[np.ix_(delta, J)] = 1
    return P


def random_word_target(S, gens, rng, max_len=6):
    word = [rng.randrange(len(gens)) for _ in range(rng.randint(1, max_len))]
    acc = np.array(gens[word[0]])
    for w in word[1:]:
        acc = S.table[acc, np.array(gens[w])]
    return word, tuple(int(x) for x in acc)


def random_one_block_instance(rng, max_dim=3, max_n=4, max_k=4, identity=False):
    """(R, instance) with half the targets drawn from the closure."""
    from subpower import ReesStructure, SmpInstance

    R = ReesStructure(random_one_block_matrix(rng, max_dim), adjoin_identity=identity)
    S = R.semigroup
    n = rng.randint(1, max_n)
    k = rng.randint(1, max_k)
    gens = [tuple(rng.randrange(S.size) for _ in range(n)) for _ in range(k)]
    if rng.random() < 0.5:
        _, target = random_word_target(S, gens, rng)
    else:
        target = tuple(rng.randrange(S.size) for _ in range(n))
    return R, SmpInstance(S, gens, target)
