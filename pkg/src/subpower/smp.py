"""Subpower membership: instances, solvers, and witness words.

A witness is a nonempty list of generator indices whose left-to-right
product equals the target tuple.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Hashable, Optional, Sequence

import numpy as np

from .rees import ReesStructure, one_block
from .semigroup import FiniteSemigroup, PowerTuple

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 20_000_000

# dense visited bitmap while |S|^n stays below this
_DENSE_LIMIT = 1 << 27
_CHUNK = 1 << 15


class BudgetExceeded(RuntimeError):
    """The closure search touched more states than allowed."""

    def __init__(self, budget: int, explored: int):
        super().__init__(f"budget exceeded: more than {budget} states (explored {explored})")
        self.budget = budget
        self.explored = explored


@dataclass(frozen=True, eq=False)
class SmpInstance:
    semigroup: FiniteSemigroup
    generators: tuple[PowerTuple, ...]
    target: PowerTuple

    def __init__(self, semigroup: FiniteSemigroup, generators, target):
        gens = tuple(tuple(int(x) for x in g) for g in generators)
        target = tuple(int(x) for x in target)
        if not gens:
            raise ValueError("an SMP instance needs at least one generator")
        n = len(target)
        for g in gens:
            if len(g) != n:
                raise ValueError(f"generator length {len(g)} differs from target length {n}")
        for t in gens + (target,):
            if any(not (0 <= x < semigroup.size) for x in t):
                raise ValueError("tuple coordinate out of range for the ambient semigroup")
        object.__setattr__(self, "semigroup", semigroup)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "target", target)

    @property
    def n(self) -> int:
        return len(self.target)

    def __eq__(self, other):
        if not isinstance(other, SmpInstance):
            return NotImplemented
        return self.semigroup == other.semigroup and self.generators == other.generators and self.target == other.target

    __hash__ = None

    def evaluate(self, word: Sequence[int]) -> PowerTuple:
        if len(word) == 0:
            raise ValueError("empty word")
        k = len(self.generators)
        for w in word:
            if not (0 <= w < k):
                raise IndexError(f"generator index {w} out of range (have {k})")
        t = self.semigroup.table
        acc = np.array(self.generators[word[0]], dtype=np.intp)
        for w in word[1:]:
            acc = t[acc, np.asarray(self.generators[w], dtype=np.intp)]
        return tuple(int(x) for x in acc)


@dataclass
class ClosureResult:
    member: bool
    witness: Optional[list[int]]
    closure_size: int

    def to_json(self) -> dict:
        return {"member": self.member, "witness": self.witness, "closure_size": self.closure_size}


def check_witness(inst: SmpInstance, word: Sequence[int]) -> bool:
    return inst.evaluate(list(word)) == inst.target


# -- closure search --------------------------------------------------------


class _Visited:
    def __init__(self, total: int):
        self.dense = total <= _DENSE_LIMIT
        if self.dense:
            self.bits = np.zeros(total, dtype=bool)
        else:
            self.seen: set = set()

    def filter_new(self, codes: np.ndarray) -> np.ndarray:
        """Mask of codes not yet visited."""
        if self.dense:
            return ~self.bits[codes]
        return np.fromiter((int(c) not in self.seen for c in codes), dtype=bool, count=len(codes))

    def add(self, codes: np.ndarray):
        if self.dense:
            self.bits[codes] = True
        else:
            self.seen.update(int(c) for c in codes)


def solve_closure(inst: SmpInstance, limit: int = DEFAULT_BUDGET) -> ClosureResult:
    """Breadth-first closure of the generators inside S^n.

    States are expanded layer by layer, parents in discovery order and
    generators in index order, so the first word found for the target is
    the shortest one and lexicographically least among the shortest.
    ``closure_size`` is the full closure size on a negative answer and the
    number of states discovered so far on a positive one.
    """
    if limit <= 0:
        raise ValueError("state budget must be positive")
    S, n = inst.semigroup, inst.n
    if n == 0:
        return ClosureResult(True, [0], 1)
    if S.size**n >= 2**62:
        return _solve_closure_tuples(inst, limit)
    layers, explored, hit = _bfs(S.table, np.array(inst.generators, dtype=np.int64), inst.target, limit)
    if hit is None:
        return ClosureResult(False, None, explored)
    return ClosureResult(True, _reconstruct(layers, hit), explored)


def generated_subpower(S: FiniteSemigroup, generators, limit: int = DEFAULT_BUDGET) -> np.ndarray:
    """All elements of the subsemigroup of S^n generated by ``generators``.

    Rows of the returned array are tuples, in breadth-first discovery order.
    """
    gens = np.array(generators, dtype=np.int64)
    if gens.ndim != 2 or len(gens) == 0:
        raise ValueError("need a nonempty list of equal-length tuples")
    n = gens.shape[1]
    if S.size**n >= 2**62:
        raise ValueError("power too large for packed codes")
    layers, _, _ = _bfs(S.table, gens, None, limit)
    codes = np.concatenate([layer[0] for layer in layers])
    return _decode(codes, S.size, n)


def _decode(codes: np.ndarray, size: int, n: int) -> np.ndarray:
    out = np.empty((len(codes), n), dtype=np.int64)
    c = codes.copy()
    for i in range(n - 1, -1, -1):
        c, out[:, i] = np.divmod(c, size)
    return out


def _bfs(table: np.ndarray, gens: np.ndarray, target, limit: int):
    """Layered search; returns (layers, explored, position of target in last layer or None).

    Each layer is (codes, generator used, parent position in previous layer).
    """
    size = table.shape[0]
    k, n = gens.shape
    radix = size ** np.arange(n - 1, -1, -1, dtype=np.int64)
    target_code = None if target is None else int(np.dot(np.array(target, dtype=np.int64), radix))

    visited = _Visited(size**n)
    codes = gens @ radix
    _, first = np.unique(codes, return_index=True)
    first.sort()
    layer_codes = codes[first]
    layer_states = gens[first]
    layers = [(layer_codes, first.astype(np.int64), np.full(len(first), -1, dtype=np.int64))]
    visited.add(layer_codes)
    explored = len(layer_codes)
    if explored > limit:
        raise BudgetExceeded(limit, explored)

    while True:
        if target_code is not None:
            hit = np.flatnonzero(layer_codes == target_code)
            if len(hit):
                return layers, explored, int(hit[0])
        if len(layer_codes) == 0:
            return layers[:-1], explored, None

        new_codes, new_states, new_parent, new_gen = [], [], [], []
        for start in range(0, len(layer_states), _CHUNK):
            block = layer_states[start : start + _CHUNK]
            # succ[p * k + g] = block[p] * gens[g]
            succ = table[block[:, None, :], gens[None, :, :]].reshape(-1, n)
            sc = succ @ radix
            idx = np.flatnonzero(visited.filter_new(sc))
            if len(idx) == 0:
                continue
            _, first = np.unique(sc[idx], return_index=True)
            first.sort()
            idx = idx[first]
            visited.add(sc[idx])
            new_codes.append(sc[idx])
            new_states.append(succ[idx])
            new_parent.append(start + idx // k)
            new_gen.append(idx % k)
            explored += len(idx)
            if explored > limit:
                raise BudgetExceeded(limit, explored)

        if new_codes:
            layer_codes = np.concatenate(new_codes)
            layer_states = np.concatenate(new_states).astype(np.int64)
            layers.append((layer_codes, np.concatenate(new_gen), np.concatenate(new_parent)))
        else:
            layer_codes = np.empty(0, dtype=np.int64)
            layer_states = np.empty((0, n), dtype=np.int64)
            layers.append((layer_codes, np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)))
        log.debug("closure layer %d: %d new states, %d total", len(layers), len(layer_codes), explored)


def _reconstruct(layers, pos: int) -> list[int]:
    word = []
    for depth in range(len(layers) - 1, -1, -1):
        _, gen, parent = layers[depth]
        word.append(int(gen[pos]))
        pos = int(parent[pos])
    return word[::-1]


def _solve_closure_tuples(inst: SmpInstance, limit: int) -> ClosureResult:
    """Plain set-based search for powers too large to encode in 64 bits."""
    table = inst.semigroup.table
    gens = [np.array(g, dtype=np.intp) for g in inst.generators]
    parent: dict = {}
    frontier = []
    for gi, g in enumerate(inst.generators):
        if g not in parent:
            parent[g] = (None, gi)
            frontier.append(g)
    if len(parent) > limit:
        raise BudgetExceeded(limit, len(parent))
    while frontier:
        if inst.target in parent:
            break
        nxt = []
        for state in frontier:
            arr = np.array(state, dtype=np.intp)
            for gi, g in enumerate(gens):
                succ = tuple(int(x) for x in table[arr, g])
                if succ not in parent:
                    parent[succ] = (state, gi)
                    nxt.append(succ)
                    if len(parent) > limit:
                        raise BudgetExceeded(limit, len(parent))
        frontier = nxt
    if inst.target not in parent:
        return ClosureResult(False, None, len(parent))
    word = []
    state = inst.target
    while state is not None:
        prev, gi = parent[state]
        word.append(gi)
        state = prev
    return ClosureResult(True, word[::-1], len(parent))


# -- Algorithm for one-block matrices ----------------------------------------


def _require_ambient(inst: SmpInstance, R: ReesStructure):
    S = inst.semigroup
    if S is not R.semigroup and not np.array_equal(S.table, R.semigroup.table):
        raise ValueError("instance ambient is not the Rees semigroup of this matrix")


def _require_one_block(inst: SmpInstance, R: ReesStructure):
    if R.adjoin_identity:
        raise ValueError("expected S_P without adjoined identity")
    block = one_block(R)
    if block is None:
        raise ValueError("the Rees matrix does not have one block")
    _require_ambient(inst, R)
    return block


def one_block_witness(inst: SmpInstance, R: ReesStructure) -> Optional[list[int]]:
    """Polynomial-time decision for one-block S_P, returning a witness word.

    Works on the coordinates where the target is nonzero, selected by a
    mask, so callers never need to reorder coordinates.
    ``d`` is the product, in input order, of every generator that maps those
    coordinates into J x Delta.
    """
    J, Delta = _require_one_block(inst, R)
    gens = np.array(inst.generators, dtype=np.intp)
    target = np.array(inst.target, dtype=np.intp)
    table = inst.semigroup.table
    zero = R.zero_index

    for gi, g in enumerate(inst.generators):
        if g == inst.target:
            return [gi]

    nonzero = target != zero
    # membership of each table element in J x Delta
    in_block = np.zeros(R.size, dtype=bool)
    for x in range(R.zero_index):
        i, lam = divmod(x, R.rows)
        in_block[x] = i in J and lam in Delta
    qualifying = [gi for gi in range(len(gens)) if in_block[gens[gi][nonzero]].all()]

    if qualifying:
        d = gens[qualifying[0]]
        for gi in qualifying[1:]:
            d = table[d, gens[gi]]
        left = table[gens, d[None, :]]  # a1 * d for every a1
        middle = qualifying
    else:
        left = gens
        middle = []
    # prod[a1, a2] = left[a1] * a2
    prod = table[left[:, None, :], gens[None, :, :]]
    hits = np.argwhere((prod == target).all(axis=2))
    if len(hits):
        a1, a2 = (int(x) for x in hits[0])
        return [a1] + list(middle) + [a2]
    return None


def solve_one_block(inst: SmpInstance, R: ReesStructure) -> bool:
    return one_block_witness(inst, R) is not None


# -- words -----------------------------------------------------------------


@dataclass(frozen=True)
class WordEdgeSet:
    first: Hashable
    last: Hashable
    edges: frozenset


def _edges(word) -> set:
    return set(zip(word, word[1:]))


def edge_set(word: Sequence) -> WordEdgeSet:
    word = list(word)
    if not word:
        raise ValueError("empty word")
    return WordEdgeSet(word[0], word[-1], frozenset(_edges(word)))


def words_equivalent_rees(f: Sequence, g: Sequence) -> bool:
    """Same first letter, last letter and set of adjacent pairs.

    This is sufficient for f and g to agree in every combinatorial Rees
    matrix semigroup.
    """
    return edge_set(f) == edge_set(g)


def _shorten_letter(word: list, x) -> list:
    positions = [p for p, y in enumerate(word) if y == x]
    m = len(positions)
    if m < 2:
        return word
    pieces = [word[: positions[0] + 1]]
    for a, b in zip(positions, positions[1:]):
        pieces.append(word[a + 1 : b + 1])
    tail = word[positions[-1] + 1 :]

    kept = [pieces[0]]
    prefix_edges = _edges(pieces[0])
    for v in pieces[1:]:
        own = _edges([x] + v)
        if not own <= prefix_edges:
            kept.append(v)
        prefix_edges |= own
    out = [y for v in kept for y in v] + tail
    return out


def shorten_word(word: Sequence) -> list:
    """Equivalent word (in all combinatorial Rees matrix semigroups) of length <= k(k^2+1).

    For each letter in ascending order the word is cut after every
    occurrence of that letter, and an inner piece survives only if it
    contributes an adjacent pair not already present before it.
    """
    word = list(word)
    if not word:
        raise ValueError("empty word")
    for x in sorted(set(word)):
        word = _shorten_letter(word, x)
    return word


def shortening_bound(k: int) -> int:
    return k * (k * k + 1)


def np_certificate(inst: SmpInstance, R: ReesStructure, limit: int = DEFAULT_BUDGET) -> Optional[list[int]]:
    """Short witness for S_P, or None for a non-member."""
    if R.adjoin_identity:
        raise ValueError("expected S_P without adjoined identity")
    _require_ambient(inst, R)
    res = solve_closure(inst, limit)
    if not res.member:
        return None
    short = shorten_word(res.witness)
    if len(short) > len(res.witness) or not check_witness(inst, short):
        short = res.witness  # pragma: no cover - shortening never lengthens or breaks a word
    return short


# -- witness compression with identity ----------------------------------------


def compress_witness_one_block_identity(inst: SmpInstance, R: ReesStructure, word: Sequence[int]) -> list[int]:
    """Subword of a witness of length at most 2n, for one-block S_P^1.

    Keeps, per coordinate, the first and last non-identity factor (target
    entry a pair) or a pair of factors with product 0 separated only by
    identities (target entry 0).
    """
    word = list(word)
    if not R.adjoin_identity:
        raise ValueError("expected S_P^1 (identity adjoined)")
    if one_block(R) is None:
        raise ValueError("the Rees matrix does not have one block")
    _require_ambient(inst, R)
    if not check_witness(inst, word):
        raise ValueError("word is not a witness for this instance")
    one, zero = R.one_index, R.zero_index
    if len(word) < 2:
        return word
    if all(x == one for x in inst.target):
        # 1 is not a product of other elements, so every factor is the all-1 tuple
        return word[:1]

    table = inst.semigroup.table
    factors = np.array([inst.generators[w] for w in word], dtype=np.intp)  # len(word) x n
    keep = set()
    for i, b in enumerate(inst.target):
        if b == one:
            continue
        col = factors[:, i]
        positions = np.flatnonzero(col != one)
        if b == zero:
            if len(positions) == 1:
                # a lone 0 factor among identities
                keep.add(int(positions[0]))
                continue
            for p, q in zip(positions, positions[1:]):
                if table[col[p], col[q]] == zero:
                    keep.update((int(p), int(q)))
                    break
            else:  # pragma: no cover - excluded by the adjacent-pair rule
                raise AssertionError("zero coordinate without a zero adjacent pair")
        else:
            keep.update((int(positions[0]), int(positions[-1])))
    out = [word[p] for p in sorted(keep)]
    assert check_witness(inst, out)
    return out


# -- serialization ---------------------------------------------------------


def instance_to_json(inst: SmpInstance, semigroup_ref=None) -> dict:
    """SMP instance JSON; ``semigroup_ref`` (catalog name or Rees JSON) replaces the table."""
    return {
        "semigroup": semigroup_ref if semigroup_ref is not None else inst.semigroup.to_json(),
        "n": inst.n,
        "generators": [list(g) for g in inst.generators],
        "target": list(inst.target),
    }
