"""Finite semigroups given by Cayley tables.

Elements are the integers ``0 .. size-1``; ``table[a, b]`` is the product
``a * b`` (row = left factor).  Names are display metadata only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

PowerTuple = tuple[int, ...]

# associativity is checked by default up to this size
ASSOC_CHECK_LIMIT = 64


class FiniteSemigroup:
    """A finite semigroup with a dense integer multiplication table."""

    def __init__(
        self,
        table,
        names: Optional[Sequence[str]] = None,
        identity: Optional[int] = None,
        zero: Optional[int] = None,
        check_associativity: Optional[bool] = None,
    ):
        table = np.array(table, dtype=np.intp)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise ValueError(f"table must be a nonempty square array, got shape {table.shape}")
        size = table.shape[0]
        if table.min() < 0 or table.max() >= size:
            raise ValueError("table entries must be element indices in range")
        table.setflags(write=False)
        self.table = table
        self.size = size

        if names is None:
            names = [str(i) for i in range(size)]
        names = [str(x) for x in names]
        if len(names) != size:
            raise ValueError(f"expected {size} names, got {len(names)}")
        self.names = tuple(names)
        self._index = {name: i for i, name in enumerate(self.names)}

        everything = np.arange(size)
        if identity is not None:
            self._check_element(identity)
            if not (np.array_equal(table[identity], everything) and np.array_equal(table[:, identity], everything)):
                raise ValueError(f"element {identity} is not a two-sided identity")
        if zero is not None:
            self._check_element(zero)
            if not ((table[zero] == zero).all() and (table[:, zero] == zero).all()):
                raise ValueError(f"element {zero} is not a two-sided zero")
        self.identity = identity
        self.zero = zero

        if check_associativity is None:
            check_associativity = size <= ASSOC_CHECK_LIMIT
        if check_associativity:
            bad = self.associativity_violation()
            if bad is not None:
                raise ValueError("table is not associative at (a, b, c) = %r" % (bad,))

        self._greens: Optional[GreensStructure] = None

    def __len__(self):
        return self.size

    def __repr__(self):
        return f"FiniteSemigroup(size={self.size}, identity={self.identity}, zero={self.zero})"

    def __eq__(self, other):
        if not isinstance(other, FiniteSemigroup):
            return NotImplemented
        return (
            np.array_equal(self.table, other.table)
            and self.names == other.names
            and self.identity == other.identity
            and self.zero == other.zero
        )

    __hash__ = None

    def _check_element(self, x):
        if not (0 <= int(x) < self.size):
            raise IndexError(f"element index {x} out of range for semigroup of size {self.size}")

    # -- element access ----------------------------------------------------

    def index(self, x) -> int:
        """Resolve an element given as an index or as a name."""
        if isinstance(x, (int, np.integer)):
            self._check_element(x)
            return int(x)
        try:
            return self._index[str(x)]
        except KeyError:
            raise KeyError(f"unknown element {x!r}") from None

    def name(self, x: int) -> str:
        return self.names[x]

    def multiply(self, a: int, b: int) -> int:
        self._check_element(a)
        self._check_element(b)
        return int(self.table[a, b])

    def product(self, elements: Sequence[int]) -> int:
        """Left-to-right product of a nonempty sequence."""
        if len(elements) == 0:
            raise ValueError("empty product")
        it = iter(elements)
        acc = next(it)
        self._check_element(acc)
        for x in it:
            self._check_element(x)
            acc = self.table[acc, x]
        return int(acc)

    def is_idempotent(self, x: int) -> bool:
        return self.table[x, x] == x

    def idempotents(self) -> np.ndarray:
        diag = self.table[np.arange(self.size), np.arange(self.size)]
        return np.flatnonzero(diag == np.arange(self.size))

    # -- structure ---------------------------------------------------------

    def associativity_violation(self):
        """Return some triple (a, b, c) with (ab)c != a(bc), or None."""
        t = self.table
        # left[a, b, c] = (ab)c ; right[a, b, c] = a(bc)
        left = t[t]
        right = t[:, t]
        bad = np.argwhere(left != right)
        if len(bad):
            return tuple(int(x) for x in bad[0])
        return None

    def find_identity(self) -> Optional[int]:
        everything = np.arange(self.size)
        for e in range(self.size):
            if np.array_equal(self.table[e], everything) and np.array_equal(self.table[:, e], everything):
                return e
        return None

    def find_zero(self) -> Optional[int]:
        for z in range(self.size):
            if (self.table[z] == z).all() and (self.table[:, z] == z).all():
                return z
        return None

    def is_monoid(self) -> bool:
        return self.identity is not None or self.find_identity() is not None

    @property
    def greens(self) -> "GreensStructure":
        if self._greens is None:
            self._greens = compute_greens(self)
        return self._greens

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "names": list(self.names),
            "table": self.table.tolist(),
            "identity": self.identity,
            "zero": self.zero,
        }

    @classmethod
    def from_json(cls, data: dict, check_associativity: Optional[bool] = None) -> "FiniteSemigroup":
        try:
            table = data["table"]
        except (KeyError, TypeError):
            raise ValueError("semigroup JSON needs a 'table' field") from None
        return cls(
            table,
            names=data.get("names"),
            identity=data.get("identity"),
            zero=data.get("zero"),
            check_associativity=check_associativity,
        )


# -- element arithmetic ----------------------------------------------------


def multiply(S: FiniteSemigroup, a: int, b: int) -> int:
    return S.multiply(a, b)


def tuple_multiply(S: FiniteSemigroup, a: Sequence[int], b: Sequence[int]) -> PowerTuple:
    """Coordinatewise product in S^n."""
    if len(a) != len(b):
        raise ValueError(f"tuple lengths differ: {len(a)} != {len(b)}")
    a = np.asarray(a, dtype=np.intp)
    b = np.asarray(b, dtype=np.intp)
    if len(a) and (a.min() < 0 or b.min() < 0 or a.max() >= S.size or b.max() >= S.size):
        raise IndexError("tuple coordinate out of range")
    return tuple(int(x) for x in S.table[a, b])


def cyclic_subsemigroup(S: FiniteSemigroup, x: int) -> list[int]:
    """Powers x, x^2, ... up to (excluding) the first repetition."""
    S._check_element(x)
    seen = set()
    out = []
    y = x
    while y not in seen:
        seen.add(y)
        out.append(y)
        y = int(S.table[y, x])
    return out


def idempotent_power(S: FiniteSemigroup, x: int) -> int:
    """The unique idempotent in the cyclic subsemigroup generated by x."""
    for y in cyclic_subsemigroup(S, x):
        if S.table[y, y] == y:
            return y
    raise AssertionError("finite cyclic semigroup without idempotent")  # unreachable


def generates_group(S: FiniteSemigroup, s: int) -> bool:
    """True iff <s> is a group, tested as s^2 J s."""
    g = S.greens
    return bool(g.j_class[S.table[s, s]] == g.j_class[s])


def is_regular(S: FiniteSemigroup, s: int) -> Optional[int]:
    """Least u with s*u*s == s, or None if s is not regular."""
    S._check_element(s)
    t = S.table
    hits = np.flatnonzero(t[t[s], s] == s)
    return int(hits[0]) if len(hits) else None


def adjoin_identity(S: FiniteSemigroup, name: Optional[str] = None) -> FiniteSemigroup:
    """S with a fresh identity element appended (always, even if S is a monoid)."""
    n = S.size
    table = np.empty((n + 1, n + 1), dtype=np.intp)
    table[:n, :n] = S.table
    table[n, :] = np.arange(n + 1)
    table[:, n] = np.arange(n + 1)
    if name is None:
        name = "1"
        while name in S.names:
            name += "'"
    return FiniteSemigroup(table, names=list(S.names) + [name], identity=n, zero=S.zero, check_associativity=False)


def direct_product(S: FiniteSemigroup, T: FiniteSemigroup) -> FiniteSemigroup:
    """S x T with pair (s, t) stored at index s * |T| + t."""
    m = T.size
    table = (S.table[:, None, :, None] * m + T.table[None, :, None, :]).reshape(S.size * m, S.size * m)
    names = [f"({a},{b})" for a in S.names for b in T.names]
    identity = None
    if S.identity is not None and T.identity is not None:
        identity = S.identity * m + T.identity
    zero = None
    if S.zero is not None and T.zero is not None:
        zero = S.zero * m + T.zero
    return FiniteSemigroup(table, names=names, identity=identity, zero=zero, check_associativity=False)


def pair_index(T: FiniteSemigroup, a: int, b: int) -> int:
    """Index of (a, b) in ``direct_product(S, T)``."""
    return a * T.size + b


def project(T: FiniteSemigroup, x: int) -> tuple[int, int]:
    return divmod(x, T.size)


# -- Green's relations -----------------------------------------------------


@dataclass(frozen=True, eq=False)
class GreensStructure:
    """Green's R, L, J, H classes as element -> class id arrays.

    Class ids are numbered by their least element.  ``j_below[c, d]`` is
    True iff J-class ``c`` lies strictly below J-class ``d``.
    """

    r_class: np.ndarray
    l_class: np.ndarray
    j_class: np.ndarray
    h_class: np.ndarray
    j_below: np.ndarray = field(repr=False)

    def j_less(self, x: int, y: int) -> bool:
        """x <_J y"""
        return bool(self.j_below[self.j_class[x], self.j_class[y]])

    def j_leq(self, x: int, y: int) -> bool:
        cx, cy = self.j_class[x], self.j_class[y]
        return bool(cx == cy or self.j_below[cx, cy])

    def classes(self, kind: str = "j") -> list[list[int]]:
        labels = {"r": self.r_class, "l": self.l_class, "j": self.j_class, "h": self.h_class, "d": self.d_class()}[kind]
        out: list[list[int]] = [[] for _ in range(int(labels.max()) + 1)]
        for x, c in enumerate(labels):
            out[c].append(x)
        return out

    def d_class(self) -> np.ndarray:
        """Join of L and R (union of elements sharing an L- or R-class)."""
        n = len(self.r_class)
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for labels in (self.r_class, self.l_class):
            first = {}
            for x, c in enumerate(labels):
                if c in first:
                    ra, rb = find(first[c]), find(x)
                    if ra != rb:
                        parent[max(ra, rb)] = min(ra, rb)
                else:
                    first[c] = x
        return _canonical([find(x) for x in range(n)])


def _canonical(labels) -> np.ndarray:
    """Renumber labels so that class ids follow the order of least elements."""
    mapping = {}
    out = np.empty(len(labels), dtype=np.intp)
    for x, c in enumerate(labels):
        if c not in mapping:
            mapping[c] = len(mapping)
        out[x] = mapping[c]
    return out


def _scc(n: int, src: np.ndarray, dst: np.ndarray) -> np.ndarray:
    graph = csr_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(n, n))
    _, labels = connected_components(graph, directed=True, connection="strong")
    return _canonical(labels)


def compute_greens(S: FiniteSemigroup) -> GreensStructure:
    """Green's relations from strongly connected components of Cayley graphs.

    x R y iff x and y reach each other along edges x -> xa; paths of length
    zero play the role of the adjoined identity, so S^1 never has to be built.
    """
    n = S.size
    t = S.table
    xs = np.repeat(np.arange(n), n)
    right_dst = t.reshape(-1)  # x -> x*a
    left_dst = t.T.reshape(-1)  # x -> a*x
    r_class = _scc(n, xs, right_dst)
    l_class = _scc(n, xs, left_dst)
    src2 = np.concatenate([xs, xs])
    dst2 = np.concatenate([right_dst, left_dst])
    j_class = _scc(n, src2, dst2)
    h_class = _canonical(list(zip(r_class.tolist(), l_class.tolist())))

    k = int(j_class.max()) + 1
    reach = np.zeros((k, k), dtype=bool)
    reach[j_class[src2], j_class[dst2]] = True
    reach[np.arange(k), np.arange(k)] = True
    for m in range(k):
        reach |= reach[:, m : m + 1] & reach[m : m + 1, :]
    # reach[c, d]: d is reachable from c, i.e. d <=_J c
    below = reach.T.copy()
    below[np.arange(k), np.arange(k)] = False
    for arr in (r_class, l_class, j_class, h_class, below):
        arr.setflags(write=False)
    return GreensStructure(r_class, l_class, j_class, h_class, below)


def is_group_h_class(S: FiniteSemigroup, x: int) -> bool:
    """True iff the H-class of x contains an idempotent (and is thus a group)."""
    h = S.greens.h_class
    idem = S.idempotents()
    return bool((h[idem] == h[x]).any())
