"""Combinatorial Rees matrix semigroups and a catalog of named semigroups.

A 0-1 matrix ``P`` with rows indexed by Lambda and columns by I defines
``S_P = (I x Lambda) + {0}`` with ``[i,l][j,m] = [i,m]`` if ``P[l, j] == 1``
and ``0`` otherwise.  Indices are 0-based internally and 1-based in names.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple, Optional, Sequence, Union

import numpy as np

from .semigroup import FiniteSemigroup, adjoin_identity

ZERO = "0"
ONE = "1"

# a ReesElement is a pair (i, lam), ZERO or ONE
ReesElement = Union[tuple[int, int], str]


class Violation(NamedTuple):
    """Witness that P does not have one block.

    ``P[lam, i] == 0`` while ``P[lam, j] == 1`` and ``P[mu, i] == 1``.
    """

    lam: int
    i: int
    j: int
    mu: int


@dataclass(frozen=True, eq=False)
class ReesStructure:
    matrix: np.ndarray
    adjoin_identity: bool = False
    block: Optional[tuple[frozenset, frozenset]] = field(init=False, repr=False, default=None)

    def __post_init__(self):
        P = np.array(self.matrix, dtype=np.int8)
        if P.ndim != 2 or P.size == 0:
            raise ValueError("Rees matrix must be a nonempty 2-d array")
        if not np.isin(P, (0, 1)).all():
            raise ValueError("Rees matrix entries must be 0 or 1")
        P.setflags(write=False)
        object.__setattr__(self, "matrix", P)
        object.__setattr__(self, "block", one_block(self))

    def __eq__(self, other):
        if not isinstance(other, ReesStructure):
            return NotImplemented
        return np.array_equal(self.matrix, other.matrix) and self.adjoin_identity == other.adjoin_identity

    __hash__ = None

    @property
    def rows(self) -> int:
        """|Lambda|"""
        return self.matrix.shape[0]

    @property
    def cols(self) -> int:
        """|I|"""
        return self.matrix.shape[1]

    @property
    def size(self) -> int:
        return self.rows * self.cols + 1 + int(self.adjoin_identity)

    @property
    def zero_index(self) -> int:
        return self.rows * self.cols

    @property
    def one_index(self) -> Optional[int]:
        return self.rows * self.cols + 1 if self.adjoin_identity else None

    def pair_index(self, i: int, lam: int) -> int:
        """Table index of [i, lam] (0-based)."""
        if not (0 <= i < self.cols and 0 <= lam < self.rows):
            raise IndexError(f"pair ({i}, {lam}) out of range")
        return i * self.rows + lam

    def index(self, x: ReesElement) -> int:
        if x == ZERO:
            return self.zero_index
        if x == ONE:
            if not self.adjoin_identity:
                raise ValueError("no identity adjoined")
            return self.one_index
        return self.pair_index(*x)

    def element(self, idx: int) -> ReesElement:
        if idx == self.zero_index:
            return ZERO
        if self.adjoin_identity and idx == self.one_index:
            return ONE
        if not (0 <= idx < self.zero_index):
            raise IndexError(f"element index {idx} out of range")
        return divmod(idx, self.rows)

    def name_index(self, i: int, lam: int) -> int:
        """Table index of [i, lam] given 1-based indices as displayed."""
        return self.pair_index(i - 1, lam - 1)

    @cached_property
    def semigroup(self) -> FiniteSemigroup:
        return build_rees(self)

    def to_json(self) -> dict:
        return {"matrix": self.matrix.tolist(), "adjoin_identity": self.adjoin_identity}

    @classmethod
    def from_json(cls, data: dict) -> "ReesStructure":
        return cls(data["matrix"], bool(data.get("adjoin_identity", False)))


def build_rees(R: ReesStructure) -> FiniteSemigroup:
    """Multiplication table of S_P, or S_P^1 when the identity flag is set.

    Pairs come first in row-major (i, lam) order, then 0, then 1.
    """
    P = R.matrix
    rows, cols = R.rows, R.cols
    npairs = rows * cols
    size = R.size
    zero = npairs
    table = np.full((size, size), zero, dtype=np.intp)

    i = np.repeat(np.arange(cols), rows)
    lam = np.tile(np.arange(rows), cols)
    # [i,lam][j,mu] = [i,mu] when P[lam, j] = 1
    nonzero = P[lam[:, None], i[None, :]] == 1
    prod = i[:, None] * rows + lam[None, :]
    table[:npairs, :npairs] = np.where(nonzero, prod, zero)

    names = [f"[{a + 1},{b + 1}]" for a, b in zip(i, lam)] + [ZERO]
    one = None
    if R.adjoin_identity:
        one = npairs + 1
        table[one, :] = np.arange(size)
        table[:, one] = np.arange(size)
        names.append(ONE)
    return FiniteSemigroup(table, names=names, identity=one, zero=zero, check_associativity=False)


def one_block(R: ReesStructure) -> Optional[tuple[frozenset, frozenset]]:
    """(J, Delta) if the 1-entries of P form exactly Delta x J, else None.

    J is the set of columns containing a 1, Delta the set of rows containing
    a 1 (both 0-based).
    """
    P = np.asarray(R.matrix)
    cols = np.flatnonzero(P.any(axis=0))
    rows = np.flatnonzero(P.any(axis=1))
    if P[np.ix_(rows, cols)].all():
        return frozenset(cols.tolist()), frozenset(rows.tolist())
    return None


def block_violation(R: ReesStructure) -> Optional[Violation]:
    """First zero inside the row/column support of P, with the 1s around it."""
    P = R.matrix
    cols = np.flatnonzero(P.any(axis=0))
    rows = np.flatnonzero(P.any(axis=1))
    for lam in rows:
        for i in cols:
            if P[lam, i] == 0:
                j = int(np.flatnonzero(P[lam])[0])
                mu = int(np.flatnonzero(P[:, i])[0])
                return Violation(int(lam), int(i), j, mu)
    return None


def is_zero_simple_matrix(R: ReesStructure) -> bool:
    """Every row and every column of P contains a 1."""
    P = R.matrix
    return bool(P.any(axis=0).all() and P.any(axis=1).all())


def has_zero_divisors(R: ReesStructure) -> bool:
    # some P[lam, i] == 0 gives [i, lam]^2 == 0; an all-1 matrix has none
    return bool((R.matrix == 0).any())


def rees_product(R: ReesStructure, factors: Sequence[ReesElement]) -> ReesElement:
    """Product of a factor list in O(len) using the adjacent-pair rule."""
    if len(factors) == 0:
        raise ValueError("empty product")
    core = [x for x in factors if x != ONE]
    if not core:
        return ONE
    if any(x == ZERO for x in core):
        return ZERO
    P = R.matrix
    for (_, lam), (j, _) in zip(core, core[1:]):
        if P[lam, j] == 0:
            return ZERO
    return (core[0][0], core[-1][1])


def parse_matrix(text: str) -> np.ndarray:
    """Parse ``"10,01"`` or ``"1 0; 0 1"`` into a 0-1 matrix."""
    rows = [r for r in text.replace(";", ",").split(",") if r.strip()]
    out = []
    for r in rows:
        r = r.strip()
        entries = r.split() if " " in r else list(r)
        out.append([int(x) for x in entries])
    if not out or len({len(r) for r in out}) != 1:
        raise ValueError(f"malformed matrix {text!r}")
    return np.array(out)


def format_matrix(P) -> str:
    return ",".join("".join(str(int(x)) for x in row) for row in np.asarray(P))


# -- catalog ---------------------------------------------------------------

B2_MATRIX = np.array([[1, 0], [0, 1]])
A2_MATRIX = np.array([[1, 1], [1, 0]])


@dataclass
class CatalogEntry:
    name: str
    semigroup: FiniteSemigroup
    rees: Optional[ReesStructure] = None
    # (s, t, n) with sts = s, s non-group, sn = s, tn = t
    pspace_triple: Optional[tuple[int, int, int]] = None


def _table_from_elements(elements, mul):
    index = {x: k for k, x in enumerate(elements)}
    return [[index[mul(x, y)] for y in elements] for x in elements]


def full_transformation(n: int) -> CatalogEntry:
    """T_n: all maps {1..n} -> {1..n}, composed left to right: x(fg) = (xf)g."""
    maps = list(itertools.product(range(n), repeat=n))
    table = _table_from_elements(maps, lambda f, g: tuple(g[f[x]] for x in range(n)))
    names = ["".join(str(v + 1) for v in f) for f in maps]
    identity = maps.index(tuple(range(n)))
    S = FiniteSemigroup(table, names=names, identity=identity)
    triple = None
    if n >= 3:
        # s: 1 -> 2, else -> 3 ; t: 2 -> 1, else -> 3
        s = tuple(1 if x == 0 else 2 for x in range(n))
        t = tuple(0 if x == 1 else 2 for x in range(n))
        triple = (maps.index(s), maps.index(t), identity)
    return CatalogEntry(f"full_transformation:{n}", S, pspace_triple=triple)


def symmetric_inverse(n: int) -> CatalogEntry:
    """I_n: partial injections on {1..n}; -1 marks an undefined point."""
    maps = []
    for images in itertools.product(range(-1, n), repeat=n):
        defined = [v for v in images if v >= 0]
        if len(defined) == len(set(defined)):
            maps.append(images)

    def mul(f, g):
        return tuple(-1 if f[x] < 0 else g[f[x]] for x in range(n))

    table = _table_from_elements(maps, mul)
    names = ["".join("-" if v < 0 else str(v + 1) for v in f) for f in maps]
    identity = maps.index(tuple(range(n)))
    S = FiniteSemigroup(table, names=names, identity=identity, zero=maps.index((-1,) * n))
    triple = None
    if n >= 2:
        s = tuple(1 if x == 0 else -1 for x in range(n))  # 1 -> 2
        t = tuple(0 if x == 1 else -1 for x in range(n))  # 2 -> 1
        triple = (maps.index(s), maps.index(t), identity)
    return CatalogEntry(f"symmetric_inverse:{n}", S, pspace_triple=triple)


def matrix_semigroup(q: int, n: int = 2) -> CatalogEntry:
    """All n x n matrices over Z_q under multiplication, lexicographic order."""
    if n != 2 or q not in (2, 3):
        raise ValueError("matrix_semigroup supports n = 2 and q in {2, 3}")
    mats = list(itertools.product(range(q), repeat=4))

    def mul(x, y):
        a, b, c, d = x
        e, f, g, h = y
        return ((a * e + b * g) % q, (a * f + b * h) % q, (c * e + d * g) % q, (c * f + d * h) % q)

    table = _table_from_elements(mats, mul)
    names = ["(%d%d;%d%d)" % m for m in mats]
    identity = mats.index((1, 0, 0, 1))
    S = FiniteSemigroup(table, names=names, identity=identity, zero=mats.index((0, 0, 0, 0)))
    # elementary matrices E12 and E21
    triple = (mats.index((0, 1, 0, 0)), mats.index((0, 0, 1, 0)), identity)
    return CatalogEntry(f"matrix_semigroup:2:{q}", S, pspace_triple=triple)


def cyclic_group(n: int) -> CatalogEntry:
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    names = ["1"] + [f"c^{k}" if k > 1 else "c" for k in range(1, n)]
    return CatalogEntry(f"cyclic_group:{n}", FiniteSemigroup(table, names=names, identity=0))


def left_zero(n: int) -> CatalogEntry:
    table = [[a] * n for a in range(n)]
    return CatalogEntry(f"left_zero:{n}", FiniteSemigroup(table))


def null_semigroup(n: int) -> CatalogEntry:
    """xy = 0 for all x, y; element 0 is the zero."""
    table = [[0] * n for _ in range(n)]
    return CatalogEntry(f"null:{n}", FiniteSemigroup(table, zero=0))


def rees_z2_example(with_identity: bool = True) -> CatalogEntry:
    """M[Z_2; 2, 2; (1 1; 1 c)] (no zero), with an identity adjoined by default.

    Elements are triples (i, g, lam) with (i,g,lam)(j,h,mu) = (i, g P[lam,j] h, mu).
    Its subpower membership complexity is not settled; no triple is attached.
    """
    P = [[0, 0], [0, 1]]  # exponents of c
    elems = [(i, g, lam) for i in range(2) for g in range(2) for lam in range(2)]
    table = _table_from_elements(elems, lambda x, y: (x[0], (x[1] + P[x[2]][y[0]] + y[1]) % 2, y[2]))
    names = [f"({i + 1},{'c' if g else '1'},{lam + 1})" for i, g, lam in elems]
    S = FiniteSemigroup(table, names=names)
    name = "z2_rees"
    if with_identity:
        S = adjoin_identity(S, name="e")
        name = "z2_rees_1"
    return CatalogEntry(name, S)


def rees_entry(P, with_identity: bool = False) -> CatalogEntry:
    R = ReesStructure(P, adjoin_identity=with_identity)
    S = R.semigroup
    tag = "rees_1" if with_identity else "rees"
    return CatalogEntry(f"{tag}:{format_matrix(R.matrix)}", S, rees=R)


def catalog(name: str, *params, matrix=None) -> CatalogEntry:
    """Look up a named semigroup.

    ``name`` may carry colon-separated parameters, e.g.
    ``"full_transformation:3"``, ``"matrix_semigroup:2:3"``, ``"rees:10,00"``.
    """
    if ":" in name:
        name, *extra = name.split(":")
        params = tuple(extra) + tuple(params)
    key = name.strip().lower()

    def int_param(pos=0, default=None, lo=1, hi=None):
        if len(params) <= pos:
            if default is None:
                raise ValueError(f"catalog entry {key!r} needs a parameter")
            return default
        try:
            v = int(params[pos])
        except ValueError:
            raise ValueError(f"bad parameter {params[pos]!r} for {key!r}") from None
        if v < lo or (hi is not None and v > hi):
            raise ValueError(f"parameter {v} for {key!r} outside [{lo}, {hi}]")
        return v

    if key == "brandt_b2":
        return CatalogEntry("brandt_b2", *_named_rees(B2_MATRIX, False))
    if key == "a2":
        return CatalogEntry("a2", *_named_rees(A2_MATRIX, False))
    if key == "brandt_b2_1":
        S, R = _named_rees(B2_MATRIX, True)
        return CatalogEntry("brandt_b2_1", S, R, (R.name_index(1, 2), R.name_index(2, 1), R.one_index))
    if key == "a2_1":
        S, R = _named_rees(A2_MATRIX, True)
        return CatalogEntry("a2_1", S, R, (R.name_index(2, 2), R.name_index(1, 1), R.one_index))
    if key == "full_transformation":
        return full_transformation(int_param(hi=4))
    if key == "symmetric_inverse":
        return symmetric_inverse(int_param(hi=3))
    if key == "matrix_semigroup":
        if len(params) >= 2:
            if int_param(0) != 2:
                raise ValueError("matrix_semigroup supports n = 2 only")
            return matrix_semigroup(int_param(1, lo=2, hi=3))
        return matrix_semigroup(int_param(0, default=2, lo=2, hi=3))
    if key == "cyclic_group":
        return cyclic_group(int_param(default=2, hi=64))
    if key == "left_zero":
        return left_zero(int_param(default=2, hi=64))
    if key == "null":
        return null_semigroup(int_param(default=2, hi=64))
    if key in ("z2_rees", "z2_rees_1"):
        return rees_z2_example(key == "z2_rees_1")
    if key in ("rees", "rees_1"):
        P = matrix if matrix is not None else (parse_matrix(params[0]) if params else None)
        if P is None:
            raise ValueError(f"{key!r} needs a matrix")
        entry = rees_entry(P, key == "rees_1")
        if key == "rees_1":
            entry.pspace_triple = _rees_identity_pspace_triple(entry.rees)
        return entry
    raise ValueError(f"unknown catalog entry {name!r}")


def _named_rees(P, with_identity):
    R = ReesStructure(P, adjoin_identity=with_identity)
    return R.semigroup, R


def _rees_identity_pspace_triple(R: ReesStructure):
    v = block_violation(R)
    if v is None:
        return None
    # P[lam, j] = P[mu, i] = 1, P[lam, i] = 0  ->  s = [i, lam], t = [j, mu]
    return (R.pair_index(v.i, v.lam), R.pair_index(v.j, v.mu), R.one_index)


CATALOG_NAMES = (
    "brandt_b2",
    "a2",
    "brandt_b2_1",
    "a2_1",
    "full_transformation:N (N<=4)",
    "symmetric_inverse:N (N<=3)",
    "matrix_semigroup:2:Q (Q in 2,3)",
    "cyclic_group:N",
    "left_zero:N",
    "null:N",
    "z2_rees",
    "z2_rees_1",
    "rees:MATRIX (e.g. rees:10,00)",
    "rees_1:MATRIX",
)


def standard_catalog() -> list[CatalogEntry]:
    """The semigroups exercised by the structural test suite."""
    names = [
        "brandt_b2",
        "a2",
        "brandt_b2_1",
        "a2_1",
        "full_transformation:2",
        "full_transformation:3",
        "full_transformation:4",
        "symmetric_inverse:1",
        "symmetric_inverse:2",
        "symmetric_inverse:3",
        "matrix_semigroup:2:2",
        "matrix_semigroup:2:3",
        "cyclic_group:2",
        "cyclic_group:3",
        "left_zero:3",
        "null:3",
        "z2_rees",
        "z2_rees_1",
        "rees:11,11",
        "rees_1:11,11",
        "rees_1:10,00",
        "rees:110,011,000",
    ]
    return [catalog(n) for n in names]
