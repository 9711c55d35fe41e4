"""Complexity verdicts for the subpower membership problem of a semigroup.

Every verdict carries the elements that witness it; :func:`verify_verdict`
re-checks them by direct multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from .rees import ReesStructure, block_violation, one_block
from .semigroup import (
    FiniteSemigroup,
    generates_group,
    idempotent_power,
    is_group_h_class,
    is_regular,
)


class Complexity(str, Enum):
    PTIME = "PTIME"
    NP_COMPLETE = "NP_COMPLETE"
    PSPACE_COMPLETE = "PSPACE_COMPLETE"
    NP_HARD_IN_PSPACE = "NP_HARD_IN_PSPACE"
    IN_PSPACE_UNKNOWN = "IN_PSPACE_UNKNOWN"


# justification labels
ONE_BLOCK_PTIME = "one-block Rees matrix: polynomial algorithm"
REES_NP_COMPLETE = "Rees matrix without one block: rs=st=s hardness plus short witnesses"
REGULAR_BAND = "all-1 Rees matrix with identity is a regular band"
ONE_BLOCK_IDENTITY_NP = "one-block Rees matrix with zeros and identity: hardness plus witness compression"
PSPACE_TRIPLE = "sts=s, s not a group, sn=s, tn=t"
MONOID_MIXED_J = "monoid with a J-class holding group and non-group H-classes"
NP_HARD_TRIPLE = "rs=st=s with s not generating a group"
MIXED_J = "J-class holding group and non-group H-classes"
PSPACE_UPPER = "closure search runs in polynomial space"


@dataclass
class ComplexityVerdict:
    klass: Complexity
    theorem: str
    evidence: dict = field(default_factory=dict)

    def to_json(self, S: Optional[FiniteSemigroup] = None) -> dict:
        ev = {}
        for key, value in self.evidence.items():
            ev[key] = value
            if S is not None and key in _ELEMENT_KEYS and value is not None:
                ev[key + "_name"] = S.name(value)
        return {"class": self.klass.value, "theorem": self.theorem, "evidence": ev}


_ELEMENT_KEYS = ("r", "s", "t", "n", "u", "e", "f", "g")


@dataclass(frozen=True)
class HardnessIdempotents:
    e: int
    f: int
    g: int


def _non_group_elements(S: FiniteSemigroup) -> np.ndarray:
    gr = S.greens
    t = S.table
    sq = t[np.arange(S.size), np.arange(S.size)]
    return np.flatnonzero(gr.j_class[sq] != gr.j_class)


def find_nphard_triple(S: FiniteSemigroup) -> Optional[tuple[int, int, int]]:
    """First (r, s, t) with rs = st = s and s not generating a group.

    Scans s in index order (non-group elements only), then the least r and
    the least t.
    """
    t = S.table
    for s in _non_group_elements(S):
        rs = np.flatnonzero(t[:, s] == s)
        st = np.flatnonzero(t[s, :] == s)
        if len(rs) and len(st):
            return int(rs[0]), int(s), int(st[0])
    return None


def check_nphard_triple(S: FiniteSemigroup, r: int, s: int, t: int) -> bool:
    return S.multiply(r, s) == s and S.multiply(s, t) == s and not generates_group(S, s)


def hardness_idempotents(S: FiniteSemigroup, r: int, s: int, t: int) -> HardnessIdempotents:
    """Idempotents e, f with es = sf = s, and g the idempotent power of se."""
    if not check_nphard_triple(S, r, s, t):
        raise ValueError("need rs = st = s with s not generating a group")
    u = is_regular(S, s)
    if u is not None:
        e = idempotent_power(S, S.multiply(s, u))
        f = idempotent_power(S, S.multiply(u, s))
    else:
        e = idempotent_power(S, r)
        f = idempotent_power(S, t)
    g = idempotent_power(S, S.multiply(s, e))
    if S.multiply(e, s) != s or S.multiply(s, f) != s:  # pragma: no cover - guaranteed by construction
        raise AssertionError("es = sf = s failed")
    return HardnessIdempotents(e, f, g)


def check_pspace_triple(S: FiniteSemigroup, s: int, t: int, n: int) -> bool:
    m = S.multiply
    return m(m(s, t), s) == s and not generates_group(S, s) and m(s, n) == s and m(t, n) == t


def find_pspace_triple(S: FiniteSemigroup) -> Optional[tuple[int, int, int]]:
    """First (s, t, n) in index order with sts = s, s non-group, sn = s, tn = t."""
    tab = S.table
    for s in _non_group_elements(S):
        sts = tab[tab[s, :], s]
        right_fixes_s = tab[s, :] == s  # candidates n with sn = s
        for t in np.flatnonzero(sts == s):
            ns = np.flatnonzero(right_fixes_s & (tab[t, :] == t))
            if len(ns):
                return int(s), int(t), int(ns[0])
    return None


def mixed_jclass(S: FiniteSemigroup) -> Optional[int]:
    """Least s whose H-class is not a group while its J-class has an idempotent."""
    gr = S.greens
    idem = S.idempotents()
    group_h = set(gr.h_class[idem].tolist())
    idem_j = set(gr.j_class[idem].tolist())
    for x in range(S.size):
        if gr.h_class[x] not in group_h and gr.j_class[x] in idem_j:
            return x
    return None


def is_regular_band(S: FiniteSemigroup) -> bool:
    """Idempotent and satisfying xyxzx = xyzx."""
    t = S.table
    if len(S.idempotents()) != S.size:
        return False
    xy = t  # xy[x, y]
    xyx = t[xy, np.arange(S.size)[:, None]]  # xyx[x, y]
    # lhs[x, y, z] = (xyx)(zx) ; rhs[x, y, z] = (xy)(zx)
    zx = t.T  # zx[x, z] = z * x
    lhs = t[xyx[:, :, None], zx[:, None, :]]
    rhs = t[xy[:, :, None], zx[:, None, :]]
    return bool((lhs == rhs).all())


def _pair(R: ReesStructure, i: int, lam: int) -> int:
    return R.pair_index(i, lam)


def classify_rees(R: ReesStructure) -> ComplexityVerdict:
    """PTIME if P has one block, NP-complete otherwise (S_P without identity)."""
    if R.adjoin_identity:
        raise ValueError("classify_rees expects S_P without identity; use classify_rees_identity")
    block = one_block(R)
    if block is not None:
        J, Delta = block
        return ComplexityVerdict(
            Complexity.PTIME,
            ONE_BLOCK_PTIME,
            {"block_columns": sorted(J), "block_rows": sorted(Delta)},
        )
    v = block_violation(R)
    # P[mu, i] = 1, P[lam, j] = 1, P[lam, i] = 0
    r, s, t = _pair(R, v.i, v.mu), _pair(R, v.i, v.lam), _pair(R, v.j, v.lam)
    return ComplexityVerdict(
        Complexity.NP_COMPLETE,
        REES_NP_COMPLETE,
        {"violation": v._asdict(), "r": r, "s": s, "t": t},
    )


def classify_rees_identity(R: ReesStructure) -> ComplexityVerdict:
    """Trichotomy for S_P^1."""
    if not R.adjoin_identity:
        raise ValueError("classify_rees_identity expects S_P^1; use classify_rees")
    P = R.matrix
    one = R.one_index
    if (P == 1).all():
        S = R.semigroup
        return ComplexityVerdict(Complexity.PTIME, REGULAR_BAND, {"regular_band": is_regular_band(S)})
    if one_block(R) is not None:
        lam, i = (int(x) for x in np.argwhere(P == 0)[0])
        s = _pair(R, i, lam)
        return ComplexityVerdict(
            Complexity.NP_COMPLETE,
            ONE_BLOCK_IDENTITY_NP,
            {"r": one, "s": s, "t": one, "zero_entry": [lam, i]},
        )
    v = block_violation(R)
    s, t = _pair(R, v.i, v.lam), _pair(R, v.j, v.mu)
    return ComplexityVerdict(
        Complexity.PSPACE_COMPLETE,
        PSPACE_TRIPLE,
        {"violation": v._asdict(), "s": s, "t": t, "n": one},
    )


def classify_general(S: FiniteSemigroup) -> ComplexityVerdict:
    """Bounds available for an arbitrary finite semigroup.

    Only hardness results with an explicit witness are reported; the upper
    bound is always PSPACE, so PTIME or exact NP-completeness is never claimed.
    """
    triple = find_pspace_triple(S)
    if triple is not None:
        s, t, n = triple
        return ComplexityVerdict(Complexity.PSPACE_COMPLETE, PSPACE_TRIPLE, {"s": s, "t": t, "n": n})
    mixed = mixed_jclass(S)
    identity = S.identity if S.identity is not None else S.find_identity()
    if mixed is not None and identity is not None:
        # unreachable in practice: the identity completes a triple found above
        u = is_regular(S, mixed)
        return ComplexityVerdict(
            Complexity.PSPACE_COMPLETE, MONOID_MIXED_J, {"s": mixed, "t": u, "n": identity}
        )  # pragma: no cover
    triple = find_nphard_triple(S)
    if triple is not None:
        r, s, t = triple
        return ComplexityVerdict(Complexity.NP_HARD_IN_PSPACE, NP_HARD_TRIPLE, {"r": r, "s": s, "t": t})
    if mixed is not None:  # pragma: no cover - mixed J-classes always yield (su, s, us)
        u = is_regular(S, mixed)
        return ComplexityVerdict(Complexity.NP_HARD_IN_PSPACE, MIXED_J, {"s": mixed, "u": u})
    return ComplexityVerdict(Complexity.IN_PSPACE_UNKNOWN, PSPACE_UPPER, {})


def verify_verdict(S: FiniteSemigroup, v: ComplexityVerdict, rees: Optional[ReesStructure] = None) -> bool:
    """Re-check a verdict's evidence against the table of S.

    Block evidence needs the Rees structure, since it concerns the matrix.
    """
    ev = v.evidence
    m = S.multiply
    if v.theorem in (PSPACE_TRIPLE, MONOID_MIXED_J):
        return check_pspace_triple(S, ev["s"], ev["t"], ev["n"])
    if v.theorem in (NP_HARD_TRIPLE, REES_NP_COMPLETE, ONE_BLOCK_IDENTITY_NP):
        return check_nphard_triple(S, ev["r"], ev["s"], ev["t"])
    if v.theorem == MIXED_J:
        s, u = ev["s"], ev["u"]
        return m(m(s, u), s) == s and not is_group_h_class(S, s)
    if v.theorem == REGULAR_BAND:
        return bool(ev["regular_band"]) and is_regular_band(S)
    if v.theorem == ONE_BLOCK_PTIME:
        if rees is None:
            raise ValueError("block evidence needs the Rees structure")
        J, Delta = set(ev["block_columns"]), set(ev["block_rows"])
        P = rees.matrix
        return all(
            (P[lam, i] == 1) == (lam in Delta and i in J) for lam in range(rees.rows) for i in range(rees.cols)
        )
    if v.theorem == PSPACE_UPPER:
        return find_nphard_triple(S) is None and find_pspace_triple(S) is None
    raise ValueError(f"unknown justification {v.theorem!r}")


def classify(S: FiniteSemigroup, rees: Optional[ReesStructure] = None) -> ComplexityVerdict:
    """Dispatch to the Rees classifiers when a Rees structure is known."""
    if rees is not None:
        return classify_rees_identity(rees) if rees.adjoin_identity else classify_rees(rees)
    return classify_general(S)
