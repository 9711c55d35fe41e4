"""SAT and quantified 3-SAT reductions to subpower membership.

Literals use DIMACS conventions: ``v`` for a variable, ``-v`` for its
negation.  In a :class:`Q3SatFormula` with ``n`` quantifier pairs,
``1..n`` are the universal x-variables and ``n+1..2n`` the existential
y-variables.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .classify import check_pspace_triple, hardness_idempotents
from .semigroup import FiniteSemigroup, direct_product, pair_index
from .smp import SmpInstance


@dataclass(frozen=True)
class CnfFormula:
    var_count: int
    clauses: tuple[frozenset, ...]

    def __init__(self, var_count: int, clauses):
        clauses = tuple(frozenset(int(x) for x in c) for c in clauses)
        for c in clauses:
            if not c:
                raise ValueError("empty clause")
            for lit in c:
                if lit == 0 or abs(lit) > var_count:
                    raise ValueError(f"literal {lit} out of range for {var_count} variables")
        used = {abs(lit) for c in clauses for lit in c}
        missing = sorted(set(range(1, var_count + 1)) - used)
        if missing:
            raise ValueError(f"variables {missing} occur in no clause; remove them first")
        object.__setattr__(self, "var_count", var_count)
        object.__setattr__(self, "clauses", clauses)


def eval_cnf(F: CnfFormula, assignment: Sequence[bool]) -> bool:
    if len(assignment) < F.var_count:
        raise ValueError("assignment does not cover all variables")
    return all(any(assignment[abs(l) - 1] == (l > 0) for l in c) for c in F.clauses)


def satisfying_assignment(F: CnfFormula) -> Optional[tuple[bool, ...]]:
    """Brute force over all 2^k assignments."""
    for z in itertools.product((False, True), repeat=F.var_count):
        if eval_cnf(F, z):
            return z
    return None


def parse_dimacs(text: str) -> CnfFormula:
    k = None
    lits: list[int] = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"bad DIMACS header {line!r}")
            k = int(parts[2])
            continue
        lits.extend(int(x) for x in line.split())
    if k is None:
        raise ValueError("missing 'p cnf' header")
    clauses, cur = [], []
    for x in lits:
        if x == 0:
            clauses.append(cur)
            cur = []
        else:
            cur.append(x)
    if cur:
        clauses.append(cur)
    return CnfFormula(k, clauses)


def to_dimacs(F: CnfFormula) -> str:
    lines = [f"p cnf {F.var_count} {len(F.clauses)}"]
    for c in F.clauses:
        lines.append(" ".join(str(x) for x in sorted(c, key=lambda l: (abs(l), l))) + " 0")
    return "\n".join(lines) + "\n"


# -- SAT -------------------------------------------------------------------


def sat_to_smp(S: FiniteSemigroup, triple: tuple[int, int, int], F: CnfFormula) -> SmpInstance:
    """Instance over S^(k+m) that is positive iff F is satisfiable.

    Generators are ordered a_1^0..a_k^0, a_1^1..a_k^1; a_j^z sits at index
    ``(j-1) + z*k``.
    """
    r, s, t = triple
    idem = hardness_idempotents(S, r, s, t)
    e, f, g = idem.e, idem.f, idem.g
    k = F.var_count
    gens = []
    for z in (0, 1):
        lit_sign = 1 if z else -1
        for j in range(1, k + 1):
            head = [f if i < j else s if i == j else e for i in range(1, k + 1)]
            tail = [g if lit_sign * j in C else e for C in F.clauses]
            gens.append(tuple(head + tail))
    target = tuple([s] * k + [g] * len(F.clauses))
    return SmpInstance(S, gens, target)


def sat_witness(F: CnfFormula, assignment: Sequence[bool]) -> list[int]:
    """The word a_1^{z_1} ... a_k^{z_k} for an assignment."""
    k = F.var_count
    return [j + (k if assignment[j] else 0) for j in range(k)]


# -- Q3SAT -----------------------------------------------------------------


@dataclass(frozen=True)
class Q3SatFormula:
    n: int
    clauses: tuple[tuple[int, int, int], ...]

    def __init__(self, n: int, clauses):
        clauses = tuple(tuple(int(x) for x in c) for c in clauses)
        if n < 1:
            raise ValueError("need at least one quantifier pair")
        for c in clauses:
            if len(c) != 3:
                raise ValueError(f"clause {c} does not have exactly 3 literals")
            for lit in c:
                if lit == 0 or abs(lit) > 2 * n:
                    raise ValueError(f"literal {lit} out of range for n = {n}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "clauses", clauses)

    @property
    def m(self) -> int:
        return len(self.clauses)


def _q3_value(lit: int, xs, ys, n: int) -> bool:
    v = abs(lit)
    val = xs[v - 1] if v <= n else ys[v - n - 1]
    return val if lit > 0 else not val


def _q3_matrix(F: Q3SatFormula, xs, ys) -> bool:
    return all(any(_q3_value(l, xs, ys, F.n) for l in c) for c in F.clauses)


def q3sat_strategy(F: Q3SatFormula) -> Optional[dict]:
    """Winning existential strategy, or None if the formula is false.

    Maps each universal prefix ``(x_1..x_i)`` to the chosen value of y_i.
    """
    strategy: dict = {}

    def play(xs: tuple, ys: tuple) -> bool:
        i = len(xs)
        if i == F.n:
            return _q3_matrix(F, xs, ys)
        for x in (False, True):
            for y in (False, True):
                if play(xs + (x,), ys + (y,)):
                    strategy[xs + (x,)] = y
                    break
            else:
                return False
        return True

    return strategy if play((), ()) else None


def eval_q3sat(F: Q3SatFormula) -> bool:
    """Game-tree value of forall x1 exists y1 ... forall xn exists yn."""
    return q3sat_strategy(F) is not None


def parse_q3sat(text: str) -> Q3SatFormula:
    rows = [line.split() for line in text.splitlines() if line.strip() and not line.lstrip().startswith("c ")]
    if not rows or rows[0][0] != "q3sat" or len(rows[0]) != 3:
        raise ValueError("expected header 'q3sat n m'")
    n, m = int(rows[0][1]), int(rows[0][2])
    clauses = [[int(x) for x in r if x != "0"] for r in rows[1:]]
    if len(clauses) != m:
        raise ValueError(f"header announces {m} clauses, found {len(clauses)}")
    return Q3SatFormula(n, clauses)


def to_q3sat(F: Q3SatFormula) -> str:
    return "\n".join([f"q3sat {F.n} {F.m}"] + [" ".join(str(x) for x in c) for c in F.clauses]) + "\n"


def balance_prefix(prefix: Sequence[tuple[str, int]], clauses) -> Q3SatFormula:
    """Pad an arbitrary prefix to strict forall/exists alternation.

    ``prefix`` lists ``("A", v)`` / ``("E", v)`` in quantifier order; clauses
    use the original variable numbers and are padded to 3 literals by
    repetition.  Dummy variables occur in no clause.
    """
    pairs: list[list[Optional[int]]] = []
    for q, v in prefix:
        if q == "A":
            pairs.append([v, None])
        elif q == "E":
            if pairs and pairs[-1][1] is None:
                pairs[-1][1] = v
            else:
                pairs.append([None, v])
        else:
            raise ValueError(f"unknown quantifier {q!r}")
    n = len(pairs)
    rename = {}
    for i, (x, y) in enumerate(pairs):
        if x is not None:
            rename[x] = i + 1
        if y is not None:
            rename[y] = n + i + 1
    out = []
    for c in clauses:
        c = [(1 if l > 0 else -1) * rename[abs(l)] for l in c]
        if not 1 <= len(c) <= 3:
            raise ValueError("clauses need 1 to 3 literals")
        out.append(tuple((c * 3)[:3]))
    return Q3SatFormula(n, out)


def check_lemma_triple(S: FiniteSemigroup, s: int, t: int, n: int) -> bool:
    """sts = s, tst = t, s^2 and t^2 strictly J-below s, sn = s, tn = t."""
    m = S.multiply
    gr = S.greens
    return (
        m(m(s, t), s) == s
        and m(m(t, s), t) == t
        and gr.j_less(m(s, s), s)
        and gr.j_less(m(t, t), s)
        and m(s, n) == s
        and m(t, n) == t
    )


def pair_lift(S: FiniteSemigroup, triple: tuple[int, int, int]):
    """Move a (s, t, n) triple to S x S where the stronger conditions hold.

    Returns ``(S2, (s', t', n'))`` with s' = (s, tst), t' = (tst, s), n' = (n, n).
    """
    s, t, n = triple
    if not check_pspace_triple(S, s, t, n):
        raise ValueError("need sts = s, s not generating a group, sn = s, tn = t")
    m = S.multiply
    tst = m(m(t, s), t)
    S2 = direct_product(S, S)
    lifted = (pair_index(S, s, tst), pair_index(S, tst, s), pair_index(S, n, n))
    if not check_lemma_triple(S2, *lifted):  # pragma: no cover - holds for every valid triple
        raise AssertionError("lifted triple fails the strengthened conditions")
    return S2, lifted


@dataclass(frozen=True)
class Q3Layout:
    """Generator indices of a Q3SAT instance (all 0-based)."""

    n: int
    m: int

    @property
    def a(self) -> int:
        return 0

    def b(self, j: int) -> int:
        return j

    def c(self, j: int, kind: str) -> int:
        return 1 + self.n + "+-0".index(kind) * self.n + (j - 1)

    def d(self, j: int, k: int) -> int:
        return 1 + 4 * self.n + 3 * (j - 1) + (k - 1)

    def e(self, j: int) -> int:
        return 1 + 4 * self.n + 3 * self.m + (j - 1)

    @property
    def count(self) -> int:
        return 1 + 5 * self.n + 3 * self.m


def q3sat_to_smp(
    S: FiniteSemigroup,
    triple: tuple[int, int, int],
    F: Q3SatFormula,
    lift: Optional[bool] = None,
) -> SmpInstance:
    """Instance over S^(3n+m+1) that is positive iff F is true.

    With ``lift=None`` the square S x S is used only when the triple does
    not already satisfy tst = t and the strict J conditions.  Generator
    order is a, b_1..b_n, c^+_*, c^-_*, c^0_*, d_11..d_m3, e_1..e_n (see
    :class:`Q3Layout`).  The final coordinate of every c-generator is ts.
    """
    s, t, one = triple
    if lift is None:
        lift = not check_lemma_triple(S, s, t, one)
    if lift:
        S, (s, t, one) = pair_lift(S, triple)
    elif not check_lemma_triple(S, s, t, one):
        raise ValueError("triple fails sts=s, tst=t, s^2,t^2 <J s, sn=s, tn=t")

    mul = S.multiply
    st, ts = mul(s, t), mul(t, s)
    n, m = F.n, F.m
    L = 3 * n + m + 1
    last = L - 1

    def blank(fill=one):
        return [fill] * L

    gens = []
    gens.append(tuple(blank(s)))  # a

    for j in range(1, n + 1):  # b_j
        v = blank()
        for i in range(1, n + 1):
            v[i - 1] = one if i < j else t if i == j else s
        for i in range(1, n + m + 1):
            v[2 * n + i - 1] = st if i < j else s
        v[last] = ts
        gens.append(tuple(v))

    for kind in "+-0":  # c_j^kind
        for j in range(1, n + 1):
            v = blank()
            v[2 * n + j - 1] = t
            v[last] = ts
            if kind == "+":
                v[n + j - 1] = t
            elif kind == "-":
                v[n + j - 1] = s
            gens.append(tuple(v))

    for j, clause in enumerate(F.clauses, start=1):  # d_jk
        for lit in clause:
            v = blank()
            var = abs(lit)
            v[var - 1] = st if lit > 0 else ts  # x_i at i, y_i at n+i
            for i in range(1, n + 1):
                v[2 * n + i - 1] = st
            v[3 * n + j - 1] = t
            v[last] = ts
            gens.append(tuple(v))

    for j in range(1, n + 1):  # e_j
        v = blank()
        for i in range(1, n + 1):
            v[i - 1] = st
        v[n + j - 1] = t
        for i in range(1, m + 1):
            v[3 * n + i - 1] = st
        v[last] = ts
        gens.append(tuple(v))

    target = tuple([st] * (L - 1) + [s])
    return SmpInstance(S, gens, target)


def q3sat_witness(F: Q3SatFormula) -> Optional[list[int]]:
    """The ordered product that reaches the target when F is true.

    Walks all universal assignments in lexicographic order, resetting the
    control block with b_j, adjusting existential values with c^+/c^-/c^0,
    and ticking off each clause with one satisfied literal.
    """
    strategy = q3sat_strategy(F)
    if strategy is None:
        return None
    n, m = F.n, F.m
    lay = Q3Layout(n, m)

    def ys_for(xs):
        return tuple(strategy[xs[: i + 1]] for i in range(n))

    def clause_ticks(xs, ys):
        out = []
        for j, clause in enumerate(F.clauses, start=1):
            k = next(k for k, lit in enumerate(clause, start=1) if _q3_value(lit, xs, ys, n))
            out.append(lay.d(j, k))
        return out

    xs = (False,) * n
    ys = ys_for(xs)
    word = [lay.a]
    word += [lay.c(i, "+" if ys[i - 1] else "0") for i in range(1, n + 1)]
    word += clause_ticks(xs, ys)
    for xs_next in itertools.product((False, True), repeat=n):
        if not any(xs_next):
            continue
        j = max(i for i in range(1, n + 1) if xs_next[i - 1])
        ys_next = ys_for(xs_next)
        word.append(lay.b(j))
        for i in range(j, n + 1):
            old, new = ys[i - 1], ys_next[i - 1]
            kind = "+" if (new and not old) else "-" if (old and not new) else "0"
            word.append(lay.c(i, kind))
        word += clause_ticks(xs_next, ys_next)
        xs, ys = xs_next, ys_next
    word += [lay.e(i) for i in range(1, n + 1) if not ys[i - 1]]
    return word
