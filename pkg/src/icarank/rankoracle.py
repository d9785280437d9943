"""Exact minimal-generating-set search for explicit small groups and monoids.

The search iterates k = 0, 1, 2, ... and looks for a generating set of size
k, so the first hit is the exact rank.  Three exact accelerations keep this
affordable:

* a cyclic check settles k = 1 immediately;
* for p-groups the answer is read off the Frattini quotient (any
  irredundant generating set is minimal there), no search at all;
* for general groups the abelianization gives a lower bound L, so levels
  below L are never searched.

The level-k search itself walks chains of subgroups: a partial generating
set is remembered only through the subgroup it generates, candidates are
restricted to one representative per coset (adjoining s*g generates the
same subgroup as adjoining g), and failed (subgroup, budget) states are
memoized.  Candidates are tried by descending element order.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .caps import DEFAULT_CAPS, Caps
from .errors import CapExceeded, InternalInvariantError, RankSearchTimeout
from .groups import FiniteGroup


class ActionTable:
    """A finite monoid given by its composition table."""

    __slots__ = ("size", "table", "identity", "is_group", "inverses", "_orders")

    def __init__(self, table, identity: int = 0, is_group: Optional[bool] = None):
        arr = np.ascontiguousarray(np.asarray(table, dtype=np.int32))
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError("composition table must be square")
        n = arr.shape[0]
        if arr.min() < 0 or arr.max() >= n:
            raise ValueError("table entries out of range")
        rng = np.arange(n, dtype=np.int32)
        if not (np.array_equal(arr[identity], rng) and np.array_equal(arr[:, identity], rng)):
            raise ValueError("identity laws fail")
        self.size = n
        self.table = arr
        self.identity = identity
        if is_group is None:
            is_group = bool(((arr == identity).sum(axis=1) == 1).all()
                            and ((arr == identity).sum(axis=0) == 1).all())
        self.is_group = is_group
        if self.is_group:
            inv = np.empty(n, dtype=np.int32)
            pos = np.argwhere(arr == identity)
            inv[pos[:, 0]] = pos[:, 1]
            self.inverses = inv
        else:
            self.inverses = None
        self._orders: Optional[np.ndarray] = None

    @classmethod
    def from_group(cls, G: FiniteGroup) -> "ActionTable":
        return cls(G.table, identity=G.identity, is_group=True)

    @classmethod
    def from_permutations(cls, perms: Sequence[Sequence[int]]) -> "ActionTable":
        """Composition table of a set of permutations, closed or not checked.

        Product ``a * b`` means "apply a, then b".  The identity permutation
        must be present.
        """
        parr = np.asarray(sorted(tuple(p) for p in perms), dtype=np.int32)
        m, deg = parr.shape
        lut = {p.tobytes(): i for i, p in enumerate(parr)}
        if len(lut) != m:
            raise ValueError("duplicate permutations")
        ident = parr[0]
        if not np.array_equal(ident, np.arange(deg)):
            raise ValueError("identity permutation missing or not first")
        table = np.empty((m, m), dtype=np.int32)
        for a in range(m):
            rows = parr[:, parr[a]]     # (a then b)(i) = b[a[i]]
            try:
                table[a] = [lut[r.tobytes()] for r in rows]
            except KeyError:
                raise ValueError("permutation set is not closed under composition") from None
        return cls(table, identity=0, is_group=None)

    def element_orders(self) -> np.ndarray:
        """Order of each element; for non-group tables, index of idempotency."""
        if self._orders is None:
            t = self.table
            n = self.size
            out = np.zeros(n, dtype=np.int64)
            for a in range(n):
                k, x = 1, a
                seen = 0
                while x != self.identity:
                    x = int(t[x, a])
                    k += 1
                    seen += 1
                    if seen > n:
                        # aperiodic monoid element: treat path length as weight
                        break
                out[a] = k
            self._orders = out
        return self._orders


def _closure(table: np.ndarray, gens: Sequence[int], identity: int) -> np.ndarray:
    """Boolean membership array of the submonoid generated by gens."""
    n = table.shape[0]
    inset = np.zeros(n, dtype=bool)
    inset[identity] = True
    garr = np.unique(np.asarray(list(gens), dtype=np.int64))
    fresh = garr[~inset[garr]]
    inset[fresh] = True
    frontier = fresh
    while frontier.size:
        prods = table[frontier][:, garr].ravel()
        prods = np.unique(prods)
        new = prods[~inset[prods]]
        inset[new] = True
        frontier = new
    return inset


def _coset_reps(table: np.ndarray, members: np.ndarray, inset: np.ndarray) -> list[int]:
    """One representative of each right coset S*g outside S."""
    n = table.shape[0]
    seen = inset.copy()
    reps: list[int] = []
    for g in range(n):
        if seen[g]:
            continue
        reps.append(g)
        seen[table[members, g]] = True
    return reps


def _conjugacy_class_reps(M: ActionTable) -> list[int]:
    t = M.table
    inv = M.inverses
    n = M.size
    garr = np.arange(n)
    seen = np.zeros(n, dtype=bool)
    reps = []
    for a in range(n):
        if seen[a]:
            continue
        reps.append(a)
        orbit = t[t[inv, a], garr]      # g^-1 a g for every g
        seen[orbit] = True
    return reps


def _commutator_elements(M: ActionTable) -> np.ndarray:
    t = M.table
    inv = M.inverses
    n = M.size
    garr = np.arange(n)
    out = set()
    for a in range(n):
        x = t[inv[a], inv]              # a^-1 b^-1 for all b
        y = t[x, a]
        z = t[y, garr]                  # a^-1 b^-1 a b
        out.update(np.unique(z).tolist())
    return np.array(sorted(out), dtype=np.int64)


def _power_elements(M: ActionTable, p: int) -> np.ndarray:
    t = M.table
    n = M.size
    cur = np.arange(n)
    for _ in range(p - 1):
        cur = t[cur, np.arange(n)]
    return np.unique(cur)


def _reduce_gens(table: np.ndarray, identity: int, gens: Sequence[int],
                 target_count: int) -> list[int]:
    kept: list[int] = []
    inset = np.zeros(table.shape[0], dtype=bool)
    inset[identity] = True
    for g in gens:
        if inset[g]:
            continue
        kept.append(g)
        inset = _closure(table, kept, identity)
        if int(inset.sum()) == target_count:
            break
    return kept


def _quotient_table(M: ActionTable, normal_inset: np.ndarray) -> ActionTable:
    """Quotient of a group table by a normal subgroup given as a mask."""
    t = M.table
    n = M.size
    members = np.flatnonzero(normal_inset)
    coset_of = np.full(n, -1, dtype=np.int64)
    reps: list[int] = []
    for g in range(n):
        if coset_of[g] >= 0:
            continue
        coset_of[t[members, g]] = len(reps)
        reps.append(g)
    k = len(reps)
    rarr = np.array(reps)
    qt = coset_of[t[np.ix_(rarr, rarr)]]
    if qt.min() < 0:
        raise InternalInvariantError("quotient table incomplete")
    return ActionTable(qt.astype(np.int32), identity=int(coset_of[M.identity]),
                       is_group=True)


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _exact_log(value: int, base: int) -> int:
    k = 0
    while value > 1:
        if value % base:
            raise InternalInvariantError(f"{value} is not a power of {base}")
        value //= base
        k += 1
    return k


def _abelian_min_generators(M: ActionTable) -> int:
    """Minimal generator count of an abelian group table (max p-rank)."""
    n = M.size
    if n == 1:
        return 0
    best = 1
    for p in _prime_factors(n):
        powers = _power_elements(M, p)
        inset = _closure(M.table, powers.tolist(), M.identity)
        idx = n // int(inset.sum())
        if idx > 1:
            best = max(best, _exact_log(idx, p))
    return best


def _abelianization_lower_bound(M: ActionTable) -> int:
    comms = _commutator_elements(M)
    derived_gens = _reduce_gens(M.table, M.identity, comms.tolist(), -1)
    derived = _closure(M.table, derived_gens, M.identity) if derived_gens else None
    if derived is None:
        inset = np.zeros(M.size, dtype=bool)
        inset[M.identity] = True
        derived = inset
    ab = _quotient_table(M, derived)
    return _abelian_min_generators(ab)


def _frattini_rank(M: ActionTable, p: int) -> int:
    """Exact rank of a p-group via its Frattini quotient."""
    gens = np.union1d(_commutator_elements(M), _power_elements(M, p))
    reduced = _reduce_gens(M.table, M.identity, gens.tolist(), -1)
    if reduced:
        frat = _closure(M.table, reduced, M.identity)
        frat_order = int(frat.sum())
    else:
        frat_order = 1
    index = M.size // frat_order
    return _exact_log(index, p)


@dataclass
class RankResult:
    """Outcome of a rank query: exact, bounded, or unknown."""

    lower: int
    upper: Optional[int]
    exact: Optional[int]
    witness: Optional[tuple[int, ...]]
    status: str   # "exact" | "bounded" | "unknown"


class _Deadline:
    def __init__(self, seconds: Optional[float]):
        self.t_end = None if seconds is None else time.monotonic() + seconds

    def check(self):
        if self.t_end is not None and time.monotonic() > self.t_end:
            raise _OutOfTime


class _OutOfTime(Exception):
    pass


def _greedy_witness(M: ActionTable) -> list[int]:
    n = M.size
    orders = M.element_orders()
    ranking = sorted(range(n), key=lambda a: (-int(orders[a]), a))
    gens: list[int] = []
    inset = np.zeros(n, dtype=bool)
    inset[M.identity] = True
    for a in ranking:
        if inset[a]:
            continue
        gens.append(a)
        inset = _closure(M.table, gens, M.identity)
        if int(inset.sum()) == n:
            break
    if int(inset.sum()) != n:
        raise InternalInvariantError("full element set failed to generate")
    # drop redundant generators
    changed = True
    while changed and len(gens) > 1:
        changed = False
        for i in range(len(gens)):
            trial = gens[:i] + gens[i + 1:]
            if int(_closure(M.table, trial, M.identity).sum()) == n:
                gens = trial
                changed = True
                break
    return gens


def _search_level(M: ActionTable, k: int, deadline: _Deadline,
                  first_reps: Optional[list[int]]) -> Optional[list[int]]:
    """Find a generating set of size exactly <= k, or prove none exists."""
    n = M.size
    t = M.table
    orders = M.element_orders()
    memo: dict[bytes, int] = {}

    def rank_key(a: int) -> tuple[int, int]:
        return (-int(orders[a]), a)

    def rec(inset: np.ndarray, count: int, gens: list[int], left: int) -> Optional[list[int]]:
        deadline.check()
        if count == n:
            return list(gens)
        if left == 0:
            return None
        key = np.packbits(inset).tobytes()
        if memo.get(key, -1) >= left:
            return None
        members = np.flatnonzero(inset)
        if not gens:
            cands = first_reps if first_reps is not None else list(range(n))
            cands = [c for c in cands if not inset[c]]
        elif M.is_group:
            # adjoining s*g generates the same subgroup as adjoining g,
            # so one representative per right coset suffices
            cands = _coset_reps(t, members, inset)
        else:
            cands = np.flatnonzero(~inset).tolist()
        cands.sort(key=rank_key)
        for g in cands:
            new_gens = gens + [g]
            new_inset = _closure(t, new_gens, M.identity)
            res = rec(new_inset, int(new_inset.sum()), new_gens, left - 1)
            if res is not None:
                return res
        memo[key] = left
        return None

    start = np.zeros(n, dtype=bool)
    start[M.identity] = True
    return rec(start, 1, [], k)


def rank_info(M: ActionTable, caps: Caps = DEFAULT_CAPS,
              timeout: Optional[float] = None,
              use_structure_shortcuts: bool = True) -> RankResult:
    """Exact rank with explicit status; never silently wrong on timeout."""
    n = M.size
    if n > caps.oracle_order_cap:
        raise CapExceeded(f"rank oracle accepts size <= {caps.oracle_order_cap}, got {n}")
    if n == 1:
        return RankResult(0, 0, 0, (), "exact")
    budget = caps.oracle_timeout if timeout is None else timeout
    deadline = _Deadline(budget)

    orders = M.element_orders()
    max_order = int(orders.max())
    if M.is_group and max_order == n:
        g = int(np.argmax(orders == n))
        return RankResult(1, 1, 1, (g,), "exact")

    if M.is_group and use_structure_shortcuts:
        pf = _prime_factors(n)
        if len(pf) == 1:
            rank = _frattini_rank(M, pf[0])
            witness = _greedy_witness(M)
            if len(witness) != rank:
                raise InternalInvariantError(
                    f"irredundant set size {len(witness)} != Frattini rank {rank}")
            return RankResult(rank, rank, rank, tuple(witness), "exact")
        lower = max(1, _abelianization_lower_bound(M))
    else:
        lower = 1

    greedy = _greedy_witness(M)
    upper = len(greedy)
    if upper < lower:
        raise InternalInvariantError(f"witness of size {upper} beats lower bound {lower}")
    if upper == lower:
        return RankResult(lower, upper, upper, tuple(greedy), "exact")

    first_reps = _conjugacy_class_reps(M) if M.is_group else None
    k = lower
    try:
        while k < upper:
            witness = _search_level(M, k, deadline, first_reps)
            if witness is not None:
                return RankResult(k, k, k, tuple(witness), "exact")
            k += 1
    except _OutOfTime:
        raise RankSearchTimeout(k, upper) from None
    return RankResult(upper, upper, upper, tuple(greedy), "exact")


def rank_exact(M: ActionTable, caps: Caps = DEFAULT_CAPS,
               timeout: Optional[float] = None) -> int:
    """Smallest k such that some k-subset generates M (0 for trivial)."""
    return rank_info(M, caps, timeout).exact


def rank_upper_witness(M: ActionTable, k: int, caps: Caps = DEFAULT_CAPS,
                       timeout: Optional[float] = None) -> Optional[tuple[int, ...]]:
    """Some generating set of size <= k, or None for "unknown within budget"."""
    if M.size == 1:
        return ()
    budget = caps.oracle_timeout if timeout is None else timeout
    deadline = _Deadline(budget)
    try:
        greedy = _greedy_witness(M)
        if len(greedy) <= k:
            return tuple(greedy)
        first_reps = _conjugacy_class_reps(M) if M.is_group else None
        witness = _search_level(M, k, deadline, first_reps)
    except _OutOfTime:
        return None
    return tuple(witness) if witness is not None else None


def group_rank(G: FiniteGroup, caps: Caps = DEFAULT_CAPS,
               timeout: Optional[float] = None) -> int:
    """Exact rank of a finite group given by its table."""
    return rank_exact(ActionTable.from_group(G), caps, timeout)
