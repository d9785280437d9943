"""Explicit finite groups as multiplication tables.

Elements are integers ``0..order-1`` and the identity is always index 0.
All structure is carried by a dense table, so everything downstream is
table-driven and independent of how a group was presented.

Naming convention: dihedral groups are named by ORDER, so ``D8`` is the
dihedral group of order 8 (symmetries of the square).  Both conventions
exist in the literature; this toolkit uses order everywhere.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .caps import DEFAULT_CAPS, Caps
from .errors import CapExceeded, ConstructionError


class FiniteGroup:
    """A finite group given by an explicit multiplication table.

    ``table[a, b]`` is the index of the product ``a*b``; ``inverses[a]``
    satisfies ``table[a, inverses[a]] == 0``.  Instances are immutable after
    construction and safe for concurrent reads.
    """

    __slots__ = (
        "order", "table", "identity", "inverses", "name", "labels", "kind",
        "perm_degree", "_generators", "_is_abelian", "_lattice", "_classes",
        "_mobius", "_length", "_orders",
    )

    def __init__(
        self,
        table,
        name: str,
        labels: Optional[Sequence[str]] = None,
        kind: Optional[tuple] = None,
        generators: Optional[Sequence[int]] = None,
        perm_degree: Optional[int] = None,
    ):
        arr = np.ascontiguousarray(np.asarray(table, dtype=np.int32))
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ConstructionError("multiplication table must be square")
        n = arr.shape[0]
        if n == 0:
            raise ConstructionError("a group has at least one element")
        if arr.min() < 0 or arr.max() >= n:
            raise ConstructionError("table entries out of range")
        rng = np.arange(n, dtype=np.int32)
        if not (np.array_equal(arr[0], rng) and np.array_equal(arr[:, 0], rng)):
            raise ConstructionError("element 0 must act as the identity")
        zero_counts = (arr == 0).sum(axis=1)
        if not (zero_counts == 1).all():
            raise ConstructionError("some element has no unique inverse")
        inv = np.empty(n, dtype=np.int32)
        pos = np.argwhere(arr == 0)
        inv[pos[:, 0]] = pos[:, 1]
        arr.setflags(write=False)
        inv.setflags(write=False)

        self.order = n
        self.table = arr
        self.identity = 0
        self.inverses = inv
        self.name = name
        self.labels = list(labels) if labels is not None else None
        self.kind = kind
        self.perm_degree = perm_degree
        self._generators = list(generators) if generators is not None else None
        self._is_abelian: Optional[bool] = None
        self._lattice = None
        self._classes = None
        self._mobius = None
        self._length: Optional[int] = None
        self._orders: Optional[list[int]] = None

    # -- basic arithmetic ---------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverses[a])

    def conjugate(self, a: int, g: int) -> int:
        """g^-1 * a * g."""
        t = self.table
        return int(t[t[self.inverses[g], a], g])

    def elements(self) -> range:
        return range(self.order)

    def element_order(self, a: int) -> int:
        t = self.table
        k, x = 1, a
        while x != 0:
            x = int(t[x, a])
            k += 1
        return k

    def element_orders(self) -> list[int]:
        if self._orders is None:
            self._orders = [self.element_order(a) for a in self.elements()]
        return self._orders

    @property
    def is_abelian(self) -> bool:
        if self._is_abelian is None:
            self._is_abelian = bool((self.table == self.table.T).all())
        return self._is_abelian

    def generators(self) -> list[int]:
        """A small (not necessarily minimal) generating set."""
        if self._generators is None:
            self._generators = _greedy_generators(self)
        return list(self._generators)

    def label(self, a: int) -> str:
        if self.labels is not None:
            return self.labels[a]
        return str(a)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"

    # -- validation ---------------------------------------------------------

    def check_table(self) -> None:
        """Exhaustively verify the group axioms.

        Associativity is cubic and is checked in full only for order <= 256.
        """
        n = self.order
        t = self.table
        rng = np.arange(n, dtype=np.int32)
        assert np.array_equal(t[0], rng) and np.array_equal(t[:, 0], rng)
        assert all(t[a, self.inverses[a]] == 0 for a in range(n))
        assert all(t[self.inverses[a], a] == 0 for a in range(n))
        srt = np.sort(t, axis=1)
        assert (srt == rng).all(), "rows are not permutations"
        srt = np.sort(t, axis=0)
        assert (srt == rng[:, None]).all(), "columns are not permutations"
        if n <= 256:
            left = t[t, :]            # (a*b)*c indexed [a, b, c]
            right = t[:, t]           # a*(b*c) indexed [a, b, c]
            assert (left == right).all(), "associativity fails"


def _greedy_generators(G: FiniteGroup) -> list[int]:
    if G.order == 1:
        return []
    orders = G.element_orders()
    by_order = sorted(G.elements(), key=lambda a: (-orders[a], a))
    gens: list[int] = []
    seen = {0}
    for a in by_order:
        if a in seen:
            continue
        gens.append(a)
        # close under products with the new generating set
        frontier = [0]
        seen = {0}
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = G.mul(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        if len(seen) == G.order:
            break
    return gens


# -- constructors -----------------------------------------------------------


def make_cyclic(n: int, caps: Caps = DEFAULT_CAPS) -> FiniteGroup:
    """The cyclic group of order n with i*j = (i+j) mod n."""
    if not 1 <= n:
        raise ConstructionError(f"cyclic order must be positive, got {n}")
    if n > caps.max_group_order:
        raise CapExceeded(f"cyclic order {n} exceeds cap {caps.max_group_order}")
    idx = np.arange(n, dtype=np.int32)
    table = (idx[:, None] + idx[None, :]) % n
    gens = [1] if n > 1 else []
    return FiniteGroup(table, f"C{n}", labels=[str(i) for i in range(n)],
                       kind=("cyclic", n), generators=gens)


def make_dihedral(order: int, caps: Caps = DEFAULT_CAPS) -> FiniteGroup:
    """The dihedral group named by ORDER: D8 has order 8.

    Elements ``0..n-1`` are the rotations ``r^i`` and ``n..2n-1`` the
    reflections ``r^i s``, with ``r^n = s^2 = s r s r = e``.
    """
    if order < 2 or order % 2:
        raise ConstructionError(f"dihedral order must be even and >= 2, got {order}")
    if order > caps.max_group_order:
        raise CapExceeded(f"dihedral order {order} exceeds cap {caps.max_group_order}")
    n = order // 2
    i = np.arange(n, dtype=np.int32)
    rot_rot = (i[:, None] + i[None, :]) % n            # r^a * r^b
    rot_ref = ((i[:, None] + i[None, :]) % n) + n      # r^a * r^b s
    ref_rot = ((i[:, None] - i[None, :]) % n) + n      # r^a s * r^b
    ref_ref = (i[:, None] - i[None, :]) % n            # r^a s * r^b s
    table = np.block([[rot_rot, rot_ref], [ref_rot, ref_ref]]).astype(np.int32)
    labels = ["e"] + [f"r{k}" if k > 1 else "r" for k in range(1, n)]
    labels += ["s"] + [f"r{k}s" if k > 1 else "rs" for k in range(1, n)]
    if n == 1:
        labels = ["e", "s"]
        gens = [1]
    else:
        gens = [1, n]
    return FiniteGroup(table, f"D{order}", labels=labels,
                       kind=("dihedral", order), generators=gens)


# unit axes 0..3 = 1, i, j, k; _QUAT_SIGN[u][v] = 1 when u*v carries a minus,
# following i*i = j*j = k*k = -1, i*j = k, j*k = i, k*i = j.
_QUAT_UNIT = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]
_QUAT_SIGN = [[0, 0, 0, 0], [0, 1, 0, 1], [0, 1, 1, 0], [0, 0, 1, 1]]


def make_quaternion() -> FiniteGroup:
    """The quaternion group Q8 = {1, -1, i, -i, j, -j, k, -k}."""
    def enc(u: int, s: int) -> int:
        return 2 * u + s

    table = np.zeros((8, 8), dtype=np.int32)
    for u1 in range(4):
        for s1 in range(2):
            for u2 in range(4):
                for s2 in range(2):
                    u = _QUAT_UNIT[u1][u2]
                    s = s1 ^ s2 ^ _QUAT_SIGN[u1][u2]
                    table[enc(u1, s1), enc(u2, s2)] = enc(u, s)
    labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    return FiniteGroup(table, "Q8", labels=labels, kind=("quaternion",),
                       generators=[2, 4])


def _perm_compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """Product "apply p, then q"."""
    return tuple(q[p[i]] for i in range(len(p)))


def _cycle_notation(p: Sequence[int]) -> str:
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if seen[i] or p[i] == i:
            seen[i] = True
            continue
        cyc = [i]
        seen[i] = True
        j = p[i]
        while j != i:
            cyc.append(j)
            seen[j] = True
            j = p[j]
        out.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(out) or "()"


def make_symmetric(n: int) -> FiniteGroup:
    """The symmetric group S_n on {0..n-1}, degree recorded for later use."""
    if not 1 <= n <= 7:
        raise ConstructionError(f"symmetric degree must be 1..7, got {n}")
    perms = sorted(itertools.permutations(range(n)))
    # identity must be element 0; lexicographic order already puts it first
    index = {p: i for i, p in enumerate(perms)}
    size = len(perms)
    parr = np.array(perms, dtype=np.int8)
    table = np.empty((size, size), dtype=np.int32)
    lut = {bytes(p): i for i, p in enumerate(parr)}
    for a in range(size):
        rows = parr[:, parr[a]]          # (a then b)(i) = b[a[i]]
        table[a] = [lut[r.tobytes()] for r in rows]
    labels = [_cycle_notation(p) for p in perms]
    if n == 1:
        gens: list[int] = []
    else:
        transposition = index[tuple([1, 0] + list(range(2, n)))]
        ncycle = index[tuple(list(range(1, n)) + [0])]
        gens = [transposition] if n == 2 else [transposition, ncycle]
    return FiniteGroup(table, f"S{n}", labels=labels, kind=("symmetric", n),
                       generators=gens, perm_degree=n)


def direct_product(G: FiniteGroup, H: FiniteGroup,
                   caps: Caps = DEFAULT_CAPS) -> FiniteGroup:
    """Componentwise product on pairs, indexed a*|H| + b."""
    n = G.order * H.order
    if n > caps.max_group_order:
        raise CapExceeded(f"product order {n} exceeds cap {caps.max_group_order}")
    hn = H.order
    ga, gb = np.divmod(np.arange(n, dtype=np.int64), hn)
    ga = ga.astype(np.int32)
    gb = gb.astype(np.int32)
    table = (G.table[np.ix_(ga, ga)].astype(np.int64) * hn
             + H.table[np.ix_(gb, gb)]).astype(np.int32)
    labels = [f"({G.label(a)},{H.label(b)})"
              for a in G.elements() for b in H.elements()]
    gens = [a * hn for a in G.generators()] + list(H.generators())
    name = f"{G.name}x{H.name}"
    return FiniteGroup(table, name, labels=labels,
                       kind=("product", G.kind, H.kind), generators=gens)


def make_wreath(base: FiniteGroup, alpha: int, caps: Caps = DEFAULT_CAPS) -> FiniteGroup:
    """The wreath product base wr S_alpha as an explicit table.

    Elements are pairs (v; phi) with v in base^alpha and phi a permutation of
    the alpha coordinates; (v; phi)(w; psi) = (v * w^phi; phi psi) where
    w^phi = (w_{phi(1)}, ..., w_{phi(alpha)}).
    """
    if alpha < 1:
        raise ConstructionError(f"wreath degree must be >= 1, got {alpha}")
    c = base.order
    n = (c ** alpha) * math.factorial(alpha)
    if n > caps.max_wreath_table:
        raise CapExceeded(f"wreath table size {n} exceeds cap {caps.max_wreath_table}")
    if n > caps.max_group_order:
        raise CapExceeded(f"wreath order {n} exceeds cap {caps.max_group_order}")
    perms = sorted(itertools.permutations(range(alpha)))
    vec_count = c ** alpha

    def dec(x: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        pidx, vidx = divmod(x, vec_count)
        digits = []
        for _ in range(alpha):
            vidx, d = divmod(vidx, c)
            digits.append(d)
        return tuple(reversed(digits)), perms[pidx]

    def enc(v: Sequence[int], phi: tuple[int, ...]) -> int:
        vidx = 0
        for d in v:
            vidx = vidx * c + d
        return perm_index[phi] * vec_count + vidx

    perm_index = {p: i for i, p in enumerate(perms)}
    elems = [dec(x) for x in range(n)]
    table = np.empty((n, n), dtype=np.int32)
    bt = base.table
    for x, (v, phi) in enumerate(elems):
        for y, (w, psi) in enumerate(elems):
            wphi = tuple(w[phi[i]] for i in range(alpha))
            prod_v = tuple(int(bt[v[i], wphi[i]]) for i in range(alpha))
            prod_phi = _perm_compose(phi, psi)
            table[x, y] = enc(prod_v, prod_phi)
    labels = [
        "((" + ",".join(base.label(d) for d in v) + ");" + _cycle_notation(phi) + ")"
        for (v, phi) in elems
    ]
    # base generators in coordinate 0 plus coordinate permutations
    gens = [enc((g,) + (0,) * (alpha - 1), tuple(range(alpha)))
            for g in base.generators()]
    if alpha >= 2:
        swap = tuple([1, 0] + list(range(2, alpha)))
        gens.append(enc((0,) * alpha, swap))
    if alpha >= 3:
        cyc = tuple(list(range(1, alpha)) + [0])
        gens.append(enc((0,) * alpha, cyc))
    name = f"W({base.name},{alpha})"
    return FiniteGroup(table, name, labels=labels,
                       kind=("wreath", base.kind, alpha), generators=gens)


# -- divisor bookkeeping ------------------------------------------------------


@dataclass(frozen=True)
class DivisorStats:
    """Divisor counts of n: total, odd and even."""

    n: int
    d: int
    d_minus: int
    d_plus: int


def divisor_stats(n: int) -> DivisorStats:
    if n < 1:
        raise ConstructionError(f"divisor counts need n >= 1, got {n}")
    odd = even = 0
    for k in range(1, n + 1):
        if n % k == 0:
            if k % 2:
                odd += 1
            else:
                even += 1
    return DivisorStats(n=n, d=odd + even, d_minus=odd, d_plus=even)
