"""The shift action of a finite group on its configuration space A^G.

A configuration is a function x: G -> {0..q-1}, encoded as the tuple
(x(0), ..., x(n-1)) or as the big-endian radix-q integer of that tuple, so
lexicographic order on tuples equals numeric order on codes.  The shift is
(g.x)(h) = x(g^-1 h).

Orbit enumeration scans the whole code space with vectorized arithmetic:
since the full group is available, the minimum of g.x over all g is already
the canonical (lexicographically least) representative of the orbit of x.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

import numpy as np

from .caps import DEFAULT_CAPS, Caps
from .errors import CapExceeded, ConstructionError, InternalInvariantError
from .groups import FiniteGroup
from .lattice import (Subgroup, SubgroupClassTable, conjugacy_classes,
                      mobius_table)


def encode_config(values: Sequence[int], q: int) -> int:
    code = 0
    for v in values:
        if not 0 <= v < q:
            raise ConstructionError(f"symbol {v} outside alphabet of size {q}")
        code = code * q + v
    return code


def decode_config(code: int, n: int, q: int) -> tuple[int, ...]:
    out = [0] * n
    for i in range(n - 1, -1, -1):
        code, out[i] = divmod(code, q)
    return tuple(out)


def shift(G: FiniteGroup, g: int, x: Sequence[int]) -> tuple[int, ...]:
    """g.x with (g.x)(h) = x(g^-1 h)."""
    if len(x) != G.order:
        raise ConstructionError(
            f"configuration length {len(x)} != group order {G.order}")
    row = G.table[G.inv(g)]
    return tuple(x[int(row[h])] for h in range(G.order))


def stabilizer(G: FiniteGroup, x: Sequence[int]) -> Subgroup:
    """The subgroup of all g with g.x = x."""
    xs = tuple(x)
    mask = 0
    for g in G.elements():
        if shift(G, g, xs) == xs:
            mask |= 1 << g
    return Subgroup(G, mask)


def _source_positions(G: FiniteGroup) -> np.ndarray:
    """src[g, h] = g^-1 h: position h of g.x reads position src[g, h] of x."""
    return np.stack([G.table[G.inverses[g]] for g in G.elements()])


def _apply_shift_codes(codes: np.ndarray, src: np.ndarray, n: int, q: int) -> np.ndarray:
    """Codes of g.x for an array of configuration codes x (one fixed g)."""
    if q == 2:
        out = np.zeros_like(codes)
        for h in range(n):
            out |= ((codes >> (n - 1 - int(src[h]))) & 1) << (n - 1 - h)
        return out
    digits = np.empty((codes.size, n), dtype=np.int64)
    rem = codes.copy()
    for i in range(n - 1, -1, -1):
        rem, digits[:, i] = np.divmod(rem, q)
    weights = q ** (n - 1 - np.arange(n, dtype=np.int64))
    return digits[:, src] @ weights


class OrbitDecomposition:
    """All shift orbits of A^G with representatives, sizes and stabilizers.

    Stored as parallel arrays; ``orbit(i)`` materializes one record.  The
    ``alpha`` map counts orbits per conjugacy class of stabilizers.
    """

    def __init__(self, group: FiniteGroup, q: int, class_table: SubgroupClassTable,
                 reps: np.ndarray, sizes: np.ndarray, stab_masks: np.ndarray,
                 class_ids: np.ndarray):
        self.group = group
        self.q = q
        self.class_table = class_table
        self.reps = reps
        self.sizes = sizes
        self.stab_masks = stab_masks
        self.class_ids = class_ids
        alpha: dict[int, int] = {ci: 0 for ci in range(class_table.r)}
        for ci, count in zip(*np.unique(class_ids, return_counts=True)):
            alpha[int(ci)] = int(count)
        self.alpha = alpha

    def __len__(self) -> int:
        return len(self.reps)

    @property
    def total_configurations(self) -> int:
        return self.q ** self.group.order

    def orbit(self, i: int) -> "Orbit":
        rep_code = int(self.reps[i])
        return Orbit(
            representative=decode_config(rep_code, self.group.order, self.q),
            representative_code=rep_code,
            size=int(self.sizes[i]),
            stabilizer=Subgroup(self.group, int(self.stab_masks[i])),
            class_id=int(self.class_ids[i]),
        )

    def __iter__(self) -> Iterator["Orbit"]:
        return (self.orbit(i) for i in range(len(self)))

    def jsonl_records(self) -> Iterator[dict]:
        for i in range(len(self)):
            o = self.orbit(i)
            yield {
                "rep": list(o.representative),
                "size": o.size,
                "stabilizer_class": o.class_id,
                "class_index": self.group.order // o.stabilizer.order,
            }


@dataclass(frozen=True)
class Orbit:
    representative: tuple[int, ...]
    representative_code: int
    size: int
    stabilizer: Subgroup
    class_id: int


def enumerate_orbits(G: FiniteGroup, q: int, caps: Caps = DEFAULT_CAPS) -> OrbitDecomposition:
    """Complete orbit decomposition of A^G under the shift action.

    Deterministic: representatives are the lexicographically least
    configurations, listed in increasing code order.
    """
    if q < 2:
        raise ConstructionError(f"alphabet size must be >= 2, got {q}")
    n = G.order
    total = q ** n
    if total > caps.max_states:
        raise CapExceeded(f"state space {q}^{n} exceeds cap {caps.max_states}")
    class_table = conjugacy_classes(G, caps)
    src = _source_positions(G)

    chunk = 1 << 20
    minima = np.empty(total, dtype=np.int64)
    starts = range(0, total, chunk)

    def scan(start: int) -> None:
        codes = np.arange(start, min(start + chunk, total), dtype=np.int64)
        m = codes.copy()
        for g in range(1, n):
            np.minimum(m, _apply_shift_codes(codes, src[g], n, q), out=m)
        minima[start:start + codes.size] = m

    if caps.threads > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=caps.threads) as pool:
            list(pool.map(scan, starts))
    else:
        for s in starts:
            scan(s)

    reps, sizes = np.unique(minima, return_counts=True)
    del minima

    stab_masks = np.ones(reps.size, dtype=np.int64)   # identity always fixes
    for g in range(1, n):
        fixed = _apply_shift_codes(reps, src[g], n, q) == reps
        stab_masks |= fixed.astype(np.int64) << g

    stab_sizes = np.array([int(m).bit_count() for m in stab_masks], dtype=np.int64)
    if not (sizes * stab_sizes == n).all():
        raise InternalInvariantError("orbit-stabilizer identity failed")
    if int(sizes.sum()) != total:
        raise InternalInvariantError("orbit sizes do not cover the space")

    unique_masks = {}
    for m in np.unique(stab_masks):
        unique_masks[int(m)] = class_table.class_id_of(int(m))
    class_ids = np.array([unique_masks[int(m)] for m in stab_masks], dtype=np.int64)

    return OrbitDecomposition(G, q, class_table, reps, sizes, stab_masks, class_ids)


def burnside_orbit_count(G: FiniteGroup, q: int) -> int:
    """Exact orbit count: average over g of q^(cycles of g on G).

    Left multiplication by g is free, so it has |G| / order(g) cycles.
    """
    if q < 2:
        raise ConstructionError(f"alphabet size must be >= 2, got {q}")
    n = G.order
    acc = 0
    for g in G.elements():
        acc += q ** (n // G.element_order(g))
    if acc % n:
        raise InternalInvariantError("Burnside sum not divisible by group order")
    return acc // n


def alpha_mobius(G: FiniteGroup, q: int, class_id: int,
                 caps: Caps = DEFAULT_CAPS) -> int:
    """Orbit count with stabilizer in a given class, via Mobius inversion.

    Counts configurations with stabilizer exactly H by inverting
    "fixed by K" counts q^[G:K] over the interval above H, then divides by
    the number of points per orbit whose stabilizer is exactly H.
    """
    if q < 2:
        raise ConstructionError(f"alphabet size must be >= 2, got {q}")
    table = conjugacy_classes(G, caps)
    mob = mobius_table(G, caps)
    cls = table.classes[class_id]
    h_mask = cls.representative.mask
    h_order = cls.representative.order
    theta = 0
    for sub in table.all_subgroups():
        if h_mask & ~sub.mask == 0:    # H <= K
            theta += mob.mu(h_mask, sub.mask) * q ** (G.order // sub.order)
    per_orbit = cls.normalizer.order // h_order
    if theta < 0 or theta % per_orbit:
        raise InternalInvariantError(
            f"exact-stabilizer count {theta} not divisible by {per_orbit}")
    return theta // per_orbit


def alpha_all(G: FiniteGroup, q: int, caps: Caps = DEFAULT_CAPS) -> dict[int, int]:
    """alpha for every class; checked against the Burnside orbit count."""
    table = conjugacy_classes(G, caps)
    out = {ci: alpha_mobius(G, q, ci, caps) for ci in range(table.r)}
    if sum(out.values()) != burnside_orbit_count(G, q):
        raise InternalInvariantError("class orbit counts disagree with Burnside count")
    return out
