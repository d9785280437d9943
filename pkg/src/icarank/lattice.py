"""Subgroup lattices: enumeration, conjugacy classes, quotients, Mobius data.

Subgroups are bitmasks over element indices, so containment is ``&`` and the
whole lattice of a group of order <= 256 stays cheap.  Everything here is
deterministic: subgroups and classes are always emitted sorted by
(order, bitmask).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .caps import DEFAULT_CAPS, Caps
from .errors import (CapExceeded, InternalInvariantError, NotASubgroupError,
                     NotNormalError)
from .groups import FiniteGroup


def _mask_members(mask: int) -> tuple[int, ...]:
    out = []
    g = 0
    while mask:
        if mask & 1:
            out.append(g)
        mask >>= 1
        g += 1
    return tuple(out)


class Subgroup:
    """A subgroup of a parent group, stored as a member bitmask."""

    __slots__ = ("parent", "mask", "_members")

    def __init__(self, parent: FiniteGroup, mask: int):
        self.parent = parent
        self.mask = mask
        self._members: Optional[tuple[int, ...]] = None

    @classmethod
    def from_members(cls, parent: FiniteGroup, members: Iterable[int],
                     check: bool = True) -> "Subgroup":
        mask = 0
        for g in members:
            if not 0 <= g < parent.order:
                raise NotASubgroupError(f"element {g} out of range")
            mask |= 1 << g
        sub = cls(parent, mask)
        if check and not sub.is_valid():
            raise NotASubgroupError("member set is not closed")
        return sub

    @property
    def members(self) -> tuple[int, ...]:
        if self._members is None:
            self._members = _mask_members(self.mask)
        return self._members

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def index(self) -> int:
        return self.parent.order // self.order

    def __contains__(self, g: int) -> bool:
        return bool((self.mask >> g) & 1)

    def contains_subgroup(self, other: "Subgroup") -> bool:
        return other.mask & ~self.mask == 0

    def is_valid(self) -> bool:
        G = self.parent
        mem = self.members
        if 0 not in self:
            return False
        if G.order % len(mem):
            return False
        for a in mem:
            if G.inv(a) not in self:
                return False
            for b in mem:
                if G.mul(a, b) not in self:
                    return False
        return True

    def conjugate_by(self, g: int) -> "Subgroup":
        """g^-1 H g as a subgroup."""
        G = self.parent
        mask = 0
        for h in self.members:
            mask |= 1 << G.conjugate(h, g)
        return Subgroup(G, mask)

    def is_normal(self) -> bool:
        return all(self.conjugate_by(g).mask == self.mask
                   for g in self.parent.generators())

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subgroup) and other.parent is self.parent
                and other.mask == self.mask)

    def __hash__(self) -> int:
        return hash((id(self.parent), self.mask))

    def __repr__(self) -> str:
        names = ",".join(self.parent.label(g) for g in self.members[:6])
        suffix = ",..." if self.order > 6 else ""
        return f"Subgroup<{self.order}>{{{names}{suffix}}}"


def generated_subgroup(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    """The subgroup generated by a set of elements (product closure)."""
    mask = 1
    frontier = []
    glist = sorted(set(int(g) for g in gens))
    for g in glist:
        if not (mask >> g) & 1:
            mask |= 1 << g
            frontier.append(g)
    t = G.table
    while frontier:
        nxt = []
        for x in frontier:
            row = t[x]
            for g in glist:
                y = int(row[g])
                if not (mask >> y) & 1:
                    mask |= 1 << y
                    nxt.append(y)
        frontier = nxt
    return Subgroup(G, mask)


def _reduce_generators(G: FiniteGroup, sub_mask: int, seed_gens: Sequence[int]) -> list[int]:
    """Shrink a generating set for a known subgroup, greedily."""
    kept: list[int] = []
    mask = 1
    for g in seed_gens:
        if (mask >> g) & 1:
            continue
        kept.append(g)
        mask = generated_subgroup(G, kept).mask
        if mask == sub_mask:
            break
    return kept


def subgroups(G: FiniteGroup, caps: Caps = DEFAULT_CAPS,
              max_order_override: Optional[int] = None) -> list[Subgroup]:
    """Every subgroup exactly once, sorted by (order, bitmask).

    Seeds with all cyclic subgroups, then closes under pairwise join until a
    fixed point.
    """
    limit = max_order_override if max_order_override is not None else caps.max_lattice_order
    lat = _lattice_of(G, caps, limit)
    return [Subgroup(G, m) for m in lat.masks]


@dataclass
class _Lattice:
    masks: list[int]                 # sorted by (popcount, value)
    gens: dict[int, list[int]]       # small generators per subgroup
    orders: dict[int, int]


def _cyclic_seed(G: FiniteGroup) -> dict[int, list[int]]:
    t = G.table
    out: dict[int, list[int]] = {1: []}
    for g in range(1, G.order):
        mask = 1
        x = g
        while x != 0:
            mask |= 1 << x
            x = int(t[x, g])
        if mask not in out:
            out[mask] = [g]
    return out


def _lattice_of(G: FiniteGroup, caps: Caps, limit: int) -> _Lattice:
    if G._lattice is not None:
        return G._lattice
    if G.order > limit:
        raise CapExceeded(f"subgroup lattice needs order <= {limit}, got {G.order}")
    found = _cyclic_seed(G)
    masks = list(found.keys())
    i = 0
    while i < len(masks):
        mi = masks[i]
        for j in range(i):
            mj = masks[j]
            union = mi | mj
            if union == mi or union == mj:
                continue
            if union in found:
                continue
            join = generated_subgroup(G, found[mi] + found[mj])
            if join.mask not in found:
                found[join.mask] = _reduce_generators(G, join.mask,
                                                      found[mi] + found[mj])
                masks.append(join.mask)
        i += 1
    ordered = sorted(found.keys(), key=lambda m: (m.bit_count(), m))
    lat = _Lattice(
        masks=ordered,
        gens=found,
        orders={m: m.bit_count() for m in ordered},
    )
    G._lattice = lat
    return lat


def normalizer(G: FiniteGroup, H: Subgroup) -> Subgroup:
    """N_G(H); always contains H."""
    if H.parent is not G:
        raise NotASubgroupError("subgroup belongs to a different group")
    if not H.is_valid():
        raise NotASubgroupError("not a subgroup")
    mask = 0
    for g in G.elements():
        if H.conjugate_by(g).mask == H.mask:
            mask |= 1 << g
    return Subgroup(G, mask)


def quotient(G: FiniteGroup, N: Subgroup) -> FiniteGroup:
    """The quotient group G/N on cosets of a normal subgroup N."""
    if N.parent is not G:
        raise NotASubgroupError("subgroup belongs to a different group")
    if not N.is_valid():
        raise NotASubgroupError("not a subgroup")
    if not all(N.conjugate_by(g).mask == N.mask for g in G.elements()):
        raise NotNormalError(f"{N!r} is not normal in {G.name}")
    t = G.table
    coset_of = [-1] * G.order
    reps: list[int] = []
    for g in G.elements():
        if coset_of[g] >= 0:
            continue
        idx = len(reps)
        reps.append(g)
        for h in N.members:
            coset_of[int(t[g, h])] = idx
    k = len(reps)
    qt = np.empty((k, k), dtype=np.int32)
    for i, a in enumerate(reps):
        row = t[a]
        qt[i] = [coset_of[int(row[b])] for b in reps]
    labels = [f"{G.label(r)}N" for r in reps]
    return FiniteGroup(qt, f"{G.name}/N{N.order}", labels=labels)


def subgroup_as_group(G: FiniteGroup, H: Subgroup) -> tuple[FiniteGroup, list[int]]:
    """Materialize a subgroup as a standalone group.

    Returns the new group and the list mapping its element indices back to
    parent indices.
    """
    mem = list(H.members)
    pos = {g: i for i, g in enumerate(mem)}
    k = len(mem)
    t = G.table
    st = np.empty((k, k), dtype=np.int32)
    for i, a in enumerate(mem):
        row = t[a]
        st[i] = [pos[int(row[b])] for b in mem]
    labels = [G.label(g) for g in mem]
    sub = FiniteGroup(st, f"{G.name}|{k}", labels=labels)
    return sub, mem


@dataclass
class SubgroupClass:
    """One conjugacy class of subgroups."""

    representative: Subgroup
    members: tuple[Subgroup, ...]
    normalizer: Subgroup
    index: int
    is_normal: bool
    quotient: Optional[FiniteGroup]


class SubgroupClassTable:
    """All subgroups of a group partitioned into conjugacy classes.

    ``r`` is the total class count and ``r_by_index`` maps subgroup index to
    the number of classes at that index.  Classes are sorted by
    (subgroup order, representative bitmask); the trivial class comes first
    and the class of G itself is last.
    """

    def __init__(self, group: FiniteGroup, classes: list[SubgroupClass]):
        self.group = group
        self.classes = classes
        self.r = len(classes)
        r_by_index: dict[int, int] = {}
        for c in classes:
            r_by_index[c.index] = r_by_index.get(c.index, 0) + 1
        self.r_by_index = r_by_index
        self._class_by_mask: dict[int, int] = {}
        for ci, c in enumerate(classes):
            for sub in c.members:
                self._class_by_mask[sub.mask] = ci

    def r_i(self, i: int) -> int:
        return self.r_by_index.get(i, 0)

    def class_id_of(self, sub: Subgroup | int) -> int:
        mask = sub.mask if isinstance(sub, Subgroup) else sub
        try:
            return self._class_by_mask[mask]
        except KeyError:
            raise InternalInvariantError("stabilizer not found in lattice") from None

    def all_subgroups(self) -> list[Subgroup]:
        subs = [s for c in self.classes for s in c.members]
        subs.sort(key=lambda s: (s.order, s.mask))
        return subs

    def class_of_group(self) -> int:
        return self.r - 1

    def trivial_class(self) -> int:
        return 0


def conjugacy_classes(G: FiniteGroup, caps: Caps = DEFAULT_CAPS,
                      max_order_override: Optional[int] = None) -> SubgroupClassTable:
    """Partition all subgroups into conjugacy classes with normalizer data.

    Quotients are attached to normal classes.  Cached per group instance.
    """
    if G._classes is not None:
        return G._classes
    limit = max_order_override if max_order_override is not None else caps.max_lattice_order
    lat = _lattice_of(G, caps, limit)

    gens = G.generators()
    abelian = G.is_abelian
    seen: set[int] = set()
    classes: list[SubgroupClass] = []
    for mask in lat.masks:
        if mask in seen:
            continue
        if abelian:
            orbit = [mask]
        else:
            orbit = [mask]
            orbit_set = {mask}
            frontier = [mask]
            while frontier:
                nxt = []
                for m in frontier:
                    sub = Subgroup(G, m)
                    for g in gens:
                        cm = sub.conjugate_by(g).mask
                        if cm not in orbit_set:
                            orbit_set.add(cm)
                            orbit.append(cm)
                            nxt.append(cm)
                frontier = nxt
            orbit.sort()
        seen.update(orbit)
        rep = Subgroup(G, orbit[0])
        if abelian:
            norm = Subgroup(G, (1 << G.order) - 1)
        else:
            norm = normalizer(G, rep)
        index = G.order // rep.order
        is_norm = len(orbit) == 1
        quot = quotient(G, rep) if is_norm else None
        classes.append(SubgroupClass(
            representative=rep,
            members=tuple(Subgroup(G, m) for m in orbit),
            normalizer=norm,
            index=index,
            is_normal=is_norm,
            quotient=quot,
        ))
    classes.sort(key=lambda c: (c.representative.order, c.representative.mask))
    table = SubgroupClassTable(G, classes)
    G._classes = table
    return table


class MobiusTable:
    """Mobius function of the subgroup lattice.

    ``mu(H, H) = 1`` and ``sum_{H <= L <= K} mu(H, L) = 0`` for H < K.
    """

    def __init__(self, entries: dict[tuple[int, int], int]):
        self.entries = entries

    def mu(self, h: Subgroup | int, k: Subgroup | int) -> int:
        hm = h.mask if isinstance(h, Subgroup) else h
        km = k.mask if isinstance(k, Subgroup) else k
        return self.entries[(hm, km)]


def mobius_table(G: FiniteGroup, caps: Caps = DEFAULT_CAPS) -> MobiusTable:
    """mu(H, K) for all pairs H <= K, by recursive inversion."""
    if G._mobius is not None:
        return G._mobius
    lat = _lattice_of(G, caps, caps.max_lattice_order)
    masks = lat.masks
    entries: dict[tuple[int, int], int] = {}
    for h in masks:
        above = [k for k in masks if h & ~k == 0]
        above.sort(key=lambda m: (m.bit_count(), m))
        for k in above:
            if k == h:
                entries[(h, k)] = 1
                continue
            acc = 0
            for l in above:
                if l == k:
                    continue
                if l & ~k == 0:
                    acc += entries[(h, l)]
            entries[(h, k)] = -acc
    table = MobiusTable(entries)
    G._mobius = table
    return table


def group_length(G: FiniteGroup, caps: Caps = DEFAULT_CAPS) -> int:
    """Length of the longest chain 1 = G_0 < ... < G_l = G of subgroups."""
    if G._length is not None:
        return G._length
    lat = _lattice_of(G, caps, caps.max_lattice_order)
    masks = lat.masks
    best: dict[int, int] = {}
    for m in masks:   # sorted by size, so proper subgroups come earlier
        longest = 0
        for p in masks:
            if p == m:
                continue
            if p.bit_count() >= m.bit_count():
                break
            if p & ~m == 0:
                cand = best[p] + 1
                if cand > longest:
                    longest = cand
        best[m] = longest
    length = best[masks[-1]]
    G._length = length
    return length


def is_dedekind(G: FiniteGroup, caps: Caps = DEFAULT_CAPS) -> bool:
    """True iff every subgroup is normal."""
    if G.is_abelian:
        return True
    table = conjugacy_classes(G, caps)
    return all(c.is_normal for c in table.classes)
