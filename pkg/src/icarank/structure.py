"""Product structure and exact orders of CA(G;A) and its group of units.

The group of invertible cellular automata over A^G decomposes, class by
conjugacy class of stabilizer subgroups, into wreath products
(N_G(H)/H) wr S_alpha.  This module builds that factor list, computes the
resulting orders exactly (or in factored + log2 form when they are
astronomically large), and provides independent brute-force enumerations of
equivariant maps for small instances so the factored orders never have to be
taken on faith.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .caps import DEFAULT_CAPS, Caps
from .configspace import (_apply_shift_codes, _source_positions, alpha_all,
                          decode_config, encode_config)
from .errors import CapExceeded, ConstructionError, InternalInvariantError
from .groups import FiniteGroup
from .isomorphism import describe_group
from .lattice import Subgroup, conjugacy_classes, quotient, subgroup_as_group


_LOG2_ERROR_BOUND = 1e-6


@dataclass(frozen=True)
class BigCount:
    """An exact count, or its factored form when the digits run to millions.

    ``log2`` is accurate to within ``1e-6`` absolutely.  ``powers`` holds
    (base, exponent) terms and ``factorials`` the m of each m! term; the
    count is the product of all of them.  ``exact`` is present whenever the
    estimated decimal digit count is affordable.
    """

    log2: float
    powers: tuple[tuple[int, int], ...]
    factorials: tuple[int, ...]
    exact: Optional[int]

    log2_error_bound: float = _LOG2_ERROR_BOUND

    @classmethod
    def from_factors(cls, powers: Sequence[tuple[int, int]],
                     factorials: Sequence[int],
                     digits_cap: int = DEFAULT_CAPS.exact_digits_cap) -> "BigCount":
        powers = tuple((int(b), int(e)) for b, e in powers if b != 1 and e != 0)
        factorials = tuple(int(m) for m in factorials if m > 1)
        log2 = 0.0
        for b, e in powers:
            log2 += e * math.log2(b)
        for m in factorials:
            log2 += math.lgamma(m + 1) / math.log(2)
        digits_estimate = log2 * math.log10(2) + 1
        exact = None
        if digits_estimate <= digits_cap:
            exact = 1
            for b, e in powers:
                exact *= b ** e
            for m in factorials:
                exact *= math.factorial(m)
        return cls(log2=log2, powers=powers, factorials=factorials, exact=exact)

    @classmethod
    def from_int(cls, value: int) -> "BigCount":
        if value <= 0:
            raise ConstructionError("counts are positive")
        return cls(log2=_log2_int(value), powers=((value, 1),) if value > 1 else (),
                   factorials=(), exact=value)

    def digits(self) -> Optional[int]:
        if self.exact is not None:
            return len(str(self.exact))
        return None

    def factored_str(self) -> str:
        parts = [f"{b}^{e}" if e != 1 else str(b) for b, e in self.powers]
        parts += [f"{m}!" for m in self.factorials]
        return " * ".join(parts) if parts else "1"

    def __str__(self) -> str:
        if self.exact is not None and self.exact < 10 ** 40:
            return str(self.exact)
        return self.factored_str()


def _log2_int(v: int) -> float:
    if v <= 0:
        raise ConstructionError("log2 of non-positive count")
    bits = v.bit_length()
    if bits <= 53:
        return math.log2(v)
    shift = bits - 53
    return shift + math.log2(v >> shift)


@dataclass(frozen=True)
class IcaFactor:
    """One wreath factor (N_G(H)/H) wr S_alpha of the unit group."""

    class_id: int
    quotient: FiniteGroup
    quotient_name: str
    quotient_order: int
    alpha: int


@dataclass(frozen=True)
class IcaStructure:
    """The full factor list of the unit group, one factor per class."""

    group: FiniteGroup
    q: int
    factors: tuple[IcaFactor, ...]
    order: BigCount


def _normalizer_quotient(G: FiniteGroup, cls) -> FiniteGroup:
    sub, mapping = subgroup_as_group(G, cls.normalizer)
    pos = {g: i for i, g in enumerate(mapping)}
    h_inside = Subgroup.from_members(sub, [pos[g] for g in cls.representative.members])
    return quotient(sub, h_inside)


def ica_structure(G: FiniteGroup, q: int, caps: Caps = DEFAULT_CAPS) -> IcaStructure:
    """Factor list of the group of invertible CA over A^G."""
    table = conjugacy_classes(G, caps)
    alphas = alpha_all(G, q, caps)
    factors = []
    powers = []
    factorials = []
    for ci, cls in enumerate(table.classes):
        quot = _normalizer_quotient(G, cls)
        a = alphas[ci]
        factors.append(IcaFactor(
            class_id=ci,
            quotient=quot,
            quotient_name=describe_group(quot),
            quotient_order=quot.order,
            alpha=a,
        ))
        powers.append((quot.order, a))
        factorials.append(a)
    order = BigCount.from_factors(powers, factorials, caps.exact_digits_cap)
    return IcaStructure(group=G, q=q, factors=tuple(factors), order=order)


def ica_order(G: FiniteGroup, q: int, caps: Caps = DEFAULT_CAPS) -> BigCount:
    """|ICA(G;A)| = prod over classes |N_G(H)/H|^alpha * alpha!.

    Avoids materializing the quotient groups; only their orders matter.
    """
    table = conjugacy_classes(G, caps)
    alphas = alpha_all(G, q, caps)
    powers = []
    factorials = []
    for ci, cls in enumerate(table.classes):
        nq = cls.normalizer.order // cls.representative.order
        powers.append((nq, alphas[ci]))
        factorials.append(alphas[ci])
    return BigCount.from_factors(powers, factorials, caps.exact_digits_cap)


def ca_order(G: FiniteGroup, q: int, caps: Caps = DEFAULT_CAPS) -> BigCount:
    """|CA(G;A)|: an equivariant map picks, for each orbit representative,
    any image fixed by the representative's stabilizer, q^[G:H] choices."""
    table = conjugacy_classes(G, caps)
    alphas = alpha_all(G, q, caps)
    exponent = 0
    for ci, cls in enumerate(table.classes):
        exponent += (G.order // cls.representative.order) * alphas[ci]
    if exponent != q ** G.order:
        # sum over orbits of [G:G_x] is the total number of configurations
        raise InternalInvariantError("orbit index sum disagrees with q^|G|")
    return BigCount.from_factors([(q, exponent)], [], caps.exact_digits_cap)


# -- brute-force enumeration oracles -----------------------------------------


@dataclass
class IcaEnumeration:
    """Result of enumerating all shift-equivariant bijections of A^G.

    ``order`` is always the exact count.  ``permutations`` holds the maps as
    tuples over configuration codes when the group is small enough to
    materialize (sorted, hence deterministic); otherwise None.
    """

    group: FiniteGroup
    q: int
    order: int
    permutations: Optional[list[tuple[int, ...]]]
    orbit_count: int
    states: int

    @property
    def materialized(self) -> bool:
        return self.permutations is not None

    def __len__(self) -> int:
        return self.order


def _orbit_scan_small(G: FiniteGroup, q: int):
    """Orbits, per-config stabilizer masks and shift images for small spaces."""
    n = G.order
    total = q ** n
    src = _source_positions(G)
    images = np.empty((n, total), dtype=np.int64)
    codes = np.arange(total, dtype=np.int64)
    for g in range(n):
        images[g] = _apply_shift_codes(codes, src[g], n, q)
    stab_masks = [0] * total
    for x in range(total):
        m = 0
        for g in range(n):
            if images[g, x] == x:
                m |= 1 << g
        stab_masks[x] = m
    orbit_of = np.full(total, -1, dtype=np.int64)
    orbits = []
    for x in range(total):
        if orbit_of[x] >= 0:
            continue
        members = sorted(set(int(images[g, x]) for g in range(n)))
        for y in members:
            orbit_of[y] = len(orbits)
        orbits.append(members)
    return images, stab_masks, orbit_of, orbits


def enumerate_ica_bruteforce(G: FiniteGroup, q: int,
                             caps: Caps = DEFAULT_CAPS) -> IcaEnumeration:
    """All shift-equivariant bijections of A^G, by backtracking over
    orbit-representative images.

    A candidate image for a representative x is any configuration whose
    stabilizer contains the stabilizer of x; assignments that cannot extend
    to a bijection (image orbit of the wrong size, or already used) are
    pruned, and full maps are verified to be bijections.

    When the total count fits under ``caps.ica_materialize_cap`` the maps
    are materialized and counted directly.  Beyond that, the count is the
    product of per-step candidate counts; the interchangeability this relies
    on (every orbit of a class offers the same number of exact-stabilizer
    points) is verified against the enumerated space, and the two counting
    modes are cross-checked on every materializable instance.
    """
    if q < 2:
        raise ConstructionError(f"alphabet size must be >= 2, got {q}")
    n = G.order
    total = q ** n
    if total > caps.ica_enum_states:
        raise CapExceeded(
            f"invertible-CA enumeration needs q^|G| <= {caps.ica_enum_states}")
    images, stab_masks, orbit_of, orbits = _orbit_scan_small(G, q)
    class_table = conjugacy_classes(G, caps)
    n_orbits = len(orbits)
    reps = [members[0] for members in orbits]
    class_of_orbit = [class_table.class_id_of(stab_masks[rep]) for rep in reps]

    # points with a given exact stabilizer, per orbit
    exact_count: list[dict[int, int]] = []
    for members in orbits:
        counts: dict[int, int] = {}
        for y in members:
            counts[stab_masks[y]] = counts.get(stab_masks[y], 0) + 1
        exact_count.append(counts)

    # verified uniformity: orbits of one class are interchangeable targets
    per_class_weight: dict[int, int] = {}
    for oi, rep in enumerate(reps):
        ci = class_of_orbit[oi]
        rep_stab = stab_masks[rep]
        for oj in range(n_orbits):
            got = exact_count[oj].get(rep_stab, 0)
            if class_of_orbit[oj] != ci:
                if got:
                    raise InternalInvariantError(
                        "exact stabilizer appears outside its class")
                continue
            expected = per_class_weight.setdefault(ci, got)
            if got != expected:
                raise InternalInvariantError(
                    "orbits of one class offer different candidate counts")

    alpha_count: dict[int, int] = {}
    for ci in class_of_orbit:
        alpha_count[ci] = alpha_count.get(ci, 0) + 1

    order = 1
    for ci, a in alpha_count.items():
        order *= per_class_weight[ci] ** a * math.factorial(a)

    permutations: Optional[list[tuple[int, ...]]] = None
    if order <= caps.ica_materialize_cap:
        permutations = _materialize_ica(G, q, images, stab_masks, orbit_of,
                                        orbits, reps)
        if len(permutations) != order:
            raise InternalInvariantError(
                f"materialized {len(permutations)} maps, counted {order}")
    return IcaEnumeration(group=G, q=q, order=order, permutations=permutations,
                          orbit_count=n_orbits, states=total)


def _materialize_ica(G: FiniteGroup, q: int, images, stab_masks, orbit_of,
                     orbits, reps) -> list[tuple[int, ...]]:
    n = G.order
    total = len(orbit_of)
    n_orbits = len(orbits)
    out: list[tuple[int, ...]] = []
    tau = np.full(total, -1, dtype=np.int64)
    used = [False] * n_orbits

    def assign(oi: int) -> None:
        if oi == n_orbits:
            perm = tuple(int(v) for v in tau)
            if len(set(perm)) != total:
                raise InternalInvariantError("accepted assignment is not a bijection")
            out.append(perm)
            return
        rep = reps[oi]
        rep_stab = stab_masks[rep]
        size = len(orbits[oi])
        for y in range(total):
            # image must be fixed by everything fixing the representative
            if stab_masks[y] & rep_stab != rep_stab:
                continue
            target = int(orbit_of[y])
            if used[target] or len(orbits[target]) != size:
                continue
            used[target] = True
            for g in range(n):
                tau[images[g, rep]] = images[g, y]
            assign(oi + 1)
            used[target] = False

    assign(0)
    out.sort()
    return out


@dataclass
class CaEnumeration:
    """Result of enumerating every local rule and the global map it induces."""

    group: FiniteGroup
    q: int
    count: int
    total_rules: int
    maps: Optional[list[tuple[int, ...]]]


def enumerate_ca_bruteforce(G: FiniteGroup, q: int, caps: Caps = DEFAULT_CAPS,
                            keep_maps: bool = False) -> CaEnumeration:
    """Realize every local rule mu: A^G -> A as a global map and count the
    distinct results.

    With memory set S = G the induced map is tau(x)(g) = mu(g^-1 . x).
    """
    if q < 2:
        raise ConstructionError(f"alphabet size must be >= 2, got {q}")
    n = G.order
    total = q ** n
    if total > caps.ca_enum_states:
        raise CapExceeded(
            f"CA enumeration needs q^|G| <= {caps.ca_enum_states}")
    images, _, _, _ = _orbit_scan_small(G, q)
    inv = [G.inv(g) for g in G.elements()]
    # lookup[x][g] = code of g^-1 . x
    lookup = [[int(images[inv[g], x]) for g in range(n)] for x in range(total)]
    n_rules = q ** total
    seen: set[tuple[int, ...]] = set()
    digits = [0] * total
    for rule in range(n_rules):
        r = rule
        for i in range(total - 1, -1, -1):
            r, digits[i] = divmod(r, q)
        tau = []
        for x in range(total):
            row = lookup[x]
            code = 0
            for g in range(n):
                code = code * q + digits[row[g]]
            tau.append(code)
        seen.add(tuple(tau))
    maps = sorted(seen) if keep_maps else None
    return CaEnumeration(group=G, q=q, count=len(seen), total_rules=n_rules,
                         maps=maps)
