"""Rank bounds for ICA(G;A) and CA(G;A) from the subgroup-class data.

Every bound here is driven by exact lattice quantities: r (conjugacy classes
of subgroups), r_i (classes of index i), subgroup-lattice length, divisor
counts, and exact group ranks from the oracle.  ``best_bounds`` combines all
applicable bounds for a query and tags which method produced each side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .caps import DEFAULT_CAPS, Caps
from .errors import ConstructionError, InternalInvariantError, RankSearchTimeout
from .groups import FiniteGroup, divisor_stats
from .lattice import conjugacy_classes, group_length, is_dedekind
from . import rankoracle


def rank_of_symmetric(alpha: int) -> int:
    """Rank of S_alpha: 0, 0, 1 then 2 from degree 3 on."""
    if alpha <= 1:
        return 0
    if alpha == 2:
        return 1
    return 2


def wreath_rank_upper(base: tuple | FiniteGroup, alpha: int,
                      caps: Caps = DEFAULT_CAPS) -> int:
    """Upper bound for the rank of base wr S_alpha.

    ``base`` is ('cyclic', d), ('dihedral', order) or a FiniteGroup.  Cyclic
    wreaths with d, alpha >= 2 are exactly 2-generated; dihedral wreaths with
    alpha >= 2 need at most 3 generators; the general fallback is
    rank(base) + rank(S_alpha).
    """
    if alpha < 1:
        raise ConstructionError(f"wreath degree must be >= 1, got {alpha}")
    if isinstance(base, tuple) and base and base[0] == "cyclic":
        d = base[1]
        if alpha == 1:
            return 0 if d == 1 else 1
        if d == 1:
            return rank_of_symmetric(alpha)
        return 2
    if isinstance(base, tuple) and base and base[0] == "dihedral":
        order = base[1]
        if order % 2 or order < 2:
            raise ConstructionError(f"dihedral base needs even order, got {order}")
        if alpha == 1:
            return 1 if order == 2 else 2
        if order == 2:
            return 2          # plain cyclic wreath
        return 3
    if isinstance(base, FiniteGroup):
        return rankoracle.group_rank(base, caps) + rank_of_symmetric(alpha)
    raise ConstructionError(f"unrecognized wreath base {base!r}")


def dihedral_upper(n: int, q: int) -> int:
    """Divisor-count upper bound for the rank of ICA(D_2n; A), n >= 3."""
    if n < 3:
        raise ConstructionError("dihedral bound needs n >= 3; use the general bound")
    if q < 2:
        raise ConstructionError(f"alphabet size must be >= 2, got {q}")
    d2n = divisor_stats(2 * n)
    dn = divisor_stats(n)
    if n % 2:
        if q == 2:
            return 2 * d2n.d_minus + 3 * d2n.d_plus - 3
        return 2 * d2n.d_minus + 3 * d2n.d_plus - 1
    if q == 2:
        return 2 * d2n.d_minus + 3 * d2n.d_plus + 2 * dn.d_plus - 3
    return 2 * d2n.d_minus + 3 * d2n.d_plus + 4 * dn.d_plus - 1


def dihedral_lower(n: int, q: int) -> int:
    """Divisor-count lower bound for the rank of ICA(D_2n; A), n >= 1."""
    if n < 1:
        raise ConstructionError(f"need n >= 1, got {n}")
    if q < 2:
        raise ConstructionError(f"alphabet size must be >= 2, got {q}")
    d2n = divisor_stats(2 * n)
    dn = divisor_stats(n)
    if n % 2:
        base = d2n.d_minus + 2 * d2n.d_plus
        return base - 1 if q == 2 else base
    if q == 2:
        return d2n.d_minus + 2 * d2n.d_plus + 2 * dn.d_plus - 1
    return d2n.d_minus + 2 * d2n.d_plus + 4 * dn.d_plus


def _class_counts(G: FiniteGroup, caps: Caps):
    table = conjugacy_classes(G, caps)
    r = table.r
    r2 = table.r_i(2)
    primes = []
    m = G.order
    d = 2
    while d * d <= m:
        if m % d == 0:
            primes.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        primes.append(m)
    r_p = sum(table.r_i(p) for p in primes)
    return table, r, r2, r_p


def dedekind_ica_upper(G: FiniteGroup, q: int, caps: Caps = DEFAULT_CAPS) -> int:
    """Class-count upper bound for Dedekind groups, using the exact rank of G."""
    if q < 2:
        raise ConstructionError(f"alphabet size must be >= 2, got {q}")
    if not is_dedekind(G, caps):
        raise ConstructionError(f"{G.name} is not a Dedekind group")
    _, r, r2, r_p = _class_counts(G, caps)
    rank_g = rankoracle.group_rank(G, caps)
    if q == 2:
        return (r - r_p - 1) * rank_g + 2 * r - r2 - 1
    return (r - r_p - 1) * rank_g + 2 * r


def dedekind_ca_upper(G: FiniteGroup, q: int, caps: Caps = DEFAULT_CAPS) -> int:
    """Upper bound for the rank of the full CA monoid over a Dedekind group.

    Adds the relative-rank bound binom(r,2) + r (minus r_2 when q = 2) on
    top of the unit-group bound.
    """
    if q < 2:
        raise ConstructionError(f"alphabet size must be >= 2, got {q}")
    if not is_dedekind(G, caps):
        raise ConstructionError(f"{G.name} is not a Dedekind group")
    _, r, r2, r_p = _class_counts(G, caps)
    rank_g = rankoracle.group_rank(G, caps)
    if q == 2:
        return (r - r_p - 1) * rank_g + r * (r + 5) // 2 - 2 * r2 - 1
    return (r - r_p - 1) * rank_g + r * (r + 5) // 2


def general_upper(G: FiniteGroup, q: int, caps: Caps = DEFAULT_CAPS) -> int:
    """Upper bound for any finite group, via the subgroup-lattice length."""
    if q < 2:
        raise ConstructionError(f"alphabet size must be >= 2, got {q}")
    _, r, r2, r_p = _class_counts(G, caps)
    ell = group_length(G, caps)
    if q == 2:
        return (r - r_p - 1) * ell + 2 * r - r2 - 1
    return (r - r_p - 1) * ell + 2 * r


def mciver_neumann_upper(G: FiniteGroup, q: int, degree: Optional[int] = None,
                         caps: Caps = DEFAULT_CAPS) -> int:
    """Upper bound via a faithful permutation degree n > 3: every subgroup of
    S_n is generated by floor(n/2) elements.

    Uses the native degree for symmetric groups, otherwise the regular
    representation; the caller may supply any faithful degree explicitly.
    """
    if q < 2:
        raise ConstructionError(f"alphabet size must be >= 2, got {q}")
    if degree is None:
        degree = _admissible_degree(G)
        if degree is None:
            raise ConstructionError(
                f"{G.name} has no faithful permutation degree > 3")
    if degree <= 3:
        raise ConstructionError(f"need degree > 3, got {degree}")
    _, r, r2, _ = _class_counts(G, caps)
    if q == 2:
        return (r - 1) * (degree // 2) + 2 * r - r2 - 1
    return (r - 1) * (degree // 2) + 2 * r


def _admissible_degree(G: FiniteGroup) -> Optional[int]:
    candidates = []
    if G.perm_degree is not None and G.perm_degree > 3:
        candidates.append(G.perm_degree)
    if G.order > 3:
        candidates.append(G.order)   # regular representation
    return min(candidates) if candidates else None


def ica_lower(G: FiniteGroup, q: int, caps: Caps = DEFAULT_CAPS) -> int:
    """Lower bound: one generator per class of subgroups, minus the index-2
    classes when q = 2 (their wreath factors collapse)."""
    if q < 2:
        raise ConstructionError(f"alphabet size must be >= 2, got {q}")
    table = conjugacy_classes(G, caps)
    if q == 2:
        return table.r - table.r_i(2)
    return table.r


@dataclass(frozen=True)
class BoundValue:
    side: str       # "lower" | "upper"
    value: int
    method: str


@dataclass
class RankBounds:
    """Best-known bounds for one rank query, with method provenance."""

    group: str
    q: int
    lower: int
    upper: int
    lower_method: str
    upper_method: str
    exact: Optional[int] = None
    all_bounds: tuple[BoundValue, ...] = field(default_factory=tuple)


def best_bounds(G: FiniteGroup, q: int, caps: Caps = DEFAULT_CAPS,
                compute_exact: bool = False) -> RankBounds:
    """Combine every applicable bound; optionally pin the exact rank by
    materializing the unit group when it is small enough."""
    lowers = [BoundValue("lower", ica_lower(G, q, caps), "class-count")]
    uppers = [BoundValue("upper", general_upper(G, q, caps), "subgroup-length")]

    if G.kind is not None and G.kind[0] == "dihedral":
        n = G.kind[1] // 2
        lowers.append(BoundValue("lower", dihedral_lower(n, q), "dihedral-divisor"))
        if n >= 3:
            uppers.append(BoundValue("upper", dihedral_upper(n, q), "dihedral-divisor"))
    if is_dedekind(G, caps):
        uppers.append(BoundValue("upper", dedekind_ica_upper(G, q, caps), "dedekind"))
    if _admissible_degree(G) is not None:
        uppers.append(BoundValue("upper", mciver_neumann_upper(G, q, caps=caps),
                                 "mciver-neumann"))

    best_low = max(lowers, key=lambda b: b.value)
    best_up = min(uppers, key=lambda b: b.value)
    if best_low.value > best_up.value:
        raise InternalInvariantError(
            f"lower bound {best_low.value} exceeds upper bound {best_up.value}")

    exact = None
    if compute_exact:
        exact = _exact_ica_rank(G, q, caps)
        if exact is not None and not best_low.value <= exact <= best_up.value:
            raise InternalInvariantError(
                f"oracle rank {exact} escapes [{best_low.value}, {best_up.value}]")

    return RankBounds(
        group=G.name, q=q,
        lower=best_low.value, upper=best_up.value,
        lower_method=best_low.method, upper_method=best_up.method,
        exact=exact,
        all_bounds=tuple(lowers + uppers),
    )


def _exact_ica_rank(G: FiniteGroup, q: int, caps: Caps) -> Optional[int]:
    from .structure import enumerate_ica_bruteforce, ica_order
    if q ** G.order > caps.ica_enum_states:
        return None
    order = ica_order(G, q, caps)
    if order.exact is None or order.exact > caps.oracle_order_cap:
        return None
    enum = enumerate_ica_bruteforce(G, q, caps)
    if enum.permutations is None:
        big = caps.with_overrides(ica_materialize_cap=caps.oracle_order_cap)
        enum = enumerate_ica_bruteforce(G, q, big)
    if enum.permutations is None:
        return None
    table = rankoracle.ActionTable.from_permutations(enum.permutations)
    try:
        return rankoracle.rank_exact(table, caps)
    except RankSearchTimeout:
        return None
