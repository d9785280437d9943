"""Brute-force isomorphism testing and small-group naming.

Generator-image backtracking; intended for orders <= 100 as used by the
test-suite cross checks and for labelling quotient factors in reports.
"""

from __future__ import annotations

from typing import Optional

from .groups import FiniteGroup
from . import lattice


def _extend_hom(G: FiniteGroup, H: FiniteGroup, gens: list[int],
                images: list[int]) -> Optional[list[int]]:
    """Grow a map defined on generators to a homomorphism, or fail."""
    phi = [-1] * G.order
    phi[0] = 0
    for g, im in zip(gens, images):
        if phi[g] >= 0 and phi[g] != im:
            return None
        phi[g] = im
    visited = [False] * G.order
    visited[0] = True
    count = 1
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g, im in zip(gens, images):
                y = G.mul(x, g)
                fy = H.mul(phi[x], im)
                if phi[y] == -1:
                    phi[y] = fy
                elif phi[y] != fy:
                    return None
                if not visited[y]:
                    visited[y] = True
                    count += 1
                    nxt.append(y)
        frontier = nxt
    if count != G.order:
        return None
    return phi


def find_isomorphism(G: FiniteGroup, H: FiniteGroup) -> Optional[list[int]]:
    """An isomorphism G -> H as an image list, or None."""
    if G.order != H.order:
        return None
    g_orders = sorted(G.element_orders())
    h_orders = H.element_orders()
    if g_orders != sorted(h_orders):
        return None
    gens = G.generators()
    if not gens:
        return [0]
    gen_orders = [G.element_order(g) for g in gens]
    candidates = [[h for h in H.elements() if h_orders[h] == d] for d in gen_orders]

    def backtrack(i: int, chosen: list[int]) -> Optional[list[int]]:
        if i == len(gens):
            phi = _extend_hom(G, H, gens, chosen)
            if phi is not None and len(set(phi)) == G.order:
                return phi
            return None
        for h in candidates[i]:
            res = backtrack(i + 1, chosen + [h])
            if res is not None:
                return res
        return None

    return backtrack(0, [])


def is_isomorphic(G: FiniteGroup, H: FiniteGroup) -> bool:
    return find_isomorphism(G, H) is not None


def _abelian_invariant_factors(G: FiniteGroup) -> list[int]:
    """Invariant factor decomposition d_1 | d_2 | ... of an abelian group."""
    factors: list[int] = []
    cur = G
    while cur.order > 1:
        orders = cur.element_orders()
        d = max(orders)
        x = orders.index(d)
        sub = lattice.generated_subgroup(cur, [x])
        factors.append(d)
        cur = lattice.quotient(cur, sub)
    factors.reverse()   # smallest first, each dividing the next
    return factors


def describe_group(G: FiniteGroup) -> str:
    """A human-readable structural name: C6, C2xC4, D8, Q8, S4 or G<order>."""
    n = G.order
    if n == 1:
        return "1"
    if G.kind is not None:
        k = G.kind[0]
        if k == "cyclic":
            return f"C{G.kind[1]}"
        if k == "dihedral":
            return f"D{G.kind[1]}"
        if k == "quaternion":
            return "Q8"
        if k == "symmetric":
            return f"S{G.kind[1]}"
    if G.is_abelian:
        if max(G.element_orders()) == n:
            return f"C{n}"
        return "x".join(f"C{d}" for d in _abelian_invariant_factors(G))
    # dihedral: a cyclic index-2 subgroup inverted by an outside involution
    orders = G.element_orders()
    half = n // 2
    if n % 2 == 0:
        for r in G.elements():
            if orders[r] != half:
                continue
            rot = lattice.generated_subgroup(G, [r])
            if rot.order != half:
                continue
            for s in G.elements():
                if s in rot or orders[s] != 2:
                    continue
                if G.conjugate(r, s) == G.inv(r):
                    return f"D{n}"
            break
    if n == 8 and sum(1 for d in orders if d == 2) == 1:
        return "Q8"
    return f"G{n}"
