import itertools

import pytest

from icarank.caps import DEFAULT_CAPS
from icarank.errors import CapExceeded, RankSearchTimeout
from icarank.groups import (direct_product, make_cyclic, make_dihedral,
                            make_quaternion, make_symmetric, make_wreath)
from icarank.lattice import (Subgroup, conjugacy_classes, group_length,
                             quotient, subgroups)
from icarank.rankoracle import (ActionTable, group_rank, rank_exact,
                                rank_info, rank_upper_witness)
from icarank.structure import enumerate_ica_bruteforce


def closure_size(G, gens):
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = G.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return len(seen)


@pytest.mark.parametrize("G,expected", [
    (make_cyclic(1), 0),
    (make_cyclic(6), 1),
    (direct_product(make_cyclic(2), make_cyclic(2)), 2),
    (make_quaternion(), 2),
    (make_symmetric(4), 2),
    (make_dihedral(12), 2),
    (direct_product(make_cyclic(2), make_cyclic(4)), 2),
    (direct_product(direct_product(make_cyclic(2), make_cyclic(2)), make_cyclic(2)), 3),
], ids=lambda x: getattr(x, "name", x))
def test_group_ranks(G, expected):
    assert group_rank(G) == expected


@pytest.mark.parametrize("d,a", [(2, 2), (2, 3), (3, 2), (4, 2)])
def test_cyclic_wreath_rank_two(d, a):
    assert group_rank(make_wreath(make_cyclic(d), a)) == 2


def test_dihedral_wreath_rank_at_most_three():
    assert group_rank(make_wreath(make_dihedral(6), 2)) <= 3


def test_rank_invariant_under_isomorphic_presentations():
    assert group_rank(make_symmetric(3)) == group_rank(make_dihedral(6))
    assert group_rank(make_wreath(make_cyclic(2), 2)) == group_rank(make_dihedral(8))


def test_witness_generates():
    for G in (make_symmetric(4), make_quaternion(), make_wreath(make_cyclic(2), 3)):
        info = rank_info(ActionTable.from_group(G))
        assert closure_size(G, list(info.witness)) == G.order
        assert len(info.witness) == info.exact


def test_rank_upper_witness():
    s4 = ActionTable.from_group(make_symmetric(4))
    w = rank_upper_witness(s4, 2)
    assert w is not None and len(w) <= 2
    c2 = ActionTable.from_group(make_cyclic(2))
    assert rank_upper_witness(c2, 1) == (1,)
    # k below the rank: exhaustive search proves nothing exists, returns None
    v4 = ActionTable.from_group(direct_product(make_cyclic(2), make_cyclic(2)))
    assert rank_upper_witness(v4, 1) is None


def test_rank_at_most_length():
    for G in (make_cyclic(12), make_dihedral(12), make_symmetric(4),
              make_quaternion(), make_wreath(make_cyclic(2), 3)):
        assert group_rank(G) <= group_length(G), G.name


def test_quotient_monotonicity():
    # rank(G/N) <= rank(G) for every normal subgroup, orders <= 48
    for G in (make_cyclic(12), make_dihedral(12), make_quaternion(),
              make_symmetric(4), make_wreath(make_cyclic(2), 3)):
        rg = group_rank(G)
        for cls in conjugacy_classes(G).classes:
            if cls.is_normal:
                assert group_rank(cls.quotient) <= rg, (G.name, cls.index)


def test_product_subadditivity():
    groups = [make_cyclic(2), make_cyclic(4), make_cyclic(6),
              direct_product(make_cyclic(2), make_cyclic(2)), make_dihedral(6)]
    for G, H in itertools.combinations(groups, 2):
        if G.order * H.order > 48:
            continue
        assert group_rank(direct_product(G, H)) <= group_rank(G) + group_rank(H)


def test_structure_shortcuts_agree_with_search():
    # the p-group and abelianization accelerations must not change answers
    for G in (make_cyclic(8), make_quaternion(), make_dihedral(8),
              direct_product(make_cyclic(2), make_cyclic(4)),
              make_wreath(make_cyclic(2), 2), make_symmetric(3)):
        fast = rank_info(ActionTable.from_group(G)).exact
        slow = rank_info(ActionTable.from_group(G),
                         use_structure_shortcuts=False).exact
        assert fast == slow, G.name


def test_rank_on_permutation_table():
    enum = enumerate_ica_bruteforce(make_cyclic(2), 2)
    table = ActionTable.from_permutations(enum.permutations)
    assert table.is_group
    assert rank_exact(table) == 2      # the unit group here is a Klein four


def test_monoid_rank():
    # full transformation monoid on two points: maps 00, 01(id), 10, 11
    comp = [[0, 0, 0, 0],
            [0, 1, 2, 3],
            [3, 2, 1, 0],
            [3, 3, 3, 3]]
    # composition f*g = "apply f then g": table[f][g]
    t = ActionTable(comp, identity=1, is_group=False)
    assert not t.is_group
    assert rank_exact(t) == 2          # a transposition and one collapse


def test_oracle_cap():
    caps = DEFAULT_CAPS.with_overrides(oracle_order_cap=10)
    with pytest.raises(CapExceeded):
        rank_exact(ActionTable.from_group(make_symmetric(4)), caps)


def test_timeout_reports_bounds():
    big = make_wreath(make_cyclic(3), 3)       # order 162, forces real search
    with pytest.raises(RankSearchTimeout) as exc:
        rank_info(ActionTable.from_group(big), timeout=1e-9,
                  use_structure_shortcuts=False)
    assert exc.value.lower >= 1
