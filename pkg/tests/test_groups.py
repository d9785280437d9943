import math

import pytest

from icarank.errors import CapExceeded, ConstructionError, SpecParseError
from icarank.groups import (direct_product, divisor_stats, make_cyclic,
                            make_dihedral, make_quaternion, make_symmetric,
                            make_wreath)
from icarank.isomorphism import is_isomorphic
from icarank.parsing import parse_group_spec


def build_matrix():
    c2 = make_cyclic(2)
    return [
        make_cyclic(1), make_cyclic(2), make_cyclic(6), make_cyclic(8),
        make_dihedral(2), make_dihedral(6), make_dihedral(8), make_dihedral(12),
        make_quaternion(),
        make_symmetric(2), make_symmetric(3), make_symmetric(4),
        direct_product(c2, c2), direct_product(c2, make_cyclic(4)),
        make_wreath(c2, 2), make_wreath(c2, 3), make_wreath(make_cyclic(3), 2),
    ]


@pytest.mark.parametrize("G", build_matrix(), ids=lambda g: g.name)
def test_group_axioms_exhaustive(G):
    # identity, inverses, latin-square rows/columns, associativity
    G.check_table()


def test_cyclic_basics():
    assert make_cyclic(1).order == 1
    c6 = make_cyclic(6)
    assert c6.inv(2) == 4
    assert c6.mul(4, 5) == 3
    assert c6.is_abelian
    with pytest.raises(ConstructionError):
        make_cyclic(0)
    with pytest.raises(CapExceeded):
        make_cyclic(5000)


def test_dihedral_basics():
    d6 = make_dihedral(6)
    assert d6.order == 6 and not d6.is_abelian
    d2 = make_dihedral(2)
    assert d2.order == 2
    # r*s has order 2 for every rotation power
    d12 = make_dihedral(12)
    for i in range(6):
        assert d12.element_order(6 + i) == 2
    with pytest.raises(ConstructionError):
        make_dihedral(7)
    with pytest.raises(ConstructionError):
        make_dihedral(0)


def test_quaternion():
    q8 = make_quaternion()
    assert q8.order == 8
    involutions = [a for a in q8.elements() if q8.element_order(a) == 2]
    assert len(involutions) == 1
    assert q8.label(involutions[0]) == "-1"
    # i * j = k, j * i = -k
    i, j = 2, 4
    assert q8.label(q8.mul(i, j)) == "k"
    assert q8.label(q8.mul(j, i)) == "-k"


def test_symmetric():
    assert make_symmetric(2).order == 2
    s4 = make_symmetric(4)
    assert s4.order == 24
    assert s4.perm_degree == 4
    assert is_isomorphic(make_symmetric(3), make_dihedral(6))
    with pytest.raises(ConstructionError):
        make_symmetric(8)


def test_direct_product():
    c1, c2, c4 = make_cyclic(1), make_cyclic(2), make_cyclic(4)
    v4 = direct_product(c2, c2)
    assert v4.order == 4
    assert all(v4.element_order(a) <= 2 for a in v4.elements())
    assert is_isomorphic(direct_product(c1, c4), c4)
    g = direct_product(c2, c4)
    assert g.order == 8 and g.is_abelian


def test_wreath():
    c2, c3 = make_cyclic(2), make_cyclic(3)
    w = make_wreath(c2, 2)
    assert w.order == 8 and not w.is_abelian
    assert is_isomorphic(w, make_dihedral(8))
    assert is_isomorphic(make_wreath(c3, 1), c3)
    assert make_wreath(c2, 3).order == 48
    with pytest.raises(CapExceeded):
        make_wreath(make_symmetric(5), 2)


def test_wreath_regular_action_convention():
    # coordinates permute by w^phi = (w_{phi(1)}, ..., w_{phi(alpha)});
    # spot-check associativity on a nonabelian base beyond check_table's cap
    w = make_wreath(make_dihedral(6), 2)
    assert w.order == 72
    w.check_table()


@pytest.mark.parametrize("n,d,dm,dp", [
    (6, 4, 2, 2),
    (1, 1, 1, 0),
    (8, 4, 1, 3),
    (12, 6, 2, 4),
])
def test_divisor_stats(n, d, dm, dp):
    st = divisor_stats(n)
    assert (st.d, st.d_minus, st.d_plus) == (d, dm, dp)


def test_divisor_stats_invariant():
    for n in range(1, 61):
        st = divisor_stats(n)
        assert st.d == st.d_minus + st.d_plus
        assert st.d_minus >= 1


def test_parse_group_spec():
    assert parse_group_spec("C6").order == 6
    assert parse_group_spec("d8").order == 8
    assert parse_group_spec("q8").order == 8
    assert parse_group_spec("V4").order == 4
    assert parse_group_spec("s3").order == 6
    assert parse_group_spec("C2xC4").order == 8
    assert parse_group_spec(" w(c2, 2) ").order == 8
    assert parse_group_spec("W(C2,2)xC3").order == 24
    assert is_isomorphic(parse_group_spec("v4"), parse_group_spec("C2xC2"))
    for bad in ("", "X7", "C", "W(C2)", "Q16", "V8", "C2x", "W(C2,two)"):
        with pytest.raises(SpecParseError):
            parse_group_spec(bad)


def test_generators_generate():
    for G in build_matrix():
        gens = G.generators()
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
        assert len(seen) == G.order, G.name
