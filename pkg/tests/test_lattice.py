import math

import pytest

from icarank.errors import CapExceeded, NotNormalError
from icarank.groups import (direct_product, divisor_stats, make_cyclic,
                            make_dihedral, make_quaternion, make_symmetric,
                            make_wreath)
from icarank.isomorphism import describe_group, is_isomorphic
from icarank.lattice import (Subgroup, conjugacy_classes, generated_subgroup,
                             group_length, is_dedekind, mobius_table,
                             normalizer, quotient, subgroup_as_group, subgroups)

MATRIX = [
    make_cyclic(1), make_cyclic(4), make_cyclic(6), make_cyclic(8),
    make_dihedral(6), make_dihedral(8), make_dihedral(12),
    make_quaternion(), make_symmetric(3), make_symmetric(4),
    direct_product(make_cyclic(2), make_cyclic(2)),
    direct_product(make_cyclic(2), make_cyclic(4)),
    make_wreath(make_cyclic(2), 2),
]


@pytest.mark.parametrize("G,count", [
    (make_cyclic(8), 4),
    (make_dihedral(6), 6),
    (make_cyclic(1), 1),
    (make_dihedral(8), 10),
    (direct_product(make_cyclic(2), make_cyclic(2)), 5),
    (make_symmetric(4), 30),
], ids=lambda x: getattr(x, "name", x))
def test_subgroup_counts(G, count):
    assert len(subgroups(G)) == count


@pytest.mark.parametrize("G", MATRIX, ids=lambda g: g.name)
def test_subgroups_are_subgroups(G):
    subs = subgroups(G)
    seen = set()
    for s in subs:
        assert s.is_valid()
        assert G.order % s.order == 0          # Lagrange
        assert s.mask not in seen
        seen.add(s.mask)
    orders = [s.order for s in subs]
    assert orders == sorted(orders)            # deterministic emission


def test_subgroups_deterministic():
    a = [s.mask for s in subgroups(make_dihedral(12))]
    b = [s.mask for s in subgroups(make_dihedral(12))]
    assert a == b


def test_lattice_cap():
    with pytest.raises(CapExceeded):
        subgroups(make_cyclic(300))
    # override admits it
    assert len(subgroups(make_cyclic(300), max_order_override=300)) == len(
        [d for d in range(1, 301) if 300 % d == 0])


@pytest.mark.parametrize("G", MATRIX, ids=lambda g: g.name)
def test_class_table_invariants(G):
    table = conjugacy_classes(G)
    subs = subgroups(G)
    flat = table.all_subgroups()
    # union of class members is exactly the subgroup list, no repetition
    assert [s.mask for s in flat] == [s.mask for s in subs]
    assert table.r == len(table.classes)
    assert table.r == sum(table.r_by_index.values())
    for c in table.classes:
        # orbit-stabilizer for the conjugation action
        assert len(c.members) * c.normalizer.order == G.order
        assert c.is_normal == (len(c.members) == 1)
        assert c.index == G.order // c.representative.order
        assert c.representative.contains_subgroup(c.representative)
        assert all(m.order == c.representative.order for m in c.members)
        if c.is_normal:
            assert c.quotient is not None
            assert c.quotient.order == c.index
        else:
            assert c.quotient is None


def test_class_counts_pinned():
    assert conjugacy_classes(make_symmetric(4)).r == 11
    q8 = conjugacy_classes(make_quaternion())
    assert q8.r == 6
    assert all(c.is_normal for c in q8.classes)
    assert conjugacy_classes(make_dihedral(8)).r == 8


def test_dihedral_class_count_formula():
    for n in range(1, 13):
        G = make_dihedral(2 * n)
        r = conjugacy_classes(G).r
        d2n, dn = divisor_stats(2 * n), divisor_stats(n)
        if n % 2:
            assert r == d2n.d, n
        else:
            assert r == d2n.d + 2 * dn.d_plus, n


def test_normalizer():
    d6 = make_dihedral(6)
    assert normalizer(d6, Subgroup.from_members(d6, range(6))).order == 6
    s = Subgroup.from_members(d6, [0, 3])      # a reflection: self-normalizing
    assert normalizer(d6, s).mask == s.mask
    d8 = make_dihedral(8)
    h = Subgroup.from_members(d8, [0, 2, 4, 6])   # index 2: normal
    assert normalizer(d8, h).order == 8


def test_dihedral_normalizer_law():
    # odd index: self-normalizing; even index: normal with dihedral quotient,
    # except the reflection-type classes at even divisors m of n, where the
    # normalizer is exactly one step (index 2) above the subgroup.  At m = 2
    # those classes are themselves normal of index 2, so the non-normal
    # exceptions are the even divisors m >= 4 of n, two classes each.
    for n in range(1, 13):
        G = make_dihedral(2 * n)
        table = conjugacy_classes(G)
        exceptional = 0
        for c in table.classes:
            if c.index % 2 and c.index > 1:
                assert c.normalizer.mask == c.representative.mask, (n, c.index)
            elif c.index > 1:
                if c.is_normal:
                    m = c.index
                    target = make_cyclic(2) if m == 2 else make_dihedral(m)
                    assert is_isomorphic(c.quotient, target), (n, m)
                else:
                    assert c.normalizer.order == 2 * c.representative.order
                    exceptional += 1
        if n % 2:
            assert exceptional == 0
        else:
            assert exceptional == 2 * (divisor_stats(n).d_plus - 1)


def test_dihedral_exceptional_classes_explicit():
    # in the order-16 dihedral group the central <r^4> is normal, while the
    # reflection-type <r^4, s> (index 4) has normalizer one step up
    d16 = make_dihedral(16)
    central = Subgroup.from_members(d16, [0, 4])
    assert normalizer(d16, central).order == 16
    refl = Subgroup.from_members(d16, [0, 4, 8, 12])     # {e, r4, s, r4·s}
    assert refl.is_valid()
    assert normalizer(d16, refl).order == 8


def test_quotients():
    c8 = make_cyclic(8)
    full = Subgroup.from_members(c8, range(8))
    assert quotient(c8, full).order == 1
    half = Subgroup.from_members(c8, [0, 4])
    assert describe_group(quotient(c8, half)) == "C4"
    d12 = make_dihedral(12)
    rho2 = generated_subgroup(d12, [2])                  # {e, r2, r4}
    q = quotient(d12, rho2)
    assert q.order == 4
    assert is_isomorphic(q, make_dihedral(4))            # D4 = V4
    d6 = make_dihedral(6)
    with pytest.raises(NotNormalError):
        quotient(d6, Subgroup.from_members(d6, [0, 3]))


def test_quotient_dihedral_iso_search():
    # order-12 dihedral / order-3 rotation subgroup is the order-4 dihedral
    d12 = make_dihedral(12)
    h = generated_subgroup(d12, [2])
    assert h.order == 3
    assert is_isomorphic(quotient(d12, h), make_dihedral(4))
    # order-24 dihedral / order-2 central subgroup is the order-12 dihedral
    d24 = make_dihedral(24)
    z = generated_subgroup(d24, [6])
    assert z.order == 2
    assert is_isomorphic(quotient(d24, z), make_dihedral(12))


def test_subgroup_as_group():
    d8 = make_dihedral(8)
    sub, mapping = subgroup_as_group(d8, Subgroup.from_members(d8, [0, 1, 2, 3]))
    assert sub.order == 4
    assert describe_group(sub) == "C4"
    assert mapping == [0, 1, 2, 3]
    klein, _ = subgroup_as_group(d8, Subgroup.from_members(d8, [0, 2, 4, 6]))
    assert describe_group(klein) == "C2xC2"


@pytest.mark.parametrize("G", MATRIX, ids=lambda g: g.name)
def test_mobius_row_sums(G):
    mob = mobius_table(G)
    subs = subgroups(G)
    for h in subs:
        assert mob.mu(h, h) == 1
        for k in subs:
            if h.mask == k.mask or not k.contains_subgroup(h):
                continue
            total = sum(mob.mu(h, l) for l in subs
                        if k.contains_subgroup(l) and l.contains_subgroup(h))
            assert total == 0, (G.name, h.order, k.order)


def test_mobius_values():
    c4 = make_cyclic(4)
    subs = subgroups(c4)
    mob = mobius_table(c4)
    assert mob.mu(subs[0], subs[1]) == -1      # trivial up one prime step
    s3 = make_symmetric(3)
    subs3 = subgroups(s3)
    mob3 = mobius_table(s3)
    assert mob3.mu(subs3[0], subs3[-1]) == 3


def test_group_length():
    assert group_length(make_cyclic(1)) == 0
    assert group_length(make_cyclic(8)) == 3
    assert group_length(make_symmetric(4)) == 4
    for G in MATRIX:
        if G.order > 1:
            assert group_length(G) <= math.floor(math.log2(G.order)), G.name


@pytest.mark.parametrize("n", [2, 3, 4])
def test_symmetric_length_closed_form(n):
    ell = group_length(make_symmetric(n))
    b = bin(n).count("1")
    assert ell == math.ceil(3 * n / 2) - b - 1


@pytest.mark.slow
def test_symmetric_length_closed_form_s5():
    ell = group_length(make_symmetric(5))
    assert ell == math.ceil(7.5) - 2 - 1


def test_is_dedekind():
    assert is_dedekind(make_cyclic(12))
    assert is_dedekind(direct_product(make_cyclic(2), make_cyclic(4)))
    assert is_dedekind(make_quaternion())
    assert not is_dedekind(make_symmetric(4))
    assert not is_dedekind(make_dihedral(6))
    assert not is_dedekind(make_dihedral(8))
