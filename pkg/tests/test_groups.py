import pytest

from xmodlab.errors import (NoInverse, NotAHomomorphism, NotAssociative,
                            ParseError, ValidationError)
from xmodlab.groups import (all_subgroups, are_isomorphic_grp, closure_of,
                            compose_homs, count_homs_bruteforce, cyclic,
                            dihedral, enumerate_homs, group_from_table,
                            hom_from_generator_images, identity_hom,
                            image_of, kernel_of, make_hom, named_group,
                            normal_closure_bruteforce, normal_closure_grp,
                            product, pullback_grp, quotient_grp, subgroup,
                            subgroup_generated, subgroup_group, symmetric,
                            trivial_hom)


def test_cyclic_basics():
    c6 = cyclic(6)
    assert c6.order == 6
    assert c6.exponent == 6
    assert c6.is_abelian
    assert sorted(c6.element_orders) == [1, 2, 3, 3, 6, 6]


def test_dihedral_and_symmetric():
    d4 = dihedral(4)
    s3 = symmetric(3)
    assert d4.order == 8 and not d4.is_abelian
    assert s3.order == 6 and not s3.is_abelian
    assert are_isomorphic_grp(s3, dihedral(3))


def test_bad_tables_rejected():
    with pytest.raises(NotAssociative):
        group_from_table([[0, 1, 2], [1, 0, 0], [2, 0, 0]])
    with pytest.raises(NoInverse):
        group_from_table([[0, 1], [1, 1]])


def test_named_group_parser():
    g = named_group("product(cyclic(2),dihedral(3))")
    assert g.order == 12
    with pytest.raises((ParseError, ValidationError)):
        named_group("wat(3)")


def test_hom_validation():
    c4, c2 = cyclic(4), cyclic(2)
    h = make_hom(c4, c2, [0, 1, 0, 1])
    assert h.is_surjective and not h.is_injective
    with pytest.raises(NotAHomomorphism):
        make_hom(c4, c2, [0, 1, 1, 0])


def test_generator_images_extension():
    d4 = dihedral(4)
    c2 = cyclic(2)
    # rotation -> 0, reflection -> 1
    h = hom_from_generator_images(d4, c2, {1: 0, 4: 1})
    assert kernel_of(h).order == 4
    assert image_of(h).order == 2


def test_enumeration_matches_bruteforce():
    cases = [(cyclic(4), cyclic(2)), (symmetric(3), cyclic(2)),
             (cyclic(6), symmetric(3)), (dihedral(4), cyclic(4))]
    for src, dst in cases:
        fast = {h.mapping for h in enumerate_homs(src, dst)}
        slow = set(count_homs_bruteforce(src, dst))
        assert fast == slow


def test_normal_closure_matches_bruteforce():
    d4 = dihedral(4)
    s3 = symmetric(3)
    for g, seed in [(d4, [4]), (d4, [1]), (s3, [3]), (s3, [1])]:
        assert normal_closure_grp(g, seed).members == \
            normal_closure_bruteforce(g, seed)


def test_subgroups_and_quotient():
    d4 = dihedral(4)
    assert len(all_subgroups(d4)) == 10
    center = subgroup_generated(d4, [2])
    q, proj = quotient_grp(d4, center)
    assert q.order == 4
    assert are_isomorphic_grp(q, product(cyclic(2), cyclic(2)))
    assert proj.is_surjective


def test_subgroup_group_roundtrip():
    s3 = symmetric(3)
    a3 = subgroup(s3, [m for m in s3.elements()
                       if s3.element_orders[m] in (1, 3)])
    g, inc = subgroup_group(a3)
    assert g.order == 3
    assert all(inc(x) in a3.members for x in g.elements())


def test_pullback_group():
    c4, c2 = cyclic(4), cyclic(2)
    f = make_hom(c4, c2, [0, 1, 0, 1])
    g = make_hom(c4, c2, [0, 1, 0, 1])
    pb = pullback_grp(f, g)
    assert pb.group.order == 8
    assert pb.proj_a.is_surjective and pb.proj_b.is_surjective


def test_closure_and_compose():
    d4 = dihedral(4)
    assert closure_of(d4, [1]) == {0, 1, 2, 3}
    c2, c3, c4 = cyclic(2), cyclic(3), cyclic(4)
    h = compose_homs(trivial_hom(c2, c3), make_hom(c4, c2, [0, 1, 0, 1]))
    assert h.mapping == (0, 0, 0, 0)
    assert identity_hom(d4).is_bijective
