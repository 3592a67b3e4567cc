import pytest

from xmodlab.errors import NotAHomomorphism
from xmodlab.fgab import (FgAbGroup, ab_cyclic, ab_free, ab_image,
                          ab_is_injective, ab_is_local, ab_is_surjective,
                          ab_kernel, ab_pullback, ab_quotient, enumerate_ab_homs,
                          fgab_from_relations, in_lattice, integer_kernel,
                          lattice_basis, lf_ab_localize, make_ab_hom,
                          smith_normal_form, solve_integer,
                          subgroup_quotient_order, to_finite_group)


def _check_snf(mat, rows):
    d, u, uinv, v = smith_normal_form(mat)
    # U * A * V == D and U * Uinv == I
    import numpy as np
    a = np.array(mat if mat else [[0]])
    if mat:
        assert (np.array(u) @ np.array(mat) @ np.array(v)
                == np.array(d)).all()
    assert (np.array(u) @ np.array(uinv) == np.eye(len(u), dtype=int)).all()
    diag = [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]
    for i in range(len(diag) - 1):
        if diag[i] and diag[i + 1]:
            assert diag[i + 1] % diag[i] == 0


def test_smith_normal_form_properties():
    _check_snf([[2, 4], [6, 8]], 2)
    _check_snf([[1, 0], [0, 1]], 2)
    _check_snf([[0, 0], [0, 0]], 2)
    _check_snf([[2, 0, 0], [0, 3, 0]], 2)
    _check_snf([[4, 6, 10], [2, 2, 2], [8, 4, 12]], 3)


def test_integer_kernel_and_solve():
    k = integer_kernel([[2, -4]], 2)
    assert k and all(2 * col[0] - 4 * col[1] == 0 for col in k)
    assert solve_integer([[2]], [4]) == [2]
    assert solve_integer([[2]], [3]) is None


def test_lattice_membership():
    basis = lattice_basis([[2, 0], [0, 3]], 2)
    assert in_lattice(basis, [2, 3], 2)
    assert not in_lattice(basis, [1, 0], 2)


def test_group_model():
    a = FgAbGroup(1, (2,))
    assert a.describe() == "Z + Z/2"
    assert a.element_order((0, 1)) == 2
    assert a.element_order((1, 0)) == 0
    assert a.add((1, 1), (2, 1)) == (3, 0)


def test_from_relations():
    # Z^2 / <(2,0),(0,3)> = Z/2 + Z/3 = Z/6
    sq = fgab_from_relations(2, [[2, 0], [0, 3]])
    assert sq.group.invariants == (6,)
    assert sq.group.rank == 0


def test_hom_validation():
    with pytest.raises(NotAHomomorphism):
        # an order-2 generator cannot map to an infinite-order element
        make_ab_hom(ab_cyclic(2), ab_free(1), [[1]])
    h = make_ab_hom(ab_cyclic(4), ab_cyclic(2), [[1]])
    assert ab_is_surjective(h) and not ab_is_injective(h)


def test_kernel_image():
    two = make_ab_hom(ab_free(1), ab_free(1), [[2]])
    assert ab_is_injective(two)
    assert subgroup_quotient_order(ab_image(ab_identity_like()), ab_image(two)) == 2
    ker = ab_kernel(make_ab_hom(ab_cyclic(4), ab_cyclic(2), [[1]]))
    assert ker.group.invariants == (2,)


def ab_identity_like():
    return make_ab_hom(ab_free(1), ab_free(1), [[1]])


def test_quotient():
    q, proj = ab_quotient(ab_free(1), [[2]])
    assert q.group.invariants == (2,)
    assert ab_is_surjective(proj)


def test_pullback_mixed_rank():
    # Z --mod 2--> C2 <--proj-- C4 gives Z x_{C2} C4 = Z + Z/2
    f = make_ab_hom(ab_free(1), ab_cyclic(2), [[1]])
    g = make_ab_hom(ab_cyclic(4), ab_cyclic(2), [[1]])
    pb = ab_pullback(f, g)
    assert pb.group.rank == 1
    assert pb.group.invariants == (2,)


def test_localization_at_phi():
    phi = make_ab_hom(ab_cyclic(4), ab_cyclic(2), [[1]])
    loc, _ = lf_ab_localize(phi, ab_cyclic(4))
    assert loc.invariants == (2,)
    loc, _ = lf_ab_localize(phi, ab_free(1))
    assert loc == ab_free(1)
    assert ab_is_local(phi, ab_free(1))
    assert not ab_is_local(phi, ab_cyclic(4))


def test_enumerate_homs_finite_source():
    homs = enumerate_ab_homs(ab_cyclic(4), ab_cyclic(2))
    assert len(homs) == 2


def test_finite_backend_agreement():
    # fgab arithmetic agrees with the Cayley-table model
    a = FgAbGroup(0, (2, 4))
    g, index, elems = to_finite_group(a)
    assert g.order == 8 and g.is_abelian
    for x in elems:
        for y in elems:
            assert index[a.reduce(a.add(x, y))] == g.mul(index[x], index[y])
        assert a.element_order(x) == g.element_orders[index[x]]
