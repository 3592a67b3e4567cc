"""Finitely generated abelian groups in invariant-factor normal form.

An FgAbGroup is Z^rank + Z/d1 + ... + Z/dk with d1 | d2 | ... | dk, dj >= 2.
Elements are integer tuples, free coordinates first, torsion residues after.
Homs are integer matrices (column j = image of source generator j in target
coordinates). All lattice work runs through Smith normal form over Python
integers, which are unbounded, so there is no overflow to guard against.

Every group-with-structure-map result is computed as a subquotient of some
Z^n: a lattice of admissible vectors modulo a lattice of relations.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import gcd, prod

from .errors import NotAHomomorphism, ValidationError

Matrix = list[list[int]]


# ---------------------------------------------------------------------------
# integer matrix kernels: SNF with transforms, solving, lattices

def _identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a or not b:
        return [[0] * (len(b[0]) if b else 0) for _ in a]
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)]
            for row in a]


def _matvec(a: Matrix, v: list[int]) -> list[int]:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def smith_normal_form(mat: Matrix) -> tuple[Matrix, Matrix, Matrix, Matrix]:
    """Return (D, U, Uinv, V) with U * mat * V = D diagonal, d1 | d2 | ...,
    U and V unimodular. Uinv is maintained alongside U."""
    m = len(mat)
    n = len(mat[0]) if m else 0
    a = [list(row) for row in mat]
    u, uinv, v = _identity(m), _identity(m), _identity(n)

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]
        for r in uinv:
            r[i], r[j] = r[j], r[i]

    def row_add(i, j, q):  # row i += q * row j
        a[i] = [x + q * y for x, y in zip(a[i], a[j])]
        u[i] = [x + q * y for x, y in zip(u[i], u[j])]
        for r in uinv:  # inverse op: col j -= q * col i
            r[j] -= q * r[i]

    def row_neg(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]
        for r in uinv:
            r[i] = -r[i]

    def col_swap(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def col_add(i, j, q):  # col i += q * col j
        for r in a:
            r[i] += q * r[j]
        for r in v:
            r[i] += q * r[j]

    def col_neg(i):
        for r in a:
            r[i] = -r[i]
        for r in v:
            r[i] = -r[i]

    k = 0
    while k < min(m, n):
        # pivot: smallest nonzero magnitude in the remaining block
        pivot = None
        for i in range(k, m):
            for j in range(k, n):
                if a[i][j] != 0 and (pivot is None
                                     or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        row_swap(k, pivot[0])
        col_swap(k, pivot[1])
        if a[k][k] < 0:
            row_neg(k)
        dirty = True
        while dirty:
            dirty = False
            for i in range(k + 1, m):
                if a[i][k] != 0:
                    q = a[i][k] // a[k][k]
                    row_add(i, k, -q)
                    if a[i][k] != 0:
                        row_swap(k, i)
                        if a[k][k] < 0:
                            row_neg(k)
                        dirty = True
            for j in range(k + 1, n):
                if a[k][j] != 0:
                    q = a[k][j] // a[k][k]
                    col_add(j, k, -q)
                    if a[k][j] != 0:
                        col_swap(k, j)
                        dirty = True
        # enforce divisibility: fold any non-multiple into position k
        for i in range(k + 1, m):
            for j in range(k + 1, n):
                if a[i][j] % a[k][k] != 0:
                    row_add(k, i, 1)
                    dirty = True
                    break
            if dirty:
                break
        if dirty:
            continue
        k += 1
    return a, u, uinv, v


def integer_kernel(mat: Matrix, n: int) -> Matrix:
    """Basis (list of columns) of {x in Z^n : mat @ x = 0}."""
    if not mat:
        return [col for col in zip(*_identity(n))] if n else []
    d, _, _, v = smith_normal_form(mat)
    m = len(mat)
    cols = []
    for j in range(n):
        if j >= min(m, n) or d[j][j] == 0:
            cols.append([v[i][j] for i in range(n)])
    return cols


def solve_integer(mat: Matrix, b: list[int]) -> list[int] | None:
    """One integer solution x of mat @ x = b, or None."""
    m = len(mat)
    n = len(mat[0]) if m else 0
    if m == 0:
        return [0] * n
    d, u, _, v = smith_normal_form(mat)
    ub = _matvec(u, b)
    y = [0] * n
    for i in range(m):
        di = d[i][i] if i < n else 0
        if di == 0:
            if ub[i] != 0:
                return None
        else:
            if ub[i] % di != 0:
                return None
            y[i] = ub[i] // di
    return _matvec(v, y)


def lattice_basis(cols: Matrix, n: int) -> Matrix:
    """Basis (list of columns, possibly empty) of the lattice in Z^n
    spanned by the given columns."""
    cols = [c for c in cols if any(c)]
    if not cols:
        return []
    mat = [[c[i] for c in cols] for i in range(n)]
    d, _, uinv, _ = smith_normal_form(mat)
    basis = []
    for j in range(min(n, len(cols))):
        if d[j][j] != 0:
            basis.append([d[j][j] * uinv[i][j] for i in range(n)])
    return basis


def in_lattice(basis: Matrix, x: list[int], n: int) -> bool:
    if not basis:
        return not any(x)
    mat = [[c[i] for c in basis] for i in range(n)]
    return solve_integer(mat, x) is not None


# ---------------------------------------------------------------------------
# groups

@dataclass(frozen=True)
class FgAbGroup:
    rank: int
    invariants: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValidationError("fgab", "negative rank")
        object.__setattr__(self, "invariants", tuple(int(d) for d in self.invariants))
        for a, b in zip(self.invariants, self.invariants[1:]):
            if b % a != 0:
                raise ValidationError("fgab", f"invariants {self.invariants} "
                                      "violate the divisibility chain")
        if any(d < 2 for d in self.invariants):
            raise ValidationError("fgab", "invariant factors must be >= 2")

    @property
    def ngens(self) -> int:
        return self.rank + len(self.invariants)

    @property
    def is_finite(self) -> bool:
        return self.rank == 0

    @property
    def order(self) -> int | None:
        return prod(self.invariants) if self.rank == 0 else None

    def gen_order(self, j: int) -> int:
        """Order of generator j (0 for infinite)."""
        return 0 if j < self.rank else self.invariants[j - self.rank]

    def reduce(self, vec) -> tuple[int, ...]:
        out = list(int(x) for x in vec)
        for i, d in enumerate(self.invariants):
            out[self.rank + i] %= d
        return tuple(out)

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.ngens

    def elements(self):
        """All elements; finite groups only."""
        if not self.is_finite:
            raise ValidationError("fgab", "cannot enumerate an infinite group")
        return itertools.product(*(range(d) for d in self.invariants))

    def element_order(self, vec) -> int:
        vec = self.reduce(vec)
        if any(vec[:self.rank]):
            return 0
        o = 1
        for x, d in zip(vec[self.rank:], self.invariants):
            if x:
                o = o * (d // gcd(d, x)) // gcd(o, d // gcd(d, x))
        return o

    def torsion_elements(self, d: int):
        """All elements killed by d (finite set even when rank > 0)."""
        ranges = [(0,)] * self.rank
        for e in self.invariants:
            step = e // gcd(d, e)
            ranges.append(tuple(range(0, e, step)))
        return itertools.product(*ranges)

    def add(self, x, y) -> tuple[int, ...]:
        return self.reduce(a + b for a, b in zip(x, y))

    def neg(self, x) -> tuple[int, ...]:
        return self.reduce(-a for a in x)

    def relation_columns(self) -> Matrix:
        """Columns spanning the relation lattice of this presentation."""
        cols = []
        for i, d in enumerate(self.invariants):
            col = [0] * self.ngens
            col[self.rank + i] = d
            cols.append(col)
        return cols

    def describe(self) -> str:
        parts = ["Z"] * self.rank + [f"Z/{d}" for d in self.invariants]
        return " + ".join(parts) if parts else "0"


AB_TRIVIAL = FgAbGroup(0, ())


def ab_cyclic(n: int) -> FgAbGroup:
    return FgAbGroup(0, (n,)) if n > 1 else AB_TRIVIAL


def ab_free(r: int) -> FgAbGroup:
    return FgAbGroup(r, ())


def fgab_from_relations(n: int, relation_cols: Matrix) -> "Subquotient":
    """Z^n modulo the lattice spanned by the given columns, with the
    projection data tracked."""
    full = [list(col) for col in zip(*_identity(n))] if n else []
    return subquotient(n, full, relation_cols)


# ---------------------------------------------------------------------------
# subquotients of Z^n: the single engine behind kernel/image/quotient/pullback

@dataclass(frozen=True)
class Subquotient:
    """M / L for lattices L <= M <= Z^n, in invariant-factor form.

    group       the abstract quotient group
    gen_lifts   columns in Z^n lifting each abstract generator
    ambient     n
    """
    group: FgAbGroup
    gen_lifts: tuple[tuple[int, ...], ...]
    ambient: int
    _mbasis: tuple[tuple[int, ...], ...]
    _uproj: tuple[tuple[int, ...], ...]
    _keep: tuple[tuple[int, int], ...]  # (row in U-coords, invariant or 0)

    def project(self, x) -> tuple[int, ...]:
        """Class of x in Z^n (must lie in M) as group coordinates."""
        x = [int(t) for t in x]
        if self._mbasis:
            mmat = [[c[i] for c in self._mbasis] for i in range(self.ambient)]
            coeff = solve_integer(mmat, x)
        else:
            coeff = [] if not any(x) else None
        if coeff is None:
            raise ValidationError("subquotient", "vector outside the sublattice")
        y = _matvec([list(r) for r in self._uproj], coeff)
        free = [y[i] for i, d in self._keep if d == 0]
        tors = [y[i] % d for i, d in self._keep if d != 0]
        return self.group.reduce(free + tors)

    def contains(self, x) -> bool:
        x = [int(t) for t in x]
        return in_lattice([list(c) for c in self._mbasis], x, self.ambient)


def subquotient(n: int, m_cols: Matrix, l_cols: Matrix) -> Subquotient:
    """Quotient of lattice(m_cols) by lattice(l_cols), both in Z^n.
    Requires L <= M."""
    mbasis = lattice_basis(m_cols, n)
    r = len(mbasis)
    lbasis = lattice_basis(l_cols, n)
    if mbasis:
        mmat = [[c[i] for c in mbasis] for i in range(n)]
    rel = []
    for l in lbasis:
        coeff = solve_integer(mmat, l) if mbasis else None
        if coeff is None:
            raise ValidationError("subquotient", "relations not inside the lattice")
        rel.append(coeff)
    if rel:
        relmat = [[c[i] for c in rel] for i in range(r)]
        d, u, uinv, _ = smith_normal_form(relmat)
    else:
        relmat = []
        d, u, uinv = [], _identity(r), _identity(r)

    keep: list[tuple[int, int]] = []
    ncols = len(rel)
    for i in range(r):
        di = d[i][i] if (i < min(r, ncols)) else 0
        if di != 1:
            keep.append((i, di))
    # free generators first, then torsion in chain order
    keep.sort(key=lambda t: (t[1] != 0, 0))
    invariants = tuple(dd for _, dd in keep if dd != 0)
    rank = sum(1 for _, dd in keep if dd == 0)
    group = FgAbGroup(rank, invariants)

    lifts = []
    for i, _ in keep:
        # abstract generator i corresponds to column i of Uinv in M-coords
        coeff = [uinv[row][i] for row in range(r)]
        vec = [sum(mbasis[j][row] * coeff[j] for j in range(r)) for row in range(n)]
        lifts.append(tuple(vec))
    return Subquotient(group=group,
                       gen_lifts=tuple(lifts),
                       ambient=n,
                       _mbasis=tuple(tuple(c) for c in mbasis),
                       _uproj=tuple(tuple(row) for row in u),
                       _keep=tuple(keep))


# ---------------------------------------------------------------------------
# homomorphisms

@dataclass(frozen=True)
class AbHom:
    src: FgAbGroup
    dst: FgAbGroup
    matrix: tuple[tuple[int, ...], ...]  # dst.ngens rows x src.ngens cols

    def __call__(self, x) -> tuple[int, ...]:
        x = self.src.reduce(x)
        return self.dst.reduce(_matvec([list(r) for r in self.matrix], list(x)))

    def column(self, j: int) -> list[int]:
        return [self.matrix[i][j] for i in range(self.dst.ngens)]


def make_ab_hom(src: FgAbGroup, dst: FgAbGroup, matrix, check: bool = True) -> AbHom:
    rows = [list(int(x) for x in row) for row in matrix]
    if len(rows) != dst.ngens or any(len(r) != src.ngens for r in rows):
        raise ValidationError("ab hom", "matrix shape mismatch")
    # normalize torsion rows of the target
    for i, d in enumerate(dst.invariants):
        r = dst.rank + i
        rows[r] = [x % d for x in rows[r]]
    if check:
        for j in range(src.ngens):
            d = src.gen_order(j)
            if d == 0:
                continue
            img = [rows[i][j] * d for i in range(dst.ngens)]
            if any(dst.reduce(img)):
                raise NotAHomomorphism(
                    ("generator", j),
                    f"order-{d} generator sent outside the {d}-torsion")
    return AbHom(src, dst, tuple(tuple(r) for r in rows))


def ab_identity(a: FgAbGroup) -> AbHom:
    return make_ab_hom(a, a, _identity(a.ngens), check=False)


def ab_zero(src: FgAbGroup, dst: FgAbGroup) -> AbHom:
    return make_ab_hom(src, dst, [[0] * src.ngens for _ in range(dst.ngens)],
                       check=False)


def ab_compose(outer: AbHom, inner: AbHom) -> AbHom:
    if outer.src != inner.dst:
        raise ValidationError("ab hom", "composition domain mismatch")
    prod_mat = _matmul([list(r) for r in outer.matrix],
                       [list(r) for r in inner.matrix])
    return make_ab_hom(inner.src, outer.dst, prod_mat, check=False)


def _graph_lattice(h: AbHom) -> Matrix:
    """Columns spanning the subgroup lattice im(h) + relations(dst) in
    Z^{dst.ngens}."""
    cols = [h.column(j) for j in range(h.src.ngens)]
    return cols + h.dst.relation_columns()


def ab_image(h: AbHom) -> Subquotient:
    """Image of h as a subquotient of dst's presentation; .group is the
    abstract image, gen_lifts give dst-coordinates."""
    return subquotient(h.dst.ngens, _graph_lattice(h), h.dst.relation_columns())


def ab_kernel(h: AbHom) -> Subquotient:
    """Kernel of h as a subquotient of src's presentation."""
    n, m = h.src.ngens, h.dst.ngens
    rel_b = h.dst.relation_columns()
    # {x : H x in relations(dst)}: first-n-rows projection of ker [H | -relB]
    stacked = [[h.matrix[i][j] for j in range(n)] + [-c[i] for c in rel_b]
               for i in range(m)]
    kern = integer_kernel(stacked, n + len(rel_b))
    pre = [c[:n] for c in kern]
    return subquotient(n, pre + h.src.relation_columns(), h.src.relation_columns())


def ab_is_injective(h: AbHom) -> bool:
    k = ab_kernel(h).group
    return k.rank == 0 and not k.invariants


def ab_is_surjective(h: AbHom) -> bool:
    big = lattice_basis(_graph_lattice(h), h.dst.ngens)
    cols = list(zip(*_identity(h.dst.ngens))) if h.dst.ngens else []
    return all(in_lattice(big, list(c), h.dst.ngens) for c in cols)


def ab_quotient(a: FgAbGroup, sub_gens) -> tuple[Subquotient, AbHom]:
    """Quotient of a by the subgroup generated by the given elements;
    returns the subquotient and the projection hom."""
    cols = [list(a.reduce(g)) for g in sub_gens]
    sq = fgab_from_relations(a.ngens, cols + a.relation_columns())
    proj_mat = [[0] * a.ngens for _ in range(sq.group.ngens)]
    for j in range(a.ngens):
        e = [0] * a.ngens
        e[j] = 1
        img = sq.project(e)
        for i in range(sq.group.ngens):
            proj_mat[i][j] = img[i]
    return sq, make_ab_hom(a, sq.group, proj_mat)


@dataclass(frozen=True)
class AbPullback:
    group: FgAbGroup
    proj_a: AbHom
    proj_b: AbHom
    sq: Subquotient  # in Z^{na+nb} coordinates of A + B


def ab_pullback(f: AbHom, g: AbHom) -> AbPullback:
    """{(a, b) : f(a) = g(b)} with its two projections."""
    if f.dst != g.dst:
        raise ValidationError("ab pullback", "homs must share a codomain")
    a, b, c = f.src, g.src, f.dst
    na, nb = a.ngens, b.ngens
    rel_c = c.relation_columns()
    # rows: f(a)-coords minus g(b)-coords, modulo relations of C
    stacked = [[f.matrix[i][j] for j in range(na)]
               + [-g.matrix[i][j] for j in range(nb)]
               + [-col[i] for col in rel_c]
               for i in range(c.ngens)]
    kern = integer_kernel(stacked, na + nb + len(rel_c))
    m_cols = [col[:na + nb] for col in kern]
    rel_ab = [col + [0] * nb for col in a.relation_columns()] \
        + [[0] * na + col for col in b.relation_columns()]
    m_cols += rel_ab
    sq = subquotient(na + nb, m_cols, rel_ab)
    p = sq.group
    mat_a = [[0] * p.ngens for _ in range(na)]
    mat_b = [[0] * p.ngens for _ in range(nb)]
    for j, lift in enumerate(sq.gen_lifts):
        for i in range(na):
            mat_a[i][j] = lift[i]
        for i in range(nb):
            mat_b[i][j] = lift[na + i]
    return AbPullback(group=p,
                      proj_a=make_ab_hom(p, a, mat_a),
                      proj_b=make_ab_hom(p, b, mat_b),
                      sq=sq)


def enumerate_ab_homs(b: FgAbGroup, t: FgAbGroup) -> list[AbHom]:
    """All homs b -> t; b must be finite. Generator of order d can go to
    any d-torsion element, independently (invariant-factor generators)."""
    if not b.is_finite:
        raise ValidationError("fgab", "hom enumeration needs a finite domain")
    choices = [sorted(t.torsion_elements(d)) for d in b.invariants]
    homs = []
    for combo in itertools.product(*choices):
        mat = [[combo[j][i] for j in range(b.ngens)] for i in range(t.ngens)]
        homs.append(make_ab_hom(b, t, mat, check=False))
    return homs


def lf_ab_localize(phi: AbHom, t: FgAbGroup) -> tuple[FgAbGroup, AbHom]:
    """Localize t at a surjection phi between finite abelian groups:
    repeatedly kill the images of ker(phi) under every hom from phi's
    domain, until every such hom annihilates the kernel."""
    if not phi.src.is_finite or not phi.dst.is_finite:
        raise ValidationError("fgab", "localizing morphism must be finite")
    if not ab_is_surjective(phi):
        raise ValidationError("fgab", "localizing morphism must be surjective")
    ker = ab_kernel(phi)
    ker_elems = [phi.src.reduce(_matvec(
        [[lift[i] for lift in ker.gen_lifts] for i in range(phi.src.ngens)],
        list(coeffs)))
        for coeffs in ker.group.elements()]
    current = t
    ell = ab_identity(t)
    while True:
        bad = []
        for g in enumerate_ab_homs(phi.src, current):
            for k in ker_elems:
                img = g(k)
                if any(img):
                    bad.append(list(img))
        if not bad:
            return current, ell
        sq, proj = ab_quotient(current, bad)
        current = sq.group
        ell = ab_compose(proj, ell)


def ab_is_local(phi: AbHom, t: FgAbGroup) -> bool:
    """t is phi-local iff Hom(phi, t) is a bijection; for surjective phi
    with finite domain this means every hom from the domain kills ker(phi)."""
    ker = ab_kernel(phi)
    ker_elems = [phi.src.reduce(_matvec(
        [[lift[i] for lift in ker.gen_lifts] for i in range(phi.src.ngens)],
        list(coeffs)))
        for coeffs in ker.group.elements()]
    return all(not any(g(k)) for g in enumerate_ab_homs(phi.src, t)
               for k in ker_elems)


def subgroup_quotient_order(big: Subquotient, small: Subquotient) -> int | None:
    """Order of big/small for subgroups of the same ambient presentation
    (small <= big); None when the quotient is infinite."""
    if big.ambient != small.ambient:
        raise ValidationError("fgab", "subgroups of different ambient groups")
    q = subquotient(big.ambient,
                    [list(c) for c in big._mbasis],
                    [list(c) for c in small._mbasis])
    return q.group.order


def to_finite_group(a: FgAbGroup):
    """Finite FgAbGroup as a grp-core FiniteGroup; elements ordered
    lexicographically by coordinate tuples. Returns (group, encode, decode)."""
    from .groups import group_from_table
    if not a.is_finite:
        raise ValidationError("fgab", "only finite groups convert")
    elems = sorted(a.elements())
    index = {e: i for i, e in enumerate(elems)}
    n = len(elems)
    table = [[index[a.add(x, y)] for y in elems] for x in elems]
    g = group_from_table(table, name=a.describe())
    return g, index, elems
