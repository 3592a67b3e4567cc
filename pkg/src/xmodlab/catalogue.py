"""A fixed catalogue of small groups, crossed modules, and exact sequences.

Everything here is deterministic: the same names map to the same objects in
every session, so scan reports are reproducible. Group orders stay at or
below 24.
"""
from __future__ import annotations

from functools import lru_cache

from .config import DEFAULT_LIMITS, Limits
from .errors import ValidationError
from .groups import (FiniteGroup, _all_subgroups, cyclic, dihedral,
                     group_from_table, product, subgroup, subgroup_generated,
                     subgroup_group, symmetric)
from .xmod import (CrossedModule, ShortExactSequence, SubCrossedModule,
                   functor_R, functor_X, inclusion_xmod, is_normal_sub,
                   make_sub, ses_from_normal_sub, trivial_xmod)


def quaternion_group() -> FiniteGroup:
    """Order-8 group with elements 1, i, -1, -i, j, ij, -j, -ij."""
    table = [
        [0, 1, 2, 3, 4, 5, 6, 7],
        [1, 2, 3, 0, 7, 4, 5, 6],
        [2, 3, 0, 1, 6, 7, 4, 5],
        [3, 0, 1, 2, 5, 6, 7, 4],
        [4, 5, 6, 7, 2, 3, 0, 1],
        [5, 6, 7, 4, 1, 2, 3, 0],
        [6, 7, 4, 5, 0, 1, 2, 3],
        [7, 4, 5, 6, 3, 0, 1, 2],
    ]
    return group_from_table(table, name="Q8")


def alternating_group(n: int) -> FiniteGroup:
    sn = symmetric(n)
    evens = [g for g in sn.elements() if _is_even(sn, g, n)]
    g, _ = subgroup_group(subgroup(sn, evens))
    g.name = f"A{n}"
    return g


def _is_even(sn: FiniteGroup, g: int, n: int) -> bool:
    # decode the permutation from its lexicographic index via one-line form
    import itertools
    perm = None
    for i, p in enumerate(itertools.permutations(range(n))):
        if i == g:
            perm = p
            break
    inversions = sum(1 for a in range(n) for b in range(a + 1, n)
                     if perm[a] > perm[b])
    return inversions % 2 == 0


@lru_cache(maxsize=1)
def standard_groups() -> dict[str, FiniteGroup]:
    groups = {
        "1": cyclic(1),
        "C2": cyclic(2),
        "C3": cyclic(3),
        "C4": cyclic(4),
        "C5": cyclic(5),
        "C6": cyclic(6),
        "C8": cyclic(8),
        "K4": product(cyclic(2), cyclic(2)),
        "C2xC4": product(cyclic(2), cyclic(4)),
        "S3": symmetric(3),
        "D4": dihedral(4),
        "Q8": quaternion_group(),
        "D5": dihedral(5),
        "D6": dihedral(6),
        "A4": alternating_group(4),
        "S4": symmetric(4),
    }
    groups["K4"].name = "K4"
    groups["C2xC4"].name = "C2xC4"
    return groups


@lru_cache(maxsize=1)
def catalogue() -> dict[str, CrossedModule]:
    """At least 30 crossed modules: trivial-bottom and identity-boundary
    forms over every standard group, plus normal inclusions with the
    conjugation action."""
    g = standard_groups()
    out: dict[str, CrossedModule] = {"1": trivial_xmod()}
    for name, grp in g.items():
        if name == "1":
            continue
        out[f"X{name}"] = functor_X(grp)
        out[f"R{name}"] = functor_R(grp)

    d4, s3, d6, a4, s4, q8, c6 = (g["D4"], g["S3"], g["D6"], g["A4"],
                                  g["S4"], g["Q8"], g["C6"])
    rot4 = sorted(subgroup_generated(d4, [1]).members)
    out["C4<D4"] = inclusion_xmod(d4, rot4, name="C4<D4")
    out["Z<D4"] = inclusion_xmod(d4, sorted(subgroup_generated(d4, [2]).members),
                                 name="Z<D4")
    a3 = sorted(m for m in s3.elements() if s3.element_orders[m] in (1, 3))
    out["A3<S3"] = inclusion_xmod(s3, a3, name="A3<S3")
    out["C6<D6"] = inclusion_xmod(d6, sorted(subgroup_generated(d6, [1]).members),
                                  name="C6<D6")
    out["C3<D6"] = inclusion_xmod(d6, sorted(subgroup_generated(d6, [2]).members),
                                  name="C3<D6")
    v4 = sorted(m for m in a4.elements() if a4.element_orders[m] in (1, 2))
    out["V4<A4"] = inclusion_xmod(a4, v4, name="V4<A4")
    out["Z<Q8"] = inclusion_xmod(q8, sorted(subgroup_generated(q8, [2]).members),
                                 name="Z<Q8")
    out["C4<Q8"] = inclusion_xmod(q8, sorted(subgroup_generated(q8, [1]).members),
                                  name="C4<Q8")
    a4_in_s4 = sorted(m for m in s4.elements() if _is_even(s4, m, 4))
    out["A4<S4"] = inclusion_xmod(s4, a4_in_s4, name="A4<S4")
    out["C3<C6"] = inclusion_xmod(c6, [0, 2, 4], name="C3<C6")
    for name, t in out.items():
        if not t.name:
            t.name = name
    return out


def normal_subs(t: CrossedModule,
                limits: Limits = DEFAULT_LIMITS) -> list[SubCrossedModule]:
    """All normal subcrossed modules of t, by exhaustive subgroup pairing.
    Skipped (empty result) for levels above the scan order cap."""
    if max(t.sizes) > limits.scan_order_cap:
        return []
    out = []
    for m1 in _all_subgroups(t.bottom):
        for m2 in _all_subgroups(t.top):
            try:
                sub = make_sub(t, m1, m2)
            except ValidationError:
                continue
            if is_normal_sub(t, sub):
                out.append(sub)
    return out


def catalogue_sequences(max_count: int | None = None,
                        limits: Limits = DEFAULT_LIMITS,
                        max_level_order: int = 24) -> list[ShortExactSequence]:
    """Certified short exact sequences from normal subcrossed modules of the
    catalogue, in deterministic order."""
    out: list[ShortExactSequence] = []
    for name in sorted(catalogue()):
        t = catalogue()[name]
        if max(t.sizes) > max_level_order:
            continue
        for sub in normal_subs(t, limits):
            out.append(ses_from_normal_sub(t, sub))
            if max_count is not None and len(out) >= max_count:
                return out
    return out
