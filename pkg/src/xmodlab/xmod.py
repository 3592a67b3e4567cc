"""Crossed modules over the finite backend.

A crossed module is a boundary hom from a bottom group to a top group plus
an action of the top group on the bottom group, subject to two axioms
(verified exhaustively at construction):

  CM1  boundary(b . t) = b boundary(t) b^-1
  CM2  boundary(t) . s = t s t^-1        (Peiffer identity)

where "b . t" is the action. Morphisms are levelwise group homs commuting
with boundaries and actions. Subobjects are member sets; normality is the
three-condition predicate is_normal_sub.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .config import DEFAULT_LIMITS, Limits
from .errors import (CM1Violation, CM2Violation, NotComposable, NotExact,
                     NotNormal, SizeLimitExceeded, ValidationError)
from .groups import (FiniteGroup, GroupAction, GroupHom, GroupPullback,
                     Subgroup, closure_of, conjugation_action, cyclic,
                     group_from_table, identity_hom, image_of, kernel_of,
                     make_action, make_hom, normal_closure_grp, pullback_grp,
                     quotient_grp, subgroup, subgroup_generated,
                     subgroup_group, trivial_action, trivial_hom)


@dataclass(eq=False)
class CrossedModule:
    bottom: FiniteGroup
    top: FiniteGroup
    boundary: GroupHom
    action: GroupAction
    name: str = ""

    @property
    def sizes(self) -> tuple[int, int]:
        return (self.bottom.order, self.top.order)

    def act(self, b: int, t: int) -> int:
        return self.action(b, t)

    def is_trivial(self) -> bool:
        return self.bottom.order == 1 and self.top.order == 1

    def describe(self) -> str:
        label = self.name or "xmod"
        return f"{label}: bottom order {self.bottom.order}, top order {self.top.order}"


def make_xmod(bottom: FiniteGroup, top: FiniteGroup, boundary: GroupHom,
              action: GroupAction, name: str = "") -> CrossedModule:
    if boundary.src is not bottom or boundary.dst is not top:
        raise ValidationError(name or "xmod", "boundary endpoints mismatch")
    if action.actor is not top or action.space is not bottom:
        raise ValidationError(name or "xmod", "action endpoints mismatch")
    bmap = np.asarray(boundary.mapping, dtype=np.int64)
    act = action.act
    for b in range(top.order):
        # CM1: boundary(b.t) == b boundary(t) b^-1
        lhs = bmap[act[b]]
        rhs = top.table[top.table[b, bmap], top.inverse[b]]
        if not np.array_equal(lhs, rhs):
            t = int(np.argwhere(lhs != rhs)[0][0])
            raise CM1Violation(b, t)
    for t in range(bottom.order):
        # CM2: boundary(t).s == t s t^-1
        lhs = act[bmap[t]]
        rhs = bottom.table[bottom.table[t], bottom.inverse[t]]
        if not np.array_equal(lhs, rhs):
            s = int(np.argwhere(lhs != rhs)[0][0])
            raise CM2Violation(s, t)
    return CrossedModule(bottom, top, boundary, action, name)


# ---------------------------------------------------------------------------
# standard constructions

TRIVIAL_GROUP = cyclic(1)


def trivial_xmod() -> CrossedModule:
    g = cyclic(1)
    return make_xmod(g, g, identity_hom(g), trivial_action(g, g), name="1")


def functor_X(g: FiniteGroup) -> CrossedModule:
    """Trivial bottom group under g."""
    one = cyclic(1)
    return make_xmod(one, g, trivial_hom(one, g), trivial_action(g, one),
                     name=f"X({g.name})" if g.name else "X")


def functor_R(g: FiniteGroup) -> CrossedModule:
    """g over itself via the identity, acting by conjugation."""
    return make_xmod(g, g, identity_hom(g), conjugation_action(g, identity_hom(g)),
                     name=f"R({g.name})" if g.name else "R")


def functor_Tr(t: CrossedModule) -> FiniteGroup:
    return t.top


def x_morphism(src: CrossedModule, dst: CrossedModule, f2: GroupHom) -> XModMorphism:
    """Morphism between trivial-bottom crossed modules from a top-level hom."""
    if src.bottom.order != 1:
        raise ValidationError("x morphism", "source bottom group must be trivial")
    return make_xmorphism(src, dst, trivial_hom(src.bottom, dst.bottom), f2)


def r_morphism(src: CrossedModule, dst: CrossedModule, f: GroupHom) -> XModMorphism:
    """Morphism between identity-boundary crossed modules from a single hom."""
    f1 = GroupHom(src.bottom, dst.bottom, f.mapping)
    f2 = GroupHom(src.top, dst.top, f.mapping)
    return make_xmorphism(src, dst, f1, f2)


def inclusion_xmod(top: FiniteGroup, members, name: str = "") -> CrossedModule:
    """Normal subgroup inclusion with the conjugation action."""
    sub = subgroup(top, members)
    if not sub.is_normal:
        raise NotNormal(f"subgroup {sub.sorted_members()} of {top.name or 'group'}")
    bottom, inc = subgroup_group(sub)
    return make_xmod(bottom, top, inc, conjugation_action(top, inc), name=name)


# ---------------------------------------------------------------------------
# morphisms

@dataclass(eq=False)
class XModMorphism:
    src: CrossedModule
    dst: CrossedModule
    f1: GroupHom
    f2: GroupHom

    @cached_property
    def is_regular_epi(self) -> bool:
        return self.f1.is_surjective and self.f2.is_surjective

    @cached_property
    def is_mono(self) -> bool:
        return self.f1.is_injective and self.f2.is_injective

    @cached_property
    def is_iso(self) -> bool:
        return self.f1.is_bijective and self.f2.is_bijective


def make_xmorphism(src: CrossedModule, dst: CrossedModule,
                   f1: GroupHom, f2: GroupHom) -> XModMorphism:
    if f1.src is not src.bottom or f1.dst is not dst.bottom \
            or f2.src is not src.top or f2.dst is not dst.top:
        raise ValidationError("xmod morphism", "level maps have wrong endpoints")
    m1 = np.asarray(f1.mapping, dtype=np.int64)
    m2 = np.asarray(f2.mapping, dtype=np.int64)
    src_b = np.asarray(src.boundary.mapping, dtype=np.int64)
    dst_b = np.asarray(dst.boundary.mapping, dtype=np.int64)
    if not np.array_equal(dst_b[m1], m2[src_b]):
        t = int(np.argwhere(dst_b[m1] != m2[src_b])[0][0])
        raise ValidationError("xmod morphism",
                              f"boundary square fails at bottom element {t}")
    for b in range(src.top.order):
        lhs = m1[src.action.act[b]]
        rhs = dst.action.act[m2[b]][m1]
        if not np.array_equal(lhs, rhs):
            t = int(np.argwhere(lhs != rhs)[0][0])
            raise ValidationError("xmod morphism",
                                  f"equivariance fails at (b,t)=({b},{t})")
    return XModMorphism(src, dst, f1, f2)


def identity_xmorphism(t: CrossedModule) -> XModMorphism:
    return XModMorphism(t, t, identity_hom(t.bottom), identity_hom(t.top))


def trivial_xmorphism(src: CrossedModule, dst: CrossedModule) -> XModMorphism:
    return XModMorphism(src, dst, trivial_hom(src.bottom, dst.bottom),
                        trivial_hom(src.top, dst.top))


def compose_xmorphisms(outer: XModMorphism, inner: XModMorphism) -> XModMorphism:
    if outer.src is not inner.dst:
        raise NotComposable("crossed-module morphisms do not compose")
    f1 = GroupHom(inner.f1.src, outer.f1.dst,
                  tuple(outer.f1.mapping[x] for x in inner.f1.mapping))
    f2 = GroupHom(inner.f2.src, outer.f2.dst,
                  tuple(outer.f2.mapping[x] for x in inner.f2.mapping))
    return make_xmorphism(inner.src, outer.dst, f1, f2)


def hom_on_classes(p: GroupHom, f: GroupHom) -> GroupHom:
    """Hom from the codomain of a surjection p, induced by f on classes.
    Performs a full well-definedness pass over every source element."""
    from .errors import NotWellDefined
    if p.src is not f.src:
        raise ValidationError("induced hom", "maps have different domains")
    mapping = [None] * p.dst.order
    for x in p.src.elements():
        cls, val = p(x), f(x)
        if mapping[cls] is None:
            mapping[cls] = val
        elif mapping[cls] != val:
            raise NotWellDefined(f"class {cls} receives both {mapping[cls]} and {val}")
    if any(v is None for v in mapping):
        raise NotWellDefined("projection not surjective")
    return make_hom(p.dst, f.dst, mapping)


def invert_xmorphism(m: XModMorphism) -> XModMorphism:
    if not m.is_iso:
        raise ValidationError("xmod morphism", "cannot invert a non-isomorphism")
    inv1 = [0] * m.dst.bottom.order
    for x, y in enumerate(m.f1.mapping):
        inv1[y] = x
    inv2 = [0] * m.dst.top.order
    for x, y in enumerate(m.f2.mapping):
        inv2[y] = x
    return make_xmorphism(m.dst, m.src,
                          GroupHom(m.dst.bottom, m.src.bottom, tuple(inv1)),
                          GroupHom(m.dst.top, m.src.top, tuple(inv2)))


def enumerate_xmod_morphisms(src: CrossedModule, dst: CrossedModule,
                             limits: Limits = DEFAULT_LIMITS,
                             top_maps=None) -> list[XModMorphism]:
    """All crossed-module morphisms src -> dst.

    Top-level homs are searched first; bottom maps are then constrained to
    the boundary fibers and checked for equivariance. Trivial bottom
    groups short-circuit the second search.
    """
    from .groups import _extend_partial, enumerate_homs
    if top_maps is None:
        top_maps = enumerate_homs(src.top, dst.top, limits)
    out: list[XModMorphism] = []
    for f2 in top_maps:
        if src.bottom.order == 1:
            f1 = trivial_hom(src.bottom, dst.bottom)
            try:
                out.append(make_xmorphism(src, dst, f1, f2))
            except ValidationError:
                pass
            continue
        # fiber constraint: f1(t) must map under dst boundary to f2(src boundary(t))
        fibers: dict[int, list[int]] = {}
        for x in dst.bottom.elements():
            fibers.setdefault(dst.boundary(x), []).append(x)
        gens = src.bottom.generators
        nodes = 0

        def rec(i: int, partial: dict):
            nonlocal nodes
            if i == len(gens):
                f1 = GroupHom(src.bottom, dst.bottom,
                              tuple(partial[a] for a in range(src.bottom.order)))
                try:
                    out.append(make_xmorphism(src, dst, f1, f2))
                except ValidationError:
                    pass
                return
            g = gens[i]
            g_ord = src.bottom.element_orders[g]
            target = f2(src.boundary(g))
            for h in fibers.get(target, ()):
                if g_ord % dst.bottom.element_orders[h] != 0:
                    continue
                nodes += 1
                if nodes > limits.search_cap:
                    raise SizeLimitExceeded("xmod morphism search", limits.search_cap)
                ext = _extend_partial(src.bottom, dst.bottom, {**partial, g: h})
                if ext is not None:
                    rec(i + 1, ext)

        rec(0, {src.bottom.identity: dst.bottom.identity})
    return out


def are_isomorphic_xmod(s: CrossedModule, t: CrossedModule,
                        limits: Limits = DEFAULT_LIMITS) -> XModMorphism | None:
    """First isomorphism found, else None."""
    if s.sizes != t.sizes:
        return None
    if s.bottom.order_profile != t.bottom.order_profile \
            or s.top.order_profile != t.top.order_profile:
        return None
    from .groups import enumerate_homs
    top_maps = [f2 for f2 in enumerate_homs(s.top, t.top, limits)
                if f2.is_bijective]
    for m in enumerate_xmod_morphisms(s, t, limits, top_maps=top_maps):
        if m.is_iso:
            return m
    return None


# ---------------------------------------------------------------------------
# subobjects

@dataclass(eq=False)
class SubCrossedModule:
    parent: CrossedModule
    members1: frozenset[int]
    members2: frozenset[int]

    @property
    def sizes(self) -> tuple[int, int]:
        return (len(self.members1), len(self.members2))

    def is_trivial(self) -> bool:
        return self.sizes == (1, 1)

    def __eq__(self, other):
        return (isinstance(other, SubCrossedModule)
                and self.parent is other.parent
                and self.members1 == other.members1
                and self.members2 == other.members2)

    def __hash__(self):
        return hash((id(self.parent), self.members1, self.members2))


def make_sub(parent: CrossedModule, members1, members2) -> SubCrossedModule:
    m1 = frozenset(int(x) for x in members1)
    m2 = frozenset(int(x) for x in members2)
    subgroup(parent.bottom, m1)
    subgroup(parent.top, m2)
    for t in m1:
        if parent.boundary(t) not in m2:
            raise ValidationError("subcrossed module",
                                  f"boundary leaves level 2 at element {t}")
    for b in m2:
        for t in m1:
            if parent.act(b, t) not in m1:
                raise ValidationError("subcrossed module",
                                      f"action leaves level 1 at (b,t)=({b},{t})")
    return SubCrossedModule(parent, m1, m2)


def trivial_sub(parent: CrossedModule) -> SubCrossedModule:
    return SubCrossedModule(parent, frozenset({parent.bottom.identity}),
                            frozenset({parent.top.identity}))


def full_sub(parent: CrossedModule) -> SubCrossedModule:
    return SubCrossedModule(parent, frozenset(parent.bottom.elements()),
                            frozenset(parent.top.elements()))


def is_normal_sub(parent: CrossedModule, s: SubCrossedModule,
                  report: bool = False):
    """Three conditions: level-2 normality, stability of level 1 under the
    whole top group, and containment of action commutators."""
    verdict, why = True, None
    if not Subgroup(parent.top, s.members2).is_normal:
        verdict, why = False, "condition 1: level-2 members not normal in the top group"
    if verdict:
        for b in parent.top.elements():
            for t in s.members1:
                if parent.act(b, t) not in s.members1:
                    verdict = False
                    why = (f"condition 2: action of top element {b} moves "
                           f"level-1 member {t} outside")
                    break
            if not verdict:
                break
    if verdict:
        for n in s.members2:
            for t in parent.bottom.elements():
                comm = parent.bottom.mul(parent.act(n, t), parent.bottom.inv(t))
                if comm not in s.members1:
                    verdict = False
                    why = (f"condition 3: action commutator of (n,t)=({n},{t}) "
                           f"not a level-1 member")
                    break
            if not verdict:
                break
    return (verdict, why) if report else verdict


def action_commutators(parent: CrossedModule, members2) -> set[int]:
    """All (n . t) t^-1 for n in members2, t in the bottom group."""
    out = set()
    for n in members2:
        for t in parent.bottom.elements():
            out.add(parent.bottom.mul(parent.act(n, t), parent.bottom.inv(t)))
    return out


def xnormal_closure(parent: CrossedModule, seed1, seed2) -> SubCrossedModule:
    """Least normal subcrossed module containing the seeds (fixpoint)."""
    s1 = set(int(x) for x in seed1) | {parent.bottom.identity}
    s2 = set(int(x) for x in seed2) | {parent.top.identity}
    while True:
        n2 = normal_closure_grp(parent.top,
                                s2 | {parent.boundary(t) for t in s1}).members
        gen1 = {parent.act(b, t) for b in parent.top.elements() for t in s1}
        gen1 |= action_commutators(parent, n2)
        n1 = closure_of(parent.bottom, gen1)
        if n1 == s1 and n2 == s2:
            sub = SubCrossedModule(parent, frozenset(n1), frozenset(n2))
            ok, why = is_normal_sub(parent, sub, report=True)
            if not ok:
                raise ValidationError("normal closure", f"fixpoint unstable: {why}")
            return sub
        s1, s2 = set(n1), set(n2)


def xnormal_closure_formula(parent: CrossedModule, seed1, seed2) -> SubCrossedModule:
    """One-pass closed formula: level 2 is the plain normal closure; level 1
    is generated by the top-group orbit of the seed together with the action
    commutators of the level-2 closure. Cross-check for xnormal_closure."""
    s1 = set(int(x) for x in seed1)
    s2 = set(int(x) for x in seed2) | {parent.boundary(t) for t in s1}
    n2 = normal_closure_grp(parent.top, s2).members
    gen1 = {parent.act(b, t) for b in parent.top.elements() for t in s1}
    gen1 |= action_commutators(parent, n2)
    n1 = closure_of(parent.bottom, gen1)
    return SubCrossedModule(parent, frozenset(n1), frozenset(n2))


def xnormal_closure_bruteforce(parent: CrossedModule, seed1, seed2) -> SubCrossedModule:
    """Oracle: intersection of all normal subcrossed modules containing the
    seeds. Only for parents with few elements per level."""
    from .groups import _all_subgroups
    seed1 = set(seed1)
    seed2 = set(seed2)
    best1 = set(parent.bottom.elements())
    best2 = set(parent.top.elements())
    for m1 in _all_subgroups(parent.bottom):
        if not seed1 <= m1:
            continue
        for m2 in _all_subgroups(parent.top):
            if not seed2 <= m2:
                continue
            try:
                sub = make_sub(parent, m1, m2)
            except ValidationError:
                continue
            if is_normal_sub(parent, sub):
                best1 &= m1
                best2 &= m2
    return SubCrossedModule(parent, frozenset(best1), frozenset(best2))


def xkernel(m: XModMorphism) -> SubCrossedModule:
    return make_sub(m.src, kernel_of(m.f1).members, kernel_of(m.f2).members)


def ximage(m: XModMorphism) -> SubCrossedModule:
    return make_sub(m.dst, image_of(m.f1).members, image_of(m.f2).members)


def as_xmod(sub: SubCrossedModule) -> tuple[CrossedModule, XModMorphism]:
    """Subcrossed module as a standalone crossed module plus inclusion."""
    parent = sub.parent
    bottom, inc1 = subgroup_group(Subgroup(parent.bottom, sub.members1))
    top, inc2 = subgroup_group(Subgroup(parent.top, sub.members2))
    back1 = {inc1(t): t for t in bottom.elements()}
    back2 = {inc2(b): b for b in top.elements()}
    boundary = make_hom(bottom, top,
                        [back2[parent.boundary(inc1(t))] for t in bottom.elements()])
    act = np.empty((top.order, bottom.order), dtype=np.int64)
    for b in top.elements():
        for t in bottom.elements():
            act[b, t] = back1[parent.act(inc2(b), inc1(t))]
    sm = make_xmod(bottom, top, boundary, make_action(top, bottom, act))
    return sm, make_xmorphism(sm, parent, inc1, inc2)


# ---------------------------------------------------------------------------
# quotients, cokernels, pullbacks

def xquotient(parent: CrossedModule,
              n: SubCrossedModule) -> tuple[CrossedModule, XModMorphism]:
    ok, why = is_normal_sub(parent, n, report=True)
    if not ok:
        raise NotNormal(why)
    q1, p1 = quotient_grp(parent.bottom, Subgroup(parent.bottom, n.members1))
    q2, p2 = quotient_grp(parent.top, Subgroup(parent.top, n.members2))
    # representative of each coset: first preimage element
    rep1 = [0] * q1.order
    for t in range(parent.bottom.order - 1, -1, -1):
        rep1[p1(t)] = t
    rep2 = [0] * q2.order
    for b in range(parent.top.order - 1, -1, -1):
        rep2[p2(b)] = b
    boundary = make_hom(q1, q2, [p2(parent.boundary(rep1[t])) for t in q1.elements()])
    act = np.empty((q2.order, q1.order), dtype=np.int64)
    for b in q2.elements():
        for t in q1.elements():
            act[b, t] = p1(parent.act(rep2[b], rep1[t]))
    q = make_xmod(q1, q2, boundary, make_action(q2, q1, act),
                  name=f"{parent.name}/N" if parent.name else "")
    return q, make_xmorphism(parent, q, p1, p2)


def xcokernel(m: XModMorphism) -> tuple[CrossedModule, XModMorphism]:
    img = ximage(m)
    closure = xnormal_closure(m.dst, img.members1, img.members2)
    return xquotient(m.dst, closure)


@dataclass(eq=False)
class XModPullback:
    xmod: CrossedModule
    pi_left: XModMorphism   # onto the domain of the first morphism
    pi_right: XModMorphism  # onto the domain of the second morphism
    pb1: GroupPullback
    pb2: GroupPullback

    def mediate(self, m_left: XModMorphism, m_right: XModMorphism) -> XModMorphism:
        f1 = self.pb1.mediate(m_left.f1, m_right.f1)
        f2 = self.pb2.mediate(m_left.f2, m_right.f2)
        return make_xmorphism(m_left.src, self.xmod, f1, f2)


def xpullback(alpha: XModMorphism, g: XModMorphism) -> XModPullback:
    """Componentwise pullback of alpha: T -> Q along g: Q' -> Q."""
    if alpha.dst is not g.dst:
        raise ValidationError("xmod pullback", "morphisms must share a codomain")
    t, qp = alpha.src, g.src
    pb1 = pullback_grp(alpha.f1, g.f1)
    pb2 = pullback_grp(alpha.f2, g.f2)
    boundary = make_hom(pb1.group, pb2.group,
                        [pb2.pair_index[(t.boundary(x), qp.boundary(y))]
                         for (x, y) in pb1.pairs])
    act = np.empty((pb2.group.order, pb1.group.order), dtype=np.int64)
    for i, (b, bp) in enumerate(pb2.pairs):
        for j, (x, y) in enumerate(pb1.pairs):
            act[i, j] = pb1.pair_index[(t.act(b, x), qp.act(bp, y))]
    w = make_xmod(pb1.group, pb2.group, boundary,
                  make_action(pb2.group, pb1.group, act))
    pi_left = make_xmorphism(w, t, pb1.proj_a, pb2.proj_a)
    pi_right = make_xmorphism(w, qp, pb1.proj_b, pb2.proj_b)
    return XModPullback(w, pi_left, pi_right, pb1, pb2)


# ---------------------------------------------------------------------------
# short exact sequences

@dataclass(eq=False)
class ShortExactSequence:
    kappa: XModMorphism
    alpha: XModMorphism

    @property
    def kernel(self) -> CrossedModule:
        return self.kappa.src

    @property
    def total(self) -> CrossedModule:
        return self.kappa.dst

    @property
    def quotient(self) -> CrossedModule:
        return self.alpha.dst

    def describe(self) -> str:
        k, t, q = self.kernel.sizes, self.total.sizes, self.quotient.sizes
        return f"1 -> {k} -> {t} -> {q} -> 1"


def make_ses(kappa: XModMorphism, alpha: XModMorphism) -> ShortExactSequence:
    if kappa.dst is not alpha.src:
        raise NotComposable("kernel and quotient maps do not share the middle object")
    for level, (k, a) in enumerate(((kappa.f1, alpha.f1), (kappa.f2, alpha.f2)), 1):
        if not k.is_injective:
            raise NotExact(level, "kernel map not injective")
        if not a.is_surjective:
            raise NotExact(level, "quotient map not surjective")
        img = image_of(k).members
        ker = kernel_of(a).members
        if img != ker:
            stage = "image strictly inside kernel" if img < ker else "image not in kernel"
            raise NotExact(level, stage)
    return ShortExactSequence(kappa, alpha)


def ses_from_normal_sub(parent: CrossedModule,
                        n: SubCrossedModule) -> ShortExactSequence:
    sm, inc = as_xmod(n)
    _, proj = xquotient(parent, n)
    return make_ses(inc, proj)
