"""Localization functors on crossed modules as executable values.

Four families:

  AbLocalizer      closed formula: levelwise quotient by action commutators
                   and the top commutator subgroup; lands in abelian crossed
                   modules with trivial action.
  ILocalizer       closed formula: T maps onto (T2, T2, id) via (boundary, id).
                   Not a regular-epi localization: the bottom coaugmentation
                   need not be surjective.
  NullificationLocalizer(A)   kills every morphism out of A by iterated
                   cokernels of evaluation images.
  LfLocalizer(f)   for a regular epi f, kills the image of ker(f) under every
                   morphism from dom(f), iterated to a fixpoint.

All regular-epi kinds share the quotient-induced morphism machinery with a
full well-definedness pass: a failure there contradicts functoriality and is
raised as NotWellDefined (an implementation bug, not a mathematical outcome).
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .config import DEFAULT_LIMITS, Limits
from .errors import NotWellDefined, ValidationError, XModLabError
from .fgab import AbHom
from .groups import GroupHom, closure_of, identity_hom, make_hom, subgroup_generated
from .xmod import (CrossedModule, SubCrossedModule, XModMorphism,
                   action_commutators, as_xmod, compose_xmorphisms,
                   enumerate_xmod_morphisms, identity_xmorphism, make_sub,
                   make_xmorphism, xkernel, xnormal_closure, xquotient)


@dataclass(eq=False)
class LocalizationResult:
    source: CrossedModule
    local: CrossedModule
    coaugmentation: XModMorphism
    trace: tuple[XModMorphism, ...] = ()


def induced_on_quotients(ell_src: XModMorphism, ell_dst: XModMorphism,
                         m: XModMorphism) -> XModMorphism:
    """Induced morphism L(src) -> L(dst) of m: src -> dst, where the ells are
    surjective coaugmentations. Defined on classes, with a full
    well-definedness pass over every element."""
    maps = []
    for p_s, p_d, f in ((ell_src.f1, ell_dst.f1, m.f1),
                        (ell_src.f2, ell_dst.f2, m.f2)):
        n = p_s.dst.order
        mapping = [None] * n
        for x in p_s.src.elements():
            cls = p_s(x)
            val = p_d(f(x))
            if mapping[cls] is None:
                mapping[cls] = val
            elif mapping[cls] != val:
                raise NotWellDefined(
                    f"class {cls} receives both {mapping[cls]} and {val}")
        if any(v is None for v in mapping):
            raise NotWellDefined("coaugmentation not surjective")
        maps.append(make_hom(p_s.dst, p_d.dst, mapping))
    return make_xmorphism(ell_src.dst, ell_dst.dst, maps[0], maps[1])


class Localizer:
    """Base class; subclasses set name/kind and implement _localize."""

    name = "localizer"
    kind = "closed-formula"
    regular_epi = True

    def __init__(self):
        self._cache: dict[int, LocalizationResult] = {}
        self._keepalive: list[CrossedModule] = []

    def localize(self, t: CrossedModule,
                 limits: Limits = DEFAULT_LIMITS) -> LocalizationResult:
        key = id(t)
        if key not in self._cache:
            self._cache[key] = self._localize(t, limits)
            self._keepalive.append(t)
        return self._cache[key]

    def _localize(self, t, limits):
        raise NotImplementedError

    def is_local(self, t: CrossedModule, limits: Limits = DEFAULT_LIMITS) -> bool:
        return self.localize(t, limits).coaugmentation.is_iso

    def induced(self, m: XModMorphism,
                limits: Limits = DEFAULT_LIMITS) -> XModMorphism:
        src = self.localize(m.src, limits)
        dst = self.localize(m.dst, limits)
        return induced_on_quotients(src.coaugmentation, dst.coaugmentation, m)

    def is_equivalence(self, m: XModMorphism,
                       limits: Limits = DEFAULT_LIMITS) -> bool:
        return self.induced(m, limits).is_iso


class AbLocalizer(Localizer):
    name = "ab"

    def _localize(self, t, limits):
        n1 = closure_of(t.bottom, action_commutators(t, t.top.elements()))
        n2 = subgroup_generated(
            t.top, {t.top.mul(t.top.mul(a, b),
                              t.top.mul(t.top.inv(a), t.top.inv(b)))
                    for a in t.top.elements() for b in t.top.elements()}).members
        sub = make_sub(t, n1, n2)
        local, proj = xquotient(t, sub)
        return LocalizationResult(t, local, proj, (proj,))


class PxzLocalizer(Localizer):
    """Nullification at the free abelian bottom-only object, in closed form:
    kill the whole top group and the action commutators at the bottom."""
    name = "pxz"

    def _localize(self, t, limits):
        n1 = closure_of(t.bottom, action_commutators(t, t.top.elements()))
        sub = make_sub(t, n1, t.top.elements())
        local, proj = xquotient(t, sub)
        return LocalizationResult(t, local, proj, (proj,))


class ILocalizer(Localizer):
    name = "i"
    regular_epi = False

    def _localize(self, t, limits):
        from .groups import conjugation_action
        from .xmod import make_xmod
        local = make_xmod(t.top, t.top, identity_hom(t.top),
                          conjugation_action(t.top, identity_hom(t.top)))
        coaug = make_xmorphism(t, local,
                               GroupHom(t.bottom, t.top, t.boundary.mapping),
                               identity_hom(t.top))
        return LocalizationResult(t, local, coaug, ())

    def induced(self, m: XModMorphism,
                limits: Limits = DEFAULT_LIMITS) -> XModMorphism:
        src = self.localize(m.src, limits).local
        dst = self.localize(m.dst, limits).local
        f = GroupHom(src.bottom, dst.bottom, m.f2.mapping)
        g = GroupHom(src.top, dst.top, m.f2.mapping)
        return make_xmorphism(src, dst, f, g)


class NullificationLocalizer(Localizer):
    kind = "nullification"

    def __init__(self, a: CrossedModule, name: str = ""):
        super().__init__()
        self.a = a
        self.name = name or f"nullify:{a.name or 'A'}"

    def _morphism_images(self, t, limits):
        seed1, seed2 = set(), set()
        for g in enumerate_xmod_morphisms(self.a, t, limits):
            seed1.update(g.f1.mapping)
            seed2.update(g.f2.mapping)
        seed1.discard(t.bottom.identity)
        seed2.discard(t.top.identity)
        return seed1, seed2

    def _localize(self, t, limits):
        current = t
        coaug = identity_xmorphism(t)
        trace = []
        cap = t.bottom.order + t.top.order
        for _ in range(cap):
            seed1, seed2 = self._morphism_images(current, limits)
            if not seed1 and not seed2:
                return LocalizationResult(t, current, coaug, tuple(trace))
            closure = xnormal_closure(current, seed1, seed2)
            current, proj = xquotient(current, closure)
            trace.append(proj)
            coaug = compose_xmorphisms(proj, coaug)
        raise XModLabError("nullification failed to stabilize within "
                           f"{cap} stages; this indicates a bug")

    def is_local(self, t: CrossedModule, limits: Limits = DEFAULT_LIMITS) -> bool:
        seed1, seed2 = self._morphism_images(t, limits)
        return not seed1 and not seed2


class LfLocalizer(Localizer):
    """Localization at a regular epimorphism f between finite crossed
    modules. ab_phi optionally carries the same morphism on the abelian
    backend for Z-valued computations."""
    kind = "lf"

    def __init__(self, f: XModMorphism, name: str = "",
                 ab_phi: AbHom | None = None):
        super().__init__()
        if not f.is_regular_epi:
            raise ValidationError(
                name or "lf", "only regular epimorphisms admit this "
                "construction; non-surjective f is not supported")
        self.f = f
        self.kernel = xkernel(f)
        self.name = name or "lf"
        self.ab_phi = ab_phi

    def _kernel_images(self, t, limits):
        seed1, seed2 = set(), set()
        for g in enumerate_xmod_morphisms(self.f.src, t, limits):
            seed1.update(g.f1(x) for x in self.kernel.members1)
            seed2.update(g.f2(x) for x in self.kernel.members2)
        seed1.discard(t.bottom.identity)
        seed2.discard(t.top.identity)
        return seed1, seed2

    def _localize(self, t, limits):
        current = t
        coaug = identity_xmorphism(t)
        trace = []
        cap = t.bottom.order + t.top.order
        for _ in range(cap):
            seed1, seed2 = self._kernel_images(current, limits)
            if not seed1 and not seed2:
                return LocalizationResult(t, current, coaug, tuple(trace))
            closure = xnormal_closure(current, seed1, seed2)
            current, proj = xquotient(current, closure)
            trace.append(proj)
            coaug = compose_xmorphisms(proj, coaug)
        raise XModLabError("localization failed to stabilize within "
                           f"{cap} stages; this indicates a bug")

    def is_local(self, t: CrossedModule, limits: Limits = DEFAULT_LIMITS) -> bool:
        """Hom(f, t) is a bijection iff every morphism from dom(f) kills
        ker(f) (injectivity is automatic for surjective f)."""
        seed1, seed2 = self._kernel_images(t, limits)
        return not seed1 and not seed2


def is_acyclic(a: CrossedModule, t: CrossedModule,
               limits: Limits = DEFAULT_LIMITS) -> bool:
    return NullificationLocalizer(a).localize(t, limits).local.is_trivial()


def kernel_acyclicity(loc: Localizer, t: CrossedModule,
                      limits: Limits = DEFAULT_LIMITS) -> bool:
    """True when the kernel of the coaugmentation of t is killed by loc."""
    coaug = loc.localize(t, limits).coaugmentation
    k, _ = as_xmod(xkernel(coaug))
    return loc.localize(k, limits).local.is_trivial()
