"""Finite groups as dense Cayley tables plus exhaustive search helpers.

A group of order n has elements 0..n-1 and table[a, b] = index of a*b.
Named constructors document their element ordering:

  cyclic(n)     residues 0..n-1
  dihedral(n)   r^i s^j at index j*n + i  (r rotation, s reflection)
  symmetric(n)  permutations of 0..n-1 in lexicographic one-line order,
                with (sigma*tau)(x) = sigma(tau(x))
  product(A, B) pairs (a, b) at index a*|B| + b

Everything here favours simple exhaustive algorithms over permutation-group
machinery; inputs stay well below the configured order cap.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .config import DEFAULT_LIMITS, Limits
from .errors import (NoIdentity, NoInverse, NotAHomomorphism, NotAssociative,
                     NotNormal, SizeLimitExceeded, ValidationError)


@dataclass(eq=False)
class FiniteGroup:
    table: np.ndarray
    identity: int
    inverse: np.ndarray
    name: str = ""

    @property
    def order(self) -> int:
        return int(self.table.shape[0])

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def conj(self, g: int, a: int) -> int:
        """g a g^-1"""
        return int(self.table[self.table[g, a], self.inverse[g]])

    def elements(self) -> range:
        return range(self.order)

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        orders = []
        for a in range(self.order):
            x, k = a, 1
            while x != self.identity:
                x = self.mul(x, a)
                k += 1
            orders.append(k)
        return tuple(orders)

    @cached_property
    def exponent(self) -> int:
        exp = 1
        for o in self.element_orders:
            g = np.gcd(exp, o)
            exp = exp * o // int(g)
        return exp

    @cached_property
    def order_profile(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(Counter(self.element_orders).items()))

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """Greedy generating set: repeatedly add the element extending the
        closure most (smallest index breaks ties); deterministic."""
        n = self.order
        if n == 1:
            return ()
        # first pick: element of maximal order (its closure is its cyclic span)
        first = max(range(n), key=lambda a: (self.element_orders[a], -a))
        gens = [first]
        current = closure_of(self, {self.identity, first})
        while len(current) < n:
            best, best_cl = None, current
            for g in range(n):
                if g in current:
                    continue
                cl = closure_of(self, current | {g})
                if len(cl) > len(best_cl):
                    best, best_cl = g, cl
                    if len(cl) == n:
                        break
            gens.append(best)
            current = best_cl
        return tuple(gens)


def closure_of(group: FiniteGroup, seed) -> set[int]:
    """Subgroup (as element set) generated by seed."""
    members = set(seed)
    members.add(group.identity)
    frontier = list(members)
    table = group.table
    while frontier:
        new = []
        for x in frontier:
            for y in list(members):
                for z in (int(table[x, y]), int(table[y, x])):
                    if z not in members:
                        members.add(z)
                        new.append(z)
        frontier = new
    return members


def group_from_table(table, name: str = "") -> FiniteGroup:
    arr = np.asarray(table, dtype=np.int64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise ValidationError(name or "table", "table must be square and non-empty")
    n = arr.shape[0]
    if arr.min() < 0 or arr.max() >= n:
        raise ValidationError(name or "table", "table entries out of range")

    rng = np.arange(n)
    identity = None
    for e in range(n):
        if np.array_equal(arr[e], rng) and np.array_equal(arr[:, e], rng):
            identity = e
            break
    if identity is None:
        raise NoIdentity()

    inverse = np.empty(n, dtype=np.int64)
    for a in range(n):
        hit = None
        for b in np.where(arr[a] == identity)[0]:
            if arr[b, a] == identity:
                hit = int(b)
                break
        if hit is None:
            raise NoInverse(a)
        inverse[a] = hit

    for a in range(n):
        left = arr[arr[a]]        # (b,c) -> (a*b)*c
        right = arr[a][arr]       # (b,c) -> a*(b*c)
        if not np.array_equal(left, right):
            b, c = map(int, np.argwhere(left != right)[0])
            raise NotAssociative((a, b, c))

    return FiniteGroup(table=arr, identity=identity, inverse=inverse, name=name)


# ---------------------------------------------------------------------------
# named constructors

def cyclic(n: int, limits: Limits = DEFAULT_LIMITS) -> FiniteGroup:
    _check_order(n, limits)
    idx = np.arange(n)
    return group_from_table((idx[:, None] + idx[None, :]) % n, name=f"C{n}")


def dihedral(n: int, limits: Limits = DEFAULT_LIMITS) -> FiniteGroup:
    _check_order(2 * n, limits)
    size = 2 * n
    table = np.empty((size, size), dtype=np.int64)
    for i, j in itertools.product(range(n), range(2)):
        for k, l in itertools.product(range(n), range(2)):
            # r^i s^j * r^k s^l = r^(i + (-1)^j k) s^(j+l)
            rot = (i + (k if j == 0 else -k)) % n
            table[j * n + i, l * n + k] = ((j + l) % 2) * n + rot
    return group_from_table(table, name=f"D{n}")


def symmetric(n: int, limits: Limits = DEFAULT_LIMITS) -> FiniteGroup:
    if n > 6:
        raise ValidationError(f"S{n}", "symmetric(n) limited to n <= 6")
    perms = list(itertools.permutations(range(n)))
    _check_order(len(perms), limits)
    index = {p: i for i, p in enumerate(perms)}
    size = len(perms)
    table = np.empty((size, size), dtype=np.int64)
    for i, sigma in enumerate(perms):
        for j, tau in enumerate(perms):
            table[i, j] = index[tuple(sigma[tau[k]] for k in range(n))]
    return group_from_table(table, name=f"S{n}")


def product(a: FiniteGroup, b: FiniteGroup,
            limits: Limits = DEFAULT_LIMITS) -> FiniteGroup:
    _check_order(a.order * b.order, limits)
    na, nb = a.order, b.order
    ia = np.repeat(np.arange(na), nb)
    ib = np.tile(np.arange(nb), na)
    table = a.table[np.ix_(ia, ia)] * nb + b.table[np.ix_(ib, ib)]
    g = group_from_table(table, name=f"{a.name}x{b.name}" if a.name and b.name else "")
    return g


def named_group(spec: str, limits: Limits = DEFAULT_LIMITS) -> FiniteGroup:
    """Parse specs like "cyclic(4)", "dihedral(3)", "symmetric(3)",
    "product(cyclic(2),cyclic(2))" (nested products allowed)."""
    node = _parse_spec(spec.replace(" ", ""))
    return _build_spec(node, limits)


def _parse_spec(s: str):
    name, rest = s.split("(", 1) if "(" in s else (None, None)
    if name is None or not rest.endswith(")"):
        raise ValidationError(s, "malformed group spec")
    body = rest[:-1]
    if name in ("cyclic", "dihedral", "symmetric"):
        if not body.isdigit():
            raise ValidationError(s, f"{name} expects an integer argument")
        return (name, int(body))
    if name == "product":
        depth, split = 0, None
        for i, ch in enumerate(body):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch == "," and depth == 0:
                split = i
                break
        if split is None:
            raise ValidationError(s, "product expects two arguments")
        return ("product", _parse_spec(body[:split]), _parse_spec(body[split + 1:]))
    raise ValidationError(s, f"unknown group spec '{name}'")


def _build_spec(node, limits: Limits) -> FiniteGroup:
    kind = node[0]
    if kind == "cyclic":
        return cyclic(node[1], limits)
    if kind == "dihedral":
        return dihedral(node[1], limits)
    if kind == "symmetric":
        return symmetric(node[1], limits)
    return product(_build_spec(node[1], limits), _build_spec(node[2], limits), limits)


def _check_order(n: int, limits: Limits):
    if n < 1:
        raise ValidationError("group", "order must be >= 1")
    if n > limits.order_cap:
        raise SizeLimitExceeded("group order", limits.order_cap)


# ---------------------------------------------------------------------------
# homomorphisms

@dataclass(eq=False)
class GroupHom:
    src: FiniteGroup
    dst: FiniteGroup
    mapping: tuple[int, ...]

    def __call__(self, a: int) -> int:
        return self.mapping[a]

    @cached_property
    def is_injective(self) -> bool:
        return len(set(self.mapping)) == self.src.order

    @cached_property
    def is_surjective(self) -> bool:
        return len(set(self.mapping)) == self.dst.order

    @property
    def is_bijective(self) -> bool:
        return self.is_injective and self.src.order == self.dst.order


def make_hom(src: FiniteGroup, dst: FiniteGroup, mapping, check: bool = True) -> GroupHom:
    m = tuple(int(x) for x in mapping)
    if len(m) != src.order or any(not 0 <= x < dst.order for x in m):
        raise ValidationError("hom", "mapping length/range mismatch")
    if check:
        arr = np.asarray(m, dtype=np.int64)
        lhs = arr[src.table]
        rhs = dst.table[arr][:, arr]
        if not np.array_equal(lhs, rhs):
            a, b = map(int, np.argwhere(lhs != rhs)[0])
            raise NotAHomomorphism((a, b))
    return GroupHom(src, dst, m)


def identity_hom(g: FiniteGroup) -> GroupHom:
    return GroupHom(g, g, tuple(range(g.order)))


def trivial_hom(src: FiniteGroup, dst: FiniteGroup) -> GroupHom:
    return GroupHom(src, dst, (dst.identity,) * src.order)


def compose_homs(outer: GroupHom, inner: GroupHom) -> GroupHom:
    if outer.src is not inner.dst:
        raise ValidationError("hom", "composition domain mismatch")
    return GroupHom(inner.src, outer.dst,
                    tuple(outer.mapping[x] for x in inner.mapping))


def _extend_partial(src: FiniteGroup, dst: FiniteGroup, assignments: dict):
    """Multiplicative closure of a partial map; None on conflict."""
    known = dict(assignments)
    known[src.identity] = dst.identity
    queue = list(known.items())
    i = 0
    while i < len(queue):
        a, x = queue[i]
        i += 1
        for b, y in list(known.items()):
            for c, z in ((src.mul(a, b), dst.mul(x, y)),
                         (src.mul(b, a), dst.mul(y, x))):
                w = known.get(c)
                if w is None:
                    known[c] = z
                    queue.append((c, z))
                elif w != z:
                    return None
    return known


def hom_from_generator_images(src: FiniteGroup, dst: FiniteGroup,
                              images: dict[int, int]) -> GroupHom:
    missing = [g for g in src.generators if g not in images]
    if missing:
        raise ValidationError("hom", f"no image given for generators {missing}")
    full = _extend_partial(src, dst, {int(g): int(h) for g, h in images.items()})
    if full is None or len(full) != src.order:
        raise NotAHomomorphism(tuple(sorted(images.items())),
                               "generator images admit no consistent extension")
    return make_hom(src, dst, [full[a] for a in range(src.order)])


def enumerate_homs(src: FiniteGroup, dst: FiniteGroup,
                   limits: Limits = DEFAULT_LIMITS) -> list[GroupHom]:
    """All homomorphisms src -> dst, lexicographic in generator images.

    Backtracking over generator images with order-divisibility pruning and
    incremental closure checking.
    """
    gens = src.generators
    results: list[GroupHom] = []
    nodes = 0

    def rec(i: int, partial: dict):
        nonlocal nodes
        if i == len(gens):
            results.append(GroupHom(src, dst,
                                    tuple(partial[a] for a in range(src.order))))
            return
        g = gens[i]
        g_ord = src.element_orders[g]
        for h in range(dst.order):
            if g_ord % dst.element_orders[h] != 0:
                continue
            nodes += 1
            if nodes > limits.search_cap:
                raise SizeLimitExceeded("hom enumeration", limits.search_cap)
            ext = _extend_partial(src, dst, {**partial, g: h})
            if ext is not None:
                rec(i + 1, ext)

    rec(0, {src.identity: dst.identity})
    return results


def count_homs_bruteforce(src: FiniteGroup, dst: FiniteGroup) -> list[tuple[int, ...]]:
    """Oracle: exhaustive search over all |dst|^|src| maps. Only for tiny inputs."""
    maps = []
    for cand in itertools.product(range(dst.order), repeat=src.order):
        if cand[src.identity] != dst.identity:
            continue
        if all(cand[src.mul(a, b)] == dst.mul(cand[a], cand[b])
               for a in range(src.order) for b in range(src.order)):
            maps.append(cand)
    return maps


# ---------------------------------------------------------------------------
# subgroups, quotients, pullbacks

@dataclass(eq=False)
class Subgroup:
    parent: FiniteGroup
    members: frozenset[int]

    @property
    def order(self) -> int:
        return len(self.members)

    def sorted_members(self) -> list[int]:
        return sorted(self.members)

    @cached_property
    def is_normal(self) -> bool:
        g = self.parent
        return all(g.conj(x, m) in self.members
                   for x in g.elements() for m in self.members)

    def is_trivial(self) -> bool:
        return self.members == frozenset({self.parent.identity})


def subgroup(parent: FiniteGroup, members) -> Subgroup:
    mem = frozenset(int(x) for x in members)
    if parent.identity not in mem:
        raise ValidationError("subgroup", "missing identity")
    for a in mem:
        if parent.inv(a) not in mem:
            raise ValidationError("subgroup", f"not closed under inverse at {a}")
        for b in mem:
            if parent.mul(a, b) not in mem:
                raise ValidationError("subgroup", f"not closed under product at ({a},{b})")
    return Subgroup(parent, mem)


def subgroup_generated(parent: FiniteGroup, seed) -> Subgroup:
    return Subgroup(parent, frozenset(closure_of(parent, set(seed))))


def kernel_of(h: GroupHom) -> Subgroup:
    return Subgroup(h.src, frozenset(a for a in h.src.elements()
                                     if h(a) == h.dst.identity))


def image_of(h: GroupHom) -> Subgroup:
    return Subgroup(h.dst, frozenset(h.mapping))


def normal_closure_grp(parent: FiniteGroup, seed) -> Subgroup:
    members = closure_of(parent, set(seed))
    while True:
        conjugates = {parent.conj(g, m) for g in parent.elements() for m in members}
        if conjugates <= members:
            return Subgroup(parent, frozenset(members))
        members = closure_of(parent, members | conjugates)


def normal_closure_bruteforce(parent: FiniteGroup, seed) -> frozenset[int]:
    """Oracle: intersection of all normal subgroups containing seed."""
    seed = set(seed)
    result = set(parent.elements())
    for members in _all_subgroups(parent):
        if seed <= members and Subgroup(parent, frozenset(members)).is_normal:
            result &= members
    return frozenset(result)


def _all_subgroups(parent: FiniteGroup) -> list[frozenset[int]]:
    found = {frozenset({parent.identity})}
    frontier = list(found)
    while frontier:
        new = []
        for sub in frontier:
            for g in parent.elements():
                if g in sub:
                    continue
                bigger = frozenset(closure_of(parent, set(sub) | {g}))
                if bigger not in found:
                    found.add(bigger)
                    new.append(bigger)
        frontier = new
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def all_subgroups(parent: FiniteGroup) -> list[Subgroup]:
    return [Subgroup(parent, s) for s in _all_subgroups(parent)]


def quotient_grp(parent: FiniteGroup, n: Subgroup) -> tuple[FiniteGroup, GroupHom]:
    """Quotient by a normal subgroup; cosets ordered by least representative."""
    if n.parent is not parent:
        raise ValidationError("quotient", "subgroup of a different parent")
    if not n.is_normal:
        raise NotNormal(f"subgroup {sorted(n.members)} of order {n.order}")
    members = n.sorted_members()
    cls = {}
    reps = []
    for g in parent.elements():
        if g in cls:
            continue
        reps.append(g)
        for m in members:
            cls[parent.mul(g, m)] = len(reps) - 1
    size = len(reps)
    table = np.empty((size, size), dtype=np.int64)
    for i, a in enumerate(reps):
        for j, b in enumerate(reps):
            table[i, j] = cls[parent.mul(a, b)]
    q = group_from_table(table, name=f"{parent.name}/N" if parent.name else "")
    proj = make_hom(parent, q, [cls[g] for g in parent.elements()])
    return q, proj


@dataclass(eq=False)
class GroupPullback:
    group: FiniteGroup
    proj_a: GroupHom
    proj_b: GroupHom
    pairs: tuple[tuple[int, int], ...]

    @cached_property
    def pair_index(self) -> dict[tuple[int, int], int]:
        return {p: i for i, p in enumerate(self.pairs)}

    def mediate(self, h1: GroupHom, h2: GroupHom) -> GroupHom:
        """Unique hom X -> P with proj_a . m = h1 and proj_b . m = h2."""
        x = h1.src
        if h2.src is not x:
            raise ValidationError("pullback", "cone legs have different domains")
        mapping = []
        for a in x.elements():
            pair = (h1(a), h2(a))
            if pair not in self.pair_index:
                raise ValidationError("pullback", f"cone does not commute at {a}")
            mapping.append(self.pair_index[pair])
        return make_hom(x, self.group, mapping)


def pullback_grp(f: GroupHom, g: GroupHom) -> GroupPullback:
    if f.dst is not g.dst:
        raise ValidationError("pullback", "homs must share a codomain")
    a, b = f.src, g.src
    pairs = tuple((x, y) for x in a.elements() for y in b.elements()
                  if f(x) == g(y))
    index = {p: i for i, p in enumerate(pairs)}
    size = len(pairs)
    table = np.empty((size, size), dtype=np.int64)
    for i, (x1, y1) in enumerate(pairs):
        for j, (x2, y2) in enumerate(pairs):
            table[i, j] = index[(a.mul(x1, x2), b.mul(y1, y2))]
    p = group_from_table(table)
    proj_a = make_hom(p, a, [x for x, _ in pairs])
    proj_b = make_hom(p, b, [y for _, y in pairs])
    return GroupPullback(p, proj_a, proj_b, pairs)


def are_isomorphic_grp(g: FiniteGroup, h: FiniteGroup,
                       limits: Limits = DEFAULT_LIMITS) -> GroupHom | None:
    """First isomorphism found by invariant-screened backtracking, else None."""
    if g.order != h.order or g.order_profile != h.order_profile:
        return None
    gens = g.generators
    nodes = 0

    def rec(i: int, partial: dict):
        nonlocal nodes
        if i == len(gens):
            if len(partial) == g.order and len(set(partial.values())) == g.order:
                return make_hom(g, h, [partial[a] for a in range(g.order)])
            return None
        want = g.element_orders[gens[i]]
        for cand in range(h.order):
            if h.element_orders[cand] != want:
                continue
            nodes += 1
            if nodes > limits.search_cap:
                raise SizeLimitExceeded("isomorphism search", limits.search_cap)
            ext = _extend_partial(g, h, {**partial, gens[i]: cand})
            if ext is not None and len(set(ext.values())) == len(ext):
                res = rec(i + 1, ext)
                if res is not None:
                    return res
        return None

    return rec(0, {g.identity: h.identity})


def subgroup_group(sub: Subgroup) -> tuple[FiniteGroup, GroupHom]:
    """Subgroup as a standalone group, with the inclusion hom."""
    members = sub.sorted_members()
    index = {m: i for i, m in enumerate(members)}
    size = len(members)
    table = np.empty((size, size), dtype=np.int64)
    for i, a in enumerate(members):
        for j, b in enumerate(members):
            table[i, j] = index[sub.parent.mul(a, b)]
    g = group_from_table(table)
    return g, make_hom(g, sub.parent, members)


# ---------------------------------------------------------------------------
# actions

@dataclass(eq=False)
class GroupAction:
    actor: FiniteGroup
    space: FiniteGroup
    act: np.ndarray  # actor.order x space.order

    def __call__(self, b: int, t: int) -> int:
        return int(self.act[b, t])


def make_action(actor: FiniteGroup, space: FiniteGroup, act,
                check: bool = True) -> GroupAction:
    arr = np.asarray(act, dtype=np.int64)
    if arr.shape != (actor.order, space.order):
        raise ValidationError("action", "table shape mismatch")
    if check:
        rng = np.arange(space.order)
        if not np.array_equal(arr[actor.identity], rng):
            raise ValidationError("action", "identity does not act trivially")
        for b in range(actor.order):
            perm = arr[b]
            if not np.array_equal(np.sort(perm), rng):
                raise ValidationError("action", f"actor {b} is not a bijection")
            if not np.array_equal(perm[space.table],
                                  space.table[perm][:, perm]):
                raise ValidationError("action", f"actor {b} is not an automorphism")
        for b in range(actor.order):
            # act(b*b', t) == act(b, act(b', t))
            if not np.array_equal(arr[actor.table[b]], arr[b][arr]):
                raise ValidationError("action", f"not a group action at actor {b}")
    return GroupAction(actor, space, arr)


def trivial_action(actor: FiniteGroup, space: FiniteGroup) -> GroupAction:
    act = np.tile(np.arange(space.order), (actor.order, 1))
    return GroupAction(actor, space, act)


def conjugation_action(top: FiniteGroup, emb: GroupHom) -> GroupAction:
    """Action of `top` on emb.src by conjugation through the embedding.

    Requires emb injective with image closed under conjugation in top.
    """
    if emb.dst is not top:
        raise ValidationError("action", "embedding must land in the actor")
    if not emb.is_injective:
        raise ValidationError("action", "conjugation action needs an injective boundary")
    back = {emb(t): t for t in emb.src.elements()}
    act = np.empty((top.order, emb.src.order), dtype=np.int64)
    for b in range(top.order):
        for t in emb.src.elements():
            c = top.conj(b, emb(t))
            if c not in back:
                raise ValidationError(
                    "action", f"image not conjugation-closed at (b,t)=({b},{t})")
            act[b, t] = back[c]
    return make_action(top, emb.src, act, check=False)
