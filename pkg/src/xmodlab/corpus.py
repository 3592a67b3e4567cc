"""Corpus files: a JSON schema naming groups, crossed modules, morphisms,
exact sequences, and localizers.

Schema (all sections optional):

  groups     name -> "cyclic(4)" | {"table": [[...]]}
                  | {"fgab": {"rank": r, "invariants": [...]}}
  xmods      name -> {"x_of": group} | {"r_of": group}
                  | {"inclusion": group, "members": [...]}
                  | {"bottom": g, "top": g, "boundary": MAP,
                     "action": "conjugation" | "trivial" | {"table": [[...]]}}
  morphisms  name -> {"src": xmod, "dst": xmod, "f1": MAP, "f2": MAP}
  ab_morphisms  name -> {"src": group, "dst": group, "matrix": [[...]]}
  sequences  name -> {"kappa": morphism, "alpha": morphism}
                  | {"xmod": name, "members1": [...], "members2": [...]}
  localizers name -> "ab" | "i" | "pxz" | "nullify:<xmod>" | "lf:<morphism>"

  MAP is {"map": [...]} (full element map), {"gens": {"3": 5, ...}}
  (generator images), "identity", or "trivial".

Loading validates every object (group axioms, crossed-module axioms,
morphism squares, exactness); the first failure raises ParseError or
ValidationError naming the object. Serialization is canonical: explicit
tables and full maps, keys sorted.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .catalogue import catalogue, normal_subs
from .config import DEFAULT_LIMITS, Limits
from .errors import ParseError, ValidationError, XModLabError
from .fgab import AbHom, FgAbGroup, make_ab_hom, to_finite_group
from .groups import (FiniteGroup, GroupHom, cyclic, group_from_table,
                     hom_from_generator_images, identity_hom, make_action,
                     make_hom, named_group, trivial_action, trivial_hom,
                     conjugation_action)
from .localize import (AbLocalizer, ILocalizer, LfLocalizer, Localizer,
                       NullificationLocalizer, PxzLocalizer)
from .xmod import (CrossedModule, ShortExactSequence, XModMorphism,
                   functor_R, functor_X, inclusion_xmod, make_ses, make_sub,
                   make_xmod, make_xmorphism, ses_from_normal_sub)


@dataclass
class Corpus:
    groups: dict[str, FiniteGroup] = field(default_factory=dict)
    ab_groups: dict[str, FgAbGroup] = field(default_factory=dict)
    xmods: dict[str, CrossedModule] = field(default_factory=dict)
    morphisms: dict[str, XModMorphism] = field(default_factory=dict)
    ab_morphisms: dict[str, AbHom] = field(default_factory=dict)
    sequences: dict[str, ShortExactSequence] = field(default_factory=dict)
    localizers: dict[str, Localizer] = field(default_factory=dict)


def _wrap(name, fn):
    try:
        return fn()
    except XModLabError as exc:
        raise ValidationError(name, str(exc)) from exc
    except (KeyError, TypeError, IndexError) as exc:
        raise ParseError(f"{name}: malformed entry ({exc})") from exc


def _load_group(name, spec, limits):
    if isinstance(spec, str):
        g = named_group(spec, limits)
        g.name = name
        return g, None
    if "table" in spec:
        return group_from_table(spec["table"], name=name), None
    if "fgab" in spec:
        data = spec["fgab"]
        return None, FgAbGroup(int(data.get("rank", 0)),
                               tuple(data.get("invariants", ())))
    raise ParseError(f"{name}: unknown group spec")


def _load_map(spec, src: FiniteGroup, dst: FiniteGroup) -> GroupHom:
    if spec == "identity":
        if src is not dst:
            raise ValidationError("map", "identity needs equal endpoints")
        return identity_hom(src)
    if spec == "trivial":
        return trivial_hom(src, dst)
    if "map" in spec:
        return make_hom(src, dst, spec["map"])
    if "gens" in spec:
        images = {int(k): int(v) for k, v in spec["gens"].items()}
        return hom_from_generator_images(src, dst, images)
    raise ParseError("unknown map spec")


def _load_xmod(name, spec, corpus: Corpus) -> CrossedModule:
    if "x_of" in spec:
        t = functor_X(corpus.groups[spec["x_of"]])
    elif "r_of" in spec:
        t = functor_R(corpus.groups[spec["r_of"]])
    elif "inclusion" in spec:
        t = inclusion_xmod(corpus.groups[spec["inclusion"]], spec["members"])
    else:
        bottom = corpus.groups[spec["bottom"]]
        top = corpus.groups[spec["top"]]
        boundary = _load_map(spec["boundary"], bottom, top)
        act_spec = spec["action"]
        if act_spec == "trivial":
            action = trivial_action(top, bottom)
        elif act_spec == "conjugation":
            action = conjugation_action(top, boundary)
        else:
            action = make_action(top, bottom, act_spec["table"])
        t = make_xmod(bottom, top, boundary, action)
    t.name = name
    return t


def _load_localizer(name, spec, corpus: Corpus) -> Localizer:
    if spec == "ab":
        return AbLocalizer()
    if spec == "i":
        return ILocalizer()
    if spec == "pxz":
        return PxzLocalizer()
    if spec.startswith("nullify:"):
        ref = spec.split(":", 1)[1]
        return NullificationLocalizer(corpus.xmods[ref], name=spec)
    if spec.startswith("lf:"):
        ref = spec.split(":", 1)[1]
        ab_phi = corpus.ab_morphisms.get(ref)
        if ref in corpus.morphisms:
            return LfLocalizer(corpus.morphisms[ref], name=spec, ab_phi=ab_phi)
        if ab_phi is not None:
            # embed the finite abelian morphism as a trivial-bottom morphism
            gs, _, es = to_finite_group(ab_phi.src)
            gd, _, ed = to_finite_group(ab_phi.dst)
            idx = {e: i for i, e in enumerate(ed)}
            f2 = make_hom(gs, gd, [idx[ab_phi(e)] for e in es])
            xs, xd = functor_X(gs), functor_X(gd)
            m = make_xmorphism(xs, xd, trivial_hom(xs.bottom, xd.bottom), f2)
            return LfLocalizer(m, name=spec, ab_phi=ab_phi)
        raise ParseError(f"{name}: no morphism named '{ref}'")
    raise ParseError(f"{name}: unknown localizer spec '{spec}'")


def load_corpus(data, limits: Limits = DEFAULT_LIMITS) -> Corpus:
    """Build and validate a corpus from a parsed JSON document."""
    if not isinstance(data, dict):
        raise ParseError("corpus root must be an object")
    corpus = Corpus()
    for name in sorted(data.get("groups", {})):
        g, ab = _wrap(name, lambda: _load_group(name, data["groups"][name], limits))
        if g is not None:
            corpus.groups[name] = g
        else:
            corpus.ab_groups[name] = ab
    for name in sorted(data.get("xmods", {})):
        corpus.xmods[name] = _wrap(
            name, lambda: _load_xmod(name, data["xmods"][name], corpus))
    for name in sorted(data.get("morphisms", {})):
        spec = data["morphisms"][name]

        def build():
            src = corpus.xmods[spec["src"]]
            dst = corpus.xmods[spec["dst"]]
            f1 = _load_map(spec["f1"], src.bottom, dst.bottom)
            f2 = _load_map(spec["f2"], src.top, dst.top)
            return make_xmorphism(src, dst, f1, f2)
        corpus.morphisms[name] = _wrap(name, build)
    for name in sorted(data.get("ab_morphisms", {})):
        spec = data["ab_morphisms"][name]
        corpus.ab_morphisms[name] = _wrap(
            name, lambda: make_ab_hom(corpus.ab_groups[spec["src"]],
                                      corpus.ab_groups[spec["dst"]],
                                      spec["matrix"]))
    for name in sorted(data.get("sequences", {})):
        spec = data["sequences"][name]

        def build_seq():
            if "kappa" in spec:
                return make_ses(corpus.morphisms[spec["kappa"]],
                                corpus.morphisms[spec["alpha"]])
            t = corpus.xmods[spec["xmod"]]
            sub = make_sub(t, spec["members1"], spec["members2"])
            return ses_from_normal_sub(t, sub)
        corpus.sequences[name] = _wrap(name, build_seq)
    for name in sorted(data.get("localizers", {})):
        corpus.localizers[name] = _wrap(
            name, lambda: _load_localizer(name, data["localizers"][name], corpus))
    return corpus


def load_corpus_file(path, limits: Limits = DEFAULT_LIMITS) -> Corpus:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read corpus file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"corpus file is not valid JSON: {exc}") from exc
    return load_corpus(data, limits)


def serialize_corpus(corpus: Corpus, raw: dict) -> dict:
    """Canonical serialization: explicit tables, full maps, sorted keys.
    Localizer and sequence specs are carried through from the raw document
    (they are already canonical names)."""
    out: dict = {"groups": {}, "xmods": {}, "morphisms": {},
                 "ab_morphisms": {}, "sequences": {}, "localizers": {}}
    for name, g in sorted(corpus.groups.items()):
        out["groups"][name] = {"table": g.table.tolist()}
    for name, a in sorted(corpus.ab_groups.items()):
        out["groups"][name] = {"fgab": {"rank": a.rank,
                                        "invariants": list(a.invariants)}}
    for name, t in sorted(corpus.xmods.items()):
        out["xmods"][name] = {
            "bottom": _group_ref(corpus, t.bottom, out, name + ".bottom"),
            "top": _group_ref(corpus, t.top, out, name + ".top"),
            "boundary": {"map": list(t.boundary.mapping)},
            "action": {"table": t.action.act.tolist()},
        }
    for name, m in sorted(corpus.morphisms.items()):
        out["morphisms"][name] = {
            "src": _xmod_ref(corpus, m.src), "dst": _xmod_ref(corpus, m.dst),
            "f1": {"map": list(m.f1.mapping)}, "f2": {"map": list(m.f2.mapping)},
        }
    for name, h in sorted(corpus.ab_morphisms.items()):
        out["ab_morphisms"][name] = {
            "src": _ab_ref(corpus, h.src), "dst": _ab_ref(corpus, h.dst),
            "matrix": [list(r) for r in h.matrix],
        }
    out["sequences"] = {k: raw.get("sequences", {})[k]
                        for k in sorted(corpus.sequences)}
    out["localizers"] = {k: raw.get("localizers", {})[k]
                         for k in sorted(corpus.localizers)}
    return out


def _group_ref(corpus: Corpus, g: FiniteGroup, out: dict, fallback: str) -> str:
    for name, known in corpus.groups.items():
        if known is g:
            return name
    out["groups"][fallback] = {"table": g.table.tolist()}
    return fallback


def _xmod_ref(corpus: Corpus, t: CrossedModule) -> str:
    for name, known in corpus.xmods.items():
        if known is t:
            return name
    raise ValidationError("corpus", "morphism endpoint is not a named object")


def _ab_ref(corpus: Corpus, a: FgAbGroup) -> str:
    for name, known in corpus.ab_groups.items():
        if known == a:
            return name
    raise ValidationError("corpus", "morphism endpoint is not a named group")


def groups_equal(a: FiniteGroup, b: FiniteGroup) -> bool:
    import numpy as np
    return np.array_equal(a.table, b.table)


def xmods_equal(a: CrossedModule, b: CrossedModule) -> bool:
    import numpy as np
    return (groups_equal(a.bottom, b.bottom) and groups_equal(a.top, b.top)
            and a.boundary.mapping == b.boundary.mapping
            and np.array_equal(a.action.act, b.action.act))


def default_corpus_document() -> dict:
    """The built-in corpus: the full catalogue plus the abelian-backend
    counterexample data."""
    cat = catalogue()
    doc: dict = {"groups": {}, "xmods": {}, "morphisms": {},
                 "ab_morphisms": {}, "sequences": {}, "localizers": {}}
    from .catalogue import standard_groups
    for name, g in standard_groups().items():
        doc["groups"][name] = {"table": g.table.tolist()}
    for name, t in cat.items():
        doc["xmods"][name] = {
            "bottom": _table_name(doc, t.bottom),
            "top": _table_name(doc, t.top),
            "boundary": {"map": list(t.boundary.mapping)},
            "action": {"table": t.action.act.tolist()},
        }
    doc["groups"]["Zab"] = {"fgab": {"rank": 1, "invariants": []}}
    doc["groups"]["C2ab"] = {"fgab": {"rank": 0, "invariants": [2]}}
    doc["groups"]["C4ab"] = {"fgab": {"rank": 0, "invariants": [4]}}
    doc["ab_morphisms"]["phi"] = {"src": "C4ab", "dst": "C2ab", "matrix": [[1]]}
    doc["morphisms"]["phi"] = {
        "src": "XC4", "dst": "XC2",
        "f1": {"map": [0]}, "f2": {"map": [0, 1, 0, 1]},
    }
    # a few named sequences over small objects
    idx = 0
    for tname in ("RS3", "C4<D4", "RD4", "XD4", "RQ8"):
        for sub in normal_subs(cat[tname]):
            doc["sequences"][f"seq{idx}"] = {
                "xmod": tname,
                "members1": sorted(sub.members1),
                "members2": sorted(sub.members2),
            }
            idx += 1
    doc["localizers"] = {
        "ab": "ab", "i": "i", "pxz": "pxz",
        "nullify:XC2": "nullify:XC2",
        "lf:phi": "lf:phi",
    }
    return doc


def _table_name(doc: dict, g: FiniteGroup) -> str:
    for name, spec in doc["groups"].items():
        if "table" in spec and spec["table"] == g.table.tolist():
            return name
    name = g.name or f"G{len(doc['groups'])}"
    doc["groups"][name] = {"table": g.table.tolist()}
    return name


def default_corpus(limits: Limits = DEFAULT_LIMITS) -> Corpus:
    return load_corpus(default_corpus_document(), limits)
