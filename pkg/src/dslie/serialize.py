"""Byte-stable serialization of built algebras and the on-disk build cache.

Everything is canonical JSON (sorted keys, fixed separators), so repeated
runs produce identical bytes; the cache is keyed by a content digest of
the Cartan data plus the degree cap.
"""

from __future__ import annotations

import hashlib
import json
import os
from fractions import Fraction
from typing import Optional

from .build import BuildResult, _Node, _Side
from .cartan import CartanSpec
from .fields import Field, RatFunc, field_for
from .superalgebra import Superalgebra


def scalar_to_obj(fld: Field, x):
    if fld.spec.parametric:
        if fld.p:
            return [list(x.num), list(x.den)]
        return [[str(c) for c in x.num], [str(c) for c in x.den]]
    if fld.p:
        return int(x)
    return str(x)


def scalar_from_obj(fld: Field, o):
    if fld.spec.parametric:
        if fld.p:
            return RatFunc(tuple(int(c) for c in o[0]), tuple(int(c) for c in o[1]))
        return RatFunc(tuple(Fraction(c) for c in o[0]), tuple(Fraction(c) for c in o[1]))
    if fld.p:
        return int(o)
    return Fraction(o)


def element_to_obj(fld: Field, el: dict) -> dict:
    return {str(k): scalar_to_obj(fld, v) for k, v in sorted(el.items())}


def element_from_obj(fld: Field, o: dict) -> dict:
    return {int(k): scalar_from_obj(fld, v) for k, v in o.items()}


def superalgebra_to_dict(g: Superalgebra) -> dict:
    fld = g.field
    out = {
        "field": {"p": fld.p, "parametric": fld.spec.parametric},
        "labels": g.labels,
        "parities": g.parities,
        "weights": [list(w) if w is not None else None for w in g.weights]
        if g.weights is not None else None,
        "brackets": {f"{i},{j}": element_to_obj(fld, v)
                     for (i, j), v in sorted(g.brackets.items())},
    }
    if fld.p == 2:
        out["squares"] = {str(i): element_to_obj(fld, v)
                          for i, v in sorted((g.squares or {}).items())}
    if g.chevalley is not None:
        out["chevalley"] = {k: [element_to_obj(fld, e) for e in v]
                            for k, v in sorted(g.chevalley.items())}
    return out


def superalgebra_from_dict(o: dict) -> Superalgebra:
    fld = field_for(o["field"]["p"], o["field"]["parametric"])
    brackets = {}
    for key, v in o["brackets"].items():
        i, j = key.split(",")
        brackets[(int(i), int(j))] = element_from_obj(fld, v)
    squares = None
    if fld.p == 2:
        squares = {int(i): element_from_obj(fld, v)
                   for i, v in o.get("squares", {}).items()}
    weights = None
    if o.get("weights") is not None:
        weights = [tuple(w) if w is not None else None for w in o["weights"]]
    chev = None
    if o.get("chevalley") is not None:
        chev = {k: [element_from_obj(fld, e) for e in v]
                for k, v in o["chevalley"].items()}
    return Superalgebra(fld, o["labels"], o["parities"], brackets, squares,
                        weights, chevalley=chev)


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def spec_to_dict(spec: CartanSpec) -> dict:
    return {
        "key": spec.key,
        "p": spec.p,
        "entries": [[list(e) if isinstance(e, tuple) else e for e in row]
                    for row in spec.entries],
        "parities": spec.parities,
        "expected_sdim": spec.expected_sdim,
        "source_row": spec.source_row,
    }


def spec_from_dict(o: dict) -> CartanSpec:
    entries = [[tuple(e) if isinstance(e, list) else e for e in row]
               for row in o["entries"]]
    return CartanSpec(key=o["key"], p=o["p"], entries=entries,
                      parities=o["parities"], expected_sdim=o.get("expected_sdim"),
                      source_row=o.get("source_row"))


def spec_digest(spec: CartanSpec, degree_cap: int) -> str:
    payload = canonical_json({"spec": spec_to_dict(spec), "cap": degree_cap})
    return hashlib.sha256(payload.encode()).hexdigest()[:24]


def _node_to_obj(nd: _Node):
    return [list(nd.word), list(nd.root), nd.parity, nd.degree]


def _node_from_obj(o) -> _Node:
    return _Node(word=tuple(o[0]), root=tuple(o[1]), parity=o[2], degree=o[3])


def build_result_to_dict(b: BuildResult) -> dict:
    return {
        "spec": spec_to_dict(b.spec),
        "algebra": superalgebra_to_dict(b.algebra),
        "n": b.n,
        "n_grading": b.n_grading,
        "pos_roots": [[list(r), p] for r, p in b.pos_roots],
        "chevalley": b.chevalley,
        "profile": b.profile,
        "pos_nodes": [_node_to_obj(nd) for nd in b.pos_side.nodes],
        "neg_nodes": [_node_to_obj(nd) for nd in b.neg_side.nodes],
        "pos_order": b.pos_order,
        "neg_order": b.neg_order,
    }


class _LoadedSide:
    """Read-only stand-in for _Side after a cache reload: only node words."""

    def __init__(self, nodes):
        self.nodes = nodes


def build_result_from_dict(o: dict) -> BuildResult:
    spec = spec_from_dict(o["spec"])
    alg = superalgebra_from_dict(o["algebra"])
    return BuildResult(
        spec=spec, field=alg.field, algebra=alg, n=o["n"], n_grading=o["n_grading"],
        pos_roots=[(tuple(r), p) for r, p in o["pos_roots"]],
        chevalley={k: list(v) for k, v in o["chevalley"].items()},
        profile=o["profile"],
        pos_side=_LoadedSide([_node_from_obj(x) for x in o["pos_nodes"]]),
        neg_side=_LoadedSide([_node_from_obj(x) for x in o["neg_nodes"]]),
        pos_order=o["pos_order"], neg_order=o["neg_order"])


def serialize_build(b: BuildResult) -> str:
    return canonical_json(build_result_to_dict(b))


def cache_path(cache_dir: str, spec: CartanSpec, degree_cap: int) -> str:
    return os.path.join(cache_dir, f"{spec_digest(spec, degree_cap)}.json")


def cache_load(cache_dir: Optional[str], spec: CartanSpec,
               degree_cap: int) -> Optional[BuildResult]:
    if not cache_dir:
        return None
    path = cache_path(cache_dir, spec, degree_cap)
    if not os.path.exists(path):
        return None
    with open(path) as fh:
        return build_result_from_dict(json.load(fh))


def cache_store(cache_dir: Optional[str], spec: CartanSpec, degree_cap: int,
                b: BuildResult) -> Optional[str]:
    if not cache_dir:
        return None
    os.makedirs(cache_dir, exist_ok=True)
    path = cache_path(cache_dir, spec, degree_cap)
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        fh.write(serialize_build(b))
    os.replace(tmp, path)
    return path
