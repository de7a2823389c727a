"""JSON (de)serialization for all structures, with exact rationals.

Rationals travel as "p/q" strings (plain integers also accepted on input),
so nothing is lost in transit.  Atom labels may be nested tuples (push-out
tops are labelled by fiber pairs); they are encoded as nested lists and
rebuilt as tuples on load.  All dumping goes through `dumps`, which is
canonical (sorted keys, fixed separators), so identical data always
produces identical bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import DomainError
from .boolalg import (DualSurjection, FiniteBoolAlg, PushoutSquare,
                      Subalgebra)
from .banach import BanachPushout, LinearEmbedding, PolytopeSpace
from .tower import (BANACH, BOOLEAN, BanachStepSpec, BoolStepSpec, Tower,
                    build_tower)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"),
                      ensure_ascii=True)


def dumps_pretty(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True)


# ---------------------------------------------------------------------------
# rationals and atom labels


def frac_to_str(x: Fraction) -> str:
    x = Fraction(x)
    return "%d/%d" % (x.numerator, x.denominator)


def frac_from_json(v) -> Fraction:
    if isinstance(v, bool):
        raise DomainError("not a rational: %r" % (v,))
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v)
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError("bad rational %r" % (v,)) from exc
    raise DomainError("not a rational: %r" % (v,))


def vector_to_json(v):
    return [frac_to_str(x) for x in v]


def vector_from_json(v):
    return tuple(frac_from_json(x) for x in v)


def matrix_to_json(m):
    return [vector_to_json(row) for row in m]


def matrix_from_json(m):
    return tuple(vector_from_json(row) for row in m)


def atom_to_json(a):
    if isinstance(a, tuple):
        return [atom_to_json(x) for x in a]
    return a


def atom_from_json(a):
    if isinstance(a, list):
        return tuple(atom_from_json(x) for x in a)
    return a


def _atom_key(a) -> str:
    """Stable string encoding of an atom label, for use as a JSON key."""
    return json.dumps(atom_to_json(a), sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------------------
# boolean structures


def algebra_to_json(algebra: FiniteBoolAlg):
    return {"atoms": [atom_to_json(a) for a in algebra.atoms]}


def algebra_from_json(doc) -> FiniteBoolAlg:
    return FiniteBoolAlg(tuple(atom_from_json(a) for a in doc["atoms"]))


def subalgebra_to_json(sub: Subalgebra):
    doc = algebra_to_json(sub.parent)
    doc["blocks"] = [sorted((atom_to_json(a) for a in block), key=_atom_key)
                     for block in sub.blocks]
    return doc


def subalgebra_from_json(doc) -> Subalgebra:
    parent = algebra_from_json(doc)
    blocks = [frozenset(atom_from_json(a) for a in block)
              for block in doc["blocks"]]
    return Subalgebra.from_blocks(parent, blocks)


def surjection_to_json(d: DualSurjection):
    return {
        "source": algebra_to_json(d.source_alg),
        "target": algebra_to_json(d.target_alg),
        "atom_map": {_atom_key(t): atom_to_json(s) for t, s in d.atom_map},
    }


def surjection_from_json(doc) -> DualSurjection:
    source = algebra_from_json(doc["source"])
    target = algebra_from_json(doc["target"])
    mapping = {atom_from_json(json.loads(k)): atom_from_json(v)
               for k, v in doc["atom_map"].items()}
    return DualSurjection.from_mapping(source, target, mapping)


def square_to_json(sq: PushoutSquare):
    doc = {
        "r_to_s": surjection_to_json(sq.r_to_s),
        "r_to_a": surjection_to_json(sq.r_to_a),
        "s_to_b": surjection_to_json(sq.s_to_b),
        "a_to_b": surjection_to_json(sq.a_to_b),
        "top_atoms": len(sq.top.atoms),
        "commutes": sq.commutes(),
        "verdict": verdict_to_json(sq.verdict),
    }
    return doc


def verdict_to_json(v):
    doc = {"ok": v.ok, "generation_ok": v.generation_ok,
           "interpolation_ok": v.interpolation_ok}
    if v.violation is not None:
        a, s = v.violation
        doc["violation"] = {
            "a": sorted((atom_to_json(x) for x in a.atom_set), key=_atom_key),
            "s": sorted((atom_to_json(x) for x in s.atom_set), key=_atom_key),
        }
    return doc


def interpolant_table_to_json(table):
    out = []

    def enc(atom_set):
        return sorted((atom_to_json(x) for x in atom_set), key=_atom_key)

    for (a, s), r in table.items():
        out.append({"a": enc(a), "s": enc(s), "r": enc(r)})
    out.sort(key=lambda d: (dumps(d["a"]), dumps(d["s"])))
    return out


# ---------------------------------------------------------------------------
# polytopal structures


def space_to_json(space: PolytopeSpace):
    return {"dim": space.dim,
            "dual_gens": [vector_to_json(g) for g in space.dual_gens]}


def space_from_json(doc) -> PolytopeSpace:
    return PolytopeSpace.create(
        int(doc["dim"]), [vector_from_json(g) for g in doc["dual_gens"]])


def embedding_to_json(emb: LinearEmbedding):
    return {"source": space_to_json(emb.source),
            "target": space_to_json(emb.target),
            "matrix": matrix_to_json(emb.matrix)}


def embedding_from_json(doc) -> LinearEmbedding:
    return LinearEmbedding(space_from_json(doc["source"]),
                           space_from_json(doc["target"]),
                           matrix_from_json(doc["matrix"]))


def banach_pushout_to_json(po: BanachPushout):
    return {
        "r_to_s": embedding_to_json(po.r_to_s),
        "r_to_x": embedding_to_json(po.r_to_x),
        "s_to_y": embedding_to_json(po.s_to_y),
        "x_to_y": embedding_to_json(po.x_to_y),
        "space": space_to_json(po.space),
        "quotient_rows": matrix_to_json(po.quotient_rows),
    }


# ---------------------------------------------------------------------------
# towers


def step_spec_to_json(kind, spec):
    if kind == BOOLEAN:
        blocks = None
        if spec.r_blocks is not None:
            blocks = [sorted((atom_to_json(a) for a in block), key=_atom_key)
                      for block in spec.r_blocks]
        return {"r_blocks": blocks, "fibers": list(spec.fibers)}
    return {"r_basis": [vector_to_json(b) for b in spec.r_basis],
            "s_space": space_to_json(spec.s_space),
            "r_matrix": matrix_to_json(spec.r_matrix)}


def step_spec_from_json(kind, doc):
    if kind == BOOLEAN:
        blocks = doc["r_blocks"]
        if blocks is not None:
            blocks = tuple(frozenset(atom_from_json(a) for a in block)
                           for block in blocks)
        return BoolStepSpec(blocks, tuple(doc["fibers"]))
    return BanachStepSpec(
        tuple(vector_from_json(b) for b in doc["r_basis"]),
        space_from_json(doc["s_space"]),
        matrix_from_json(doc["r_matrix"]))


def tower_spec_to_json(kind, specs):
    return {"kind": kind, "steps": [step_spec_to_json(kind, s)
                                    for s in specs]}


def tower_from_json(doc) -> Tower:
    kind = doc["kind"]
    if kind not in (BOOLEAN, BANACH):
        raise DomainError("unknown tower kind %r" % (kind,))
    specs = [step_spec_from_json(kind, s) for s in doc["steps"]]
    return build_tower(kind, specs)


def tower_summary_to_json(tower: Tower):
    doc = {"kind": tower.kind, "length": len(tower.steps)}
    if tower.kind == BOOLEAN:
        doc["stage_atoms"] = [len(s.atoms) for s in tower.stages]
    else:
        doc["stage_dims"] = [s.dim for s in tower.stages]
    return doc
