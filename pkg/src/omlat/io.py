"""JSON encodings for lattices, algebras, homs, glued lattices and models.

Every ``*_to_json`` returns plain JSON-ready data and the matching
``*_from_json`` rebuilds an equal value, validating on the way in.
"""

import json

from .boolean import BooleanAlgebra, LatticeHom
from .contextuality import EmpiricalModel, Scenario
from .errors import BadSpec, BlockMismatch
from .gluing import BlockedLattice, algebra_of, glue_n
from .lattice import FiniteOrthoLattice, build_lattice


def dumps(data):
    """Canonical text form: sorted keys, two-space indent, trailing newline."""
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def loads(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise BadSpec(f"invalid JSON: {exc}") from None


def _require(d, *keys):
    if not isinstance(d, dict):
        raise BadSpec("expected a JSON object")
    missing = [k for k in keys if k not in d]
    if missing:
        raise BadSpec(f"missing keys: {missing}")


def lattice_to_json(L):
    lat = L.lattice if isinstance(L, FiniteOrthoLattice) else L
    out = {
        "n": lat.n,
        "bottom": lat.bottom,
        "top": lat.top,
        "leq": lat.leq.tolist(),
    }
    if isinstance(L, FiniteOrthoLattice):
        out["ortho"] = list(L.ortho)
    if lat.labels is not None:
        out["labels"] = list(lat.labels)
    return out


def lattice_from_json(d):
    """A FiniteLattice, or a FiniteOrthoLattice when ``ortho`` is present."""
    _require(d, "n", "bottom", "top", "leq")
    try:
        lat = build_lattice(int(d["n"]), d["leq"], int(d["bottom"]), int(d["top"]), d.get("labels"))
    except (TypeError, ValueError) as exc:
        raise BadSpec(f"malformed lattice document: {exc}") from None
    if d.get("ortho") is not None:
        return FiniteOrthoLattice(lat, tuple(int(x) for x in d["ortho"]))
    return lat


def boolean_to_json(B):
    out = {"kind": "boolean", "atoms": B.atoms}
    if B.atom_labels is not None:
        out["labels"] = list(B.atom_labels)
    return out


def boolean_from_json(d):
    _require(d, "kind", "atoms")
    if d["kind"] != "boolean":
        raise BadSpec(f"expected kind 'boolean', got {d['kind']!r}")
    labels = d.get("labels")
    return BooleanAlgebra(int(d["atoms"]), None if labels is None else tuple(labels))


def _side_to_json(L):
    try:
        return boolean_to_json(algebra_of(L))
    except BlockMismatch:
        return lattice_to_json(L)


def _side_from_json(d):
    if isinstance(d, dict) and d.get("kind") == "boolean":
        return boolean_from_json(d).lattice
    side = lattice_from_json(d)
    if not isinstance(side, FiniteOrthoLattice):
        raise BadSpec("hom endpoints must carry an orthocomplement")
    return side


def hom_to_json(h):
    return {"source": _side_to_json(h.source), "target": _side_to_json(h.target), "map": list(h.map)}


def hom_from_json(d):
    _require(d, "source", "target", "map")
    return LatticeHom(_side_from_json(d["source"]), _side_from_json(d["target"]), tuple(d["map"]))


def blocked_to_json(L):
    out = lattice_to_json(L.carrier)
    out["blocks"] = [list(b) for b in L.blocks]
    if getattr(L, "provenance", None):
        out["provenance"] = [boolean_to_json(B) for B in L.provenance]
    return out


def blocked_from_json(d):
    """A GluedLattice when provenance is given (checked against a fresh
    glue of the listed algebras), otherwise a BlockedLattice."""
    _require(d, "blocks", "ortho")
    carrier = lattice_from_json(d)
    blocks = tuple(tuple(int(x) for x in b) for b in d["blocks"])
    if "provenance" not in d:
        return BlockedLattice(carrier, blocks)
    glued = glue_n([boolean_from_json(p) for p in d["provenance"]])
    if glued.carrier != carrier or glued.blocks != blocks:
        raise BadSpec("glued lattice document disagrees with its provenance")
    return glued


def model_to_json(M):
    sc = M.scenario
    return {
        "name": M.name,
        "measurements": list(sc.measurements),
        "outcomes": {m: list(o) for m, o in zip(sc.measurements, sc.outcomes)},
        "cover": [list(c) for c in sc.cover],
        "supports": {str(i): [list(a) for a in M.ordered_support(i)] for i in range(len(sc.cover))},
    }


def model_from_json(d):
    _require(d, "measurements", "outcomes", "cover", "supports")
    ms = tuple(d["measurements"])
    try:
        outcomes = tuple(tuple(d["outcomes"][m]) for m in ms)
        supports = tuple(
            [tuple(a) for a in d["supports"][str(i)]] for i in range(len(d["cover"]))
        )
    except (KeyError, TypeError) as exc:
        raise BadSpec(f"malformed model document: missing {exc}") from None
    sc = Scenario(ms, outcomes, tuple(tuple(c) for c in d["cover"]))
    return EmpiricalModel(sc, supports, d.get("name", ""))
