"""JSON document format for multi-fans and multi-polytopes.

One JSON object per file:

    {
      "dim": 2,
      "rays": [[1, 0], [0, 1], [-1, -1]],
      "cones": [{"set": [1, 2], "w_plus": 1, "w_minus": 0}, ...],
      "extra_faces": [[4, 5]],          # optional
      "support": ["1", "1", "-3/2"]     # optional; presence => multi-polytope
    }

Labels are 1-based, matching the usual indexing of the rays.  Rationals
are reduced "p/q" strings.  Serialization is canonical (rays in file
order, cone sets ascending, cones sorted lexicographically), so a parsed
document re-serializes byte-identically.
"""

import json
from fractions import Fraction

from .fan import MultiFan
from .polytope import MultiPolytope


class FormatError(ValueError):
    """The document text is not a well-formed fan/polytope description."""


def _require(cond, message):
    if not cond:
        raise FormatError(message)


def _parse_rational(x):
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"bad rational {x!r}") from exc
    raise FormatError(f"rational expected, got {x!r}")


def parse(text):
    """Parse a document; returns a MultiFan, or a MultiPolytope when the
    `support` field is present.  Geometric validity is not checked here
    (see multifan.fan.validate)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from exc
    _require(isinstance(doc, dict), "top level must be a JSON object")
    _require("dim" in doc and "rays" in doc and "cones" in doc,
             "fields dim, rays, cones are required")
    dim = doc["dim"]
    _require(isinstance(dim, int) and dim >= 1, "dim must be a positive integer")
    rays = doc["rays"]
    _require(isinstance(rays, list) and rays, "rays must be a nonempty list")
    for r in rays:
        _require(isinstance(r, list) and len(r) == dim
                 and all(isinstance(x, int) for x in r),
                 f"ray {r!r} must be a list of {dim} integers")
    d = len(rays)
    cones = doc["cones"]
    _require(isinstance(cones, list) and cones, "cones must be a nonempty list")
    seen = set()
    cone_items = []
    for rec in cones:
        _require(isinstance(rec, dict) and "set" in rec, f"bad cone record {rec!r}")
        s = rec["set"]
        _require(isinstance(s, list) and all(isinstance(i, int) for i in s),
                 f"cone set {s!r} must be a list of integers")
        _require(all(1 <= i <= d for i in s), f"cone {s!r} references a missing ray")
        key = frozenset(s)
        _require(len(key) == len(s), f"cone {s!r} repeats a label")
        _require(key not in seen, f"cone {sorted(key)} listed twice")
        seen.add(key)
        wp = rec.get("w_plus", 1)
        wm = rec.get("w_minus", 0)
        _require(isinstance(wp, int) and isinstance(wm, int) and wp >= 0 and wm >= 0,
                 f"cone {s!r}: weights must be nonnegative integers")
        cone_items.append((key, wp, wm))
    extras = doc.get("extra_faces", [])
    _require(isinstance(extras, list), "extra_faces must be a list")
    for f in extras:
        _require(isinstance(f, list) and all(isinstance(i, int) and 1 <= i <= d for i in f),
                 f"bad extra face {f!r}")
    try:
        fan = MultiFan(dim, rays, cone_items, extra_faces=[frozenset(f) for f in extras])
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    if "support" not in doc:
        return fan
    support = doc["support"]
    _require(isinstance(support, list) and len(support) == d,
             f"support must list {d} rationals")
    return MultiPolytope(fan, [_parse_rational(x) for x in support])


def _fan_dict(fan):
    cones = []
    for I in sorted(fan.weights, key=sorted):
        wp, wm = fan.weights[I]
        cones.append({"set": sorted(I), "w_plus": wp, "w_minus": wm})
    doc = {"dim": fan.dim,
           "rays": [list(r) for r in fan.rays],
           "cones": cones}
    # faces not under any top cone (beyond the implicit singletons)
    loose = [f for f in fan.faces
             if len(f) >= 2 and not any(f <= I for I in fan.top)]
    maximal = [f for f in loose if not any(f < g for g in loose)]
    if maximal:
        doc["extra_faces"] = sorted((sorted(f) for f in maximal))
    return doc


def serialize(obj):
    """Canonical JSON text for a MultiFan or MultiPolytope."""
    if isinstance(obj, MultiPolytope):
        doc = _fan_dict(obj.fan)
        doc["support"] = [str(c) for c in obj.support]
    elif isinstance(obj, MultiFan):
        doc = _fan_dict(obj)
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    return json.dumps(doc, indent=2) + "\n"
