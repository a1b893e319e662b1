"""JSON input schema for global quotient orbifolds.

Normative layout (rationals may be given as "p/q" strings or ints;
roots of unity as exponent fractions of exp(2*pi*i*.)):

    {"dim": N,
     "group": {"order": n, "table": [[...]]}
              or {"permutations": [[...], ...]},
     "classes": [
       {"rep": <element id>,
        "components": [
          {"name": "...", "mg": m, "exponents": [m_1, ..., m_N],
           "cohomology": {"characters": {"<elem>": [trace per degree]}}
                         or {"invariant_dims": [d_0, d_1, ...]},
           "localization": {"<elem>": [
               {"point": "...", "lines": [
                   {"lambda": "a/b", "zeta": "c/d", "w": int,
                    "tangent": bool}, ...]}, ...]}  (optional)
          }, ...]}, ...]}

Every validation failure carries the JSON path of the offending entry.
"""

from __future__ import annotations

import json
import warnings

from .fock import TwistData
from .genus import FixedPointDatum, LineDatum
from .orbifold import GroupData, GroupError, OrbifoldError, OrbifoldInput, SectorComponent
from .scalars import rat


class InputError(Exception):
    pass


def _fail(path: str, msg: str):
    raise InputError(f"{path}: {msg}")


def _expect(cond, path, msg):
    if not cond:
        _fail(path, msg)


def _rat(value, path):
    try:
        return rat(value) if isinstance(value, str) else rat(int(value))
    except (ValueError, TypeError, ZeroDivisionError):
        _fail(path, f"expected a rational ('p/q' or int), got {value!r}")


def _parse_group(data, path) -> GroupData:
    _expect(isinstance(data, dict), path, "group must be an object")
    labels = data.get("labels")
    try:
        if "table" in data:
            table = data["table"]
            _expect(isinstance(table, list), f"{path}.table", "must be a list")
            if "order" in data:
                _expect(len(table) == int(data["order"]), f"{path}.table",
                        f"table size {len(table)} != declared order {data['order']}")
            return GroupData(table, labels)
        if "permutations" in data:
            return GroupData.from_permutations(data["permutations"])
    except GroupError as e:
        _fail(path, f"not a group: {e}")
    _fail(path, "need either 'table' or 'permutations'")


def _parse_lines(data, path) -> tuple:
    _expect(isinstance(data, list), path, "lines must be a list")
    lines = []
    for i, l in enumerate(data):
        p = f"{path}[{i}]"
        _expect(isinstance(l, dict), p, "line must be an object")
        for key in ("lambda", "zeta"):
            _expect(key in l, p, f"missing '{key}'")
        try:
            lines.append(LineDatum(_rat(l["lambda"], f"{p}.lambda"),
                                   _rat(l["zeta"], f"{p}.zeta"),
                                   int(l.get("w", 0)),
                                   bool(l.get("tangent", False))))
        except Exception as e:
            if isinstance(e, InputError):
                raise
            _fail(p, str(e))
    return tuple(lines)


def _parse_localization(data, path, group) -> dict:
    _expect(isinstance(data, dict), path, "localization must map element ids")
    out = {}
    for key, pts in data.items():
        p = f"{path}[{key}]"
        try:
            h = int(key)
        except ValueError:
            _fail(p, "element id must be an integer")
        _expect(0 <= h < group.order, p, f"element {h} outside the group")
        _expect(isinstance(pts, list), p, "expected a list of fixed points")
        parsed = []
        for j, pt in enumerate(pts):
            pp = f"{p}[{j}]"
            _expect(isinstance(pt, dict) and "lines" in pt, pp,
                    "fixed point needs 'lines'")
            parsed.append(FixedPointDatum(str(pt.get("point", j)),
                                          _parse_lines(pt["lines"], f"{pp}.lines")))
        out[h] = tuple(parsed)
    return out


def _parse_component(data, path, dim, rep, group) -> SectorComponent:
    _expect(isinstance(data, dict), path, "component must be an object")
    for key in ("name", "mg", "exponents", "cohomology"):
        _expect(key in data, path, f"missing '{key}'")
    name = str(data["name"])
    try:
        twist = TwistData(dim, int(data["mg"]),
                          tuple(int(x) for x in data["exponents"]))
    except (ValueError, TypeError) as e:
        _fail(f"{path}.exponents", str(e))
    coh = data["cohomology"]
    _expect(isinstance(coh, dict), f"{path}.cohomology", "must be an object")
    chars = inv = None
    if "characters" in coh:
        chars = {}
        for key, traces in coh["characters"].items():
            p = f"{path}.cohomology.characters[{key}]"
            try:
                h = int(key)
            except ValueError:
                _fail(p, "element id must be an integer")
            _expect(0 <= h < group.order, p, f"element {h} outside the group")
            _expect(isinstance(traces, list), p, "traces must be a list")
            chars[h] = tuple(_rat(t, f"{p}[{k}]") for k, t in enumerate(traces))
    elif "invariant_dims" in coh:
        inv = tuple(int(d) for d in coh["invariant_dims"])
        _expect(all(d >= 0 for d in inv), f"{path}.cohomology.invariant_dims",
                "dimensions must be >= 0")
    else:
        _fail(f"{path}.cohomology",
              "need exactly one of 'characters' or 'invariant_dims'")
    loc = None
    if "localization" in data:
        loc = _parse_localization(data["localization"],
                                  f"{path}.localization", group)
    try:
        return SectorComponent(name, rep, twist, characters=chars,
                               invariant_dims=inv, localization=loc)
    except OrbifoldError as e:
        _fail(path, str(e))


def parse_orbifold_input(source) -> OrbifoldInput:
    """Parse and validate a file path, file object, JSON string, or dict."""
    if isinstance(source, dict):
        data = source
    elif hasattr(source, "read"):
        data = json.load(source)
    else:
        text = str(source)
        if text.lstrip().startswith("{"):
            data = json.loads(text)
        else:
            with open(text) as fh:
                data = json.load(fh)
    _expect(isinstance(data, dict), "$", "input must be a JSON object")
    for key in ("dim", "group", "classes"):
        _expect(key in data, "$", f"missing '{key}'")
    dim = int(data["dim"])
    _expect(dim >= 0, "$.dim", "dimension must be >= 0")
    group = _parse_group(data["group"], "$.group")
    _expect(isinstance(data["classes"], list), "$.classes", "must be a list")
    classes = []
    for i, cls in enumerate(data["classes"]):
        path = f"$.classes[{i}]"
        _expect(isinstance(cls, dict) and "rep" in cls, path, "missing 'rep'")
        rep = int(cls["rep"])
        _expect(0 <= rep < group.order, f"{path}.rep",
                f"element {rep} outside the group")
        comps = cls.get("components", [])
        parsed = tuple(_parse_component(c, f"{path}.components[{j}]", dim,
                                        rep, group)
                       for j, c in enumerate(comps))
        classes.append((rep, parsed))
    try:
        return OrbifoldInput(group, dim, tuple(classes))
    except OrbifoldError as e:
        raise InputError(f"$: {e}") from None
