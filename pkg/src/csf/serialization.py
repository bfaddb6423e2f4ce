"""JSON encoding and decoding for graphs and algebra elements.

Vertices are 1-indexed in every JSON form.  Rational coefficients are
written as separate numerator/denominator strings so exact values
survive a round trip through languages whose numbers are floats.

Graph JSON, one of:

    {"n": 4, "edges": [[1, 2], [2, 3], [3, 4]]}
    {"unit_interval": {"m": [3, 3, 4, 4]}}   (or {"w": [...]})
    {"family": {"name": "path", "params": {"d": 4}}}

Element JSON:

    {"degree": 3, "basis": "e", "terms": [
        {"lambda": [2], "b": 1, "num": "1", "den": "2"}, ...]}

Marked-key elements use {"alpha": [...], "marked": 0} in place of
lambda/b, and plain symmetric functions drop the "b" field.
"""

from fractions import Fraction

from .graphs import LabelledGraph, family, from_unit_interval
from .sym import SymElement
from .ubcqsym import UBCQSymElement
from .ubcsym import UBCSymElement

GRAPH_FORMS = ("edges", "unit_interval", "family")
ELEMENT_KINDS = ("ubcsym", "sym", "ubcqsym")


def graph_to_json(g: LabelledGraph) -> dict:
    return {"n": g.n, "edges": [[i, j] for i, j in g.edges]}


def _require(condition, message):
    if not condition:
        raise ValueError(message)


def _as_int(value, what):
    _require(isinstance(value, int) and not isinstance(value, bool), f"{what} must be an integer, got {value!r}")
    return value


def graph_from_json(data) -> LabelledGraph:
    """Parse any of the three graph JSON forms."""
    _require(isinstance(data, dict), f"graph JSON must be an object, got {type(data).__name__}")
    forms = [key for key in GRAPH_FORMS if key in data or (key == "edges" and "n" in data)]
    _require(len(set(forms)) == 1, f"graph JSON needs exactly one of {GRAPH_FORMS}, got keys {sorted(data)}")

    if "family" in data:
        entry = data["family"]
        _require(isinstance(entry, dict), "family form must be an object")
        _require("name" in entry, 'family form needs a "name"')
        params = entry.get("params", {})
        _require(isinstance(params, dict), "family params must be an object")
        extra = set(entry) - {"name", "params"}
        _require(not extra, f"unexpected family fields {sorted(extra)}")
        for key, value in params.items():
            _require(
                isinstance(value, str) or (isinstance(value, int) and not isinstance(value, bool)),
                f"family param {key!r} must be an integer or string, got {value!r}",
            )
        return family(entry["name"], **params)

    if "unit_interval" in data:
        entry = data["unit_interval"]
        _require(isinstance(entry, dict), "unit_interval form must be an object")
        _require(len(entry) == 1 and set(entry) <= {"m", "w"}, 'unit_interval form needs exactly one of "m" or "w"')
        (which, seq), = entry.items()
        _require(isinstance(seq, list), f"unit_interval {which!r} must be a list")
        seq = [_as_int(v, f"{which}-sequence entry") for v in seq]
        return from_unit_interval(**{which: seq})

    _require("n" in data and "edges" in data, 'edge-list form needs both "n" and "edges"')
    extra = set(data) - {"n", "edges"}
    _require(not extra, f"unexpected graph fields {sorted(extra)}")
    n = _as_int(data["n"], '"n"')
    edges = data["edges"]
    _require(isinstance(edges, list), '"edges" must be a list')
    pairs = []
    for e in edges:
        _require(isinstance(e, (list, tuple)) and len(e) == 2, f"edge {e!r} must be a pair")
        pairs.append((_as_int(e[0], "edge endpoint"), _as_int(e[1], "edge endpoint")))
    return LabelledGraph(n, pairs)


def _coeff_fields(c: Fraction) -> dict:
    return {"num": str(c.numerator), "den": str(c.denominator)}


def _coeff_from(obj) -> Fraction:
    _require(isinstance(obj, dict), "term must be an object")
    _require("num" in obj and "den" in obj, 'term needs "num" and "den"')
    try:
        num, den = int(obj["num"]), int(obj["den"])
    except (TypeError, ValueError):
        raise ValueError(f"bad rational {obj.get('num')!r}/{obj.get('den')!r}") from None
    _require(den > 0, f"denominator must be positive, got {den}")
    return Fraction(num, den)


def element_to_json(x) -> dict:
    """Serialize a UBCSym, Sym, or marked-key element."""
    out = {"degree": x.degree, "basis": x.basis, "terms": []}
    if isinstance(x, UBCSymElement):
        for (lam, b), c in x.sorted_terms():
            out["terms"].append({"lambda": list(lam), "b": b, **_coeff_fields(c)})
    elif isinstance(x, SymElement):
        for lam, c in sorted(x.terms.items()):
            out["terms"].append({"lambda": list(lam), **_coeff_fields(c)})
    elif isinstance(x, UBCQSymElement):
        for key, c in x.sorted_terms():
            out["terms"].append({"alpha": list(key.parts), "marked": key.marked, **_coeff_fields(c)})
    else:
        raise ValueError(f"cannot serialize {type(x).__name__}")
    return out


def element_from_json(data, kind: str = "ubcsym"):
    """Parse element JSON back to the requested element class."""
    _require(kind in ELEMENT_KINDS, f"unknown element kind {kind!r}; pick one of {ELEMENT_KINDS}")
    _require(isinstance(data, dict), f"element JSON must be an object, got {type(data).__name__}")
    _require("degree" in data and "basis" in data and "terms" in data, 'element JSON needs "degree", "basis", "terms"')
    degree = _as_int(data["degree"], '"degree"')
    basis = data["basis"]
    terms = data["terms"]
    _require(isinstance(terms, list), '"terms" must be a list')

    if kind == "ubcqsym":
        parsed = {}
        for term in terms:
            c = _coeff_from(term)
            _require("alpha" in term and "marked" in term, 'marked-key term needs "alpha" and "marked"')
            alpha = tuple(_as_int(v, "alpha part") for v in term["alpha"])
            key = (alpha, _as_int(term["marked"], '"marked"'))
            parsed[key] = parsed.get(key, Fraction(0)) + c
        return UBCQSymElement(degree, basis, parsed)

    parsed = {}
    for term in terms:
        c = _coeff_from(term)
        _require("lambda" in term, 'term needs a "lambda"')
        lam = tuple(_as_int(v, "lambda part") for v in term["lambda"])
        if kind == "ubcsym":
            key = (lam, _as_int(term.get("b"), '"b"'))
        else:
            _require("b" not in term, 'plain symmetric terms take no "b"')
            key = lam
        parsed[key] = parsed.get(key, Fraction(0)) + c
    cls = UBCSymElement if kind == "ubcsym" else SymElement
    return cls(degree, basis, parsed)
