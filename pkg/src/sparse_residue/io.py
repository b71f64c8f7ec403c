"""JSON problem files.

A problem file looks like::

    {
      "vars": ["x", "y"],
      "params": ["a1", "a2"],
      "system": [{"terms": [{"exp": [1, 0], "coeff": "a1"}, ...]}, ...],
      "g": {"terms": [{"exp": [5, 4], "coeff": "1"}]},
      "delta0": {"vertices": [[-1, 0], [0, -1], [2, 1]]},
      "roots": {"roots": [[[1.0, 0.0], [2.0, 0.0]]], "source": "user-supplied"},
      "assignment": {"a1": "1", "a2": "3/2"},
      "phi": ["1", [0.5, 0.0]]
    }

Only ``vars``, ``system`` are required.  Coefficients are strings in the
restricted grammar (or ``{"num", "den"}`` objects); root coordinates and
``phi`` values are exact rational strings or ``[re, im]`` pairs.
:func:`emit_problem` writes the canonical form, which parses back to itself
byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Tuple

from .errors import GrammarError, ResidueError, SchemaError
from .exact import RatFunc
from .geometry import LatticePolytope, convex_hull
from .grammar import format_mpoly, format_rational, parse_ratfunc, parse_rational
from .laurent import LaurentPolynomial, SparseSystem
from .oracle import RootSet


@dataclass(frozen=True)
class ProblemFile:
    vars: Tuple[str, ...]
    params: Tuple[str, ...]
    system: Tuple[LaurentPolynomial, ...]
    g: Optional[LaurentPolynomial] = None
    delta0: Optional[LatticePolytope] = None
    roots: Optional[RootSet] = None
    assignment: Optional[Dict[str, Fraction]] = None
    phi: Optional[Tuple] = None
    _delta0_points: Optional[Tuple[Tuple[int, ...], ...]] = field(default=None, compare=False, repr=False)

    def sparse_system(self) -> SparseSystem:
        return SparseSystem(list(self.system))

    def numeric_system(self) -> SparseSystem:
        """The system with ``assignment`` substituted (unchanged if no params)."""
        from .laurent import substitute_params

        if not self.params:
            return self.sparse_system()
        if self.assignment is None:
            raise SchemaError("this command needs an 'assignment' for the parameters", "/assignment")
        return SparseSystem([substitute_params(f, self.assignment) for f in self.system])


def _ptr(*parts) -> str:
    return "".join("/" + str(p).replace("~", "~0").replace("/", "~1") for p in parts)


def _names(obj, path: str) -> Tuple[str, ...]:
    if not isinstance(obj, list) or not all(isinstance(s, str) and s.isidentifier() for s in obj):
        raise SchemaError("expected a list of identifier names", path)
    if len(set(obj)) != len(obj):
        raise SchemaError("names must be distinct", path)
    return tuple(obj)


def _int_vector(obj, n: Optional[int], path: str) -> Tuple[int, ...]:
    if not isinstance(obj, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in obj):
        raise SchemaError("expected a list of integers", path)
    if n is not None and len(obj) != n:
        raise SchemaError(f"expected {n} entries, got {len(obj)}", path)
    return tuple(obj)


def _coeff(obj, params, path):
    try:
        if not isinstance(obj, (str, dict, int)) or isinstance(obj, bool):
            raise SchemaError("coefficient must be a string or a {num, den} object", path)
        if isinstance(obj, int):
            obj = str(obj)
        value = parse_ratfunc(obj, params)
    except GrammarError as exc:
        exc.path = path
        raise
    except ResidueError as exc:
        raise SchemaError(f"coefficient: {exc}", path) from None
    if not params:
        return value.constant_value()
    return value


def _laurent(obj, n: int, params, path: str) -> LaurentPolynomial:
    if not isinstance(obj, dict) or not isinstance(obj.get("terms"), list):
        raise SchemaError("expected an object with a 'terms' list", path)
    terms: Dict[Tuple[int, ...], object] = {}
    for k, t in enumerate(obj["terms"]):
        tp = path + _ptr("terms", k)
        if not isinstance(t, dict) or set(t) != {"exp", "coeff"}:
            raise SchemaError("a term has exactly the keys 'exp' and 'coeff'", tp)
        e = _int_vector(t["exp"], n, tp + "/exp")
        if e in terms:
            raise SchemaError(f"repeated exponent {list(e)}", tp + "/exp")
        terms[e] = _coeff(t["coeff"], params, tp + "/coeff")
    return LaurentPolynomial(n, terms)


def _number(obj, path: str):
    if isinstance(obj, list):
        if len(obj) != 2 or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj):
            raise SchemaError("a complex number is a [re, im] pair", path)
        return complex(float(obj[0]), float(obj[1]))
    try:
        return parse_rational(obj)
    except (GrammarError, ResidueError, TypeError, AttributeError):
        raise SchemaError("expected a rational string or a [re, im] pair", path) from None


def parse_problem_obj(obj) -> ProblemFile:
    if not isinstance(obj, dict):
        raise SchemaError("problem must be a JSON object", "")
    known = {"vars", "params", "system", "g", "delta0", "roots", "assignment", "phi"}
    for key in obj:
        if key not in known:
            raise SchemaError(f"unknown key {key!r}", _ptr(key))
    if "vars" not in obj:
        raise SchemaError("missing required key 'vars'", "/vars")
    if "system" not in obj:
        raise SchemaError("missing required key 'system'", "/system")
    vars_ = _names(obj["vars"], "/vars")
    params = _names(obj.get("params", []), "/params")
    if set(vars_) & set(params):
        raise SchemaError("a name is both a variable and a parameter", "/params")
    n = len(vars_)
    if not isinstance(obj["system"], list) or len(obj["system"]) != n:
        raise SchemaError(f"system must list {n} polynomials (one per variable)", "/system")
    system = tuple(_laurent(f, n, params, _ptr("system", i)) for i, f in enumerate(obj["system"]))
    for i, f in enumerate(system):
        if not f.terms:
            raise SchemaError("polynomial has no terms", _ptr("system", i, "terms"))
    g = _laurent(obj["g"], n, params, "/g") if "g" in obj else None

    delta0 = None
    pts = None
    if "delta0" in obj:
        d = obj["delta0"]
        if not isinstance(d, dict) or not isinstance(d.get("vertices"), list) or not d["vertices"]:
            raise SchemaError("delta0 needs a non-empty 'vertices' list", "/delta0")
        pts = tuple(_int_vector(v, n, _ptr("delta0", "vertices", k)) for k, v in enumerate(d["vertices"]))
        delta0 = convex_hull(pts)

    roots = None
    if "roots" in obj:
        r = obj["roots"]
        if not isinstance(r, dict) or not isinstance(r.get("roots"), list):
            raise SchemaError("roots needs a 'roots' list", "/roots")
        pts_r = []
        for k, pt in enumerate(r["roots"]):
            rp = _ptr("roots", "roots", k)
            if not isinstance(pt, list) or len(pt) != n:
                raise SchemaError(f"a root has {n} coordinates", rp)
            pts_r.append(tuple(_number(x, f"{rp}/{j}") for j, x in enumerate(pt)))
        source = r.get("source", "user-supplied")
        if source not in ("user-supplied", "univariate-solver", "bivariate-solver"):
            raise SchemaError(f"unknown root source {source!r}", "/roots/source")
        roots = RootSet(tuple(pts_r), source)

    assignment = None
    if "assignment" in obj:
        a = obj["assignment"]
        if not isinstance(a, dict):
            raise SchemaError("assignment must be an object", "/assignment")
        assignment = {}
        for name, v in a.items():
            if name not in params:
                raise SchemaError(f"{name!r} is not a parameter", _ptr("assignment", name))
            value = _number(v, _ptr("assignment", name))
            if isinstance(value, complex):
                raise SchemaError("parameter values must be exact rationals", _ptr("assignment", name))
            assignment[name] = value
        missing = [p for p in params if p not in assignment]
        if missing:
            raise SchemaError(f"assignment is missing {missing}", "/assignment")

    phi = None
    if "phi" in obj:
        if not isinstance(obj["phi"], list):
            raise SchemaError("phi must be a list of values", "/phi")
        phi = tuple(_number(v, _ptr("phi", k)) for k, v in enumerate(obj["phi"]))
        if roots is not None and len(phi) != len(roots):
            raise SchemaError("phi needs one value per root", "/phi")

    return ProblemFile(vars_, params, system, g, delta0, roots, assignment, phi, pts)


def parse_problem(text: str) -> ProblemFile:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}", "") from None
    return parse_problem_obj(obj)


def load_problem(path) -> ProblemFile:
    with open(path, encoding="utf-8") as fh:
        return parse_problem(fh.read())


# ---------------------------------------------------------------------------
# emit
# ---------------------------------------------------------------------------


def coeff_json(c):
    if isinstance(c, RatFunc):
        if c.den == 1:
            return format_mpoly(c.num)
        return {"num": format_mpoly(c.num), "den": format_mpoly(c.den)}
    if isinstance(c, Fraction):
        return format_rational(c)
    if isinstance(c, complex):
        return [c.real, c.imag]
    return format_rational(Fraction(c))


def laurent_json(f: LaurentPolynomial) -> dict:
    return {"terms": [{"exp": list(e), "coeff": coeff_json(c)} for e, c in f.sorted_terms()]}


def number_json(x):
    if isinstance(x, complex):
        return [x.real, x.imag]
    return format_rational(Fraction(x))


def problem_to_obj(p: ProblemFile) -> dict:
    out = {"vars": list(p.vars), "params": list(p.params), "system": [laurent_json(f) for f in p.system]}
    if p.g is not None:
        out["g"] = laurent_json(p.g)
    if p.delta0 is not None:
        pts = p._delta0_points or p.delta0.vertices
        out["delta0"] = {"vertices": [list(v) for v in pts]}
    if p.roots is not None:
        out["roots"] = {"roots": [[number_json(x) for x in r] for r in p.roots.roots], "source": p.roots.source}
    if p.assignment is not None:
        out["assignment"] = {k: format_rational(p.assignment[k]) for k in p.params}
    if p.phi is not None:
        out["phi"] = [number_json(v) for v in p.phi]
    return out


def _is_leaf(x) -> bool:
    if isinstance(x, list):
        return all(not isinstance(v, (list, dict)) for v in x)
    if isinstance(x, dict):
        return all(not isinstance(v, (list, dict)) or (isinstance(v, list) and _is_leaf(v)) for v in x.values())
    return True


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON with one container per line, but flat lists and term objects inline."""
    if _is_leaf(obj) or (isinstance(obj, list) and all(isinstance(v, list) and _is_leaf(v) for v in obj)
                         and len(obj) <= 8):
        return json.dumps(obj, ensure_ascii=False)
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, dict):
        items = [f"{pad}{json.dumps(k)}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    items = [pad + dumps(v, indent, _level + 1) for v in obj]
    return "[\n" + ",\n".join(items) + "\n" + end + "]"


def emit_problem(p: ProblemFile) -> str:
    return dumps(problem_to_obj(p)) + "\n"
