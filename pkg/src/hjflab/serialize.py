"""JSON encoding of series, forms and reports.

Rationals are strings ``"p/q"``, Gaussian rationals pairs ``["p/q", "r/s"]``,
class representatives ``"a,b"``.  Infinite precision is written ``"inf"``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .errors import DecompositionError, FormatError
from .gaussian import GaussRat, Rep
from .hermitian import (ComponentVector, HermitianExpansion, assemble, extract, min_norm_rep,
                        support_violations)
from .jacobi import JacobiExpansion
from .qseries import INF, QSeries

# -- scalars ------------------------------------------------------------------


def rat_str(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def prec_str(p) -> str:
    return "inf" if p == INF else rat_str(p)


def gauss_json(c: GaussRat) -> list[str]:
    return [rat_str(c.re), rat_str(c.im)]


def _where(path: str) -> str:
    return path or "<root>"


def parse_rat(v, path: str = "") -> Fraction:
    if isinstance(v, bool):
        raise FormatError(f"{_where(path)}: expected a rational, got {v!r}")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v)
        except (ValueError, ZeroDivisionError):
            pass
    raise FormatError(f"{_where(path)}: expected a rational string \"p/q\", got {v!r}")


def parse_prec(v, path: str = "prec"):
    if v == "inf":
        return INF
    return parse_rat(v, path)


def parse_gauss(v, path: str = "") -> GaussRat:
    if not isinstance(v, list) or len(v) != 2:
        raise FormatError(f"{_where(path)}: expected [re, im], got {v!r}")
    return GaussRat(parse_rat(v[0], path + "[0]"), parse_rat(v[1], path + "[1]"))


def _int(v, path: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise FormatError(f"{_where(path)}: expected an integer, got {v!r}")
    return v


def _field(d: dict, key: str, path: str = ""):
    if key not in d:
        raise FormatError(f"{_where(path)}: missing field {key!r}")
    return d[key]


def weight_json(w):
    if w is None:
        return None
    w = Fraction(w)
    return w.numerator if w.denominator == 1 else rat_str(w)


def _parse_weight(v, path="weight"):
    if v is None:
        return None
    if isinstance(v, int) and not isinstance(v, bool):
        return v
    w = parse_rat(v, path)
    return int(w) if w.denominator == 1 else w


# -- series and forms -------------------------------------------------------------


def qseries_to_json(f: QSeries, kind: bool = True) -> dict:
    out = {"kind": "qseries"} if kind else {}
    out.update({"den": f.den, "prec": prec_str(f.prec),
                "terms": [[n, gauss_json(c)] for n, c in sorted(f.coeffs.items())]})
    return out


def qseries_from_json(d: dict, path: str = "") -> QSeries:
    if not isinstance(d, dict):
        raise FormatError(f"{_where(path)}: expected an object")
    den = _int(_field(d, "den", path), path + ".den")
    if den < 1:
        raise FormatError(f"{path}.den: must be positive")
    prec = parse_prec(_field(d, "prec", path), path + ".prec")
    terms = _field(d, "terms", path)
    if not isinstance(terms, list):
        raise FormatError(f"{path}.terms: expected a list")
    coeffs = {}
    for i, t in enumerate(terms):
        p = f"{path}.terms[{i}]"
        if not isinstance(t, list) or len(t) != 2:
            raise FormatError(f"{p}: expected [n, [re, im]]")
        n = _int(t[0], p + "[0]")
        if n in coeffs:
            raise FormatError(f"{p}: duplicate exponent {n}")
        coeffs[n] = parse_gauss(t[1], p + "[1]")
    return QSeries(coeffs, den, prec)


def jacobi_to_json(phi: JacobiExpansion) -> dict:
    return {"kind": "jacobi", "weight": weight_json(phi.weight), "index": phi.index, "den": phi.den,
            "prec": prec_str(phi.prec),
            "terms": [[n, r, gauss_json(c)] for (n, r), c in sorted(phi.coeffs.items())]}


def jacobi_from_json(d: dict, path: str = "") -> JacobiExpansion:
    den = _int(_field(d, "den", path), path + ".den")
    index = _int(_field(d, "index", path), path + ".index")
    if den < 1 or index < 0:
        raise FormatError(f"{_where(path)}: den must be positive and index nonnegative")
    prec = parse_prec(_field(d, "prec", path), path + ".prec")
    terms = _field(d, "terms", path)
    if not isinstance(terms, list):
        raise FormatError(f"{path}.terms: expected a list")
    coeffs = {}
    for i, t in enumerate(terms):
        p = f"{path}.terms[{i}]"
        if not isinstance(t, list) or len(t) != 3:
            raise FormatError(f"{p}: expected [n, r, [re, im]]")
        key = (_int(t[0], p + "[0]"), _int(t[1], p + "[1]"))
        if key in coeffs:
            raise FormatError(f"{p}: duplicate term {key}")
        coeffs[key] = parse_gauss(t[2], p + "[2]")
    return JacobiExpansion(_parse_weight(d.get("weight")), index, coeffs, den, prec)


def components_to_json(cv: ComponentVector) -> dict:
    m = cv.index
    den = 4 * m
    for h in cv.comps.values():
        den = den * h.den // _gcd(den, h.den)
    comps = {}
    for s, h in sorted(cv.comps.items()):
        if h.is_zero():
            continue
        f = den // h.den
        comps[str(s)] = [[n * f, gauss_json(c)] for n, c in sorted(h.coeffs.items())]
    return {"kind": "hjf", "weight": weight_json(cv.weight), "index": m, "den": den,
            "prec": prec_str(cv.prec()), "components": comps}


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def hjf_to_json(phi: HermitianExpansion) -> dict:
    """Theta-component form when ``phi`` decomposes lawfully, raw terms otherwise."""
    try:
        cv = extract(phi)
    except DecompositionError:
        cv = None
    if cv is not None and support_violations(cv):
        cv = None
    if cv is not None:
        out = components_to_json(cv)
        out["prec"] = prec_str(phi.prec)
        return out
    return {"kind": "hjf", "weight": weight_json(phi.weight), "index": phi.index, "den": phi.den,
            "prec": prec_str(phi.prec),
            "terms": [[n, f"{a},{b}", gauss_json(c)] for (n, a, b), c in sorted(phi.coeffs.items())]}


def hjf_from_json(d: dict, path: str = "") -> HermitianExpansion:
    m = _int(_field(d, "index", path), path + ".index")
    if m < 1:
        raise FormatError(f"{path}.index: must be positive")
    den = _int(_field(d, "den", path), path + ".den")
    if den < 1:
        raise FormatError(f"{path}.den: must be positive")
    prec = parse_prec(_field(d, "prec", path), path + ".prec")
    weight = _parse_weight(d.get("weight"))
    if "components" in d:
        raw = d["components"]
        if not isinstance(raw, dict):
            raise FormatError(f"{path}.components: expected an object keyed by \"a,b\"")
        comps = {}
        for key, terms in raw.items():
            p = f"{path}.components[{key!r}]"
            try:
                s = Rep.parse(key)
            except ValueError:
                raise FormatError(f"{p}: class keys must look like \"a,b\"") from None
            if not (0 <= s.a < 2 * m and 0 <= s.b < 2 * m):
                raise FormatError(f"{p}: representative outside 0..{2 * m - 1}")
            if not isinstance(terms, list):
                raise FormatError(f"{p}: expected a list of [L, [re, im]]")
            coeffs = {}
            for i, t in enumerate(terms):
                q = f"{p}[{i}]"
                if not isinstance(t, list) or len(t) != 2:
                    raise FormatError(f"{q}: expected [L, [re, im]]")
                coeffs[_int(t[0], q + "[0]")] = parse_gauss(t[1], q + "[1]")
            shift = min_norm_rep(s, m).norm() / m
            comps[s] = QSeries(coeffs, den, prec - shift if prec != INF else INF)
        cv = ComponentVector(weight, m, comps)
        from .errors import SupportError
        try:
            return assemble(cv, prec)
        except SupportError as e:
            raise FormatError(f"{path}.components: {e}") from None
    terms = _field(d, "terms", path)
    coeffs = {}
    for i, t in enumerate(terms):
        p = f"{path}.terms[{i}]"
        if not isinstance(t, list) or len(t) != 3 or not isinstance(t[1], str):
            raise FormatError(f"{p}: expected [n, \"a,b\", [re, im]]")
        try:
            a, b = Rep.parse(t[1])
        except ValueError:
            raise FormatError(f"{p}[1]: expected \"a,b\"") from None
        coeffs[(_int(t[0], p + "[0]"), a, b)] = parse_gauss(t[2], p + "[2]")
    return HermitianExpansion(weight, m, coeffs, den, prec)


def to_json(obj) -> dict:
    if isinstance(obj, QSeries):
        return qseries_to_json(obj)
    if isinstance(obj, JacobiExpansion):
        return jacobi_to_json(obj)
    if isinstance(obj, HermitianExpansion):
        return hjf_to_json(obj)
    if isinstance(obj, ComponentVector):
        return components_to_json(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def from_json(d: Any, path: str = ""):
    """Decode a series or form; the ``kind`` field selects the type."""
    if not isinstance(d, dict):
        raise FormatError(f"{_where(path)}: expected a JSON object")
    kind = d.get("kind", "qseries")
    if kind == "qseries":
        return qseries_from_json(d, path)
    if kind == "jacobi":
        return jacobi_from_json(d, path)
    if kind == "hjf":
        return hjf_from_json(d, path)
    raise FormatError(f"{_where(path)}.kind: unknown kind {kind!r}")


def loads(text: str, path: str = ""):
    try:
        d = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"line {e.lineno} column {e.colno}: {e.msg}") from None
    return from_json(d, path)


def dumps(obj, indent=None) -> str:
    return json.dumps(to_json(obj), indent=indent)


def witness_json(w) -> Any:
    """Render witness values (exponents, coefficients, lattice points) as JSON."""
    if w is None:
        return None
    if isinstance(w, dict):
        return {k: witness_json(v) for k, v in w.items()}
    if isinstance(w, (list, tuple)):
        if isinstance(w, tuple) and hasattr(w, "_fields") and len(w) == 2:
            return f"{w[0]},{w[1]}"
        return [witness_json(v) for v in w]
    if isinstance(w, GaussRat):
        return gauss_json(w)
    if isinstance(w, Fraction):
        return rat_str(w)
    if isinstance(w, Rep):
        return str(w)
    return w


# -- external generator data ---------------------------------------------------------


def load_external(path: str):
    """Read an externally supplied form; the ``source`` field is mandatory."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise FormatError(f"{path}: {e.strerror}") from None
    try:
        d = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"{path}: line {e.lineno} column {e.colno}: {e.msg}") from None
    if not isinstance(d, dict) or not isinstance(d.get("source"), str) or not d["source"].strip():
        raise FormatError(f"{path}: external data must carry a nonempty \"source\" field")
    return from_json(d, path)
