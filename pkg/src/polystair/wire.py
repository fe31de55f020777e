"""JSON wire formats shared by the CLI and the serve mode.

Rationals travel as lowest-terms strings ("-3/2", "7"); polygons as
{"vertices": [["x","y"], ...]} in counterclockwise order.  Parsing is strict:
malformed payloads raise WireError with a location string.
"""

from __future__ import annotations

from fractions import Fraction

from .polygon import NotConvex, RationalPolygon


class WireError(ValueError):
    def __init__(self, message: str, location: str = ""):
        super().__init__(message)
        self.location = location


def rat_to_str(x) -> str:
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def str_to_rat(s, location: str = "") -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise WireError(f"expected a rational string, got {type(s).__name__}", location)
    try:
        f = Fraction(s.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise WireError(f"malformed rational {s!r}: {exc}", location) from None
    if "/" in s:
        num, den = s.split("/")
        if Fraction(int(num), int(den)) != f or abs(f.numerator) != abs(int(num)):
            raise WireError(f"rational {s!r} is not in lowest terms", location)
    return f


def polygon_to_json(Q: RationalPolygon) -> dict:
    return {"vertices": [[rat_to_str(x), rat_to_str(y)] for x, y in Q.vertices]}


def polygon_from_json(obj, location: str = "polygon") -> RationalPolygon:
    if not isinstance(obj, dict) or "vertices" not in obj:
        raise WireError("polygon JSON must be an object with a 'vertices' key", location)
    verts = obj["vertices"]
    if not isinstance(verts, list):
        raise WireError("'vertices' must be a list", location)
    pts = []
    for i, v in enumerate(verts):
        loc = f"{location}.vertices[{i}]"
        if not isinstance(v, (list, tuple)) or len(v) != 2:
            raise WireError("each vertex must be a pair", loc)
        pts.append((str_to_rat(v[0], loc), str_to_rat(v[1], loc)))
    try:
        return RationalPolygon(pts)
    except NotConvex as exc:
        raise WireError(str(exc), location) from None


def vec_to_json(v) -> list[str]:
    return [rat_to_str(v[0]), rat_to_str(v[1])]


def cert_to_json(cert) -> dict:
    return {
        "delzant_vertex": cert.delzant_vertex,
        "t_vertex": cert.t_vertex,
        "r": cert.r,
        "a": cert.a,
        "ell1": rat_to_str(cert.ell1),
        "ell2": rat_to_str(cert.ell2),
        "ell3": rat_to_str(cert.ell3),
        "hit_point": vec_to_json(cert.hit_point),
        "area": rat_to_str(cert.area),
        "x": rat_to_str(cert.x),
        "level": rat_to_str(cert.level),
    }


def constraint_to_json(con) -> dict:
    out = {"kind": con.kind}
    if con.x_lo is not None:
        out["x_lo"] = rat_to_str(con.x_lo)
        out["x_hi"] = rat_to_str(con.x_hi)
    if con.denom is not None:
        out["denom"] = rat_to_str(con.denom)
    if con.value is not None:
        out["value"] = rat_to_str(con.value)
    return out


def report_to_json(rep) -> dict:
    out = {
        "index": rep.index,
        "type": {"n": rep.vertex_type.n, "q": rep.vertex_type.q},
        "is_delzant": rep.is_delzant,
    }
    if rep.t_data is not None:
        out["t_data"] = {
            "m": rep.t_data.m,
            "r": rep.t_data.r,
            "a_residue": rep.t_data.a_residue,
        }
        out["a_frame"] = rep.a_frame
        out["eigenray"] = [rep.eigenray[0], rep.eigenray[1]]
    return out


def corner_to_json(c) -> dict:
    out = {"kind": c.kind, "k": c.k, "x": rat_to_str(c.x), "y": rat_to_str(c.y)}
    if c.p is not None:
        out["p"], out["q"] = c.p, c.q
    return out


def char_to_json(char) -> dict:
    return {"char": [char.m, list(char.betas)]}


def char_from_json(obj, location: str = "char"):
    from .cusp import InvalidChar, PuiseuxChar

    if not isinstance(obj, (list, tuple)) or len(obj) != 2:
        raise WireError("char must be [m, [betas...]]", location)
    try:
        return PuiseuxChar(int(obj[0]), tuple(int(b) for b in obj[1]))
    except (InvalidChar, ValueError, TypeError) as exc:
        raise WireError(f"invalid characteristic: {exc}", location) from None


def parse_char_text(text: str):
    """'9;15,16' -> PuiseuxChar(9, (15, 16))."""
    from .cusp import PuiseuxChar

    try:
        head, _, tail = text.partition(";")
        m = int(head)
        betas = tuple(int(b) for b in tail.split(",") if b.strip()) if tail else ()
        return PuiseuxChar(m, betas)
    except Exception as exc:
        raise WireError(f"malformed char {text!r}: {exc}", "char") from None


def parse_pairs_text(text: str):
    """'5,3;16,3' -> [(5,3), (16,3)]."""
    try:
        out = []
        for chunk in text.split(";"):
            n, d = chunk.split(",")
            out.append((int(n), int(d)))
        return out
    except Exception as exc:
        raise WireError(f"malformed pairs {text!r}: {exc}", "pairs") from None
