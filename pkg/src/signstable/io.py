"""JSON (de)serialization. This is the only place with 1-based indices."""

from __future__ import annotations

import json
import os
import re
from fractions import Fraction
from typing import Any

from .catalog import get_example
from .polynomials import RealRoot
from .seeds import ExchangeSeed, MutationPath, Mut, Swap, permutation_to_swaps
from .stability import ConeDescription, SampleRecord, StabilityReport
from .surfaces import Triangulation, builtin_triangulation
from .tropical import format_sign, parse_sign


def rational_to_json(v) -> str:
    return str(Fraction(v))


def rational_from_json(v) -> Fraction | int:
    if isinstance(v, bool):
        raise ValueError("boolean where a rational was expected")
    if isinstance(v, int):
        return v
    if isinstance(v, float):
        if not v == v or v in (float("inf"), float("-inf")):
            raise ValueError("non-finite number")
        f = Fraction(v)
    elif isinstance(v, str):
        f = Fraction(v.strip())
    else:
        raise ValueError(f"cannot read {v!r} as a rational")
    return f.numerator if f.denominator == 1 else f


def real_to_text(x: float) -> str:
    return f"{x:.12f}"


def matrix_to_json(M) -> list[list[str]]:
    return [[rational_to_json(v) for v in row] for row in M]


def matrix_from_json(rows) -> tuple:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ValueError("matrix must be a list of rows")
    return tuple(tuple(rational_from_json(v) for v in r) for r in rows)


def point_to_json(x) -> list[str]:
    return [rational_to_json(v) for v in x]


def point_from_json(x) -> tuple:
    if isinstance(x, str):
        x = [t for t in x.replace(";", ",").split(",") if t.strip()]
    if not isinstance(x, list):
        raise ValueError("point must be a list")
    return tuple(rational_from_json(v) for v in x)


# --- seeds and paths ------------------------------------------------------------------

def seed_to_json(seed: ExchangeSeed) -> dict:
    return {"n": seed.n, "n_uf": seed.n_uf, "B": matrix_to_json(seed.B)}


def seed_from_json(obj: Any) -> ExchangeSeed:
    if isinstance(obj, str):
        return get_example(obj).seed
    if not isinstance(obj, dict):
        raise ValueError("seed must be an object or a builtin name")
    B = matrix_from_json(obj["B"])
    n = int(obj.get("n", len(B)))
    if n != len(B):
        raise ValueError(f"declared n={n} but B has {len(B)} rows")
    return ExchangeSeed(B, int(obj.get("n_uf", n)))


def step_to_json(st) -> dict:
    if isinstance(st, Mut):
        return {"mut": st.k + 1}
    return {"swap": [st.i + 1, st.j + 1]}


def steps_from_json(items) -> list:
    if not isinstance(items, list):
        raise ValueError("steps must be a list")
    out = []
    for item in items:
        if isinstance(item, int) and not isinstance(item, bool):
            out.append(Mut(item - 1))
        elif isinstance(item, dict) and "mut" in item:
            out.append(Mut(int(item["mut"]) - 1))
        elif isinstance(item, dict) and "swap" in item:
            i, j = item["swap"]
            out.append(Swap(int(i) - 1, int(j) - 1))
        elif isinstance(item, dict) and "perm" in item:
            out.extend(permutation_to_swaps([int(v) - 1 for v in item["perm"]]))
        else:
            raise ValueError(f"unrecognised step {item!r}")
    return out


def path_to_json(p: MutationPath) -> dict:
    return {"seed": seed_to_json(p.start), "steps": [step_to_json(s) for s in p.steps]}


def builtin_path(name: str) -> MutationPath:
    """``name`` or ``name:variant`` (e.g. ``genus2_dehn:gamma_prime``)."""
    base, _, variant = name.partition(":")
    if base.startswith("kronecker") and variant.isdigit():
        base, variant = f"kronecker({variant})", ""
    ex = get_example(base)
    if variant:
        try:
            return ex.extra_paths[variant]
        except KeyError:
            raise ValueError(f"{base} has no path {variant!r}; known: {sorted(ex.extra_paths)}") from None
    if ex.path is None:
        raise ValueError(f"{base} has no representation path")
    return ex.path


def path_from_json(obj: Any) -> MutationPath:
    if isinstance(obj, str):
        return builtin_path(obj)
    if not isinstance(obj, dict) or "seed" not in obj:
        raise ValueError("path must be an object with a 'seed'")
    if "steps" not in obj:
        if isinstance(obj["seed"], str):
            return builtin_path(obj["seed"])
        raise ValueError("path needs 'steps'")
    return MutationPath(seed_from_json(obj["seed"]), tuple(steps_from_json(obj["steps"])))


# --- triangulations --------------------------------------------------------------------

def triangulation_to_json(T: Triangulation) -> dict:
    out = {
        "name": T.name,
        "n_interior": T.n_interior,
        "n_boundary": T.n_boundary,
        "triangles": [list(t) for t in T.triangles],
        "corners": [list(c) for c in T.corners],
        "punctures": list(T.punctures),
        "self_folded": [list(p) for p in T.self_folded],
        "puncture_incidence": {p: {str(e + 1): m for e, m in inc.items()}
                               for p, inc in T.puncture_incidence.items()},
    }
    if T.topology is not None:
        out["topology"] = list(T.topology)
    return out


def triangulation_from_json(obj: Any) -> Triangulation:
    if isinstance(obj, str):
        return builtin_triangulation(obj)
    if not isinstance(obj, dict):
        raise ValueError("triangulation must be an object or a builtin name")
    topo = obj.get("topology")
    return Triangulation(
        int(obj["n_interior"]), int(obj["n_boundary"]),
        tuple(tuple(int(e) for e in t) for t in obj["triangles"]),
        tuple(tuple(str(v) for v in c) for c in obj["corners"]),
        tuple(str(p) for p in obj.get("punctures", ())),
        tuple(int(v) for v in topo) if topo is not None else None,
        str(obj.get("name", "")))


# --- reports -------------------------------------------------------------------------

def _sign_json(eps):
    return None if eps is None else format_sign(eps)


def _sign_back(s):
    return None if s is None else parse_sign(s)


def sample_to_json(r: SampleRecord) -> dict:
    return {
        "start": point_to_json(r.start),
        "status": r.status,
        "sign": _sign_json(r.sign),
        "n0": r.n0,
        "iterations": r.iterations,
        "zero_at": list(r.zero_at) if r.zero_at else None,
        "final_point": point_to_json(r.final_point) if r.final_point is not None else None,
        "summary": r.describe(),
    }


def sample_from_json(d: dict) -> SampleRecord:
    return SampleRecord(
        point_from_json(d["start"]), d["status"], _sign_back(d["sign"]), d["n0"],
        d["iterations"], tuple(d["zero_at"]) if d["zero_at"] else None,
        point_from_json(d["final_point"]) if d["final_point"] is not None else None)


def _root_json(r: RealRoot | None):
    if r is None:
        return None
    return {"value": real_to_text(r.value), "lower": rational_to_json(r.lower),
            "upper": rational_to_json(r.upper),
            "exact": None if r.exact is None else rational_to_json(r.exact)}


def _root_back(d):
    if d is None:
        return None
    return RealRoot(Fraction(d["lower"]), Fraction(d["upper"]),
                    None if d["exact"] is None else Fraction(d["exact"]))


def _mat(M):
    return None if M is None else matrix_to_json(M)


def _mat_back(M):
    return None if M is None else matrix_from_json(M)


def report_to_json(r: StabilityReport) -> dict:
    return {
        "samples": [sample_to_json(s) for s in r.samples],
        "consensus": _sign_json(r.consensus),
        "stable_matrix": _mat(r.stable_matrix),
        "stable_matrix_full": _mat(r.stable_matrix_full),
        "check_matrix": _mat(r.check_matrix),
        "perron_root": _root_json(r.perron),
        "eigen_direction": None if r.eigen_direction is None
        else [real_to_text(v) for v in r.eigen_direction],
        "cone": None if r.cone is None else {"dim": r.cone.dim, "rows": [list(f) for f in r.cone.rows]},
        "cone_certificate": r.cone_certificate,
        "certified": r.certified,
        "spectral_duality": r.spectral_duality,
        "linear_regime": r.linear_regime,
        "anomaly": r.anomaly,
    }


def report_from_json(d: dict) -> StabilityReport:
    cone = d.get("cone")
    return StabilityReport(
        samples=[sample_from_json(s) for s in d["samples"]],
        consensus=_sign_back(d["consensus"]),
        stable_matrix=_mat_back(d["stable_matrix"]),
        stable_matrix_full=_mat_back(d["stable_matrix_full"]),
        check_matrix=_mat_back(d["check_matrix"]),
        perron=_root_back(d["perron_root"]),
        eigen_direction=None if d["eigen_direction"] is None
        else tuple(float(v) for v in d["eigen_direction"]),
        cone=None if cone is None else ConeDescription(tuple(tuple(f) for f in cone["rows"]), cone["dim"]),
        cone_certificate=d["cone_certificate"],
        certified=d["certified"],
        spectral_duality=d["spectral_duality"],
        linear_regime=d["linear_regime"],
        anomaly=d["anomaly"],
    )


# --- sources ---------------------------------------------------------------------------

def load_source(text: str) -> Any:
    """Inline JSON, a path to a JSON file, or a bare builtin name."""
    s = text.strip()
    if s[:1] in "{[\"":
        return json.loads(s)
    if os.path.isfile(s):
        with open(s, encoding="utf-8") as fh:
            return json.load(fh)
    return s


_FLAT_LIST = re.compile(r"\[[^\[\]{}]*\]")


def dumps(obj: Any, pretty: bool = True) -> str:
    """JSON text; in pretty mode innermost lists (matrix rows, points) stay on one line."""
    if not pretty:
        return json.dumps(obj, ensure_ascii=False)
    text = json.dumps(obj, indent=2, ensure_ascii=False)
    return _FLAT_LIST.sub(lambda m: re.sub(r"\s*\n\s*", " ", m.group(0)).replace("[ ", "[").replace(" ]", "]"), text)
