"""Sign stability of mutation loops and what follows from it.

The detector is sample based: it follows the orbits of a few rational
points, waits for the sign of the path to settle, and then works with the
linear map of the settled regime (stable presentation matrix, Perron root,
invariant cone).
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

import numpy as np
from scipy.optimize import linprog

from ._linalg import Matrix, matvec
from .polynomials import (
    RealRoot,
    char_poly,
    is_palindromic_up_to_sign,
    largest_real_root,
    same_up_to_sign,
)
from .seeds import MutationPath, Mut, apply_step, is_mutation_loop
from .tropical import (
    check_presentation_matrix,
    format_sign,
    is_strict,
    iterate_loop,
    partial_presentation_rows,
    presentation_matrix,
    sgn,
    sign_of_path,
    trop_x_step,
    x_transport,
    swap_coords,
)

ROOT_TOL = Fraction(1, 10**12)
MAX_CONE_ROWS = 64


class PerronAnomaly(ArithmeticError):
    """No real root >= 1: impossible for a genuine stable matrix."""


def canonical_points(n_uf: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    if n_uf < 1:
        raise ValueError("need at least one unfrozen index")
    return (1,) * n_uf, (-1,) * n_uf


# --- cones ----------------------------------------------------------------------

def _primitive(row: Sequence) -> tuple[int, ...]:
    fr = [Fraction(v) for v in row]
    den = math.lcm(*(f.denominator for f in fr)) if fr else 1
    ints = [int(f * den) for f in fr]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return tuple(v // g for v in ints) if g else tuple(ints)


@dataclass(frozen=True)
class ConeDescription:
    """The polyhedral cone {x : f . x >= 0 for every row f}."""

    rows: tuple[tuple[int, ...], ...]
    dim: int

    def __post_init__(self):
        rows = []
        for r in self.rows:
            if len(r) != self.dim:
                raise ValueError("functional has wrong length")
            p = _primitive(r)
            if any(p) and p not in rows:
                rows.append(p)
        object.__setattr__(self, "rows", tuple(rows))

    def contains(self, x: Sequence, tol: float = 0.0) -> bool:
        return all(sum(a * b for a, b in zip(f, x)) >= -tol for f in self.rows)

    def with_rows(self, extra) -> "ConeDescription":
        return ConeDescription(self.rows + tuple(tuple(r) for r in extra), self.dim)


def sign_cone(p: MutationPath, eps: Sequence[int]) -> ConeDescription:
    """Closure of the set of X-points where the path has sign ``eps``."""
    if not is_strict(eps):
        raise ValueError("sign_cone needs a strict sign")
    rows = [tuple(e * v for v in row)
            for e, (_, row) in zip(eps, partial_presentation_rows(p, eps))]
    return ConeDescription(tuple(rows), p.start.n_uf)


def _exact_nonneg_combination(F: list[tuple[int, ...]], g: tuple) -> list[Fraction] | None:
    """Find y >= 0 with sum_i y_i F_i = g exactly, or None."""
    if not any(g):
        return [Fraction(0)] * len(F)
    if not F:
        return None
    A = np.array(F, dtype=float).T
    res = linprog(np.zeros(len(F)), A_eq=A, b_eq=np.array(g, dtype=float),
                  bounds=[(0, None)] * len(F), method="highs")
    if res.status != 0:
        return None
    support = [i for i, v in enumerate(res.x) if v > 1e-9]
    y = _solve_on_support(F, g, support)
    if y is None:
        y = [Fraction(v).limit_denominator(10**6) if i in support else Fraction(0)
             for i, v in enumerate(res.x)]
    ok = all(v >= 0 for v in y) and all(
        sum(y[i] * F[i][c] for i in range(len(F))) == g[c] for c in range(len(g)))
    return y if ok else None


def _solve_on_support(F, g, support) -> list[Fraction] | None:
    # least-squares-free exact solve: Gaussian elimination on the support columns
    m = len(support)
    rows = [[Fraction(F[i][c]) for i in support] + [Fraction(g[c])] for c in range(len(g))]
    piv_cols = []
    r = 0
    for col in range(m):
        p = next((k for k in range(r, len(rows)) if rows[k][col] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][col]
        rows[r] = [v / pv for v in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][col]:
                f = rows[k][col]
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[r])]
        piv_cols.append(col)
        r += 1
    if any(all(v == 0 for v in row[:-1]) and row[-1] != 0 for row in rows):
        return None
    y = [Fraction(0)] * len(F)
    for k, col in enumerate(piv_cols):
        y[support[col]] = rows[k][-1]
    return y


@dataclass(frozen=True)
class ConeCertificate:
    status: str  # "proved", "failed" or "skipped"
    multipliers: tuple[tuple[Fraction, ...], ...] = ()
    witness: tuple | None = None


def certify_invariant_cone(E: Matrix, cone: ConeDescription) -> ConeCertificate:
    """Prove E(C) in C by writing every f o E as a nonnegative combination of rows."""
    if len(cone.rows) > MAX_CONE_ROWS:
        return ConeCertificate("skipped")
    F = list(cone.rows)
    mults = []
    for f in F:
        fE = tuple(sum(f[i] * E[i][j] for i in range(len(f))) for j in range(len(E)))
        y = _exact_nonneg_combination(F, fE)
        if y is None:
            return ConeCertificate("failed", witness=_escape_witness(E, cone, fE))
        mults.append(tuple(y))
    return ConeCertificate("proved", tuple(mults))


def _escape_witness(E: Matrix, cone: ConeDescription, fE: tuple) -> tuple | None:
    """A rational point of the cone that E maps outside it, when one is easy to find."""
    d = cone.dim
    A_ub = -np.array(cone.rows, dtype=float) if cone.rows else None
    b_ub = np.zeros(len(cone.rows)) if cone.rows else None
    res = linprog(np.array(fE, dtype=float), A_ub=A_ub, b_ub=b_ub,
                  bounds=[(-1, 1)] * d, method="highs")
    if res.status != 0 or res.fun >= -1e-9:
        return None
    x = tuple(Fraction(v).limit_denominator(10**4) for v in res.x)
    if cone.contains(x) and sum(a * b for a, b in zip(fE, x)) < 0:
        return x
    return None


def _rational_left_kernel(E: Matrix, lam: int) -> list[tuple[int, ...]]:
    """Integer basis of {l : l E = lam l}."""
    n = len(E)
    rows = [[Fraction(E[j][i] - (lam if i == j else 0)) for j in range(n)] for i in range(n)]
    piv = []
    r = 0
    for c in range(n):
        p = next((k for k in range(r, n) if rows[k][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][c]
        rows[r] = [v / pv for v in rows[r]]
        for k in range(n):
            if k != r and rows[k][c]:
                f = rows[k][c]
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[r])]
        piv.append(c)
        r += 1
    free = [c for c in range(n) if c not in piv]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for k, c in enumerate(piv):
            v[c] = -rows[k][fc]
        basis.append(_primitive(v))
    return basis


def interior_point(cone: ConeDescription) -> tuple | None:
    """A rational point where every defining functional is strictly positive."""
    d = cone.dim
    if not cone.rows:
        return (Fraction(0),) * d
    # maximise t subject to f.x >= t, |x_i| <= 1, t <= 1
    A_ub = np.hstack([-np.array(cone.rows, dtype=float), np.ones((len(cone.rows), 1))])
    res = linprog(np.r_[np.zeros(d), -1.0], A_ub=A_ub, b_ub=np.zeros(len(cone.rows)),
                  bounds=[(-1, 1)] * d + [(None, 1)], method="highs")
    if res.status != 0 or -res.fun <= 1e-9:
        return None
    x = tuple(Fraction(v).limit_denominator(10**6) for v in res.x[:d])
    if all(sum(a * b for a, b in zip(f, x)) > 0 for f in cone.rows):
        return x
    return None


def _usable(cone: ConeDescription, cert: ConeCertificate) -> bool:
    # an invariant cone without interior (e.g. {0}) proves nothing useful
    return cert.status == "proved" and interior_point(cone) is not None


def find_invariant_cone(E: Matrix, base: ConeDescription, points: Sequence[Sequence],
                        rounds: int = 6) -> tuple[ConeDescription, ConeCertificate]:
    """Search for an E-invariant subcone of ``base`` containing ``points``.

    Two candidate families are tried: ``base`` cut down by preimages under E,
    and ``base`` plus the eigenvalue-one left eigenvectors of E, oriented by
    the sample points. Candidates with empty interior are rejected.
    """
    cone = base
    cert = certify_invariant_cone(E, cone)
    for _ in range(rounds):
        if cert.status == "skipped" or _usable(cone, cert):
            return cone, cert
        if cert.status == "proved":
            break
        extra = [tuple(sum(f[i] * E[i][j] for i in range(len(f))) for j in range(len(E)))
                 for f in cone.rows]
        bigger = cone.with_rows(extra)
        if bigger.rows == cone.rows or len(bigger.rows) > MAX_CONE_ROWS:
            break
        cone = bigger
        cert = certify_invariant_cone(E, cone)
    if _usable(cone, cert):
        return cone, cert
    extra = []
    for ell in _rational_left_kernel(E, 1):
        vals = [sum(a * b for a, b in zip(ell, x)) for x in points]
        if all(v >= 0 for v in vals):
            extra.append(ell)
        elif all(v <= 0 for v in vals):
            extra.append(tuple(-a for a in ell))
    if extra:
        candidate = base.with_rows(extra)
        cert2 = certify_invariant_cone(E, candidate)
        if _usable(candidate, cert2):
            return candidate, cert2
    for nbhd in _eigen_neighbourhoods(E, points):
        candidate = base.with_rows(nbhd.rows)  # stay where the loop acts by E
        cert3 = certify_invariant_cone(E, candidate)
        if _usable(candidate, cert3):
            return candidate, cert3
    if cert.status == "proved":
        cert = ConeCertificate("failed")  # only a degenerate cone was found
    return cone, cert


def _eigen_neighbourhoods(E: Matrix, points: Sequence[Sequence]):
    """Cones {x : f.x >= 0} with f near the dominant left eigenvector.

    E(C) lies in C iff E^T maps the cone spanned by the functionals into
    itself. When the top eigenvalue is real and strictly dominant, E^T
    contracts a small neighbourhood of its eigenvector, provided the
    neighbourhood is spanned along the other (real) eigendirections.
    """
    A = np.array(E, dtype=float)
    w, V = np.linalg.eig(A.T)
    top = int(np.argmax(np.abs(w)))
    others = [j for j in range(len(w)) if j != top]
    if abs(w[top].imag) > 1e-9 or w[top].real <= 1 + 1e-9 or any(
            abs(w[j]) > w[top].real - 1e-6 for j in others):
        return
    ell = V[:, top].real / np.max(np.abs(V[:, top].real))
    pts = [np.array([float(v) for v in x]) for x in points]
    if pts and sum(ell @ x for x in pts) < 0:
        ell = -ell
    dirs, seen = [], set()
    for j in others:
        v = V[:, j]
        if abs(w[j].imag) > 1e-9:
            key = (round(w[j].real, 8), round(abs(w[j].imag), 8))
            if key in seen:
                continue
            seen.add(key)
            dirs += [v.real, v.imag]
        else:
            dirs.append(v.real)
    dirs = [u / np.max(np.abs(u)) for u in dirs if np.max(np.abs(u)) > 1e-12]
    for den in (100, 10**4):
        lt = [Fraction(v).limit_denominator(den) for v in ell]
        uts = [[Fraction(v).limit_denominator(den) for v in u] for u in dirs]
        for d in (2, 4, 8, 16):
            rows = [tuple(a + Fraction(sgn_, d) * b for a, b in zip(lt, ut))
                    for ut in uts for sgn_ in (1, -1)]
            cone = ConeDescription(tuple(rows), len(E))
            if all(cone.contains(x) for x in points):
                yield cone


# --- spectra --------------------------------------------------------------------

def perron_root(E: Matrix, tol: Fraction = ROOT_TOL) -> RealRoot:
    """Largest real eigenvalue of an integer matrix, isolated to ``tol``."""
    root = largest_real_root(char_poly(E), tol)
    if root is None or root.upper < 1 - tol:
        raise PerronAnomaly(f"no real eigenvalue >= 1 (largest real root: {root})")
    return root


def spectral_duality_check(E: Matrix, E_check: Matrix) -> bool:
    p = char_poly(E)
    return is_palindromic_up_to_sign(p) and same_up_to_sign(p, char_poly(E_check))


def eigen_direction(E: Matrix, lam: float, cone: ConeDescription | None = None,
                    threshold: float = 1e-8) -> tuple[float, ...] | None:
    """Unit (max-norm) vector with E v = lam v, oriented into ``cone`` if possible."""
    A = np.array(E, dtype=float) - lam * np.eye(len(E))
    _, _, vt = np.linalg.svd(A)
    v = vt[-1]
    v = v / np.max(np.abs(v))
    if np.max(np.abs(A @ v)) > threshold:
        return None
    if cone is not None and not cone.contains(v, 1e-9) and cone.contains(-v, 1e-9):
        v = -v
    return tuple(float(t) for t in v)


# --- detection ------------------------------------------------------------------

@dataclass
class SampleRecord:
    start: tuple
    status: str  # "stable", "non-strict" or "unstable"
    sign: tuple[int, ...] | None = None
    n0: int | None = None
    iterations: int = 0
    zero_at: tuple[int, int] | None = None  # (step nu, iteration), both 1-based
    final_point: tuple | None = None

    def describe(self) -> str:
        if self.status == "stable":
            return f"stable sign {format_sign(self.sign)} from iteration {self.n0}"
        if self.status == "non-strict":
            nu, it = self.zero_at
            return f"non-strict at step {nu}, iteration {it}: sign {format_sign(self.sign)}"
        return f"no stabilization within {self.iterations} iterations"


@dataclass
class StabilityReport:
    samples: list[SampleRecord]
    consensus: tuple[int, ...] | None
    stable_matrix: Matrix | None = None
    stable_matrix_full: Matrix | None = None
    check_matrix: Matrix | None = None
    perron: RealRoot | None = None
    eigen_direction: tuple[float, ...] | None = None
    cone: ConeDescription | None = None
    cone_certificate: str = "not attempted"
    certified: bool = False
    spectral_duality: bool | None = None
    linear_regime: bool | None = None
    anomaly: str | None = None

    @property
    def non_strict(self) -> bool:
        return any(s.status == "non-strict" for s in self.samples)

    @property
    def perron_root(self) -> float | None:
        return None if self.perron is None else self.perron.value


def _projectively_equal(x: Sequence, y: Sequence) -> bool:
    i = next((k for k, v in enumerate(x) if v != 0), None)
    if i is None:
        return not any(y)
    if y[i] == 0 or sgn(y[i]) != sgn(x[i]):
        return False
    return all(a * y[i] == b * x[i] for a, b in zip(x, y))


def _run_sample(p: MutationPath, x0: Sequence, n_max: int, window: int) -> SampleRecord:
    x0 = tuple(Fraction(v) for v in x0)
    prev_sign = None
    run = 0
    start = 1
    prev_point = x0
    gen = iterate_loop(p, x0)
    for n in range(1, n_max + 1):
        x, eps = next(gen)
        if eps == prev_sign:
            run += 1
        else:
            prev_sign, run, start = eps, 1, n
        if is_strict(eps):
            # the window must be followed by one more step in the same regime,
            # so the stable matrix provably reproduces the next iteration
            if run >= window and sign_of_path(p, x) == eps:
                return SampleRecord(tuple(x0), "stable", eps, start, n, final_point=x)
        elif _projectively_equal(prev_point, x) or not any(x):
            nu = eps.index(0) + 1
            return SampleRecord(tuple(x0), "non-strict", eps, None, n, (nu, start), x)
        prev_point = x
    if prev_sign is not None and not is_strict(prev_sign):
        nu = prev_sign.index(0) + 1
        return SampleRecord(tuple(x0), "non-strict", prev_sign, None, n_max, (nu, start), x)
    return SampleRecord(tuple(x0), "unstable", prev_sign, None, n_max, final_point=x)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("SIGNSTABLE_THREADS", "1")))
    except ValueError:
        return 1


def detect_sign_stability(p: MutationPath, samples: Sequence[Sequence] | None = None,
                          n_max: int = 1000, window: int = 3) -> StabilityReport:
    if not is_mutation_loop(p):
        raise ValueError("path is not a mutation loop")
    if n_max < 1 or window < 1:
        raise ValueError("n_max and window must be positive")
    pts = list(samples) if samples else list(canonical_points(p.start.n_uf))
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        records = list(pool.map(lambda x: _run_sample(p, x, n_max, window), pts))
    signs = {r.sign for r in records}
    consensus = None
    if all(r.status == "stable" for r in records) and len(signs) == 1:
        consensus = records[0].sign
    report = StabilityReport(records, consensus)
    if consensus is None:
        return report
    _fill_stable_data(p, report)
    return report


def _fill_stable_data(p: MutationPath, report: StabilityReport) -> None:
    eps = report.consensus
    E = presentation_matrix(p, eps)
    report.stable_matrix = E
    report.stable_matrix_full = presentation_matrix(p, eps, side="full")
    report.check_matrix = check_presentation_matrix(p, eps)
    report.spectral_duality = spectral_duality_check(report.stable_matrix_full, report.check_matrix)
    finals = [r.final_point for r in report.samples]
    report.linear_regime = all(matvec(E, x) == x_transport(p, x)[0] for x in finals)
    base = sign_cone(p, eps)
    try:
        report.perron = perron_root(E)
    except PerronAnomaly as exc:
        report.anomaly = str(exc)
    else:
        report.eigen_direction = eigen_direction(E, report.perron.value, base)
    cone, cert = find_invariant_cone(E, base, finals)
    report.cone = cone
    report.cone_certificate = cert.status
    report.certified = cert.status == "proved" and all(cone.contains(x) for x in finals)


def stretch_factor(report: StabilityReport) -> float:
    if report.consensus is None:
        raise ValueError("no stable sign: stretch factor undefined")
    if report.perron is None:
        raise ValueError(report.anomaly or "Perron root unavailable")
    return report.perron.value


def entropy(report: StabilityReport) -> float:
    lam = stretch_factor(report)
    if report.perron.exact == 1:
        return 0.0
    return math.log(lam)


# --- weak sign stability ----------------------------------------------------------

def sign_leq(a: Sequence[int], b: Sequence[int]) -> bool:
    """a <= b iff a is obtained from b by replacing some entries with 0."""
    if len(a) != len(b):
        raise ValueError("sign sequences of different lengths")
    return all(x == 0 or x == y for x, y in zip(a, b))


@dataclass
class WeakStabilityReport:
    patterns: list[tuple[int, ...]]
    consensus: tuple[int, ...] | None
    n0: int | None
    reason: str = ""


def _eventual_pattern(history: list[tuple[int, ...]], tail: int) -> tuple[int, ...]:
    last = history[-tail:]
    h = len(history[0])
    return tuple(last[0][nu] if all(s[nu] == last[0][nu] for s in last) else 0 for nu in range(h))


def detect_weak_sign_stability(p: MutationPath, samples: Sequence[Sequence] | None = None,
                               n_max: int = 1000) -> WeakStabilityReport:
    if not is_mutation_loop(p):
        raise ValueError("path is not a mutation loop")
    pts = list(samples) if samples else list(canonical_points(p.start.n_uf))
    tail = max(1, n_max // 2)
    histories = []
    for x0 in pts:
        gen = iterate_loop(p, tuple(Fraction(v) for v in x0))
        histories.append([next(gen)[1] for _ in range(n_max)])
    patterns = [_eventual_pattern(hist, tail) for hist in histories]
    h = len(p.horizontal)
    cons = tuple(patterns[0][nu] if all(q[nu] == patterns[0][nu] for q in patterns) else 0
                 for nu in range(h))
    if not any(cons):
        return WeakStabilityReport(patterns, None, None, "not weakly sign-stable: consensus is all zero")
    n0 = 1
    for hist in histories:
        for n in range(len(hist), 0, -1):
            if not sign_leq(cons, hist[n - 1]):
                n0 = max(n0, n + 1)
                break
    return WeakStabilityReport(patterns, cons, n0)


def _partial_images(p: MutationPath, x: Sequence) -> list[tuple[int, tuple]]:
    """(k, point just before the mutation) for each horizontal step."""
    out = []
    seed = p.start
    x = tuple(x)
    for st in p.steps:
        if isinstance(st, Mut):
            out.append((st.k, x))
            x = trop_x_step(seed, st.k, x)
        else:
            x = swap_coords(x, st.i, st.j)
        seed = apply_step(seed, st)
    return out


def hereditary_failures(p: MutationPath, generators: Sequence[Sequence],
                        stable_sign: Sequence[int]) -> list[int]:
    """1-based steps where every generator has a zero coordinate but the sign is 0."""
    if len(stable_sign) != len(p.horizontal):
        raise ValueError("stable sign length does not match the path")
    if not generators:
        return []
    images = [_partial_images(p, g) for g in generators]
    bad = []
    for nu in range(len(stable_sign)):
        vanish = all(img[nu][1][img[nu][0]] == 0 for img in images)
        if vanish and stable_sign[nu] == 0:
            bad.append(nu + 1)
    return bad


def hereditary_check(p: MutationPath, generators: Sequence[Sequence],
                     stable_sign: Sequence[int]) -> bool:
    return not hereditary_failures(p, generators, stable_sign)
