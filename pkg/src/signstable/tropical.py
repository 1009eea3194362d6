"""Tropical cluster X- and A-transformations, signs and presentation matrices.

Points are plain tuples. Arithmetic is generic, so Fractions give exact
orbits and floats give quick numerical ones.

Convention: column vectors, path matrices compose on the left, i.e. the
presentation matrix of ``s_1, ..., s_m`` is ``J_m ... J_1``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Sequence

from ._linalg import Matrix, identity, matmul, permutation_matrix
from .seeds import (
    ExchangeSeed,
    MutationPath,
    Mut,
    apply_step,
    is_mutation_loop,
    transposition,
)

Point = tuple
SignSequence = tuple[int, ...]


def sgn(v) -> int:
    return (v > 0) - (v < 0)


def _pos(v):
    return v if v > 0 else 0


def format_sign(eps: Sequence[int]) -> str:
    return "(" + ",".join("+" if e > 0 else "-" if e < 0 else "0" for e in eps) + ")"


def parse_sign(text: str) -> SignSequence:
    body = text.strip().strip("()").replace(" ", "")
    table = {"+": 1, "-": -1, "−": -1, "0": 0}
    try:
        return tuple(table[c] for c in body.split(",")) if "," in body else tuple(table[c] for c in body)
    except KeyError as exc:
        raise ValueError(f"bad sign character {exc.args[0]!r} in {text!r}") from None


def is_strict(eps: Sequence[int]) -> bool:
    return all(e != 0 for e in eps)


def to_point(values: Sequence) -> Point:
    return tuple(v if isinstance(v, (int, Fraction)) else Fraction(v) for v in values)


# --- single steps -----------------------------------------------------------

def trop_x_step(seed: ExchangeSeed, k: int, x: Sequence) -> Point:
    """Tropical X-mutation at k on unfrozen coordinates."""
    m = seed.n_uf
    if len(x) != m:
        raise ValueError(f"X-point needs {m} coordinates, got {len(x)}")
    xk = x[k]
    s = sgn(xk)
    B = seed.B
    return tuple(-xk if i == k else x[i] + _pos(s * B[i][k]) * xk for i in range(m))


def trop_ensemble(seed: ExchangeSeed, a: Sequence) -> Point:
    """x_i = sum_j b_ij a_j for unfrozen i."""
    if len(a) != seed.n:
        raise ValueError(f"A-point needs {seed.n} coordinates, got {len(a)}")
    return tuple(sum(b * aj for b, aj in zip(seed.B[i], a)) for i in range(seed.n_uf))


def trop_a_step(seed: ExchangeSeed, k: int, a: Sequence) -> Point:
    """Tropical A-mutation at k; the sign is read off the ensemble image."""
    if len(a) != seed.n:
        raise ValueError(f"A-point needs {seed.n} coordinates, got {len(a)}")
    row = seed.B[k]
    # on the wall both signed formulas agree; 0 itself would drop the sum
    eps = sgn(sum(b * aj for b, aj in zip(row, a))) or 1
    new_k = -a[k] + sum(_pos(-eps * b) * aj for b, aj in zip(row, a))
    return tuple(new_k if i == k else a[i] for i in range(len(a)))


def swap_coords(x: Sequence, i: int, j: int) -> Point:
    y = list(x)
    y[i], y[j] = y[j], y[i]
    return tuple(y)


# --- paths ------------------------------------------------------------------

def x_transport(p: MutationPath, x: Sequence) -> tuple[Point, SignSequence]:
    """Push an X-point along the whole path; returns (endpoint, sign)."""
    seed = p.start
    signs = []
    x = tuple(x)
    for st in p.steps:
        if isinstance(st, Mut):
            signs.append(sgn(x[st.k]))
            x = trop_x_step(seed, st.k, x)
        else:
            x = swap_coords(x, st.i, st.j)
        seed = apply_step(seed, st)
    return x, tuple(signs)


def a_transport(p: MutationPath, a: Sequence) -> tuple[Point, SignSequence]:
    """Push an A-point along the path; signs come from the ensemble map."""
    seed = p.start
    signs = []
    a = tuple(a)
    for st in p.steps:
        if isinstance(st, Mut):
            signs.append(sgn(trop_ensemble(seed, a)[st.k]))
            a = trop_a_step(seed, st.k, a)
        else:
            a = swap_coords(a, st.i, st.j)
        seed = apply_step(seed, st)
    return a, tuple(signs)


def sign_of_path(p: MutationPath, x: Sequence) -> SignSequence:
    return x_transport(p, x)[1]


# --- signed elementary matrices --------------------------------------------

def e_matrix(seed: ExchangeSeed, k: int, eps: int, side: str = "x") -> Matrix:
    """E_{k,eps}: identity except -1 at (k,k) and [-eps b_ki]_+ down column k.

    ``side="x"`` gives the unfrozen block, ``side="full"`` the n x n matrix.
    """
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    n = seed.n_uf if side == "x" else seed.n
    E = [list(r) for r in identity(n)]
    E[k][k] = -1
    for i in range(n):
        if i != k:
            E[i][k] = _pos(-eps * seed.B[k][i])
    return tuple(map(tuple, E))


def check_e_matrix(seed: ExchangeSeed, k: int, eps: int, side: str = "full") -> Matrix:
    """Ě_{k,eps}: identity except -1 at (k,k) and [eps b_jk]_+ along row k."""
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    n = seed.n_uf if side == "x" else seed.n
    E = [list(r) for r in identity(n)]
    E[k][k] = -1
    for j in range(n):
        if j != k:
            E[k][j] = _pos(eps * seed.B[j][k])
    return tuple(map(tuple, E))


def _step_matrices(p: MutationPath, eps: Sequence[int], side: str, check: bool):
    horizontal = len(p.horizontal)
    if len(eps) != horizontal:
        raise ValueError(f"sign has length {len(eps)}, path has {horizontal} mutations")
    for nu, e in enumerate(eps):
        if e == 0:
            raise ValueError(f"sign is not strict: entry {nu + 1} is 0")
    seed = p.start
    n = seed.n_uf if side == "x" else seed.n
    it = iter(eps)
    for st in p.steps:
        if isinstance(st, Mut):
            e = next(it)
            J = (check_e_matrix if check else e_matrix)(seed, st.k, e, side)
        else:
            J = permutation_matrix(transposition(n, st.i, st.j))
        yield st, seed, J
        seed = apply_step(seed, st)


def presentation_matrix(p: MutationPath, eps: Sequence[int], side: str = "x") -> Matrix:
    """E_gamma^eps = J_m ... J_1 for a strict sign ``eps``."""
    n = p.start.n_uf if side == "x" else p.start.n
    M = identity(n)
    for _, _, J in _step_matrices(p, eps, side, check=False):
        M = matmul(J, M)
    return M


def check_presentation_matrix(p: MutationPath, eps: Sequence[int]) -> Matrix:
    """Ě_gamma^eps, the A-side counterpart (n x n)."""
    M = identity(p.start.n)
    for _, _, J in _step_matrices(p, eps, "full", check=True):
        M = matmul(J, M)
    return M


def partial_presentation_rows(p: MutationPath, eps: Sequence[int]) -> list[tuple[int, tuple]]:
    """For each mutation: (k, row k of the partial X-matrix before that step)."""
    out = []
    M = identity(p.start.n_uf)
    for st, _, J in _step_matrices(p, eps, "x", check=False):
        if isinstance(st, Mut):
            out.append((st.k, M[st.k]))
        M = matmul(J, M)
    return out


# --- loops ------------------------------------------------------------------

def renormalize(x: Sequence) -> Point:
    """Divide by the largest absolute coordinate (signs are scale invariant)."""
    top = max((abs(v) for v in x), default=0)
    if not top:
        return tuple(x)
    return tuple(v / top for v in x)


def iterate_loop(p: MutationPath, x: Sequence, side: str = "x",
                 renorm_every: int = 16) -> Iterator[tuple[Point, SignSequence]]:
    """Endless orbit generator yielding (image point, sign used) per iteration.

    Every ``renorm_every`` iterations the current point is rescaled, which
    keeps rational numerators small without changing any sign.
    """
    transport = x_transport if side == "x" else a_transport
    x = tuple(x)
    n = 0
    while True:
        x, eps = transport(p, x)
        n += 1
        yield x, eps
        if renorm_every and n % renorm_every == 0:
            x = renormalize(x)


def apply_loop(p: MutationPath, x: Sequence, iterations: int,
               side: str = "x") -> list[tuple[Point, SignSequence]]:
    """First ``iterations`` orbit points of a mutation loop, without rescaling.

    Entry ``n-1`` holds phi^n(x) and the sign of the path at phi^(n-1)(x).
    """
    if not is_mutation_loop(p):
        raise ValueError("path is not a mutation loop")
    gen = iterate_loop(p, x, side, renorm_every=0)
    return [next(gen) for _ in range(iterations)]


def casimir(incidence: dict, x: Sequence, order: Sequence | None = None) -> tuple:
    """theta_p = sum_alpha mult(p, alpha) x_alpha for every puncture p.

    ``incidence`` maps puncture -> {edge index (0-based): multiplicity}.
    """
    if incidence is None:
        raise ValueError("no puncture incidence data")
    keys = list(order) if order is not None else sorted(incidence)
    return tuple(sum(m * x[a] for a, m in incidence[p].items()) for p in keys)


def x_presentation_at(p: MutationPath, x: Sequence, side: str = "x") -> Matrix:
    """Presentation matrix in the domain of linearity containing ``x`` (strict only)."""
    return presentation_matrix(p, sign_of_path(p, x), side)


__all__ = [
    "sgn", "format_sign", "parse_sign", "is_strict", "to_point",
    "trop_x_step", "trop_a_step", "trop_ensemble",
    "x_transport", "a_transport", "sign_of_path",
    "e_matrix", "check_e_matrix", "presentation_matrix", "check_presentation_matrix",
    "partial_presentation_rows", "iterate_loop", "apply_loop", "casimir", "renormalize",
    "swap_coords",
]
