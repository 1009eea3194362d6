"""C- and G-matrices along mutation paths.

Both matrices are n x n and start at the identity. A mutation updates C by
the entrywise rule and, as a cross-check, by left multiplication with the
signed matrix E; G follows by the check matrix. The two C routes must agree
and every row of C must be sign-coherent, otherwise something is broken.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._linalg import Matrix, identity, matmul, permutation_matrix, transpose
from .seeds import ExchangeSeed, MutationPath, Mut, PathStep, apply_step, transposition
from .tropical import check_e_matrix, e_matrix


class SignCoherenceError(AssertionError):
    pass


def _pos(v):
    return v if v > 0 else 0


@dataclass(frozen=True)
class CGState:
    C: Matrix
    G: Matrix
    seed: ExchangeSeed
    signs: tuple[int, ...] = ()


def cg_init(seed: ExchangeSeed) -> CGState:
    I = identity(seed.n)
    return CGState(I, I, seed)


def tropical_sign(row) -> int:
    if all(v >= 0 for v in row) and any(row):
        return 1
    if all(v <= 0 for v in row) and any(row):
        return -1
    raise SignCoherenceError(f"c-vector {tuple(row)} is not sign-coherent")


def c_mutation(C: Matrix, B: Matrix, k: int) -> Matrix:
    n = len(C)
    return tuple(
        tuple(-C[i][j] if i == k else
              C[i][j] + _pos(C[k][j]) * _pos(B[i][k]) - _pos(-C[k][j]) * _pos(-B[i][k])
              for j in range(n))
        for i in range(n))


def cg_step(state: CGState, step: PathStep) -> CGState:
    seed = state.seed
    if isinstance(step, Mut):
        k = step.k
        eps = tropical_sign(state.C[k])
        C_raw = c_mutation(state.C, seed.B, k)
        C_mat = matmul(e_matrix(seed, k, eps, side="full"), state.C)
        if C_raw != C_mat:
            raise AssertionError(f"C-matrix update routes disagree at mutation {k}")
        G = matmul(check_e_matrix(seed, k, eps, side="full"), state.G)
        return CGState(C_raw, G, apply_step(seed, step), state.signs + (eps,))
    P = permutation_matrix(transposition(seed.n, step.i, step.j))
    return CGState(matmul(P, state.C), matmul(P, state.G), apply_step(seed, step), state.signs)


def cg_path(p: MutationPath) -> list[CGState]:
    """States before the first step and after every step."""
    states = [cg_init(p.start)]
    for st in p.steps:
        states.append(cg_step(states[-1], st))
    return states


def duality_check(state: CGState) -> bool:
    return matmul(state.G, transpose(state.C)) == identity(len(state.C))
