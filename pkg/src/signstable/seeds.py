"""Exchange seeds, matrix mutation, index permutations and mutation paths.

Indices are 0-based here. Only the JSON layer (:mod:`signstable.io`)
speaks 1-based indices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

from ._linalg import Matrix


def _pos(v):
    return v if v > 0 else 0


def _as_rational(v) -> Fraction | int:
    if isinstance(v, bool):
        raise TypeError("booleans are not matrix entries")
    if isinstance(v, int):
        return v
    f = Fraction(v)
    return f.numerator if f.denominator == 1 else f


@dataclass(frozen=True)
class ExchangeSeed:
    """A skew-symmetric exchange matrix together with its frozen split.

    Indices ``0 .. n_uf-1`` are unfrozen, ``n_uf .. n-1`` frozen. Entries
    are ints, or Fractions in the frozen-frozen block.
    """

    B: Matrix
    n_uf: int

    def __post_init__(self):
        rows = tuple(tuple(_as_rational(v) for v in row) for row in self.B)
        object.__setattr__(self, "B", rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("exchange matrix must be square")
        if not 1 <= self.n_uf <= n:
            raise ValueError(f"need 1 <= n_uf <= n, got n_uf={self.n_uf}, n={n}")
        for i in range(n):
            for j in range(n):
                if rows[i][j] != -rows[j][i]:
                    raise ValueError(f"matrix is not skew-symmetric at ({i}, {j})")
                frozen_pair = i >= self.n_uf and j >= self.n_uf
                if not frozen_pair and Fraction(rows[i][j]).denominator != 1:
                    raise ValueError(f"entry ({i}, {j}) must be an integer")

    @property
    def n(self) -> int:
        return len(self.B)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], n_uf: int | None = None) -> "ExchangeSeed":
        return cls(tuple(tuple(r) for r in rows), len(rows) if n_uf is None else n_uf)

    @property
    def unfrozen_block(self) -> Matrix:
        m = self.n_uf
        return tuple(row[:m] for row in self.B[:m])


@dataclass(frozen=True)
class Mut:
    """Horizontal step: mutation at unfrozen index ``k``."""

    k: int


@dataclass(frozen=True)
class Swap:
    """Vertical step: the transposition ``(i j)`` within one block."""

    i: int
    j: int


PathStep = Union[Mut, Swap]


def transposition(n: int, i: int, j: int) -> tuple[int, ...]:
    images = list(range(n))
    images[i], images[j] = j, i
    return tuple(images)


def check_block_preserving(images: Sequence[int], n_uf: int) -> None:
    if sorted(images) != list(range(len(images))):
        raise ValueError(f"{list(images)} is not a permutation")
    if any((i < n_uf) != (s < n_uf) for i, s in enumerate(images)):
        raise ValueError("permutation mixes unfrozen and frozen indices")


def mutate_matrix(seed: ExchangeSeed, k: int) -> ExchangeSeed:
    """Matrix mutation at the unfrozen index ``k``."""
    if not 0 <= k < seed.n_uf:
        raise IndexError(f"mutation index {k} outside unfrozen range 0..{seed.n_uf - 1}")
    B = seed.B
    n = seed.n
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        bik = B[i][k]
        for j in range(n):
            if i == k or j == k:
                out[i][j] = -B[i][j]
            else:
                bkj = B[k][j]
                out[i][j] = B[i][j] + _pos(bik) * _pos(bkj) - _pos(-bik) * _pos(-bkj)
    return ExchangeSeed(tuple(map(tuple, out)), seed.n_uf)


def permute_matrix(seed: ExchangeSeed, images: Sequence[int]) -> ExchangeSeed:
    """Relabel by sigma, given as its image list: ``(sigma.B)[s(i)][s(j)] = B[i][j]``."""
    check_block_preserving(images, seed.n_uf)
    n = seed.n
    inv = [0] * n
    for i, s in enumerate(images):
        inv[s] = i
    B = seed.B
    return ExchangeSeed(tuple(tuple(B[inv[a]][inv[b]] for b in range(n)) for a in range(n)),
                        seed.n_uf)


def invert_permutation(images: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(images)
    for i, s in enumerate(images):
        inv[s] = i
    return tuple(inv)


def permutation_to_swaps(images: Sequence[int]) -> list[Swap]:
    """Transpositions whose left-to-right application realises ``images``.

    Applying ``Swap(i, j)`` moves whatever sits at position i to j and vice
    versa, so the returned steps send the entry at ``p`` to ``images[p]``.
    """
    images = list(images)
    n = len(images)
    seen = [False] * n
    steps: list[Swap] = []
    for start in range(n):
        if seen[start]:
            continue
        cycle = [start]
        seen[start] = True
        nxt = images[start]
        while nxt != start:
            cycle.append(nxt)
            seen[nxt] = True
            nxt = images[nxt]
        # (c0 c1 ... cm) = (c0 cm) ... (c0 c1), rightmost acts first
        steps.extend(Swap(cycle[0], c) for c in cycle[1:])
    return steps


def apply_step(seed: ExchangeSeed, step: PathStep) -> ExchangeSeed:
    if isinstance(step, Mut):
        return mutate_matrix(seed, step.k)
    return permute_matrix(seed, transposition(seed.n, step.i, step.j))


@dataclass(frozen=True)
class MutationPath:
    """A start seed and a sequence of horizontal and vertical steps."""

    start: ExchangeSeed
    steps: tuple[PathStep, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        n, m = self.start.n, self.start.n_uf
        for pos, st in enumerate(self.steps):
            if isinstance(st, Mut):
                if not 0 <= st.k < m:
                    raise ValueError(f"step {pos}: mutation index {st.k} is not unfrozen")
            elif isinstance(st, Swap):
                if not (0 <= st.i < n and 0 <= st.j < n) or st.i == st.j:
                    raise ValueError(f"step {pos}: bad transposition ({st.i} {st.j})")
                if (st.i < m) != (st.j < m):
                    raise ValueError(f"step {pos}: transposition mixes frozen and unfrozen")
            else:
                raise TypeError(f"step {pos}: unknown step {st!r}")

    @property
    def horizontal(self) -> tuple[int, ...]:
        return tuple(st.k for st in self.steps if isinstance(st, Mut))

    def seeds(self) -> Iterable[ExchangeSeed]:
        """Seeds before each step, then the final seed."""
        s = self.start
        yield s
        for st in self.steps:
            s = apply_step(s, st)
            yield s


def path(start: ExchangeSeed, *steps: int | tuple[int, int]) -> MutationPath:
    """Shorthand: ints are mutations, pairs are transpositions (0-based)."""
    out: list[PathStep] = []
    for st in steps:
        out.append(Mut(st) if isinstance(st, int) else Swap(*st))
    return MutationPath(start, tuple(out))


def apply_path(p: MutationPath) -> ExchangeSeed:
    s = p.start
    for st in p.steps:
        s = apply_step(s, st)
    return s


def is_mutation_loop(p: MutationPath) -> bool:
    return apply_path(p).B == p.start.B


def builtin_seed(name: str) -> tuple[ExchangeSeed, MutationPath | None]:
    """Seed and representation path of a named example (see :mod:`signstable.catalog`)."""
    from .catalog import get_example

    ex = get_example(name)
    return ex.seed, ex.path
