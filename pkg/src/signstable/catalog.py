"""Named example seeds, their representation paths and reference data."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .seeds import ExchangeSeed, MutationPath, Mut, Swap, permutation_to_swaps
from .surfaces import b_from_triangulation, builtin_triangulation


@dataclass(frozen=True)
class Example:
    name: str
    seed: ExchangeSeed
    path: MutationPath | None
    extra_paths: dict[str, MutationPath] = field(default_factory=dict)
    expected_sign: tuple[int, ...] | None = None
    points: dict[str, tuple] = field(default_factory=dict)
    triangulation: str | None = None
    note: str = ""


def a2() -> Example:
    seed = ExchangeSeed(((0, 1), (-1, 0)), 2)
    pentagon = MutationPath(seed, (Mut(0), Mut(1), Mut(0), Mut(1), Mut(0), Swap(0, 1)))
    return Example("a2", seed, pentagon, note="pentagon relation; acts as the identity")


def kronecker(ell: int = 2) -> Example:
    seed = ExchangeSeed(((0, -ell), (ell, 0)), 2)
    loop = MutationPath(seed, (Mut(0), Swap(0, 1)))
    return Example(f"kronecker({ell})", seed, loop, expected_sign=(1,),
                   points={"fixed": (1, -1)} if ell == 2 else {})


def annulus_dehn() -> Example:
    seed = b_from_triangulation(builtin_triangulation("annulus_dehn"))
    loop = MutationPath(seed, (Mut(0), Swap(0, 1)))
    return Example("annulus_dehn", seed, loop, expected_sign=(1,),
                   points={"curve": (1, -1)}, triangulation="annulus_dehn",
                   note="Dehn twist along the core curve")


# sigma = (1 5 6)(2 4 3) in 1-based cycle notation
SPHERE4_SIGMA = (4, 3, 1, 2, 5, 0)


def sphere4_pa() -> Example:
    seed = b_from_triangulation(builtin_triangulation("sphere4"))
    steps = (Mut(0), Mut(4), Mut(2), Mut(1)) + tuple(permutation_to_swaps(SPHERE4_SIGMA))
    loop = MutationPath(seed, steps)
    phi = (5 ** 0.5 - 1) / 2
    return Example("sphere4_pa", seed, loop, expected_sign=(1, -1, -1, 1),
                   points={"attracting_quoted": (phi, -1, 1, -phi, 1, -1)},
                   triangulation="sphere4", note="pseudo-Anosov loop, stretch factor (3+sqrt5)/2")


def genus2_dehn() -> Example:
    seed = b_from_triangulation(builtin_triangulation("genus2"))
    gamma = MutationPath(seed, (Mut(5), Swap(1, 5)))
    gamma_prime = MutationPath(seed, (Mut(5), Mut(8), Mut(8), Swap(1, 5)))
    curve = tuple(Fraction(v) for v in (0, -1, 0, 0, 0, 1, 0, 0, 0))
    quoted = tuple(Fraction(v) for v in (0, 0, 0, 0, 0, 1, -1, 0, 0))
    return Example("genus2_dehn", seed, gamma, {"gamma_prime": gamma_prime},
                   expected_sign=(1,), points={"curve": curve, "curve_quoted": quoted},
                   triangulation="genus2",
                   note="gamma is sign-stable; gamma_prime is s-equivalent but not strict at C")


_FIXED = {"a2": a2, "annulus_dehn": annulus_dehn, "sphere4_pa": sphere4_pa,
          "genus2_dehn": genus2_dehn}
_KRONECKER = re.compile(r"kronecker(?:\((\d+)\)|[:_]?(\d+))?$")


def get_example(name: str) -> Example:
    name = name.strip().lower()
    if name in _FIXED:
        return _FIXED[name]()
    m = _KRONECKER.match(name)
    if m:
        ell = int(m.group(1) or m.group(2) or 2)
        return kronecker(ell)
    raise ValueError(f"unknown example {name!r}; known: {example_names()}")


def example_names() -> list[str]:
    return ["a2", "kronecker(l)", "annulus_dehn", "sphere4_pa", "genus2_dehn"]
