"""Property suites over random rational points, seeds and paths.

Hypothesis runs derandomized (see conftest), 100 cases per property.
All comparisons are exact unless a tolerance is stated.
"""

from fractions import Fraction

import numpy as np
from hypothesis import assume, given
from hypothesis import strategies as st

from signstable import io
from signstable._linalg import det, inverse, matvec, transpose
from signstable.catalog import get_example
from signstable.cgmat import cg_path
from signstable.polynomials import char_poly
from signstable.seeds import (
    ExchangeSeed,
    MutationPath,
    Mut,
    Swap,
    apply_path,
    mutate_matrix,
    permute_matrix,
    transposition,
)
from signstable.stability import perron_root, sign_leq
from signstable.surfaces import b_from_triangulation, builtin_triangulation, flip
from signstable.tropical import (
    casimir,
    check_e_matrix,
    e_matrix,
    presentation_matrix,
    sign_of_path,
    trop_a_step,
    trop_ensemble,
    trop_x_step,
    x_transport,
)

SEEDS = {
    "a2": ExchangeSeed(((0, 1), (-1, 0)), 2),
    "k2": ExchangeSeed(((0, -2), (2, 0)), 2),
    "k3": ExchangeSeed(((0, -3), (3, 0)), 2),
    "annulus": get_example("annulus_dehn").seed,
    "sphere4": get_example("sphere4_pa").seed,
    "genus2": get_example("genus2_dehn").seed,
}

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
positive = st.fractions(min_value=Fraction(1, 12), max_value=12, max_denominator=12)
seeds = st.sampled_from(sorted(SEEDS)).map(SEEDS.get)


@st.composite
def seed_and_point(draw, side="x"):
    seed = draw(seeds)
    n = seed.n_uf if side == "x" else seed.n
    return seed, tuple(draw(st.lists(rationals, min_size=n, max_size=n)))


@st.composite
def random_path(draw, max_len=12, seed_pool=seeds):
    seed = draw(seed_pool)
    m = seed.n_uf
    steps = []
    for _ in range(draw(st.integers(0, max_len))):
        if m > 1 and draw(st.integers(0, 4)) == 0:
            i, j = draw(st.lists(st.integers(0, m - 1), min_size=2, max_size=2, unique=True))
            steps.append(Swap(i, j))
        else:
            steps.append(Mut(draw(st.integers(0, m - 1))))
    return MutationPath(seed, tuple(steps))


# --- tropical transformations ------------------------------------------------------------

@given(seed_and_point(), st.data())
def test_x_mutation_is_involutive(sp, data):
    seed, x = sp
    k = data.draw(st.integers(0, seed.n_uf - 1))
    y = trop_x_step(seed, k, x)
    assert trop_x_step(mutate_matrix(seed, k), k, y) == x


@given(seed_and_point(side="a"), st.data())
def test_a_mutation_is_involutive(sp, data):
    seed, a = sp
    k = data.draw(st.integers(0, seed.n_uf - 1))
    assert trop_a_step(mutate_matrix(seed, k), k, trop_a_step(seed, k, a)) == a


@given(seed_and_point(), st.data(), positive)
def test_x_step_homogeneous(sp, data, lam):
    seed, x = sp
    k = data.draw(st.integers(0, seed.n_uf - 1))
    scaled = tuple(lam * v for v in x)
    assert trop_x_step(seed, k, scaled) == tuple(lam * v for v in trop_x_step(seed, k, x))


@given(random_path(), st.data(), positive)
def test_signs_scale_invariant(p, data, lam):
    x = tuple(data.draw(st.lists(rationals, min_size=p.start.n_uf, max_size=p.start.n_uf)))
    assert sign_of_path(p, tuple(lam * v for v in x)) == sign_of_path(p, x)


@given(seed_and_point(side="a"), st.data())
def test_ensemble_equivariance(sp, data):
    seed, a = sp
    k = data.draw(st.integers(0, seed.n_uf - 1))
    lhs = trop_ensemble(mutate_matrix(seed, k), trop_a_step(seed, k, a))
    rhs = trop_x_step(seed, k, trop_ensemble(seed, a))
    assert lhs == rhs


@given(random_path(), st.data())
def test_finite_difference_matches_presentation_matrix(p, data):
    m = p.start.n_uf
    x = tuple(data.draw(st.lists(rationals, min_size=m, max_size=m)))
    eps = sign_of_path(p, x)
    assume(all(eps))
    i = data.draw(st.integers(0, m - 1))
    delta = data.draw(st.fractions(min_value=-1, max_value=1, max_denominator=8))
    assume(delta != 0)
    for _ in range(40):  # shrink until the perturbed point shares every sign
        shifted = tuple(v + (delta if j == i else 0) for j, v in enumerate(x))
        if sign_of_path(p, shifted) == eps:
            break
        delta /= 2
    assume(sign_of_path(p, shifted) == eps)
    E = presentation_matrix(p, eps)
    diff = tuple(a - b for a, b in zip(x_transport(p, shifted)[0], x_transport(p, x)[0]))
    assert diff == tuple(E[r][i] * delta for r in range(m))


@given(random_path(), st.data())
def test_presentation_matrix_is_the_map_on_its_cone(p, data):
    m = p.start.n_uf
    x = tuple(data.draw(st.lists(rationals, min_size=m, max_size=m)))
    eps = sign_of_path(p, x)
    assume(all(eps))
    assert matvec(presentation_matrix(p, eps), x) == x_transport(p, x)[0]


@given(seed_and_point(), st.data())
def test_naturality_square(sp, data):
    seed, x = sp
    m = seed.n_uf
    assume(m > 1)
    i, j = data.draw(st.lists(st.integers(0, m - 1), min_size=2, max_size=2, unique=True))
    k = data.draw(st.integers(0, m - 1))
    rho = transposition(seed.n, i, j)
    swap_first = MutationPath(seed, (Swap(i, j), Mut(rho[k])))
    mutate_first = MutationPath(seed, (Mut(k), Swap(i, j)))
    assert apply_path(swap_first) == apply_path(mutate_first)
    assert x_transport(swap_first, x)[0] == x_transport(mutate_first, x)[0]
    assert sign_of_path(swap_first, x) == sign_of_path(mutate_first, x)


@given(seeds, st.data())
def test_permutation_action_is_a_group_action(seed, data):
    m = seed.n_uf
    perm = data.draw(st.permutations(range(m)))
    images = tuple(perm) + tuple(range(m, seed.n))
    back = [0] * seed.n
    for a, b in enumerate(images):
        back[b] = a
    assert permute_matrix(permute_matrix(seed, images), tuple(back)) == seed


# --- matrices -----------------------------------------------------------------------------

@given(seeds, st.data())
def test_elementary_matrices_transpose_inverse(seed, data):
    k = data.draw(st.integers(0, seed.n_uf - 1))
    eps = data.draw(st.sampled_from((1, -1)))
    E = e_matrix(seed, k, eps, side="full")
    Ec = check_e_matrix(seed, k, eps)
    assert transpose(E) == inverse(Ec)
    assert inverse(Ec) == Ec  # both are involutions
    assert abs(det(E)) == 1


@given(random_path(), st.data())
def test_presentation_matrix_det_and_constant_term(p, data):
    m = p.start.n_uf
    x = tuple(data.draw(st.lists(rationals, min_size=m, max_size=m)))
    eps = sign_of_path(p, x)
    assume(all(eps))
    E = presentation_matrix(p, eps)
    assert abs(det(E)) == 1
    assert abs(char_poly(E)[-1]) == 1


@given(random_path())
def test_cg_duality_and_coherence(p):
    for state in cg_path(p):  # cg_step itself asserts sign-coherence and route agreement
        assert transpose(inverse(state.C)) == state.G
        assert abs(det(state.C)) == 1 and abs(det(state.G)) == 1


@given(random_path(max_len=10))
def test_tropical_signs_are_signs_at_positive_point(p):
    l_plus = (1,) * p.start.n_uf
    assert sign_of_path(p, l_plus) == cg_path(p)[-1].signs


# --- surfaces -----------------------------------------------------------------------------

SURFACES = ["annulus_dehn", "sphere4", "genus2", "square"]


@given(st.sampled_from(SURFACES), st.lists(st.integers(1, 9), min_size=1, max_size=8))
def test_flip_mutation_commute_along_random_flips(name, edges):
    T = builtin_triangulation(name)
    seed = b_from_triangulation(T)
    for e in edges:
        alpha = (e - 1) % T.n_interior + 1
        if any(inner == alpha for inner, _ in T.self_folded):
            continue  # tagged flips are out of scope
        T = flip(T, alpha)
        seed = mutate_matrix(seed, alpha - 1)
        assert b_from_triangulation(T).B == seed.B


@given(st.lists(st.integers(1, 6), min_size=1, max_size=8),
       st.lists(rationals, min_size=6, max_size=6))
def test_casimir_invariant_under_flip_paths(edges, x):
    T = builtin_triangulation("sphere4")
    seed = b_from_triangulation(T)
    x = tuple(x)
    theta = casimir(T.puncture_incidence, x)
    for alpha in edges:
        if any(inner == alpha for inner, _ in T.self_folded):
            continue
        x = trop_x_step(seed, alpha - 1, x)
        T = flip(T, alpha)
        seed = mutate_matrix(seed, alpha - 1)
        assert casimir(T.puncture_incidence, x) == theta


# --- orders and spectra -------------------------------------------------------------------

signs = st.lists(st.sampled_from((-1, 0, 1)), min_size=5, max_size=5).map(tuple)


@given(signs, signs, signs)
def test_sign_leq_partial_order(a, b, c):
    assert sign_leq(a, a)
    if sign_leq(a, b) and sign_leq(b, a):
        assert a == b
    if sign_leq(a, b) and sign_leq(b, c):
        assert sign_leq(a, c)


def _power_iteration(E, steps=10_000):
    A = np.abs(np.array(E, dtype=float))
    v = np.ones(len(E))
    lam = 0.0
    for _ in range(steps):
        w = A @ v
        if not np.linalg.norm(w):
            return None
        new = np.linalg.norm(w) / np.linalg.norm(v)
        v = w / np.linalg.norm(w)
        if abs(new - lam) < 1e-15:
            return new
        lam = new
    return None


@given(st.lists(st.integers(0, 4), min_size=4, max_size=4))
def test_perron_root_matches_power_iteration(entries):
    # nonnegative matrices, so the spectral radius of |E| is E's Perron root
    E = ((entries[0], entries[1]), (entries[2], entries[3]))
    root = _power_iteration(E)
    assume(root is not None and root >= 1)
    assert abs(perron_root(E).value - root) < 1e-9


# --- serialization ------------------------------------------------------------------------

@given(random_path())
def test_path_roundtrip(p):
    assert io.path_from_json(io.path_to_json(p)) == p


@given(st.lists(rationals, min_size=1, max_size=9))
def test_point_roundtrip(x):
    assert io.point_from_json(io.point_to_json(x)) == tuple(x)
