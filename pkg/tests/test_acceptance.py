"""Acceptance criteria, one test per criterion.

Each test prints a single ``criterion N: PASS|FAIL`` line with the sub-checks
that decided it; the lines are repeated in the pytest terminal summary.
Run ``python3 tests/test_acceptance.py`` to get the lines without pytest.
"""

import random
import time
from fractions import Fraction

import sympy

from signstable._linalg import inverse, transpose
from signstable.catalog import get_example
from signstable.cgmat import SignCoherenceError, cg_path, duality_check
from signstable.seeds import MutationPath, Mut, Swap, apply_path, mutate_matrix, transposition
from signstable.stability import (
    ConeDescription,
    certify_invariant_cone,
    detect_sign_stability,
    entropy,
    hereditary_check,
)
from signstable.surfaces import b_from_triangulation, builtin_triangulation, flip
from signstable.tropical import (
    a_transport,
    apply_loop,
    check_e_matrix,
    e_matrix,
    presentation_matrix,
    sign_of_path,
    trop_a_step,
    trop_ensemble,
    trop_x_step,
    x_transport,
)

from oracles import (
    SPHERE4_QUOTED_ATTRACTOR,
    SPHERE4_TABLE_MINUS,
    SPHERE4_TABLE_PLUS,
    largest_real_eigenvalue_sympy,
    random_rational,
    signs_to_text,
)

SEED = 20240601
LINES: dict[int, str] = {}


def report(n: int, checks: list[tuple[str, bool]]) -> None:
    ok = all(v for _, v in checks)
    detail = "; ".join(f"{name}: {'ok' if v else 'FAILED'}" for name, v in checks)
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})"
    LINES[n] = line
    print(line)
    failed = [name for name, v in checks if not v]
    assert not failed, f"criterion {n} failed sub-checks: {failed}"


def random_point(rng, n):
    return tuple(random_rational(rng) for _ in range(n))


def random_path(rng, seed, max_len=12):
    m = seed.n_uf
    steps = []
    for _ in range(rng.randint(0, max_len)):
        if m > 1 and rng.random() < 0.2:
            i, j = rng.sample(range(m), 2)
            steps.append(Swap(i, j))
        else:
            steps.append(Mut(rng.randrange(m)))
    return MutationPath(seed, tuple(steps))


# --- 1 -----------------------------------------------------------------------------------

def test_criterion_1_pentagon():
    rng = random.Random(SEED)
    p = get_example("a2").path
    pts = [random_point(rng, 2) for _ in range(100)]
    t0 = time.perf_counter()
    x_ok = all(x_transport(p, x)[0] == x for x in pts)
    a_ok = all(a_transport(p, x)[0] == x for x in pts)
    elapsed = time.perf_counter() - t0
    report(1, [
        ("100 random X-points fixed exactly", x_ok),
        ("100 random A-points fixed exactly", a_ok),
        (f"runtime {elapsed:.3f}s < 1s", elapsed < 1.0),
    ])


# --- 2 -----------------------------------------------------------------------------------

def test_criterion_2_kronecker():
    rep2 = detect_sign_stability(get_example("kronecker(2)").path)
    rep3 = detect_sign_stability(get_example("kronecker(3)").path)
    lam3 = (3 + sympy.sqrt(5)) / 2
    cone = ConeDescription(((1, 0), (1, 1)), 2)
    report(2, [
        ("l=2 consensus (+) from l+ and l-", rep2.consensus == (1,) and len(rep2.samples) == 2),
        ("l=2 stable matrix [[2,1],[-1,0]]", rep2.stable_matrix == ((2, 1), (-1, 0))),
        ("l=2 lambda = 1 exactly", rep2.perron is not None and rep2.perron.exact == 1),
        ("l=3 lambda = (3+sqrt5)/2 within 1e-9",
         rep3.perron is not None and abs(rep3.perron.value - float(lam3)) < 1e-9),
        ("cone {x1>=0, x1+x2>=0} proved invariant",
         certify_invariant_cone(((2, 1), (-1, 0)), cone).status == "proved"),
    ])


# --- 3 -----------------------------------------------------------------------------------

def test_criterion_3_dehn_twist():
    rep = detect_sign_stability(get_example("annulus_dehn").path)
    full = rep.stable_matrix_full
    expected = ((2, 1, 0, 0), (-1, 0, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))
    report(3, [
        ("consensus (+)", rep.consensus == (1,)),
        ("stable matrix is [[2,1],[-1,0]] plus identity", full == expected),
        ("lambda = 1 exactly", rep.perron is not None and rep.perron.exact == 1),
        ("entropy = 0 exactly", rep.perron is not None and entropy(rep) == 0.0),
    ])


# --- 4 -----------------------------------------------------------------------------------

def test_criterion_4_sphere_pseudo_anosov():
    ex = get_example("sphere4_pa")
    p = ex.path
    t0 = time.perf_counter()
    plus = [signs_to_text(e) for _, e in apply_loop(p, (1,) * 6, 5)]
    minus = [signs_to_text(e) for _, e in apply_loop(p, (-1,) * 6, 5)]
    rep = detect_sign_stability(p)
    E = rep.stable_matrix
    lam = rep.perron.value
    oracle = largest_real_eigenvalue_sympy(E)
    # quoted attracting coordinates, sqrt5 to 30 digits
    x = [sympy.N(v, 30) for v in SPHERE4_QUOTED_ATTRACTOR]
    Ex = [sum(sympy.Integer(E[i][j]) * x[j] for j in range(6)) for i in range(6)]
    eigen_ok = all(abs(Ex[i] - sympy.Float(lam, 30) * x[i]) < 1e-9 for i in range(6))
    elapsed = time.perf_counter() - t0
    report(4, [
        ("table from l+ rows 1-5", plus == SPHERE4_TABLE_PLUS),
        ("table from l- rows 1-5", minus == SPHERE4_TABLE_MINUS),
        ("consensus (+,-,-,+)", rep.consensus == (1, -1, -1, 1)),
        ("quoted attracting vector satisfies E x = lambda x within 1e-9", eigen_ok),
        ("lambda within 1e-6 of the exact largest root", abs(lam - float(oracle)) < 1e-6
         and abs(lam - 2.618033989) < 1e-6),
        (f"runtime {elapsed:.2f}s < 5s", elapsed < 5.0),
    ])


# --- 5 -----------------------------------------------------------------------------------

def test_criterion_5_genus_two_counterexample():
    ex = get_example("genus2_dehn")
    gp = ex.extra_paths["gamma_prime"]
    point = ex.points["curve_quoted"]  # x6 = 1, x7 = -1, rest 0
    rep_p = detect_sign_stability(gp, [point])
    observed = rep_p.samples[0].sign
    rep = detect_sign_stability(ex.path)
    report(5, [
        ("gamma' is not strict at the curve point", rep_p.non_strict and rep_p.consensus is None),
        (f"gamma' sign is (-,0,0) (observed {signs_to_text(observed)})", observed == (-1, 0, 0)),
        ("hereditariness fails for gamma'", not hereditary_check(gp, [point], observed)),
        ("gamma consensus (+)", rep.consensus == (1,)),
        ("gamma lambda = 1", rep.perron is not None and rep.perron.exact == 1),
    ])


# --- 6 -----------------------------------------------------------------------------------

def test_criterion_6_dualities():
    rng = random.Random(SEED)
    pool = [get_example(n).seed for n in ("a2", "kronecker(2)", "kronecker(3)", "sphere4_pa")]
    duality = coherence = elementary = True
    for _ in range(200):
        p = random_path(rng, rng.choice(pool))
        try:
            states = cg_path(p)
        except SignCoherenceError:
            coherence = False
            continue
        duality &= all(duality_check(s) for s in states)
        seed = p.start
        for st in p.steps:
            if isinstance(st, Mut):
                for eps in (1, -1):
                    E = e_matrix(seed, st.k, eps, side="full")
                    elementary &= transpose(E) == inverse(check_e_matrix(seed, st.k, eps))
            seed = apply_path(MutationPath(seed, (st,)))
    spectral = True
    for name in ("kronecker(2)", "kronecker(3)", "annulus_dehn", "sphere4_pa", "genus2_dehn"):
        rep = detect_sign_stability(get_example(name).path)
        spectral &= rep.spectral_duality is True
    report(6, [
        ("G C^T = I on 200 random paths", duality),
        ("sign-coherence never violated", coherence),
        ("E^T = inverse of the check matrix for every step", elementary),
        ("spectral duality on every stable matrix", spectral),
    ])


# --- 7 -----------------------------------------------------------------------------------

def _count(rng, trials, make_case, check, need=100):
    """Run ``check`` on cases from ``make_case`` until ``need`` valid ones passed."""
    done = 0
    for _ in range(trials):
        case = make_case(rng)
        if case is None:
            continue
        if not check(*case):
            return done, False
        done += 1
        if done >= need:
            return done, True
    return done, False


def test_criterion_7_property_suites():
    rng = random.Random(SEED)
    seeds = [get_example(n).seed for n in
             ("a2", "kronecker(2)", "kronecker(3)", "annulus_dehn", "sphere4_pa", "genus2_dehn")]
    results = []

    def seed_point_k(r, side="x"):
        s = r.choice(seeds)
        return s, random_point(r, s.n_uf if side == "x" else s.n), r.randrange(s.n_uf)

    results.append(("involutivity", _count(
        rng, 100, seed_point_k,
        lambda s, x, k: trop_x_step(mutate_matrix(s, k), k, trop_x_step(s, k, x)) == x)))

    def homog_case(r):
        s, x, k = seed_point_k(r)
        return s, x, k, Fraction(r.randint(1, 50), r.randint(1, 7))
    results.append(("homogeneity", _count(
        rng, 100, homog_case,
        lambda s, x, k, lam: trop_x_step(s, k, tuple(lam * v for v in x))
        == tuple(lam * v for v in trop_x_step(s, k, x)))))

    def scale_case(r):
        p = random_path(r, r.choice(seeds))
        return p, random_point(r, p.start.n_uf), Fraction(r.randint(1, 50), r.randint(1, 7))
    results.append(("sign scale-invariance", _count(
        rng, 100, scale_case,
        lambda p, x, lam: sign_of_path(p, tuple(lam * v for v in x)) == sign_of_path(p, x))))

    def fd_case(r):
        p = random_path(r, r.choice(seeds))
        m = p.start.n_uf
        x = random_point(r, m)
        eps = sign_of_path(p, x)
        if not all(eps):
            return None
        i = r.randrange(m)
        delta = Fraction(r.choice((-1, 1)), r.randint(1, 8))
        for _ in range(60):
            y = tuple(v + (delta if j == i else 0) for j, v in enumerate(x))
            if sign_of_path(p, y) == eps:
                return p, x, y, i, delta, eps
            delta /= 2
        return None

    def fd_check(p, x, y, i, delta, eps):
        E = presentation_matrix(p, eps)
        diff = tuple(a - b for a, b in zip(x_transport(p, y)[0], x_transport(p, x)[0]))
        return diff == tuple(row[i] * delta for row in E)
    results.append(("finite differences", _count(rng, 1000, fd_case, fd_check)))

    results.append(("ensemble equivariance", _count(
        rng, 100, lambda r: seed_point_k(r, "a"),
        lambda s, a, k: trop_ensemble(mutate_matrix(s, k), trop_a_step(s, k, a))
        == trop_x_step(s, k, trop_ensemble(s, a)))))

    multi = [s for s in seeds if s.n_uf > 1]

    def nat_case(r):
        s = r.choice(multi)
        i, j = r.sample(range(s.n_uf), 2)
        return s, random_point(r, s.n_uf), i, j, r.randrange(s.n_uf)

    def nat_check(s, x, i, j, k):
        rho = transposition(s.n, i, j)
        a = MutationPath(s, (Swap(i, j), Mut(rho[k])))
        b = MutationPath(s, (Mut(k), Swap(i, j)))
        return apply_path(a) == apply_path(b) and x_transport(a, x) == x_transport(b, x)
    results.append(("naturality square", _count(rng, 100, nat_case, nat_check)))

    surfaces = ["annulus_dehn", "sphere4", "genus2", "square"]

    def flip_case(r):
        T = builtin_triangulation(r.choice(surfaces))
        return T, [r.randint(1, T.n_interior) for _ in range(r.randint(1, 8))]

    def flip_check(T, edges):
        seed = b_from_triangulation(T)
        for alpha in edges:
            if any(inner == alpha for inner, _ in T.self_folded):
                continue
            T = flip(T, alpha)
            seed = mutate_matrix(seed, alpha - 1)
            if b_from_triangulation(T).B != seed.B:
                return False
        return True
    results.append(("flip/mutation commutation", _count(rng, 100, flip_case, flip_check)))

    report(7, [(f"{name} ({n} cases)", ok and n >= 100) for name, (n, ok) in results])


if __name__ == "__main__":
    for fn in (test_criterion_1_pentagon, test_criterion_2_kronecker, test_criterion_3_dehn_twist,
               test_criterion_4_sphere_pseudo_anosov, test_criterion_5_genus_two_counterexample,
               test_criterion_6_dualities, test_criterion_7_property_suites):
        try:
            fn()
        except AssertionError:
            pass
