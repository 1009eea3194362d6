"""Pseudo-Anosov loop on the four-punctured sphere: sign orbits and the stretch factor."""

from signstable.catalog import get_example
from signstable.polynomials import char_poly, format_poly
from signstable.stability import detect_sign_stability
from signstable.tropical import apply_loop, format_sign

p = get_example("sphere4_pa").path
for start in ((1,) * 6, (-1,) * 6):
    print("orbit of", start)
    for n, (_, eps) in enumerate(apply_loop(p, start, 5), 1):
        print(f"  n={n}  {format_sign(eps)}")

rep = detect_sign_stability(p)
print("stable sign:", format_sign(rep.consensus))
print("char poly:  ", format_poly(char_poly(rep.stable_matrix)))
print("stretch:    ", f"{rep.perron.value:.12f}")
print("direction:  ", tuple(round(v, 6) for v in rep.eigen_direction))
print("duality:    ", rep.spectral_duality)
