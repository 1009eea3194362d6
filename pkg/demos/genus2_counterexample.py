"""Two s-equivalent paths for the same Dehn twist on a genus two surface.

gamma = (6, (2 6)) is sign-stable; gamma' = (6, 9, 9, (2 6)) inserts a
trivial back-and-forth at arc 9 and hits a wall at the curve itself.
"""

from signstable.catalog import get_example
from signstable.stability import detect_sign_stability, hereditary_failures
from signstable.tropical import format_sign

ex = get_example("genus2_dehn")
curve = ex.points["curve_quoted"]

rep = detect_sign_stability(ex.path)
print("gamma :", format_sign(rep.consensus), "stretch", rep.perron.value)

rep = detect_sign_stability(ex.extra_paths["gamma_prime"], [curve])
rec = rep.samples[0]
print("gamma':", rec.describe())
print("hereditary failures at steps", hereditary_failures(ex.extra_paths["gamma_prime"], [curve], rec.sign))
