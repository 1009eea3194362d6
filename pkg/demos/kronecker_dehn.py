"""Kronecker loops: l = 2 is a Dehn twist (stretch 1), l = 3 stretches by (3+sqrt5)/2."""

from signstable.catalog import get_example
from signstable.stability import detect_sign_stability, entropy, stretch_factor
from signstable.tropical import format_sign

for name in ("kronecker(2)", "kronecker(3)", "annulus_dehn"):
    rep = detect_sign_stability(get_example(name).path)
    print(name)
    print("  stable sign     ", format_sign(rep.consensus))
    print("  stable matrix   ", rep.stable_matrix)
    print("  stretch factor  ", f"{stretch_factor(rep):.12f}")
    print("  entropy         ", f"{entropy(rep):.12f}")
    print("  invariant cone  ", rep.cone.rows, rep.cone_certificate)
