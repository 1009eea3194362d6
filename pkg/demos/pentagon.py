"""The A2 pentagon loop acts trivially on tropical points and on C-matrices."""

from fractions import Fraction

from signstable.catalog import get_example
from signstable.cgmat import cg_path
from signstable.tropical import format_sign, x_transport

p = get_example("a2").path
for x in [(1, 0), (Fraction(-3, 2), 2), (5, -7)]:
    y, eps = x_transport(p, x)
    print(f"{x} -> {y}   sign {format_sign(eps)}")

print("C after the loop:", cg_path(p)[-1].C)
