"""Exact characteristic polynomials and real-root isolation.

Polynomials are coefficient lists, highest degree first.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor, ceil
from typing import Sequence

from ._linalg import Matrix, matmul


def char_poly(E: Matrix) -> tuple[int, ...]:
    """det(nu I - E) by Faddeev-LeVerrier, exact."""
    n = len(E)
    A = [[Fraction(v) for v in row] for row in E]
    coeffs = [Fraction(1)]
    AM = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{k-1} I, then c_k = -tr(A M_k) / k
        M = [[AM[i][j] + (coeffs[-1] if i == j else 0) for j in range(n)] for i in range(n)]
        AM = matmul(A, M)
        coeffs.append(-sum(AM[i][i] for i in range(n)) / k)
    out = []
    for c in coeffs:
        if c.denominator != 1:
            raise ArithmeticError("non-integral characteristic polynomial coefficient")
        out.append(int(c))
    return tuple(out)


def evaluate(p: Sequence, x):
    acc = 0
    for c in p:
        acc = acc * x + c
    return acc


def derivative(p: Sequence) -> list:
    d = len(p) - 1
    return [c * (d - i) for i, c in enumerate(p[:-1])]


def _trim(p: list) -> list:
    i = 0
    while i < len(p) - 1 and p[i] == 0:
        i += 1
    return p[i:]


def divmod_poly(a: Sequence, b: Sequence) -> tuple[list, list]:
    a = [Fraction(c) for c in a]
    b = _trim([Fraction(c) for c in b])
    if b == [0]:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    r = a[:]
    while len(r) >= len(b) and any(r):
        f = r[0] / b[0]
        q[len(q) - (len(r) - len(b)) - 1] = f
        for i in range(len(b)):
            r[i] -= f * b[i]
        r = r[1:]
    return _trim(q), _trim(r) if r else [Fraction(0)]


def gcd_poly(a: Sequence, b: Sequence) -> list:
    a, b = _trim([Fraction(c) for c in a]), _trim([Fraction(c) for c in b])
    while b != [0]:
        _, r = divmod_poly(a, b)
        a, b = b, r
    return [c / a[0] for c in a]


def squarefree(p: Sequence) -> list:
    g = gcd_poly(p, derivative(p))
    return divmod_poly(p, g)[0]


def sturm_chain(p: Sequence) -> list[list]:
    chain = [[Fraction(c) for c in p], [Fraction(c) for c in derivative(p)]]
    while len(chain[-1]) > 1 or chain[-1][0] != 0:
        _, r = divmod_poly(chain[-2], chain[-1])
        if r == [0]:
            break
        chain.append([-c for c in r])
    return chain


def _variations(chain: list[list], x) -> int:
    signs = [s for s in ((evaluate(q, x) > 0) - (evaluate(q, x) < 0) for q in chain) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(chain: list[list], a, b) -> int:
    """Distinct real roots in (a, b] of the square-free head of ``chain``."""
    return _variations(chain, a) - _variations(chain, b)


@dataclass(frozen=True)
class RealRoot:
    """A real root known to lie in [lower, upper]; ``exact`` when rational."""

    lower: Fraction
    upper: Fraction
    exact: Fraction | None = None

    @property
    def value(self) -> float:
        if self.exact is not None:
            return float(self.exact)
        return float((self.lower + self.upper) / 2)

    @property
    def error_bound(self) -> Fraction:
        return Fraction(0) if self.exact is not None else (self.upper - self.lower) / 2


def largest_real_root(p: Sequence[int], tol: Fraction = Fraction(1, 10**12)) -> RealRoot | None:
    """Largest real root of an integer polynomial by Sturm bisection."""
    q = squarefree(p)
    if len(q) == 1:
        return None
    lead = q[0]
    bound = 1 + max(abs(c / lead) for c in q[1:])
    chain = sturm_chain(q)
    lo, hi = -bound, bound
    if count_roots(chain, lo, hi) == 0:
        return None
    # invariant: the largest root lies in (lo, hi]
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if count_roots(chain, mid, hi) > 0:
            lo = mid
        else:
            hi = mid
    for r in range(floor(lo), ceil(hi) + 1):
        if lo < r <= hi and evaluate(q, r) == 0:
            return RealRoot(Fraction(r), Fraction(r), Fraction(r))
    return RealRoot(Fraction(lo), Fraction(hi))


def is_palindromic_up_to_sign(p: Sequence[int]) -> bool:
    rev = list(reversed(p))
    return list(p) == rev or list(p) == [-c for c in rev]


def same_up_to_sign(p: Sequence[int], q: Sequence[int]) -> bool:
    return list(p) == list(q) or list(p) == [-c for c in q]


def format_poly(p: Sequence[int], var: str = "v") -> str:
    d = len(p) - 1
    terms = []
    for i, c in enumerate(p):
        if c == 0:
            continue
        e = d - i
        mag = abs(c)
        body = ("" if mag == 1 and e else str(mag)) + (var if e else "") + (f"^{e}" if e > 1 else "")
        terms.append(("-" if c < 0 else "+") + " " + body)
    if not terms:
        return "0"
    s = " ".join(terms)
    return s[2:] if s.startswith("+ ") else "-" + s[2:]
