"""
Rankin-Selberg L-factors of pairs of multisegments
==================================================
"""

from segcalc import expand, l_multisegment, load_context, ms, gcd_poly
from segcalc.lfactor import ratio_aperiodic, ratio_red
from segcalc.core import Segment
from segcalc.polymod import PolyModEll

# ell = 5, q = 3: the self-dual line L has order 4.
ctx = load_context({"mode": "modular", "ell": 5, "q": 3, "lines": [{"id": "L"}]})
L = ctx.line("L")

m, n = ms(L, (0, 0), (1, 1)), ms(L, (0, 0))
Linv = l_multisegment(m, n, ctx)
print("L(m, n)        =", Linv)
print("expanded L^-1  =", expand(Linv, ctx), f"(mod {ctx.ell})")

# Merging a periodic pair divides out the factors predicted from n.
print("periodic pair :", ratio_aperiodic(m, n, Segment(L, 0, 1), ctx))
# Shortening a longest segment on the left does the same.
print("longest segment:", ratio_red(ms(L, (0, 1)), ms(L, (0, 1)), ctx))

# Distinct factors are coprime over GF(5).
print("gcd(1-X, 1-2X) =", gcd_poly(PolyModEll.binomial(1, 1, 5), PolyModEll.binomial(2, 1, 5)))
print("gcd(1-X^2, 1-X) =", gcd_poly(PolyModEll.binomial(1, 2, 5), PolyModEll.binomial(1, 1, 5)))

# A second line with f = 2 has order 2 and contributes factors in X^2.
ctx2 = ctx.with_line("M", f=2, twist=2)
M = ctx2.line("M")
print("order of M:", M.order, " L(M[0,1], M[0,0]) =", l_multisegment(ms(M, (0, 1)), ms(M, (0, 0)), ctx2))
