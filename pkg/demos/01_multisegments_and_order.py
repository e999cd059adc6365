"""
Multisegments on a cyclic line and the degeneration order
=========================================================
"""

from segcalc import cyclic_line, ms, is_aperiodic, dual, elementary_moves, leq, aperiodic_below
from segcalc.core import load_context, parse_multisegment, support

# A line of order 3: exponents live in Z/3, so L[2,3] is the segment 2 -> 0.
L = cyclic_line(3)
m = ms(L, (0, 0), (1, 1), (2, 2))
print("m =", m)
print("support:", support(m))

# Three simples in a row form a full period, so m is periodic.
print("aperiodic?", is_aperiodic(m))

# Each elementary move merges a linked pair.
for n in sorted(elementary_moves(m)):
    print("  one move down:", n)

# The order is the closure of those moves.
print("L[0,2] below m?", leq(ms(L, (0, 2)), m))
print("m below L[0,2]?", leq(m, ms(L, (0, 2))))

# The maximal aperiodic multisegments below m.
for n in sorted(aperiodic_below(m)):
    print("  maximal aperiodic:", n)

# Text form goes through a context; the order of q^f mod ell sets the line order.
ctx = load_context({"mode": "modular", "ell": 5, "q": 3, "lines": [{"id": "L"}]})
x = parse_multisegment("L[0,1] + L[3,3]", ctx)
print(x, "on a line of order", ctx.line("L").order, "has dual", dual(x))
