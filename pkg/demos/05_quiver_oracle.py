"""
A brute-force check with cyclic quiver representations over GF(101)
===================================================================
"""

from segcalc import cyclic_line, leq, ms, right_add
from segcalc.quiver_oracle import (
    build_rep, ext_space, generic_ext_oracle, hom_dim, hom_leq, orbit_dim,
    recover_multisegment, sample_extensions,
)

L = cyclic_line(3)

# Every multisegment is a direct sum of strings; the maps are shift matrices.
M = build_rep(ms(L, (0, 2), (1, 1)))
print("dims", M.dims)
for i, T in enumerate(M.maps):
    print(f"T_{i} =\n{T}")
print("recovered:", recover_multisegment(M, L))

# Orbit dimension falls as the representation degenerates.
for m in (ms(L, (0, 1)), ms(L, (0, 0), (1, 1))):
    print(m, "orbit dim", orbit_dim(build_rep(m)))

# Hom dimensions decide the order.
print("hom_leq:", hom_leq(ms(L, (0, 1)), ms(L, (0, 0), (1, 1))), " leq:", leq(ms(L, (0, 1)), ms(L, (0, 0), (1, 1))))

# Extensions of [0,0] by [1,1] (quotient first), and the generic one.
m, n = ms(L, (0, 0)), ms(L, (1, 1))
print("Ext^1 dimension:", ext_space(build_rep(m), build_rep(n)).dimension)
print("sampled:", sorted({(str(x), d) for x, d in sample_extensions(m, n, samples=4)}))
print("generic:", generic_ext_oracle(m, n), " recursion:", right_add(m, 1, L))
print("hom(L[0,0], L[0,1]) =", hom_dim(build_rep(ms(L, (0, 0))), build_rep(ms(L, (0, 1)))))
