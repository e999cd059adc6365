"""
How far do the degenerate Serre relations reach?
================================================

Two words with the same multisegment should be related by commuting
non-neighbours and a few degenerate rewrites.  We compare rewrite classes with
the fibres of m_gen by brute force.
"""

from collections import defaultdict

from segcalc import cyclic_line, m_gen, serre_equivalent, word
from segcalc.enumerate import words
from segcalc.genext import serre_class


def first_gap(o, relations, max_len=7):
    L = cyclic_line(o)
    for k in range(1, max_len + 1):
        fibres = defaultdict(set)
        for w in words(L, k):
            fibres[m_gen(w)].add(tuple(x.i for x in w))
        for m, fibre in sorted(fibres.items()):
            cls = serre_class(word(L, min(fibre)), relations)
            if cls != fibre:
                other = min(fibre - cls)
                return k, m, min(fibre), other
    return None


for o, relations in [(2, "literal"), (2, "cyclic"), (3, "printed"), (3, "cyclic"), (4, "cyclic")]:
    gap = first_gap(o, relations)
    if gap is None:
        print(f"o={o} {relations:8s}: complete up to length 7")
    else:
        k, m, u, v = gap
        print(f"o={o} {relations:8s}: first gap at length {k}: "
              f"{''.join(map(str, u))} and {''.join(map(str, v))} both give {m}")

# The full-cycle rewrite is what closes the gap at length 5 for o = 3.
L = cyclic_line(3)
print(serre_equivalent(word(L, "00210"), word(L, "02100")),
      serre_equivalent(word(L, "00210"), word(L, "02100"), relations="printed"))
