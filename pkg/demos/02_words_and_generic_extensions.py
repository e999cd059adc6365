"""
Words, simple products and the generic-extension monoid
=======================================================
"""

from segcalc import cyclic_line, ms, m_gen, word, word_of, star, left_add, right_add
from segcalc.genext import format_word, words_below

L = cyclic_line(3)

# Adding a simple on the right extends the longest segment ending just before it.
print(right_add(ms(L, (0, 0)), 1, L))
# Adding it on the left extends the longest segment starting just after it.
print(left_add(2, ms(L, (0, 0)), L))

# A word folds these simple products.
for w in ["01", "012", "010", "001", "0120"]:
    print(f"m_gen({w}) = {m_gen(word(L, w))}")

# Going back: word_of picks one word for any aperiodic multisegment.
m = ms(L, (0, 1), (2, 3), (1, 1))
w = word_of(m)
print("word of", m, "is", format_word(w), "->", m_gen(w))

# star multiplies aperiodic multisegments through their words.
a, b, c = ms(L, (0, 0)), ms(L, (1, 1)), ms(L, (2, 2))
print("([0]*[1])*[2] =", star(star(a, b), c), " [0]*([1]*[2]) =", star(a, star(b, c)))

# Words whose multisegment lies below a given one.
print(sorted(format_word(w) for w in words_below(ms(L, (0, 0), (1, 1)))))
