"""Combinatorics of multisegments on cuspidal lines.

The subpackages cover the arithmetic context and multisegment algebra
(``core``), the degeneration order (``order``), the generic-extension monoid
and its words (``genext``), Rankin-Selberg L-factors (``lfactor``) and a
brute-force cyclic-quiver oracle over GF(p) (``quiver_oracle``).
"""

from .core import (
    Context,
    CuspidalLine,
    EMPTY,
    Mode,
    Multisegment,
    ParseError,
    SegcalcError,
    Segment,
    banal_split,
    cyclic_line,
    degree,
    dual,
    e_of,
    is_aperiodic,
    line_order,
    load_context,
    make_context,
    ms,
    parse_multisegment,
)
from .genext import (
    left_add,
    m_gen,
    right_add,
    serre_equivalent,
    star,
    word,
    word_dual,
    word_of,
    words_below,
)
from .lfactor import LFactorInv, expand, l_multisegment, l_segment
from .order import aperiodic_below, down_set, elementary_moves, leq
from .polymod import PolyModEll, gcd_poly

__version__ = "0.1.0"

__all__ = [
    "banal_split",
    "Context",
    "CuspidalLine",
    "cyclic_line",
    "degree",
    "dual",
    "e_of",
    "EMPTY",
    "is_aperiodic",
    "left_add",
    "line_order",
    "load_context",
    "m_gen",
    "make_context",
    "Mode",
    "ms",
    "Multisegment",
    "parse_multisegment",
    "ParseError",
    "right_add",
    "SegcalcError",
    "Segment",
    "serre_equivalent",
    "star",
    "word",
    "word_dual",
    "word_of",
    "words_below",
    "LFactorInv",
    "expand",
    "l_multisegment",
    "l_segment",
    "aperiodic_below",
    "down_set",
    "elementary_moves",
    "leq",
    "PolyModEll",
    "gcd_poly",
    "__version__",
]
