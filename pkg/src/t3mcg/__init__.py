"""Mapping class group of the genus-3 splitting surface in the 3-torus.

Subpackages: word algebra over the eight generators, the exact 3x3 ambient
representation, a PL reconstruction of the splitting surface with its curve
and homology machinery, the derived 6x6 surface representation, and a single
verification suite tying them together.
"""

from .words import (
    Generator,
    Macro,
    ParseError,
    Word,
    compose,
    expand_macro,
    free_reduce,
    invert,
    parse_word,
    render,
)
from .rep3 import (
    DeterminantError,
    IDENTITY3,
    decompose_sl3,
    gen_image3,
    is_kernel3,
    word_image3,
)

__all__ = [
    "Generator",
    "Macro",
    "ParseError",
    "Word",
    "compose",
    "expand_macro",
    "free_reduce",
    "invert",
    "parse_word",
    "render",
    "DeterminantError",
    "IDENTITY3",
    "decompose_sl3",
    "gen_image3",
    "is_kernel3",
    "word_image3",
]

__version__ = "0.1.0"
