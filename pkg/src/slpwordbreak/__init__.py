"""Word Break on grammar-compressed (SLP) text."""

from .boolmat import BoolMatrix, BoolVector, mat_mul, vec_mat
from .dictionary import Dictionary, build_dictionary
from .engine import (
    WordBreakIndex, build_index, folklore_solve, load_index, query, save_index, solve,
    solve_compressed, witness,
)
from .errors import (
    DictionaryError, ExpansionTooLarge, IndexFormatError, MemoryBudgetError, PositionError,
    SlpError, WordBreakError,
)
from .slp import (
    Binary, Slp, SlpBuilder, Terminal, balance, build_balanced_slp, decompose, expand,
    extract, format_slp, parse_slp,
)

__version__ = "0.1.0"

__all__ = [
    "Binary", "BoolMatrix", "BoolVector", "Dictionary", "DictionaryError", "ExpansionTooLarge",
    "IndexFormatError", "MemoryBudgetError", "PositionError", "Slp", "SlpBuilder", "SlpError",
    "Terminal", "WordBreakError", "WordBreakIndex", "balance", "build_balanced_slp",
    "build_dictionary", "build_index", "decompose", "expand", "extract", "folklore_solve",
    "format_slp", "load_index", "mat_mul", "parse_slp", "query", "save_index", "solve",
    "solve_compressed", "vec_mat", "witness",
]
