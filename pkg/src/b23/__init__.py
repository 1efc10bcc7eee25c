"""B23 ternary text compression."""

from .codec import (
    CodeAssignment,
    CompressionStats,
    Container,
    ContainerError,
    assign_codes,
    compress,
    decompress,
    stats,
)
from .encoding import (
    B23Bitstream,
    count_12_pairs,
    decode_a23,
    decode_b23,
    encode_a23,
    encode_b23,
)
from .trits import (
    ENGLISH_FREQUENCIES,
    FrequencyTable,
    SymbolTable,
    TableMode,
    Trit,
    TritString,
    UnsupportedCharacterError,
    get_table,
    parse_trits,
    symbol_to_trits,
    to_ternary,
    trits_to_symbol,
)

__version__ = "0.1.0"
