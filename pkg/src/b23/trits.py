"""Trits, trit strings, and the 81-symbol character/ternary coding table."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping


class Trit(enum.IntEnum):
    """A single ternary digit. ``Trit(3)`` raises ``ValueError``."""

    ZERO = 0
    ONE = 1
    TWO = 2


class TritString(tuple):
    """Immutable sequence of trits, most significant first.

    Elements are stored as plain ints in {0, 1, 2}; anything else is rejected
    at construction.
    """

    __slots__ = ()

    def __new__(cls, trits: Iterable[int] = ()) -> "TritString":
        values = tuple(int(t) for t in trits)
        for i, t in enumerate(values):
            if t not in (0, 1, 2):
                raise ValueError(f"invalid trit {t!r} at position {i}")
        return super().__new__(cls, values)

    def __str__(self) -> str:
        return "".join("012"[t] for t in self)

    def __repr__(self) -> str:
        return f"TritString('{self}')"

    def __add__(self, other):
        return TritString(tuple.__add__(self, tuple(other)))

    def __getitem__(self, key):
        item = tuple.__getitem__(self, key)
        if isinstance(key, slice):
            return TritString(item)
        return item

    def value(self) -> int:
        """Positional base-3 value."""
        n = 0
        for t in self:
            n = 3 * n + t
        return n


def parse_trits(text: str) -> TritString:
    """Parse a string of '0', '1', '2' characters."""
    for i, ch in enumerate(text):
        if ch not in "012":
            raise ValueError(f"invalid trit character {ch!r} at position {i}")
    return TritString(ord(ch) - 48 for ch in text)


def to_ternary(n: int, width: int = 0) -> TritString:
    """Base-3 digits of ``n``, MSB first, left-padded with zeros to ``width``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    digits = []
    while n:
        n, r = divmod(n, 3)
        digits.append(r)
    digits = digits or [0]
    digits.extend([0] * (width - len(digits)))
    return TritString(reversed(digits))


class UnsupportedCharacterError(ValueError):
    """A character has no entry in the coding table."""

    def __init__(self, char: str, index: int | None = None):
        self.char = char
        self.index = index
        where = "" if index is None else f" at offset {index}"
        super().__init__(f"unsupported character {char!r}{where}")


class TableMode(str, enum.Enum):
    CORRECTED = "corrected"
    STRICT_PAPER = "strict-paper"


# Symbol column of the coding table, ordered by decimal index 0..80. Row 20 is
# 'T' in the original (a duplicate of row 5); CORRECTED mode puts 'E' there.
# Rows 67/68 are typographic quotes in the original, normalised to ' and ".
_SYMBOLS_STRICT = (
    "W", "N", "B", "C", "D", "T", "F", "G", "H",
    "P", "J", "K", "L", "M", "A", "O", "I", "S",
    "R", "Q", "T", "U", "V", ".", "X", "Y", "Z",
    "z", "p", "b", "w", "x", "e", "f", "g",
    "v", "q", "j", "k", "y", "m", "n", "o", "a",
    "i", "r", "s", "t", "u", "h", " ", "d", "l", "c",
    "!", "$", "^", "%", "√", ",", "*", "/", "=",
    "<", ">", "@", "&", "'", '"', "?", "(", ")",
    "{", "}", "[", "]", "\\", ";", ":", "+", "-",
)
_DUPLICATE_ROW = 20


def _symbols_for(mode: TableMode) -> tuple[str, ...]:
    if mode is TableMode.CORRECTED:
        symbols = list(_SYMBOLS_STRICT)
        symbols[_DUPLICATE_ROW] = "E"
        return tuple(symbols)
    return _SYMBOLS_STRICT


@dataclass(frozen=True)
class SymbolTable:
    """Bijection (or near-bijection, in strict mode) between 81 symbols and 4-trit codes.

    Entry ``i`` pairs a symbol with the width-4 ternary representation of ``i``.
    In strict-paper mode 'T' occupies two rows; encoding picks the lower row and
    both codes decode to 'T'.
    """

    mode: TableMode = TableMode.CORRECTED
    entries: tuple[tuple[str, TritString], ...] = field(init=False, repr=False)
    _encode: Mapping[str, TritString] = field(init=False, repr=False, compare=False)
    _decode: Mapping[TritString, str] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        mode = TableMode(self.mode)
        object.__setattr__(self, "mode", mode)
        entries = tuple((s, to_ternary(i, 4)) for i, s in enumerate(_symbols_for(mode)))
        encode: dict[str, TritString] = {}
        for sym, code in entries:
            encode.setdefault(sym, code)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "_encode", MappingProxyType(encode))
        object.__setattr__(self, "_decode", MappingProxyType({c: s for s, c in entries}))

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, ch: object) -> bool:
        return ch in self._encode

    @property
    def symbols(self) -> frozenset[str]:
        return frozenset(self._encode)

    def encode(self, ch: str, index: int | None = None) -> TritString:
        try:
            return self._encode[ch]
        except KeyError:
            raise UnsupportedCharacterError(ch, index) from None

    def decode(self, code: Iterable[int]) -> str:
        code = TritString(code)
        if len(code) != 4:
            raise ValueError(f"symbol codes are 4 trits, got {len(code)}")
        return self._decode[code]


_TABLES: dict[TableMode, SymbolTable] = {}


def get_table(mode: TableMode | str = TableMode.CORRECTED) -> SymbolTable:
    """Shared table instance for ``mode``."""
    mode = TableMode(mode)
    if mode not in _TABLES:
        _TABLES[mode] = SymbolTable(mode)
    return _TABLES[mode]


def symbol_to_trits(ch: str, table: SymbolTable | None = None) -> TritString:
    return (table or get_table()).encode(ch)


def trits_to_symbol(code: Iterable[int], table: SymbolTable | None = None) -> str:
    return (table or get_table()).decode(code)


@dataclass(frozen=True)
class FrequencyTable:
    """Percent frequencies of English lowercase letters and of word-initial capitals."""

    letter_frequencies: Mapping[str, float]
    first_letter_frequencies: Mapping[str, float]

    def __post_init__(self):
        for name in ("letter_frequencies", "first_letter_frequencies"):
            freqs = getattr(self, name)
            if any(v <= 0 for v in freqs.values()):
                raise ValueError(f"{name}: frequencies must be positive")
            object.__setattr__(self, name, MappingProxyType(dict(freqs)))


ENGLISH_FREQUENCIES = FrequencyTable(
    letter_frequencies={
        "a": 8.167, "b": 1.492, "c": 2.782, "d": 4.253, "e": 12.702,
        "f": 2.228, "g": 2.015, "h": 6.094, "i": 6.966, "j": 0.153,
        "k": 0.772, "l": 4.025, "m": 2.406, "n": 6.749, "o": 7.507,
        "p": 1.929, "q": 0.095, "r": 5.987, "s": 6.327, "t": 9.056,
        "u": 2.758, "v": 0.978, "w": 2.360, "x": 0.150, "y": 1.974,
        "z": 0.074,
    },
    first_letter_frequencies={
        "T": 15.94, "A": 15.5, "I": 8.23, "S": 7.75, "O": 7.12,
        "C": 5.97, "M": 4.26, "F": 4.08, "P": 4.0, "W": 3.82,
    },
)
