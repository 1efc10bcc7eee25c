"""Text compression with the B23 coding table, plus the container file format."""

from __future__ import annotations

import struct
from dataclasses import dataclass
from typing import Hashable, Sequence

from .encoding import B23Bitstream, count_12_pairs, decode_b23, encode_b23
from .trits import SymbolTable, TableMode, TritString, get_table

MAGIC = b"B23\x01"
VERSION = 1
_HEADER = struct.Struct(">4sBBQ")
_MODE_FLAGS = {TableMode.CORRECTED: 0, TableMode.STRICT_PAPER: 1}
_FLAG_MODES = {v: k for k, v in _MODE_FLAGS.items()}


class ContainerError(ValueError):
    """Malformed, truncated or corrupt container."""


@dataclass(frozen=True)
class Container:
    payload_bit_length: int
    payload: bytes
    table_mode: TableMode = TableMode.CORRECTED
    version: int = VERSION
    magic: bytes = MAGIC

    def __post_init__(self):
        object.__setattr__(self, "table_mode", TableMode(self.table_mode))
        if self.magic != MAGIC:
            raise ContainerError(f"bad magic {self.magic!r}")
        if self.version != VERSION:
            raise ContainerError(f"unsupported version {self.version}")
        n = self.payload_bit_length
        if n < 0 or n % 2:
            raise ContainerError(f"payload bit length must be even and non-negative, got {n}")
        if n > 8 * len(self.payload):
            raise ContainerError(
                f"declared bit length {n} exceeds payload capacity {8 * len(self.payload)}"
            )
        if len(self.payload) != (n + 7) // 8:
            raise ContainerError(
                f"payload is {len(self.payload)} bytes, expected {(n + 7) // 8} for {n} bits"
            )
        pad = 8 * len(self.payload) - n
        if pad and self.payload[-1] & ((1 << pad) - 1):
            raise ContainerError("nonzero padding bits")

    @classmethod
    def from_bits(cls, bits: B23Bitstream, table_mode=TableMode.CORRECTED) -> "Container":
        return cls(bits.bit_length, bits.to_bytes(), table_mode)

    def bits(self) -> B23Bitstream:
        return B23Bitstream.from_bytes(self.payload, self.payload_bit_length)

    def to_bytes(self) -> bytes:
        header = _HEADER.pack(
            self.magic, self.version, _MODE_FLAGS[self.table_mode], self.payload_bit_length
        )
        return header + self.payload

    @classmethod
    def from_bytes(cls, data: bytes) -> "Container":
        if len(data) < _HEADER.size:
            raise ContainerError(f"truncated header ({len(data)} of {_HEADER.size} bytes)")
        magic, version, flag, nbits = _HEADER.unpack_from(data)
        if magic != MAGIC:
            raise ContainerError(f"bad magic {magic!r}")
        if flag not in _FLAG_MODES:
            raise ContainerError(f"unknown table mode flag {flag}")
        return cls(nbits, bytes(data[_HEADER.size:]), _FLAG_MODES[flag], version, magic)


def symbol_bits(table: SymbolTable) -> dict[str, str]:
    """Per-symbol B23 bitstrings (the complete coding table)."""
    return {sym: encode_b23(table.encode(sym)).bits for sym in table.symbols}


_BITS_CACHE: dict[TableMode, dict[str, str]] = {}


def _bits_for(table: SymbolTable) -> dict[str, str]:
    if table.mode not in _BITS_CACHE:
        _BITS_CACHE[table.mode] = symbol_bits(table)
    return _BITS_CACHE[table.mode]


def encode_text(text: str, table: SymbolTable | None = None) -> B23Bitstream:
    """Concatenate per-character B23 codes. 12-pairs never fuse across characters."""
    table = table or get_table()
    codes = _bits_for(table)
    out = []
    for i, ch in enumerate(text):
        if ch not in codes:
            table.encode(ch, i)  # raises with the offset
        out.append(codes[ch])
    return B23Bitstream("".join(out))


def decode_text(bits: B23Bitstream | str, table: SymbolTable | None = None) -> str:
    table = table or get_table()
    trits = decode_b23(bits)
    if len(trits) % 4:
        raise ContainerError(
            f"corrupt or truncated payload: {len(trits)} trits is not a multiple of 4"
        )
    return "".join(table.decode(trits[i:i + 4]) for i in range(0, len(trits), 4))


def compress(text: str, table: SymbolTable | None = None) -> Container:
    table = table or get_table()
    return Container.from_bits(encode_text(text, table), table.mode)


def decompress(container: Container, table: SymbolTable | None = None) -> str:
    """Decode a container; uses the container's table mode unless ``table`` is given."""
    return decode_text(container.bits(), table or get_table(container.table_mode))


def text_trits(text: str, table: SymbolTable | None = None) -> TritString:
    table = table or get_table()
    out: list[int] = []
    for i, ch in enumerate(text):
        out.extend(table.encode(ch, i))
    return TritString(out)


@dataclass(frozen=True)
class CompressionStats:
    input_chars: int
    b23_bits: int
    a23_bits: int
    baseline_bits: int
    pairs_fused: int
    cross_boundary_pairs: int

    @property
    def ratio_vs_baseline(self) -> float:
        return self.b23_bits / self.baseline_bits if self.baseline_bits else 0.0

    @property
    def baseline_overhead(self) -> float:
        """How much larger the 8-bit encoding is, relative to B23 (0.25 = 25%)."""
        return self.baseline_bits / self.b23_bits - 1 if self.b23_bits else 0.0


def stats(text: str, table: SymbolTable | None = None) -> CompressionStats:
    """Bit counts for B23, A23 and 8 bits per character.

    ``cross_boundary_pairs`` is the number of extra 12-pairs a single B23 scan
    over the whole trit stream would fuse where one code ends in 1 and the next
    starts with 2. The codec itself never fuses those.
    """
    table = table or get_table()
    b23_bits = encode_text(text, table).bit_length
    n = len(text)
    pairs = (8 * n - b23_bits) // 2
    global_pairs = count_12_pairs(text_trits(text, table))
    return CompressionStats(
        input_chars=n,
        b23_bits=b23_bits,
        a23_bits=8 * n,
        baseline_bits=8 * n,
        pairs_fused=pairs,
        cross_boundary_pairs=global_pairs - pairs,
    )


@dataclass(frozen=True)
class CodeAssignment:
    pairs: tuple[tuple[Hashable, TritString], ...]

    def __len__(self) -> int:
        return len(self.pairs)

    def as_dict(self) -> dict:
        return dict(self.pairs)

    def codeword(self, symbol) -> TritString:
        return self.as_dict()[symbol]


def assign_codes(
    alphabet: Sequence[tuple[Hashable, float]], codewords: Sequence[Sequence[int]]
) -> CodeAssignment:
    """Give the most probable symbols the codewords with the most 12-pairs.

    Symbols are sorted by descending probability and codewords by descending
    pair count, both stably, then paired index by index.
    """
    codewords = [TritString(c) for c in codewords]
    if len(codewords) < len(alphabet):
        raise ValueError(f"{len(alphabet)} symbols but only {len(codewords)} codewords")
    if len(set(codewords)) != len(codewords):
        raise ValueError("codewords must be distinct")
    symbols = [s for s, _ in alphabet]
    if len(set(symbols)) != len(symbols):
        raise ValueError("symbols must be distinct")
    if any(p < 0 for _, p in alphabet):
        raise ValueError("probabilities must be non-negative")
    by_prob = sorted(alphabet, key=lambda sp: -sp[1])
    by_delta = sorted(codewords, key=lambda c: -count_12_pairs(c))
    return CodeAssignment(tuple((s, c) for (s, _), c in zip(by_prob, by_delta)))
