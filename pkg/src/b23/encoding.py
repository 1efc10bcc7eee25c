"""Trit-to-bit maps: fixed-width A23 and the 12-fusing B23."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .trits import TritString

_A23 = ("00", "01", "10")
_B23_DECODE = {"00": (0,), "01": (1,), "10": (2,), "11": (1, 2)}


@dataclass(frozen=True)
class B23Bitstream:
    """Bits as a '0'/'1' string, MSB first. Length must be even."""

    bits: str = ""

    def __post_init__(self):
        if self.bits.strip("01"):
            bad = next(i for i, c in enumerate(self.bits) if c not in "01")
            raise ValueError(f"invalid bit character {self.bits[bad]!r} at position {bad}")
        if len(self.bits) % 2:
            raise ValueError(f"odd bit length {len(self.bits)}")

    @property
    def bit_length(self) -> int:
        return len(self.bits)

    def __len__(self) -> int:
        return len(self.bits)

    def __str__(self) -> str:
        return self.bits

    def __add__(self, other: "B23Bitstream") -> "B23Bitstream":
        return B23Bitstream(self.bits + other.bits)

    def groups(self) -> list[str]:
        b = self.bits
        return [b[i:i + 2] for i in range(0, len(b), 2)]

    def to_bytes(self) -> bytes:
        """Pack MSB-first; the final byte is zero-padded."""
        if not self.bits:
            return b""
        nbytes = (len(self.bits) + 7) // 8
        return int(self.bits.ljust(nbytes * 8, "0"), 2).to_bytes(nbytes, "big")

    @classmethod
    def from_bytes(cls, data: bytes, bit_length: int) -> "B23Bitstream":
        if bit_length > 8 * len(data):
            raise ValueError(f"bit length {bit_length} exceeds {8 * len(data)} available bits")
        if not data:
            return cls("")
        return cls(format(int.from_bytes(data, "big"), f"0{8 * len(data)}b")[:bit_length])


def _as_bitstream(bits: B23Bitstream | str) -> B23Bitstream:
    return bits if isinstance(bits, B23Bitstream) else B23Bitstream(bits)


def encode_a23(trits: Iterable[int]) -> B23Bitstream:
    return B23Bitstream("".join(_A23[t] for t in TritString(trits)))


def decode_a23(bits: B23Bitstream | str) -> TritString:
    out = []
    for i, g in enumerate(_as_bitstream(bits).groups()):
        if g == "11":
            raise ValueError(f"invalid A23 group '11' at bit {2 * i}")
        out.append(_B23_DECODE[g][0])
    return TritString(out)


def _b23_groups(trits: TritString) -> list[str]:
    # greedy left-to-right: a 1 immediately followed by a 2 always fuses
    out = []
    i, n = 0, len(trits)
    while i < n:
        t = trits[i]
        if t == 1 and i + 1 < n and trits[i + 1] == 2:
            out.append("11")
            i += 2
        else:
            out.append(_A23[t])
            i += 1
    return out


def encode_b23(trits: Iterable[int]) -> B23Bitstream:
    return B23Bitstream("".join(_b23_groups(TritString(trits))))


def decode_b23(bits: B23Bitstream | str) -> TritString:
    out: list[int] = []
    for g in _as_bitstream(bits).groups():
        out.extend(_B23_DECODE[g])
    return TritString(out)


def count_12_pairs(trits: Iterable[int]) -> int:
    """Pairs fused by the greedy B23 scan, i.e. the number of '11' groups."""
    return _b23_groups(TritString(trits)).count("11")


def count_12_substrings(trits: Iterable[int]) -> int:
    """Positions i with trits[i:i+2] == (1, 2).

    Occurrences of 12 can never overlap, so this always equals
    :func:`count_12_pairs`; it is kept as an independent check.
    """
    t = tuple(trits)
    return sum(1 for a, b in zip(t, t[1:]) if a == 1 and b == 2)
