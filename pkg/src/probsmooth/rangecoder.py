"""Byte-oriented range coder with exact carry propagation.

The encoder keeps a 64-bit window [low, low+range) of the code interval,
emits the top byte whenever range falls below 2**48, and resolves carries by
incrementing already-emitted bytes (a pending carry can never run past the
front of the buffer: emitted bytes B always satisfy B < 256**len, because
low + range never exceeds the scale). Frequencies use a 2**24 total, so the
per-symbol precision loss is below 2**-24 nats, and finishing costs exactly
four bytes.
"""

from __future__ import annotations

import numpy as np

FREQ_BITS = 24
FREQ_TOTAL = 1 << FREQ_BITS

_MASK64 = (1 << 64) - 1
_RENORM = 1 << 48
_FLUSH_ALIGN = 1 << 32


class TruncatedStream(ValueError):
    """The decoder needed more payload bytes than the stream provides."""


def _propagate_carry(buf: bytearray) -> None:
    i = len(buf) - 1
    while i >= 0 and buf[i] == 0xFF:
        buf[i] = 0
        i -= 1
    if i < 0:
        raise RuntimeError("carry ran past the front of the stream (coder bug)")
    buf[i] += 1


class RangeEncoder:
    def __init__(self):
        self.low = 0
        self.range = _MASK64
        self.out = bytearray()
        self._count = 0

    def encode(self, cum: int, freq: int, total: int = FREQ_TOTAL) -> None:
        """Narrow the interval to the slice [cum, cum+freq) of ``total``."""
        if freq < 1 or cum < 0 or cum + freq > total:
            raise ValueError(f"bad frequency slice [{cum}, {cum + freq}) of {total}")
        r = self.range // total
        self.low += r * cum
        if self.low > _MASK64:
            self.low &= _MASK64
            _propagate_carry(self.out)
        if cum + freq < total:
            self.range = r * freq
        else:
            self.range -= r * cum  # hand the division remainder to the top slice
        while self.range < _RENORM:
            self.out.append(self.low >> 56)
            self.low = (self.low << 8) & _MASK64
            self.range <<= 8
        self._count += 1

    def finish(self) -> bytes:
        """Close the stream; empty if nothing was encoded."""
        if self._count == 0:
            return bytes(self.out)
        value = self.low + ((-self.low) & (_FLUSH_ALIGN - 1))
        if value > _MASK64:
            value &= _MASK64
            _propagate_carry(self.out)
        self.out += (value >> 32).to_bytes(4, "big")
        return bytes(self.out)


class RangeDecoder:
    """Mirror of the encoder; reads at most four bytes past the payload."""

    def __init__(self, data: bytes):
        self._data = data
        self._pos = 0
        self._past_end = 0
        self.range = _MASK64
        self.value = 0
        for _ in range(8):
            self.value = (self.value << 8) | self._next_byte()

    def _next_byte(self) -> int:
        if self._pos < len(self._data):
            b = self._data[self._pos]
            self._pos += 1
            return b
        self._past_end += 1
        if self._past_end > 4:
            raise TruncatedStream("payload ended before the sequence was decoded")
        return 0

    def decode_target(self, total: int = FREQ_TOTAL) -> int:
        """Cumulative-frequency position of the next symbol."""
        r = self.range // total
        return min(self.value // r, total - 1)

    def consume(self, cum: int, freq: int, total: int = FREQ_TOTAL) -> None:
        """Account for the symbol at slice [cum, cum+freq); mirrors encode()."""
        r = self.range // total
        self.value -= r * cum
        if cum + freq < total:
            self.range = r * freq
        else:
            self.range -= r * cum
        if not 0 <= self.value:
            raise ValueError("corrupt payload: code value left the interval")
        while self.range < _RENORM:
            self.value = ((self.value << 8) | self._next_byte()) & _MASK64
            self.range <<= 8
        if self.value >= self.range:
            raise ValueError("corrupt payload: code value left the interval")


def quantize_distribution(p, total: int = FREQ_TOTAL) -> np.ndarray:
    """Scale a probability vector to integer frequencies summing to ``total``.

    Every letter gets at least 1 so any symbol stays decodable; the rounding
    remainder goes to the most probable letter.
    """
    p = np.asarray(p, dtype=float)
    n = p.size
    if n >= total:
        raise ValueError(f"alphabet of {n} letters cannot fit a total of {total}")
    freqs = 1 + (p * (total - n)).astype(np.int64)  # truncation == floor for p >= 0
    freqs[int(np.argmax(p))] += total - int(freqs.sum())
    return freqs
