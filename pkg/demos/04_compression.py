"""From predictions to bytes: the arithmetic-coding back end.

Any of the sequential models can drive the range coder. The payload tracks
the model's ideal code length to within a few dozen bits, and the stream
header carries everything needed to decode in isolation.
"""

import math

import numpy as np

from probsmooth import ModelConfig, decode, encode, model_code_length, parse_header

rng = np.random.default_rng(3)

# ---------------------------------------------------------------------------
# A bursty binary source: long runs of 1s with occasional 2s.
letters = np.where(rng.random(20_000) < 0.03, 2, 1).astype(np.int64)

for name in ("PS1", "PS2", "KT", "KT-CS", "PTW-KT"):
    config = ModelConfig.for_sequence(name, 2, letters.size)
    stream = encode(config, letters)
    _, _, header = parse_header(stream)
    payload_bits = 8 * (len(stream) - header)
    ideal_bits = model_code_length(config.fresh(), letters).total / math.log(2)
    assert np.array_equal(decode(stream), letters)
    print(f"{name:7s} payload {payload_bits:7d} bits  ideal {ideal_bits:9.1f}  "
          f"overhead {payload_bits - ideal_bits:5.1f} bits  "
          f"({payload_bits / letters.size:.4f} bits/letter)")

# ---------------------------------------------------------------------------
# Byte-oriented compression: letters 1..256 are raw byte values plus one.
text = (b"probability smoothing turns a stream of letters into a stream of "
        b"predictions, and the coder turns predictions into bytes. " * 120)
byte_letters = np.frombuffer(text, dtype=np.uint8).astype(np.int64) + 1
config = ModelConfig.for_sequence("PS1", 256, byte_letters.size)
stream = encode(config, byte_letters)
print(f"\nenglish-ish text: {len(text)} bytes -> {len(stream)} bytes "
      f"({8 * len(stream) / len(text):.3f} bits/byte)")
assert bytes((decode(stream) - 1).astype(np.uint8)) == text

# ---------------------------------------------------------------------------
# The header is self-describing: model id, parameters, alphabet, length.
parsed, length, header_size = parse_header(stream)
print(f"header: model={parsed.name} params={parsed.params} n={parsed.n} "
      f"letters={length} ({header_size} header bytes)")
