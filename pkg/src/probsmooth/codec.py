"""Self-describing compressed streams: header plus range-coded payload.

Layout (all integers big-endian):

    magic            4 bytes  b"SMC1"
    alphabet_size    u16
    model_id         u8
    param_block      u16 length prefix + that many bytes (model parameters)
    original_length  u64      letters in the uncompressed sequence
    payload          range-coded bytes

The coded letters (1..n) are driven through the declared model on both
sides; the decoder rebuilds the exact encoder model from the header, so the
stream is decodable in isolation. Frequencies are the model's prediction
quantized to a 2**24 grid with a floor of one count per letter.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass, field

import numpy as np

from .distributions import check_alphabet_size
from .models.kt import KtModel
from .models.ps import PsModel, PsParams, fixed_schedule
from .models.ptw import PtwModel
from .rangecoder import RangeDecoder, RangeEncoder, TruncatedStream, quantize_distribution

MAGIC = b"SMC1"

MODEL_IDS = {
    "PS1": 1,
    "PS2": 2,
    "KT": 3,
    "KT-CS": 4,
    "KT-H": 5,
    "KT-R": 6,
    "PTW-KT": 7,
}
MODEL_NAMES = {v: k for k, v in MODEL_IDS.items()}

_PARAM_FORMATS = {
    "PS1": (">dd", ("alpha", "eps")),
    "PS2": ("", ()),
    "KT": ("", ()),
    "KT-CS": (">d", ("discount",)),
    "KT-H": (">I", ("period",)),
    "KT-R": ("", ()),
    "PTW-KT": (">B", ("depth",)),
}


class CodecError(ValueError):
    """Malformed stream, unusable parameters, or an unencodable letter."""


def normalize_model_name(name: str) -> str:
    canonical = name.strip().upper().replace("_", "-")
    if canonical not in MODEL_IDS:
        known = ", ".join(MODEL_IDS)
        raise CodecError(f"unknown model {name!r}; expected one of {known}")
    return canonical


@dataclass(frozen=True)
class ModelConfig:
    """A model identity plus the resolved parameters a stream header carries."""

    name: str
    n: int
    params: dict = field(default_factory=dict)

    @classmethod
    def for_sequence(cls, name: str, n: int, length: int,
                     alpha: float | None = None, eps: float | None = None,
                     discount: float = 0.98) -> "ModelConfig":
        """Resolve default parameters for coding ``length`` letters over 1..n."""
        name = normalize_model_name(name)
        check_alphabet_size(n)
        length = int(length)
        params: dict = {}
        if name == "PS1":
            default_alpha, default_eps = fixed_schedule(n, max(length, 2))
            params = {"alpha": default_alpha if alpha is None else float(alpha),
                      "eps": default_eps if eps is None else float(eps)}
        elif name == "KT-CS":
            params = {"discount": float(discount)}
        elif name == "KT-H":
            params = {"period": max(math.isqrt(max(length, 1)), 1)}
        elif name == "PTW-KT":
            params = {"depth": max(length - 1, 0).bit_length()}
        return cls(name=name, n=n, params=params)

    def fresh(self):
        """Instantiate the model at step 0."""
        name, n, p = self.name, self.n, self.params
        if name == "PS1":
            return PsModel(PsParams.fixed(alpha=p["alpha"], eps=p["eps"], n=n))
        if name == "PS2":
            return PsModel(PsParams.varying(n=n))
        if name == "KT":
            return KtModel(n)
        if name == "KT-CS":
            return KtModel(n, "count-scale", discount=p["discount"])
        if name == "KT-H":
            return KtModel(n, "halve", period=p["period"])
        if name == "KT-R":
            return KtModel(n, "reset")
        if name == "PTW-KT":
            return PtwModel(n, p["depth"])
        raise CodecError(f"unknown model {name!r}")

    def param_block(self) -> bytes:
        fmt, keys = _PARAM_FORMATS[self.name]
        return struct.pack(fmt, *(self.params[k] for k in keys)) if fmt else b""

    @classmethod
    def from_header(cls, model_id: int, n: int, block: bytes) -> "ModelConfig":
        name = MODEL_NAMES.get(model_id)
        if name is None:
            raise CodecError(f"unknown model id {model_id}")
        fmt, keys = _PARAM_FORMATS[name]
        expected = struct.calcsize(fmt) if fmt else 0
        if len(block) != expected:
            raise CodecError(f"model {name} expects a {expected}-byte parameter "
                             f"block, got {len(block)}")
        params = dict(zip(keys, struct.unpack(fmt, block))) if fmt else {}
        return cls(name=name, n=n, params=params)


def _pack_header(config: ModelConfig, length: int) -> bytes:
    block = config.param_block()
    return b"".join([
        MAGIC,
        struct.pack(">H", config.n),
        struct.pack(">B", MODEL_IDS[config.name]),
        struct.pack(">H", len(block)),
        block,
        struct.pack(">Q", length),
    ])


def parse_header(data: bytes) -> tuple[ModelConfig, int, int]:
    """Return (config, original_length, header_size) or raise CodecError."""
    if len(data) < 4 + 2 + 1 + 2 + 8:
        raise CodecError("stream shorter than the fixed header")
    if data[:4] != MAGIC:
        raise CodecError(f"bad magic {data[:4]!r}")
    n = struct.unpack(">H", data[4:6])[0]
    if n < 2:
        raise CodecError(f"alphabet size {n} below 2")
    model_id = data[6]
    block_len = struct.unpack(">H", data[7:9])[0]
    header_size = 9 + block_len + 8
    if len(data) < header_size:
        raise CodecError("stream shorter than its declared parameter block")
    block = data[9:9 + block_len]
    length = struct.unpack(">Q", data[9 + block_len:header_size])[0]
    return ModelConfig.from_header(model_id, n, block), length, header_size


def encode(config: ModelConfig, letters, probe=None) -> bytes:
    """Compress ``letters`` (values 1..n) under ``config``'s model."""
    letters = np.asarray(letters, dtype=np.int64)
    n = config.n
    if letters.size and (letters.min() < 1 or letters.max() > n):
        raise CodecError(f"letters must lie in 1..{n}")
    if n > 0xFFFF:
        raise CodecError("alphabet size does not fit the header")
    model = config.fresh()
    coder = RangeEncoder()
    for x in letters:
        x = int(x)
        p = model.predict()
        if p[x - 1] <= 0.0:
            raise CodecError(f"model assigns zero mass to letter {x}; unencodable")
        freqs = quantize_distribution(p)
        cum = int(freqs[:x - 1].sum())
        coder.encode(cum, int(freqs[x - 1]))
        model.update(x)
        if probe is not None:
            probe(model)
    return _pack_header(config, letters.size) + coder.finish()


def decode(data: bytes, probe=None) -> np.ndarray:
    """Invert :func:`encode`; returns the letter sequence."""
    config, length, header_size = parse_header(data)
    letters = np.empty(length, dtype=np.int64)
    if length == 0:
        return letters
    model = config.fresh()
    coder = RangeDecoder(data[header_size:])
    try:
        for t in range(length):
            freqs = quantize_distribution(model.predict())
            cums = np.cumsum(freqs)
            target = coder.decode_target()
            sym = int(np.searchsorted(cums, target, side="right"))
            cum = int(cums[sym - 1]) if sym else 0
            coder.consume(cum, int(freqs[sym]))
            letters[t] = sym + 1
            model.update(sym + 1)
            if probe is not None:
                probe(model)
    except (TruncatedStream, ValueError) as exc:
        raise CodecError(f"payload corrupt or truncated: {exc}") from exc
    return letters
