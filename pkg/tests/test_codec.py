import math

import numpy as np
import pytest

from probsmooth import (
    CodecError,
    ModelConfig,
    decode,
    encode,
    model_code_length,
    parse_header,
)
from probsmooth.codec import MODEL_IDS

ALL_MODELS = tuple(MODEL_IDS)


def test_header_round_trip_for_every_model():
    for name in ALL_MODELS:
        config = ModelConfig.for_sequence(name, 5, 123)
        stream = encode(config, [])
        parsed, length, header_size = parse_header(stream)
        assert parsed == config
        assert length == 0
        assert len(stream) == header_size  # empty sequence -> header only


def test_header_rejects_malformations():
    stream = bytearray(encode(ModelConfig.for_sequence("KT", 3, 4), [1, 2, 3, 1]))
    with pytest.raises(CodecError):
        parse_header(bytes(stream[:10]))
    bad_magic = bytes(b"XXXX") + bytes(stream[4:])
    with pytest.raises(CodecError):
        parse_header(bad_magic)
    bad_id = bytes(stream[:6]) + bytes([99]) + bytes(stream[7:])
    with pytest.raises(CodecError):
        parse_header(bad_id)
    bad_n = bytes(stream[:4]) + b"\x00\x01" + bytes(stream[6:])
    with pytest.raises(CodecError):
        parse_header(bad_n)


def test_round_trip_single_letters_exhaustive():
    for name in ALL_MODELS:
        for letter in range(1, 5):
            config = ModelConfig.for_sequence(name, 4, 1)
            assert decode(encode(config, [letter])).tolist() == [letter]


def test_round_trip_random_sequences_all_models():
    rng = np.random.default_rng(0)
    for i in range(70):
        name = ALL_MODELS[i % len(ALL_MODELS)]
        n = int(rng.integers(2, 6))
        length = int(rng.integers(0, 120))
        letters = rng.integers(1, n + 1, size=length)
        config = ModelConfig.for_sequence(name, n, length)
        assert np.array_equal(decode(encode(config, letters)), letters)


def test_round_trip_byte_alphabet():
    rng = np.random.default_rng(1)
    letters = rng.integers(1, 257, size=400)
    config = ModelConfig.for_sequence("PS1", 256, letters.size)
    assert np.array_equal(decode(encode(config, letters)), letters)


def test_payload_within_ideal_window():
    rng = np.random.default_rng(2)
    for i in range(40):
        name = ALL_MODELS[i % len(ALL_MODELS)]
        n = int(rng.integers(2, 5))
        length = int(rng.integers(1, 150))
        letters = rng.integers(1, n + 1, size=length)
        config = ModelConfig.for_sequence(name, n, length)
        stream = encode(config, letters)
        _, _, header_size = parse_header(stream)
        payload_bits = 8 * (len(stream) - header_size)
        ideal_bits = model_code_length(config.fresh(), letters).total / math.log(2.0)
        assert ideal_bits - 1 <= payload_bits <= ideal_bits + 64


def test_low_entropy_long_sequence_stays_close_to_ideal():
    rng = np.random.default_rng(3)
    letters = np.where(rng.random(10_000) < 0.02, 2, 1).astype(np.int64)
    config = ModelConfig.for_sequence("PS1", 2, letters.size)
    stream = encode(config, letters)
    _, _, header_size = parse_header(stream)
    payload_bits = 8 * (len(stream) - header_size)
    ideal_bits = model_code_length(config.fresh(), letters).total / math.log(2.0)
    assert payload_bits <= ideal_bits + 64
    assert np.array_equal(decode(stream), letters)


def test_encoder_decoder_model_lockstep():
    rng = np.random.default_rng(4)
    letters = rng.integers(1, 4, size=60)
    config = ModelConfig.for_sequence("PS2", 3, letters.size)
    enc_states, dec_states = [], []
    stream = encode(config, letters, probe=lambda m: enc_states.append(m.predict()))
    decode(stream, probe=lambda m: dec_states.append(m.predict()))
    assert len(enc_states) == len(dec_states) == letters.size
    for a, b in zip(enc_states, dec_states):
        assert np.array_equal(a, b)


def test_truncated_payload_raises():
    rng = np.random.default_rng(5)
    letters = rng.integers(1, 3, size=500)
    stream = encode(ModelConfig.for_sequence("KT", 2, letters.size), letters)
    with pytest.raises(CodecError):
        decode(stream[:-20])


def test_zero_mass_letter_is_unencodable(monkeypatch):
    class SureThing:
        n = 2
        step = 0

        def predict(self):
            return np.array([1.0, 0.0])

        def update(self, letter):
            self.step += 1

    monkeypatch.setattr(ModelConfig, "fresh", lambda self: SureThing())
    with pytest.raises(CodecError):
        encode(ModelConfig.for_sequence("KT", 2, 1), [2])


def test_letters_out_of_range_rejected():
    config = ModelConfig.for_sequence("KT", 2, 3)
    with pytest.raises(CodecError):
        encode(config, [1, 2, 3])


def test_unknown_model_name():
    with pytest.raises(CodecError):
        ModelConfig.for_sequence("LZ77", 2, 10)


def test_param_blocks_round_trip():
    for name, n, length in [("PS1", 2, 100), ("KT-CS", 4, 50), ("KT-H", 3, 81),
                            ("PTW-KT", 2, 1000), ("PS2", 5, 10)]:
        config = ModelConfig.for_sequence(name, n, length)
        rebuilt = ModelConfig.from_header(MODEL_IDS[name], n, config.param_block())
        assert rebuilt == config


def test_depth_and_period_defaults():
    assert ModelConfig.for_sequence("PTW-KT", 2, 8192).params["depth"] == 13
    assert ModelConfig.for_sequence("PTW-KT", 2, 1).params["depth"] == 0
    assert ModelConfig.for_sequence("KT-H", 2, 8192).params["period"] == 90
