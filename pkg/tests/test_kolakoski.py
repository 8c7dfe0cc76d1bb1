import itertools

import pytest

from smoothwords import (
    Alphabet,
    BaseSequenceSpec,
    Word,
    is_smooth_finite,
    kolakoski_prefix,
    kolakoski_stream,
    rle_encode,
    verify_fixpoint_prefix,
)

A12 = Alphabet((1, 2))
A123 = Alphabet((1, 2, 3))
A4 = Alphabet((2, 6, 10, 14))

CLASSIC_19 = tuple(int(c) for c in "1221121221221121122")


def test_spec_validation():
    with pytest.raises(ValueError):
        BaseSequenceSpec(A12, ())  # empty period
    with pytest.raises(ValueError):
        BaseSequenceSpec(A12, (1,))  # period of one letter repeats
    with pytest.raises(ValueError):
        BaseSequenceSpec(A12, (1, 2, 1))  # wrap seam 1..1
    with pytest.raises(ValueError):
        BaseSequenceSpec(A12, (1, 1, 2))  # adjacent equal
    with pytest.raises(ValueError):
        BaseSequenceSpec(A12, (1, 2), preperiod=(2, 1))  # seam 1|1
    with pytest.raises(ValueError):
        BaseSequenceSpec(A12, (1, 3))  # 3 outside alphabet
    spec = BaseSequenceSpec(A123, (1, 2), preperiod=(3,))
    assert [spec.base_letter(j) for j in range(1, 6)] == [3, 1, 2, 1, 2]


def test_classic_prefix():
    spec = BaseSequenceSpec(A12, (1, 2))
    assert kolakoski_prefix(spec, 19) == CLASSIC_19
    assert kolakoski_prefix(spec, 1) == (1,)


def test_four_letter_prefix():
    spec = BaseSequenceSpec(A4, (6, 10, 14, 2))
    expected = (6,) * 6 + (10,) * 6 + (14,) * 6 + (2,) * 6
    assert kolakoski_prefix(spec, 24) == expected


def test_swapped_base_prefix():
    spec = BaseSequenceSpec(A12, (2, 1))
    assert kolakoski_prefix(spec, 13) == (2, 2, 1, 1, 2, 1, 2, 2, 1, 2, 2, 1, 1)


def test_prefix_is_marked():
    spec = BaseSequenceSpec(A12, (1, 2))
    assert kolakoski_prefix(spec, 10).is_prefix


def test_stream_equals_prefix():
    for alphabet, period in [
        (A12, (1, 2)),
        (A12, (2, 1)),
        (A123, (1, 2, 3)),
        (A123, (2, 3, 1)),
        (A4, (6, 10, 14, 2)),
    ]:
        spec = BaseSequenceSpec(alphabet, period)
        stream = kolakoski_stream(spec)
        assert stream.take(10**5) == kolakoski_prefix(spec, 10**5)


def test_stream_state_invariants():
    spec = BaseSequenceSpec(A12, (1, 2))
    stream = kolakoski_stream(spec)
    for _ in range(10**4):
        next(stream)
        assert stream.read_index <= stream.write_count + 1
        assert len(stream.buffer) <= stream.write_count - stream.read_index + 2
    assert stream.max_gap > 0


def test_stream_determinism():
    spec = BaseSequenceSpec(A123, (3, 1, 2))
    a = kolakoski_stream(spec).take(20000)
    b = kolakoski_stream(spec).take(20000)
    assert a == b


def test_fixpoint_property_scales():
    for alphabet, period in [(A12, (1, 2)), (A123, (1, 2, 3))]:
        spec = BaseSequenceSpec(alphabet, period)
        for m in (10**3, 10**5):
            assert verify_fixpoint_prefix(kolakoski_prefix(spec, m))


def test_fixpoint_trivia():
    assert verify_fixpoint_prefix(Word((1,), A12, is_prefix=True))
    assert not verify_fixpoint_prefix(Word((1, 1, 2), A12, is_prefix=True))
    with pytest.raises(ValueError):
        verify_fixpoint_prefix(Word((), A12))


def test_base_recovery():
    spec = BaseSequenceSpec(A123, (1, 2, 3), preperiod=(2,))
    w = kolakoski_prefix(spec, 10**4)
    bases = rle_encode(w).bases
    expected = tuple(spec.base_letter(j) for j in range(1, len(bases) + 1))
    assert bases == expected


def test_prefixes_are_smooth():
    for alphabet, period in [(A12, (1, 2)), (A123, (1, 2, 3)), (A4, (6, 10, 14, 2))]:
        spec = BaseSequenceSpec(alphabet, period)
        w = kolakoski_prefix(spec, 10**3)
        assert is_smooth_finite(Word(w.symbols, alphabet))


def test_preperiod_generation():
    spec = BaseSequenceSpec(A123, (1, 2), preperiod=(3,))
    w = kolakoski_prefix(spec, 50)
    # first run: letter 3 repeated 3 times (self-referential head)
    assert w.symbols[:3] == (3, 3, 3)
    assert verify_fixpoint_prefix(w)
    bases = rle_encode(w).bases
    assert bases.symbols[0] == 3
    assert set(bases.symbols[1:]) <= {1, 2}


def test_all_two_and_three_letter_periods_are_fixpoints():
    for letters in [(1, 2), (1, 3), (2, 4), (3, 5)]:
        alphabet = Alphabet(letters)
        for period in itertools.permutations(letters):
            spec = BaseSequenceSpec(alphabet, period)
            assert verify_fixpoint_prefix(kolakoski_prefix(spec, 5000))
