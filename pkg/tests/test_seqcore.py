import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pcsds.errors import ParseError
from pcsds.seqcore import (
    APERIODIC,
    PERIODIC,
    BinarySequence,
    CorrelationVector,
    SequenceFamily,
    cyclic_shift,
    format_family,
    is_acs,
    is_pcs,
    nacf,
    nacf_direct,
    negate,
    pacf,
    pacf_direct,
    pacf_from_nacf,
    pacf_sum,
    parse_family_text,
    reverse,
)

S = BinarySequence.from_string
seqs = st.lists(st.sampled_from([1, -1]), min_size=1, max_size=70).map(lambda v: BinarySequence(tuple(v)))


def test_pacf_examples():
    assert list(pacf(S("+++-"))) == [4, 0, 0, 0]
    assert list(pacf(S("+"))) == [1]
    assert list(pacf(S("+--"))) == [3, -1, -1]


def test_nacf_examples():
    assert list(nacf(S("+++-"))) == [4, 1, 0, -1]
    assert list(nacf(S("+"))) == [1]
    assert list(nacf(S("+-"))) == [2, -1]


def test_pacf_from_nacf_examples():
    assert list(pacf_from_nacf(CorrelationVector(APERIODIC, (4, 1, 0, -1)))) == [4, 0, 0, 0]
    assert list(pacf_from_nacf(CorrelationVector(APERIODIC, (1,)))) == [1]
    assert list(pacf_from_nacf(CorrelationVector(APERIODIC, (2, -1)))) == [2, -2]


def test_is_pcs_examples():
    assert is_pcs(SequenceFamily.of("+++-"))
    assert is_pcs(SequenceFamily.of("++", "+-"))
    rep = is_pcs(SequenceFamily.of("++", "++"))
    assert not rep and rep.first_offending_shift == 1 and rep.offending == ((1, 4),)
    assert "shift 1" in rep.describe()


def test_is_acs_examples():
    assert is_acs(SequenceFamily.of("++", "+-"))
    assert is_acs(SequenceFamily.of("+"))
    rep = is_acs(SequenceFamily.of("+++-"))
    assert not rep and rep.offending[0] == (1, 1)


def test_moves_examples():
    assert negate(S("+-")) == S("-+")
    assert cyclic_shift(S("+++-"), 1) == S("-+++")
    assert reverse(S("+--")) == S("--+")
    with pytest.raises(ValueError):
        cyclic_shift(S("+-"), 2)


def test_sequence_invariants():
    with pytest.raises(ValueError):
        BinarySequence(())
    with pytest.raises(ValueError):
        BinarySequence((1, 0))
    with pytest.raises(ParseError):
        S("+x-")
    with pytest.raises(ValueError):
        SequenceFamily(())
    with pytest.raises(ValueError):
        SequenceFamily.of("++", "+")


def test_mask_and_concat():
    a = S("+-+--")
    assert a.mask == 0b11010
    assert BinarySequence.from_mask(a.mask, 5) == a
    assert str(S("+-") + S("--")) == "+---"
    assert str(-a) == "-+-++"


def test_correlation_vector_add():
    v = pacf(S("++")) + pacf(S("+-"))
    assert v.kind == PERIODIC and list(v) == [4, 0]
    with pytest.raises(ValueError):
        pacf(S("++")) + nacf(S("++"))


def test_family_text_round_trip():
    f = SequenceFamily.of("++-", "+-+")
    comments, g = parse_family_text(format_family(f, header="demo"))
    assert g == f and comments == ["# demo"]
    with pytest.raises(ParseError):
        parse_family_text("++\n# late comment\n")
    with pytest.raises(ParseError):
        parse_family_text("# only comments\n")


def test_kernels_match_oracles_exhaustively_up_to_12():
    for n in range(1, 13):
        for mask in range(2 ** n):
            a = BinarySequence.from_mask(mask, n)
            assert pacf(a) == pacf_direct(a)
            assert nacf(a) == nacf_direct(a)


def test_pacf_agrees_with_numpy_fft():
    rng = np.random.default_rng(7)
    for n in (31, 64, 127):
        v = rng.choice([-1, 1], size=n)
        f = np.fft.fft(v)
        ref = np.rint(np.fft.ifft(f * np.conj(f)).real).astype(int)
        assert list(pacf(BinarySequence(tuple(int(x) for x in v)))) == list(ref)


@settings(max_examples=300, deadline=None)
@given(seqs)
def test_pacf_symmetry_and_sum(a):
    r = pacf(a)
    n = len(a)
    assert all(r[m] == r[n - m] for m in range(1, n))
    assert sum(r) == sum(a) ** 2
    assert r == pacf_from_nacf(nacf(a))


@settings(max_examples=200, deadline=None)
@given(seqs, st.data())
def test_pacf_invariant_under_moves(a, data):
    s = data.draw(st.integers(0, len(a) - 1))
    r = pacf(a)
    assert pacf(cyclic_shift(a, s)) == r
    assert pacf(negate(a)) == r
    assert pacf(reverse(a)) == r
    assert nacf(reverse(a)) == nacf(a)


@settings(max_examples=200, deadline=None)
@given(st.lists(seqs, min_size=1, max_size=4).filter(lambda xs: len({len(x) for x in xs}) == 1))
def test_pacf_sum_matches_report(xs):
    f = SequenceFamily(tuple(xs))
    assert is_pcs(f).sums == pacf_sum(f)
    assert bool(is_pcs(f)) == all(v == 0 for v in pacf_sum(f)[1:])
