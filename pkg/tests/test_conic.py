from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from grushin import conic, cylinder
from grushin.conic import ConicSpectralType as T
from grushin.flux import Flux


def test_full_operator_examples():
    assert conic.is_full_operator_esa(1.0, Flux(0))
    assert not conic.is_full_operator_esa(-2.0, Flux(0))
    assert conic.is_full_operator_esa(-2.0, Flux(1, 2))


def test_mode_examples():
    assert not conic.is_mode_esa(-2.0, 0, Flux(0))
    assert conic.is_mode_esa(-2.0, 3, Flux(0))
    assert not conic.is_mode_esa(0.5, 5, Flux(0))
    # integer flux moves the bad mode to k = b
    assert not conic.is_mode_esa(-2.0, 4, Flux(4))
    assert conic.is_mode_esa(-2.0, 0, Flux(4))
    # no mode is singled out for non-integer flux
    assert all(conic.is_mode_esa(-2.0, k, Flux(1, 3)) for k in range(-5, 6))


def test_spectral_type_examples():
    assert conic.spectral_type(2.0, Flux(0))[0] is T.ACPlusEmbeddedDiscrete
    assert conic.spectral_type(2.0, Flux(1, 3))[0] is T.PurelyDiscrete
    stype, notes = conic.spectral_type(-0.5, Flux(2, 5))
    assert stype is T.OutOfScope
    assert conic.NOTE_ALPHA_MINUS_HALF in notes
    assert conic.NOTE_ALPHA_MINUS_ONE in conic.spectral_type(-1.0, Flux(0))[1]


@pytest.mark.parametrize("boundary", [-3.0, -1.0, 1.0])
def test_boundaries_switch_exactly(boundary):
    below, above = boundary - 1e-9, boundary + 1e-9
    verdicts = [conic.is_mode_esa(a, 0, Flux(0)) for a in (below, boundary, above)]
    if boundary == -3.0:
        assert verdicts == [True, True, False]
    elif boundary == -1.0:
        assert verdicts == [False, False, False]
        assert [conic.is_mode_esa(a, 1, Flux(0)) for a in (below, boundary, above)] == [True, True, False]
    else:
        assert verdicts == [False, True, True]


@given(st.fractions(min_value=-5, max_value=5))
def test_alpha_one_matches_cylinder(b):
    b = Flux.of(b)
    expected = (
        T.ACPlusEmbeddedDiscrete
        if cylinder.spectral_type(b) is cylinder.SpectralType.AbsolutelyContinuousPlusEmbedded
        else T.PurelyDiscrete
    )
    assert conic.spectral_type(1.0, b)[0] is expected
    assert conic.is_full_operator_esa(1.0, b)


@given(st.floats(min_value=-10, max_value=10), st.fractions(min_value=-3, max_value=3))
def test_full_esa_implies_every_mode(alpha, b):
    b = Flux.of(b)
    if conic.is_full_operator_esa(alpha, b) and b.is_integer:
        assert all(conic.is_mode_esa(alpha, k, b) for k in range(-4, 5))


def test_classify_record():
    rec = conic.classify(-2.0, Flux(0), range(-1, 2))
    assert rec.mode_verdicts == {-1: True, 0: False, 1: True}
    assert not rec.full_operator_esa
    d = rec.as_dict()
    assert d["flux"] == "0" and d["spectral_type"] == "OutOfScope"
    rec = conic.classify(1.0, Flux.of(Fraction(1, 2)))
    assert rec.full_operator_esa and rec.spectral_type is T.PurelyDiscrete
    assert len(rec.mode_verdicts) == 41
    rec = conic.classify(0.5, Flux(1, 2))
    assert conic.NOTE_NONINTEGER_SMALL_ALPHA in rec.notes
