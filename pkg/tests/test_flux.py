from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from grushin.flux import EigenfunctionSample, EigenIndex, Flux, SpectralLine, as_exact, group_lines


def test_flux_reduces():
    b = Flux(6, 4)
    assert (b.numerator, b.denominator) == (3, 2)
    assert Flux(-4, 2) == Flux.of(-2)


@given(st.integers(-10**6, 10**6), st.integers(1, 10**6))
def test_flux_invariants(p, q):
    b = Flux(p, q)
    assert np.gcd(abs(b.numerator), b.denominator) == 1
    assert b.value == Fraction(p, q)
    assert b.is_integer == (b.value.denominator == 1)


@pytest.mark.parametrize("text, value", [("0", 0), ("3", 3), ("-1/2", Fraction(-1, 2)), (" 2/6 ", Fraction(1, 3))])
def test_parse(text, value):
    assert Flux.parse(text).value == value


@pytest.mark.parametrize("text", ["0.5", "1/0", "a", "1/-2", "", "1//2"])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        Flux.parse(text)


def test_of_rejects_float():
    with pytest.raises(TypeError):
        Flux.of(0.5)


def test_generic_flux():
    b = Flux.from_real(2.0)
    assert not b.is_integer
    assert not b.is_flux_mode(2)
    assert b.distance(3) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        Flux.from_real(float("nan"))


def test_nearest_integer_and_distance():
    assert Flux(1, 3).nearest_integer == 0
    assert Flux(5, 2).nearest_integer in (2, 3)
    assert Flux(2, 7).distance(1) == Fraction(5, 7)
    assert str(Flux(-2, 7)) == "-2/7"


def test_eigen_index_starts_at_one():
    with pytest.raises(ValueError):
        EigenIndex(0, 1)


def test_spectral_line_sorted():
    line = SpectralLine(8, [EigenIndex(2, 1), EigenIndex(1, -2), EigenIndex(2, -1), EigenIndex(1, 2)])
    assert [(ix.n, ix.k) for ix in line.indices] == [(1, -2), (2, -1), (2, 1), (1, 2)]
    assert line.multiplicity == 4


def test_eigenfunction_sample_validation():
    with pytest.raises(ValueError):
        EigenfunctionSample([0.1, 0.2], [1.0])
    with pytest.raises(ValueError):
        EigenfunctionSample([0.2, 0.1], [1.0, 2.0])


def test_as_exact():
    assert as_exact(0.5) == Fraction(1, 2)
    assert as_exact("3/4") == Fraction(3, 4)
    with pytest.raises(ValueError):
        as_exact(float("inf"))


def test_group_lines():
    lines = group_lines([(2, EigenIndex(2, 1)), (1, EigenIndex(1, 1)), (2, EigenIndex(1, 2))], Fraction(4))
    assert [(ln.lam, ln.multiplicity) for ln in lines] == [(4, 1), (8, 2)]
