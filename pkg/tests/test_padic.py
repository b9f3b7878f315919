"""Tests for p-adic integration of monomial forms."""

from fractions import Fraction

import pytest
import sympy
from pydantic import ValidationError

from stringycli.count import blowup_strata, brute_force_count, catalog, count_points, counts_at
from stringycli.exceptions import DivergentIntegralError, MissingCountError, MissingRootError
from stringycli.padic import (
    Domain,
    LocalField,
    MonomialForm,
    convergence_check,
    enumeration_oracle,
    gauge_integral,
    global_integral,
    local_fiber_integral,
    monomial_integral_cell,
    symbolic_value,
)

GRID_K = [Fraction(-3, 4), Fraction(-1, 2), 0, Fraction(1, 2), 1, 2, Fraction(7, 3)]
GRID_Q = [2, 3, 5, 9, 16, 27]


def _field(q: int, den: int) -> LocalField | None:
    """A field with an integral den-th root of q, if there is one."""
    s, exact = sympy.integer_nthroot(q, den)
    if not exact:
        return None
    return LocalField(q=q, den=den, root=None if den == 1 else int(s))


def _admissible():
    for k in GRID_K:
        for q in GRID_Q:
            if _field(q, Fraction(k).denominator) is not None:
                yield Fraction(k), q


def test_local_field_validation():
    with pytest.raises(ValidationError):
        LocalField(q=6)
    with pytest.raises(MissingRootError):
        LocalField(q=8, den=3, root=3)
    field = LocalField(q=9, den=2, root=3)
    assert field.power(Fraction(3, 2)) == 27
    assert field.power(-1) == Fraction(1, 9)
    with pytest.raises(MissingRootError):
        field.power(Fraction(1, 3))
    with pytest.raises(MissingRootError):
        LocalField(q=9, den=2).generator


def test_single_coordinate_closed_form():
    """Over m: (q - 1) / (q (q^(k+1) - 1)); over R: (q - 1) q^k / (q^(k+1) - 1)."""
    field = LocalField(q=5)
    f = MonomialForm(exponents=(1,), dimension=1)
    assert monomial_integral_cell(f, field).value == Fraction(4, 5 * 24)
    assert monomial_integral_cell(f, field, Domain.R).value == Fraction(5, 6)
    assert monomial_integral_cell(MonomialForm(exponents=(0,), dimension=1), field, "R").value == 1


def test_mixed_exponents_and_trailing_coordinates():
    """|x^(-1/2) y| over m^2 at q = 9 is 4/9 * 1/90."""
    field = LocalField(q=9, den=2, root=3)
    f = MonomialForm(exponents=(Fraction(-1, 2), 1), dimension=2)
    assert monomial_integral_cell(f, field).value == Fraction(2, 405)
    padded = MonomialForm(exponents=(1,), dimension=3)
    assert monomial_integral_cell(padded, LocalField(q=5)).value == Fraction(1, 30) / 25
    mixed = monomial_integral_cell(padded, LocalField(q=5), ["m", "R", "R"])
    assert mixed.value == Fraction(1, 30)


def test_symbolic_form_evaluates_to_value():
    field = LocalField(q=27, den=3, root=3)
    f = MonomialForm(r=3, exponents=(7, -1), dimension=2)
    value = monomial_integral_cell(f, field)
    assert symbolic_value(value, field) == value.value
    assert value.symbolic.free_symbols == {field.symbol}


@pytest.mark.parametrize("k,q", list(_admissible()))
def test_oracle_brackets_closed_form(k, q):
    field = _field(q, k.denominator)
    f = MonomialForm(exponents=(k,), dimension=1)
    closed = monomial_integral_cell(f, field).value
    result = enumeration_oracle(f, field, cutoff=64)
    assert result.brackets(closed)
    assert result.tail_bound < Fraction(1, 2**60)


def test_oracle_two_coordinates():
    field = LocalField(q=9, den=2, root=3)
    f = MonomialForm(exponents=(Fraction(-1, 2), 1), dimension=2)
    result = enumeration_oracle(f, field, cutoff=40)
    assert result.brackets(Fraction(2, 405))


@pytest.mark.parametrize("k", [-1, Fraction(-3, 2), -2, -5])
def test_divergence(k):
    f = MonomialForm(exponents=(1, k), dimension=2)
    check = convergence_check(f)
    assert not check.converges
    assert check.index == 1
    with pytest.raises(DivergentIntegralError) as excinfo:
        monomial_integral_cell(f, LocalField(q=3))
    assert excinfo.value.index == 1
    with pytest.raises(DivergentIntegralError):
        enumeration_oracle(f, LocalField(q=3))


def test_pluricanonical_normalization():
    """omega^(tensor s) integrates like omega."""
    field = LocalField(q=5)
    f = MonomialForm(exponents=(2,), dimension=1)
    assert f.tensor_power(3).r == 3
    assert f.tensor_power(3).normalized == [Fraction(2)]
    assert monomial_integral_cell(f.tensor_power(3), field) == monomial_integral_cell(f, field)
    assert convergence_check(MonomialForm(r=2, exponents=(-1,), dimension=1)).converges


def test_exponents_must_fit():
    with pytest.raises(ValidationError):
        MonomialForm(exponents=(1, 2), dimension=1)


def test_local_fiber_integral():
    field = LocalField(q=3)
    f = MonomialForm(exponents=(1, 2), dimension=2)
    assert local_fiber_integral(f, field, []).value == Fraction(1, 9)
    both = local_fiber_integral(f, field, [0, 1]).value
    assert both == monomial_integral_cell(f, field).value


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
@pytest.mark.parametrize("q", [2, 3, 5, 7])
def test_global_integral_of_blowup_is_one(n, q):
    """The pulled-back dx_1 ... dx_n on Bl_0(A^n) integrates to vol(R^n) = 1."""
    r, counts = blowup_strata(n)
    f = MonomialForm(exponents=(n - 1,), dimension=n)
    value = global_integral(f, LocalField(q=q), counts_at(counts, q))
    assert value.value == 1


def test_global_integral_fractional():
    """1/3(1,1): the 3-canonical form with exponent -1 on E."""
    field = LocalField(q=8, den=3, root=2)
    f = MonomialForm(r=3, exponents=(-1,), dimension=2)
    value = global_integral(f, field, {0: 63, 1: 9})
    assert value.value == Fraction(84, 64)
    assert symbolic_value(value, field) == value.value


def test_global_integral_requires_ambient_count():
    with pytest.raises(MissingCountError):
        global_integral(MonomialForm(exponents=(1,), dimension=2), LocalField(q=2), {1: 3})


@pytest.mark.parametrize("q", [2, 3, 5])
def test_gauge_integral_matches_brute_force(q):
    schemes = [s for s in catalog().values() if s.has_gauge_form]
    assert schemes
    for s in schemes:
        n = s.dimension
        value = gauge_integral(LocalField(q=q), brute_force_count(s, q), n)
        assert value.value == Fraction(count_points(s, q), q**n)


def test_gauge_integral_formal_flag():
    value = gauge_integral(LocalField(q=4), 16, 2, formal=True)
    assert value.formal
    assert value.value == 1
