from fractions import Fraction

import pytest

from hhrec.engine import (
    RecurrenceSpec,
    apply_sigma,
    check_reversibility,
    contiguous_values,
    parse_sequence,
    phi,
    phi_inverse,
    raw_window,
    render_bfile,
    render_csv,
    render_json,
    window_rows,
    xi_residual,
)
from hhrec.errors import (
    LaurentViolationError,
    NonIntegerValueError,
    ZeroPivotError,
)
from hhrec.laurent import variables
from hhrec.verifier import SplitMix64, random_rational


def ones(k, a=1):
    return RecurrenceSpec.numeric(k, a, [1] * (2 * k + 1))


def test_spec_validation():
    with pytest.raises(ValueError):
        RecurrenceSpec.numeric(0, 1, [1])
    with pytest.raises(ValueError):
        RecurrenceSpec.numeric(1, 1, [1, 1])
    with pytest.raises(ValueError):
        RecurrenceSpec.numeric(1, 0, [1, 1, 1])


def test_forward_iteration_k1_ones():
    w = ones(1).window().extend(new_hi=8)
    assert [w[n] for n in range(3, 9)] == [3, 7, 31, 85, 393, 1093]


def test_backward_iteration_k1_ones():
    w = ones(1).window().extend(new_lo=-2)
    assert w[-1] == 3 and w[-2] == 7


def test_forward_iteration_k2_ones():
    w = ones(2).window().extend(new_hi=12)
    assert [w[n] for n in range(5, 13)] == [3, 5, 9, 17, 65, 117, 227, 449]


def test_windows_are_immutable_and_share_prefix():
    spec = ones(1)
    w0 = spec.window()
    w1 = w0.extend(new_hi=8)
    assert w0.hi == 2 and w1.hi == 8
    assert w1.values[:3] == w0.values


def test_extend_is_idempotent_inside_range():
    w = ones(1).window().extend(-3, 9)
    assert w.extend(-1, 5).values == w.values


def test_forward_backward_round_trip():
    spec = RecurrenceSpec.numeric(2, Fraction(2, 3), [1, 2, 3, 4, 5])
    w = spec.window().extend(-6, 14)
    top = RecurrenceSpec(2, spec.a, tuple(w[w.hi - 4 + j] for j in range(5)))
    redone = top.window().extend(new_lo=-(w.hi - 4 - w.lo))
    for j in redone.indices():
        assert redone[j] == w[w.hi - 4 + j]


def test_zero_pivot_carries_index():
    # x_6 = 0 for this seed, so the step computing x_9 divides by zero
    spec = RecurrenceSpec.numeric(1, 1, [1, 2, -1])
    with pytest.raises(ZeroPivotError) as err:
        spec.window().extend(new_hi=9)
    assert err.value.n == 6


def test_xi_residual_examples():
    spec = RecurrenceSpec.numeric(1, 1, [1, 2, 3])
    w = spec.window().extend(new_hi=4)
    assert w[3] == 11
    assert xi_residual(w, 0) == 0
    assert xi_residual(spec.window().extend(new_lo=-4, new_hi=7), -2) == 0
    corrupted = w.with_value(3, Fraction(12))
    assert xi_residual(corrupted, 0) == 1


def test_xi_out_of_window():
    w = ones(1).window()
    with pytest.raises(IndexError):
        xi_residual(w, 0)  # needs x_3


def test_sigma_is_an_involution():
    w = RecurrenceSpec.numeric(1, 2, [1, 2, 3]).window().extend(-2, 6)
    assert apply_sigma(apply_sigma(w)) == w


def test_sigma_fixes_palindromic_ones_window():
    # reflection maps [lo, hi] to [2k-hi, 2k-lo]; a range centred on n = k
    # is carried to itself, and the all-ones values are palindromic
    w = ones(1).window().extend(-3, 5)
    sw = apply_sigma(w)
    assert sw.lo == w.lo and sw.values == w.values


def test_sigma_image_iterates_to_backward_values():
    spec = RecurrenceSpec.numeric(1, 1, [1, 2, 3])
    orig = spec.window().extend(new_lo=-1)
    image = apply_sigma(spec.window()).extend(new_hi=3)
    assert image.spec.init == (Fraction(3), Fraction(2), Fraction(1))
    assert image[3] == orig[-1]


def test_ones_window_equals_its_sigma_image():
    # x_{-n} = x_{n+2k} for the all-ones seed
    for k in (1, 2):
        w = ones(k).window().extend(-8, 8 + 2 * k)
        for n in range(-8, 9):
            assert w[-n] == w[n + 2 * k]


@pytest.mark.parametrize("spec", [
    ones(1),
    RecurrenceSpec.numeric(1, 5, [1, 2, 3]),
    RecurrenceSpec.numeric(2, Fraction(7, 3), [2, -3, Fraction(1, 2), 5, -1]),
])
def test_reversibility(spec):
    assert check_reversibility(spec)


def test_reversibility_random_k2():
    rng = SplitMix64(2024)
    for _ in range(10):
        init = [random_rational(rng, 9, 5) for _ in range(5)]
        a = random_rational(rng, 9, 5)
        assert check_reversibility(RecurrenceSpec(2, a, tuple(init)))


def test_phi_inverse_is_inverse():
    spec = RecurrenceSpec.numeric(2, Fraction(1, 2), [1, 2, 3, 4, 5])
    p = spec.init
    assert phi_inverse(phi(p, spec.a, 2), spec.a, 2) == p


def test_raw_window_cannot_extend():
    w = raw_window(ones(1), 0, [1, 2, 3, 4])
    with pytest.raises(ValueError):
        w.extend(new_hi=8)


# -- symbolic mode --------------------------------------------------------------

def test_symbolic_spec_uses_generic_variables():
    spec = RecurrenceSpec.symbolic(1)
    x0, x1, x2, a = variables(4)
    assert spec.init == (x0, x1, x2) and spec.a == a


@pytest.mark.parametrize("k", [1, 2])
def test_symbolic_extension_no_laurent_violation(k):
    spec = RecurrenceSpec.symbolic(k)
    w = spec.window().extend(-2 * k, 4 * k)  # never raises LaurentViolationError
    for n in range(w.lo, w.hi - 2 * k):
        assert xi_residual(w, n).is_zero()
    for n in w.indices():
        assert all(isinstance(c, int) for c in w[n].terms().values())


def test_symbolic_matches_numeric_substitution():
    sw = RecurrenceSpec.symbolic(1).window().extend(-2, 5)
    nw = RecurrenceSpec.numeric(1, 1, [1, 2, 3]).window().extend(-2, 5)
    point = [Fraction(1), Fraction(2), Fraction(3), Fraction(1)]
    for n in range(-2, 6):
        assert sw[n].substitute(point) == nw[n]


def test_symbolic_cap_enforced_and_overridable():
    spec = RecurrenceSpec.symbolic(1)
    with pytest.raises(ValueError):
        spec.window().extend(new_hi=13)
    w = spec.window().extend(new_hi=13, symbolic_cap=13)
    assert w.hi == 13


# -- export formats --------------------------------------------------------------

def test_export_round_trips():
    w = ones(1).window().extend(new_hi=9)
    rows = window_rows(w, 0, 9)
    for text in (render_csv(rows), render_json(rows), render_bfile(rows)):
        lo, values = contiguous_values(parse_sequence(text))
        assert lo == 0 and values == [w[n] for n in range(10)]


def test_csv_format_shape():
    w = ones(1).window().extend(new_hi=3)
    text = render_csv(window_rows(w))
    assert text.splitlines()[0] == "n,value"
    assert text.splitlines()[-1] == "3,3"


def test_bfile_requires_integers():
    w = RecurrenceSpec.numeric(1, 1, [1, 2, 3]).window().extend(new_hi=4)
    with pytest.raises(NonIntegerValueError):
        render_bfile(window_rows(w))


def test_parse_sequence_rejects_gaps():
    with pytest.raises(ValueError):
        contiguous_values(parse_sequence("0 1\n2 5\n"))


def test_symbolic_window_exports_canonical_text():
    import json
    w = RecurrenceSpec.symbolic(1).window().extend(new_hi=3)
    data = json.loads(render_json(window_rows(w, 3, 3)))
    assert data == [{"n": 3, "value": "x0^-1*x1*x2 + x0^-1*x1*a + x0^-1*x2*a"}]
