from fractions import Fraction
from math import log

import pytest

from clusterx.errors import InputError, LaurentError
from clusterx.laurent import (LaurentPoly, PosRational, is_laurent,
                              lp_arith, lp_substitute, numeric_limit_check,
                              tropicalize)
from clusterx.math import catalan, log_sum_exp


def test01_parse_and_print():
    p = LaurentPoly.from_text('X1^-1*X2^2 + 3')
    assert p.vars == ('X1', 'X2')
    assert dict(p.terms) == {(-1, 2): 1, (0, 0): 3}
    assert p.to_text() == '1*X1^-1*X2^2 + 3'
    assert LaurentPoly.from_text(p.to_text()) == p
    assert LaurentPoly.from_json(p.to_json()) == p


@pytest.mark.parametrize('text', ['X0 +', 'X0^(1/2)', '1/2*X0', ''])
def test02_parse_errors(text):
    with pytest.raises(InputError):
        LaurentPoly.from_text(text)


def test03_arithmetic():
    x = LaurentPoly.variable('X0', ('X0', 'X1'))
    y = LaurentPoly.variable('X1', ('X0', 'X1'))
    assert lp_arith(x, y, 'add') == x + y
    assert lp_arith(x, x, 'sub').is_zero()
    assert (x + y) ** 2 == x * x + 2 * x * y + y * y
    assert (x * y) ** -1 == LaurentPoly.monomial((-1, -1), 1, ('X0', 'X1'))
    assert (x * y ** -1).evaluate({'X0': 6, 'X1': Fraction(1, 2)}) == 12

    with pytest.raises(LaurentError):
        (x + y) ** -1
    with pytest.raises(LaurentError):
        (2 * x) ** -1
    with pytest.raises(ValueError):
        lp_arith(x, y, 'div')


def test04_mixed_variables():
    a = LaurentPoly.from_text('X0 + 1')
    b = LaurentPoly.from_text('X2')
    c = a * b
    assert c.vars == ('X0', 'X2')
    assert c == LaurentPoly.from_text('X0*X2 + X2')
    assert c.with_vars(('X2', 'X1', 'X0')) == c
    with pytest.raises(LaurentError):
        c.with_vars(('X0',))


def test05_rational_equality_and_cancel():
    f = PosRational.from_text('(X0^2 - 1)/(X0 - 1)')
    assert not f.is_subtraction_free()
    assert f == LaurentPoly.from_text('X0 + 1')
    g = f.cancel()
    assert g.is_polynomial()
    assert g.numerator == LaurentPoly.from_text('X0 + 1')


def test06_is_laurent():
    f = PosRational.from_text('(X0^2 - 1)/(X0 - 1)')
    assert is_laurent(f) == LaurentPoly.from_text('X0 + 1')

    g = PosRational.from_text('(1 + X0)/X0')
    assert is_laurent(g) == LaurentPoly.from_text('X0^-1 + 1')

    assert is_laurent(PosRational.from_text('1/(1 + X0)')) is None
    assert is_laurent(PosRational.from_text('X0/(2*X1)')) is None

    h = PosRational.from_text('(X0^2*X1 + 2*X0*X1^2 + X1^3)/(X0 + X1)')
    p = is_laurent(h)
    assert p is not None
    assert p * h.denominator == h.numerator


def test07_substitute():
    f = LaurentPoly.from_text('X0*X1^-1')
    vars = ('X0', 'X1')
    subs = {'X0': PosRational(LaurentPoly.from_text('1 + X0').with_vars(vars)),
            'X1': PosRational(LaurentPoly.variable('X0', vars))}
    r = lp_substitute(f, subs)
    assert r == PosRational.from_text('(1 + X0)/X0')
    assert r.is_subtraction_free()

    with pytest.raises(LaurentError):
        lp_substitute(f, {'X0': subs['X0']})


def test08_tropicalize():
    f = PosRational.from_text('(1 + X0)/X1')
    t = tropicalize(f)
    assert t({'X0': 3, 'X1': 1}) == 2
    assert t({'X0': -2, 'X1': 1}) == -1
    assert t.at(('X0', 'X1'), (0, 0)) == 0

    with pytest.raises(LaurentError):
        tropicalize(PosRational.from_text('X0 - 1'))


def test09_numeric_limit():
    f = PosRational.from_text('(1 + X0)/X1')
    values = numeric_limit_check(f, [0, 0], [10, 60])
    assert values[0] == pytest.approx(log(2) / 10)
    assert values[1] == pytest.approx(log(2) / 60)

    # large scales stay finite in log space
    big, = numeric_limit_check(f, [5, -3], [1000])
    assert big == pytest.approx(8, abs=1e-6)

    with pytest.raises(LaurentError):
        numeric_limit_check(f, [0, 0], [60, 10])


def test10_math_helpers():
    assert [catalan(m) for m in range(6)] == [1, 1, 2, 5, 14, 42]
    assert log_sum_exp([]) == float('-inf')
    assert log_sum_exp([1000.0, 1000.0]) == pytest.approx(1000 + log(2))
