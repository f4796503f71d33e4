from fractions import Fraction

import mpmath
import pytest

from supermacdonald.scalars import ParameterError, ParamSet, parse_rational, qpochhammer, qpochhammer_tail_bound


def reference(z, q, K=200):
    out = 1.0
    for k in range(K):
        out *= 1 - z * q**k
    return out


def test_qpochhammer_examples():
    assert qpochhammer(0, 0.3, 17) == 1
    assert qpochhammer(1, 0.5, 5) == 0
    val = qpochhammer(0.5, 0.5, 40)
    assert abs(val - 0.2887880951) < 1e-10
    assert abs(val - reference(0.5, 0.5)) < 1e-12
    # independent infinite-product implementation
    assert abs(val - float(mpmath.qp(0.5, 0.5))) < 1e-12


def test_qpochhammer_exact_and_vectorised():
    import numpy as np

    assert qpochhammer(Fraction(1, 2), Fraction(1, 2), 3) == Fraction(1, 2) * Fraction(3, 4) * Fraction(7, 8)
    z = np.array([0.1, 0.5 + 0.2j])
    got = qpochhammer(z, 0.49, 40)
    assert np.allclose(got, [reference(complex(v), 0.49, K=40) for v in z], rtol=0, atol=1e-15)
    with pytest.raises(ValueError):
        qpochhammer(0.5, 0.5, 0)


@pytest.mark.parametrize("z", [0.1 * k for k in range(1, 10)])
@pytest.mark.parametrize("q", [0.1 * k for k in range(1, 10)])
def test_truncation_convergence(z, q):
    ref = reference(z, q, 400 if q > 0.8 else 200)
    prev = None
    for K in (10, 20, 40, 80):
        val = qpochhammer(z, q, K)
        err = abs(val - ref)
        bound = qpochhammer_tail_bound(z, q, K)
        if bound < 0.5:
            assert err <= 2 * bound * abs(ref) + 1e-15
        if prev is not None:
            assert err <= prev + 1e-15
        # factors lie in (0, 1), so the partial products decrease toward the limit
        assert val >= ref - 1e-15
        prev = err


def test_half_power_examples():
    p = ParamSet(0.7, 0.5)
    assert abs(p.half_power("q", 2) - 0.49) < 1e-15
    assert p.half_power("t", -1) == 2
    e = ParamSet.default()
    assert e.half_power("q", 3) == Fraction(343, 1000)
    with pytest.raises(ValueError):
        e.half_power("x", 1)


def test_half_power_inverse_exact():
    p = ParamSet.default()
    for r in range(-10, 11):
        assert (p.a**2) ** r * p.half_power("q", -2 * r) == 1
        assert (p.b**2) ** r * p.half_power("t", -2 * r) == 1


def test_paramset_modes():
    p = ParamSet.default()
    assert p.exact and p.q == Fraction(49, 100) and p.t == Fraction(1, 4)
    assert not p.to_float().exact
    with pytest.raises(ParameterError):
        ParamSet(Fraction(7, 10), 0.5)
    with pytest.raises(ParameterError):
        ParamSet(Fraction(0), Fraction(1, 2))
    with pytest.raises(ParameterError):
        ParamSet(Fraction(3, 2), Fraction(1, 2)).validate()
    assert abs(p.M - 1.4) < 1e-15
    assert p.inverted().inverted() == p
    assert p.swapped().q == p.t


def test_parse_rational():
    assert parse_rational("7/10") == Fraction(7, 10)
    assert parse_rational("0.5") == Fraction(1, 2)
    with pytest.raises(ParameterError):
        parse_rational("seven")
