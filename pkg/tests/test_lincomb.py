from fractions import Fraction

import pytest

from topohopf.lincomb import ZERO, LinComb, apply_legs, extend_bilinear, extend_linear, merge_legs, tensor


def lc(**kw):
    return LinComb({k: v for k, v in kw.items()})


def test_zero_terms_are_dropped():
    x = LinComb([("a", 1), ("a", -1), ("b", Fraction(1, 2))])
    assert x.support() == ["b"] and len(x) == 1
    assert not LinComb([("a", 0)])


def test_add_zero_and_scale_zero():
    x = lc(a=2, b=-3)
    assert x + ZERO == x
    assert x.scale(0) == ZERO
    assert x - x == ZERO
    assert 3 * x == lc(a=6, b=-9)
    assert -x == lc(a=-2, b=3)


def test_coefficients_are_exact():
    x = LinComb([("a", Fraction(1, 3))] * 3)
    assert x.coeff("a") == 1 and isinstance(x.coeff("a"), Fraction)
    assert x.coeff("missing") == 0


def test_tensor_distributes_over_addition():
    x, y, z = lc(a=1, b=2), lc(c=Fraction(1, 2)), lc(c=-1, d=3)
    assert tensor(x, y + z) == tensor(x, y) + tensor(x, z)
    assert tensor(x + z, y) == tensor(x, y) + tensor(z, y)
    assert tensor(x, y).coeff(("b", "c")) == 1


def test_extend_linear():
    ident = extend_linear(LinComb.basis)
    zero = extend_linear(lambda b: ZERO)
    x = lc(a=1, b=-2)
    assert ident(x) == x
    assert zero(x) == ZERO
    f = extend_linear(lambda b: lc(u=1, v=len(b)))
    y = lc(ab=3, c=Fraction(1, 2))
    assert f(x + y) == f(x) + f(y)
    assert f(x.scale(5)) == f(x).scale(5)


def test_extend_bilinear():
    f = extend_bilinear(lambda a, b: LinComb.basis(a + b))
    assert f(lc(a=1, b=1), lc(c=2)) == lc(ac=2, bc=2)


def test_apply_and_merge_legs():
    x = LinComb.basis(("a", "b"))
    split = lambda s: lc(**{s: 1}) + LinComb.basis((s, s))
    y = apply_legs(x, None, split)
    assert y == LinComb([(("a", "b"), 1), (("a", "b", "b"), 1)])
    with pytest.raises(ValueError):
        apply_legs(x, None)
    t = LinComb.basis(("a", "b", "c"))
    assert merge_legs(t, [(0, 2), (1,)], lambda *p: "".join(p)) == LinComb.basis(("ac", "b"))


def test_rendering_is_sorted_and_signed():
    x = LinComb([("b", -1), ("a", Fraction(2, 3)), ("c", 1)])
    assert str(x) == "2/3*a - b + c"
    assert str(ZERO) == "0"
    assert str(LinComb.basis(("a", "b"))) == "a ⊗ b"
    assert x.to_json()[0] == {"basis": "a", "coeff": "2/3"}


def test_equality_and_hash():
    assert lc(a=1) == LinComb([("a", Fraction(2, 2))])
    assert hash(lc(a=1, b=2)) == hash(lc(b=2, a=1))
    assert lc(a=1).mass() == 1 and lc(a=1, b=-3).mass() == -2
