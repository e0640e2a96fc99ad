import pytest

from topohopf import qposet as qp
from topohopf import setcomp as scm
from topohopf import topalg as ta
from topohopf import wordalg as wa
from topohopf.errors import InputError
from topohopf.lincomb import LinComb, apply_legs

C = wa.Composition.of
W = wa.PackedWord.parse


def lin(*xs):
    return LinComb((x, 1) for x in xs)


def test_quasi_shuffle_counts():
    assert len(wa.qsh_surjections(1, 1)) == 3
    assert len(wa.qsh_surjections(1, 2)) == 5
    assert wa.qsh_surjections(3, 0) == ((1, 2, 3),)
    with pytest.raises(InputError):
        wa.qsh_surjections(-1)


def test_qsym_product():
    assert wa.qsym_product(C(1), C(2)) == lin(C(1, 2), C(2, 1), C(3))
    assert wa.qsym_product(wa.EMPTY_COMP, C(2, 1)) == lin(C(2, 1))
    for x in (C(1), C(2, 1), C(1, 1)):
        for y in (C(3), C(1, 2)):
            assert wa.qsym_product(x, y) == wa.qsym_product(y, x)


def test_qsym_coproducts():
    E = wa.EMPTY_COMP
    assert wa.qsym_delta(E) == LinComb.basis((E, E))
    assert len(wa.qsym_delta(C(2))) == 2
    for c in (C(1, 2, 1), C(1, 1, 1, 1)):
        d = wa.qsym_delta(c)
        assert apply_legs(d, wa.qsym_delta, None) == apply_legs(d, None, wa.qsym_delta)
    assert wa.qsym_rho(C(2)) == LinComb.basis((C(2), C(2)))
    want = LinComb([((C(1, 2), C(3)), 1)] + [((x, C(1, 2)), 1) for x in (C(1, 2), C(2, 1), C(3))])
    assert wa.qsym_rho(C(1, 2)) == want
    assert wa.qsym_counit(C(4)) == 1 and wa.qsym_counit(C(1, 1)) == 0


def test_pack():
    assert wa.pack((5, 3, 5)) == wa.PackedWord.of(2, 1, 2)
    assert wa.pack(W("2131").letters) == W("2131")
    with pytest.raises(InputError):
        wa.PackedWord.of(1, 3)


def test_wqsym_product():
    one = W("1")
    assert wa.wqsym_product(one, one) == lin(W("12"), W("21"), W("11"))
    assert wa.wqsym_product(wa.EMPTY_WORD, W("21")) == lin(W("21"))
    u, v = W("121"), W("21")
    assert wa.wqsym_product(u, v).mass() == len(wa.qsh_surjections(u.max, v.max))


def test_wqsym_coproducts():
    E = wa.EMPTY_WORD
    assert len(wa.wqsym_delta(W("1"))) == 2
    assert wa.wqsym_delta(W("12")).coeff((W("1"), W("1"))) == 1
    for w in (W("1213"), W("2112"), W("1111")):
        d = wa.wqsym_delta(w)
        assert apply_legs(d, wa.wqsym_delta, None) == apply_legs(d, None, wa.wqsym_delta)
    assert wa.wqsym_rho(W("11")) == LinComb.basis((W("11"), W("11")))
    want = LinComb([((W("12"), W("11")), 1)] + [((x, W("12")), 1) for x in (W("12"), W("21"), W("11"))])
    assert wa.wqsym_rho(W("12")) == want
    assert wa.wqsym_delta(E) == LinComb.basis((E, E))


def test_rendering():
    assert str(W("1213")) == "1213"
    assert str(wa.PackedWord(tuple(range(1, 11)))) == "1,2,3,4,5,6,7,8,9,10"
    assert str(wa.EMPTY_WORD) == "()" and str(C(2, 1)) == "(2,1)"


def test_set_composition_maps():
    c = scm.SetComposition.of({1, 2}, {3})
    assert wa.sc_to_packed(c) == W("112")
    assert wa.type_of(c) == C(2, 1)
    with pytest.raises(InputError):
        wa.sc_to_packed(scm.SetComposition.of({0}, {1}))
    for n in range(5):
        for x in scm.all_set_compositions(range(1, n + 1)):
            assert wa.packed_to_sc(wa.sc_to_packed(x)) == x


def test_lambda_examples():
    assert wa.lambda_map(qp.parse_dsl("0~1")) == lin(C(2))
    assert wa.lambda_map(ta.iso(qp.parse_dsl("0,1~2"))) == lin(C(1, 2), C(2, 1), C(3))


def test_Lambda_examples():
    assert wa.Lambda_map(ta.labeled("1<2")) == lin(W("12"))
    assert wa.Lambda_map(ta.labeled("2")) == lin(W("12"), W("21"), W("11"))
    assert len(wa.Lambda_map(ta.labeled("3"))) == 13
