import pytest

from topohopf import qposet as qp
from topohopf import setcomp as scm
from topohopf.errors import InputError
from topohopf.lincomb import LinComb

S = scm.SetComposition.of
P = qp.parse_dsl


def lin(*cs):
    return LinComb((c, 1) for c in cs)


def test_restriction():
    assert scm.sc_restrict(S({0}, {1, 2}), ()) == scm.EMPTY_SC
    assert scm.sc_restrict(S({0}, {1, 2}), {1}) == S({1})
    assert scm.sc_restrict(S({0, 1}, {2}), {0, 2}) == S({0}, {2})
    with pytest.raises(InputError):
        scm.sc_restrict(S({0}), {4})


def test_blocks_validated():
    with pytest.raises(InputError):
        S({0}, set())
    with pytest.raises(InputError):
        S({0, 1}, {1})


def test_product_examples():
    a, b, c = {0}, {1}, {2}
    assert scm.sc_product(S(a), S(b)) == lin(S(a, b), S(b, a), S(a | b))
    assert scm.sc_product(S(a, b), S(c)) == lin(S(a, b, c), S(a, c, b), S(c, a, b), S(a, b | c), S(a | c, b))
    assert scm.sc_product(scm.EMPTY_SC, S(a, b)) == lin(S(a, b)) == scm.sc_product(S(a, b), scm.EMPTY_SC)
    with pytest.raises(InputError):
        scm.sc_product(S(a), S(a))


def test_delta():
    E = scm.EMPTY_SC
    assert scm.sc_delta(E) == LinComb.basis((E, E))
    assert scm.sc_delta(S({0})) == LinComb([((S({0}), E), 1), ((E, S({0})), 1)])
    assert len(scm.sc_delta(S({0}, {1}))) == 3


def test_rho():
    a, b = {0}, {1}
    assert scm.sc_rho(S(a)) == LinComb.basis((S(a), S(a)))
    want = LinComb([((S(a, b), S(a | b)), 1)] + [((x, S(a, b)), 1) for x in (S(a, b), S(b, a), S(a | b))])
    assert scm.sc_rho(S(a, b)) == want
    assert scm.sc_counit(S({0, 1})) == 1 and scm.sc_counit(S(a, b)) == 0


def test_fubini_counts():
    assert [len(scm.all_set_compositions(range(n))) for n in range(7)] == [1, 1, 3, 13, 75, 541, 4683]


def test_linear_extensions_examples():
    assert scm.linear_extensions(P("0<1")) == (S({0}, {1}),)
    assert set(scm.linear_extensions(P("0,1"))) == {S({0}, {1}), S({1}, {0}), S({0, 1})}
    assert scm.linear_extensions(qp.chain([0, 1, 2])) == (S({0}, {1}, {2}),)
    assert scm.L(P("0<1,0<2")) == lin(S({0}, {1}, {2}), S({0}, {2}, {1}), S({0}, {1, 2}))
    assert scm.L(qp.EMPTY) == lin(scm.EMPTY_SC)


def test_linear_extension_predicate_matches_enumeration():
    for T in qp.all_topologies(range(4)):
        got = set(scm.linear_extensions(T))
        want = {C for C in scm.all_set_compositions(T.atoms) if scm.is_linear_extension(C, T)}
        assert got == want


def test_topology_of_has_unique_extension():
    for C in scm.all_set_compositions(range(4)):
        assert scm.L(scm.topology_of(C)) == lin(C)


def test_L_needs_class_blocks():
    # classes stay together
    assert scm.L(P("0~1")) == lin(S({0, 1}))
