import math
from fractions import Fraction

import pytest

from topohopf import moulds as ml
from topohopf import qposet as qp
from topohopf import topalg as ta
from topohopf.errors import DomainError, DSLSyntaxError, InputError, ResourceError, ValidationError

CAPS = ml.Caps(4, 8)
SMALL = ml.Caps(3, 6)


def test_caps_parse():
    assert ml.Caps.parse("3,5") == ml.Caps(3, 5)
    with pytest.raises(InputError):
        ml.Caps.parse("3")
    with pytest.raises(InputError):
        ml.Caps(-1, 2)


def test_product_unit_and_empty_value():
    M, N = ml.random_mould(1, "a"), ml.random_mould(2, "b")
    assert (M * ml.ONE).equals(M, CAPS) and (ml.ONE * M).equals(M, CAPS)
    assert (M * N)(()) == M(()) * N(())


def test_product_associative():
    M, N, Q = (ml.random_mould(k, "p") for k in range(3))
    assert ((M * N) * Q).equals(M * (N * Q), CAPS)


def test_composition_identities_and_associativity():
    M, N, Q = (ml.random_mould(k, "c") for k in range(3))
    assert (M @ ml.I).equals(M, CAPS)
    J = ml.I @ N
    assert all(J(s) == N(s) for s in ml.sequences(CAPS, nonempty=True))
    assert (M @ N)(()) == M(())
    assert ((M @ N) @ Q).equals(M @ (N @ Q), SMALL)


def test_shuffle_counts():
    assert len(ml.shuffles((1,), (2,))) == 2
    assert len(ml.quasi_shuffles((1,), (2,))) == 3
    assert len(ml.shuffles((1, 2), (3,))) == 3
    assert sorted(ml.quasi_shuffles((1,), (2,))) == [(1, 2), (2, 1), (3,)]


def test_exp_log():
    assert ml.exp_mould(ml.ZERO).equals(ml.ONE, CAPS)
    A = ml.random_alternal(3)
    assert ml.log_mould(ml.exp_mould(A)).equals(A, CAPS)
    with pytest.raises(DomainError):
        ml.exp_mould(ml.ONE)
    with pytest.raises(DomainError):
        ml.log_mould(ml.ZERO)


def test_exp_of_length_one_family():
    f = {1: Fraction(2), 2: Fraction(-1, 3), 3: Fraction(5)}
    E = ml.exp_mould(ml.length_one(f))
    for s in ml.sequences(CAPS):
        want = Fraction(1, math.factorial(len(s))) * math.prod(f.get(w, 0) for w in s)
        assert E(s) == want


def test_symmetry_examples():
    f = ml.length_one([3, Fraction(1, 2), -2])
    assert ml.is_alternal(f, CAPS)
    assert ml.is_symmetral(ml.exp_mould(f), CAPS)
    assert ml.is_symmetrel(ml.monomial_character([Fraction(1, 2), 2]), SMALL)
    assert not ml.is_symmetral(ml.monomial_character([1, 2]), SMALL)
    v = ml.symmetry_violation(ml.ONE + ml.I, ml.SYMMETRAL, SMALL)
    assert v is not None and v[2] != v[3]


def test_monomial_character():
    assert ml.monomial_character([]).equals(ml.ONE, CAPS)
    t = Fraction(3, 2)
    M = ml.monomial_character([t])
    for s in ml.sequences(CAPS):
        want = 1 if not s else (t ** s[0] if len(s) == 1 else 0)
        assert M(s) == want
    with pytest.raises(InputError):
        ml.monomial_character([2, 1])
    with pytest.raises(InputError):
        ml.monomial_character([1, 1])


def test_families_have_their_symmetry():
    for kind, make in ml.FAMILIES.items():
        assert ml.has_symmetry(make(7), kind, SMALL), kind


@pytest.mark.parametrize("rule", ml.STABILITY_RULES, ids=str)
def test_stability_rules(rule):
    verdict = ml.check_rule(rule, seed=0, caps=SMALL)
    assert verdict.ok, verdict.detail


def test_mixed_product_rule_is_refuted():
    M = ml.random_symmetrel(0)
    prod = M * ml.ONE
    assert ml.is_symmetral(ml.ONE, CAPS)
    assert not ml.is_symmetral(prod, SMALL)
    assert not ml.check_rule(ml.MIXED_PRODUCT_RULE, caps=SMALL).ok


def test_parse_mould():
    E = ml.parse_mould("exp(f=1,1/2)")
    assert E((2,)) == Fraction(1, 2) and E((1, 1)) == Fraction(1, 2)
    M = ml.parse_mould("monomial(x=1,2) @ I * one")
    assert M.equals(ml.monomial_character([1, 2]), SMALL)
    assert ml.parse_mould("(one)").equals(ml.ONE, SMALL)
    a, b = ml.parse_mould("exp(f=1) @ exp(f=2) * I"), (ml.parse_mould("exp(f=1)") @ ml.parse_mould("exp(f=2)")) * ml.I
    assert a.equals(b, SMALL)


@pytest.mark.parametrize("text, pos", [("one *", 5), ("foo", 0), ("exp(g=1)", 4), ("exp(f=1/0)", 6), ("(one", 4)])
def test_parse_mould_errors(text, pos):
    with pytest.raises(DSLSyntaxError) as err:
        ml.parse_mould(text)
    assert err.value.pos == pos


# ---------------------------------------------------------------- characters


@pytest.mark.parametrize("alg", ml.ALGEBRAS)
def test_character_unit_and_singleton(alg):
    M, N = ml.random_character(alg, 3, 1), ml.random_character(alg, 3, 2)
    e = ml.unit_character(alg, 3)
    assert ml.char_product(M, e) == M == ml.char_product(e, M)
    pt = qp.parse_dsl("1")
    assert ml.char_product(M, N)(pt) == M(pt) + N(pt)
    assert e(qp.EMPTY) == 1 and e(pt) == 0


@pytest.mark.parametrize("alg", ml.ALGEBRAS)
def test_character_is_multiplicative(alg):
    M = ml.random_character(alg, 3, 5)
    A, B = qp.parse_dsl("1<2"), qp.parse_dsl("3~4,4<5")
    assert M(qp.product(A, B)) == ml.Character.from_function(alg, M, 3)(A) * M(qp.standardize(B))


@pytest.mark.parametrize("alg", ml.ALGEBRAS)
def test_product_associative_on_three_points(alg):
    M, N, Q = (ml.random_character(alg, 3, k) for k in range(3))
    L = ml.char_product(ml.char_product(M, N), Q)
    R = ml.char_product(M, ml.char_product(N, Q))
    assert L == R


@pytest.mark.parametrize("alg", ml.ALGEBRAS)
def test_J_is_two_sided_identity(alg):
    M = ml.random_character(alg, 3, 9)
    J = ml.J_character(alg, 3)
    assert ml.char_compose(M, J) == M == ml.char_compose(J, M)


def test_distributivity_on_three_points():
    M1, M2, N = (ml.random_character("H", 3, k, "d") for k in range(3))
    left = ml.char_compose(ml.char_product(M1, M2), N)
    right = ml.char_product(ml.char_compose(M1, N), ml.char_compose(M2, N))
    assert left == right


def test_character_errors():
    with pytest.raises(InputError):
        ml.char_product(ml.unit_character("H", 2), ml.unit_character("HT", 2))
    with pytest.raises(InputError):
        ml.char_compose(ml.unit_character("H", 2), ml.unit_character("H", 3))
    with pytest.raises(InputError):
        ml.Character("X", {}, 1)
    with pytest.raises(ResourceError):
        ml.unit_character("H", 1)(qp.parse_dsl("1<2"))


def test_quasi_posetization_examples():
    Q = ml.quasi_posetization(ml.ONE, cap=3)
    assert Q == ml.unit_character("H", 3)
    t = Fraction(2, 3)
    Qt = ml.quasi_posetization(ml.monomial_character([t]), cap=3)
    for a in (1, 2, 3):
        assert Qt(qp.coarse(range(a))) == t**a
    with pytest.raises(ValidationError):
        ml.quasi_posetization(ml.ONE + ml.I.scale(2), cap=2)


def test_quasi_posetization_morphisms():
    phi, psi = ml.monomial_character([Fraction(1, 2), 1]), ml.monomial_character([3])
    Qp, Qs = ml.quasi_posetization(phi, 3), ml.quasi_posetization(psi, 3)
    assert ml.quasi_posetization(phi * psi, 3) == ml.char_product(Qp, Qs)
    assert ml.quasi_posetization(phi @ psi, 3) == ml.char_compose(Qp, Qs)


def test_lambda_value_on_iso_class():
    phi = ml.monomial_character([1, 2])
    T = qp.parse_dsl("1<2,1<3")
    assert ml.lambda_value(phi, ta.iso(T)) == ml.lambda_value(phi, T)
