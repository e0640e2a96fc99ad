import numpy as np
import pytest

from topohopf import qposet as qp
from topohopf.errors import DomainError, DSLSyntaxError, InputError, ResourceError, ValidationError

fs = frozenset
P = qp.parse_dsl


def test_from_relations_closes_transitively():
    T = qp.from_relations({0, 1, 2}, [(0, 1), (1, 2)])
    assert T.le(0, 2) and not T.le(2, 0)
    assert T == qp.chain([0, 1, 2])


def test_from_relations_two_cycle_is_coarse():
    assert qp.from_relations({0, 1}, [(0, 1), (1, 0)]) == qp.coarse([0, 1])


def test_from_relations_unknown_atom():
    with pytest.raises(InputError):
        qp.from_relations({0, 1}, [(0, 5)])


def test_open_sets_small_cases():
    assert qp.open_sets(P("0<1")) == {fs(), fs({1}), fs({0, 1})}
    assert len(qp.open_sets(qp.discrete([0, 1]))) == 4
    assert qp.open_sets(qp.coarse([0, 1])) == {fs(), fs({0, 1})}


def test_from_open_sets_round_trip():
    assert qp.from_open_sets([0, 1], [(), (1,), (0, 1)]) == P("0<1")
    assert qp.from_open_sets([0, 1], [(), (0,), (1,), (0, 1)]) == qp.discrete([0, 1])
    for T in qp.all_topologies(range(1, 4)):
        assert qp.from_open_sets(T.atoms, qp.open_sets(T)) == T


@pytest.mark.parametrize(
    "family, word",
    [
        ([(0,), (0, 1)], "axiom 1"),
        ([(), (0,)], "axiom 1"),
        ([(), (0,), (1,), (0, 1, 2)], "axiom 2.*union"),
        ([(), (0, 1), (1, 2), (0, 1, 2)], "axiom 3.*intersection"),
    ],
)
def test_from_open_sets_names_failed_axiom(family, word):
    with pytest.raises(ValidationError, match=word):
        qp.from_open_sets([0, 1, 2] if any(2 in f for f in family) else [0, 1], family)


def test_dual_reverses_and_complements():
    assert qp.dual(P("0<1")) == P("1<0")
    assert qp.dual(qp.discrete([0, 1, 2])) == qp.discrete([0, 1, 2])
    for T in qp.all_topologies(range(1, 4)):
        X = T.ground
        assert qp.open_sets(qp.dual(T)) == {X - Y for Y in qp.open_sets(T)}
        assert qp.dual(qp.dual(T)) == T


def test_restrict():
    T = qp.chain([0, 1, 2])
    assert qp.restrict(T, {0, 2}) == P("0<2")
    assert qp.restrict(T, T.atoms) == T
    assert qp.restrict(T, ()) == qp.EMPTY
    with pytest.raises(InputError):
        qp.restrict(T, {7})


def test_equiv_classes_and_components():
    assert len(qp.equiv_classes(qp.discrete([0, 1, 2]))) == 3
    assert len(qp.equiv_classes(qp.coarse([0, 1, 2]))) == 1
    T = qp.from_relations({0, 1, 2}, [(0, 1), (1, 0), (1, 2)])
    assert qp.equiv_classes(T).blocks == (fs({0, 1}), fs({2}))
    assert qp.connected_components(qp.discrete([0, 1])).blocks == (fs({0}), fs({1}))
    assert qp.connected_components(P("0<1")).blocks == (fs({0, 1}),)
    assert qp.connected_components(P("0<1,2")).blocks == (fs({0, 1}), fs({2}))


def test_components_are_classes_of_self_quotient():
    for T in qp.all_topologies(range(1, 5)):
        assert qp.connected_components(T) == qp.equiv_classes(qp.quotient(T, T))


def test_product_and_overlap():
    assert qp.product(P("0"), P("1")) == qp.discrete([0, 1])
    assert qp.product(P("0<1"), P("2")) == P("0<1,2")
    with pytest.raises(InputError):
        qp.product(P("0<1"), P("1"))


def test_product_open_sets():
    for T1 in qp.all_topologies([0, 1]):
        for T2 in qp.all_topologies([2, 3]):
            T = qp.product(T1, T2)
            want = {Y for Y in map(fs, _subsets(T.atoms)) if Y & T1.ground in qp.open_sets(T1) and Y & T2.ground in qp.open_sets(T2)}
            assert qp.open_sets(T) == want


def _subsets(atoms):
    atoms = list(atoms)
    for m in range(1 << len(atoms)):
        yield [a for i, a in enumerate(atoms) if m >> i & 1]


def test_is_finer():
    T = P("0<1,1<2")
    assert qp.is_finer(qp.discrete(T.atoms), T)
    assert qp.is_finer(T, T)
    assert not qp.is_finer(P("0<1"), P("1<0"))
    with pytest.raises(InputError):
        qp.is_finer(P("0<1"), P("0<2"))


def test_quotient_examples():
    T = P("0<1,0<2")
    assert qp.quotient(T, qp.discrete(T.atoms)) == T
    D = qp.discrete([0, 1])
    assert qp.quotient(D, D) == D
    with pytest.raises(DomainError):
        qp.quotient(P("0<1"), P("1<0"))


def test_admissibility_examples():
    T = P("0<1")
    assert qp.is_admissible(T, T)
    assert qp.is_admissible(qp.discrete([0, 1]), T)
    assert not qp.is_admissible(qp.discrete([0, 1]), qp.coarse([0, 1]))
    assert not qp.is_admissible(P("1<0"), T)


def test_admissible_refinements_examples():
    C = qp.coarse([0, 1])
    assert qp.admissible_refinements(C) == [C]
    assert set(qp.admissible_refinements(P("0<1"))) == {P("0<1"), qp.discrete([0, 1])}
    D = qp.discrete([0, 1])
    assert qp.admissible_refinements(D) == [D]


def test_admissible_refinements_contain_unique_group_like():
    for T in qp.all_topologies(range(1, 5)):
        refs = qp.admissible_refinements(T)
        assert T in refs and len(set(refs)) == len(refs)
        assert sum(qp.is_group_like(S) for S in refs) == 1


def test_degree_and_group_like():
    assert qp.degree(qp.coarse([0, 1, 2])) == 0
    assert qp.degree(P("0<1")) == 1
    assert qp.degree(qp.discrete([0, 1, 2])) == 0
    assert qp.degree(qp.chain([0, 1, 2, 3])) == 3
    assert qp.is_group_like(qp.coarse([0, 1])) and qp.is_group_like(qp.discrete([0, 1]))
    assert not qp.is_group_like(P("0<1"))


def test_relabel():
    T = P("0<1")
    assert qp.relabel(T, {0: 0, 1: 1}) == T
    assert qp.relabel(T, {0: 1, 1: 0}) == P("1<0")
    with pytest.raises(InputError):
        qp.relabel(T, {0: 5, 1: 5})
    with pytest.raises(InputError):
        qp.relabel(T, {0: 1})


def test_relabel_preserves_degree():
    import itertools

    for T in qp.all_topologies(range(1, 4)):
        for perm in itertools.permutations(range(1, 4)):
            assert qp.degree(qp.relabel(T, dict(zip(range(1, 4), perm)))) == qp.degree(T)


def test_standardize_and_shift():
    assert qp.standardize(P("3<7")) == P("1<2")
    assert qp.shift(P("1<2"), 3) == P("4<5")


def test_canonical_form():
    assert qp.canonical_form(P("0<1")) == qp.canonical_form(P("1<0"))
    assert qp.canonical_form(P("0<1")) != qp.canonical_form(qp.discrete([0, 1]))
    assert len({qp.canonical_form(T) for T in qp.all_topologies(range(1, 4))}) == 9


def test_canonical_form_cap():
    with pytest.raises(ResourceError, match="canonicalizer"):
        qp.canonical_form(qp.discrete(range(3)), cap=2)


def test_canonical_representative_is_homeomorphic():
    for T in qp.all_topologies(range(1, 4)):
        R = qp.canonical_representative(T)
        assert qp.canonical_form(R) == qp.canonical_form(T)
        assert len(R) == len(T)


def test_enumerators_agree():
    for n in range(5):
        a = qp.all_topologies(range(1, n + 1))
        b = qp.topologies_by_open_sets(range(1, n + 1))
        assert sorted(a, key=lambda T: T.sort_key()) == sorted(b, key=lambda T: T.sort_key())
    assert [len(qp.all_topologies(range(n))) for n in range(5)] == [1, 1, 4, 29, 355]


def test_enumeration_is_capped():
    with pytest.raises(ResourceError):
        qp.all_topologies(range(6))
    with pytest.raises(ResourceError):
        qp.topologies_by_open_sets(range(6))


def test_dsl_parsing():
    assert P("0<1") == qp.chain([0, 1])
    assert P("0~1") == qp.coarse([0, 1])
    assert P("0<1,1<2") == P("0<1,1<2,0<2")
    assert P("") == qp.EMPTY
    assert P("4, 2") == qp.discrete([2, 4])


@pytest.mark.parametrize("text, pos", [("0<<1", 2), ("0<", 2), ("0<1,", 3), ("0 x 1", 2), ("0<1<2", 3)])
def test_dsl_errors_have_positions(text, pos):
    with pytest.raises(DSLSyntaxError) as err:
        P(text)
    assert err.value.pos == pos


def test_dsl_self_relations():
    with pytest.raises(DSLSyntaxError):
        P("1<1")
    assert P("1~1") == P("1")


def test_dsl_round_trip():
    for T in qp.all_topologies(range(1, 5)):
        assert P(qp.print_dsl(T)) == T


def test_json_round_trip():
    for T in qp.all_topologies(range(3)):
        assert qp.from_json(qp.to_json(T)) == T
        assert qp.parse(qp.to_json(T)) == T
    with pytest.raises(ValidationError):
        qp.from_json({"atoms": [0, 1], "leq": [[True, True], [True, False]]})


def test_qposet_rejects_non_transitive_matrix():
    m = np.array([[1, 1, 0], [0, 1, 1], [0, 0, 1]], dtype=bool)
    with pytest.raises(ValidationError, match="transitive"):
        qp.QPoset((0, 1, 2), m)


def test_leq_is_read_only():
    T = P("0<1")
    with pytest.raises(ValueError):
        T.leq[0, 0] = False
