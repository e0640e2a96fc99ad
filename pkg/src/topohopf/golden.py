"""Reference expansions used as golden data, written over named blocks.

A small name-level language describes topologies whose points are blocks of
atoms: ``A<B, A<C`` is the corolla with root ``A``, ``A+B`` merges two blocks
into one class, and bare names are isolated classes.  Set compositions are
written ``(A,B+C)`` and compositions over class sizes ``a,b+c``.
"""

from __future__ import annotations

from typing import Mapping

from . import qposet as qp
from . import topalg as ta
from . import wordalg as wa
from .lincomb import LinComb
from .qposet import QPoset
from .setcomp import SetComposition, sc_product, sc_rho, L

Blocks = Mapping[str, frozenset[int]]


def _vertex(name: str, blocks: Blocks) -> frozenset[int]:
    return frozenset().union(*(blocks[p.strip()] for p in name.split("+")))


def named_top(shape: str, blocks: Blocks) -> QPoset:
    pairs: list[tuple[int, int]] = []
    atoms: set[int] = set()
    for item in (s.strip() for s in shape.split(",")):
        verts = [_vertex(v, blocks) for v in item.split("<")]
        for V in verts:
            atoms |= V
            pairs += [(x, y) for x in V for y in V]
        for V, W in zip(verts, verts[1:]):
            pairs += [(x, y) for x in V for y in W]
    return qp.from_relations(atoms, pairs)


def named_sc(shape: str, blocks: Blocks) -> SetComposition:
    body = shape.strip().strip("()")
    return SetComposition(tuple(_vertex(v, blocks) for v in body.split(",")))


def named_comp(shape: str, sizes: Mapping[str, int]) -> wa.Composition:
    return wa.Composition(tuple(sum(sizes[p] for p in part.split("+")) for part in shape.split(",")))


SINGLE = {"A": frozenset({0}), "B": frozenset({1}), "C": frozenset({2}), "E": frozenset({0}), "F": frozenset({1})}
MIXED = {
    "A": frozenset({0}),
    "B": frozenset({1, 2}),
    "C": frozenset({3, 4, 5, 6}),
    "E": frozenset({0, 1}),
    "F": frozenset({2}),
}
LABELINGS = {"singletons": SINGLE, "mixed": MIXED}

X3 = "A+B+C"

# (name, topology, [(left, right), ...])
GAMMA = [
    ("coarse", "E+F", [("E+F", "E+F")]),
    ("chain2", "E<F", [("E<F", "E+F"), ("E,F", "E<F")]),
    ("discrete2", "E,F", [("E,F", "E,F")]),
    (
        "corolla",
        "A<B,A<C",
        [("A<B,A<C", X3), ("A<B,C", "A+B<C"), ("A<C,B", "A+C<B"), ("A,B,C", "A<B,A<C")],
    ),
    ("chain3", "A<B<C", [("A<B<C", X3), ("A<B,C", "A+B<C"), ("A,B<C", "A<B+C"), ("A,B,C", "A<B<C")]),
    (
        "co-corolla",
        "B<A,C<A",
        [("B<A,C<A", X3), ("B<A,C", "C<A+B"), ("C<A,B", "B<A+C"), ("A,B,C", "B<A,C<A")],
    ),
    ("chain2-point", "A<B,C", [("A<B,C", "A+B,C"), ("A,B,C", "A<B,C")]),
    ("discrete3", "A,B,C", [("A,B,C", "A,B,C")]),
]

ALL13 = [
    "(A,B,C)", "(A,C,B)", "(B,A,C)", "(B,C,A)", "(C,A,B)", "(C,B,A)",
    "(A+B,C)", "(A+C,B)", "(B+C,A)", "(A,B+C)", "(B,A+C)", "(C,A+B)", "(A+B+C)",
]

L_EXAMPLES = [
    ("coarse", "E+F", ["(E+F)"]),
    ("chain2", "E<F", ["(E,F)"]),
    ("discrete2", "E,F", ["(E,F)", "(F,E)", "(E+F)"]),
    ("corolla", "A<B,A<C", ["(A,B,C)", "(A,C,B)", "(A,B+C)"]),
    ("chain3", "A<B<C", ["(A,B,C)"]),
    ("co-corolla", "B<A,C<A", ["(B,C,A)", "(C,B,A)", "(B+C,A)"]),
    ("chain2-point", "A<B,C", ["(A,B,C)", "(A,C,B)", "(C,A,B)", "(A+C,B)", "(A,B+C)"]),
    ("discrete3", "A,B,C", ALL13),
]

LAMBDA_SIZES = {"a": 1, "b": 2, "c": 4}
LAMBDA_BLOCKS = {"a": frozenset({0}), "b": frozenset({1, 2}), "c": frozenset({3, 4, 5, 6})}

LAMBDA_EXAMPLES = [
    ("point", "a", ["a"]),
    ("chain2", "a<b", ["a,b"]),
    ("discrete2", "a,b", ["a,b", "b,a", "a+b"]),
    ("corolla", "a<b,a<c", ["a,b,c", "a,c,b", "a,b+c"]),
    ("chain3", "a<b<c", ["a,b,c"]),
    ("co-corolla", "b<a,c<a", ["b,c,a", "c,b,a", "b+c,a"]),
    ("chain2-point", "a<b,c", ["a,b,c", "a,c,b", "c,a,b", "a+c,b", "a,b+c"]),
    (
        "discrete3",
        "a,b,c",
        ["a,b,c", "a,c,b", "b,a,c", "b,c,a", "c,a,b", "c,b,a",
         "a+b,c", "a+c,b", "b+c,a", "a,b+c", "b,a+c", "c,a+b", "a+b+c"],
    ),
]

# DSL on [n] and expected packed words
BIG_LAMBDA_EXAMPLES = [
    ("1", ["1"]),
    ("1<2", ["12"]),
    ("2<1", ["21"]),
    ("1,2", ["12", "21", "11"]),
    ("1<2,1<3", ["123", "132", "122"]),
    ("2<3,2<1", ["213", "312", "212"]),
    ("3<2,3<1", ["231", "321", "221"]),
    ("1<2,2<3", ["123"]),
    ("2<3,3<1", ["312"]),
    ("3<1,1<2", ["231"]),
    ("2<1,3<1", ["312", "321", "211"]),
    ("1<2,3<2", ["132", "231", "121"]),
    ("1<3,2<3", ["123", "213", "112"]),
    ("1<2,3", ["123", "132", "231", "121", "122"]),
    ("1,2,3", ["123", "132", "213", "231", "312", "321", "112", "121", "211", "122", "212", "221", "111"]),
]

SC_PRODUCT_EXAMPLES = [
    ("(A)", "(B)", ["(A,B)", "(B,A)", "(A+B)"]),
    ("(A,B)", "(C)", ["(A,B,C)", "(A,C,B)", "(C,A,B)", "(A,B+C)", "(A+C,B)"]),
    ("(A)", "(B,C)", ["(A,B,C)", "(B,A,C)", "(B,C,A)", "(A+B,C)", "(B,A+C)"]),
]

SC_RHO_EXAMPLES = [
    ("(A)", [("(A)", "(A)")]),
    ("(A,B)", [("(A,B)", "(A+B)"), ("(A,B)", "(A,B)"), ("(B,A)", "(A,B)"), ("(A+B)", "(A,B)")]),
    (
        "(A,B,C)",
        [("(A,B,C)", "(A+B+C)")]
        + [(s, "(A+B,C)") for s in ["(A,B,C)", "(A,C,B)", "(C,A,B)", "(A+C,B)", "(A,B+C)"]]
        + [(s, "(A,B+C)") for s in ["(A,B,C)", "(B,A,C)", "(B,C,A)", "(A+B,C)", "(B,A+C)"]]
        + [(s, "(A,B,C)") for s in ALL13],
    ),
]

# The H_T compatibility counterexample on the topology with 3 below the class {1,2}.
HT_COUNTEREXAMPLE = "3<1,1~2"
HT_SHARED = [
    ("3<1,1~2", "1~2,2~3", ""),
    ("1~2,3", "3<1,1~2", ""),
    ("3<1,1~2", "", "1~2,2~3"),
    ("1~2,3", "", "3<1,1~2"),
]
HT_ONLY_THREE_LEG = ("1,2~3", "1", "1~2")  # m^{1,3} (Gamma x Gamma) Delta side
HT_ONLY_GAMMA_FIRST = ("1~2,3", "1", "1~2")  # (Id x Delta) Gamma side


# ---------------------------------------------------------------- evaluation


def _lin(terms) -> LinComb:
    return LinComb((t, 1) for t in terms)


def gamma_cases(labeling: str = "mixed"):
    """Yield (name, computed, expected) for every reference Gamma expansion."""
    blocks = LABELINGS[labeling]
    for name, shape, terms in GAMMA:
        T = named_top(shape, blocks)
        expected = _lin((named_top(l, blocks), named_top(r, blocks)) for l, r in terms)
        yield name, ta.gamma(T), expected


def L_cases(labeling: str = "mixed"):
    blocks = LABELINGS[labeling]
    for name, shape, terms in L_EXAMPLES:
        yield name, L(named_top(shape, blocks)), _lin(named_sc(s, blocks) for s in terms)


def lambda_cases():
    for name, shape, terms in LAMBDA_EXAMPLES:
        c = ta.iso(named_top(shape, LAMBDA_BLOCKS))
        yield name, wa.lambda_map(c), _lin(named_comp(s, LAMBDA_SIZES) for s in terms)


def Lambda_cases():
    for shape, words in BIG_LAMBDA_EXAMPLES:
        yield shape, wa.Lambda_map(ta.labeled(shape)), _lin(wa.PackedWord.parse(w) for w in words)


def sc_product_cases(labeling: str = "mixed"):
    blocks = LABELINGS[labeling]
    for p, q, terms in SC_PRODUCT_EXAMPLES:
        got = sc_product(named_sc(p, blocks), named_sc(q, blocks))
        yield f"{p}{q}", got, _lin(named_sc(s, blocks) for s in terms)


def sc_rho_cases(labeling: str = "mixed"):
    blocks = LABELINGS[labeling]
    for c, terms in SC_RHO_EXAMPLES:
        got = sc_rho(named_sc(c, blocks))
        yield f"rho{c}", got, _lin((named_sc(l, blocks), named_sc(r, blocks)) for l, r in terms)


def ht_counterexample():
    """(lhs, rhs, shared, lhs_only, rhs_only) for the H_T compatibility counterexample.

    lhs is (Id x Delta) o Gamma, rhs is m^{1,3} o (Gamma x Gamma) o Delta.
    """

    def leg(text: str):
        return ta.labeled(text) if text else ta.HT_UNIT

    a = ta.labeled(HT_COUNTEREXAMPLE)
    lhs, rhs = ta.ht_compatibility_sides(a)
    shared = _lin(tuple(leg(t) for t in term) for term in HT_SHARED)
    lhs_only = _lin([tuple(leg(t) for t in HT_ONLY_GAMMA_FIRST)])
    rhs_only = _lin([tuple(leg(t) for t in HT_ONLY_THREE_LEG)])
    return lhs, rhs, shared, lhs_only, rhs_only


def all_cases():
    """Every golden family as (family, name, computed, expected)."""
    for lab in LABELINGS:
        for name, got, exp in gamma_cases(lab):
            yield f"gamma[{lab}]", name, got, exp
        for name, got, exp in L_cases(lab):
            yield f"L[{lab}]", name, got, exp
        for name, got, exp in sc_product_cases(lab):
            yield f"sc_product[{lab}]", name, got, exp
        for name, got, exp in sc_rho_cases(lab):
            yield f"sc_rho[{lab}]", name, got, exp
    for name, got, exp in lambda_cases():
        yield "lambda", name, got, exp
    for name, got, exp in Lambda_cases():
        yield "Lambda", name, got, exp
