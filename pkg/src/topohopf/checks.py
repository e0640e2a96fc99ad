"""Registry of invariant suites, run exhaustively on small instances.

Each suite enumerates instances deterministically from :class:`Params` and
checks one identity per instance.  A failing instance is
reported with both sides rendered canonically.  ``all`` runs every suite.
"""

from __future__ import annotations

import functools
import itertools
import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable

import numpy as np

from . import golden
from . import moulds as ml
from . import qposet as qp
from . import setcomp as scm
from . import topalg as ta
from . import wordalg as wa
from .errors import InputError
from .lincomb import LinComb, apply_legs, merge_legs, tensor
from .qposet import QPoset

TOPOLOGY_COUNTS = (1, 1, 4, 29, 355, 6942)
ISO_CLASS_COUNTS = (1, 1, 3, 9, 33, 139)
FUBINI = (1, 1, 3, 13, 75, 541, 4683)


@dataclass(frozen=True)
class Params:
    n: int = 4
    seed: int = 0
    caps: ml.Caps = ml.DEFAULT_CAPS


@dataclass
class Failure:
    instance: str
    lhs: str
    rhs: str


@dataclass
class CheckReport:
    suite: str
    instances: int = 0
    by_size: dict[int, int] = field(default_factory=dict)
    failures: list[Failure] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self, timing: bool = False) -> str:
        sizes = ", ".join(f"n={k}: {v}" for k, v in sorted(self.by_size.items()))
        verdict = "pass" if self.passed else f"FAIL ({len(self.failures)} failing)"
        line = f"{self.suite}: {verdict} over {self.instances} instances"
        if sizes:
            line += f" [{sizes}]"
        if timing:
            line += f" in {self.elapsed:.2f}s"
        return line

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "suite": self.suite,
            "pass": self.passed,
            "instances": self.instances,
            "by_size": {str(k): v for k, v in sorted(self.by_size.items())},
            "failures": [vars(f) for f in self.failures],
        }
        if timing:
            out["elapsed"] = round(self.elapsed, 3)
        return out


@dataclass(frozen=True)
class Suite:
    name: str
    doc: str
    instances: Callable[[Params], Iterable[tuple[str, int, Any]]]
    check: Callable[[Any, Params], Any]


SUITES: dict[str, Suite] = {}


def suite(name: str, doc: str, instances: Callable[[Params], Iterable]):
    def deco(check):
        SUITES[name] = Suite(name, doc, instances, check)
        return check

    return deco


def _render(x) -> str:
    return str(x)


def _diff(lhs, rhs):
    return None if lhs == rhs else (lhs, rhs)


# ---------------------------------------------------------------- instance pools


@functools.lru_cache(maxsize=None)
def tops(k: int) -> tuple[QPoset, ...]:
    return tuple(qp.all_topologies(range(1, k + 1)))


@functools.lru_cache(maxsize=None)
def _top_index(k: int) -> dict[QPoset, int]:
    return {T: i for i, T in enumerate(tops(k))}


_FINER: dict[int, np.ndarray] = {}


def _finer_matrix(k: int) -> np.ndarray:
    if k not in _FINER:
        mats = np.array([T.leq.reshape(-1) for T in tops(k)], dtype=bool).reshape(len(tops(k)), -1)
        _FINER[k] = ~(mats[:, None, :] & ~mats[None, :, :]).any(-1)
    return _FINER[k]


def finer_than(T: QPoset) -> list[QPoset]:
    """Every topology on the same atoms [k] that is finer than T (including T)."""
    k = len(T)
    pool = tops(k)
    j = _top_index(k)[T]
    fin = _finer_matrix(k)
    return [pool[i] for i in np.flatnonzero(fin[:, j])]


def top_instances(p: Params):
    for k in range(p.n + 1):
        for T in tops(k):
            yield qp.print_dsl(T) or "∅", k, T


def pair_instances(p: Params):
    """Pairs (T1 on [a], T2 on [a+1..a+b]) with a + b <= n."""
    for a in range(p.n + 1):
        for b in range(p.n + 1 - a):
            for T1 in tops(a):
                for T2 in tops(b):
                    T2s = qp.shift(T2, a)
                    yield f"{qp.print_dsl(T1)} | {qp.print_dsl(T2s)}", a + b, (T1, T2s)


def labeled_pair_instances(p: Params):
    for a in range(p.n + 1):
        for b in range(p.n + 1 - a):
            for T1 in tops(a):
                for T2 in tops(b):
                    yield f"{qp.print_dsl(T1)} | {qp.print_dsl(T2)}", a + b, (ta.LabeledTop(T1), ta.LabeledTop(T2))


def iso_instances(p: Params):
    for k in range(p.n + 1):
        for c in ta.iso_classes(k):
            yield str(c), k, c


def iso_pair_instances(p: Params):
    for a in range(p.n + 1):
        for b in range(p.n + 1 - a):
            for c in ta.iso_classes(a):
                for d in ta.iso_classes(b):
                    yield f"{c} | {d}", a + b, (c, d)


def sc_instances(p: Params):
    for k in range(p.n + 1):
        for C in scm.all_set_compositions(range(1, k + 1)):
            yield str(C), k, C


def sc_pair_instances(p: Params):
    for a in range(p.n + 1):
        for b in range(p.n + 1 - a):
            for C1 in scm.all_set_compositions(range(1, a + 1)):
                for C2 in scm.all_set_compositions(range(a + 1, a + b + 1)):
                    yield f"{C1}{C2}", a + b, (C1, C2)


def single(label: str):
    return lambda p: [(label, 0, None)]


# ---------------------------------------------------------------- qposet


def _is_quasi_order(T: QPoset) -> bool:
    n = len(T)
    m = T.leq
    if not all(m[i, i] for i in range(n)):
        return False
    return all(m[i, k] for i in range(n) for j in range(n) for k in range(n) if m[i, j] and m[j, k])


@suite("closure-soundness", "constructor outputs are reflexive and transitive", top_instances)
def _closure(T: QPoset, p: Params):
    outs = [T, qp.dual(T), qp.product(T, qp.shift(T, len(T)))]
    outs += [qp.restrict(T, Y) for Y in qp.iter_open_sets(T)]
    outs += [qp.quotient(T, S) for S in finer_than(T)]
    bad = [U for U in outs if not _is_quasi_order(U)]
    return None if not bad else (bad[0], "a quasi-order")


@suite("quotient-duality", "dual(T/T') = dual(T)/dual(T') for T' finer than T", top_instances)
def _quot_dual(T: QPoset, p: Params):
    for S in finer_than(T):
        lhs, rhs = qp.dual(qp.quotient(T, S)), qp.quotient(qp.dual(T), qp.dual(S))
        if lhs != rhs:
            return lhs, rhs
    return None


@suite("shrink", "T/T' = (T/T'')/(T'/T'') and T'/T'' finer than T/T'' on chains T'' < T' < T", top_instances)
def _shrink(T: QPoset, p: Params):
    quot = functools.lru_cache(maxsize=None)(qp.quotient)
    for S in finer_than(T):
        q = quot(T, S)
        for R in finer_than(S):
            a, b = quot(T, R), quot(S, R)
            if not qp.is_finer(b, a):
                return f"{b} finer than {a}", "false"
            rhs = qp.quotient(a, b)
            if q != rhs:
                return q, rhs
    return None


@suite("classes", "admissible refinements keep the equivalence classes", top_instances)
def _classes(T: QPoset, p: Params):
    for S in qp.admissible_refinements(T):
        if qp.equiv_classes(S) != qp.equiv_classes(T):
            return qp.equiv_classes(S), qp.equiv_classes(T)
    return None


@suite("connected-components", "T/T' has the connected components of T", top_instances)
def _components(T: QPoset, p: Params):
    for S in finer_than(T):
        a, b = qp.connected_components(qp.quotient(T, S)), qp.connected_components(T)
        if a != b:
            return a, b
    return None


@suite("admissible-transitivity", "admissible refinement is transitive", top_instances)
def _adm_trans(T: QPoset, p: Params):
    for S in qp.admissible_refinements(T):
        for R in qp.admissible_refinements(S):
            if not qp.is_admissible(R, T):
                return f"{R} vs {T}", "admissible"
    return None


@suite("transit-bijection", "T' -> T'/T'' is a bijection onto the admissible refinements of T/T''", top_instances)
def _transit(T: QPoset, p: Params):
    adm = qp.admissible_refinements(T)
    for R in adm:
        middle = [S for S in adm if qp.is_admissible(R, S)]
        image = [qp.quotient(S, R) for S in middle]
        target = set(qp.admissible_refinements(qp.quotient(T, R)))
        if len(set(image)) != len(image) or set(image) != target:
            return sorted(map(str, image)), sorted(map(str, target))
    return None


@suite("admissible-duality", "T' admissible in T iff dual(T') admissible in dual(T)", top_instances)
def _adm_dual(T: QPoset, p: Params):
    for S in finer_than(T):
        a, b = qp.is_admissible(S, T), qp.is_admissible(qp.dual(S), qp.dual(T))
        if a != b:
            return f"{S} in {T}: {a}", b
    return None


@suite("admissible-structure", "admissible refinements agree with the definitional filter", top_instances)
def _adm_struct(T: QPoset, p: Params):
    fast = qp.admissible_refinements(T)
    slow = [S for S in finer_than(T) if qp.is_admissible(S, T)]
    if set(fast) != set(slow) or len(fast) != len(slow):
        return sorted(map(str, fast)), sorted(map(str, slow))
    for S in fast:
        rebuilt = qp.product(*(qp.restrict(T, B) for B in qp.connected_components(S)))
        if rebuilt != S:
            return S, rebuilt
    return None


@suite("dsl-roundtrip", "DSL and JSON forms round-trip, also on sparse atom labels", top_instances)
def _dsl(T: QPoset, p: Params):
    sparse = qp.relabel(T, {a: 2 * a + 3 for a in T.atoms})
    for U in (T, sparse):
        if qp.parse_dsl(qp.print_dsl(U)) != U:
            return qp.parse_dsl(qp.print_dsl(U)), U
        if qp.from_json(qp.to_json(U)) != U:
            return qp.from_json(qp.to_json(U)), U
    return None


def _count_instances(p: Params):
    return [(f"n={k}", k, k) for k in range(p.n + 1)]


@suite("topology-count", "open-set and matrix enumerators agree and match the recorded counts", _count_instances)
def _top_count(k: int, p: Params):
    a = set(qp.all_topologies(range(1, k + 1)))
    b = set(qp.topologies_by_open_sets(range(1, k + 1)))
    if a != b:
        return len(a), len(b)
    if k < len(TOPOLOGY_COUNTS) and len(a) != TOPOLOGY_COUNTS[k]:
        return len(a), TOPOLOGY_COUNTS[k]
    return None


@suite("iso-count", "canonical forms are relabeling invariant and count the classes", _count_instances)
def _iso_count(k: int, p: Params):
    rng = random.Random(f"{p.seed}:iso:{k}")
    forms = set()
    for T in tops(k):
        perm = list(range(1, k + 1))
        rng.shuffle(perm)
        U = qp.relabel(T, dict(zip(range(1, k + 1), perm)))
        if qp.canonical_form(U) != qp.canonical_form(T):
            return U, T
        forms.add(qp.canonical_form(T))
    if k < len(ISO_CLASS_COUNTS) and len(forms) != ISO_CLASS_COUNTS[k]:
        return len(forms), ISO_CLASS_COUNTS[k]
    return None


# ---------------------------------------------------------------- lincomb


def _seeded(p: Params, count: int = 100):
    return [(f"seed={p.seed}#{i}", 0, (p.seed, i)) for i in range(count)]


def _rand_frac(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-50, 50), rng.randint(1, 30))


@suite("rational-ring", "ring axioms and normal form for the exact rationals", _seeded)
def _ring(arg, p: Params):
    rng = random.Random(f"ring:{arg}")
    a, b, c = (_rand_frac(rng) for _ in range(3))
    laws = [
        ((a + b) + c, a + (b + c)),
        ((a * b) * c, a * (b * c)),
        (a * (b + c), a * b + a * c),
        (a * b, b * a),
        (a + (-a), Fraction(0)),
    ]
    for lhs, rhs in laws:
        if lhs != rhs:
            return lhs, rhs
    for x in (a, b, c, a * b + c):
        if x.denominator <= 0 or math.gcd(x.numerator, x.denominator) != 1:
            return x, "lowest terms"
    return None


def _rand_comb(rng: random.Random, basis: str = "xyzw") -> LinComb:
    return LinComb((rng.choice(basis), _rand_frac(rng)) for _ in range(3))


@suite("lincomb-laws", "module laws and bilinearity of the tensor product", _seeded)
def _lincomb(arg, p: Params):
    rng = random.Random(f"lc:{arg}")
    a, b, c = (_rand_comb(rng) for _ in range(3))
    k = _rand_frac(rng)
    f = lambda s: LinComb({s + s: 1, "u": 2})  # noqa: E731
    from .lincomb import ZERO, extend_linear

    F = extend_linear(f)
    laws = [
        (a + ZERO, a),
        (a.scale(0), ZERO),
        (tensor(a + b, c), tensor(a, c) + tensor(b, c)),
        (tensor(a, b.scale(k)), tensor(a, b).scale(k)),
        (F(a.scale(k) + b), F(a).scale(k) + F(b)),
        (LinComb(list(a.items())[::-1]), a),
        (extend_linear(LinComb.basis)(a), a),
    ]
    for lhs, rhs in laws:
        if lhs != rhs:
            return lhs, rhs
    return None


# ---------------------------------------------------------------- topalg


@suite("gamma-coassoc", "(Gamma x Id) Gamma = (Id x Gamma) Gamma", top_instances)
def _gamma_coassoc(T: QPoset, p: Params):
    return _diff(*ta.gamma_coassoc_sides(T))


def _counit_sides(T: QPoset, cop, eps):
    g = cop(T)
    left = LinComb((r, c * eps(l)) for (l, r), c in g)
    right = LinComb((l, c * eps(r)) for (l, r), c in g)
    return left, right


@suite("gamma-counit", "(eps x Id) Gamma = Id = (Id x eps) Gamma", top_instances)
def _gamma_counit(T: QPoset, p: Params):
    left, right = _counit_sides(T, ta.gamma, ta.counit_gamma)
    return _diff(left, ta.lin(T)) or _diff(right, ta.lin(T))


@suite("gamma-mult", "Gamma(T1 T2) = Gamma(T1) Gamma(T2)", pair_instances)
def _gamma_mult(pair, p: Params):
    T1, T2 = pair
    return _diff(ta.gamma(qp.product(T1, T2)), ta.legwise_product(ta.gamma(T1), ta.gamma(T2)))


@suite("delta-coassoc", "Delta is coassociative, with counit", top_instances)
def _delta_coassoc(T: QPoset, p: Params):
    left, right = _counit_sides(T, ta.delta, ta.counit_delta)
    return _diff(*ta.delta_coassoc_sides(T)) or _diff(left, ta.lin(T)) or _diff(right, ta.lin(T))


@suite("delta-mult", "Delta(T1 T2) = Delta(T1) Delta(T2)", pair_instances)
def _delta_mult(pair, p: Params):
    T1, T2 = pair
    return _diff(ta.delta(qp.product(T1, T2)), ta.legwise_product(ta.delta(T1), ta.delta(T2)))


@suite("compat", "(Id x Delta) Gamma = m13 (Gamma x Gamma) Delta at the species level", top_instances)
def _compat(T: QPoset, p: Params):
    return _diff(*ta.compatibility_sides(T))


def _subsets(atoms):
    atoms = list(atoms)
    for r in range(len(atoms) + 1):
        yield from (frozenset(c) for c in itertools.combinations(atoms, r))


def _convex(U: QPoset, Y: frozenset) -> bool:
    return all(z in Y for a in Y for b in Y for z in U.atoms if U.le(a, z) and U.le(z, b))


REFUTE = "refute"


def _restrict_quotient_instances(p: Params):
    yield from top_instances(p)
    yield "arbitrary subsets (refuted)", 3, REFUTE


@suite(
    "restrict-quotient",
    "T'|Y is admissible in T|Y for every Y, and (T/T')|Y = T|Y / T'|Y for Y convex in T/T'",
    _restrict_quotient_instances,
)
def _restrict_quotient(T, p: Params):
    if T is REFUTE:
        # corolla 1<2, 1<3 with T' = (1<3)(2): 3 < 2 survives in the quotient but not upstairs
        T, S, Y = qp.parse_dsl("1<2,1<3"), qp.parse_dsl("1<3,2"), frozenset({2, 3})
        lhs, rhs = qp.restrict(qp.quotient(T, S), Y), qp.quotient(qp.restrict(T, Y), qp.restrict(S, Y))
        return None if qp.is_admissible(S, T) and lhs != rhs else (lhs, rhs)
    for S in qp.admissible_refinements(T):
        q = qp.quotient(T, S)
        for Y in _subsets(T.atoms):
            if not qp.is_admissible(qp.restrict(S, Y), qp.restrict(T, Y)):
                return f"{qp.restrict(S, Y)} in {qp.restrict(T, Y)}", "admissible"
            if not _convex(q, Y):
                continue
            lhs = qp.restrict(q, Y)
            rhs = qp.quotient(qp.restrict(T, Y), qp.restrict(S, Y))
            if lhs != rhs:
                return lhs, rhs
    return None


@suite("gamma-grading", "degrees add up along Gamma", top_instances)
def _grading(T: QPoset, p: Params):
    for (l, r), _ in ta.gamma(T):
        if qp.degree(l) + qp.degree(r) != qp.degree(T):
            return f"{qp.degree(l)} + {qp.degree(r)}", qp.degree(T)
    return None


@suite("involution-gamma", "the dual is a coalgebra map for Gamma", top_instances)
def _inv_gamma(T: QPoset, p: Params):
    return _diff(ta.gamma(T).map_basis(lambda k: (qp.dual(k[0]), qp.dual(k[1]))), ta.gamma(qp.dual(T)))


@suite("h-descent", "the bialgebra structure descends to isomorphism classes", top_instances)
def _h_descent(T: QPoset, p: Params):
    k = len(T)
    U = qp.relabel(T, {a: k + 1 - a for a in T.atoms})
    for f in (ta.gamma, ta.delta):
        d = _diff(ta.to_iso(f(T)), ta.to_iso(f(U)))
        if d:
            return d
    return _diff(ta.iso(qp.product(T, qp.shift(U, k))), ta.iso_product(ta.iso(T), ta.iso(U)))


@suite("antipode", "m (S x Id) Delta = m (Id x S) Delta = unit counit on H", iso_instances)
def _antipode(c: ta.IsoClass, p: Params):
    expected = LinComb.basis(ta.ISO_UNIT) if len(c) == 0 else LinComb()
    left = ta.antipode_convolution(c)
    right = LinComb.sum(
        ta.iso_product_lin(LinComb.basis(a), ta.antipode_H(b)).scale(k) for (a, b), k in ta.delta_H(c)
    )
    return _diff(left, expected) or _diff(right, expected)


@suite("ht-compat-counterexample", "compatibility fails in H_T on the standard counterexample, with one differing term", single("3<1,1~2"))
def _ht_counter(_, p: Params):
    lhs, rhs, shared, lhs_only, rhs_only = golden.ht_counterexample()
    if lhs == rhs:
        return lhs, "a difference"
    return _diff(lhs, shared + lhs_only) or _diff(rhs, shared + rhs_only)


def _triples(p: Params):
    m = min(p.n, 2)
    pool = [ta.LabeledTop(T) for k in range(m + 1) for T in tops(k)]
    for a, b, c in itertools.product(pool, repeat=3):
        yield f"{a} | {b} | {c}", a.n + b.n + c.n, (a, b, c)


def _join_recipe(a: ta.LabeledTop, b: ta.LabeledTop) -> ta.LabeledTop:
    n, m = a.n, b.n
    tail = frozenset(range(n + 1, n + m + 1))
    fam = [frozenset(y + n for y in Y) for Y in qp.open_sets(b.top)]
    fam += [Y | tail for Y in qp.open_sets(a.top)]
    return ta.LabeledTop(qp.from_open_sets(range(1, n + m + 1), fam))


@suite("ht-join", "the joint product is an associative unital product given by its open sets", _triples)
def _ht_join(t, p: Params):
    a, b, c = t
    lhs, rhs = ta.ht_join(ta.ht_join(a, b), c), ta.ht_join(a, ta.ht_join(b, c))
    return (
        _diff(lhs, rhs)
        or _diff(ta.ht_join(a, b), _join_recipe(a, b))
        or _diff(ta.ht_join(ta.HT_UNIT, a), a)
        or _diff(ta.ht_join(a, ta.HT_UNIT), a)
    )


def _swap(x: LinComb) -> LinComb:
    return x.map_basis(lambda k: (k[1], k[0]))


@suite("ht-involution", "the involution is multiplicative and anti-comultiplicative in H_T", labeled_pair_instances)
def _ht_inv(pair, p: Params):
    a, b = pair
    inv = ta.involution_ht
    if inv(inv(a)) != a:
        return inv(inv(a)), a
    d = _diff(inv(ta.ht_product(a, b)), ta.ht_product(inv(a), inv(b)))
    if d:
        return d
    c = ta.ht_product(a, b)
    return _diff(ta.ht_delta(inv(c)), _swap(ta.ht_delta(c).map_basis(lambda k: (inv(k[0]), inv(k[1])))))


@suite("ht-product-iso", "the H_T product is commutative up to homeomorphism", labeled_pair_instances)
def _ht_iso(pair, p: Params):
    a, b = pair
    return _diff(ta.iso(ta.ht_product(a, b).top), ta.iso(ta.ht_product(b, a).top))


# ---------------------------------------------------------------- setcomp


@suite("L-product", "L(T1 T2) = L(T1) L(T2)", pair_instances)
def _L_product(pair, p: Params):
    T1, T2 = pair
    return _diff(scm.L(qp.product(T1, T2)), scm.sc_product_lin(scm.L(T1), scm.L(T2)))


def _lin_delta(x: LinComb, cop) -> LinComb:
    return LinComb.sum(cop(b).scale(c) for b, c in x)


@suite("L-delta", "Delta L = (L x L) Delta", top_instances)
def _L_delta(T: QPoset, p: Params):
    return _diff(_lin_delta(scm.L(T), scm.sc_delta), apply_legs(ta.delta(T), scm.L, scm.L))


@suite("L-rho", "rho L = (L x L) Gamma", top_instances)
def _L_rho(T: QPoset, p: Params):
    return _diff(_lin_delta(scm.L(T), scm.sc_rho), apply_legs(ta.gamma(T), scm.L, scm.L))


@suite("L-surjective", "each set composition is L of its tail topology", sc_instances)
def _L_surj(C: scm.SetComposition, p: Params):
    return _diff(scm.L(scm.topology_of(C)), LinComb.basis(C))


@suite("L-restrict", "linear extensions restrict to linear extensions", top_instances)
def _L_restrict(T: QPoset, p: Params):
    for C in scm.linear_extensions(T):
        for Y in _subsets(T.atoms):
            if scm.sc_restrict(C, Y) not in scm.linear_extensions(qp.restrict(T, Y)):
                return f"{C}|{sorted(Y)}", "a linear extension"
    return None


def _fubini_instances(p: Params):
    return [(f"n={k}", k, k) for k in range(max(p.n, 5) + 1)]


@suite("fubini", "set compositions of [n] are counted by the Fubini numbers", _fubini_instances)
def _fubini(k: int, p: Params):
    got = len(scm.all_set_compositions(range(1, k + 1)))
    return None if k >= len(FUBINI) or got == FUBINI[k] else (got, FUBINI[k])


@suite("linext-oracle", "linear extensions agree with the definitional filter", top_instances)
def _linext(T: QPoset, p: Params):
    slow = [C for C in scm.all_set_compositions(T.atoms) if scm.is_linear_extension(C, T)]
    return _diff(sorted(map(str, scm.linear_extensions(T))), sorted(map(str, slow)))


def _sc_legwise(x: LinComb, y: LinComb) -> LinComb:
    acc = []
    for k1, c in x:
        for k2, d in y:
            acc.append(tensor(*(scm.sc_product(a, b) for a, b in zip(k1, k2))).scale(c * d))
    return LinComb.sum(acc)


def _sc_mul(*xs):
    return scm.sc_product_many(xs) if len(xs) > 1 else xs[0]


@suite("sc-bialgebra", "set compositions form a bialgebra for rho and Delta", sc_pair_instances)
def _sc_bialg(pair, p: Params):
    C1, C2 = pair
    for C in (C1, C2):
        r = scm.sc_rho(C)
        d = _diff(apply_legs(r, scm.sc_rho, None), apply_legs(r, None, scm.sc_rho))
        d = d or _diff(LinComb((b, c * scm.sc_counit(a)) for (a, b), c in r), LinComb.basis(C))
        d = d or _diff(LinComb((a, c * scm.sc_counit(b)) for (a, b), c in r), LinComb.basis(C))
        dl = scm.sc_delta(C)
        d = d or _diff(apply_legs(dl, scm.sc_delta, None), apply_legs(dl, None, scm.sc_delta))
        lhs = apply_legs(r, None, scm.sc_delta)
        four = apply_legs(dl, scm.sc_rho, scm.sc_rho)
        d = d or _diff(lhs, merge_legs(four, [(0, 2), (1,), (3,)], _sc_mul))
        if d:
            return d
    prod = scm.sc_product(C1, C2)
    return _diff(_lin_delta(prod, scm.sc_delta), _sc_legwise(scm.sc_delta(C1), scm.sc_delta(C2))) or _diff(
        _lin_delta(prod, scm.sc_rho), _sc_legwise(scm.sc_rho(C1), scm.sc_rho(C2))
    )


# ---------------------------------------------------------------- wordalg


def _lam(c):
    return wa.lambda_map(c)


@suite("lambda-morphism", "lambda is a bialgebra morphism for both coproducts", iso_pair_instances)
def _lambda_morph(pair, p: Params):
    c, d = pair
    d1 = _diff(wa.lambda_map(ta.iso_product(c, d)), wa.qsym_product_lin(_lam(c), _lam(d)))
    if d1:
        return d1
    if len(d) == 0:
        return _diff(apply_legs(ta.delta_H(c), _lam, _lam), _lin_delta(_lam(c), wa.qsym_delta)) or _diff(
            apply_legs(ta.gamma_H(c), _lam, _lam), _lin_delta(_lam(c), wa.qsym_rho)
        )
    return None


def _Lam(a):
    return wa.Lambda_map(a)


@suite("Lambda-morphism", "Lambda is a bialgebra morphism on H_T for both coproducts", labeled_pair_instances)
def _Lambda_morph(pair, p: Params):
    a, b = pair
    d1 = _diff(wa.Lambda_map(ta.ht_product(a, b)), wa.wqsym_product_lin(_Lam(a), _Lam(b)))
    if d1:
        return d1
    if b.n == 0:
        return _diff(apply_legs(ta.ht_delta(a), _Lam, _Lam), _lin_delta(_Lam(a), wa.wqsym_delta)) or _diff(
            apply_legs(ta.gamma_ht(a), _Lam, _Lam), _lin_delta(_Lam(a), wa.wqsym_rho)
        )
    return None


def _sc_std(C: scm.SetComposition) -> scm.SetComposition:
    rank = {x: i + 1 for i, x in enumerate(sorted(C.ground))}
    return scm.SetComposition(tuple(frozenset(rank[x] for x in b) for b in C.blocks))


def _packed(C: scm.SetComposition) -> wa.PackedWord:
    return wa.sc_to_packed(_sc_std(C))


@suite("word-projection", "type and packing intertwine the set-composition operations", sc_pair_instances)
def _projection(pair, p: Params):
    C1, C2 = pair
    prod = scm.sc_product(C1, C2)
    d = _diff(prod.map_basis(wa.type_of), wa.qsym_product(wa.type_of(C1), wa.type_of(C2)))
    d = d or _diff(prod.map_basis(_packed), wa.wqsym_product(_packed(C1), _packed(C2)))
    if d:
        return d
    for C in (C1, C2):
        r = scm.sc_rho(C).map_basis(lambda k: (_packed(k[0]), _packed(k[1])))
        d = _diff(r, wa.wqsym_rho(_packed(C)))
        d = d or _diff(scm.sc_rho(C).map_basis(lambda k: (wa.type_of(k[0]), wa.type_of(k[1]))), wa.qsym_rho(wa.type_of(C)))
        d = d or _diff(scm.sc_delta(C).map_basis(lambda k: (_packed(k[0]), _packed(k[1]))), wa.wqsym_delta(_packed(C)))
        if d:
            return d
        w = _packed(C)
        if wa.packed_to_sc(w) != _sc_std(C):
            return wa.packed_to_sc(w), _sc_std(C)
    return None


def _word_pairs(p: Params):
    words = [wa.sc_to_packed(C) for k in range(p.n + 1) for C in scm.all_set_compositions(range(1, k + 1))]
    for u in words:
        for v in words:
            if len(u) + len(v) <= p.n:
                yield f"{u} | {v}", len(u) + len(v), (u, v)


@suite("wqsym-mass", "WQSym product terms match the quasi-shuffle surjections one to one", _word_pairs)
def _mass(pair, p: Params):
    u, v = pair
    prod = wa.wqsym_product(u, v)
    q = len(wa.qsh_surjections(u.max, v.max))
    if prod.mass() != q or len(prod) != q:
        return f"mass {prod.mass()}, terms {len(prod)}", q
    return None


def _qsym_instances(p: Params):
    for k in range(p.n + 1):
        for parts in scm.compositions_of(k):
            yield str(wa.Composition(parts)), k, wa.Composition(parts)


def _lin_counit(x: LinComb, eps) -> LinComb:
    left = LinComb((b, c * eps(a)) for (a, b), c in x)
    right = LinComb((a, c * eps(b)) for (a, b), c in x)
    return left, right


@suite("word-coalgebras", "QSym and WQSym coproducts are coassociative and counital", _qsym_instances)
def _word_coalg(c: wa.Composition, p: Params):
    for cop, eps in ((wa.qsym_delta, lambda x: int(len(x) == 0)), (wa.qsym_rho, wa.qsym_counit)):
        x = cop(c)
        d = _diff(apply_legs(x, cop, None), apply_legs(x, None, cop))
        left, right = _lin_counit(x, eps)
        d = d or _diff(left, LinComb.basis(c)) or _diff(right, LinComb.basis(c))
        if d:
            return d
    for C in scm.all_set_compositions(range(1, c.size() + 1)):
        if wa.type_of(C) != c:
            continue
        w = wa.sc_to_packed(C)
        for cop, eps in ((wa.wqsym_delta, lambda x: int(x.max == 0)), (wa.wqsym_rho, wa.wqsym_counit)):
            x = cop(w)
            d = _diff(apply_legs(x, cop, None), apply_legs(x, None, cop))
            left, right = _lin_counit(x, eps)
            d = d or _diff(left, LinComb.basis(w)) or _diff(right, LinComb.basis(w))
            if d:
                return d
    return None


# ---------------------------------------------------------------- moulds


def _mould_laws(p: Params):
    return [(name, 0, name) for name in MOULD_LAWS]


def _laws_table(seed: int):
    M, N, P = (ml.random_mould(seed, t) for t in "MNP")
    P0 = ml.random_mould(seed, "P0", empty=0)
    nonempty = lambda X: ml.Mould(lambda s: X(s) if s else 0, "nonempty")  # noqa: E731
    return {
        "product-unit": [(M * ml.ONE, M), (ml.ONE * M, M)],
        "product-assoc": [((M * N) * P, M * (N * P))],
        "product-distributive": [(M * (N + P), M * N + M * P), ((N + P) * M, N * M + P * M)],
        "compose-right-unit": [(M @ ml.I, M)],
        "compose-left-unit": [(nonempty(ml.I @ N), nonempty(N))],
        "compose-assoc": [((M @ N) @ P, M @ (N @ P))],
        "compose-right-distributive-sum": [((M + N) @ P0, M @ P0 + N @ P0)],
        "compose-right-distributive-product": [((M * N) @ P0, (M @ P0) * (N @ P0))],
        "memo-transparent": [(ml.Mould(lambda s: M.uncached(s) + N.uncached(s)), M + N)],
    }


MOULD_LAWS = tuple(_laws_table(0))


@suite("mould-laws", "algebraic laws of the mould product and composition", _mould_laws)
def _mould_law(name: str, p: Params):
    for lhs, rhs in _laws_table(p.seed)[name]:
        d = lhs.first_difference(rhs, p.caps)
        if d:
            return f"{name} at {d[0]}: {d[1]}", d[2]
    return None


def _rules(p: Params):
    out = [(str(r), 0, r) for r in ml.STABILITY_RULES]
    out.append((f"refuted: {ml.MIXED_PRODUCT_RULE}", 0, ml.MIXED_PRODUCT_RULE))
    return out


@suite("mould-stability", "the ten stability rules on constructed families", _rules)
def _stability(rule: ml.StabilityRule, p: Params):
    v = ml.check_rule(rule, p.seed, p.caps)
    if rule == ml.MIXED_PRODUCT_RULE:
        return None if not v.ok and v.detail.startswith("result") else ("holds", "refuted")
    return None if v.ok else (v.detail, rule.result)


def _families(p: Params):
    return [(name, 0, name) for name in FAMILY_CHECKS]


def _family_table(seed: int):
    f = ml.random_length_one(seed, "fam")
    scaled = ml.Mould(lambda s: Fraction(1, math.factorial(len(s))) * math.prod(f((w,)) for w in s), "f^r/r!")
    A = ml.random_alternal(seed)
    t = ml.random_rational(random.Random(f"{seed}:t")) or Fraction(2)
    one_letter = ml.monomial_character([t])
    return {
        "scaled-products-symmetral": lambda c: ml.is_symmetral(scaled, c),
        "exp-of-length-one": lambda c: scaled.equals(ml.exp_mould(f), c),
        "length-one-alternal": lambda c: ml.is_alternal(f, c),
        "monomial-symmetrel": lambda c: ml.is_symmetrel(ml.random_symmetrel(seed), c),
        "monomial-one-letter": lambda c: all(
            one_letter(s) == (t ** s[0] if len(s) == 1 else int(not s)) for s in ml.sequences(c)
        ),
        "monomial-empty-alphabet": lambda c: ml.monomial_character([]).equals(ml.ONE, c),
        "exp-zero": lambda c: ml.exp_mould(ml.ZERO).equals(ml.ONE, c),
        "log-exp": lambda c: ml.log_mould(ml.exp_mould(A)).equals(A, c),
        "exp-log": lambda c: ml.exp_mould(ml.log_mould(ml.random_symmetrel(seed))).equals(ml.random_symmetrel(seed), c),
        "alternal-family": lambda c: ml.is_alternal(A, c),
        "symmetral-family": lambda c: ml.is_symmetral(ml.random_symmetral(seed), c),
        "alternel-family": lambda c: ml.is_alternel(ml.random_alternel(seed), c),
        "families-distinct": lambda c: not ml.is_symmetrel(ml.random_symmetral(seed), c)
        and not ml.is_symmetral(ml.random_symmetrel(seed), c)
        and not ml.is_alternel(A, c)
        and not ml.is_alternal(ml.random_alternel(seed), c),
        "shuffle-counts": lambda c: len(ml.shuffles((1,), (2,))) == 2
        and len(ml.quasi_shuffles((1,), (2,))) == 3
        and len(ml.shuffles((1, 2), (3,))) == 3,
    }


FAMILY_CHECKS = tuple(_family_table(0))


@suite("mould-families", "constructed families have the symmetries they are built for", _families)
def _family(name: str, p: Params):
    return None if _family_table(p.seed)[name](p.caps) else (name, "true")


def _char_instances(p: Params):
    return [(alg, 0, alg) for alg in ml.ALGEBRAS]


def _all_tops(n: int) -> list[QPoset]:
    return [T for k in range(n + 1) for T in tops(k)]


@suite("char-property", "product and composition of characters are characters", _char_instances)
def _char_property(alg: str, p: Params):
    M, N = ml.random_character(alg, p.n, p.seed, "M"), ml.random_character(alg, p.n, p.seed, "N")
    P, C = ml.char_product(M, N), ml.char_compose(M, N)
    for T in _all_tops(p.n):
        if ml.convolve(M, N, T) != P(T):
            return f"(M·N)({T}) = {ml.convolve(M, N, T)}", P(T)
        if ml.compose_eval(M, N, T) != C(T):
            return f"(M∘N)({T}) = {ml.compose_eval(M, N, T)}", C(T)
    return None


@suite("char-identity", "J is a two-sided identity for composition and e for the product", _char_instances)
def _char_identity(alg: str, p: Params):
    M = ml.random_character(alg, p.n, p.seed, "M")
    J, e = ml.J_character(alg, p.n), ml.unit_character(alg, p.n)
    pt = qp.discrete([1])
    N = ml.random_character(alg, p.n, p.seed, "N")
    if ml.char_product(M, N)(pt) != M(pt) + N(pt):
        return ml.char_product(M, N)(pt), M(pt) + N(pt)
    for lhs, rhs in (
        (ml.char_compose(M, J), M),
        (ml.char_compose(J, M), M),
        (ml.char_product(M, e), M),
        (ml.char_product(e, M), M),
    ):
        if lhs != rhs:
            return lhs.name, rhs.name
    return None


@suite("char-associativity", "the character product is associative", _char_instances)
def _char_assoc(alg: str, p: Params):
    m = min(p.n, 3)
    M, N, P = (ml.random_character(alg, m, p.seed, t) for t in "MNP")
    lhs = ml.char_product(ml.char_product(M, N), P)
    rhs = ml.char_product(M, ml.char_product(N, P))
    return None if lhs == rhs else (lhs.name, rhs.name)


@suite("char-distributivity", "(M1 M2) o N = (M1 o N)(M2 o N)", _char_instances)
def _char_distrib(alg: str, p: Params):
    M1, M2, N = (ml.random_character(alg, p.n, p.seed, t) for t in ("M1", "M2", "N"))
    lhs = ml.char_compose(ml.char_product(M1, M2), N)
    rhs = ml.char_product(ml.char_compose(M1, N), ml.char_compose(M2, N))
    for T in _all_tops(p.n):
        if lhs(T) != rhs(T):
            return f"{lhs(T)} at {T}", rhs(T)
    return None


def _alphabets(seed: int) -> list[list[Fraction]]:
    return [[], ml.random_alphabet(seed, 1), ml.random_alphabet(seed + 1, 2), ml.random_alphabet(seed + 2, 2)]


def _qpos_instances(p: Params):
    abc = _alphabets(p.seed)
    for i, x in enumerate(abc):
        for j, y in enumerate(abc):
            yield f"{list(map(str, x))} | {list(map(str, y))}", 0, (x, y)


@suite("qposetization", "quasi-posetization respects product and composition", _qpos_instances)
def _qposet(pair, p: Params):
    x, y = pair
    phi, psi = ml.monomial_character(x), ml.monomial_character(y)
    Qp, Qs = ml.quasi_posetization(phi, p.n), ml.quasi_posetization(psi, p.n)
    for lhs, rhs in (
        (ml.quasi_posetization(phi * psi, p.n), ml.char_product(Qp, Qs)),
        (ml.quasi_posetization(phi @ psi, p.n), ml.char_compose(Qp, Qs)),
    ):
        for k in range(p.n + 1):
            for c in ta.iso_classes(k):
                if lhs(c) != rhs(c):
                    return f"{lhs.name}({c}) = {lhs(c)}", rhs(c)
    for k in range(p.n + 1):
        for c in ta.iso_classes(k):
            if Qp(c) != ml.lambda_value(phi, c):
                return f"Q(phi)({c}) = {Qp(c)}", ml.lambda_value(phi, c)
    return None


# ---------------------------------------------------------------- golden


def _golden_instances(p: Params):
    return [(f"{fam}:{name}", 0, (fam, name)) for fam, name, _, _ in golden.all_cases()]


_GOLDEN_CACHE: dict = {}


@suite("golden", "reference expansions reproduce exactly", _golden_instances)
def _golden(key, p: Params):
    if not _GOLDEN_CACHE:
        _GOLDEN_CACHE.update({(fam, name): (got, exp) for fam, name, got, exp in golden.all_cases()})
    got, exp = _GOLDEN_CACHE[key]
    return _diff(got, exp)


# ---------------------------------------------------------------- running


def _run_one(name: str, payload, p: Params):
    out = SUITES[name].check(payload, p)
    if out is None:
        return None
    lhs, rhs = out
    return _render(lhs), _render(rhs)


def _run_batch(name: str, payloads: list, p: Params):
    return [_run_one(name, x, p) for x in payloads]


def suite_names() -> list[str]:
    return list(SUITES)


def run_suite(name: str, params: Params = Params(), jobs: int = 1) -> CheckReport:
    if name not in SUITES:
        raise InputError(f"unknown suite {name!r}; available: all, {', '.join(SUITES)}")
    s = SUITES[name]
    t0 = time.perf_counter()
    inst = list(s.instances(params))
    report = CheckReport(name, len(inst))
    for _, size, _ in inst:
        report.by_size[size] = report.by_size.get(size, 0) + 1
    payloads = [x for _, _, x in inst]
    if jobs > 1 and len(payloads) > 1:
        chunk = max(1, len(payloads) // (4 * jobs))
        batches = [payloads[i : i + chunk] for i in range(0, len(payloads), chunk)]
        with ProcessPoolExecutor(jobs) as ex:
            results = [r for batch in ex.map(_run_batch, [name] * len(batches), batches, [params] * len(batches)) for r in batch]
    else:
        results = [_run_one(name, x, params) for x in payloads]
    for (key, _, _), res in zip(inst, results):
        if res is not None:
            report.failures.append(Failure(key, *res))
    report.elapsed = time.perf_counter() - t0
    return report


def run(names: Iterable[str], params: Params = Params(), jobs: int = 1) -> list[CheckReport]:
    names = list(names)
    if "all" in names:
        names = suite_names()
    return [run_suite(n, params, jobs) for n in names]
