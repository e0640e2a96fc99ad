"""Bialgebra and Hopf structures on finite topologies.

At the species level the two coproducts, :func:`gamma` (internal) and
:func:`delta` (external), act on labelled :class:`QPoset` values.  ``H`` is
obtained by forgetting labels (:class:`IsoClass`).  ``H_T`` keeps topologies
on ``[n] = {1..n}`` (:class:`LabeledTop`) with a shifted product and a
standardised coproduct.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from . import qposet as qp
from .errors import InputError
from .lincomb import LinComb, apply_legs, extend_linear, merge_legs
from .qposet import QPoset

# ---------------------------------------------------------------- species level


@functools.lru_cache(maxsize=None)
def gamma(T: QPoset) -> LinComb:
    """Sum of T' (x) T/T' over admissible refinements T' of T."""
    return LinComb(((T1, qp.quotient(T, T1)), 1) for T1 in qp.admissible_refinements(T))


@functools.lru_cache(maxsize=None)
def delta(T: QPoset) -> LinComb:
    """Sum over open Y of T|(X minus Y) (x) T|Y."""
    X = T.ground
    return LinComb(((qp.restrict(T, X - Y), qp.restrict(T, Y)), 1) for Y in qp.iter_open_sets(T))


def counit_gamma(T: QPoset) -> Fraction:
    return Fraction(int(qp.is_group_like(T)))


def counit_delta(T: QPoset) -> Fraction:
    return Fraction(int(len(T) == 0))


def multiply(*tops: QPoset) -> QPoset:
    return qp.product(*tops)


def lin(T: QPoset) -> LinComb:
    return LinComb.basis(T)


gamma_lin = extend_linear(gamma)
delta_lin = extend_linear(delta)


def product_lin(x: LinComb, y: LinComb) -> LinComb:
    return LinComb(((qp.product(a, b)), c * d) for a, c in x for b, d in y)


def legwise_product(x: LinComb, y: LinComb, mul=qp.product) -> LinComb:
    """(a (x) b)(c (x) d) = ac (x) bd, extended bilinearly."""
    return LinComb(
        (tuple(mul(p, q) for p, q in zip(k1, k2)), c * d) for k1, c in x for k2, d in y
    )


def gamma_coassoc_sides(T: QPoset) -> tuple[LinComb, LinComb]:
    g = gamma(T)
    return apply_legs(g, gamma, None), apply_legs(g, None, gamma)


def delta_coassoc_sides(T: QPoset) -> tuple[LinComb, LinComb]:
    d = delta(T)
    return apply_legs(d, delta, None), apply_legs(d, None, delta)


def compatibility_sides(T: QPoset, gam=gamma, dlt=delta, mul=qp.product) -> tuple[LinComb, LinComb]:
    """((Id (x) Delta) o Gamma)(T) and (m^{1,3} o (Gamma (x) Gamma) o Delta)(T)."""
    lhs = apply_legs(gam(T), None, dlt)
    four = apply_legs(dlt(T), gam, gam)
    rhs = merge_legs(four, [(0, 2), (1,), (3,)], lambda *xs: mul(*xs) if len(xs) > 1 else xs[0])
    return lhs, rhs


# ---------------------------------------------------------------- H: isomorphism classes


@dataclass(frozen=True, eq=False)
class IsoClass:
    key: bytes
    representative: QPoset

    def __post_init__(self):
        if qp.canonical_form(self.representative) != self.key:
            raise InputError("representative does not match the canonical key")

    def __eq__(self, other):
        return isinstance(other, IsoClass) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __len__(self):
        return len(self.representative)

    def sort_key(self):
        return (len(self.representative), self.key)

    def __str__(self):
        return "<" + qp.print_dsl(self.representative) + ">"

    def __repr__(self):
        return f"IsoClass({qp.print_dsl(self.representative)!r})"


@functools.lru_cache(maxsize=None)
def iso(T: QPoset) -> IsoClass:
    return IsoClass(qp.canonical_form(T), qp.canonical_representative(T))


ISO_UNIT = iso(qp.EMPTY)


def _iso_leg(b):
    if isinstance(b, tuple):
        return tuple(_iso_leg(x) for x in b)
    if isinstance(b, LabeledTop):
        return iso(b.top)
    if isinstance(b, QPoset):
        return iso(b)
    return b


def to_iso(x: LinComb) -> LinComb:
    """Forget labels on every leg, summing coefficients of homeomorphic terms."""
    return x.map_basis(_iso_leg)


def iso_product(*classes: IsoClass) -> IsoClass:
    reps, offset = [], 0
    for c in classes:
        reps.append(qp.shift(c.representative, offset))
        offset += len(c)
    return iso(qp.product(*reps))


def iso_product_lin(x: LinComb, y: LinComb) -> LinComb:
    return LinComb((iso_product(a, b), c * d) for a, c in x for b, d in y)


def gamma_H(c: IsoClass) -> LinComb:
    return to_iso(gamma(c.representative))


def delta_H(c: IsoClass) -> LinComb:
    return to_iso(delta(c.representative))


@functools.lru_cache(maxsize=None)
def antipode_H(c: IsoClass) -> LinComb:
    """Antipode of (H, ., Delta) by the reduced-coproduct recursion."""
    if len(c) == 0:
        return LinComb.basis(ISO_UNIT)
    T = c.representative
    X = T.ground
    acc = [LinComb.basis(c, -1)]
    for Y in qp.iter_open_sets(T):
        if Y and Y != X:
            left = antipode_H(iso(qp.restrict(T, X - Y)))
            acc.append(-iso_product_lin(left, LinComb.basis(iso(qp.restrict(T, Y)))))
    return LinComb.sum(acc)


def antipode_convolution(c: IsoClass) -> LinComb:
    """m o (S (x) Id) o Delta applied to c; equals counit(c) times the unit."""
    acc = []
    for (a, b), k in delta_H(c):
        acc.append(iso_product_lin(antipode_H(a), LinComb.basis(b)).scale(k))
    return LinComb.sum(acc)


def iso_classes(n: int) -> list[IsoClass]:
    return sorted({iso(T) for T in qp.all_topologies(range(1, n + 1))}, key=IsoClass.sort_key)


# ---------------------------------------------------------------- H_T: labelled on [n]


@dataclass(frozen=True, eq=False)
class LabeledTop:
    top: QPoset

    def __post_init__(self):
        if self.top.atoms != tuple(range(1, len(self.top) + 1)):
            raise InputError(f"labelled topologies live on [n]; got atoms {self.top.atoms}")

    @property
    def n(self) -> int:
        return len(self.top)

    def __len__(self):
        return len(self.top)

    def __eq__(self, other):
        return isinstance(other, LabeledTop) and self.top == other.top

    def __hash__(self):
        return hash(("HT", self.top))

    def sort_key(self):
        return self.top.sort_key()

    def __str__(self):
        return str(self.top)

    def __repr__(self):
        return f"LabeledTop({qp.print_dsl(self.top)!r})"


def labeled(text: str) -> LabeledTop:
    """Parse DSL text, padding missing atoms 1..max as isolated points."""
    T = qp.parse_dsl(text)
    n = max(T.atoms, default=0)
    return LabeledTop(qp.product(T, qp.discrete(set(range(1, n + 1)) - set(T.atoms))))


HT_UNIT = LabeledTop(qp.EMPTY)


def std(T: QPoset) -> LabeledTop:
    """Standardise onto [k] by the unique increasing bijection."""
    return LabeledTop(qp.standardize(T))


def ht_product(a: LabeledTop, b: LabeledTop) -> LabeledTop:
    return LabeledTop(qp.product(a.top, qp.shift(b.top, a.n)))


def ht_join(a: LabeledTop, b: LabeledTop) -> LabeledTop:
    """Every element of ``a`` lies below every (shifted) element of ``b``."""
    shifted = qp.shift(b.top, a.n)
    pairs = [(x, y) for x in a.top.atoms for y in shifted.atoms]
    base = qp.product(a.top, shifted)
    return LabeledTop(
        qp.from_relations(
            base.atoms,
            pairs + [(x, y) for x in base.atoms for y in base.atoms if base.le(x, y)],
        )
    )


@functools.lru_cache(maxsize=None)
def ht_delta(a: LabeledTop) -> LinComb:
    T = a.top
    X = T.ground
    return LinComb(
        ((std(qp.restrict(T, X - Y)), std(qp.restrict(T, Y))), 1) for Y in qp.iter_open_sets(T)
    )


def ht_counit(a: LabeledTop) -> Fraction:
    return Fraction(int(a.n == 0))


def involution_ht(a: LabeledTop) -> LabeledTop:
    return LabeledTop(qp.dual(a.top))


@functools.lru_cache(maxsize=None)
def gamma_ht(a: LabeledTop) -> LinComb:
    return LinComb(
        ((LabeledTop(T1), LabeledTop(T2)), c) for (T1, T2), c in gamma(a.top)
    )


def ht_compatibility_sides(a: LabeledTop) -> tuple[LinComb, LinComb]:
    """The two sides of the internal/external compatibility diagram in H_T."""
    return compatibility_sides(a, gam=gamma_ht, dlt=ht_delta, mul=ht_product)


def labeled_topologies(n: int) -> list[LabeledTop]:
    return [LabeledTop(T) for T in qp.all_topologies(range(1, n + 1))]


def ht_product_lin(x: LinComb, y: LinComb) -> LinComb:
    return LinComb((ht_product(a, b), c * d) for a, c in x for b, d in y)


def tensor_to_json(x: LinComb, leg_json=None) -> list[dict]:
    """``[{left, right, coeff}]`` ordered by canonical keys of the legs."""
    from .lincomb import fmt_coeff

    leg_json = leg_json or _default_leg_json

    def order(item):
        (l, r), _ = item
        return (_leg_key(l), _leg_key(r))

    out = []
    for (l, r), c in sorted(x.items(), key=order):
        out.append({"left": leg_json(l), "right": leg_json(r), "coeff": fmt_coeff(c)})
    return out


def _leg_key(b):
    if isinstance(b, QPoset):
        return (qp.canonical_form(b), b.sort_key())
    if isinstance(b, LabeledTop):
        return (qp.canonical_form(b.top), b.sort_key())
    if isinstance(b, IsoClass):
        return (b.key,)
    return (str(b),)


def _default_leg_json(b):
    if isinstance(b, QPoset):
        return qp.to_json(b)
    if isinstance(b, LabeledTop):
        return qp.to_json(b.top)
    if isinstance(b, IsoClass):
        return qp.to_json(b.representative)
    return str(b)


def lin_all(items: Iterable) -> LinComb:
    return LinComb((b, 1) for b in items)
