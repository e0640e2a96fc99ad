"""Set compositions (ordered set partitions) and the linear-extension map L."""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from . import qposet as qp
from .errors import InputError
from .lincomb import LinComb
from .qposet import QPoset


@dataclass(frozen=True)
class SetComposition:
    blocks: tuple[frozenset[int], ...]

    def __post_init__(self):
        blocks = tuple(frozenset(b) for b in self.blocks)
        seen: set[int] = set()
        for b in blocks:
            if not b:
                raise InputError("set composition blocks must be nonempty")
            if seen & b:
                raise InputError("set composition blocks must be disjoint")
            seen |= b
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def of(cls, *blocks: Iterable[int]) -> SetComposition:
        return cls(tuple(frozenset(b) for b in blocks))

    @property
    def ground(self) -> frozenset[int]:
        return frozenset().union(*self.blocks)

    def __len__(self):
        return len(self.blocks)

    def sort_key(self):
        return (len(self.ground), len(self.blocks), tuple(tuple(sorted(b)) for b in self.blocks))

    def __str__(self):
        return "(" + ",".join("{" + ",".join(map(str, sorted(b))) + "}" for b in self.blocks) + ")"

    def to_json(self) -> list[list[int]]:
        return [sorted(b) for b in self.blocks]


EMPTY_SC = SetComposition(())


def sc_restrict(C: SetComposition, Y: Iterable[int]) -> SetComposition:
    Y = frozenset(Y)
    if not Y <= C.ground:
        raise InputError(f"{sorted(Y - C.ground)} not in the ground set")
    return SetComposition(tuple(b & Y for b in C.blocks if b & Y))


def _interleave(p: tuple, q: tuple) -> Iterator[tuple]:
    if not p:
        yield q
        return
    if not q:
        yield p
        return
    for rest in _interleave(p[1:], q):
        yield (p[0],) + rest
    for rest in _interleave(p, q[1:]):
        yield (q[0],) + rest
    for rest in _interleave(p[1:], q[1:]):
        yield (p[0] | q[0],) + rest


def sc_product(Cp: SetComposition, Cq: SetComposition) -> LinComb:
    """Sum of the set compositions of the union restricting to Cp and Cq."""
    if Cp.ground & Cq.ground:
        raise InputError("factors of a product must have disjoint ground sets")
    return LinComb((SetComposition(blocks), 1) for blocks in _interleave(Cp.blocks, Cq.blocks))


def sc_product_lin(x: LinComb, y: LinComb) -> LinComb:
    acc = []
    for a, c in x:
        for b, d in y:
            acc.append(sc_product(a, b).scale(c * d))
    return LinComb.sum(acc)


def sc_product_many(comps: Iterable[SetComposition]) -> LinComb:
    out = LinComb.basis(EMPTY_SC)
    for C in comps:
        out = sc_product_lin(out, LinComb.basis(C))
    return out


def sc_delta(C: SetComposition) -> LinComb:
    k = len(C.blocks)
    return LinComb(
        ((SetComposition(C.blocks[:i]), SetComposition(C.blocks[i:])), 1) for i in range(k + 1)
    )


def compositions_of(k: int) -> Iterator[tuple[int, ...]]:
    """Integer compositions of k (k = 0 has only the empty composition)."""
    if k == 0:
        yield ()
        return
    for first in range(1, k + 1):
        for rest in compositions_of(k - first):
            yield (first,) + rest


def _segments(seq: tuple, sizes: tuple[int, ...]) -> list[tuple]:
    out, i = [], 0
    for s in sizes:
        out.append(seq[i : i + s])
        i += s
    return out


@functools.lru_cache(maxsize=None)
def sc_rho(C: SetComposition) -> LinComb:
    """Internal coproduct: products of consecutive runs (x) the merged runs."""
    acc = []
    for sizes in compositions_of(len(C.blocks)):
        runs = _segments(C.blocks, sizes)
        left = sc_product_many(SetComposition(r) for r in runs)
        right = SetComposition(tuple(frozenset().union(*r) for r in runs))
        acc.append(LinComb(((b, right), c) for b, c in left))
    return LinComb.sum(acc)


def sc_counit(C: SetComposition) -> Fraction:
    """1 on (X); on the empty set the empty composition plays that role."""
    return Fraction(int(len(C.blocks) <= 1))


def all_set_compositions(atoms: Iterable[int]) -> list[SetComposition]:
    atoms = sorted(set(atoms))
    out = []

    def rec(rest: frozenset, prefix: tuple):
        if not rest:
            out.append(SetComposition(prefix))
            return
        items = sorted(rest)
        for r in range(1, len(items) + 1):
            for block in itertools.combinations(items, r):
                rec(rest - frozenset(block), prefix + (frozenset(block),))

    rec(frozenset(atoms), ())
    return sorted(out, key=SetComposition.sort_key)


@functools.lru_cache(maxsize=None)
def linear_extensions(T: QPoset) -> tuple[SetComposition, ...]:
    """Set compositions whose blocks are antichains of classes, respecting <_T."""
    classes = list(qp.equiv_classes(T))
    reps = [min(c) for c in classes]
    below = {
        (i, j)
        for i, a in enumerate(reps)
        for j, b in enumerate(reps)
        if i != j and T.le(a, b)
    }
    found = []

    def rec(remaining: frozenset[int], prefix: tuple):
        if not remaining:
            found.append(SetComposition(prefix))
            return
        minimal = sorted(j for j in remaining if not any((i, j) in below for i in remaining))
        for r in range(1, len(minimal) + 1):
            for pick in itertools.combinations(minimal, r):
                block = frozenset().union(*(classes[i] for i in pick))
                rec(remaining - frozenset(pick), prefix + (block,))

    rec(frozenset(range(len(classes))), ())
    return tuple(sorted(found, key=SetComposition.sort_key))


def is_linear_extension(C: SetComposition, T: QPoset) -> bool:
    """Definitional check, used as an oracle."""
    if C.ground != T.ground:
        return False
    where = {x: i for i, b in enumerate(C.blocks) for x in b}
    for x in T.atoms:
        for y in T.atoms:
            if T.lt(x, y) and not where[x] < where[y]:
                return False
            if T.le(x, y) and T.le(y, x) and where[x] != where[y]:
                return False
    return True


def L(T: QPoset) -> LinComb:
    return LinComb((C, 1) for C in linear_extensions(T))


def L_lin(x: LinComb) -> LinComb:
    return LinComb.sum(L(T).scale(c) for T, c in x)


def topology_of(C: SetComposition) -> QPoset:
    """The topology whose open sets are the tails X_i u ... u X_k of C."""
    atoms = C.ground
    family = [frozenset().union(*C.blocks[i:]) for i in range(len(C.blocks) + 1)]
    return qp.from_open_sets(atoms, family)
