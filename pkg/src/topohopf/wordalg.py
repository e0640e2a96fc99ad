"""QSym and WQSym in their monomial bases, and the maps lambda and Lambda.

Basis elements are indexed by :class:`Composition` (QSym) and
:class:`PackedWord` (WQSym); a :class:`~topohopf.lincomb.LinComb` over them
stands for the corresponding sum of ``M`` basis elements.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InputError
from .lincomb import LinComb
from .setcomp import SetComposition, compositions_of, linear_extensions

# ---------------------------------------------------------------- basis types


@dataclass(frozen=True)
class Composition:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 1 for p in parts):
            raise InputError(f"composition parts must be positive: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> Composition:
        return cls(parts)

    def __len__(self):
        return len(self.parts)

    def size(self) -> int:
        return sum(self.parts)

    def sort_key(self):
        return (sum(self.parts), len(self.parts), self.parts)

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"


@dataclass(frozen=True)
class PackedWord:
    letters: tuple[int, ...]

    def __post_init__(self):
        letters = tuple(int(x) for x in self.letters)
        if set(letters) != set(range(1, max(letters, default=0) + 1)):
            raise InputError(f"not a packed word: {letters}")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def of(cls, *letters: int) -> PackedWord:
        return cls(letters)

    @classmethod
    def parse(cls, text: str) -> PackedWord:
        text = text.strip().strip("()")
        if "," in text:
            return cls(tuple(int(t) for t in text.split(",") if t.strip()))
        return cls(tuple(int(ch) for ch in text))

    @property
    def max(self) -> int:
        return max(self.letters, default=0)

    def __len__(self):
        return len(self.letters)

    def sort_key(self):
        return (len(self.letters), self.letters)

    def __str__(self):
        if not self.letters:
            return "()"
        if self.max < 10:
            return "".join(map(str, self.letters))
        return ",".join(map(str, self.letters))

    def to_json(self) -> str:
        return ",".join(map(str, self.letters))


EMPTY_COMP = Composition(())
EMPTY_WORD = PackedWord(())

# ---------------------------------------------------------------- surjections


@functools.lru_cache(maxsize=None)
def qsh_surjections(*sizes: int) -> tuple[tuple[int, ...], ...]:
    """Surjections onto [max] of [sum sizes], strictly increasing on each block."""
    if any(s < 0 for s in sizes):
        raise InputError("block sizes must be non-negative")
    starts = [sum(sizes[:j]) for j in range(len(sizes))]
    total = sum(sizes)
    out = []

    def rec(ptr: tuple[int, ...], level: int, word: list[int]):
        live = [j for j in range(len(sizes)) if ptr[j] < sizes[j]]
        if not live:
            out.append(tuple(word))
            return
        for mask in range(1, 1 << len(live)):
            pick = [live[b] for b in range(len(live)) if (mask >> b) & 1]
            new_word = list(word)
            new_ptr = list(ptr)
            for j in pick:
                new_word[starts[j] + ptr[j]] = level
                new_ptr[j] += 1
            rec(tuple(new_ptr), level + 1, new_word)

    rec(tuple(0 for _ in sizes), 1, [0] * total)
    return tuple(sorted(out))


# ---------------------------------------------------------------- QSym


def qsym_product(c: Composition, d: Composition) -> LinComb:
    parts = c.parts + d.parts
    acc = []
    for sigma in qsh_surjections(len(c), len(d)):
        merged = [0] * max(sigma, default=0)
        for i, v in enumerate(sigma):
            merged[v - 1] += parts[i]
        acc.append((Composition(tuple(merged)), 1))
    return LinComb(acc)


def qsym_product_lin(x: LinComb, y: LinComb) -> LinComb:
    return LinComb.sum(qsym_product(a, b).scale(p * q) for a, p in x for b, q in y)


def qsym_product_many(comps: Iterable[Composition]) -> LinComb:
    out = LinComb.basis(EMPTY_COMP)
    for c in comps:
        out = qsym_product_lin(out, LinComb.basis(c))
    return out


def qsym_delta(c: Composition) -> LinComb:
    k = len(c)
    return LinComb(((Composition(c.parts[:i]), Composition(c.parts[i:])), 1) for i in range(k + 1))


@functools.lru_cache(maxsize=None)
def qsym_rho(c: Composition) -> LinComb:
    acc = []
    for sizes in compositions_of(len(c)):
        runs, i = [], 0
        for s in sizes:
            runs.append(c.parts[i : i + s])
            i += s
        left = qsym_product_many(Composition(r) for r in runs)
        right = Composition(tuple(sum(r) for r in runs))
        acc.append(LinComb(((b, right), k) for b, k in left))
    return LinComb.sum(acc)


def qsym_counit(c: Composition) -> int:
    return int(len(c) <= 1)


# ---------------------------------------------------------------- WQSym


def pack(word: Sequence[int]) -> PackedWord:
    ranks = {v: i + 1 for i, v in enumerate(sorted(set(word)))}
    return PackedWord(tuple(ranks[v] for v in word))


def wqsym_product(u: PackedWord, v: PackedWord) -> LinComb:
    m = u.max
    joined = u.letters + tuple(x + m for x in v.letters)
    return LinComb(
        (PackedWord(tuple(w[x - 1] for x in joined)), 1) for w in qsh_surjections(m, v.max)
    )


def wqsym_product_lin(x: LinComb, y: LinComb) -> LinComb:
    return LinComb.sum(wqsym_product(a, b).scale(p * q) for a, p in x for b, q in y)


def wqsym_delta(w: PackedWord) -> LinComb:
    acc = []
    for k in range(w.max + 1):
        low = PackedWord(tuple(x for x in w.letters if x <= k))
        high = pack([x for x in w.letters if x > k])
        acc.append(((low, high), 1))
    return LinComb(acc)


@functools.lru_cache(maxsize=None)
def wqsym_rho(u: PackedWord) -> LinComb:
    acc = []
    for sizes in compositions_of(u.max):
        right_map = [j + 1 for j, s in enumerate(sizes) for _ in range(s)]
        right = PackedWord(tuple(right_map[x - 1] for x in u.letters))
        for v in qsh_surjections(*sizes):
            acc.append(((PackedWord(tuple(v[x - 1] for x in u.letters)), right), 1))
    return LinComb(acc)


def wqsym_counit(w: PackedWord) -> int:
    return int(w.max <= 1)


# ---------------------------------------------------------------- set compositions <-> words


def sc_to_packed(C: SetComposition) -> PackedWord:
    n = len(C.ground)
    if C.ground != frozenset(range(1, n + 1)):
        raise InputError("packed words correspond to set compositions of [n]")
    where = {x: i + 1 for i, b in enumerate(C.blocks) for x in b}
    return PackedWord(tuple(where[x] for x in range(1, n + 1)))


def packed_to_sc(w: PackedWord) -> SetComposition:
    return SetComposition(
        tuple(frozenset(i + 1 for i, x in enumerate(w.letters) if x == v) for v in range(1, w.max + 1))
    )


def type_of(C: SetComposition) -> Composition:
    return Composition(tuple(len(b) for b in C.blocks))


# ---------------------------------------------------------------- morphisms


def lambda_map(c) -> LinComb:
    """lambda: H -> QSym; accepts an IsoClass or any QPoset."""
    T = getattr(c, "representative", c)
    return LinComb((type_of(C), 1) for C in linear_extensions(T))


def Lambda_map(a) -> LinComb:
    """Lambda: H_T -> WQSym on a LabeledTop."""
    return LinComb((sc_to_packed(C), 1) for C in linear_extensions(a.top))


def lin_map(f, x: LinComb) -> LinComb:
    return LinComb.sum(f(b).scale(c) for b, c in x)
