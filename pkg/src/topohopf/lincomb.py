"""Finitely supported rational linear combinations over hashable bases.

Tensors are combinations whose keys are plain tuples of basis elements, one
entry per leg.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Callable, Iterable, Mapping


def sort_key(b: Any):
    """Deterministic ordering key for basis elements and tuples of them."""
    if hasattr(b, "sort_key"):
        return (1, b.sort_key())
    if isinstance(b, tuple):
        return (0, tuple(sort_key(x) for x in b))
    return (2, b)


def fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render_basis(b: Any, fmt: Callable[[Any], str] = str) -> str:
    if isinstance(b, tuple):
        return " ⊗ ".join(render_basis(x, fmt) for x in b)
    return fmt(b)


class LinComb:
    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Any, Any] | Iterable[tuple[Any, Any]] = ()):
        acc: dict[Any, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for b, c in items:
            acc[b] = acc.get(b, Fraction(0)) + Fraction(c)
        self._terms = {b: c for b, c in acc.items() if c != 0}

    @classmethod
    def basis(cls, b: Any, coeff=1) -> LinComb:
        return cls({b: coeff})

    @classmethod
    def sum(cls, combs: Iterable[LinComb]) -> LinComb:
        acc: dict[Any, Fraction] = {}
        for x in combs:
            for b, c in x._terms.items():
                acc[b] = acc.get(b, Fraction(0)) + c
        return cls(acc)

    def items(self) -> list[tuple[Any, Fraction]]:
        return sorted(self._terms.items(), key=lambda kv: sort_key(kv[0]))

    def support(self) -> list[Any]:
        return [b for b, _ in self.items()]

    def coeff(self, b: Any) -> Fraction:
        return self._terms.get(b, Fraction(0))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __iter__(self):
        return iter(self.items())

    def __eq__(self, other):
        if isinstance(other, LinComb):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: LinComb) -> LinComb:
        if not isinstance(other, LinComb):
            return NotImplemented
        return LinComb.sum((self, other))

    def __neg__(self) -> LinComb:
        return LinComb({b: -c for b, c in self._terms.items()})

    def __sub__(self, other: LinComb) -> LinComb:
        return self + (-other)

    def scale(self, k) -> LinComb:
        k = Fraction(k)
        return LinComb({b: k * c for b, c in self._terms.items()})

    def __rmul__(self, k):
        if isinstance(k, (int, Fraction)):
            return self.scale(k)
        return NotImplemented

    def mass(self) -> Fraction:
        """Sum of all coefficients."""
        return sum(self._terms.values(), Fraction(0))

    def map_basis(self, f: Callable[[Any], Any]) -> LinComb:
        """Push coefficients along a function of basis elements (summing collisions)."""
        return LinComb((f(b), c) for b, c in self._terms.items())

    def __str__(self):
        return self.render()

    def render(self, fmt: Callable[[Any], str] = str) -> str:
        """Text form ``c1*B1 + c2*B2``; ``fmt`` renders single tensor legs."""
        if not self._terms:
            return "0"
        parts = []
        for b, c in self.items():
            body = render_basis(b, fmt)
            if c == 1:
                term = body
            elif c == -1:
                term = f"-{body}"
            else:
                term = f"{fmt_coeff(c)}*{body}"
            parts.append(term)
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self):
        return f"LinComb({self})"

    def to_json(self, basis_json: Callable[[Any], Any] = str) -> list[dict]:
        return [{"basis": basis_json(b), "coeff": fmt_coeff(c)} for b, c in self.items()]


ZERO = LinComb()


def tensor(*combs: LinComb) -> LinComb:
    """Tensor product; keys are flat tuples with one entry per input leg."""
    acc: list[tuple[tuple, Fraction]] = [((), Fraction(1))]
    for x in combs:
        acc = [(k + (b,), c * d) for k, c in acc for b, d in x._terms.items()]
    return LinComb(acc)


def extend_linear(f: Callable[[Any], LinComb]) -> Callable[[LinComb], LinComb]:
    """Linear extension of a map from basis elements to combinations."""

    def F(x: LinComb) -> LinComb:
        acc: dict[Any, Fraction] = {}
        for b, c in x._terms.items():
            for b2, c2 in f(b)._terms.items():
                acc[b2] = acc.get(b2, Fraction(0)) + c * c2
        return LinComb(acc)

    return F


def extend_bilinear(f: Callable[[Any, Any], LinComb]) -> Callable[[LinComb, LinComb], LinComb]:
    def F(x: LinComb, y: LinComb) -> LinComb:
        acc: dict[Any, Fraction] = {}
        for a, c in x._terms.items():
            for b, d in y._terms.items():
                for k, e in f(a, b)._terms.items():
                    acc[k] = acc.get(k, Fraction(0)) + c * d * e
        return LinComb(acc)

    return F


def apply_legs(x: LinComb, *maps: Callable[[Any], LinComb] | None) -> LinComb:
    """Apply one linear map per tensor leg (``None`` = identity on that leg).

    A map may return tensors itself; its output tuple is spliced into the key
    so results stay flat.
    """
    out: dict[Any, Fraction] = {}
    for key, c in x._terms.items():
        if len(key) != len(maps):
            raise ValueError(f"expected {len(maps)} legs, got {len(key)}")
        acc: list[tuple[tuple, Fraction]] = [((), c)]
        for b, f in zip(key, maps):
            if f is None:
                acc = [(k + (b,), w) for k, w in acc]
                continue
            img = f(b)
            acc = [
                (k + (b2 if isinstance(b2, tuple) else (b2,)), w * d)
                for k, w in acc
                for b2, d in img._terms.items()
            ]
        for k, w in acc:
            out[k] = out.get(k, Fraction(0)) + w
    return LinComb(out)


def merge_legs(x: LinComb, groups: Iterable[Iterable[int]], mul: Callable[..., Any]) -> LinComb:
    """Multiply together the legs listed in each group (e.g. ``m^{1,3}``)."""
    groups = [tuple(g) for g in groups]

    def f(key):
        return tuple(mul(*(key[i] for i in g)) for g in groups)

    out: dict[Any, Fraction] = {}
    for key, c in x._terms.items():
        img = f(key)
        # mul may return a LinComb (non-basis products); expand multilinearly
        acc: list[tuple[tuple, Fraction]] = [((), c)]
        for part in img:
            if isinstance(part, LinComb):
                acc = [(k + (b,), w * d) for k, w in acc for b, d in part._terms.items()]
            else:
                acc = [(k + (part,), w) for k, w in acc]
        for k, w in acc:
            out[k] = out.get(k, Fraction(0)) + w
    return LinComb(out)
