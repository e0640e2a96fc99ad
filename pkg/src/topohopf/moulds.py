"""Mould calculus over the positive integers, and quasi-ormoulds.

A :class:`Mould` is a memoised function from sequences of positive integers
to rationals.  Equality and the four symmetry predicates are decided up to
:class:`Caps` (maximal length and norm), which are part of every verdict.

Quasi-ormoulds of constant type are handled as :class:`Character` values on
``H`` (isomorphism classes) or ``H_T`` (topologies on ``[n]``); their product
is the convolution for the external coproduct and their composition is the
translation of the internal one.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from . import qposet as qp
from . import topalg as ta
from . import wordalg as wa
from .errors import DomainError, InputError, ResourceError, ValidationError
from .qposet import QPoset
from .setcomp import compositions_of

Seq = tuple[int, ...]


@dataclass(frozen=True)
class Caps:
    length: int = 4
    norm: int = 8

    def __post_init__(self):
        if self.length < 0 or self.norm < 0:
            raise InputError("caps must be non-negative")

    @classmethod
    def parse(cls, text: str) -> Caps:
        try:
            a, b = (int(t) for t in text.split(","))
        except ValueError:
            raise InputError(f"caps must look like 'len,norm', got {text!r}") from None
        return cls(a, b)

    def admits(self, seq: Seq) -> bool:
        return len(seq) <= self.length and sum(seq) <= self.norm


DEFAULT_CAPS = Caps()


def norm(seq: Seq) -> int:
    return sum(seq)


def _seqs_of_norm(n: int, max_len: int) -> Iterator[Seq]:
    if n == 0:
        yield ()
        return
    if max_len == 0:
        return
    for first in range(1, n + 1):
        for rest in _seqs_of_norm(n - first, max_len - 1):
            yield (first,) + rest


def sequences(caps: Caps = DEFAULT_CAPS, nonempty: bool = False) -> list[Seq]:
    """Every sequence within the caps, ordered by length then lexicographically."""
    out = [s for n in range(caps.norm + 1) for s in _seqs_of_norm(n, caps.length)]
    if nonempty:
        out = [s for s in out if s]
    return sorted(out, key=lambda s: (len(s), s))


def _as_seq(seq: Iterable[int]) -> Seq:
    seq = tuple(int(x) for x in seq)
    if any(x < 1 for x in seq):
        raise InputError(f"sequence entries must be positive integers: {seq}")
    return seq


class Mould:
    """A rational-valued function on finite sequences of positive integers."""

    __slots__ = ("_fn", "name", "_memo")

    def __init__(self, fn: Callable[[Seq], object], name: str = "mould"):
        self._fn = fn
        self.name = name
        # a racing double computation stores the same value, so no lock
        self._memo: dict[Seq, Fraction] = {}

    def __call__(self, seq: Iterable[int] = ()) -> Fraction:
        seq = _as_seq(seq)
        try:
            return self._memo[seq]
        except KeyError:
            val = Fraction(self._fn(seq))
            self._memo[seq] = val
            return val

    def uncached(self, seq: Iterable[int]) -> Fraction:
        return Fraction(self._fn(_as_seq(seq)))

    def __repr__(self):
        return f"Mould({self.name})"

    def __mul__(self, other: Mould) -> Mould:
        return mould_product(self, other)

    def __matmul__(self, other: Mould) -> Mould:
        return mould_compose(self, other)

    def __add__(self, other: Mould) -> Mould:
        return Mould(lambda s: self(s) + other(s), f"({self.name} + {other.name})")

    def __sub__(self, other: Mould) -> Mould:
        return Mould(lambda s: self(s) - other(s), f"({self.name} - {other.name})")

    def __neg__(self) -> Mould:
        return self.scale(-1)

    def scale(self, k) -> Mould:
        k = Fraction(k)
        return Mould(lambda s: k * self(s), f"{k}*{self.name}")

    def __rmul__(self, k):
        if isinstance(k, (int, Fraction)):
            return self.scale(k)
        return NotImplemented

    def table(self, caps: Caps = DEFAULT_CAPS) -> list[tuple[Seq, Fraction]]:
        return [(s, self(s)) for s in sequences(caps)]

    def equals(self, other: Mould, caps: Caps = DEFAULT_CAPS) -> bool:
        return all(self(s) == other(s) for s in sequences(caps))

    def first_difference(self, other: Mould, caps: Caps = DEFAULT_CAPS):
        for s in sequences(caps):
            if self(s) != other(s):
                return s, self(s), other(s)
        return None


# ---------------------------------------------------------------- operations


def mould_product(M: Mould, N: Mould) -> Mould:
    def fn(s: Seq):
        return sum((M(s[:i]) * N(s[i:]) for i in range(len(s) + 1)), Fraction(0))

    return Mould(fn, f"({M.name} x {N.name})")


def _blocks(s: Seq) -> Iterator[list[Seq]]:
    for sizes in compositions_of(len(s)):
        out, i = [], 0
        for k in sizes:
            out.append(s[i : i + k])
            i += k
        yield out


def mould_compose(M: Mould, N: Mould) -> Mould:
    def fn(s: Seq):
        if not s:
            return M(())
        acc = Fraction(0)
        for blocks in _blocks(s):
            term = M(tuple(sum(b) for b in blocks))
            for b in blocks:
                if not term:
                    break
                term *= N(b)
            acc += term
        return acc

    return Mould(fn, f"({M.name} o {N.name})")


def bracket(F: Mould, G: Mould) -> Mould:
    return F * G - G * F


def exp_mould(A: Mould) -> Mould:
    if A(()) != 0:
        raise DomainError("exp needs a mould vanishing on the empty sequence")

    def fn(s: Seq):
        if not s:
            return Fraction(1)
        acc = Fraction(0)
        for blocks in _blocks(s):
            acc += Fraction(1, math.factorial(len(blocks))) * math.prod(A(b) for b in blocks)
        return acc

    return Mould(fn, f"exp({A.name})")


def log_mould(M: Mould) -> Mould:
    if M(()) != 1:
        raise DomainError("log needs a mould equal to 1 on the empty sequence")

    def fn(s: Seq):
        if not s:
            return Fraction(0)
        acc = Fraction(0)
        for blocks in _blocks(s):
            k = len(blocks)
            acc += Fraction((-1) ** (k + 1), k) * math.prod(M(b) for b in blocks)
        return acc

    return Mould(fn, f"log({M.name})")


def shuffles(a: Seq, b: Seq) -> list[Seq]:
    if not a:
        return [tuple(b)]
    if not b:
        return [tuple(a)]
    return [(a[0],) + w for w in shuffles(a[1:], b)] + [(b[0],) + w for w in shuffles(a, b[1:])]


def quasi_shuffles(a: Seq, b: Seq) -> list[Seq]:
    if not a:
        return [tuple(b)]
    if not b:
        return [tuple(a)]
    return (
        [(a[0],) + w for w in quasi_shuffles(a[1:], b)]
        + [(b[0],) + w for w in quasi_shuffles(a, b[1:])]
        + [(a[0] + b[0],) + w for w in quasi_shuffles(a[1:], b[1:])]
    )


# ---------------------------------------------------------------- symmetries

SYMMETRAL, ALTERNAL, SYMMETREL, ALTERNEL = "symmetral", "alternal", "symmetrel", "alternel"
KINDS = (SYMMETRAL, ALTERNAL, SYMMETREL, ALTERNEL)


def _pairs(caps: Caps) -> Iterator[tuple[Seq, Seq]]:
    for a in sequences(Caps(caps.length - 1, caps.norm - 1), nonempty=True) if caps.length > 1 else ():
        rest = Caps(caps.length - len(a), caps.norm - sum(a))
        for b in sequences(rest, nonempty=True):
            yield a, b


def symmetry_violation(M: Mould, kind: str, caps: Caps = DEFAULT_CAPS):
    """None if M has the symmetry up to caps, else the first witness."""
    if kind not in KINDS:
        raise InputError(f"unknown symmetry {kind!r}; expected one of {KINDS}")
    alt = kind in (ALTERNAL, ALTERNEL)
    mix = quasi_shuffles if kind in (SYMMETREL, ALTERNEL) else shuffles
    empty = Fraction(0 if alt else 1)
    if M(()) != empty:
        return ((), (), M(()), empty)
    for a, b in _pairs(caps):
        lhs = Fraction(0) if alt else M(a) * M(b)
        rhs = sum((M(w) for w in mix(a, b)), Fraction(0))
        if lhs != rhs:
            return (a, b, lhs, rhs)
    return None


def is_symmetral(M: Mould, caps: Caps = DEFAULT_CAPS) -> bool:
    return symmetry_violation(M, SYMMETRAL, caps) is None


def is_alternal(M: Mould, caps: Caps = DEFAULT_CAPS) -> bool:
    return symmetry_violation(M, ALTERNAL, caps) is None


def is_symmetrel(M: Mould, caps: Caps = DEFAULT_CAPS) -> bool:
    return symmetry_violation(M, SYMMETREL, caps) is None


def is_alternel(M: Mould, caps: Caps = DEFAULT_CAPS) -> bool:
    return symmetry_violation(M, ALTERNEL, caps) is None


def has_symmetry(M: Mould, kind: str, caps: Caps = DEFAULT_CAPS) -> bool:
    return symmetry_violation(M, kind, caps) is None


# ---------------------------------------------------------------- constructors

ONE = Mould(lambda s: int(not s), "one")
ZERO = Mould(lambda s: 0, "zero")
I = Mould(lambda s: int(len(s) == 1), "I")


def length_one(f: Callable[[int], object] | Mapping[int, object] | Sequence, name: str = "f") -> Mould:
    """Mould equal to f(w) on (w,) and zero on every other sequence.

    ``f`` may be a callable, a mapping, or a sequence read as f(1), f(2), ...
    (zero past its end).
    """
    if callable(f):
        get = f
    elif isinstance(f, Mapping):
        get = lambda w: f.get(w, 0)  # noqa: E731
    else:
        vals = [Fraction(v) for v in f]
        get = lambda w: vals[w - 1] if w <= len(vals) else 0  # noqa: E731
    return Mould(lambda s: get(s[0]) if len(s) == 1 else 0, name)


def monomial_character(xs: Sequence) -> Mould:
    """M^c = sum over i_1 < ... < i_k of x_{i_1}^{c_1} ... x_{i_k}^{c_k}."""
    xs = [Fraction(x) for x in xs]
    if any(a >= b for a, b in zip(xs, xs[1:])):
        raise InputError("the alphabet must be strictly increasing")

    def fn(c: Seq):
        return sum(
            (math.prod(xs[i] ** e for i, e in zip(idx, c)) for idx in itertools.combinations(range(len(xs)), len(c))),
            Fraction(0),
        )

    return Mould(fn, "monomial(" + ",".join(map(str, xs)) + ")")


def _rng(seed, *tags) -> random.Random:
    return random.Random(":".join(map(str, (seed,) + tags)))


def random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-6, 6), rng.randint(1, 4))


def random_mould(seed: int, tag: str = "m", empty=None) -> Mould:
    """Deterministic pseudo-random values, one per sequence."""

    def fn(s: Seq):
        if not s and empty is not None:
            return empty
        return random_rational(_rng(seed, tag, s))

    return Mould(fn, f"rand[{seed},{tag}]")


def random_length_one(seed: int, tag: str = "f") -> Mould:
    return length_one(lambda w: random_rational(_rng(seed, tag, w)), f"f[{seed},{tag}]")


def random_alternal(seed: int) -> Mould:
    """A length-one part plus nested brackets, so all lengths up to 3 are hit."""
    L = [random_length_one(seed, f"alt{i}") for i in range(6)]
    return L[0] + bracket(L[1], L[2]) + bracket(L[3], bracket(L[4], L[5]))


def random_symmetral(seed: int) -> Mould:
    return exp_mould(random_alternal(seed))


def random_alphabet(seed: int, size: int = 5) -> list[Fraction]:
    rng = _rng(seed, "alphabet")
    xs: set[Fraction] = set()
    while len(xs) < size:
        x = random_rational(rng)
        if x:
            xs.add(x)
    return sorted(xs)


def random_symmetrel(seed: int, size: int = 5) -> Mould:
    return monomial_character(random_alphabet(seed, size))


def random_alternel(seed: int, size: int = 5) -> Mould:
    return log_mould(random_symmetrel(seed, size))


FAMILIES: dict[str, Callable[[int], Mould]] = {
    SYMMETRAL: random_symmetral,
    ALTERNAL: random_alternal,
    SYMMETREL: random_symmetrel,
    ALTERNEL: random_alternel,
}


# ---------------------------------------------------------------- stability


@dataclass(frozen=True)
class StabilityRule:
    left: str
    op: str  # "x" (product) or "o" (composition)
    right: str
    result: str

    def __str__(self):
        name = lambda k: k.capitalize()  # noqa: E731
        return f"{name(self.left)} {'×' if self.op == 'x' else '∘'} {name(self.right)} = {name(self.result)}"

    def apply(self, M: Mould, N: Mould) -> Mould:
        return M * N if self.op == "x" else M @ N


STABILITY_RULES: tuple[StabilityRule, ...] = (
    StabilityRule(SYMMETRAL, "x", SYMMETRAL, SYMMETRAL),
    # symmetrel x symmetral is not symmetral in general: M x 1 is a witness
    StabilityRule(SYMMETREL, "x", SYMMETREL, SYMMETREL),
    StabilityRule(ALTERNAL, "o", ALTERNAL, ALTERNAL),
    StabilityRule(SYMMETRAL, "o", ALTERNAL, SYMMETRAL),
    StabilityRule(SYMMETREL, "o", SYMMETRAL, SYMMETRAL),
    StabilityRule(ALTERNEL, "o", SYMMETRAL, ALTERNAL),
    StabilityRule(ALTERNAL, "o", ALTERNEL, ALTERNEL),
    StabilityRule(SYMMETRAL, "o", ALTERNEL, SYMMETREL),
    StabilityRule(SYMMETREL, "o", SYMMETREL, SYMMETREL),
    StabilityRule(ALTERNEL, "o", SYMMETREL, ALTERNEL),
)

MIXED_PRODUCT_RULE = StabilityRule(SYMMETREL, "x", SYMMETRAL, SYMMETRAL)


@dataclass
class RuleVerdict:
    rule: StabilityRule
    ok: bool
    detail: str = ""


def check_rule(rule: StabilityRule, seed: int = 0, caps: Caps = DEFAULT_CAPS) -> RuleVerdict:
    M = FAMILIES[rule.left](seed)
    N = FAMILIES[rule.right](seed + 1)
    for label, X, kind in (("left", M, rule.left), ("right", N, rule.right)):
        bad = symmetry_violation(X, kind, caps)
        if bad is not None:
            return RuleVerdict(rule, False, f"{label} input is not {kind}: {bad}")
    bad = symmetry_violation(rule.apply(M, N), rule.result, caps)
    if bad is not None:
        return RuleVerdict(rule, False, f"result is not {rule.result}: {bad}")
    return RuleVerdict(rule, True)


# ---------------------------------------------------------------- quasi-ormoulds

ALGEBRAS = ("H", "HT")


def _top(x) -> QPoset:
    if isinstance(x, ta.IsoClass):
        return x.representative
    if isinstance(x, ta.LabeledTop):
        return x.top
    if isinstance(x, QPoset):
        return x
    raise InputError(f"cannot evaluate a character on {type(x).__name__}")


def generator_key(algebra: str, T: QPoset):
    """Connected generator indexing the value of a character on connected T."""
    return ta.iso(T) if algebra == "H" else ta.std(T)


def connected_generators(algebra: str, cap: int) -> list:
    if algebra not in ALGEBRAS:
        raise InputError(f"algebra must be one of {ALGEBRAS}")
    out = []
    for k in range(1, cap + 1):
        if algebra == "H":
            out += [c for c in ta.iso_classes(k) if qp.is_connected(c.representative)]
        else:
            out += [a for a in ta.labeled_topologies(k) if qp.is_connected(a.top)]
    return out


@dataclass(frozen=True, eq=False)
class Character:
    """Multiplicative functional fixed by its values on connected generators."""

    algebra: str
    values: Mapping
    cap: int
    name: str = field(default="chi", compare=False)

    def __post_init__(self):
        if self.algebra not in ALGEBRAS:
            raise InputError(f"algebra must be one of {ALGEBRAS}")
        object.__setattr__(self, "values", {k: Fraction(v) for k, v in self.values.items()})

    @classmethod
    def from_function(cls, algebra: str, fn: Callable[[QPoset], object], cap: int, name: str = "chi") -> Character:
        gens = connected_generators(algebra, cap)
        return cls(algebra, {g: fn(_top(g)) for g in gens}, cap, name)

    def __call__(self, x) -> Fraction:
        T = _top(x)
        acc = Fraction(1)
        for B in qp.connected_components(T):
            if len(B) > self.cap:
                raise ResourceError(f"character {self.name} is only known up to size {self.cap}")
            acc *= self.values[generator_key(self.algebra, qp.restrict(T, B))]
            if not acc:
                break
        return acc

    def __eq__(self, other):
        return (
            isinstance(other, Character)
            and (self.algebra, self.cap) == (other.algebra, other.cap)
            and self.values == other.values
        )

    __hash__ = None


def _same_kind(M: Character, N: Character):
    if (M.algebra, M.cap) != (N.algebra, N.cap):
        raise InputError(f"characters live on different algebras/caps: {M.algebra}/{M.cap} vs {N.algebra}/{N.cap}")


def unit_character(algebra: str, cap: int) -> Character:
    return Character.from_function(algebra, lambda T: 0, cap, "e")


def J_character(algebra: str, cap: int) -> Character:
    """1 on connected coarse topologies, 0 on the other connected ones."""
    return Character.from_function(algebra, lambda T: int(qp.is_group_like(T)), cap, "J")


def random_character(algebra: str, cap: int, seed: int, tag: str = "chi") -> Character:
    return Character.from_function(
        algebra, lambda T: random_rational(_rng(seed, tag, qp.print_dsl(T))), cap, f"rand[{seed},{tag}]"
    )


def convolve(M: Character, N: Character, x) -> Fraction:
    """Sum over open Y of M(T|_{X-Y}) N(T|_Y), evaluated directly."""
    T = _top(x)
    X = T.ground
    return sum((M(qp.restrict(T, X - Y)) * N(qp.restrict(T, Y)) for Y in qp.iter_open_sets(T)), Fraction(0))


def compose_eval(M: Character, N: Character, x) -> Fraction:
    """Sum over admissible T' of N(T') M(T/T'), evaluated directly."""
    T = _top(x)
    return sum((N(T1) * M(T2) for (T1, T2), _ in ta.gamma(T)), Fraction(0))


def char_product(M: Character, N: Character) -> Character:
    _same_kind(M, N)
    return Character.from_function(M.algebra, lambda T: convolve(M, N, T), M.cap, f"({M.name}·{N.name})")


def char_compose(M: Character, N: Character) -> Character:
    _same_kind(M, N)
    return Character.from_function(M.algebra, lambda T: compose_eval(M, N, T), M.cap, f"({M.name}∘{N.name})")


def qsym_functional(phi: Mould) -> Callable[[wa.Composition], Fraction]:
    return lambda c: phi(c.parts)


def quasi_posetization(phi: Mould | Callable[[Seq], object], cap: int = 4, caps: Caps | None = None) -> Character:
    """Pull a QSym character (a symmetrel mould) back along lambda."""
    if not isinstance(phi, Mould):
        phi = Mould(phi, "phi")
    caps = caps or Caps(cap, 2 * cap)
    bad = symmetry_violation(phi, SYMMETREL, caps)
    if bad is not None:
        raise ValidationError(f"not multiplicative on QSym (witness {bad})")
    return Character.from_function("H", lambda T: lambda_value(phi, T), cap, f"Q({phi.name})")


def lambda_value(phi: Mould, x) -> Fraction:
    """phi(lambda(T)) computed directly from the linear extensions of T."""
    return sum((k * phi(c.parts) for c, k in wa.lambda_map(_top(x))), Fraction(0))


# ---------------------------------------------------------------- CLI expressions


class _ExprParser:
    """Built-in moulds joined by ``*`` and ``@``, grouped with parentheses.

    ``@`` binds tighter than ``*``; both associate to the left.
    """

    def __init__(self, text: str):
        self.text = text
        self.i = 0

    def error(self, msg: str):
        from .errors import DSLSyntaxError

        raise DSLSyntaxError(msg, self.i)

    def ws(self):
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def peek(self) -> str:
        self.ws()
        return self.text[self.i] if self.i < len(self.text) else ""

    def parse(self) -> Mould:
        m = self.product()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return m

    def product(self) -> Mould:
        m = self.compose()
        while self.peek() == "*":
            self.i += 1
            m = m * self.compose()
        return m

    def compose(self) -> Mould:
        m = self.atom()
        while self.peek() == "@":
            self.i += 1
            m = m @ self.atom()
        return m

    def atom(self) -> Mould:
        c = self.peek()
        if c == "(":
            self.i += 1
            m = self.product()
            if self.peek() != ")":
                self.error("expected ')'")
            self.i += 1
            return m
        start = self.i
        while self.i < len(self.text) and self.text[self.i].isalpha():
            self.i += 1
        word = self.text[start : self.i]
        if word == "one":
            return ONE
        if word == "I":
            return I
        if word in ("exp", "monomial"):
            key = "f" if word == "exp" else "x"
            args = self.call_args(key)
            if word == "exp":
                return exp_mould(length_one(args, "f=" + ",".join(map(str, args))))
            return monomial_character(args)
        self.i = start
        self.error("expected one, I, exp(f=...) or monomial(x=...)")

    def call_args(self, key: str) -> list[Fraction]:
        if self.peek() != "(":
            self.error("expected '('")
        self.i += 1
        self.ws()
        if not self.text.startswith(key + "=", self.i):
            self.error(f"expected '{key}='")
        self.i += len(key) + 1
        end = self.text.find(")", self.i)
        if end < 0:
            self.error("expected ')'")
        body = self.text[self.i : end]
        try:
            vals = [Fraction(t.strip()) for t in body.split(",") if t.strip()]
        except (ValueError, ZeroDivisionError):
            self.error(f"bad rational list {body!r}")
        self.i = end + 1
        return vals


def parse_mould(text: str) -> Mould:
    return _ExprParser(text).parse()
