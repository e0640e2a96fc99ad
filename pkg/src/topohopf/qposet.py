"""Finite topologies stored as quasi-orders.

A :class:`QPoset` carries an increasing tuple of atom labels and a boolean
matrix ``leq`` with ``leq[i, j]`` true iff ``atoms[i] <= atoms[j]``.  Open
sets are the final segments (up-sets) of this quasi-order.
"""

from __future__ import annotations

import functools
import itertools
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Mapping

import numpy as np

from . import _kernels
from .errors import DomainError, DSLSyntaxError, InputError, ResourceError, ValidationError

CANONICAL_CAP = 8
ENUMERATION_CAP = 5  # 2^(n(n-1)) candidate relations: n=6 already needs 2^30


@dataclass(frozen=True, eq=False)
class QPoset:
    atoms: tuple[int, ...]
    leq: np.ndarray

    def __post_init__(self):
        atoms = tuple(int(a) for a in self.atoms)
        n = len(atoms)
        mat = np.array(self.leq, dtype=np.bool_).reshape(n, n)
        if any(a < 0 for a in atoms) or any(a >= b for a, b in zip(atoms, atoms[1:])):
            raise InputError(f"atoms must be distinct non-negative and increasing: {atoms}")
        if n:
            if not mat.diagonal().all():
                raise ValidationError("relation is not reflexive")
            m8 = mat.astype(np.uint8)
            if ((m8 @ m8 > 0) & ~mat).any():
                raise ValidationError("relation is not transitive")
        mat.setflags(write=False)
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "leq", mat)
        object.__setattr__(self, "_key", (atoms, mat.tobytes()))
        object.__setattr__(self, "_pos", {a: i for i, a in enumerate(atoms)})

    def __eq__(self, other):
        if not isinstance(other, QPoset):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __len__(self):
        return len(self.atoms)

    def sort_key(self):
        return (len(self.atoms), self.atoms, self._key[1])

    def index(self, atom: int) -> int:
        try:
            return self._pos[atom]
        except KeyError:
            raise InputError(f"unknown atom {atom}") from None

    def le(self, x: int, y: int) -> bool:
        return bool(self.leq[self.index(x), self.index(y)])

    def lt(self, x: int, y: int) -> bool:
        return self.le(x, y) and not self.le(y, x)

    @property
    def ground(self) -> frozenset[int]:
        return frozenset(self.atoms)

    def __str__(self):
        return "[" + print_dsl(self) + "]"

    def __repr__(self):
        return f"QPoset({print_dsl(self)!r})"


@dataclass(frozen=True)
class Partition:
    blocks: tuple[frozenset[int], ...]

    def __post_init__(self):
        blocks = tuple(sorted((frozenset(b) for b in self.blocks), key=min_or_none))
        seen: set[int] = set()
        for b in blocks:
            if not b:
                raise InputError("partition blocks must be nonempty")
            if seen & b:
                raise InputError("partition blocks must be disjoint")
            seen |= b
        object.__setattr__(self, "blocks", blocks)

    @property
    def ground(self) -> frozenset[int]:
        return frozenset().union(*self.blocks)

    def __len__(self):
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def block_of(self, atom: int) -> frozenset[int]:
        for b in self.blocks:
            if atom in b:
                return b
        raise InputError(f"unknown atom {atom}")


def min_or_none(block):
    return min(block) if block else -1


def _make(atoms: Iterable[int], mat: np.ndarray) -> QPoset:
    return QPoset(tuple(atoms), mat)


# ---------------------------------------------------------------- constructors


def from_relations(atoms: Iterable[int], pairs: Iterable[tuple[int, int]] = ()) -> QPoset:
    """Reflexive-transitive closure of ``pairs`` on ``atoms``."""
    atoms = sorted(set(int(a) for a in atoms))
    pos = {a: i for i, a in enumerate(atoms)}
    mat = np.eye(len(atoms), dtype=np.bool_)
    for x, y in pairs:
        if x not in pos or y not in pos:
            raise InputError(f"pair ({x}, {y}) references an unknown atom")
        mat[pos[x], pos[y]] = True
    return _make(atoms, _kernels.closure(mat))


def discrete(atoms: Iterable[int]) -> QPoset:
    atoms = sorted(set(atoms))
    return _make(atoms, np.eye(len(atoms), dtype=np.bool_))


def coarse(atoms: Iterable[int]) -> QPoset:
    atoms = sorted(set(atoms))
    return _make(atoms, np.ones((len(atoms), len(atoms)), dtype=np.bool_))


def chain(atoms: Iterable[int]) -> QPoset:
    """Total order following the given sequence: ``chain([2, 0])`` has 2 < 0."""
    seq = list(atoms)
    return from_relations(seq, zip(seq, seq[1:]))


EMPTY = discrete(())


# ---------------------------------------------------------------- open sets


def _mask_to_set(atoms: tuple[int, ...], mask: int) -> frozenset[int]:
    return frozenset(a for i, a in enumerate(atoms) if (mask >> i) & 1)


def open_set_masks(T: QPoset) -> np.ndarray:
    """Open sets as bitmasks over atom positions, ascending."""
    if not T.atoms:
        return np.zeros(1, dtype=np.int64)
    return _kernels.upset_masks(T.leq)


def open_sets(T: QPoset) -> frozenset[frozenset[int]]:
    return frozenset(_mask_to_set(T.atoms, int(m)) for m in open_set_masks(T))


def iter_open_sets(T: QPoset) -> Iterator[frozenset[int]]:
    for m in open_set_masks(T):
        yield _mask_to_set(T.atoms, int(m))


def from_open_sets(atoms: Iterable[int], family: Iterable[Iterable[int]]) -> QPoset:
    atoms = sorted(set(atoms))
    full = frozenset(atoms)
    fam = {frozenset(Y) for Y in family}
    for Y in fam:
        if not Y <= full:
            raise InputError(f"open set {sorted(Y)} is not a subset of the ground set")
    if frozenset() not in fam or full not in fam:
        raise ValidationError("axiom 1 fails: the empty set and the ground set must be open")
    for Y, Z in itertools.combinations(fam, 2):
        if Y | Z not in fam:
            raise ValidationError(f"axiom 2 fails: union of {sorted(Y)} and {sorted(Z)} is not open")
        if Y & Z not in fam:
            raise ValidationError(
                f"axiom 3 fails: intersection of {sorted(Y)} and {sorted(Z)} is not open"
            )
    n = len(atoms)
    mat = np.zeros((n, n), dtype=np.bool_)
    for i, x in enumerate(atoms):
        for j, y in enumerate(atoms):
            mat[i, j] = all(y in Y for Y in fam if x in Y)
    return _make(atoms, mat)


# ---------------------------------------------------------------- structure


def dual(T: QPoset) -> QPoset:
    return _make(T.atoms, T.leq.T)


def restrict(T: QPoset, Y: Iterable[int]) -> QPoset:
    Y = set(Y)
    if not Y <= set(T.atoms):
        raise InputError(f"{sorted(Y - set(T.atoms))} not in the ground set")
    idx = [i for i, a in enumerate(T.atoms) if a in Y]
    return _make([T.atoms[i] for i in idx], T.leq[np.ix_(idx, idx)])


def equiv_classes(T: QPoset) -> Partition:
    sym = T.leq & T.leq.T
    blocks = {}
    for i, a in enumerate(T.atoms):
        blocks.setdefault(int(np.argmax(sym[i])), set()).add(a)
    return Partition(tuple(blocks.values()))


def connected_components(T: QPoset) -> Partition:
    n = len(T.atoms)
    adj = T.leq | T.leq.T
    comp = [-1] * n
    blocks = []
    for s in range(n):
        if comp[s] >= 0:
            continue
        comp[s] = len(blocks)
        stack, block = [s], set()
        while stack:
            i = stack.pop()
            block.add(T.atoms[i])
            for j in np.flatnonzero(adj[i]):
                if comp[j] < 0:
                    comp[j] = comp[s]
                    stack.append(int(j))
        blocks.append(block)
    return Partition(tuple(blocks))


def is_connected(T: QPoset) -> bool:
    return len(connected_components(T)) == 1


def product(*tops: QPoset) -> QPoset:
    """Disjoint-union topology; the empty QPoset is the unit."""
    atoms: list[int] = []
    for T in tops:
        atoms.extend(T.atoms)
    if len(set(atoms)) != len(atoms):
        raise InputError("factors of a product must have disjoint ground sets")
    order = sorted(atoms)
    pos = {a: i for i, a in enumerate(order)}
    mat = np.zeros((len(order), len(order)), dtype=np.bool_)
    for T in tops:
        idx = [pos[a] for a in T.atoms]
        mat[np.ix_(idx, idx)] = T.leq
    return _make(order, mat)


def _same_atoms(A: QPoset, B: QPoset):
    if A.atoms != B.atoms:
        raise InputError(f"ground sets differ: {A.atoms} vs {B.atoms}")


def is_finer(Tp: QPoset, T: QPoset) -> bool:
    _same_atoms(Tp, T)
    return not (Tp.leq & ~T.leq).any()


def quotient(T: QPoset, Tp: QPoset) -> QPoset:
    """T/T': closure of (x <=_T y or y <=_T' x); requires T' finer than T."""
    if not is_finer(Tp, T):
        raise DomainError("quotient T/T' requires T' to be finer than T")
    return _make(T.atoms, _kernels.closure(T.leq | Tp.leq.T))


def is_admissible(Tp: QPoset, T: QPoset) -> bool:
    if not is_finer(Tp, T):
        return False
    comps = connected_components(Tp)
    for B in comps:
        if restrict(Tp, B) != restrict(T, B):
            return False
    return equiv_classes(quotient(T, Tp)) == comps


def set_partitions(items: Iterable[int]) -> Iterator[list[list[int]]]:
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for k in range(len(part)):
            yield part[:k] + [[first] + part[k]] + part[k + 1 :]


@functools.lru_cache(maxsize=None)
def _admissible_refinements(T: QPoset) -> tuple[QPoset, ...]:
    found = []
    for blocks in set_partitions(T.atoms):
        pieces = [restrict(T, B) for B in blocks]
        if not all(is_connected(P) for P in pieces):
            continue
        cand = product(*pieces)
        if equiv_classes(quotient(T, cand)) == Partition(tuple(map(frozenset, blocks))):
            found.append(cand)
    return tuple(sorted(found, key=QPoset.sort_key))


def admissible_refinements(T: QPoset) -> list[QPoset]:
    """All T' with T' admissibly finer than T, sorted deterministically."""
    return list(_admissible_refinements(T))


def degree(T: QPoset) -> int:
    return len(equiv_classes(T)) - len(connected_components(T))


def is_group_like(T: QPoset) -> bool:
    return bool((T.leq == T.leq.T).all())


def relabel(T: QPoset, phi: Mapping[int, int]) -> QPoset:
    if set(phi) != set(T.atoms):
        raise InputError("relabelling must be defined exactly on the ground set")
    images = [int(phi[a]) for a in T.atoms]
    if len(set(images)) != len(images):
        raise InputError("relabelling is not injective")
    order = np.argsort(images, kind="stable")
    return _make([images[i] for i in order], T.leq[np.ix_(order, order)])


def standardize(T: QPoset, start: int = 1) -> QPoset:
    return relabel(T, {a: start + i for i, a in enumerate(T.atoms)})


def shift(T: QPoset, k: int) -> QPoset:
    return relabel(T, {a: a + k for a in T.atoms})


# ---------------------------------------------------------------- canonical form

_canonicalizer: Callable[[QPoset], bytes] | None = None


def set_canonicalizer(fn: Callable[[QPoset], bytes] | None) -> None:
    """Install a canonical-labelling function used above ``CANONICAL_CAP``."""
    global _canonicalizer
    _canonicalizer = fn


@functools.lru_cache(maxsize=1 << 16)
def _canonical_matrix(n: int, raw: bytes) -> bytes:
    mat = np.frombuffer(raw, dtype=np.bool_).reshape(n, n)
    # atoms may only move between positions sharing (up-count, down-count)
    inv = list(zip(mat.sum(axis=1).tolist(), mat.sum(axis=0).tolist()))
    labels = {v: k for k, v in enumerate(sorted(set(inv)))}
    atom_cls = np.array([labels[v] for v in inv], dtype=np.int64)
    pos_cls = np.sort(atom_cls)
    perm = _kernels.min_relabeling(np.ascontiguousarray(mat), atom_cls, pos_cls)
    return np.ascontiguousarray(mat[np.ix_(perm, perm)]).tobytes()


def canonical_matrix(T: QPoset, cap: int = CANONICAL_CAP) -> np.ndarray:
    n = len(T.atoms)
    if n > cap:
        raise ResourceError(
            f"canonical form is capped at {cap} atoms (got {n}); "
            "install a pluggable canonicalizer with set_canonicalizer()"
        )
    return np.frombuffer(_canonical_matrix(n, T._key[1]), dtype=np.bool_).reshape(n, n)


def canonical_form(T: QPoset, cap: int = CANONICAL_CAP) -> bytes:
    """Byte key equal for two QPosets iff they are homeomorphic."""
    if len(T.atoms) > cap and _canonicalizer is not None:
        return _canonicalizer(T)
    mat = canonical_matrix(T, cap)
    return bytes([len(T.atoms)]) + np.packbits(mat.reshape(-1)).tobytes()


def canonical_representative(T: QPoset) -> QPoset:
    """The canonical relabelling of T onto atoms 1..n."""
    return _make(range(1, len(T.atoms) + 1), canonical_matrix(T))


# ---------------------------------------------------------------- enumeration


def _check_enum_cap(n: int) -> None:
    if n > ENUMERATION_CAP:
        raise ResourceError(f"topology enumeration is capped at {ENUMERATION_CAP} atoms, got {n}")


def all_topologies(atoms: Iterable[int]) -> list[QPoset]:
    """Every topology on ``atoms`` via the reflexive-transitive matrix filter."""
    atoms = sorted(set(atoms))
    _check_enum_cap(len(atoms))
    if not atoms:
        return [EMPTY]
    return [_make(atoms, m) for m in _kernels.quasi_orders(len(atoms))]


def topologies_by_open_sets(atoms: Iterable[int]) -> list[QPoset]:
    """Every topology on ``atoms`` by generating union/intersection-closed families.

    Independent of :func:`all_topologies`; used as a cross-check.
    """
    atoms = sorted(set(atoms))
    n = len(atoms)
    _check_enum_cap(n)
    full = (1 << n) - 1
    middle = list(range(1, full))

    def close(fam: set[int]) -> set[int]:
        fam = set(fam)
        frontier = list(fam)
        while frontier:
            s = frontier.pop()
            for t in list(fam):
                for u in (s | t, s & t):
                    if u not in fam:
                        fam.add(u)
                        frontier.append(u)
        return fam

    out: list[frozenset[int]] = []

    def rec(idx: int, fam: set[int], banned: set[int]):
        while idx < len(middle) and middle[idx] in fam:
            idx += 1
        if idx == len(middle):
            out.append(frozenset(fam))
            return
        s = middle[idx]
        rec(idx + 1, fam, banned | {s})
        grown = close(fam | {s})
        if not grown & banned:
            rec(idx + 1, grown, banned)

    rec(0, {0, full}, set())
    return [
        from_open_sets(atoms, [_mask_to_set(tuple(atoms), m) for m in fam]) for fam in out
    ]


# ---------------------------------------------------------------- DSL and JSON

_TOKEN = re.compile(r"\s*(?:(\d+)|([<~,]))")


def parse_dsl(text: str) -> QPoset:
    """Parse text such as ``"0<1, 1~2, 3"``; a bare atom stands alone."""
    tokens: list[tuple[str, str, int]] = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise DSLSyntaxError(f"unexpected character {text[start]!r}", start)
        start = m.start(1) if m.group(1) is not None else m.start(2)
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), start))
        else:
            tokens.append(("op", m.group(2), start))
        pos = m.end()

    atoms: set[int] = set()
    pairs: list[tuple[int, int]] = []
    i = 0

    def expect_int() -> tuple[int, int]:
        nonlocal i
        if i >= len(tokens):
            raise DSLSyntaxError("expected an atom", len(text))
        kind, val, at = tokens[i]
        if kind != "int":
            raise DSLSyntaxError(f"expected an atom, got {val!r}", at)
        i += 1
        return int(val), at

    if not tokens:
        return EMPTY
    while True:
        a, at = expect_int()
        atoms.add(a)
        if i < len(tokens) and tokens[i][1] in "<~":
            op, op_at = tokens[i][1], tokens[i][2]
            i += 1
            b, _ = expect_int()
            if a == b and op == "<":
                raise DSLSyntaxError(f"self-loop {a}<{a} is not allowed", op_at)
            atoms.add(b)
            pairs.append((a, b))
            if op == "~":
                pairs.append((b, a))
        if i == len(tokens):
            break
        kind, val, at = tokens[i]
        if val != ",":
            raise DSLSyntaxError(f"expected ',', got {val!r}", at)
        i += 1
        if i == len(tokens):
            raise DSLSyntaxError("trailing ','", at)
    return from_relations(atoms, pairs)


def print_dsl(T: QPoset) -> str:
    """Normal form: class declarations, Hasse pairs of the T0 quotient, bare atoms."""
    classes = list(equiv_classes(T))
    items: list[tuple[tuple[int, int], str]] = []
    mentioned: set[int] = set()
    for c in classes:
        m = min(c)
        for x in sorted(c - {m}):
            items.append(((m, x), f"{m}~{x}"))
            mentioned |= {m, x}
    reps = [min(c) for c in classes]
    below = {(a, b) for a in reps for b in reps if a != b and T.le(a, b) and not T.le(b, a)}
    for a, b in below:
        if not any((a, c) in below and (c, b) in below for c in reps):
            items.append(((a, b), f"{a}<{b}"))
            mentioned |= {a, b}
    for a in T.atoms:
        if a not in mentioned:
            items.append(((a, -1), str(a)))
    return ", ".join(s for _, s in sorted(items))


def to_json(T: QPoset) -> dict:
    return {"atoms": list(T.atoms), "leq": T.leq.tolist()}


def from_json(obj: Mapping) -> QPoset:
    try:
        atoms = [int(a) for a in obj["atoms"]]
        leq = obj["leq"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed topology JSON: {exc}") from None
    n = len(atoms)
    if len(leq) != n or any(len(row) != n for row in leq):
        raise InputError("leq must be a square matrix matching atoms")
    order = np.argsort(atoms, kind="stable")
    mat = np.array(leq, dtype=np.bool_).reshape(n, n)
    return QPoset(tuple(atoms[i] for i in order), mat[np.ix_(order, order)])


def parse(text_or_json) -> QPoset:
    """Accept DSL text, a JSON string, or an already-decoded JSON object."""
    if isinstance(text_or_json, Mapping):
        return from_json(text_or_json)
    s = text_or_json.strip()
    if s.startswith("{"):
        import json

        return from_json(json.loads(s))
    return parse_dsl(s)
