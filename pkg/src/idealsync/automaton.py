"""Complete deterministic automata without initial/final structure.

States are dense integers ``0..n-1`` and letters are indices ``0..k-1``
rendered as ``a, b, c, ...``.  Labels are display metadata only: two
automata with the same alphabet and transition table compare equal whatever
their labels say.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import InputError

MAX_ALPHABET = 26
EPSILON = "ε"


@dataclass(frozen=True)
class Alphabet:
    size: int

    def __post_init__(self):
        if not 1 <= self.size <= MAX_ALPHABET:
            raise InputError(f"alphabet size must be in 1..{MAX_ALPHABET}, got {self.size}")

    @classmethod
    def from_letters(cls, letters: str) -> "Alphabet":
        expected = "".join(render_letter(i) for i in range(len(letters)))
        if letters != expected:
            raise InputError(f"alphabet letters must be {expected!r}, got {letters!r}")
        return cls(len(letters))

    @property
    def letters(self) -> str:
        return "".join(render_letter(i) for i in range(self.size))

    def __iter__(self):
        return iter(range(self.size))

    def __len__(self):
        return self.size


BINARY = Alphabet(2)


def render_letter(x: int) -> str:
    return chr(ord("a") + x)


def parse_letter(c: str) -> int:
    x = ord(c) - ord("a")
    if not 0 <= x < MAX_ALPHABET:
        raise InputError(f"not a letter: {c!r}")
    return x


class Word(tuple):
    """An immutable word over letter indices.

    Python indexing stays 0-based; :meth:`at` and :meth:`factor` use the
    1-based conventions ``w[i]`` and ``w[i..j]`` found in the literature.
    """

    __slots__ = ()

    def __new__(cls, letters: Iterable[int] = ()):
        return super().__new__(cls, letters)

    @classmethod
    def parse(cls, text: str, alphabet: Alphabet | None = None) -> "Word":
        text = text.strip()
        if text in ("", EPSILON, "eps"):
            return cls()
        word = cls(parse_letter(c) for c in text)
        if alphabet is not None:
            word.check(alphabet)
        return word

    def check(self, alphabet: Alphabet) -> "Word":
        for x in self:
            if not 0 <= x < alphabet.size:
                raise InputError(f"letter {x} of {self} is outside alphabet {alphabet.letters!r}")
        return self

    def at(self, i: int) -> int:
        if not 1 <= i <= len(self):
            raise IndexError(f"position {i} outside 1..{len(self)}")
        return tuple.__getitem__(self, i - 1)

    def factor(self, i: int, j: int) -> "Word":
        """The factor ``w[i..j]`` (1-based, inclusive); empty when ``j < i``."""
        return Word(tuple.__getitem__(self, slice(i - 1, j)))

    def __getitem__(self, key):
        if isinstance(key, slice):
            return Word(tuple.__getitem__(self, key))
        return tuple.__getitem__(self, key)

    def __add__(self, other):
        return Word(tuple.__add__(self, tuple(other)))

    def __str__(self):
        return "".join(render_letter(x) for x in self)

    def __repr__(self):
        return f"Word({str(self)!r})"

    @property
    def label(self) -> str:
        return str(self) or EPSILON


def length_lex_key(w: Sequence[int]):
    return (len(w), tuple(w))


@dataclass(frozen=True)
class StateSet:
    """Fixed-width bitset of states."""

    width: int
    bits: int = 0

    def __post_init__(self):
        if self.bits >> self.width:
            raise InputError(f"state set {self.bits:b} exceeds width {self.width}")

    @classmethod
    def of(cls, width: int, states: Iterable[int]) -> "StateSet":
        bits = 0
        for q in states:
            if not 0 <= q < width:
                raise InputError(f"state {q} outside 0..{width - 1}")
            bits |= 1 << q
        return cls(width, bits)

    @classmethod
    def full(cls, width: int) -> "StateSet":
        return cls(width, (1 << width) - 1)

    def __iter__(self):
        bits = self.bits
        while bits:
            low = bits & -bits
            yield low.bit_length() - 1
            bits ^= low

    def __len__(self):
        return bin(self.bits).count("1")

    def __contains__(self, q):
        return isinstance(q, int) and 0 <= q < self.width and bool(self.bits >> q & 1)

    def __repr__(self):
        return f"StateSet({self.width}, {sorted(self)})"


@dataclass(frozen=True)
class Dfa:
    """``delta[q][x]`` is the target of state ``q`` under letter ``x``."""

    alphabet: Alphabet
    delta: tuple
    labels: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        delta = tuple(tuple(row) for row in self.delta)
        object.__setattr__(self, "delta", delta)
        n = len(delta)
        if n < 1:
            raise InputError("an automaton needs at least one state")
        k = self.alphabet.size
        for q, row in enumerate(delta):
            if len(row) != k:
                raise InputError(f"incomplete delta at ({q},{render_letter(len(row))})"
                                 if len(row) < k else f"state {q} has {len(row)} targets, expected {k}")
            for x, t in enumerate(row):
                if not isinstance(t, int) or not 0 <= t < n:
                    raise InputError(f"target {t!r} of ({q},{render_letter(x)}) outside 0..{n - 1}")
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != n:
                raise InputError(f"{len(labels)} labels for {n} states")
            object.__setattr__(self, "labels", labels)

    @classmethod
    def from_table(cls, table, alphabet: Alphabet | None = None, labels=None) -> "Dfa":
        table = tuple(tuple(row) for row in table)
        if alphabet is None:
            alphabet = Alphabet(len(table[0]))
        return cls(alphabet, table, labels)

    @property
    def num_states(self) -> int:
        return len(self.delta)

    @property
    def states(self) -> range:
        return range(len(self.delta))

    def label(self, q: int) -> str:
        return self.labels[q] if self.labels is not None else str(q)

    def state_of(self, label: str) -> int:
        if self.labels is None:
            return int(label)
        return self.labels.index(label)

    def relabel(self, labels) -> "Dfa":
        return Dfa(self.alphabet, self.delta, labels)

    def permuted(self, perm: Sequence[int]) -> "Dfa":
        """Rename state ``q`` to ``perm[q]``."""
        n = self.num_states
        table = [None] * n
        labels = [None] * n if self.labels is not None else None
        for q in range(n):
            table[perm[q]] = tuple(perm[t] for t in self.delta[q])
            if labels is not None:
                labels[perm[q]] = self.labels[q]
        return Dfa(self.alphabet, table, labels)

    @cached_property
    def letter_targets(self) -> tuple:
        """``letter_targets[x][q] == 1 << delta[q][x]``, for bitset images."""
        return tuple(tuple(1 << row[x] for row in self.delta) for x in range(self.alphabet.size))

    @cached_property
    def canonical(self) -> tuple:
        return canonical_form(self)


def _check_state(A: Dfa, q: int):
    if not 0 <= q < A.num_states:
        raise InputError(f"state {q} outside 0..{A.num_states - 1}")


def _check_word(A: Dfa, w: Iterable[int]):
    k = A.alphabet.size
    for x in w:
        if not 0 <= x < k:
            raise InputError(f"letter {x} outside alphabet {A.alphabet.letters!r}")


def apply(A: Dfa, q: int, w: Iterable[int]) -> int:
    _check_state(A, q)
    w = tuple(w)
    _check_word(A, w)
    delta = A.delta
    for x in w:
        q = delta[q][x]
    return q


def image_bits(targets: Sequence[int], bits: int) -> int:
    out = 0
    while bits:
        low = bits & -bits
        out |= targets[low.bit_length() - 1]
        bits ^= low
    return out


def image(A: Dfa, P: StateSet | Iterable[int], w: Iterable[int]) -> StateSet:
    """The pointwise image ``{q.w : q in P}``."""
    if not isinstance(P, StateSet):
        P = StateSet.of(A.num_states, P)
    elif P.width != A.num_states:
        raise InputError(f"state set width {P.width} does not match {A.num_states} states")
    w = tuple(w)
    _check_word(A, w)
    bits = P.bits
    targets = A.letter_targets
    for x in w:
        bits = image_bits(targets[x], bits)
    return StateSet(A.num_states, bits)


def _reach(n: int, succ, start: int) -> int:
    seen = 1 << start
    stack = [start]
    while stack:
        q = stack.pop()
        for t in succ[q]:
            if not seen >> t & 1:
                seen |= 1 << t
                stack.append(t)
    return seen


def is_strongly_connected(A: Dfa) -> bool:
    n = A.num_states
    full = (1 << n) - 1
    if _reach(n, A.delta, 0) != full:
        return False
    pred = [[] for _ in range(n)]
    for q, row in enumerate(A.delta):
        for t in row:
            pred[t].append(q)
    return _reach(n, pred, 0) == full


def _labeling_tables(delta, k, order, index, remaining):
    """Yield flattened tables for every root-choice/BFS labeling extending ``order``."""
    if not remaining:
        yield tuple(index[delta[q][x]] for q in order for x in range(k))
        return
    for root in sorted(remaining):
        new_order = list(order)
        new_index = dict(index)
        new_index[root] = len(new_order)
        new_order.append(root)
        queue = deque([root])
        while queue:
            q = queue.popleft()
            for x in range(k):
                t = delta[q][x]
                if t not in new_index:
                    new_index[t] = len(new_order)
                    new_order.append(t)
                    queue.append(t)
        yield from _labeling_tables(delta, k, new_order, new_index,
                                    remaining - set(new_order[len(order):]))


def canonical_form(A: Dfa) -> tuple:
    """An isomorphism-complete invariant: ``(n, k, table)``.

    Every labeling is obtained by picking a root among unlabeled states and
    numbering its unlabeled reachable part breadth-first with letters in
    order; the least flattened table wins.  Strongly connected automata need
    only one root per candidate, so this is quadratic for them.
    """
    n, k = A.num_states, A.alphabet.size
    best = min(_labeling_tables(A.delta, k, [], {}, frozenset(range(n))))
    return (n, k, best)


def are_isomorphic(A: Dfa, B: Dfa) -> bool:
    """True iff some state bijection commutes with every letter action."""
    if A.alphabet.size != B.alphabet.size or A.num_states != B.num_states:
        return False
    return A.canonical == B.canonical


def from_canonical(form: tuple) -> Dfa:
    n, k, flat = form
    return Dfa(Alphabet(k), [flat[q * k:(q + 1) * k] for q in range(n)])
