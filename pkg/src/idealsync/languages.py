"""Generator sets, ideal languages and their recognizers.

The ideal generated by a finite set ``S`` is ``Σ*SΣ*``: every word having
some element of ``S`` as a factor.  Recognizers built here are the ground
truth that the synchronizing constructions are checked against.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .automaton import (BINARY, EPSILON, Alphabet, Dfa, StateSet, Word,
                        length_lex_key)
from .errors import InputError

ACCEPT_LABEL = "⊤"


def _as_word(w) -> Word:
    return w if isinstance(w, Word) else Word.parse(w) if isinstance(w, str) else Word(w)


def is_factor(u, w) -> bool:
    """True iff ``w = xuy`` for some words ``x, y``."""
    return bytes(u) in bytes(w)


def occurrences(u, w):
    """Start offsets (0-based) of every occurrence of ``u`` in ``w``."""
    u, w = bytes(u), bytes(w)
    out = []
    i = w.find(u)
    while i != -1:
        out.append(i)
        i = w.find(u, i + 1)
    return out


@dataclass(frozen=True)
class GeneratorSet:
    alphabet: Alphabet
    words: frozenset

    def __post_init__(self):
        words = frozenset(_as_word(w) for w in self.words)
        for w in words:
            w.check(self.alphabet)
        object.__setattr__(self, "words", words)

    @classmethod
    def of(cls, words: Iterable, alphabet: Alphabet | None = None) -> "GeneratorSet":
        words = [_as_word(w) for w in words]
        if alphabet is None:
            alphabet = infer_alphabet(words)
        return cls(alphabet, frozenset(words))

    @classmethod
    def parse(cls, text: str, alphabet: Alphabet | None = None) -> "GeneratorSet":
        """Parse a comma-separated list such as ``"aa,aba"``."""
        parts = [p.strip() for p in text.split(",")] if text.strip() else []
        return cls.of((Word.parse(p) for p in parts), alphabet)

    def __iter__(self):
        return iter(self.sorted())

    def __len__(self):
        return len(self.words)

    def __contains__(self, w):
        return _as_word(w) in self.words

    def __str__(self):
        return ",".join(w.label for w in self.sorted())

    def sorted(self) -> list:
        return sorted(self.words, key=length_lex_key)

    @property
    def max_length(self) -> int:
        return max((len(w) for w in self.words), default=0)

    @property
    def min_length(self) -> int:
        return min((len(w) for w in self.words), default=0)

    @property
    def is_whole_language(self) -> bool:
        """``ε ∈ S``: the generated ideal is all of ``Σ*``."""
        return Word() in self.words

    @property
    def is_anti_factorial(self) -> bool:
        ws = self.sorted()
        return not any(is_factor(u, w) for i, u in enumerate(ws) for w in ws[i + 1:])


def infer_alphabet(words: Iterable) -> Alphabet:
    """Smallest alphabet covering the letters used, never below binary."""
    top = max((x for w in words for x in w), default=0)
    return Alphabet(max(2, top + 1))


def anti_factorial_reduce(S: GeneratorSet) -> GeneratorSet:
    """Drop every word that has another generator as a factor.

    If ``ε ∈ S`` the result is ``{ε}``, whose :attr:`is_whole_language`
    flag callers must check.
    """
    if S.is_whole_language:
        return GeneratorSet(S.alphabet, frozenset([Word()]))
    ws = S.sorted()
    kept = [w for w in ws if not any(u != w and is_factor(u, w) for u in ws if len(u) <= len(w))]
    return GeneratorSet(S.alphabet, frozenset(kept))


@dataclass(frozen=True)
class Recognizer:
    dfa: Dfa
    initial: int
    accepting: StateSet

    def __post_init__(self):
        n = self.dfa.num_states
        if not 0 <= self.initial < n:
            raise InputError(f"initial state {self.initial} outside 0..{n - 1}")
        acc = self.accepting
        if not isinstance(acc, StateSet):
            acc = StateSet.of(n, acc)
        elif acc.width != n:
            raise InputError(f"accepting set width {acc.width} does not match {n} states")
        object.__setattr__(self, "accepting", acc)

    @property
    def alphabet(self) -> Alphabet:
        return self.dfa.alphabet

    @property
    def num_states(self) -> int:
        return self.dfa.num_states

    def accepts(self, w) -> bool:
        return member(self, w)

    def __contains__(self, w):
        return member(self, w)


def member(R: Recognizer, w) -> bool:
    w = _as_word(w).check(R.alphabet)
    q = R.initial
    delta = R.dfa.delta
    for x in w:
        q = delta[q][x]
    return q in R.accepting


def build_word_automaton(w) -> Recognizer:
    """Minimal recognizer of ``Σ*wΣ*`` on the ``|w|+1`` prefixes of ``w``.

    From prefix ``w[1..i]`` a letter ``x`` leads to the longest prefix of
    ``w`` that is a suffix of ``w[1..i]x``; the full word is an absorbing
    sink.  Alphabet is binary unless ``w`` uses more letters.
    """
    w = _as_word(w)
    if not w:
        raise InputError("the word automaton needs a nonempty word")
    alphabet = infer_alphabet([w])
    return Recognizer(_prefix_automaton(w, alphabet), 0, [len(w)])


def prefix_transitions(w: Word, k: int):
    """KMP automaton rows for prefix lengths ``0..|w|-1``, letters ``0..k-1``."""
    n = len(w)
    fail = [0] * (n + 1)
    rows = []
    for i in range(n):
        if i == 0:
            row = [0] * k
        else:
            row = list(rows[fail[i]])
        row[w[i]] = i + 1
        rows.append(row)
        if i >= 1:
            fail[i + 1] = rows[fail[i]][w[i]]
    return rows


def _prefix_automaton(w: Word, alphabet: Alphabet) -> Dfa:
    n, k = len(w), alphabet.size
    rows = prefix_transitions(w, k)
    rows.append([n] * k)
    labels = [w[:i].label for i in range(n + 1)]
    return Dfa(alphabet, rows, labels)


def ideal_automaton(S: GeneratorSet) -> Recognizer:
    """Unminimized failure-function recognizer of ``Σ*SΣ*``.

    Trie nodes that complete an occurrence of some generator all collapse
    into one absorbing accepting state, which is numbered last.
    """
    alphabet, k = S.alphabet, S.alphabet.size
    if S.is_whole_language:
        return Recognizer(Dfa(alphabet, [[0] * k], [ACCEPT_LABEL]), 0, [0])
    goto = [{}]
    labels = [Word()]
    terminal = [False]
    for w in S.sorted():
        node = 0
        for x in w:
            nxt = goto[node].get(x)
            if nxt is None:
                nxt = len(goto)
                goto[node][x] = nxt
                goto.append({})
                labels.append(labels[node] + (x,))
                terminal.append(False)
            node = nxt
        terminal[node] = True
    size = len(goto)
    if not S.words:
        return Recognizer(Dfa(alphabet, [[0] * k], [EPSILON]), 0, [])
    fail = [0] * size
    trans = [None] * size
    trans[0] = [goto[0].get(x, 0) for x in range(k)]
    queue = deque()
    for x in range(k):
        child = goto[0].get(x)
        if child is not None:
            queue.append(child)
    while queue:
        node = queue.popleft()
        terminal[node] = terminal[node] or terminal[fail[node]]
        row = list(trans[fail[node]])
        for x, child in goto[node].items():
            fail[child] = trans[fail[node]][x]
            row[x] = child
            queue.append(child)
        trans[node] = row
    live = [q for q in range(size) if not terminal[q]]
    index = {q: i for i, q in enumerate(live)}
    acc = len(live)
    table = [[index.get(t, acc) for t in trans[q]] for q in live]
    table.append([acc] * k)
    names = [labels[q].label for q in live] + [ACCEPT_LABEL]
    return Recognizer(Dfa(alphabet, table, names), 0, [acc])


def build_ideal_recognizer(S: GeneratorSet) -> Recognizer:
    """Minimal recognizer of the ideal generated by ``S``."""
    return minimize(ideal_automaton(S))


def minimize(R: Recognizer) -> Recognizer:
    """Moore partition refinement on the reachable part, renumbered breadth-first."""
    delta, k = R.dfa.delta, R.alphabet.size
    order = [R.initial]
    seen = {R.initial}
    for q in order:
        for t in delta[q]:
            if t not in seen:
                seen.add(t)
                order.append(t)
    block = {q: int(q in R.accepting) for q in order}
    count = len(set(block.values()))
    while True:
        sigs = {}
        new_block = {}
        for q in order:
            sig = (block[q],) + tuple(block[delta[q][x]] for x in range(k))
            new_block[q] = sigs.setdefault(sig, len(sigs))
        block = new_block
        if len(sigs) == count:
            break
        count = len(sigs)
    # breadth-first renumbering from the initial block gives a canonical table
    rep = {}
    for q in order:
        rep.setdefault(block[q], q)
    numbering = {block[R.initial]: 0}
    queue = [block[R.initial]]
    for b in queue:
        for x in range(k):
            c = block[delta[rep[b]][x]]
            if c not in numbering:
                numbering[c] = len(numbering)
                queue.append(c)
    n = len(numbering)
    table = [None] * n
    labels = [None] * n
    accepting = []
    for b, i in numbering.items():
        q = rep[b]
        table[i] = [numbering[block[t]] for t in delta[q]]
        labels[i] = R.dfa.label(q)
        if q in R.accepting:
            accepting.append(i)
    return Recognizer(Dfa(R.alphabet, table, labels), 0, accepting)


def equivalent(R1: Recognizer, R2: Recognizer) -> bool:
    """Exact language equality by exploring the reachable product automaton."""
    if R1.alphabet.size != R2.alphabet.size:
        raise InputError("recognizers over different alphabets")
    d1, d2 = R1.dfa.delta, R2.dfa.delta
    a1, a2 = R1.accepting.bits, R2.accepting.bits
    start = (R1.initial, R2.initial)
    seen = {start}
    stack = [start]
    while stack:
        p, q = stack.pop()
        if (a1 >> p & 1) != (a2 >> q & 1):
            return False
        for t in zip(d1[p], d2[q]):
            if t not in seen:
                seen.add(t)
                stack.append(t)
    return True


def shortest_accepted(R: Recognizer) -> Word | None:
    """Length-lex least accepted word, or None for the empty language."""
    delta, k = R.dfa.delta, R.alphabet.size
    parent = {R.initial: None}
    queue = deque([R.initial])
    while queue:
        q = queue.popleft()
        if q in R.accepting:
            letters = []
            while parent[q] is not None:
                q, x = parent[q]
                letters.append(x)
            return Word(reversed(letters))
        for x in range(k):
            t = delta[q][x]
            if t not in parent:
                parent[t] = (q, x)
                queue.append(t)
    return None


def all_words(alphabet: Alphabet, max_len: int, min_len: int = 0):
    """Every word with length in ``min_len..max_len``, length-lex ordered."""
    from itertools import product
    for n in range(min_len, max_len + 1):
        for letters in product(range(alphabet.size), repeat=n):
            yield Word(letters)


def uniform_set(n: int, alphabet: Alphabet = BINARY) -> GeneratorSet:
    """All words of length ``n``, generating ``Σ^{≥n}``."""
    return GeneratorSet(alphabet, frozenset(all_words(alphabet, n, n)))
