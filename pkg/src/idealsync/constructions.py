"""Strongly connected synchronizing automata for finitely generated ideals.

Four builders, each producing a strongly connected automaton whose set of
synchronizing words is a prescribed ideal:

* :func:`build_de_bruijn` for ``Σ^{≥n}``,
* :func:`build_b_u` for ``Σ*UΣ*`` with ``U`` a proper subset of ``Σ^n``,
* :func:`build_c_s` for any finite anti-factorial ``S`` (at most ``2^n`` states),
* :func:`build_d_uv` for two words ``u, v`` (exactly ``|u| + |v|`` states).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .analysis import syn_matches
from .automaton import (BINARY, Alphabet, Dfa, Word, is_strongly_connected,
                        length_lex_key)
from .errors import InputError, InvariantError
from .languages import (GeneratorSet, _as_word, ideal_automaton, infer_alphabet,
                        is_factor, occurrences, prefix_transitions)

A, B = 0, 1


def _binary_words(n: int):
    """``Σ^n`` over ``{a, b}``; the index of a word is its value read as binary."""
    return [Word(p) for p in product((A, B), repeat=n)]


def _word_index(w) -> int:
    i = 0
    for x in w:
        i = 2 * i + x
    return i


def build_de_bruijn(n: int, alphabet: Alphabet = BINARY) -> Dfa:
    """De Bruijn automaton on ``Σ^n``: ``xs . y = sy``.

    Letters beyond ``b`` act exactly like ``a``, which keeps the
    synchronizing words equal to ``Σ^{≥n}`` over the larger alphabet.
    """
    if n < 1:
        raise InputError(f"n must be at least 1, got {n}")
    if alphabet.size < 2:
        raise InputError("the De Bruijn construction needs at least two letters")
    mask = (1 << n) - 1
    table = []
    for i in range(1 << n):
        row = [(2 * i) & mask, (2 * i + 1) & mask]
        row += [row[A]] * (alphabet.size - 2)
        table.append(row)
    labels = [w.label for w in _binary_words(n)]
    return Dfa(alphabet, table, labels)


def _modified_de_bruijn(U: frozenset, n: int) -> Dfa:
    """B_U without the ``U ⊊ Σ^n`` guard; ``U = Σ^n`` gives plain De Bruijn."""
    mask = (1 << n) - 1
    high = 1 << (n - 1)
    a_n, b_n = 0, mask
    in_u = [False] * (1 << n)
    for w in U:
        in_u[_word_index(w)] = True
    table = []
    for i in range(1 << n):
        x = i >> (n - 1)
        row = []
        for y in (A, B):
            uy = (2 * i + y) & mask      # the word zv, i.e. rule (1) target
            if in_u[uy]:
                target = uy
            elif uy not in (a_n, b_n):
                target = (uy & (high - 1)) | (x << (n - 1))      # (x, v)
            elif uy == a_n and i == a_n:
                target = high                                     # (a,a^{n-1}) -a-> (b,a^{n-1})
            elif uy == b_n and i == b_n:
                target = mask ^ high                              # (b,b^{n-1}) -b-> (a,b^{n-1})
            else:
                target = uy
            row.append(target)
        table.append(row)
    labels = [w.label for w in _binary_words(n)]
    return Dfa(BINARY, table, labels)


def _require_binary(S: GeneratorSet, what: str):
    if S.alphabet.size != 2:
        raise InputError(f"{what} is defined for the binary alphabet only, "
                         f"got alphabet {S.alphabet.letters!r}")


def build_b_u(U: GeneratorSet, n: int | None = None) -> Dfa:
    """Modified De Bruijn automaton with ``Syn = Σ*UΣ*`` for ``U ⊊ Σ^n``.

    For state ``(x, u)`` and letter ``y`` write ``uy = zv``.  If ``uy ∈ U``
    the De Bruijn edge to ``(z, v)`` is kept; otherwise the edge goes to
    ``(x, v)``, except for ``uy ∈ {a^n, b^n}`` where only the loop on
    ``(a, a^{n-1})`` (resp. ``(b, b^{n-1})``) is redirected to the other
    head letter and every other edge stays a De Bruijn edge.
    """
    _require_binary(U, "B_U")
    if not U.words:
        raise InputError("U must be nonempty")
    lengths = {len(w) for w in U.words}
    if n is None:
        n = max(lengths)
    if lengths != {n}:
        raise InputError(f"all words of U must have length {n}, got lengths {sorted(lengths)}")
    if n < 1:
        raise InputError("U must not contain the empty word")
    if len(U.words) == 2 ** n:
        raise InputError(f"U is all of Σ^{n}; use build_de_bruijn({n}) instead")
    return _modified_de_bruijn(U.words, n)


def lift_generators(S: GeneratorSet, n: int | None = None) -> frozenset:
    """All length-``n`` words having some generator as a factor."""
    if n is None:
        n = S.max_length
    alphabet = S.alphabet
    words = [Word(p) for p in product(range(alphabet.size), repeat=n)]
    gens = list(S.words)
    return frozenset(w for w in words if any(is_factor(s, w) for s in gens))


def _all_occurrences(w: Word, S: GeneratorSet):
    return [(i, s) for s in S.words for i in occurrences(s, w)]


def canonical_factorization(w, S: GeneratorSet):
    """Split ``w = u s v`` using the generator occurrence that ends rightmost.

    In an anti-factorial set no two occurrences end at the same position, so
    the suffix ``sv`` then contains no other generator occurrence.
    """
    w = _as_word(w)
    occ = _all_occurrences(w, S)
    if not occ:
        raise InputError(f"{w.label} contains no generator of {{{S}}}")
    end = max(i + len(s) for i, s in occ)
    last = [(i, s) for i, s in occ if i + len(s) == end]
    if len(last) != 1:
        raise InputError(f"generators {[str(s) for _, s in last]} share an end in {w.label}; "
                         "the set is not anti-factorial")
    i, s = last[0]
    return w[:i], s, w[i + len(s):]


def factorizations(w, S: GeneratorSet):
    """Every split ``w = usv`` with ``s ∈ S`` whose ``sv`` has no other generator occurrence.

    Brute force; used to confirm that :func:`canonical_factorization` is the
    only such split.
    """
    w = _as_word(w)
    found = []
    for i, s in _all_occurrences(w, S):
        tail = w[i:]
        others = [(j, t) for j, t in _all_occurrences(tail, S) if (j, t) != (0, s)]
        if not others:
            found.append((w[:i], s, w[i + len(s):]))
    return sorted(found, key=lambda f: (len(f[0]), f))


@dataclass(frozen=True, order=True)
class FactorizationClass:
    """A state of ``C_S``: a merged class ``[sv]`` or a singleton ``[w]``.

    Merged classes hold the words of ``T`` that share the suffix ``sv`` of
    their canonical factorization; words outside ``T`` are alone.
    """

    kind: str
    key: Word

    @property
    def label(self) -> str:
        return f"[{self.key.label}]"


def factorization_class(w: Word, S: GeneratorSet, T: frozenset) -> FactorizationClass:
    if w in T:
        _, s, v = canonical_factorization(w, S)
        return FactorizationClass("merged", s + v)
    return FactorizationClass("singleton", w)


@dataclass(frozen=True)
class QuotientResult:
    """``C_S`` plus the intermediate ``B_T`` and the class of each ``B_T`` state."""

    automaton: Dfa
    b_t: Dfa
    lifted: frozenset
    classes: tuple


def quotient_construction(S: GeneratorSet) -> QuotientResult:
    _require_binary(S, "C_S")
    if not S.words:
        raise InputError("S must be nonempty")
    if S.is_whole_language:
        raise InputError("S contains the empty word; its ideal is Σ* and no construction applies")
    if not S.is_anti_factorial:
        raise InputError(f"{{{S}}} is not anti-factorial; reduce it first")
    n = S.max_length
    T = lift_generators(S, n)
    b_t = _modified_de_bruijn(T, n)
    words = _binary_words(n)
    classes = tuple(factorization_class(w, S, T) for w in words)
    # the partition must be compatible with every letter action
    image = {}
    for q, cls in enumerate(classes):
        for y, t in enumerate(b_t.delta[q]):
            got = classes[t]
            prev = image.setdefault((cls, y), got)
            if prev != got:
                raise InvariantError(f"≃ is not a congruence: {cls.label} on "
                                     f"{'ab'[y]} reaches both {prev.label} and {got.label}")
    ordered = sorted(set(classes), key=lambda c: length_lex_key(c.key))
    index = {c: i for i, c in enumerate(ordered)}
    table = [[index[image[(c, y)]] for y in (A, B)] for c in ordered]
    quotient = Dfa(BINARY, table, [c.label for c in ordered])
    return QuotientResult(quotient, b_t, T, classes)


def build_c_s(S: GeneratorSet) -> Dfa:
    """Quotient of ``B_T`` by the shared-suffix congruence; ``Syn = Σ*SΣ*``."""
    return quotient_construction(S).automaton


def overlap(x, y) -> Word:
    """Longest word that is both a prefix of ``x`` and a suffix of ``y``."""
    x, y = _as_word(x), _as_word(y)
    for k in range(min(len(x), len(y)), 0, -1):
        if x[:k] == y[len(y) - k:]:
            return x[:k]
    return Word()


def excluded_shapes(n: int, alphabet: Alphabet = BINARY) -> set:
    """Words ``xy^{n-1}`` and ``x^{n-1}y`` with ``x ≠ y``.

    Over ``{a, b}`` these are ``ab^{n-1}, a^{n-1}b, ba^{n-1}, b^{n-1}a``.
    """
    out = set()
    for x in range(alphabet.size):
        for y in range(alphabet.size):
            if x != y and n >= 2:
                out.add(Word((x,) + (y,) * (n - 1)))
                out.add(Word((x,) * (n - 1) + (y,)))
    return out


def pruned_word_automaton(w, alphabet: Alphabet | None = None) -> Dfa:
    """``A'_w``: the word automaton minus its sink and the edge into it.

    The removed edge leaves state ``w[1..n-1]`` without a ``w[n]``
    transition, so the result is returned as a partial table with ``None``
    in that slot.
    """
    w = _as_word(w)
    if alphabet is None:
        alphabet = infer_alphabet([w])
    rows = prefix_transitions(w, alphabet.size)
    rows[-1][w[-1]] = None
    return rows


def pruned_is_strongly_connected(w, alphabet: Alphabet | None = None) -> bool:
    rows = pruned_word_automaton(w, alphabet)
    n = len(rows)
    fwd = [[t for t in row if t is not None] for row in rows]
    bwd = [[] for _ in range(n)]
    for q, row in enumerate(fwd):
        for t in row:
            bwd[t].append(q)

    def reach(succ):
        seen = {0}
        stack = [0]
        while stack:
            for t in succ[stack.pop()]:
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        return len(seen) == n

    return reach(fwd) and reach(bwd)


def _duv_labels(u: Word, v: Word):
    pu = {u[:i] for i in range(1, len(u))}
    pv = {v[:i] for i in range(1, len(v))}
    shared = pu & pv

    def name(p, side):
        if not p:
            return f"ε_{side}"
        return f"{p}_{side}" if p in shared else str(p)

    return ([name(u[:i], "u") for i in range(len(u))]
            + [name(v[:i], "v") for i in range(len(v))])


def build_d_uv(u, v, general: bool = False) -> Dfa:
    """Glue the pruned word automata of ``u`` and ``v``; ``Syn = Σ*(u+v)Σ*``.

    The missing edge of ``A'_u`` (from ``u[1..n-1]`` on ``u[n]``) goes to the
    ``A'_v`` state ``overlap(v, u)`` and symmetrically for ``v``.  States
    are the ``u`` prefixes by length, then the ``v`` prefixes.

    ``general=True`` admits alphabets with more than two letters.  That
    analog is not covered by the binary proof, so it is checked on the spot
    and an :class:`InvariantError` is raised if it misses either property.
    """
    u, v = _as_word(u), _as_word(v)
    alphabet = infer_alphabet([u, v])
    if alphabet.size > 2 and not general:
        raise InputError("D_{u,v} is stated for the binary alphabet; pass general=True "
                         "to build the multi-letter analog")
    n, m = len(u), len(v)
    if n < 2 or m < 2:
        raise InputError("both words must have length at least 2")
    if is_factor(u, v) or is_factor(v, u):
        raise InputError(f"{{{u},{v}}} is not anti-factorial: one word is a factor of the other")
    for w in (u, v):
        if w in excluded_shapes(len(w), alphabet):
            raise InputError(f"{w} has an excluded shape: D_{{u,v}} requires words outside "
                             f"{{ab^(n-1), a^(n-1)b, ba^(n-1), b^(n-1)a}}")
    k = alphabet.size
    rows_u = prefix_transitions(u, k)
    rows_v = [[t + n for t in row] for row in prefix_transitions(v, k)]
    rows_u[n - 1][u[-1]] = n + len(overlap(v, u))
    rows_v[m - 1][v[-1]] = len(overlap(u, v))
    D = Dfa(alphabet, rows_u + rows_v, _duv_labels(u, v))
    if alphabet.size > 2:
        S = GeneratorSet(alphabet, frozenset([u, v]))
        if not is_strongly_connected(D) or not syn_matches(D, ideal_automaton(S)):
            raise InvariantError(f"the {alphabet.size}-letter analog of D_{{{u},{v}}} fails "
                                 "strong connectivity or Syn = Σ*(u+v)Σ*")
    return D
