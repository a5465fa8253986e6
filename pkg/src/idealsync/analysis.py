"""Ground truth for synchronization: Syn(A), reset words, exhaustive searches."""
from __future__ import annotations

import math
import os
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import islice, product

from .automaton import (Alphabet, Dfa, Word, from_canonical, image_bits,
                        is_strongly_connected)
from .errors import InputError, InvariantError, ResourceLimitError
from .languages import (GeneratorSet, Recognizer, build_ideal_recognizer,
                        equivalent, ideal_automaton)

DEFAULT_SUBSET_CAP = 20
CAP_ENV = "IDEALSYNC_SUBSET_CAP"
DEFAULT_MAX_TABLES = 4 ** 8


def subset_cap() -> int:
    raw = os.environ.get(CAP_ENV)
    if raw is None:
        return DEFAULT_SUBSET_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise InputError(f"{CAP_ENV} must be an integer, got {raw!r}") from None
    if cap < 1:
        raise InputError(f"{CAP_ENV} must be positive, got {cap}")
    return cap


def _check_cap(A: Dfa, cap: int | None):
    cap = subset_cap() if cap is None else cap
    if A.num_states > cap:
        raise ResourceLimitError(f"{A.num_states} states exceed the subset-BFS cap of {cap} "
                                 f"(set {CAP_ENV} to raise it)")


def _is_singleton(bits: int) -> bool:
    return bits & (bits - 1) == 0


def syn_language(A: Dfa, cap: int | None = None) -> Recognizer:
    """Power automaton from ``Q`` accepting the singleton subsets."""
    _check_cap(A, cap)
    targets = A.letter_targets
    k = A.alphabet.size
    full = (1 << A.num_states) - 1
    index = {full: 0}
    order = [full]
    table = []
    for bits in order:
        row = []
        for x in range(k):
            t = image_bits(targets[x], bits)
            i = index.get(t)
            if i is None:
                i = index[t] = len(order)
                order.append(t)
            row.append(i)
        table.append(row)
    labels = ["{" + ",".join(A.label(q) for q in range(A.num_states) if bits >> q & 1) + "}"
              for bits in order]
    accepting = [i for i, bits in enumerate(order) if _is_singleton(bits)]
    return Recognizer(Dfa(A.alphabet, table, labels), 0, accepting)


def syn_matches(A: Dfa, R: Recognizer, cap: int | None = None) -> bool:
    """``Syn(A) == L(R)``, exploring subsets and ``R`` in lockstep.

    Same answer as ``equivalent(syn_language(A), R)`` without materializing
    the power automaton; stops at the first disagreement.
    """
    _check_cap(A, cap)
    if A.alphabet.size != R.alphabet.size:
        raise InputError("automaton and recognizer over different alphabets")
    return _syn_matches(A.letter_targets, A.num_states, R.dfa.delta, R.initial, R.accepting.bits)


def _syn_matches(targets, n, rdelta, rinit, racc) -> bool:
    start = ((1 << n) - 1, rinit)
    seen = {start}
    stack = [start]
    k = len(targets)
    while stack:
        bits, r = stack.pop()
        if _is_singleton(bits) != bool(racc >> r & 1):
            return False
        rrow = rdelta[r]
        for x in range(k):
            nxt = (image_bits(targets[x], bits), rrow[x])
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return True


def is_synchronizing(A: Dfa) -> bool:
    """Every pair of states can be merged: backward search on the pair automaton."""
    n, k, delta = A.num_states, A.alphabet.size, A.delta
    if n == 1:
        return True
    pred = {}
    good = set()
    for p in range(n):
        for q in range(p + 1, n):
            for x in range(k):
                s, t = delta[p][x], delta[q][x]
                if s == t:
                    good.add((p, q))
                    break
                pred.setdefault((min(s, t), max(s, t)), []).append((p, q))
    queue = deque(good)
    while queue:
        pair = queue.popleft()
        for prev in pred.get(pair, ()):
            if prev not in good:
                good.add(prev)
                queue.append(prev)
    return len(good) == n * (n - 1) // 2


def shortest_reset_word(A: Dfa, cap: int | None = None) -> Word | None:
    """Length-lex least synchronizing word, or None if ``A`` does not synchronize."""
    _check_cap(A, cap)
    targets = A.letter_targets
    full = (1 << A.num_states) - 1
    parent = {full: None}
    queue = deque([full])
    while queue:
        bits = queue.popleft()
        if _is_singleton(bits):
            letters = []
            while parent[bits] is not None:
                bits, x = parent[bits]
                letters.append(x)
            return Word(reversed(letters))
        for x in range(A.alphabet.size):
            t = image_bits(targets[x], bits)
            if t not in parent:
                parent[t] = (bits, x)
                queue.append(t)
    return None


@dataclass(frozen=True)
class SynReport:
    is_synchronizing: bool
    syn_recognizer: Recognizer
    shortest_reset: Word | None
    strongly_connected: bool
    state_count: int
    syn_equals_ideal: bool | None = None

    def as_dict(self) -> dict:
        out = {
            "states": self.state_count,
            "strongly_connected": self.strongly_connected,
            "syn_equals_ideal": self.syn_equals_ideal,
            "synchronizing": self.is_synchronizing,
            "shortest_reset": None if self.shortest_reset is None else self.shortest_reset.label,
        }
        if self.syn_equals_ideal is None:
            del out["syn_equals_ideal"]
        return out


def syn_report(A: Dfa, cap: int | None = None) -> SynReport:
    syn = syn_language(A, cap)
    reset = shortest_reset_word(A, cap)
    return SynReport(reset is not None, syn, reset, is_strongly_connected(A), A.num_states)


def verify_construction(A: Dfa, S: GeneratorSet, cap: int | None = None) -> SynReport:
    """Compare ``Syn(A)`` with ``Σ*SΣ*`` and collect the structural facts."""
    if A.alphabet.size != S.alphabet.size:
        raise InputError(f"automaton alphabet {A.alphabet.letters!r} differs from "
                         f"generator alphabet {S.alphabet.letters!r}")
    report = syn_report(A, cap)
    same = equivalent(report.syn_recognizer, build_ideal_recognizer(S))
    return SynReport(report.is_synchronizing, report.syn_recognizer, report.shortest_reset,
                     report.strongly_connected, report.state_count, same)


@dataclass(frozen=True)
class SearchResult:
    """Outcome of an exhaustive search over all automata up to ``k`` states.

    ``witnesses`` lists every witness of the smallest size up to
    isomorphism, least canonical form first; ``found`` is the first of them.
    """

    found: Dfa | None
    states_searched: int
    k: int
    witnesses: tuple = ()
    tables_per_size: tuple = ()

    @property
    def size(self) -> int | None:
        return None if self.found is None else self.found.num_states


def _table_count(k: int, s: int) -> int:
    return k ** (k * s)


def _check_search_bounds(kmax: int, s: int, max_tables: int):
    if kmax < 1:
        raise InputError(f"kmax must be at least 1, got {kmax}")
    for k in range(1, kmax + 1):
        if _table_count(k, s) > max_tables:
            raise ResourceLimitError(f"{_table_count(k, s)} tables at {k} states exceed the "
                                     f"exhaustive-search limit of {max_tables}")


def _scc_rows(rows, k) -> bool:
    full = (1 << k) - 1
    seen, stack = 1, [0]
    while stack:
        for t in rows[stack.pop()]:
            if not seen >> t & 1:
                seen |= 1 << t
                stack.append(t)
    if seen != full:
        return False
    pred = [[] for _ in range(k)]
    for q, row in enumerate(rows):
        for t in row:
            pred[t].append(q)
    seen, stack = 1, [0]
    while stack:
        for t in pred[stack.pop()]:
            if not seen >> t & 1:
                seen |= 1 << t
                stack.append(t)
    return seen == full


def _scan_chunk(args):
    """Witness tables among tables ``start..stop`` of the size-``k`` enumeration."""
    k, s, start, stop, rdelta, rinit, racc, need_scc = args
    found = []
    for flat in islice(product(range(k), repeat=k * s), start, stop):
        rows = [flat[q * s:(q + 1) * s] for q in range(k)]
        if need_scc and not _scc_rows(rows, k):
            continue
        targets = tuple(tuple(1 << rows[q][x] for q in range(k)) for x in range(s))
        if _syn_matches(targets, k, rdelta, rinit, racc):
            found.append(flat)
    return found


def _chunks(total: int, parts: int):
    parts = max(1, min(parts, total))
    step = -(-total // parts)
    return [(i, min(i + step, total)) for i in range(0, total, step)]


def _search(S: GeneratorSet, kmax: int, need_scc: bool, workers: int, max_tables: int,
            chunks: int | None = None) -> SearchResult:
    alphabet: Alphabet = S.alphabet
    s = alphabet.size
    _check_search_bounds(kmax, s, max_tables)
    R = ideal_automaton(S)
    rargs = (R.dfa.delta, R.initial, R.accepting.bits)
    searched = 0
    per_size = []
    for k in range(1, kmax + 1):
        total = _table_count(k, s)
        parts = chunks if chunks is not None else max(1, workers)
        jobs = [(k, s, a, b) + rargs + (need_scc,) for a, b in _chunks(total, parts)]
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(_scan_chunk, jobs))
        else:
            results = [_scan_chunk(job) for job in jobs]
        searched += total
        per_size.append(total)
        tables = [flat for part in results for flat in part]
        if not tables:
            continue
        forms = sorted({Dfa(alphabet, [flat[q * s:(q + 1) * s] for q in range(k)]).canonical
                        for flat in tables})
        witnesses = tuple(from_canonical(f) for f in forms)
        for W in witnesses:
            report = verify_construction(W, S)
            if not report.syn_equals_ideal or (need_scc and not report.strongly_connected):
                raise InvariantError(f"search witness {W.delta} fails re-verification")
        return SearchResult(witnesses[0], searched, kmax, witnesses, tuple(per_size))
    return SearchResult(None, searched, kmax, (), tuple(per_size))


def min_strongly_connected_search(S: GeneratorSet, kmax: int, workers: int = 1,
                                  max_tables: int = DEFAULT_MAX_TABLES,
                                  chunks: int | None = None) -> SearchResult:
    """Smallest strongly connected automata whose synchronizing words are ``Σ*SΣ*``."""
    return _search(S, kmax, True, workers, max_tables, chunks)


def reset_complexity_search(S: GeneratorSet, kmax: int, workers: int = 1,
                            max_tables: int = DEFAULT_MAX_TABLES,
                            chunks: int | None = None) -> SearchResult:
    """Smallest automata of any shape whose synchronizing words are ``Σ*SΣ*``.

    When ``found`` is set its state count is the reset complexity ``rc``.
    """
    return _search(S, kmax, False, workers, max_tables, chunks)


def state_complexity(S: GeneratorSet) -> int:
    """``sc``: states of the minimal recognizer of ``Σ*SΣ*``."""
    return build_ideal_recognizer(S).num_states


def cerny_bound_holds(rc: int, S: GeneratorSet) -> bool:
    """Per-instance check of ``rc ≥ √ℓ + 1``, ``ℓ`` the shortest generator length.

    An observation on one language, consistent or not with the Černý
    conjecture; it proves nothing in general.
    """
    return rc >= math.sqrt(S.min_length) + 1
