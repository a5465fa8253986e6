"""Plain-text automaton files and Graphviz export.

File layout (UTF-8)::

    dfa 8 ab
    0 aaa : 0 1
    1 aab : 2 3
    ...
    initial 0
    accepting 5 6

Each state row is ``<index> [label] : <target per letter>``.  The optional
``initial``/``accepting`` lines turn the automaton into a recognizer.
Blank lines and ``#`` comments are ignored.
"""
from __future__ import annotations

from .automaton import Alphabet, Dfa, render_letter
from .errors import InputError, ParseError
from .languages import Recognizer


def render_automaton(A: Dfa | Recognizer) -> str:
    R = A if isinstance(A, Recognizer) else None
    dfa = R.dfa if R is not None else A
    if dfa.labels is not None:
        for label in dfa.labels:
            if not label or any(c.isspace() for c in label) or ":" in label or "#" in label:
                raise InputError(f"label {label!r} cannot be written: labels must be nonempty "
                                 "and free of whitespace, ':' and '#'")
    lines = [f"dfa {dfa.num_states} {dfa.alphabet.letters}"]
    for q, row in enumerate(dfa.delta):
        label = f" {dfa.labels[q]}" if dfa.labels is not None else ""
        lines.append(f"{q}{label} : " + " ".join(map(str, row)))
    if R is not None:
        lines.append(f"initial {R.initial}")
        lines.append(" ".join(["accepting"] + [str(q) for q in sorted(R.accepting)]))
    return "\n".join(lines) + "\n"


def _int(token: str, lineno: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {token!r}", lineno) from None


def parse_automaton(text: str) -> Dfa | Recognizer:
    lines = [(i, line.split("#", 1)[0].strip()) for i, line in enumerate(text.splitlines(), 1)]
    lines = [(i, line) for i, line in lines if line]
    if not lines:
        raise ParseError("empty automaton file")
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 3 or parts[0] != "dfa":
        raise ParseError("header must read 'dfa <num_states> <alphabet-letters>'", lineno)
    n = _int(parts[1], lineno, "state count")
    if n < 1:
        raise ParseError("state count must be positive", lineno)
    letters = parts[2]
    for pos, c in enumerate(letters):
        if c != render_letter(pos):
            raise ParseError(f"unknown letter {c!r} in alphabet {letters!r} "
                             f"(letters must be consecutive from 'a')", lineno)
    try:
        alphabet = Alphabet.from_letters(letters)
    except InputError as exc:
        raise ParseError(str(exc), lineno) from None
    k = alphabet.size
    rows: dict[int, list] = {}
    labels: dict[int, str] = {}
    initial = None
    accepting = None
    for lineno, line in lines[1:]:
        head = line.split()[0]
        if head == "initial":
            tokens = line.split()
            if len(tokens) != 2:
                raise ParseError("expected 'initial <index>'", lineno)
            initial = _int(tokens[1], lineno, "initial state")
            if not 0 <= initial < n:
                raise ParseError(f"initial state {initial} outside 0..{n - 1}", lineno)
            continue
        if head == "accepting":
            accepting = [_int(t, lineno, "accepting state") for t in line.split()[1:]]
            for q in accepting:
                if not 0 <= q < n:
                    raise ParseError(f"accepting state {q} outside 0..{n - 1}", lineno)
            continue
        if ":" not in line:
            raise ParseError(f"expected '<index> [label] : <targets>', got {line!r}", lineno)
        left, right = line.split(":", 1)
        left_tokens = left.split()
        if not 1 <= len(left_tokens) <= 2:
            raise ParseError("state row needs an index and at most one label", lineno)
        q = _int(left_tokens[0], lineno, "state index")
        if not 0 <= q < n:
            raise ParseError(f"state {q} outside 0..{n - 1}", lineno)
        if q in rows:
            raise ParseError(f"duplicate row for state {q}", lineno)
        targets = [_int(t, lineno, "target") for t in right.split()]
        if len(targets) > k:
            raise ParseError(f"state {q} has {len(targets)} targets for {k} letters", lineno)
        if len(targets) < k:
            raise ParseError(f"incomplete delta at ({q},{render_letter(len(targets))})", lineno)
        for x, t in enumerate(targets):
            if not 0 <= t < n:
                raise ParseError(f"target {t} of ({q},{render_letter(x)}) outside 0..{n - 1}",
                                 lineno)
        rows[q] = targets
        if len(left_tokens) == 2:
            labels[q] = left_tokens[1]
    for q in range(n):
        if q not in rows:
            raise ParseError(f"incomplete delta at ({q},a)")
    if labels and len(labels) != n:
        missing = min(set(range(n)) - set(labels))
        raise ParseError(f"state {missing} has no label while others do")
    dfa = Dfa(alphabet, [rows[q] for q in range(n)],
              [labels[q] for q in range(n)] if labels else None)
    if initial is None and accepting is None:
        return dfa
    if initial is None:
        raise ParseError("an 'accepting' line requires an 'initial' line")
    return Recognizer(dfa, initial, accepting or [])


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(A: Dfa | Recognizer, name: str = "automaton") -> str:
    """Graphviz source; parallel edges share one comma-joined label."""
    R = A if isinstance(A, Recognizer) else None
    dfa = R.dfa if R is not None else A
    lines = [f"digraph {_quote(name)} {{", "  rankdir=LR;", "  node [shape=circle];"]
    if R is not None:
        lines.append("  __start [shape=point];")
    for q in dfa.states:
        shape = " shape=doublecircle" if R is not None and q in R.accepting else ""
        lines.append(f"  q{q} [label={_quote(dfa.label(q))}{shape}];")
    if R is not None:
        lines.append(f"  __start -> q{R.initial};")
    for q, row in enumerate(dfa.delta):
        grouped: dict[int, list] = {}
        for x, t in enumerate(row):
            grouped.setdefault(t, []).append(render_letter(x))
        for t, xs in grouped.items():
            lines.append(f"  q{q} -> q{t} [label={_quote(','.join(xs))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
