import io
import json
import random
import subprocess
import sys

import pytest

from idealsync import (Alphabet, Dfa, GeneratorSet, ParseError, are_isomorphic,
                       build_b_u, build_c_s, build_d_uv, build_de_bruijn,
                       export_dot, parse_automaton, render_automaton)
from idealsync.analysis import syn_language
from idealsync.cli import run
from idealsync.languages import build_ideal_recognizer, build_word_automaton

from oracles import golden


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


# --- file format ---------------------------------------------------------------

def test_round_trip_de_bruijn():
    A = build_de_bruijn(2)
    B = parse_automaton(render_automaton(A))
    assert are_isomorphic(A, B)
    assert B.delta == A.delta and B.labels == A.labels


@pytest.mark.parametrize("A", [
    build_de_bruijn(3), build_b_u(GeneratorSet.parse("aaa,abb,bab")),
    build_c_s(GeneratorSet.parse("aa,aba")), build_d_uv("abaab", "babab"),
    build_de_bruijn(2, Alphabet(3)), Dfa(Alphabet(2), [[1, 0], [1, 1]]),
])
def test_round_trip_is_exact(A):
    B = parse_automaton(render_automaton(A))
    assert (B.delta, B.labels, B.alphabet) == (A.delta, A.labels, A.alphabet)


def test_round_trip_random_tables():
    rnd = random.Random(5)
    for _ in range(100):
        n, k = rnd.randint(1, 7), rnd.randint(1, 3)
        A = Dfa(Alphabet(k), [[rnd.randrange(n) for _ in range(k)] for _ in range(n)])
        assert parse_automaton(render_automaton(A)).delta == A.delta


@pytest.mark.parametrize("R", [
    build_word_automaton("abaab"), build_ideal_recognizer(GeneratorSet.parse("aa,aba")),
    syn_language(build_de_bruijn(2)),
])
def test_recognizer_round_trip(R):
    S = parse_automaton(render_automaton(R))
    assert S.dfa.delta == R.dfa.delta and S.dfa.labels == R.dfa.labels
    assert (S.initial, S.accepting) == (R.initial, R.accepting)


def test_missing_row_is_incomplete_delta():
    text = "dfa 3 ab\n0 : 0 1\n2 : 1 1\n"
    with pytest.raises(ParseError, match=r"incomplete delta at \(1,a\)"):
        parse_automaton(text)


def test_short_row_is_incomplete_delta():
    with pytest.raises(ParseError, match=r"line 3: incomplete delta at \(1,b\)"):
        parse_automaton("dfa 2 ab\n0 : 0 1\n1 : 0\n")


def test_accepting_out_of_range():
    text = render_automaton(build_de_bruijn(2)) + "initial 0\naccepting 5\n"
    with pytest.raises(ParseError, match="accepting state 5 outside 0..3"):
        parse_automaton(text)


def test_unknown_letter_reports_line():
    with pytest.raises(ParseError, match="line 2: unknown letter 'x'"):
        parse_automaton("# comment\ndfa 2 ax\n0 : 0 1\n1 : 0 1\n")


def test_unlabelled_and_commented_file():
    A = parse_automaton("dfa 2 ab   # two states\n\n1 : 0 0\n0 : 1 1\n")
    assert A.delta == ((1, 1), (0, 0))
    assert A.labels is None


def test_export_dot_de_bruijn():
    dot = export_dot(build_de_bruijn(3))
    nodes = [l for l in dot.splitlines() if "[label=" in l and "->" not in l]
    edges = [l for l in dot.splitlines() if "->" in l]
    assert len(nodes) == 8
    assert len(edges) == 16         # no De Bruijn state sends both letters to one target
    assert dot == export_dot(build_de_bruijn(3))


def test_export_dot_merges_parallel_edges():
    dot = export_dot(Dfa(Alphabet(2), [[0, 0]]))
    assert '  q0 -> q0 [label="a,b"];' in dot
    assert sum("->" in l for l in dot.splitlines()) == 1


def test_export_dot_recognizer_marks_accepting():
    dot = export_dot(build_word_automaton("ab"))
    assert 'q2 [label="ab" shape=doublecircle];' in dot
    assert "__start -> q0;" in dot


def test_export_dot_b_u_topology():
    dot = export_dot(build_b_u(GeneratorSet.parse("aaa,abb,bab")))
    gold = parse_automaton(golden("b_u_aaa_abb_bab.dfa"))
    edges = set()
    for line in dot.splitlines():
        if "->" in line:
            src, rest = line.strip().split(" -> ")
            dst, label = rest.split(" [label=")
            for x in label.strip('"];').split(","):
                edges.add((int(src[1:]), "ab".index(x), int(dst[1:])))
    assert edges == {(q, x, t) for q, row in enumerate(gold.delta) for x, t in enumerate(row)}


# --- command line ----------------------------------------------------------------

def test_debruijn_command():
    code, out = call("debruijn", "--n", "3")
    assert code == 0
    assert out.splitlines()[0] == "dfa 8 ab"
    assert parse_automaton(out) == build_de_bruijn(3)


def test_verify_cs():
    code, out = call("verify", "cs", "--gens", "aa,aba")
    assert code == 0
    assert out.startswith("states=7 strongly_connected=yes syn_equals_ideal=yes")


def test_verify_json():
    code, out = call("verify", "duv", "--u", "abaab", "--v", "babab", "--json")
    report = json.loads(out)
    assert code == 0
    assert report["states"] == 10 and report["syn_equals_ideal"] is True
    assert report["shortest_reset"] == "abaab"


def test_duv_excluded_shape(capsys):
    code, out = call("duv", "--u", "abaab", "--v", "abbbb")
    assert code != 0
    assert "ab^(n-1)" in capsys.readouterr().err


def test_verify_file_fails_on_wrong_language(tmp_path):
    path = tmp_path / "d2.dfa"
    path.write_text(render_automaton(build_de_bruijn(2)), encoding="utf-8")
    code, out = call("verify", "file", "--file", str(path), "--gens", "aa")
    assert code == 1
    assert "syn_equals_ideal=no" in out
    code, out = call("verify", "file", "--file", str(path), "--gens", "aa,ab,ba,bb")
    assert code == 0


def test_syn_command(tmp_path):
    path = tmp_path / "b.dfa"
    path.write_text(render_automaton(build_de_bruijn(2)), encoding="utf-8")
    code, out = call("syn", str(path), "--recognizer")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "states=4 strongly_connected=yes synchronizing=yes shortest_reset=aa"
    R = parse_automaton("\n".join(lines[1:]))
    assert R.num_states == 3


def test_search_commands():
    code, out = call("search-msa", "--gens", "aa,ab,ba,bb", "--kmax", "4")
    assert code == 0
    assert "found=yes size=4 witnesses=1" in out
    code, out = call("search-rc", "--gens", "aa,ab,ba,bb", "--kmax", "3")
    assert code == 0
    assert "rc=3 sc=3 rc_le_sc=yes cerny_bound=yes" in out
    code, out = call("search-msa", "--gens", "aa,ab,ba,bb", "--kmax", "3")
    assert code == 1 and "found=no" in out


def test_export_dot_command(tmp_path):
    path = tmp_path / "c.dfa"
    path.write_text(render_automaton(build_c_s(GeneratorSet.parse("aa,aba"))), encoding="utf-8")
    code, out = call("export-dot", str(path))
    assert code == 0 and out.startswith('digraph "automaton" {')


def test_construction_formats():
    code, out = call("bu", "--gens", "aaa,abb,bab", "--format", "dot")
    assert code == 0 and "digraph" in out
    code, out = call("cs", "--gens", "aa,aba")
    assert parse_automaton(out).labels[0] == "[aa]"


def test_usage_errors():
    assert call("frobnicate")[0] == 2
    assert call("debruijn", "--n", "3", "--bogus")[0] == 2


def test_precondition_error_surfaces(capsys):
    code, _ = call("cs", "--gens", "a,ab")
    assert code == 1
    assert "not anti-factorial" in capsys.readouterr().err


def test_reports_are_deterministic():
    runs = {call("verify", "cs", "--gens", "ab,bba")[1] for _ in range(3)}
    assert len(runs) == 1
    runs = {call("search-rc", "--gens", "ab", "--kmax", "3")[1] for _ in range(2)}
    assert len(runs) == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "idealsync", "verify", "debruijn", "--n", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("states=4 strongly_connected=yes syn_equals_ideal=yes")
