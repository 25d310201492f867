from fractions import Fraction

import pytest

from dsnkit.errors import ParseError
from dsnkit.formats import emit_dsn, emit_psi, parse_dsn, parse_psi
from dsnkit.reduction import PsiInstance

from conftest import K4, random_instances, random_psi_host

MINIMAL = """\
c name tiny
p dsn 3 2 2 1
a 1 2 3/2
a 2 3 1
r 1 3
"""


class TestDsnFormat:
    def test_minimal_parse(self):
        inst, meta = parse_dsn(MINIMAL)
        assert meta == {"name": "tiny"}
        assert inst.host.n == 3
        assert inst.host.arcs() == {(0, 1): Fraction(3, 2), (1, 2): Fraction(1)}
        assert inst.requests == frozenset({(0, 2)})

    def test_round_trip_is_identity_on_emitted_text(self):
        for inst in random_instances(15, base_seed=400):
            text = emit_dsn(inst, {"seed": "x"})
            inst2, meta2 = parse_dsn(text)
            assert emit_dsn(inst2, meta2) == text
            assert inst2.requests == inst.requests or inst.host.vertices != tuple(
                range(inst.host.n)
            )

    def test_round_trip_preserves_contiguous_instances(self):
        for inst in random_instances(15, base_seed=500):
            inst2, _ = parse_dsn(emit_dsn(inst))
            assert inst2.host.arcs() == inst.host.arcs()
            assert inst2.requests == inst.requests

    @pytest.mark.parametrize(
        "mutation, line, fragment",
        [
            (lambda t: t.replace("a 2 3 1", "a 1 2 1"), 4, "duplicate arc"),
            (lambda t: t.replace("a 2 3 1", "a 2 2 1"), 4, "loop arc"),
            (lambda t: t.replace("3/2", "0"), 3, "positive"),
            (lambda t: t.replace("3/2", "fast"), 3, "rational"),
            (lambda t: t.replace("r 1 3", "r 3 3"), 5, "itself"),
            (lambda t: t.replace("a 1 2 3/2\n", ""), 1, "promises 2 arcs"),
            (lambda t: t.replace("p dsn 3 2 2 1", "p dsn 3 2 3 1"), 1, "terminals"),
            (lambda t: t.replace("p dsn 3 2 2 1\n", ""), 2, "before the header"),
            (lambda t: t.replace("r 1 3", "z 1 3"), 5, "unknown record"),
            (lambda t: t + "p dsn 1 0 0 0\n", 6, "duplicate header"),
            (lambda t: t.replace("a 1 2", "a 1 9"), 3, "above maximum"),
        ],
    )
    def test_parse_errors_carry_line_numbers(self, mutation, line, fragment):
        with pytest.raises(ParseError, match=fragment) as info:
            parse_dsn(mutation(MINIMAL))
        assert info.value.line == line

    def test_empty_file_rejected(self):
        with pytest.raises(ParseError, match="missing"):
            parse_dsn("c only a comment\n")

    def test_emit_is_canonical(self):
        inst, _ = parse_dsn(MINIMAL)
        a = emit_dsn(inst, {"b": "2", "a": "1"})
        assert a.index("c a 1") < a.index("c b 2")
        assert a == emit_dsn(inst, {"a": "1", "b": "2"})


class TestPsiFormat:
    def test_round_trip(self):
        for seed in range(6):
            psi = random_psi_host(K4, seed)
            text = emit_psi(psi, {"pattern": "k4"})
            psi2, meta = parse_psi(text)
            assert meta == {"pattern": "k4"}
            assert psi2.hostG.edges == psi.hostG.edges
            assert psi2.patternH.edges == psi.patternH.edges
            assert psi2.classmap == psi.classmap
            assert emit_psi(psi2, meta) == text

    def test_unmapped_vertex_rejected(self):
        text = "p psi 2 1 2 1\neg 1 2\neh 1 2\nmap 1 1\n"
        with pytest.raises(ParseError, match="lack a class"):
            parse_psi(text)

    def test_double_mapping_rejected(self):
        text = "p psi 2 1 2 1\neg 1 2\neh 1 2\nmap 1 1\nmap 1 2\n"
        with pytest.raises(ParseError, match="mapped twice") as info:
            parse_psi(text)
        assert info.value.line == 5

    def test_pattern_edge_out_of_range(self):
        text = "p psi 2 1 2 1\neg 1 2\neh 1 3\nmap 1 1\nmap 2 2\n"
        with pytest.raises(ParseError, match="above maximum"):
            parse_psi(text)
