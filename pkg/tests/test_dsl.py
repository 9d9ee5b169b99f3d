import pytest

import ogroup as og
from ogroup import corpus
from ogroup.dsl import elaborate, elaborate_group, format_spec, parse_spec


class TestParse:
    def test_symmetric(self):
        g = elaborate_group("group g = symmetric 3")
        assert g.order == 6 and g.name == "g"

    def test_klein_with_rotation(self):
        text = "group v = klein4\noperator rot on v = [0,2,3,1]"
        g = elaborate_group(text)
        assert g.operator_labels() == ("rot",)
        assert og.is_semisimple(g)

    def test_comments_and_blanks(self):
        text = "# header\n\ngroup g = cyclic 4  # inline comment\n"
        assert elaborate_group(text).order == 4

    def test_product_and_quotient(self):
        text = ("group s = symmetric 3\n"
                "group p = product s s\n"
                "group q = quotient s by [3]\n")
        env = elaborate(parse_spec(text))
        assert env["p"].order == 36
        assert env["q"].order == 2

    def test_inner(self):
        g = elaborate_group("group s = symmetric 3\ngroup w = inner s")
        assert len(g.operators) == 6

    def test_named_actions(self):
        g = elaborate_group("group c = cyclic 6\noperator neg on c = pow 5")
        assert g.operator_action("neg") == (0, 5, 4, 3, 2, 1)
        s = elaborate_group("group s = symmetric 3\noperator j on s = conj 1")
        assert s.operator_action("j")[0] == 0

    def test_table(self):
        g = elaborate_group("group t = table [[0,1],[1,0]]")
        assert g.order == 2


class TestParseErrors:
    def test_unknown_constructor_located(self):
        with pytest.raises(og.DslError) as err:
            parse_spec("group g = sporadic 1")
        assert err.value.line == 1 and err.value.col == 11

    def test_bad_keyword(self):
        with pytest.raises(og.DslError, match="expected 'group' or 'operator'"):
            parse_spec("madeup g = cyclic 2")

    def test_operator_before_group(self):
        with pytest.raises(og.DslError, match="undefined group"):
            parse_spec("operator a on g = [0]")

    def test_duplicate_name(self):
        with pytest.raises(og.DslError, match="defined twice"):
            parse_spec("group g = cyclic 2\ngroup g = cyclic 3")

    def test_trailing_tokens(self):
        with pytest.raises(og.DslError, match="trailing"):
            parse_spec("group g = cyclic 2 extra")

    def test_line_numbers_reported(self):
        with pytest.raises(og.DslError) as err:
            parse_spec("group a = cyclic 2\ngroup b = cyclic\n")
        assert err.value.line == 2


class TestElaborationErrors:
    def test_no_inverse_names_axiom(self):
        with pytest.raises(og.DslError, match="no inverse for element 1"):
            elaborate_group("group b = table [[0,1],[1,1]]")

    def test_non_distributive_operator_names_axiom(self):
        with pytest.raises(og.DslError, match="not distributive"):
            elaborate_group("group c = cyclic 2\noperator a on c = [1,0]")

    def test_quotient_by_non_normal(self):
        with pytest.raises(og.DslError, match="not normal"):
            elaborate_group("group s = symmetric 3\ngroup q = quotient s by [1]")

    def test_undefined_reference(self):
        with pytest.raises(og.DslError, match="undefined group"):
            elaborate_group("group p = product a b")


class TestRandomRoundTrip:
    from hypothesis import given, strategies as st

    _named = st.sampled_from(
        ["cyclic 1", "cyclic 2", "cyclic 3", "cyclic 4", "cyclic 5", "cyclic 6",
         "symmetric 3", "alternating 3", "dihedral 2", "dihedral 3", "klein4"])

    @given(base=_named, wrap=st.sampled_from(["plain", "inner", "square", "quotient"]))
    def test_generated_descriptions_roundtrip(self, base, wrap):
        lines = [f"group a = {base}"]
        target = "a"
        if wrap == "inner":
            lines.append("group g = inner a")
            target = "g"
        elif wrap == "square":
            lines.append("group g = product a a")
            target = "g"
        elif wrap == "quotient":
            lines.append("group g = quotient a by [0]")
            target = "g"
        text = "\n".join(lines) + "\n"
        spec = parse_spec(text)
        g1 = elaborate(spec)[target]
        if g1.order > 36:
            return
        g2 = elaborate(parse_spec(format_spec(spec)))[target]
        assert og.are_isomorphic(g1, g2) is not None


class TestRoundTrip:
    def test_corpus_files_roundtrip(self):
        for name, _, _ in corpus.CORPUS:
            spec = parse_spec(corpus.spec_text(name))
            reparsed = parse_spec(format_spec(spec))
            g1 = elaborate(spec)[name]
            g2 = elaborate(reparsed)[name]
            assert og.are_isomorphic(g1, g2) is not None, name

    def test_print_is_stable(self):
        spec = parse_spec("group v = klein4\noperator rot on v = [0,2,3,1]\n")
        printed = format_spec(spec)
        assert format_spec(parse_spec(printed)) == printed
