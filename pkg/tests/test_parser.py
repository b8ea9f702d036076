import pytest

from conftest import CORPUS_FILES, corpus_text
from slicetool.errors import SlirSyntaxError, SlirValidationError
from slicetool.ir import StmtKind
from slicetool.parser import parse_program


def test_minimal_class():
    program = parse_program("class A { method <A: void m()> { return; } }")
    assert len(program.classes) == 1
    method = program.methods()[0]
    assert len(method.body) == 1
    assert method.body[0].kind is StmtKind.RETURN


def test_undeclared_local_names_local_and_method():
    text = "class A { method <A: void m()> { x = 1; return; } }"
    with pytest.raises(SlirValidationError) as err:
        parse_program(text)
    assert "x" in str(err.value)
    assert "<A: void m()>" in str(err.value)


def test_syntax_error_carries_location():
    text = "class A {\n  method <A: void m()> {\n    return 1 2;\n  }\n}"
    with pytest.raises(SlirSyntaxError) as err:
        parse_program(text)
    assert err.value.line == 3


def test_unknown_statement_form_is_hard_error():
    # `throw` is not a statement form; after the body has started it cannot
    # be mistaken for a declaration either
    text = "class A { method <A: void m()> { int x; x = 1; throw x; } }"
    with pytest.raises(SlirSyntaxError):
        parse_program(text)


def test_increment_statement_form_is_hard_error():
    text = "class A { method <A: void m()> { int x; x ++; } }"
    with pytest.raises(SlirSyntaxError):
        parse_program(text)


def test_duplicate_signature_rejected():
    text = ("class A { method <A: void m()> { return; } "
            "method <A: void m()> { return; } }")
    with pytest.raises(SlirValidationError):
        parse_program(text)


def test_overloads_with_distinct_params_allowed():
    text = ("class A { method <A: void m()> { return; } "
            "method <A: void m(int)> { int x; x := @parameter0; return; } }")
    program = parse_program(text)
    assert len(program.methods()) == 2


def test_dangling_label_rejected():
    text = "class A { method <A: void m()> { goto L9; } }"
    with pytest.raises(SlirValidationError) as err:
        parse_program(text)
    assert "L9" in str(err.value)


def test_identity_not_in_prefix_rejected():
    text = ("class A { method <A: void m(int)> { int x; int y; "
            "y = 1; x := @parameter0; return; } }")
    with pytest.raises(SlirValidationError):
        parse_program(text)


def test_parameter_index_out_of_range_rejected():
    text = "class A { method <A: void m(int)> { int x; x := @parameter3; return; } }"
    with pytest.raises(SlirValidationError):
        parse_program(text)


def test_comments_and_whitespace_ignored():
    text = """// leading comment
    class A {
      method <A: void m()> {   // trailing comment
        return;
      }
    }"""
    assert parse_program(text).methods()[0].body[0].kind is StmtKind.RETURN


@pytest.mark.parametrize("name", CORPUS_FILES)
def test_corpus_parses(name, ground_truth):
    program = parse_program(corpus_text(name))
    facts = ground_truth[name]
    assert len(program.classes) == facts["classes"]
    assert len(program.methods()) == facts["methods"]
    assert sum(len(m.body) for m in program.methods()) == facts["stmts"]


@pytest.mark.parametrize("name", CORPUS_FILES)
def test_corpus_render_round_trip(name):
    program = parse_program(corpus_text(name))
    assert parse_program(program.render()) == program


@pytest.mark.parametrize("name", CORPUS_FILES)
def test_parse_is_deterministic(name):
    text = corpus_text(name)
    assert parse_program(text) == parse_program(text)
