from __future__ import annotations

import pytest

from portfix.cparse import ParseError, analyze_function, parse_toplevel
from portfix.lexer import identifiers, normalized_tokens, replace_identifier, tokenize


def test_comments_dropped_and_literals_kept():
    toks = tokenize('x = "a /* b */"; // tail\n/* c */ y;')
    assert [t.text for t in toks] == ["x", "=", '"a /* b */"', ";", "y", ";"]


def test_directive_is_one_token():
    toks = tokenize("#define A(x) \\\n  (x + 1)\nint a;")
    assert toks[0].kind == "directive"
    assert [t.text for t in toks[1:]] == ["int", "a", ";"]


def test_normalized_tokens_ignore_layout():
    assert normalized_tokens("a  =\n b;/*x*/") == normalized_tokens("a = b ;")


def test_replace_identifier_whole_tokens_only():
    src = 'foo(foobar, "foo"); // foo\nfoo_x = foo;'
    out = replace_identifier(src, "foo", "bar")
    assert out == 'bar(foobar, "foo"); // foo\nfoo_x = bar;'


def test_identifiers_skip_strings():
    assert identifiers('f("g", h)') == ["f", "h"]


def test_parse_toplevel_functions_and_definitions():
    text = """\
#define MAX 3
typedef int num_T;
static int table[MAX];
int add(int a, const char *b);
int add(int a, const char *b)
{
  return a;
}
"""
    top = parse_toplevel(text)
    assert [f.name for f in top.functions] == ["add"]
    fn = top.functions[0]
    assert text[fn.start : fn.end].startswith("int add(int a, const char *b)")
    assert text[fn.start : fn.end].rstrip().endswith("}")
    assert fn.signature.param_count == 2
    assert fn.signature.param_types[1] == ("const", "char", "*")
    kinds = {(d.identifier, d.kind, d.is_declaration) for d in top.definitions}
    assert ("MAX", "macro", False) in kinds
    assert ("num_T", "type_name", False) in kinds
    assert ("table", "global_variable", False) in kinds
    assert ("add", "function", True) in kinds


def test_analyze_function_free_and_locals():
    a = analyze_function(
        """\
int f(int n)
{
  int k = n;
  char *p = NULL;
  g(k, &p);
  return LIMIT + k;
}
"""
    )
    free = {o.name for o in a.free}
    assert free == {"NULL", "g", "LIMIT"}
    assert a.bound("k") and a.bound("n") and not a.bound("g")
    assert str(a.type_of("p")) == "char *"
    assert [c.name for c in a.calls] == ["g"]
    assert len(a.calls[0].args) == 2


def test_analyze_rejects_non_function():
    with pytest.raises(ParseError):
        analyze_function("int x;")
