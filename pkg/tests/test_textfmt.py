from fractions import Fraction

import pytest

from siltloc.errors import ParseError
from siltloc.textfmt import (format_corpus, format_element, format_matrix, load_bundled, parse_corpus,
                             parse_element, parse_matrix)

BUNDLED = ["kA2", "kA3", "kronecker", "dual", "t2kA2"]


@pytest.mark.parametrize("name", BUNDLED)
def test_bundled_round_trip(name):
    cf = load_bundled(name)
    text = format_corpus(cf)
    again = parse_corpus(text)
    assert again == cf
    assert format_corpus(again) == text


@pytest.mark.parametrize("name", BUNDLED)
def test_bundled_files_build(name):
    cf = load_bundled(name)
    alg = cf.algebra()
    alg.validate()
    for m in cf.module_list():
        assert len(m.dimvec) == alg.n
        m.validate()
    for s in cf.sigmas:
        cf.sigma(s)


def test_element_parsing():
    assert parse_element("2*b.a - e1") == [(Fraction(2), "b.a"), (Fraction(-1), "e1")]
    assert parse_element("0") == []
    assert parse_element("-1/2 a") == [(Fraction(-1, 2), "a")]
    for text in ("a", "b.a + 3*e2", "-a - 2/3*b"):
        assert format_element(parse_element(text)) == text


def test_element_errors_report_position():
    with pytest.raises(ParseError) as exc:
        parse_element("a b", line=4, column=3)
    assert exc.value.line == 4 and exc.value.column == 5
    with pytest.raises(ParseError):
        parse_element("2 + a")


def test_matrix_parsing():
    rows = parse_matrix("[1 0; 2/3 1]")
    assert rows == [[1, 0], [Fraction(2, 3), 1]]
    assert parse_matrix(format_matrix(rows)) == rows
    assert parse_matrix("[]") == []
    for bad in ("1 0", "[1 0; 1]", "[x]"):
        with pytest.raises(ParseError):
            parse_matrix(bad)


def test_corpus_errors_carry_line_numbers():
    text = "field GF(2)\nquiver 2\n  a: 1 -> 3\n"
    with pytest.raises(ParseError) as exc:
        parse_corpus(text)
    assert exc.value.line == 3
    text = "field GF(2)\nquiver 2\n  a: 1 -> 2\nrelations\nmodule M\n  dimvec 1 1\n  a = [1 1]\n"
    with pytest.raises(ParseError) as exc:
        parse_corpus(text).module("M")
    assert exc.value.line >= 5
