from fractions import Fraction

import pytest

from wgg import (
    GraphParseError,
    brute_force_opt,
    normalize_graph,
    parse_graph_text,
    render_report,
    report_document,
    serialize_graph,
    verify_report,
)
from wgg.graphio import parse_report_text

from util import triangle

TRIANGLE_TEXT = """\
# running example
3 3
0 1 2
1 2 3
0 2 -4
"""


class TestParse:
    def test_parses_with_comments(self):
        g = parse_graph_text(TRIANGLE_TEXT)
        assert g == triangle()

    def test_rational_and_decimal_weights(self):
        g = parse_graph_text("2 1\n0 1 -2.5\n")
        assert g.weight(0, 1) == Fraction(-5, 2)
        g = parse_graph_text("2 1\n0 1 7/3\n")
        assert g.weight(0, 1) == Fraction(7, 3)

    def test_missing_header(self):
        with pytest.raises(GraphParseError, match="header"):
            parse_graph_text("")

    def test_bad_header_reports_line(self):
        with pytest.raises(GraphParseError, match="line 2"):
            parse_graph_text("# c\nnope\n")

    def test_self_loop_reports_line(self):
        with pytest.raises(GraphParseError, match="line 3.*self-loop"):
            parse_graph_text("2 1\n# x\n1 1 4\n")

    def test_out_of_range_vertex(self):
        with pytest.raises(GraphParseError, match="out of range"):
            parse_graph_text("2 1\n0 5 1\n")

    def test_bad_weight(self):
        with pytest.raises(GraphParseError, match="line 2"):
            parse_graph_text("2 1\n0 1 abc\n")

    def test_edge_count_mismatch(self):
        with pytest.raises(GraphParseError, match="declares 2"):
            parse_graph_text("3 2\n0 1 1\n")


class TestRoundTrip:
    def test_serialize_then_parse_is_identity(self):
        g = triangle()
        assert parse_graph_text(serialize_graph(g)) == g

    def test_fixed_point_bytes(self):
        # parse -> normalize -> serialize -> parse -> serialize is stable
        messy = "3 3\n1 0 1\n0 1 1\n2 1 -1/2\n"
        once = serialize_graph(parse_graph_text(messy))
        twice = serialize_graph(parse_graph_text(once))
        assert once == twice
        assert once == "3 2\n0 1 2\n1 2 -1/2\n"

    def test_empty_graph(self):
        assert serialize_graph(parse_graph_text("0 0\n")) == "0 0\n"


class TestReportDocuments:
    def test_document_contents(self):
        g = triangle()
        report = brute_force_opt(g)
        doc = report_document(g, report)
        assert doc["value"] == "3"
        assert doc["coalitions"] == [[0], [1, 2]]
        assert doc["instance"]["w_plus"] == "5"
        assert doc["instance"]["positive_edges"] == 2
        assert "elapsed_ms" in doc

    def test_elapsed_excluded_on_request(self):
        g = triangle()
        doc = report_document(g, brute_force_opt(g), include_elapsed=False)
        assert "elapsed_ms" not in doc
        again = report_document(g, brute_force_opt(g), include_elapsed=False)
        assert render_report(doc) == render_report(again)

    def test_verify_accepts_own_report(self):
        g = triangle()
        doc = report_document(g, brute_force_opt(g))
        assert verify_report(g, doc) == []

    def test_verify_detects_tampered_value(self):
        g = triangle()
        doc = report_document(g, brute_force_opt(g))
        doc["value"] = "4"
        issues = verify_report(g, doc)
        assert any("mismatch" in issue for issue in issues)
        assert any("4" in issue and "3" in issue for issue in issues)

    def test_verify_detects_bad_partition(self):
        g = triangle()
        doc = report_document(g, brute_force_opt(g))
        doc["coalitions"] = [[0, 1], [1, 2]]
        assert any("not a partition" in issue for issue in verify_report(g, doc))

    def test_verify_detects_wrong_instance(self):
        g = triangle()
        doc = report_document(g, brute_force_opt(g))
        other = normalize_graph([(0, 1, 1)], 2)
        assert any("digest" in issue for issue in verify_report(other, doc))

    def test_verify_rejects_non_integer_vertices(self):
        g = triangle()
        doc = report_document(g, brute_force_opt(g))
        doc["coalitions"] = [["a", 1], [2]]
        assert any("integer" in issue for issue in verify_report(g, doc))

    def test_parse_report_requires_fields(self):
        with pytest.raises(GraphParseError, match="coalitions"):
            parse_report_text('{"algorithm": "x", "value": "0"}')
        with pytest.raises(GraphParseError, match="JSON"):
            parse_report_text("{nope")
