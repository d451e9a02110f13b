from __future__ import annotations

import pytest

from invariants.errors import FormatError, GraphValidationError, ParseError
from invariants.graph import decalin
from invariants.ingest import load_tu_directory, parse_edge_list, parse_tu_dataset, serialize_edge_list

TWO_K2_ADJ = "1, 2\n2, 1\n3, 4\n4, 3\n"
TWO_K2_INDICATOR = "1\n1\n2\n2\n"


def test_parse_edge_list_with_header_and_comments():
    g = parse_edge_list("# ring\nn=5\n0 1\n1 2\n\n# tail\n2 0\n")
    assert g.n == 5
    assert g.edges == frozenset({(0, 1), (1, 2), (0, 2)})
    assert g.degree(4) == 0


def test_vertex_count_inferred_without_header():
    g = parse_edge_list("0 3\n3 1\n")
    assert g.n == 4


def test_empty_text_gives_empty_graph():
    assert parse_edge_list("# nothing\n").n == 0


def test_malformed_line_reports_line_number():
    with pytest.raises(ParseError) as info:
        parse_edge_list("n=3\n0 1\nzero two\n")
    assert info.value.line_no == 3
    assert "line 3" in str(info.value)


def test_header_after_edges_is_rejected():
    with pytest.raises(ParseError):
        parse_edge_list("0 1\nn=4\n")


def test_self_loop_rejected():
    with pytest.raises(GraphValidationError):
        parse_edge_list("0 1\n2 2\n")


def test_id_beyond_header_rejected():
    with pytest.raises(GraphValidationError):
        parse_edge_list("n=2\n0 5\n")


def test_serialize_is_canonical():
    text = serialize_edge_list(decalin())
    lines = text.splitlines()
    assert lines[0] == "n=10"
    assert lines[1:] == sorted(lines[1:], key=lambda s: tuple(map(int, s.split())))
    assert parse_edge_list(text) == decalin()


def test_tu_dataset_splits_graphs():
    graphs = parse_tu_dataset(TWO_K2_ADJ, TWO_K2_INDICATOR)
    assert len(graphs) == 2
    for g in graphs:
        assert g.n == 2
        assert g.edges == frozenset({(0, 1)})


def test_tu_dataset_keeps_isolated_vertices():
    graphs = parse_tu_dataset("1, 2\n", "1\n1\n1\n2\n")
    assert [g.n for g in graphs] == [3, 1]
    assert graphs[1].number_of_edges == 0


def test_tu_edge_across_graphs():
    with pytest.raises(FormatError):
        parse_tu_dataset("2, 3\n", TWO_K2_INDICATOR)


def test_tu_gap_in_graph_ids():
    with pytest.raises(FormatError):
        parse_tu_dataset("1, 2\n", "1\n1\n3\n")


def test_tu_unknown_vertex():
    with pytest.raises(FormatError):
        parse_tu_dataset("1, 9\n", TWO_K2_INDICATOR)


def test_tu_non_integer_adjacency():
    with pytest.raises(FormatError):
        parse_tu_dataset("a, b\n", TWO_K2_INDICATOR)


def test_load_tu_directory(tmp_path):
    (tmp_path / "PAIRS_A.txt").write_text(TWO_K2_ADJ)
    (tmp_path / "PAIRS_graph_indicator.txt").write_text(TWO_K2_INDICATOR)
    assert len(load_tu_directory(tmp_path)) == 2


def test_load_tu_directory_missing_files(tmp_path):
    (tmp_path / "PAIRS_A.txt").write_text(TWO_K2_ADJ)
    with pytest.raises(FormatError):
        load_tu_directory(tmp_path)
