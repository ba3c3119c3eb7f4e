#!/usr/bin/env python3
"""
Test Suite for the Oriented Graph Core
Core: representation, degrees, trit codes and the graph text format
"""

import logging
import sys
import tempfile
import unittest
from pathlib import Path

from hypothesis import given, settings, strategies as st

# Add src directory to Python path
sys.path.insert(0, str(Path(__file__).parent.parent.parent / 'src'))

from digraph_core import (
    OrientedGraph,
    code_space,
    converse,
    degree_profile,
    format_code_token,
    format_graph_text,
    from_trit_code,
    induced_subdigraph,
    parse_code_token,
    parse_graph_text,
    read_graph_file,
    to_trit_code,
    vertex_pairs,
    write_graph_file,
)
from errors import InvalidGraphError
from generators import circulant_tournament

# Set up logging
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)


class TestOrientedGraph(unittest.TestCase):
    """Construction and validation of oriented graphs."""

    def test_from_arcs_builds_masks(self):
        g = OrientedGraph.from_arcs(3, [(0, 1), (2, 1)])
        self.assertTrue(g.has_arc(0, 1))
        self.assertFalse(g.has_arc(1, 0))
        self.assertEqual(g.in_neighbors(1), [0, 2])
        self.assertEqual(g.out_neighbors(1), [])
        self.assertEqual(g.arcs, ((0, 1), (2, 1)))
        self.assertEqual(g.arc_count, 2)

    def test_rejects_loops_duplicates_and_two_cycles(self):
        with self.assertRaises(InvalidGraphError):
            OrientedGraph.from_arcs(2, [(0, 0)])
        with self.assertRaises(InvalidGraphError):
            OrientedGraph.from_arcs(2, [(0, 1), (0, 1)])
        with self.assertRaises(InvalidGraphError):
            OrientedGraph.from_arcs(2, [(0, 1), (1, 0)])
        with self.assertRaises(InvalidGraphError):
            OrientedGraph.from_arcs(2, [(0, 2)])

    def test_rejects_vertex_counts_above_limit(self):
        with self.assertRaises(InvalidGraphError):
            OrientedGraph.empty(65)

    def test_invalid_graph_error_is_a_value_error(self):
        with self.assertRaises(ValueError):
            OrientedGraph.from_arcs(2, [(1, 1)])


class TestDegreeProfile(unittest.TestCase):
    """Semi-degree and pseudo-semi-degree."""

    def test_single_arc(self):
        profile = degree_profile(OrientedGraph.from_arcs(2, [(0, 1)]))
        self.assertEqual(profile.out_deg, (1, 0))
        self.assertEqual(profile.in_deg, (0, 1))
        self.assertEqual(profile.delta0, 0)
        self.assertEqual(profile.pseudo_delta0, 1)

    def test_empty_graph_has_zero_pseudo_semidegree(self):
        profile = degree_profile(OrientedGraph.empty(3))
        self.assertEqual(profile.delta0, 0)
        self.assertEqual(profile.pseudo_delta0, 0)

    def test_regular_tournament(self):
        profile = degree_profile(circulant_tournament(5))
        self.assertEqual(set(profile.out_deg), {2})
        self.assertEqual(set(profile.in_deg), {2})
        self.assertEqual(profile.delta0, 2)
        self.assertEqual(profile.pseudo_delta0, 2)

    @settings(max_examples=200, deadline=None)
    @given(st.integers(min_value=0, max_value=3 ** 10 - 1))
    def test_pseudo_semidegree_zero_iff_no_arcs(self, code):
        g = from_trit_code(5, code)
        profile = degree_profile(g)
        self.assertEqual(profile.pseudo_delta0 == 0, g.arc_count == 0)
        self.assertGreaterEqual(profile.pseudo_delta0, profile.delta0)


class TestSubgraphsAndConverse(unittest.TestCase):

    def test_induced_subdigraph_of_circulant(self):
        sub = induced_subdigraph(circulant_tournament(5), [0, 1, 2])
        self.assertEqual(sub.arcs, ((0, 1), (0, 2), (1, 2)))

    def test_induced_subdigraph_identity_and_empty(self):
        g = circulant_tournament(5)
        self.assertEqual(induced_subdigraph(g, range(5)), g)
        self.assertEqual(induced_subdigraph(g, []).n, 0)

    def test_induced_subdigraph_relabels_in_given_order(self):
        g = OrientedGraph.from_arcs(3, [(0, 2)])
        self.assertEqual(induced_subdigraph(g, [2, 0]).arcs, ((1, 0),))

    def test_induced_subdigraph_rejects_repeats(self):
        with self.assertRaises(InvalidGraphError):
            induced_subdigraph(circulant_tournament(3), [0, 0])

    def test_converse_reverses_every_arc(self):
        g = OrientedGraph.from_arcs(3, [(0, 1), (2, 1)])
        self.assertEqual(converse(g).arcs, ((1, 0), (1, 2)))
        self.assertEqual(converse(converse(g)), g)


class TestTritCode(unittest.TestCase):
    """Base-3 code of labeled oriented graphs."""

    def test_pair_order(self):
        self.assertEqual(vertex_pairs(3), ((0, 1), (0, 2), (1, 2)))

    def test_small_codes(self):
        self.assertEqual(from_trit_code(2, 1).arcs, ((0, 1),))
        self.assertEqual(from_trit_code(2, 2).arcs, ((1, 0),))
        self.assertEqual(from_trit_code(2, 0).arc_count, 0)

    def test_hand_evaluated_code(self):
        g = OrientedGraph.from_arcs(3, [(0, 1), (2, 1), (0, 2)])
        self.assertEqual(to_trit_code(g), 22)
        self.assertEqual(from_trit_code(3, 22), g)

    def test_code_out_of_range(self):
        with self.assertRaises(InvalidGraphError):
            from_trit_code(2, 3)
        with self.assertRaises(InvalidGraphError):
            from_trit_code(3, -1)

    def test_code_space(self):
        self.assertEqual(code_space(0), 1)
        self.assertEqual(code_space(4), 729)
        self.assertEqual(code_space(5), 59049)

    @settings(max_examples=200, deadline=None)
    @given(st.integers(min_value=0, max_value=3 ** 15 - 1))
    def test_decode_encode_identity(self, code):
        self.assertEqual(to_trit_code(from_trit_code(6, code)), code)

    def test_every_small_code_round_trips(self):
        for n in range(6):
            with self.subTest(n=n):
                for code in range(code_space(n)):
                    g = from_trit_code(n, code)
                    self.assertEqual(to_trit_code(g), code)
                    self.assertEqual(from_trit_code(n, to_trit_code(g)), g)
        logger.info("✅ Trit codes round-trip for every graph on n <= 5")

    def test_code_token(self):
        g = OrientedGraph.from_arcs(3, [(0, 1), (2, 1), (0, 2)])
        self.assertEqual(format_code_token(g), "3:22")
        self.assertEqual(parse_code_token("3:22"), (3, 22))
        with self.assertRaises(InvalidGraphError):
            parse_code_token("3-22")


class TestGraphText(unittest.TestCase):
    """Line-oriented graph text format."""

    def test_parse_with_comments_and_blank_lines(self):
        text = "# a comment\n\nn 3\n0 1\n# inline comment\n2 1\n"
        g = parse_graph_text(text)
        self.assertEqual(g.n, 3)
        self.assertEqual(g.arcs, ((0, 1), (2, 1)))

    def test_writer_sorts_arcs(self):
        g = OrientedGraph.from_arcs(3, [(2, 1), (0, 1)])
        self.assertEqual(format_graph_text(g), "n 3\n0 1\n2 1\n")
        self.assertEqual(format_graph_text(g, comment="code 3:19"), "# code 3:19\nn 3\n0 1\n2 1\n")

    def test_parse_errors(self):
        for text in ("0 1\n", "n three\n", "n 3\n0\n", "n 2\n0 1\n1 0\n", ""):
            with self.subTest(text=text):
                with self.assertRaises(InvalidGraphError):
                    parse_graph_text(text)

    def test_file_round_trip(self):
        g = circulant_tournament(7)
        with tempfile.TemporaryDirectory() as tmp:
            path = str(Path(tmp) / 'g.txt')
            write_graph_file(path, g, comment="circulant")
            self.assertEqual(read_graph_file(path), g)
        logger.info("✅ Graph file round trip test passed")


if __name__ == '__main__':
    unittest.main()
