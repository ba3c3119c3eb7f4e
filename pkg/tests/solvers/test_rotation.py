#!/usr/bin/env python3
"""
Test Suite for the Rotation Primitives
Solvers: extension, pivot rotation, anticycle closure, threshold arithmetic, constructive finder
"""

import logging
import sys
import unittest
from fractions import Fraction
from pathlib import Path
from unittest import mock

from hypothesis import given, settings, strategies as st

# Add src directory to Python path
sys.path.insert(0, str(Path(__file__).parent.parent.parent / 'src'))

from antisolve import (
    AlternatingPath,
    Lead,
    is_valid_anticycle,
    is_valid_antipath,
    leading_endpoint_closed,
    longest_anticycle,
    longest_antipath,
    reverse_path,
)
from digraph_core import OrientedGraph, degree_profile, from_trit_code, to_trit_code
from errors import InvalidWitnessError, PreconditionError, TheoremCounterexampleError
from generators import circulant_tournament, construction_D
import rotation
from rotation import (
    ceil_log2,
    choose_pivot,
    close_to_anticycle,
    extend_antipath,
    find_long_structure,
    maximal_antipath,
    meets_main_hypothesis,
    rotate_at,
    rotation_state,
    sweep_g_bound,
    threshold_arithmetic,
)

# Set up logging
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)

# 0 -> 1 <- 2 -> 3 <- 0
SQUARE = OrientedGraph.from_arcs(4, [(0, 1), (2, 1), (2, 3), (0, 3)])
TRIANGLE = OrientedGraph.from_arcs(3, [(0, 1), (1, 2), (2, 0)])


class TestExtension(unittest.TestCase):

    def test_unique_extension(self):
        g = OrientedGraph.from_arcs(3, [(0, 1), (2, 1)])
        extended = extend_antipath(g, AlternatingPath((0, 1), Lead.OUT))
        self.assertEqual(extended, AlternatingPath((0, 1, 2), Lead.OUT))

    def test_maximal_path_is_a_fixed_point(self):
        g = OrientedGraph.from_arcs(3, [(0, 1), (2, 1)])
        path = AlternatingPath((0, 1, 2), Lead.OUT)
        self.assertIs(extend_antipath(g, path), path)

    def test_front_extension_flips_lead(self):
        g = OrientedGraph.from_arcs(3, [(0, 1), (0, 2)])
        extended = extend_antipath(g, AlternatingPath((0, 1), Lead.OUT))
        self.assertEqual(extended, AlternatingPath((2, 0, 1), Lead.IN))

    def test_single_vertex_extension(self):
        extended = extend_antipath(TRIANGLE, AlternatingPath((0,)))
        self.assertEqual(extended, AlternatingPath((1, 0), Lead.IN))
        self.assertTrue(is_valid_antipath(TRIANGLE, extended))

    def test_rejects_invalid_path(self):
        with self.assertRaises(InvalidWitnessError):
            extend_antipath(TRIANGLE, AlternatingPath((0, 2), Lead.OUT))

    @settings(max_examples=80, deadline=None)
    @given(st.integers(min_value=0, max_value=3 ** 10 - 1))
    def test_maximal_paths_are_closed_at_both_ends(self, code):
        g = from_trit_code(5, code)
        path = maximal_antipath(g, AlternatingPath((0,)))
        self.assertTrue(is_valid_antipath(g, path))
        self.assertTrue(leading_endpoint_closed(g, path))
        self.assertTrue(leading_endpoint_closed(g, reverse_path(path)))


class TestRotation(unittest.TestCase):
    """Pivot rotation on lead-out antipaths."""

    def test_rotation_state_classes(self):
        st_ = rotation_state(SQUARE, AlternatingPath((0, 1, 2, 3), Lead.OUT))
        self.assertEqual(st_.X1, frozenset({1, 3}))
        self.assertEqual(st_.X2, frozenset({0, 2}))
        self.assertEqual(st_.Y1, frozenset({1, 3}))
        self.assertEqual(st_.Y2, frozenset({0, 2}))
        self.assertEqual(st_.t, 3)

    def test_rotate_example(self):
        st_ = rotation_state(SQUARE, AlternatingPath((0, 1, 2, 3), Lead.OUT))
        self.assertEqual(choose_pivot(SQUARE, st_), 2)
        rotated = rotate_at(SQUARE, st_, 2)
        self.assertEqual(rotated, AlternatingPath((2, 1, 0, 3), Lead.OUT))
        self.assertTrue(is_valid_antipath(SQUARE, rotated))

    def test_rotating_twice_restores_the_path(self):
        path = AlternatingPath((0, 1, 2, 3), Lead.OUT)
        once = rotate_at(SQUARE, rotation_state(SQUARE, path), 2)
        twice = rotate_at(SQUARE, rotation_state(SQUARE, once), 2)
        self.assertEqual(twice, path)

    def test_rotate_preconditions(self):
        st_ = rotation_state(SQUARE, AlternatingPath((0, 1, 2, 3), Lead.OUT))
        for j in (1, 0, 4):
            with self.subTest(j=j):
                with self.assertRaises(PreconditionError):
                    rotate_at(SQUARE, st_, j)

    def test_missing_pivot_arc(self):
        g = OrientedGraph.from_arcs(4, [(0, 1), (2, 1), (2, 3)])
        st_ = rotation_state(g, AlternatingPath((0, 1, 2, 3), Lead.OUT))
        with self.assertRaises(PreconditionError):
            rotate_at(g, st_, 2)
        self.assertIsNone(choose_pivot(g, st_))

    def test_lead_in_paths_are_normalised(self):
        st_ = rotation_state(SQUARE, AlternatingPath((3, 2, 1, 0), Lead.IN))
        self.assertEqual(st_.path, AlternatingPath((0, 1, 2, 3), Lead.OUT))
        with self.assertRaises(PreconditionError):
            rotation_state(SQUARE, AlternatingPath((1, 2, 3), Lead.IN))
        with self.assertRaises(PreconditionError):
            rotation_state(SQUARE, AlternatingPath((1,)))

    def test_rotation_algebra_on_all_four_vertex_graphs(self):
        checked = 0
        for code in range(3 ** 6):
            g = from_trit_code(4, code)
            longest = longest_antipath(g)
            if longest.length < 3 or longest.length % 2 == 0:
                continue
            path = longest if longest.lead is Lead.OUT else reverse_path(longest)
            st_ = rotation_state(g, path)
            for j in range(2, st_.t, 2):
                if not g.has_arc(path.vertices[0], path.vertices[j + 1]):
                    continue
                rotated = rotate_at(g, st_, j)
                self.assertTrue(is_valid_antipath(g, rotated))
                self.assertEqual(rotated.length, path.length)
                self.assertEqual(set(rotated.vertices), set(path.vertices))
                self.assertEqual(rotate_at(g, rotation_state(g, rotated), j), path)
                checked += 1
        self.assertGreater(checked, 0)
        logger.info(f"✅ Rotation algebra held for {checked} legal pivots")


class TestClosure(unittest.TestCase):

    def test_direct_closure(self):
        cycle = close_to_anticycle(SQUARE, AlternatingPath((0, 1, 2, 3), Lead.OUT))
        self.assertEqual(cycle.vertices, (0, 1, 2, 3))

    def test_chord_closure(self):
        # x0..x5 = 0 1 2 3 4 5 with chords 0 -> 3 and 2 -> 5 closing 0 1 2 5 4 3
        arcs = [(0, 1), (2, 1), (2, 3), (4, 3), (4, 5), (0, 3), (2, 5)]
        g = OrientedGraph.from_arcs(6, arcs)
        cycle = close_to_anticycle(g, AlternatingPath((0, 1, 2, 3, 4, 5), Lead.OUT))
        self.assertIsNotNone(cycle)
        self.assertEqual(cycle.length, 6)
        self.assertTrue(is_valid_anticycle(g, cycle))

    def test_no_closure(self):
        self.assertIsNone(close_to_anticycle(TRIANGLE, AlternatingPath((0, 1), Lead.OUT)))
        g = OrientedGraph.from_arcs(3, [(0, 1), (2, 1)])
        self.assertIsNone(close_to_anticycle(g, AlternatingPath((0, 1, 2), Lead.OUT)))

    def test_closures_never_beat_the_oracle(self):
        for code in range(3 ** 6):
            g = from_trit_code(4, code)
            longest = longest_antipath(g)
            cycle = close_to_anticycle(g, longest)
            if cycle is None:
                continue
            self.assertTrue(is_valid_anticycle(g, cycle))
            self.assertLessEqual(cycle.length, longest_anticycle(g).length)


class TestThresholdArithmetic(unittest.TestCase):
    """Exact f, alpha and g values."""

    def test_spot_values(self):
        t2 = threshold_arithmetic(2)
        self.assertEqual((t2.alpha, t2.f_of_k, t2.g_of_k), (1, Fraction(5, 3), Fraction(35, 12)))
        t4 = threshold_arithmetic(4)
        self.assertEqual((t4.alpha, t4.f_of_k, t4.g_of_k), (2, Fraction(3), Fraction(39, 8)))

    def test_ceil_log2(self):
        self.assertEqual([ceil_log2(k) for k in (2, 3, 4, 5, 8, 9)], [1, 2, 2, 3, 3, 4])

    def test_neighborhood_bound_reaches_g(self):
        for k in range(2, 200):
            with self.subTest(k=k):
                t = threshold_arithmetic(k)
                self.assertEqual(t.f_of_k + t.neighborhood_bound(t.alpha), t.g_of_k)

    def test_rejects_small_k(self):
        with self.assertRaises(PreconditionError):
            threshold_arithmetic(1)

    def test_sweep(self):
        sweep = sweep_g_bound(10)
        self.assertTrue(sweep.passed)
        self.assertEqual(sweep.checked, 9)
        self.assertEqual(sweep.min_margin, Fraction(41, 48))
        self.assertEqual(sweep.min_margin_k, 8)

    def test_sweep_agrees_with_fractions(self):
        sweep = sweep_g_bound(300)
        margins = {k: threshold_arithmetic(k).g_of_k - k for k in range(2, 301)}
        self.assertEqual(sweep.min_margin, min(margins.values()))
        self.assertTrue(all(0 < m <= 1 for m in margins.values()))


class TestFindLongStructure(unittest.TestCase):
    """Constructive finder backed by the exact oracle."""

    def test_square_gives_its_antipath(self):
        witness = find_long_structure(SQUARE, 2)
        self.assertEqual(witness.strategy, 'longest-antipath')
        self.assertEqual(witness.kind, 'antipath')
        self.assertGreaterEqual(witness.length, 3)
        self.assertTrue(witness.trace)

    def test_regular_tournament(self):
        g = circulant_tournament(5)
        witness = find_long_structure(g, 2)
        self.assertGreaterEqual(witness.length, 3)
        if witness.kind == 'antipath':
            self.assertTrue(is_valid_antipath(g, witness.path))
        else:
            self.assertTrue(is_valid_anticycle(g, witness.cycle))

    def test_hypothesis_failure_is_a_precondition_error(self):
        with self.assertRaises(PreconditionError):
            find_long_structure(TRIANGLE, 2)
        with self.assertRaises(PreconditionError):
            find_long_structure(SQUARE, 1)

    @settings(max_examples=150, deadline=None)
    @given(st.integers(min_value=0, max_value=3 ** 10 - 1), st.sampled_from([2, 3]))
    def test_witness_on_five_vertex_graphs(self, code, k):
        g = from_trit_code(5, code)
        if not meets_main_hypothesis(degree_profile(g).pseudo_delta0, k):
            with self.assertRaises(PreconditionError):
                find_long_structure(g, k)
            return
        witness = find_long_structure(g, k)
        self.assertGreaterEqual(witness.length, k + 1)
        if witness.kind == 'antipath':
            self.assertTrue(is_valid_antipath(g, witness.path))
        else:
            self.assertTrue(is_valid_anticycle(g, witness.cycle))


class TestFindLongStructureStrategies(unittest.TestCase):
    """
    Closure, rotation and fallback branches of the finder.

    The exact longest antipath already reaches k+1 on every graph meeting the
    hypothesis, so these tests hand the finder a shorter lead-out antipath.
    K_{4,4} (X = 0..3 -> Y = 4..7) has δ̃⁰ = 4, which meets 3·δ̃⁰ >= 2k+1 for k = 5.
    """

    K44 = construction_D(6)
    SHORT = AlternatingPath((0, 4, 1, 5, 2, 6), Lead.OUT)

    def _find(self, close=None, no_anticycle=False):
        patches = [mock.patch('rotation.longest_antipath', return_value=self.SHORT)]
        if close is not None:
            patches.append(mock.patch('rotation.close_to_anticycle', side_effect=close))
        if no_anticycle:
            patches.append(mock.patch('rotation.longest_anticycle', return_value=None))
        for patcher in patches:
            patcher.start()
            self.addCleanup(patcher.stop)
        return find_long_structure(self.K44, 5)

    def test_short_path_closes_directly(self):
        witness = self._find()
        self.assertEqual(witness.strategy, 'closure')
        self.assertEqual(witness.kind, 'anticycle')
        self.assertEqual(witness.cycle.vertices, (0, 4, 1, 5, 2, 6))
        self.assertTrue(is_valid_anticycle(self.K44, witness.cycle))
        self.assertTrue(witness.trace[1].startswith("closure: (0, 4, 1, 5, 2, 6)"))

    def test_first_rotation_closes(self):
        real_close = rotation.close_to_anticycle

        def close_after_rotation(g, p):
            return None if p == self.SHORT else real_close(g, p)

        witness = self._find(close=close_after_rotation)
        self.assertEqual(witness.strategy, 'rotation-1')
        self.assertEqual(witness.length, 6)
        self.assertEqual(set(witness.vertices), {0, 1, 2, 4, 5, 6})
        self.assertTrue(is_valid_anticycle(self.K44, witness.cycle))
        self.assertEqual(witness.trace[1], "closure: none")
        self.assertTrue(witness.trace[2].startswith("round 1: pivot r_2=1, |N+∩Y2|=0, path (1, 4, 0, 5, 2, 6)"))

    def test_fallback_after_every_round(self):
        witness = self._find(close=lambda g, p: None)
        self.assertEqual(witness.strategy, 'fallback')
        self.assertEqual(witness.length, 8)
        self.assertTrue(is_valid_anticycle(self.K44, witness.cycle))
        rounds = [line for line in witness.trace if line.startswith("round")]
        self.assertEqual(len(rounds), threshold_arithmetic(5).alpha)
        self.assertTrue(rounds[0].startswith("round 1: pivot r_2=1"))
        self.assertTrue(rounds[1].startswith("round 2: pivot r_2=0"))
        self.assertTrue(rounds[2].startswith("round 3: pivot r_2=1"))
        self.assertTrue(witness.trace[-1].startswith("fallback oracle anticycle:"))
        logger.info("✅ Finder strategies: closure, rotation-1, fallback")

    def test_no_structure_is_a_counterexample(self):
        with self.assertRaises(TheoremCounterexampleError) as ctx:
            self._find(close=lambda g, p: None, no_anticycle=True)
        self.assertEqual(ctx.exception.n, 8)
        self.assertEqual(ctx.exception.code, to_trit_code(self.K44))


if __name__ == '__main__':
    unittest.main()
