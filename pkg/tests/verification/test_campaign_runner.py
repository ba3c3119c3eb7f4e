#!/usr/bin/env python3
"""
Test Suite for the Campaign Runner
Harness: sharding, record sinks, determinism and summaries
"""

import json
import logging
import os
import sys
import tempfile
import unittest
from pathlib import Path

# Add src directory to Python path
sys.path.insert(0, str(Path(__file__).parent.parent.parent / 'src'))

from core.campaign_runner import Campaign, CampaignRunner, run_campaign, summarize_records
from errors import PreconditionError, ResourceGuardError
from harness import RECORD_KEYS, Population, iter_records

# Set up logging
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)

FOUR_VERTICES = Population('exhaustive', 4)


class TestSharding(unittest.TestCase):
    """Shard layout does not change the record stream."""

    def test_shard_ranges_cover_the_range_in_order(self):
        campaign = Campaign('theorem-main', FOUR_VERTICES, (2,), shards=4)
        ranges = campaign.shard_ranges()
        self.assertEqual(ranges[0][0], 0)
        self.assertEqual(ranges[-1][1], 729)
        for (_, hi), (lo, _) in zip(ranges, ranges[1:]):
            self.assertEqual(hi, lo)

    def test_shard_count_does_not_change_output(self):
        single = run_campaign(Campaign('theorem-main', FOUR_VERTICES, (2, 3)), collect=True)
        sharded = run_campaign(Campaign('theorem-main', FOUR_VERTICES, (2, 3), shards=4), collect=True)
        self.assertEqual(single.lines, sharded.lines)
        self.assertEqual(single.summary.records, 2 * 729)
        self.assertEqual(single.summary.inspected, 729)
        self.assertEqual(single.summary.hypothesis, sharded.summary.hypothesis)
        logger.info("✅ Sharded output matches the single-shard run")

    def test_disjoint_ranges_concatenate(self):
        full = run_campaign(Campaign('lemma-basic', FOUR_VERTICES, (2,)), collect=True)
        low = run_campaign(Campaign('lemma-basic', FOUR_VERTICES, (2,), hi=300), collect=True)
        high = run_campaign(Campaign('lemma-basic', FOUR_VERTICES, (2,), lo=300), collect=True)
        self.assertEqual(low.lines + high.lines, full.lines)

    def test_empty_range(self):
        result = run_campaign(Campaign('theorem-main', FOUR_VERTICES, (2,), lo=100, hi=100, shards=3),
                              collect=True)
        self.assertEqual(result.summary.records, 0)
        self.assertEqual(result.lines, [])

    def test_records_match_direct_iteration(self):
        result = run_campaign(Campaign('observation', Population('exhaustive', 3)), collect=True)
        expected = [r.to_json_line() for r in iter_records('observation', Population('exhaustive', 3), ())]
        self.assertEqual(result.lines, expected)
        self.assertEqual(result.summary.k_values, (None,))


class TestSinks(unittest.TestCase):

    def test_sink_contents_and_part_cleanup(self):
        with tempfile.TemporaryDirectory() as tmp:
            sink = str(Path(tmp) / 'records.jsonl')
            result = run_campaign(Campaign('theorem-main', FOUR_VERTICES, (2,), shards=3, sink=sink),
                                  collect=True)
            with open(sink, 'r', encoding='utf-8') as file:
                self.assertEqual(file.read(), "\n".join(result.lines) + "\n")
            self.assertEqual(os.listdir(tmp), ['records.jsonl'])
            self.assertEqual(result.summary.to_dict()['sink'], sink)

    def test_canonical_lines_have_no_timestamp(self):
        result = run_campaign(Campaign('theorem-main', Population('exhaustive', 3), (2,)), collect=True)
        self.assertEqual(tuple(json.loads(result.lines[0])), RECORD_KEYS)

    def test_non_canonical_lines_carry_a_timestamp(self):
        result = run_campaign(Campaign('theorem-main', Population('exhaustive', 3), (2,), canonical=False),
                              collect=True)
        self.assertIn('timestamp', json.loads(result.lines[0]))

    def test_summarize_records(self):
        with tempfile.TemporaryDirectory() as tmp:
            sink = str(Path(tmp) / 'records.jsonl')
            result = run_campaign(Campaign('theorem-main', FOUR_VERTICES, (2, 3), sink=sink))
            frame = summarize_records(sink)
        self.assertEqual(list(frame['k']), [2, 3])
        self.assertTrue((frame['records'] == 729).all())
        self.assertEqual(int(frame['hypothesis'].sum()), result.summary.hypothesis)
        self.assertEqual(int(frame['counterexamples'].sum()), 0)

    def test_summarize_observation_records(self):
        with tempfile.TemporaryDirectory() as tmp:
            sink = str(Path(tmp) / 'records.jsonl')
            run_campaign(Campaign('observation', Population('exhaustive', 3), sink=sink))
            frame = summarize_records(sink)
        self.assertEqual(len(frame), 1)
        self.assertEqual(int(frame['records'].iloc[0]), 27)


class TestCampaignRunner(unittest.TestCase):
    """Validation, guards and metrics."""

    def test_bad_shard_and_job_counts(self):
        runner = CampaignRunner()
        with self.assertRaises(PreconditionError):
            runner.run(Campaign('theorem-main', FOUR_VERTICES, (2,), shards=0))
        with self.assertRaises(PreconditionError):
            runner.run(Campaign('theorem-main', FOUR_VERTICES, (2,), jobs=0))
        with self.assertRaises(PreconditionError):
            runner.run(Campaign('theorem-main', FOUR_VERTICES, (2,), hi=800))
        with self.assertRaises(PreconditionError):
            runner.run(Campaign('theorem-main', FOUR_VERTICES, ()))

    def test_guards(self):
        runner = CampaignRunner(max_exhaustive_n=3, max_samples=5, max_stein_k=4)
        with self.assertRaises(ResourceGuardError):
            runner.run(Campaign('theorem-main', FOUR_VERTICES, (2,)))
        with self.assertRaises(ResourceGuardError):
            runner.run(Campaign('theorem-main', Population('sampled', 5, samples=6), (2,)))
        with self.assertRaises(ResourceGuardError):
            runner.run(Campaign('stein', Population('exhaustive', 3), (5,)))
        with self.assertRaises(ResourceGuardError):
            runner.run(Campaign('theorem-main', Population('exhaustive', 1), (2,), shards=2))

    def test_metrics_accumulate(self):
        runner = CampaignRunner()
        runner.run(Campaign('theorem-main', Population('exhaustive', 3), (2,)))
        runner.run(Campaign('lemma-basic', Population('exhaustive', 3), (2, 3)))
        metrics = runner.get_campaign_metrics()
        self.assertEqual(metrics['campaigns_run'], 2)
        self.assertEqual(metrics['records_written'], 27 + 54)
        self.assertEqual(metrics['counterexamples_found'], 0)

    def test_sampled_campaign_is_reproducible(self):
        population = Population('sampled', 5, n_max=7, samples=12, seed=99)
        first = run_campaign(Campaign('theorem-main', population, (2,), shards=3), collect=True)
        second = run_campaign(Campaign('theorem-main', population, (2,)), collect=True)
        self.assertEqual(first.lines, second.lines)
        self.assertEqual(first.summary.counterexample_count, 0)


if __name__ == '__main__':
    unittest.main()
