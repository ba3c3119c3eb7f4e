"""
Campaign Runner
Antipath Toolkit - oriented graph verification

This module orchestrates verification campaigns: it splits a population's
index range into shards, runs the shards (in worker processes when jobs > 1),
writes one JSON line per record to the sink, and merges shard output by
shard index so the record stream does not depend on scheduling.
"""

import concurrent.futures
import json
import logging
import os
import shutil
import time
from dataclasses import dataclass, field
from datetime import datetime
from typing import Any, Dict, List, Optional, Sequence, Tuple

import pandas as pd

from errors import PreconditionError, ResourceGuardError
from harness import (
    MAX_EXHAUSTIVE_N,
    MAX_SAMPLES,
    MAX_STEIN_K,
    Population,
    VerificationRecord,
    iter_records,
    validate_parameters,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Campaign:
    """
    A property checked over the index range [lo, hi) of a population.

    Output is identical for every choice of shards and jobs; shards only
    decide how the range is cut, jobs how many processes work on it.
    """
    property_tag: str
    population: Population
    k_values: Tuple[Optional[int], ...] = ()
    lo: int = 0
    hi: Optional[int] = None
    shards: int = 1
    jobs: int = 1
    sink: Optional[str] = None
    canonical: bool = True

    def shard_ranges(self) -> List[Tuple[int, int]]:
        """Contiguous ranges covering [lo, hi) in order; some may be empty."""
        lo, hi = self.population.check_range(self.lo, self.hi)
        span = hi - lo
        bounds = [lo + (i * span) // self.shards for i in range(self.shards + 1)]
        return list(zip(bounds[:-1], bounds[1:]))


@dataclass
class ShardTask:
    index: int
    property_tag: str
    population: Population
    k_values: Tuple[Optional[int], ...]
    lo: int
    hi: int
    canonical: bool
    part_path: Optional[str]
    collect: bool


@dataclass
class ShardResult:
    index: int
    inspected: int = 0
    records: int = 0
    hypothesis: int = 0
    counterexamples: List[VerificationRecord] = field(default_factory=list)
    lines: List[str] = field(default_factory=list)
    elapsed_seconds: float = 0.0


@dataclass
class CampaignSummary:
    """Counts and timing of one campaign run."""
    property_tag: str
    k_values: Tuple[Optional[int], ...]
    inspected: int
    records: int
    hypothesis: int
    counterexamples: List[VerificationRecord]
    elapsed_seconds: float
    shards: int
    sink: Optional[str]

    @property
    def counterexample_count(self) -> int:
        return len(self.counterexamples)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'property': self.property_tag,
            'k': list(self.k_values),
            'inspected': self.inspected,
            'records': self.records,
            'hypothesis': self.hypothesis,
            'counterexamples': self.counterexample_count,
            'counterexample_codes': [f"{r.n}:{r.code}" for r in self.counterexamples],
            'elapsed_seconds': round(self.elapsed_seconds, 3),
            'shards': self.shards,
            'sink': self.sink,
        }


@dataclass
class CampaignResult:
    summary: CampaignSummary
    lines: Optional[List[str]] = None


def _run_shard(task: ShardTask) -> ShardResult:
    """Check every graph of one shard; module level so worker processes can unpickle it."""
    start_time = time.time()
    result = ShardResult(task.index, inspected=task.hi - task.lo)
    handle = open(task.part_path, 'w', encoding='utf-8') if task.part_path else None
    try:
        for record in iter_records(task.property_tag, task.population, task.k_values, task.lo, task.hi):
            line = record.to_json_line(None if task.canonical else datetime.now().isoformat())
            result.records += 1
            result.hypothesis += record.hypothesis
            if record.is_counterexample:
                result.counterexamples.append(record)
            if handle:
                handle.write(line + "\n")
            if task.collect:
                result.lines.append(line)
    finally:
        if handle:
            handle.close()
    result.elapsed_seconds = time.time() - start_time
    return result


class CampaignRunner:
    """
    Runs campaigns and keeps running totals across them.
    """

    def __init__(self, max_exhaustive_n: int = MAX_EXHAUSTIVE_N, max_samples: int = MAX_SAMPLES,
                 max_stein_k: int = MAX_STEIN_K):
        """
        Initialize the runner.

        Args:
            max_exhaustive_n: Largest n allowed for exhaustive populations
            max_samples: Largest sample count allowed for sampled populations
            max_stein_k: Largest k allowed for the stein property
        """
        self.max_exhaustive_n = max_exhaustive_n
        self.max_samples = max_samples
        self.max_stein_k = max_stein_k

        self.campaign_metrics = {
            'campaigns_run': 0,
            'records_written': 0,
            'counterexamples_found': 0,
            'total_time': 0.0
        }

    def validate_campaign(self, campaign: Campaign) -> None:
        """
        Raises:
            PreconditionError: bad property, k, shard or job counts, or range
            ResourceGuardError: population above its guard
        """
        validate_parameters(campaign.property_tag, campaign.k_values, max_stein_k=self.max_stein_k)
        if campaign.shards < 1:
            raise PreconditionError(f"shards must be >= 1, got {campaign.shards}")
        if campaign.jobs < 1:
            raise PreconditionError(f"jobs must be >= 1, got {campaign.jobs}")
        campaign.population.check_range(campaign.lo, campaign.hi)
        campaign.population.guard(max_exhaustive_n=self.max_exhaustive_n, max_samples=self.max_samples)
        if campaign.shards > max(campaign.population.size, 1):
            raise ResourceGuardError(
                f"{campaign.shards} shards for a population of {campaign.population.size} graphs")

    def run(self, campaign: Campaign, collect: bool = False) -> CampaignResult:
        """
        Execute all shards and merge their output.

        Args:
            campaign: Campaign to run
            collect: Also return the JSON lines in memory

        Returns:
            CampaignResult with the summary and, when collect is set, the record lines
        """
        self.validate_campaign(campaign)
        k_values = (None,) if campaign.property_tag == "observation" else tuple(campaign.k_values)
        ranges = campaign.shard_ranges()
        tasks = [
            ShardTask(
                index=i,
                property_tag=campaign.property_tag,
                population=campaign.population,
                k_values=k_values,
                lo=lo,
                hi=hi,
                canonical=campaign.canonical,
                part_path=f"{campaign.sink}.part{i:04d}" if campaign.sink else None,
                collect=collect,
            )
            for i, (lo, hi) in enumerate(ranges)
        ]

        start_time = time.time()
        logger.info(f"🔄 Campaign {campaign.property_tag} k={list(k_values)}: {len(tasks)} shards, "
                    f"{campaign.jobs} jobs, population {campaign.population.mode} n={campaign.population.n}")
        try:
            results = self._execute(tasks, campaign.jobs)
            if campaign.sink:
                self._merge_parts(tasks, campaign.sink)
        finally:
            self._remove_parts(tasks)
        elapsed = time.time() - start_time

        ordered = [results[task.index] for task in tasks]
        counterexamples = [r for shard in ordered for r in shard.counterexamples]
        summary = CampaignSummary(
            property_tag=campaign.property_tag,
            k_values=k_values,
            inspected=sum(shard.inspected for shard in ordered),
            records=sum(shard.records for shard in ordered),
            hypothesis=sum(shard.hypothesis for shard in ordered),
            counterexamples=counterexamples,
            elapsed_seconds=elapsed,
            shards=len(tasks),
            sink=campaign.sink,
        )
        self._update_campaign_metrics(summary)

        if counterexamples:
            logger.warning(f"❌ {campaign.property_tag}: {len(counterexamples)} counterexamples in "
                           f"{summary.records} records ({elapsed:.2f}s)")
        else:
            logger.info(f"✅ {campaign.property_tag}: {summary.records} records, {summary.hypothesis} "
                        f"meet the hypothesis, no counterexamples ({elapsed:.2f}s)")

        lines = [line for shard in ordered for line in shard.lines] if collect else None
        return CampaignResult(summary, lines)

    def _execute(self, tasks: Sequence[ShardTask], jobs: int) -> Dict[int, ShardResult]:
        if jobs == 1 or len(tasks) == 1:
            return {task.index: _run_shard(task) for task in tasks}

        results: Dict[int, ShardResult] = {}
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as executor:
            future_to_shard = {executor.submit(_run_shard, task): task.index for task in tasks}

            for future in concurrent.futures.as_completed(future_to_shard):
                shard_index = future_to_shard[future]
                try:
                    result = future.result()
                except Exception as e:
                    logger.error(f"❌ Shard {shard_index + 1}/{len(tasks)} failed: {e}")
                    raise
                results[shard_index] = result
                logger.info(f"Shard {shard_index + 1}/{len(tasks)} completed: "
                            f"{result.records} records in {result.elapsed_seconds:.2f}s")
        return results

    @staticmethod
    def _merge_parts(tasks: Sequence[ShardTask], sink: str) -> None:
        try:
            with open(sink, 'w', encoding='utf-8') as out:
                for task in tasks:
                    with open(task.part_path, 'r', encoding='utf-8') as part:
                        shutil.copyfileobj(part, out)
        except OSError as e:
            logger.error(f"❌ Could not write record sink {sink}: {e}")
            raise
        logger.info(f"Records written to {sink}")

    @staticmethod
    def _remove_parts(tasks: Sequence[ShardTask]) -> None:
        for task in tasks:
            if task.part_path and os.path.exists(task.part_path):
                os.remove(task.part_path)

    def _update_campaign_metrics(self, summary: CampaignSummary) -> None:
        self.campaign_metrics['campaigns_run'] += 1
        self.campaign_metrics['records_written'] += summary.records
        self.campaign_metrics['counterexamples_found'] += summary.counterexample_count
        self.campaign_metrics['total_time'] += summary.elapsed_seconds

    def get_campaign_metrics(self) -> Dict[str, Any]:
        return dict(self.campaign_metrics)


def run_campaign(campaign: Campaign, collect: bool = False) -> CampaignResult:
    """Run a campaign with the default guards."""
    return CampaignRunner().run(campaign, collect=collect)


def summarize_records(path: str) -> pd.DataFrame:
    """
    Per-(property, k) counts of a JSON-lines record file.

    Columns: property, k, records, hypothesis, counterexamples.
    """
    rows = []
    with open(path, 'r', encoding='utf-8') as file:
        for line in file:
            if line.strip():
                data = json.loads(line)
                rows.append({key: data[key] for key in ('property', 'k', 'hypothesis', 'conclusion')})
    frame = pd.DataFrame(rows, columns=['property', 'k', 'hypothesis', 'conclusion'])
    frame['counterexample'] = frame['hypothesis'].astype(bool) & frame['conclusion'].eq(False)
    frame['k'] = frame['k'].astype('Int64')
    summary = (frame.groupby(['property', 'k'], dropna=False)
               .agg(records=('hypothesis', 'size'),
                    hypothesis=('hypothesis', 'sum'),
                    counterexamples=('counterexample', 'sum'))
               .reset_index())
    return summary
