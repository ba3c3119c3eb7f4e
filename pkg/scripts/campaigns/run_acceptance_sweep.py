#!/usr/bin/env python3
"""
Acceptance Sweep Script
Antipath Toolkit - oriented graph verification

This script runs the full acceptance campaign set: the exhaustive n = 4 and
n = 5 sweeps of every degree result, the configured sampled observation
sweep, the construction certification and the g(k) sweep. Each campaign
writes its JSON-lines records under the output directory.
"""

import argparse
import logging
import sys
import time
from pathlib import Path
from typing import Any, Dict, List, Tuple

# Add src directory to Python path
sys.path.insert(0, str(Path(__file__).parent.parent.parent / 'src'))

from core.campaign_runner import Campaign, CampaignRunner
from harness import Population, verify_construction_D
from rotation import sweep_g_bound
from toolkit_config import ToolkitConfig, create_toolkit_config

# Setup logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)

# (property, k values, vertex counts)
EXHAUSTIVE_SWEEPS: List[Tuple[str, Tuple[int, ...], Tuple[int, ...]]] = [
    ("theorem-main", (2, 3, 4), (4, 5)),
    ("lemma-basic", (2, 3, 4), (4, 5)),
    ("theorem-ks", (3, 4), (4, 5)),
    ("corollary-size", (2,), (4, 5)),
    ("observation", (), (2, 3, 4)),
    ("stein", (2, 3, 4), (5,)),
]


class AcceptanceSweep:
    """Runs every acceptance campaign and tallies the outcome."""

    def __init__(self, config: ToolkitConfig, out_dir: Path, shards: int, jobs: int, include_n6: bool):
        self.config = config
        self.out_dir = out_dir
        self.out_dir.mkdir(parents=True, exist_ok=True)
        self.shards = shards
        self.jobs = jobs
        self.include_n6 = include_n6
        self.runner = CampaignRunner(
            max_exhaustive_n=config.get('guards', 'max_exhaustive_n', 6),
            max_samples=config.get('guards', 'max_samples', 10_000_000),
            max_stein_k=config.get('guards', 'max_stein_k', 8),
        )

        self.stats: Dict[str, Any] = {
            "campaigns": 0,
            "records": 0,
            "counterexamples": 0,
            "failed_checks": [],
        }

    def _run(self, name: str, campaign: Campaign) -> None:
        summary = self.runner.run(campaign).summary
        self.stats["campaigns"] += 1
        self.stats["records"] += summary.records
        self.stats["counterexamples"] += summary.counterexample_count
        if summary.counterexamples:
            self.stats["failed_checks"].append(name)

    def run_exhaustive(self) -> None:
        sweeps = list(EXHAUSTIVE_SWEEPS)
        if self.include_n6:
            sweeps.append(("theorem-main", (2, 3, 4), (6,)))
        for property_tag, k_values, sizes in sweeps:
            for n in sizes:
                name = f"{property_tag}-n{n}"
                self._run(name, Campaign(
                    property_tag=property_tag,
                    population=Population('exhaustive', n),
                    k_values=k_values,
                    shards=self.shards,
                    jobs=self.jobs,
                    sink=str(self.out_dir / f"{name}.jsonl"),
                ))

    def run_observation_sampling(self) -> None:
        section = 'observation_sampling'
        population = Population(
            'sampled',
            self.config.get(section, 'n_min', 5),
            n_max=self.config.get(section, 'n_max', 12),
            samples=self.config.get(section, 'samples', 10_000),
            seed=self.config.get(section, 'seed', 0),
            p=self.config.get('random_model', 'p', 0.5),
        )
        self._run("observation-sampled", Campaign(
            property_tag='observation',
            population=population,
            shards=self.shards,
            jobs=self.jobs,
            sink=str(self.out_dir / "observation-sampled.jsonl"),
        ))

    def run_certifications(self) -> None:
        report = verify_construction_D(20)
        report.to_json(self.out_dir / "construction-d.jsonl", orient='records', lines=True)
        if not report['passes'].all():
            self.stats["failed_checks"].append("construction-d")
        sweep = sweep_g_bound(10 ** 6)
        if not sweep.passed:
            self.stats["failed_checks"].append("gbound")


def main():
    """Main execution function."""
    parser = argparse.ArgumentParser(description='Run the acceptance campaign set')
    parser.add_argument('--config', help='toolkit configuration YAML')
    parser.add_argument('--out-dir', default='data/records', help='directory for JSON-lines record files')
    parser.add_argument('--shards', type=int, default=4)
    parser.add_argument('--jobs', type=int, default=1)
    parser.add_argument('--include-n6', action='store_true', help='also sweep theorem-main over n = 6')
    args = parser.parse_args()

    try:
        print("🧭 Antipath Toolkit Acceptance Sweep")
        print("=" * 40)
        start_time = time.time()

        sweep = AcceptanceSweep(create_toolkit_config(args.config), Path(args.out_dir),
                                args.shards, args.jobs, args.include_n6)
        sweep.run_exhaustive()
        sweep.run_observation_sampling()
        sweep.run_certifications()

        stats = sweep.stats
        print(f"\n📊 Sweep Statistics:")
        print(f"  Campaigns: {stats['campaigns']}")
        print(f"  Records: {stats['records']}")
        print(f"  Counterexamples: {stats['counterexamples']}")
        print(f"  Elapsed: {time.time() - start_time:.1f}s")

        if stats["failed_checks"]:
            print(f"❌ Failed: {', '.join(stats['failed_checks'])}")
            return 1
        print("✅ Every acceptance campaign passed")
        return 0

    except Exception as e:
        logger.error(f"Acceptance sweep failed: {e}")
        print(f"\n❌ Acceptance sweep failed: {e}")
        return 3


if __name__ == "__main__":
    exit(main())
