#!/usr/bin/env python3
"""
Record Summary Script
Antipath Toolkit - oriented graph verification

Prints per-(property, k) counts for one or more JSON-lines record files and
lists every counterexample with the code needed to replay it via
`cli.py solve --code N:TRIT`.
"""

import argparse
import json
import logging
import sys
from pathlib import Path

import pandas as pd

# Add src directory to Python path
sys.path.insert(0, str(Path(__file__).parent.parent.parent / 'src'))

from core.campaign_runner import summarize_records
from harness import VerificationRecord, witness_revalidates

# Setup logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)


def list_counterexamples(path: str) -> list:
    """Counterexample records of one file, each with a revalidation flag."""
    found = []
    with open(path, 'r', encoding='utf-8') as file:
        for line in file:
            if not line.strip():
                continue
            record = VerificationRecord.from_dict(json.loads(line))
            if record.is_counterexample:
                found.append((record, witness_revalidates(record)))
    return found


def main():
    """Main execution function."""
    parser = argparse.ArgumentParser(description='Summarize JSON-lines verification records')
    parser.add_argument('paths', nargs='+', help='record files')
    parser.add_argument('--csv', help='also write the summary table to this CSV file')
    args = parser.parse_args()

    try:
        frames = []
        for path in args.paths:
            frame = summarize_records(path)
            frame.insert(0, 'file', Path(path).name)
            frames.append(frame)
        summary = pd.concat(frames, ignore_index=True)

        print("📊 Record Summary")
        print("=" * 40)
        print(summary.to_string(index=False))
        if args.csv:
            summary.to_csv(args.csv, index=False)
            logger.info(f"Summary written to {args.csv}")

        total = int(summary['counterexamples'].sum())
        if total == 0:
            print("\n✅ No counterexamples")
            return 0

        print(f"\n❌ {total} counterexamples:")
        for path in args.paths:
            for record, revalidated in list_counterexamples(path):
                print(f"  {record.property_tag} k={record.k} code {record.n}:{record.code} "
                      f"strategy={record.strategy} witness_ok={revalidated}")
        return 1

    except (OSError, ValueError) as e:
        logger.error(f"Summary failed: {e}")
        print(f"\n❌ Summary failed: {e}")
        return 3


if __name__ == "__main__":
    exit(main())
