"""Sweep epsilon on the synthetic clustered document and print the graph
topology at each threshold.

    python scripts/small_world_transition.py --epsilons 0:1:0.05
"""
import argparse
import csv
import sys

from swsumm.cli import parse_range
from swsumm.graph import build_graph
from swsumm.meaning import build_meaning_table
from swsumm.synthetic import clustered_document
from swsumm.topology import TopologyReport, small_world_report


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--epsilons", default="0:1:0.1")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--paragraphs", type=int, default=10)
    ap.add_argument("--paragraph-size", type=int, default=10)
    args = ap.parse_args(argv)

    doc = clustered_document(n_paragraphs=args.paragraphs, paragraph_size=args.paragraph_size,
                             seed=args.seed)
    table = build_meaning_table(doc, 0.0)
    out = csv.writer(sys.stdout)
    out.writerow(["epsilon", "meaningful"] + list(TopologyReport.CSV_FIELDS))
    for eps in parse_range(args.epsilons):
        meaningful = table.meaningful_set(eps)
        report = small_world_report(build_graph(doc, meaningful))
        out.writerow([f"{eps:g}", len(meaningful)] + report.csv_row())
    return 0


if __name__ == "__main__":
    sys.exit(main())
