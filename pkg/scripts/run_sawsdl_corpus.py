#!/usr/bin/env python3
"""Full corpus study: SAWSDL directory -> two networks -> side-by-side table.

Points at a directory tree of .wsdl/.sawsdl files (e.g. an unpacked
SAWSDL-TC1 corpus), extracts the syntactic and semantic dependency
networks, runs the complete metric battery on both giants, and writes
reports, community partitions, dendrograms, degree distributions, and
the comparison table under --out. Exit codes match the CLI contract:
2 for unreadable input, 3 for degenerate analysis.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from wsdepnet.community import dendrogram_csv, partition_csv, walktrap
from wsdepnet.errors import CollectionError, DegenerateAnalysisError
from wsdepnet.matching import MatcherKind
from wsdepnet.model import collection_stats
from wsdepnet.network import build_network, network_summary, save_network
from wsdepnet.powerlaw import degree_distribution_rows
from wsdepnet.report import (
    AnalysisConfig,
    analyze,
    compare,
    comparison_to_json,
    render_comparison_text,
    render_text,
    report_to_json,
)
from wsdepnet.sawsdl import load_sawsdl
from wsdepnet.topology import degree_stats, giant_subnetwork


def run_matcher(collection, kind, config, casefold, out):
    tag = kind.value
    network = build_network(collection, kind, casefold=casefold)
    summary = network_summary(network)
    save_network(network, out / f"{tag}.graphml")

    report = analyze(network, config)
    (out / f"{tag}.report.json").write_text(report_to_json(report), encoding="utf-8")
    (out / f"{tag}.report.txt").write_text(render_text(report), encoding="utf-8")

    giant, _ = giant_subnetwork(network)
    result = walktrap(giant, t=config.walktrap_t)
    (out / f"{tag}.communities.csv").write_text(
        partition_csv(giant, result.partition), encoding="utf-8"
    )
    (out / f"{tag}.dendrogram.csv").write_text(
        dendrogram_csv(result.merges), encoding="utf-8"
    )
    stats = degree_stats(giant)
    for which, series in (
        ("in", stats.in_degrees),
        ("out", stats.out_degrees),
        ("all", stats.total_degrees),
    ):
        rows = ["degree,count,ccdf\n"]
        for degree, count, ccdf in degree_distribution_rows(series):
            rows.append(f"{degree},{count},{ccdf!r}\n")
        (out / f"{tag}.degree-{which}.csv").write_text("".join(rows), encoding="utf-8")

    print(
        f"{report.label}: network {summary.nodes}/{summary.links}, "
        f"giant {giant.node_count}/{giant.link_count}, "
        f"isolated fraction {summary.isolated_fraction:.3f}"
    )
    return report


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("corpus", help="directory of WSDL/SAWSDL descriptions")
    parser.add_argument("--out", default="corpus_out", help="output directory")
    parser.add_argument("--casefold", action="store_true",
                        help="case-insensitive syntactic matching")
    parser.add_argument("--er-samples", type=int, default=100)
    parser.add_argument("--bootstrap", type=int, default=1000)
    parser.add_argument("--walktrap-t", type=int, default=4)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    try:
        collection = load_sawsdl(args.corpus)
    except (CollectionError, OSError) as exc:
        print(f"cannot read corpus: {exc}", file=sys.stderr)
        return 2
    stats = collection_stats(collection)
    print(
        f"corpus: {stats.services} services, {stats.operations} operations, "
        f"{stats.instance_count} parameter instances, "
        f"{stats.distinct_names} distinct names, "
        f"{stats.distinct_concepts} distinct concepts"
    )

    config = AnalysisConfig(
        er_samples=args.er_samples,
        bootstrap_n=args.bootstrap,
        walktrap_t=args.walktrap_t,
        seed=args.seed,
    )
    try:
        syntactic = run_matcher(
            collection, MatcherKind.SYNTACTIC_EQUAL, config, args.casefold, out
        )
        semantic = run_matcher(
            collection, MatcherKind.SEMANTIC_EXACT, config, args.casefold, out
        )
    except DegenerateAnalysisError as exc:
        print(f"degenerate analysis: {exc}", file=sys.stderr)
        return 3

    comparison = compare(syntactic, semantic)
    (out / "comparison.json").write_text(comparison_to_json(comparison), encoding="utf-8")
    text = render_comparison_text(comparison)
    (out / "comparison.txt").write_text(text, encoding="utf-8")
    print()
    print(text, end="")
    print(f"\nartifacts in {out}/")
    return 0


if __name__ == "__main__":
    sys.exit(main())
