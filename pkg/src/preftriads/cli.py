"""Command-line interface.

Exit codes: 0 success, 1 runtime or data failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import analysis, counting, dataset, graph, svg, triads
from .perm import AlternativeAlphabet, OrderingParseError, parse_ordering

EXIT_OK, EXIT_FAILURE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _parse_triad(texts: list[str]):
    if len(texts) != 3:
        raise UsageError(f"classify needs exactly 3 orderings, got {len(texts)}")
    try:
        return triads.make_triad(*texts), None
    except (OrderingParseError, ValueError):
        pass
    first = [t.strip() for t in texts[0].split(">")] if ">" in texts[0] else list(texts[0])
    try:
        alphabet = AlternativeAlphabet(tuple(sorted(first)))
        return tuple(parse_ordering(t, alphabet) for t in texts), alphabet
    except (OrderingParseError, ValueError) as exc:
        raise UsageError(str(exc)) from None


def cmd_count(args) -> int:
    if not 2 <= args.n_min <= args.n_max:
        raise UsageError(f"need 2 <= n_min <= n_max, got {args.n_min} {args.n_max}")
    rows = counting.count_table(args.n_min, args.n_max)
    if args.verify:
        for row in rows:
            if row["n"] <= 4:
                found = triads.enumerate_classes(row["n"]).num_classes
                row["brute_force"] = found
                row["agrees"] = found == row["classes"]
    if args.format == "json":
        print(json.dumps(rows, indent=2))
    else:
        cols = list(rows[0]) if not args.verify else ["n", "n_factorial", "order3", "classes", "brute_force", "agrees"]
        print(",".join(cols))
        for row in rows:
            print(",".join(str(row.get(c, "")) for c in cols))
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "class_counts.csv").write_text(counting.count_table_csv(args.n_min, args.n_max), encoding="utf-8")
    if args.verify and not all(r.get("agrees", True) for r in rows):
        return EXIT_FAILURE
    return EXIT_OK


def cmd_classify(args) -> int:
    t, alphabet = _parse_triad(args.orderings)
    canon = triads.canonicalize(t)
    desc = triads.describe_class(t)
    result = {
        "canonical": triads.format_triad(canon, alphabet=alphabet),
        "identical_pairs": desc.identical_pairs,
        "shared_top": desc.shared_top,
        "pairwise_distances": list(desc.pairwise_distances),
    }
    if t[0].n == 3:
        result = {"class": triads.classify3(t), **result}
        cid = result["class"]
        table = triads.class_table3()
        result["orbit_size_36"] = table.sizes_fixed[cid]
        result["orbit_size_216"] = table.size_full(cid)
    if args.format == "json":
        print(json.dumps(result, indent=2))
    else:
        for key, value in result.items():
            print(f"{key}: {value}")
    return EXIT_OK


def cmd_class_table(args) -> int:
    if args.n < 2:
        raise UsageError("n must be at least 2")
    table = triads.class_table3() if args.n == 3 else triads.enumerate_classes(args.n, budget=args.budget)
    text = table.to_csv()
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / f"class_table_n{args.n}.csv").write_text(text, encoding="utf-8")
    sys.stdout.write(text)
    return EXIT_OK


def cmd_rewire(args) -> int:
    g, ingest = graph.read_edge_list(args.edges)
    swaps = args.swaps if args.swaps is not None else graph.default_swaps(g, args.swap_multiplier)
    out_path = Path(args.output) if args.output else Path(args.out or ".") / "rewired_edges.txt"
    out_path.parent.mkdir(parents=True, exist_ok=True)
    before = graph.closed_triangle_fraction(g)
    status = EXIT_OK
    try:
        h, rep = graph.rewire(g, swaps, seed=args.seed)
    except graph.RewireSaturationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        h, rep = exc.graph, exc.report
        status = EXIT_FAILURE
    graph.write_edge_list(h, out_path, header=f"rewired with seed {args.seed}, {rep.successful} swaps")
    preserved = graph.degree_sequence(h) == graph.degree_sequence(g)
    print(f"nodes: {g.node_count}  edges: {g.edge_count}")
    print(f"loops dropped: {ingest.loops_dropped}  duplicates merged: {ingest.duplicates_merged}")
    print(f"swaps requested: {rep.requested}  successful: {rep.successful}")
    print(f"attempts: {rep.attempts}  rejections: {rep.rejections}")
    print(f"degree sequence preserved: {'yes' if preserved else 'NO'}")
    print(f"closed triangle fraction: {before:.4f} -> {graph.closed_triangle_fraction(h):.4f}")
    print(f"changed edges: {len(set(g.edges()) - set(h.edges()))}")
    print(f"wrote {out_path}")
    return status


def cmd_gen_synth(args) -> int:
    if args.nodes < 3:
        raise UsageError("need at least 3 nodes")
    if not 0.0 <= args.skew <= 1.0:
        raise UsageError("skew must be in [0, 1]")
    out = Path(args.out or "synthetic")
    out.mkdir(parents=True, exist_ok=True)
    labels = [node % args.communities for node in range(args.nodes)]
    ds = dataset.generate_synthetic_dataset(
        args.nodes, args.topics, seed=[args.seed, 0], skew=args.skew,
        communities=labels if args.communities > 1 else None,
    )
    edge_count = int(round(args.mean_degree * args.nodes / 2))
    if args.communities > 1:
        g = graph.planted_partition_graph(labels, edge_count, args.intra, seed=[args.seed, 1])
    else:
        g = graph.gnm_random_graph(args.nodes, edge_count, seed=[args.seed, 1])
    dataset.save_dataset(ds, out / "preferences.csv", out / "topics.csv")
    graph.write_edge_list(g, out / "edges.txt", header=f"synthetic graph, seed {args.seed}")
    print(f"nodes: {args.nodes}  topics: {args.topics}  edges: {g.edge_count}  triangles: {graph.triangle_count(g)}")
    print(f"wrote {out / 'preferences.csv'}, {out / 'topics.csv'}, {out / 'edges.txt'}")
    return EXIT_OK


def cmd_analyze(args) -> int:
    if args.replicates < 1:
        raise UsageError("need at least one replicate")
    g, _ = graph.read_edge_list(args.edges)
    ds = dataset.load_dataset(args.prefs, args.topics, drop_incomplete=args.drop_incomplete)
    cfg = analysis.ExperimentConfig(
        replicates=args.replicates, mode=args.mode, seed=args.seed,
        swap_multiplier=args.swap_multiplier, swaps=args.swaps,
    )
    report = analysis.run_experiment(ds, g, cfg)
    out = Path(args.out or "analysis")
    out.mkdir(parents=True, exist_ok=True)
    formats = set(args.format.split(",")) if args.format != "text" else {"json", "csv", "svg"}
    if "json" in formats:
        (out / "report.json").write_text(analysis.report_to_json(report), encoding="utf-8")
    for entry in report["entries"]:
        stem = f"set{entry['set_index']:02d}"
        if "csv" in formats and "error" not in entry:
            (out / f"{stem}_histogram.csv").write_text(analysis.histogram_csv(entry), encoding="utf-8")
        if "svg" in formats and "error" not in entry:
            obs = entry["observed_histogram"]["frequencies"]
            reps = [
                [c / r["total"] if r["total"] else 0.0 for c in r["counts"]] for r in entry["ensemble"]
            ]
            title = f"{entry['topic']}: {', '.join(entry['subset'])}"
            (out / f"{stem}_histogram.svg").write_text(svg.grouped_bars(obs, reps, title), encoding="utf-8")
    net = report["network"]
    print(f"network: {net['nodes']} nodes, {net['edges']} edges, {net['triangles']} triangles, "
          f"closed triangle fraction {net['closed_triangle_fraction']:.4f}")
    print(f"{'set':>3}  {'topic':<24} {'items':<48} {'tri':>6} {'TV':>7} {'p':>6}")
    failures = 0
    for entry in report["entries"]:
        items = ", ".join(entry["subset"])[:48]
        if "error" in entry:
            failures += 1
            print(f"{entry['set_index']:>3}  {entry['topic'][:24]:<24} {items:<48} error: {entry['error']}")
            continue
        comp = entry["comparison"]
        tv = f"{comp['total_variation']:.4f}" if comp else "-"
        p = f"{comp['p_value']:.3f}" if comp else "-"
        print(f"{entry['set_index']:>3}  {entry['topic'][:24]:<24} {items:<48} "
              f"{entry['observed_histogram']['total']:>6} {tv:>7} {p:>6}")
    print(f"wrote results to {out}")
    return EXIT_FAILURE if failures else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=analysis.DEFAULT_SEED,
                        help=f"random seed (default {analysis.DEFAULT_SEED})")
    common.add_argument("--out", help="output directory")
    common.add_argument("--format", default="text", help="text, json, or for analyze a list of json,csv,svg")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="preftriads", description="Preference triad classes and network census."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common], help="closed-form class counts for a range of n")
    p.add_argument("n_min", type=int)
    p.add_argument("n_max", type=int)
    p.add_argument("--verify", action="store_true", help="brute-force check for n <= 4")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("classify", parents=[common], help="class, canonical form and descriptor of a triad")
    p.add_argument("orderings", nargs="+")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("class-table", parents=[common], help="export the class table as CSV")
    p.add_argument("-n", type=int, default=3)
    p.add_argument("--budget", type=int, default=None, help="max triads to canonicalize")
    p.set_defaults(func=cmd_class_table)

    p = sub.add_parser("rewire", parents=[common], help="degree-preserving rewiring of an edge list")
    p.add_argument("edges")
    p.add_argument("--swaps", type=int, default=None, help="successful swaps (default 10 x edges)")
    p.add_argument("--swap-multiplier", type=int, default=graph.DEFAULT_SWAP_MULTIPLIER)
    p.add_argument("-o", "--output", help="output edge list path")
    p.set_defaults(func=cmd_rewire)

    p = sub.add_parser("gen-synth", parents=[common], help="write a synthetic dataset and graph")
    p.add_argument("nodes", type=int)
    p.add_argument("topics", type=int, nargs="?", default=8)
    p.add_argument("--skew", type=float, default=0.0)
    p.add_argument("--mean-degree", type=float, default=2 * 6129 / 844)
    p.add_argument("--communities", type=int, default=1)
    p.add_argument("--intra", type=float, default=0.9, help="share of edges inside communities")
    p.set_defaults(func=cmd_gen_synth)

    p = sub.add_parser("analyze", parents=[common], help="census vs null ensemble for every preference set")
    p.add_argument("edges")
    p.add_argument("prefs")
    p.add_argument("topics")
    p.add_argument("--replicates", type=int, default=10)
    p.add_argument("--mode", choices=analysis.MODES, default="rewire+resample")
    p.add_argument("--swaps", type=int, default=None)
    p.add_argument("--swap-multiplier", type=int, default=graph.DEFAULT_SWAP_MULTIPLIER)
    p.add_argument("--drop-incomplete", action="store_true")
    p.set_defaults(func=cmd_analyze)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ValueError, dataset.DatasetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
