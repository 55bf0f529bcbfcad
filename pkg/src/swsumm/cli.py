"""Command-line interface.

    swsumm summarize --input doc.json [--epsilon 0.3] [--rate 0.3] [--explain --output out.txt]
    swsumm sweep     --corpus docs/ --models abstracts/ --epsilons 0.1:0.8:0.1
    swsumm evaluate  --corpus summaries/ --models abstracts/
    swsumm compare   --a scores_a.csv --b scores_b.csv --metric rouge2_r
    swsumm topology  --input doc.json --epsilon 0.3 [--format csv]

Data files never contain timestamps; identical inputs give byte-identical
outputs.  Diagnostics go to stderr.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, fields
from decimal import Decimal, InvalidOperation
from pathlib import Path

from .errors import SummarizerError
from .graph import export_dot, graph_to_json_text, SentenceGraph
from .meaning import build_meaning_table
from .pipeline import RunConfig, read_document, summarize_table
from .rouge import score_summary
from .stats import wilcoxon_signed_rank
from .topology import TopologyReport, small_world_report

logger = logging.getLogger("swsumm")

EXIT_OK, EXIT_ERROR, EXIT_USAGE = 0, 1, 2

SCORE_FIELDS = ["rouge2_r", "rouge2_p", "rouge2_f", "rougesu4_r", "rougesu4_p", "rougesu4_f"]
SWEEP_FIELDS = ["epsilon", "n_docs", "rouge2", "rougesu4", "summary_sentences", "edges",
                "char_path_length", "mean_clustering", "transitivity", "sigma",
                "small_world_fraction"]
PER_DOC_FIELDS = ["doc_id", "epsilon", "rouge2", "rougesu4", "summary_sentences", "meaningful",
                  "edges", "char_path_length", "mean_clustering", "transitivity", "sigma",
                  "regime"]


class UsageError(Exception):
    """Bad invocation or missing input file (exit code 2)."""


def fmt(x) -> str:
    if isinstance(x, float):
        return "" if math.isnan(x) else f"{x:.6f}"
    return str(x)


def parse_range(spec: str) -> list:
    """``start:end:step`` inclusive of both ends (1e-9 tolerance), or a comma list."""
    try:
        if ":" not in spec:
            return [float(Decimal(s)) for s in spec.split(",") if s.strip()]
        start, end, step = (Decimal(p) for p in spec.split(":"))
    except (InvalidOperation, ValueError):
        raise UsageError(f"bad range spec {spec!r}; expected start:end:step") from None
    if step <= 0:
        raise UsageError("range step must be positive")
    out = []
    value = start
    while value <= end + Decimal("1e-9"):
        out.append(float(value))
        value += step
    return out


def _write(path, text: str):
    if path is None or str(path) == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(x) for x in row])
    return buf.getvalue()


def _require_file(path, what="input"):
    if path is None:
        raise UsageError(f"--{what} is required")
    p = Path(path)
    if not p.exists():
        raise UsageError(f"{what} not found: {p}")
    return p


def _config(args) -> RunConfig:
    """Defaults, overridden by --config JSON, overridden by explicit flags."""
    cfg = RunConfig()
    known = {f.name for f in fields(RunConfig)}
    if getattr(args, "config", None):
        data = json.loads(_require_file(args.config, "config").read_text(encoding="utf-8"))
        for key, value in data.items():
            key = {"rate": "compression_rate"}.get(key, key)
            if key not in known:
                raise UsageError(f"unknown config key {key!r}")
            setattr(cfg, key, value)
    flag_map = {"epsilon": "epsilon", "rate": "compression_rate", "surrogate": "surrogate",
                "stem": "stem", "remove_stopwords": "remove_stopwords",
                "aggregate": "aggregate", "jobs": "jobs"}
    for flag, key in flag_map.items():
        value = getattr(args, flag, None)
        if value is not None:
            setattr(cfg, key, value)
    return cfg


# -- summarize -------------------------------------------------------------

def cmd_summarize(args) -> int:
    cfg = _config(args)
    path = _require_file(args.input)
    doc = read_document(path, cfg.surrogate, cfg.generic_types)
    table = build_meaning_table(doc, cfg.epsilon, jobs=cfg.jobs)
    run = summarize_table(doc, table, cfg.compression_rate)
    _write(args.output, run.text + "\n")
    logger.info("%s: %d of %d sentences, %d meaningful concepts, %d edges",
                doc.id, len(run.summary.selected), doc.n, len(table.meaningful),
                run.graph.edge_count)

    meaning_json = json.dumps(table.to_json(), indent=1) + "\n"
    if args.dump_meaning:
        _write(args.dump_meaning, meaning_json)
    if args.graph_out:
        kind = args.format or ("json" if args.graph_out.endswith(".json") else "dot")
        _write(args.graph_out, graph_to_json_text(run.graph) + "\n" if kind == "json"
               else export_dot(run.graph, doc.id))
    if args.explain:
        if args.output in (None, "-"):
            raise UsageError("--explain needs --output to name the side files")
        base = Path(args.output)
        base.with_suffix(".meaning.json").write_text(meaning_json, encoding="utf-8")
        base.with_suffix(".graph.dot").write_text(export_dot(run.graph, doc.id), encoding="utf-8")
        base.with_suffix(".graph.json").write_text(graph_to_json_text(run.graph) + "\n",
                                                   encoding="utf-8")
    return EXIT_OK


# -- sweep -----------------------------------------------------------------

def _corpus_documents(corpus: Path) -> dict:
    docs = {}
    for p in sorted(corpus.iterdir()):
        if p.suffix.lower() == ".json":
            docs[p.stem] = p
        elif p.suffix.lower() == ".txt":
            docs.setdefault(p.stem, p)
    return docs


def _sweep_document(path, model_text, epsilons, cfg: RunConfig) -> list:
    doc = read_document(path, cfg.surrogate, cfg.generic_types)
    base = build_meaning_table(doc, epsilons[0])
    rows = []
    for eps in epsilons:
        table = base.with_epsilon(eps)
        run = summarize_table(doc, table, cfg.compression_rate)
        r2, su4 = score_summary(run.text, model_text, cfg.stem, cfg.remove_stopwords)
        topo = small_world_report(run.graph) if doc.n >= 3 else None
        rows.append({
            "doc_id": doc.id, "epsilon": eps,
            "rouge2": r2.get(cfg.aggregate), "rougesu4": su4.get(cfg.aggregate),
            "summary_sentences": len(run.summary.selected),
            "meaningful": len(table.meaningful),
            "edges": run.graph.edge_count,
            "char_path_length": topo.char_path_length if topo else math.nan,
            "mean_clustering": topo.mean_clustering if topo else math.nan,
            "transitivity": topo.transitivity if topo else math.nan,
            "sigma": topo.sigma if topo else math.nan,
            "regime": topo.regime if topo else "",
        })
    return rows


def _mean(values):
    values = [v for v in values if not (isinstance(v, float) and math.isnan(v))]
    return math.fsum(values) / len(values) if values else math.nan


def cmd_sweep(args) -> int:
    cfg = _config(args)
    corpus = _require_file(args.corpus, "corpus")
    models = _require_file(args.models, "models")
    epsilons = parse_range(args.epsilons)
    if not epsilons:
        raise UsageError("no epsilon values")

    jobs = []
    for stem, path in _corpus_documents(corpus).items():
        model = models / f"{stem}.txt"
        if not model.exists():
            logger.warning("skipping %s: no model summary %s", path.name, model.name)
            continue
        jobs.append((path, model.read_text(encoding="utf-8")))
    if not jobs:
        logger.error("no corpus document has a matching model summary")
        return EXIT_ERROR

    def work(job):
        try:
            return _sweep_document(job[0], job[1], epsilons, cfg)
        except SummarizerError as exc:
            logger.warning("skipping %s: %s", job[0].name, exc)
            return []

    with ThreadPoolExecutor(max_workers=max(1, cfg.jobs)) as pool:
        per_doc = [r for rows in pool.map(work, jobs) for r in rows]
    if not per_doc:
        logger.error("every matched document failed")
        return EXIT_ERROR
    per_doc.sort(key=lambda r: (r["doc_id"], r["epsilon"]))

    table = []
    for eps in epsilons:
        rows = [r for r in per_doc if r["epsilon"] == eps]
        topo_rows = [r for r in rows if r["regime"]]
        table.append([
            eps, len(rows),
            _mean([r["rouge2"] for r in rows]), _mean([r["rougesu4"] for r in rows]),
            _mean([r["summary_sentences"] for r in rows]), _mean([r["edges"] for r in rows]),
            _mean([r["char_path_length"] for r in rows]),
            _mean([r["mean_clustering"] for r in rows]),
            _mean([r["transitivity"] for r in rows]),
            _mean([r["sigma"] for r in rows]),
            (sum(r["regime"] == "small_world" for r in topo_rows) / len(topo_rows)
             if topo_rows else math.nan),
        ])
    _write(args.output, _csv_text(SWEEP_FIELDS, table))
    if args.per_doc:
        _write(args.per_doc, _csv_text(PER_DOC_FIELDS,
                                       ([r[f] for f in PER_DOC_FIELDS] for r in per_doc)))
    return EXIT_OK


# -- evaluate / compare / topology -------------------------------------------

def _score_row(doc_id, candidate, reference, cfg) -> list:
    r2, su4 = score_summary(candidate, reference, cfg.stem, cfg.remove_stopwords)
    return [doc_id, r2.recall, r2.precision, r2.f1, su4.recall, su4.precision, su4.f1]


def cmd_evaluate(args) -> int:
    cfg = _config(args)
    models = _require_file(args.models, "models")
    pairs = []
    if args.input:
        cand = _require_file(args.input)
        ref = models if models.is_file() else models / f"{cand.stem}.txt"
        pairs.append((cand.stem, cand, _require_file(ref, "models")))
    else:
        corpus = _require_file(args.corpus, "corpus")
        for cand in sorted(corpus.glob("*.txt")):
            ref = models / f"{cand.stem}.txt"
            if ref.exists():
                pairs.append((cand.stem, cand, ref))
            else:
                logger.warning("skipping %s: no model summary", cand.name)
    if not pairs:
        logger.error("nothing to evaluate")
        return EXIT_ERROR

    def work(p):
        return _score_row(p[0], p[1].read_text(encoding="utf-8"),
                          p[2].read_text(encoding="utf-8"), cfg)

    with ThreadPoolExecutor(max_workers=max(1, cfg.jobs)) as pool:
        rows = sorted(pool.map(work, pairs), key=lambda r: r[0])
    mean = ["MEAN"] + [_mean([r[i] for r in rows]) for i in range(1, 7)]
    _write(args.output, _csv_text(["doc_id"] + SCORE_FIELDS, rows + [mean]))
    return EXIT_OK


def read_scores(path, metric: str) -> dict:
    with open(_require_file(path, "scores"), newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if metric not in (reader.fieldnames or []):
            raise UsageError(f"{path}: no column {metric!r}")
        return {row["doc_id"]: float(row[metric]) for row in reader if row["doc_id"] != "MEAN"}


def cmd_compare(args) -> int:
    a = read_scores(args.a, args.metric)
    b = read_scores(args.b, args.metric)
    common = sorted(set(a) & set(b))
    if not common:
        logger.error("score files share no document id")
        return EXIT_ERROR
    for missing in sorted(set(a) ^ set(b)):
        logger.warning("document %s is scored by only one system", missing)
    result = wilcoxon_signed_rank([(a[d], b[d]) for d in common], zero_method=args.zero_method)
    out = asdict(result)
    out.update({"metric": args.metric, "mean_a": _mean([a[d] for d in common]),
                "mean_b": _mean([b[d] for d in common])})
    _write(args.output, json.dumps(out, indent=1) + "\n")
    return EXIT_OK


def cmd_topology(args) -> int:
    cfg = _config(args)
    path = _require_file(args.input)
    graph = None
    if path.suffix.lower() == ".json":
        data = json.loads(path.read_text(encoding="utf-8"))
        if "edges" in data:
            graph = SentenceGraph.from_json(data)
    if graph is None:
        doc = read_document(path, cfg.surrogate, cfg.generic_types)
        run = summarize_table(doc, build_meaning_table(doc, cfg.epsilon), cfg.compression_rate)
        graph = run.graph
    report = small_world_report(graph)
    if args.format == "csv":
        _write(args.output, _csv_text(TopologyReport.CSV_FIELDS, [report.csv_row()]))
    else:
        _write(args.output, json.dumps(report.to_json(), indent=1) + "\n")
    return EXIT_OK


# -- argument parsing --------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="swsumm", description=__doc__.split("\n\n")[0],
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    verbose = argparse.ArgumentParser(add_help=False)
    verbose.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)

    def common(p, pipeline=True, rouge=False):
        p.add_argument("--config", help="JSON file mirroring the flags; flags win")
        p.add_argument("--output", "-o", help="output file (default stdout)")
        p.add_argument("--jobs", type=int, default=None, help="worker threads")
        if pipeline:
            p.add_argument("--epsilon", type=float, default=None)
            p.add_argument("--rate", type=float, default=None, help="compression rate")
            p.add_argument("--surrogate", action="store_true", default=None,
                           help="annotate plain text with content words as concepts")
        if rouge:
            p.add_argument("--stem", action=argparse.BooleanOptionalAction, default=None)
            p.add_argument("--remove-stopwords", action="store_true", default=None)
            p.add_argument("--aggregate", choices=["recall", "f1"], default=None)

    p = sub.add_parser("summarize", parents=[verbose], help="summarize one document")
    common(p)
    p.add_argument("--input", "-i")
    p.add_argument("--explain", action="store_true",
                   help="write <output>.meaning.json, .graph.dot and .graph.json")
    p.add_argument("--dump-meaning", metavar="PATH")
    p.add_argument("--graph-out", metavar="PATH")
    p.add_argument("--format", choices=["json", "dot"])
    p.set_defaults(func=cmd_summarize)

    p = sub.add_parser("sweep", parents=[verbose], help="ROUGE and topology means over a range of epsilon")
    common(p, rouge=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--models", required=True)
    p.add_argument("--epsilons", default="0.1:0.8:0.1")
    p.add_argument("--per-doc", metavar="PATH", help="also write per-document rows")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("evaluate", parents=[verbose], help="ROUGE-2 / ROUGE-SU4 of summaries against models")
    common(p, pipeline=False, rouge=True)
    p.add_argument("--input", "-i", help="a single summary file")
    p.add_argument("--corpus", help="directory of summaries (<id>.txt)")
    p.add_argument("--models", required=True, help="model summary file or directory")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("compare", parents=[verbose], help="Wilcoxon signed-rank test between two score files")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--metric", default="rouge2_r", choices=SCORE_FIELDS)
    p.add_argument("--zero-method", choices=["wilcox", "pratt"], default="wilcox")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("topology", parents=[verbose], help="small-world report for a document's graph")
    common(p)
    p.add_argument("--input", "-i", help="document, or graph JSON with an 'edges' list")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_topology)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"swsumm: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SummarizerError, ValueError, OSError) as exc:
        print(f"swsumm: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
