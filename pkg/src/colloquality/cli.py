"""Command-line entry point.

Knowledge acquisition runs once (``build-kb``); assessment subcommands
then read corpora and the KB and write TSV to stdout or ``--out``.
Logs go to stderr.  Exit status: 0 ok, 1 data error, 2 usage error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .classify import (
    LABEL_VALUES,
    PRESETS,
    DimensionMismatch,
    LogisticConfig,
    ModelFormatError,
    NonFinite,
    SGDConfig,
    SingleClass,
    TooSmall,
    decision_function,
    fit_bag_of_words,
    fit_logistic,
    load_model,
    save_model,
    tfidf_transform,
    train_test_split,
)
from .knowledge_store import (
    EmptyCorpus,
    FormatError,
    build_kb,
    doc_collocations,
    load_kb,
    save_doc_collocations,
    save_kb,
)
from .pipeline import (
    FEATURE_COLUMNS,
    READABILITY_COLUMNS,
    SCORE_COLUMNS,
    TableError,
    corpus_features,
    corpus_readability,
    corpus_scores,
    feature_rows,
    format_tsv,
    read_column,
    read_features,
    readability_rows,
    score_rows,
)
from .preprocess import LABELS, CorpusError, load_corpus, load_stopwords, normalize, tokenize
from .stats_eval import SingleClass as AUCSingleClass
from .stats_eval import TooFewSamples, one_way_anova, roc_auc, welch_t_test
from .synthetic import write_benchmark

logger = logging.getLogger("colloquality")

DEFAULT_SEED = 42
BOW = "bow"


class UsageError(Exception):
    pass


DATA_ERRORS = (
    AUCSingleClass,
    CorpusError,
    DimensionMismatch,
    EmptyCorpus,
    FormatError,
    ModelFormatError,
    NonFinite,
    SingleClass,
    TableError,
    TooFewSamples,
    TooSmall,
    UnicodeDecodeError,
    OSError,
)


# -- helpers ----------------------------------------------------------------


def _require_dir(path: str) -> Path:
    p = Path(path)
    if not p.is_dir():
        raise UsageError(f"corpus directory not found: {path}")
    return p


def _require_file(path: Optional[str], what: str) -> Optional[Path]:
    if path is None:
        return None
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"{what} not found: {path}")
    return p


def _stopwords(args):
    return load_stopwords(_require_file(args.stopwords, "stopword file")) if args.stopwords else None


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load_docs(args):
    root = _require_dir(args.corpus)
    manifest = _require_file(getattr(args, "manifest", None), "manifest")
    corpus = load_corpus(root, manifest, getattr(args, "label", None))
    if not corpus.documents:
        raise EmptyCorpus(f"no readable .txt documents under {root}")
    return corpus.documents


def _fmt(v: float) -> str:
    return f"{v:.10g}"


# -- subcommands ------------------------------------------------------------


def cmd_build_kb(args) -> int:
    root = _require_dir(args.corpus)
    manifest = _require_file(args.manifest, "manifest")
    if args.min_freq < 1:
        raise UsageError("--min-freq must be at least 1")
    kb = build_kb(root, min_freq=args.min_freq, stopwords=_stopwords(args), manifest=manifest, corpus_name=args.name)
    save_kb(kb, args.out)
    logger.info("wrote %d collocations from %d documents to %s", len(kb), kb.meta.n_documents, args.out)
    return 0


def cmd_readability(args) -> int:
    docs = _load_docs(args)
    reports, _ = corpus_readability(docs, args.jobs)
    _emit(format_tsv(READABILITY_COLUMNS, readability_rows(reports)), args.out)
    return 0


def cmd_score(args) -> int:
    kb_path = _require_file(args.kb, "knowledge base")
    stop = _stopwords(args)
    docs = _load_docs(args)
    kb = load_kb(kb_path)
    _emit(format_tsv(SCORE_COLUMNS, score_rows(corpus_scores(docs, kb, stop, args.jobs))), args.out)
    return 0


def cmd_collocations(args) -> int:
    stop = _stopwords(args)
    docs = _load_docs(args)
    items = sorted((doc_collocations(d, stop) for d in docs), key=lambda dc: dc.doc_id)
    if args.out:
        save_doc_collocations(items, args.out)
    else:
        lines = ["doc_id\tword1\tword2"]
        for dc in items:
            lines.extend(f"{dc.doc_id}\t{a}\t{b}" for a, b in sorted(dc.pairs))
        sys.stdout.write("\n".join(lines) + "\n")
    return 0


def cmd_features(args) -> int:
    kb_path = _require_file(args.kb, "knowledge base")
    stop = _stopwords(args)
    docs = _load_docs(args)
    kb = load_kb(kb_path)
    fvs, _ = corpus_features(docs, kb, stop, args.jobs)
    _emit(format_tsv(FEATURE_COLUMNS, feature_rows(fvs)), args.out)
    return 0


def _read_feature_inputs(paths: Sequence[str]):
    fvs = []
    for p in paths:
        fvs.extend(read_features(_require_file(p, "feature file")))
    seen = set()
    for fv in fvs:
        if fv.doc_id in seen:
            raise TableError(f"duplicate document id {fv.doc_id!r} across feature files")
        seen.add(fv.doc_id)
    return fvs


def _labelled_docs(args):
    if len(args.inputs) != 1:
        raise UsageError("the bow preset takes exactly one corpus directory")
    args.corpus = args.inputs[0]
    docs = _load_docs(args)
    missing = [d.id for d in docs if d.label is None]
    if missing:
        raise CorpusError(f"{len(missing)} documents lack a High/Low label (first: {missing[0]})")
    return sorted(docs, key=lambda d: d.id)


def cmd_train(args) -> int:
    extra = {"preset": args.features, "seed": args.seed, "test_fraction": args.test_fraction, "split": args.split}
    if args.features == BOW:
        stop = _stopwords(args)
        docs = _labelled_docs(args)
        train = train_test_split(docs, args.test_fraction, args.seed)[0] if args.split == "holdout" else docs
        streams = [normalize(tokenize(d.text), stop).tokens for d in train]
        y = [LABEL_VALUES[d.label] for d in train]
        model = fit_bag_of_words(streams, y, SGDConfig(alpha=args.alpha, epochs=args.epochs, seed=args.seed))
    else:
        names = PRESETS[args.features]
        fvs = _read_feature_inputs(args.inputs)
        unlabelled = [f.doc_id for f in fvs if f.label is None]
        if unlabelled:
            raise TableError(f"{len(unlabelled)} rows lack a High/Low label (first: {unlabelled[0]})")
        fvs.sort(key=lambda f: f.doc_id)
        train = train_test_split(fvs, args.test_fraction, args.seed)[0] if args.split == "holdout" else fvs
        model = fit_logistic([f.select(names) for f in train], LogisticConfig(l2=args.l2, max_iters=args.max_iters))
    save_model(model, args.out, extra)
    logger.info("trained %s model (%s) on %d examples -> %s", model.kind, args.features, len(train), args.out)
    return 0


def _evaluate_one(model, header, args):
    preset = header.get("preset", "?")
    split = args.split or ("holdout" if header.get("split") == "holdout" else "all")
    seed = header.get("seed", DEFAULT_SEED)
    frac = header.get("test_fraction", 0.2)
    if preset == BOW or model.vocab is not None:
        docs = _labelled_docs(args)
        items = train_test_split(docs, frac, seed)[1] if split == "holdout" else docs
        stop = _stopwords(args)
        scores = [decision_function(model, tfidf_transform(model.vocab, normalize(tokenize(d.text), stop).tokens)) for d in items]
        labels = [LABEL_VALUES[d.label] for d in items]
    else:
        fvs = sorted(_read_feature_inputs(args.inputs), key=lambda f: f.doc_id)
        if any(f.label is None for f in fvs):
            raise TableError("evaluation rows need High/Low labels")
        items = train_test_split(fvs, frac, seed)[1] if split == "holdout" else fvs
        scores = [decision_function(model, f.select(model.feature_names)) for f in items]
        labels = [f.label for f in items]
    return preset, roc_auc(scores, labels)


def cmd_evaluate(args) -> int:
    lines = ["Classifier based on:\tAUC Result"]
    for path in args.model:
        model, header = load_model(_require_file(path, "model file"))
        preset, report = _evaluate_one(model, header, args)
        logger.info("%s: AUC %.4f on %d positive / %d negative", path, report.auc, report.n_pos, report.n_neg)
        lines.append(f"{preset}\t{report.auc:.4f}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_compare(args) -> int:
    a = read_column(_require_file(args.scores_a, "score file"), args.column)
    b = read_column(_require_file(args.scores_b, "score file"), args.column)
    name_a, name_b = args.names
    res = welch_t_test(a, b, (name_a, name_b))
    ga, gb = res.groups
    rows = [
        ("", name_a, name_b),
        ("Mean", _fmt(ga.mean), _fmt(gb.mean)),
        ("Variance", _fmt(ga.variance), _fmt(gb.variance)),
        ("Std. Deviation", _fmt(ga.stddev), _fmt(gb.stddev)),
        ("Observations", str(ga.n), str(gb.n)),
        ("Hypothesized Mean Diff.", "0"),
        ("df", _fmt(res.df)),
        ("t Stat", _fmt(res.statistic)),
        ("P(T<=t) one-tail", _fmt(res.p_one_tail)),
        ("t Critical one-tail", _fmt(res.crit_one_tail)),
        ("P(T<=t) two-tail", _fmt(res.p_two_tail)),
        ("t Critical two-tail", _fmt(res.crit_two_tail)),
    ]
    _emit("\n".join("\t".join(r) for r in rows) + "\n", args.out)
    return 0


def cmd_anova(args) -> int:
    groups = [read_column(_require_file(p, "score file"), args.column) for p in args.score_files]
    names = [Path(p).stem for p in args.score_files]
    res = one_way_anova(groups, names)
    lines = ["Groups\tCount\tSum\tAverage\tVariance"]
    lines.extend(f"{g.name}\t{g.n}\t{_fmt(g.sum)}\t{_fmt(g.mean)}\t{_fmt(g.variance)}" for g in res.groups)
    df1, df2 = res.df
    lines.append(f"F({int(df1)}, {int(df2)})\t{_fmt(res.statistic)}")
    lines.append(f"p\t{_fmt(res.p_one_tail)}")
    lines.append(f"F crit\t{_fmt(res.crit_one_tail)}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_synth(args) -> int:
    write_benchmark(args.directory)
    logger.info("wrote synthetic benchmark to %s", args.directory)
    return 0


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="colloquality", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def corpus_cmd(name, help_, jobs=True):
        p = sub.add_parser(name, help=help_)
        p.add_argument("corpus", help="directory of UTF-8 .txt files")
        p.add_argument("--manifest", help="TSV of path<TAB>id<TAB>label")
        p.add_argument("--out", help="write TSV here instead of stdout")
        if jobs:
            p.add_argument("--jobs", type=int, default=1, help="worker processes")
        return p

    p = sub.add_parser("build-kb", help="build the collocation knowledge base from a reference corpus")
    p.add_argument("corpus")
    p.add_argument("-o", "--out", required=True, help="KB TSV to write")
    p.add_argument("--min-freq", type=int, default=5)
    p.add_argument("--manifest")
    p.add_argument("--name", help="corpus name recorded in the KB metadata")
    p.add_argument("--stopwords")
    p.set_defaults(func=cmd_build_kb)

    p = corpus_cmd("readability", "seven readability scores and six counts per document")
    p.set_defaults(func=cmd_readability)

    p = corpus_cmd("score", "ADS / ADSn quality scores per document")
    p.add_argument("--kb", required=True)
    p.add_argument("--stopwords")
    p.set_defaults(func=cmd_score)

    p = corpus_cmd("collocations", "distinct normalized bigrams per document", jobs=False)
    p.add_argument("--stopwords")
    p.set_defaults(func=cmd_collocations)

    p = corpus_cmd("features", "all classifier features per document")
    p.add_argument("--kb", required=True)
    p.add_argument("--label", choices=LABELS, help="label every document (no manifest)")
    p.add_argument("--stopwords")
    p.set_defaults(func=cmd_features)

    p = sub.add_parser("train", help="fit a classifier")
    p.add_argument("inputs", nargs="+", help="feature TSVs, or one corpus directory for --features bow")
    p.add_argument("--features", required=True, choices=list(PRESETS) + [BOW])
    p.add_argument("-o", "--out", required=True, help="model TSV to write")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--test-fraction", type=float, default=0.2)
    p.add_argument("--split", choices=("holdout", "none"), default="holdout",
                   help="train on the seeded train split, or on all inputs")
    p.add_argument("--manifest", help="labels for --features bow")
    p.add_argument("--stopwords")
    p.add_argument("--l2", type=float, default=1e-4)
    p.add_argument("--max-iters", type=int, default=5000)
    p.add_argument("--alpha", type=float, default=1e-4)
    p.add_argument("--epochs", type=int, default=20)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("evaluate", help="AUC of trained models")
    p.add_argument("inputs", nargs="+", help="feature TSVs, or one corpus directory for bow models")
    p.add_argument("--model", action="append", required=True, help="model TSV (repeatable)")
    p.add_argument("--split", choices=("holdout", "all"),
                   help="evaluate on the held-out split recorded in the model, or on all inputs")
    p.add_argument("--manifest")
    p.add_argument("--stopwords")
    p.add_argument("--out")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("compare", help="Welch t-test between two score files")
    p.add_argument("scores_a")
    p.add_argument("scores_b")
    p.add_argument("--column", default="ads")
    p.add_argument("--names", nargs=2, default=("A", "B"), metavar=("NAME_A", "NAME_B"))
    p.add_argument("--out")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("anova", help="one-way ANOVA across score files")
    p.add_argument("score_files", nargs="+")
    p.add_argument("--column", default="ads")
    p.add_argument("--out")
    p.set_defaults(func=cmd_anova)

    p = sub.add_parser("synth", help="write the synthetic benchmark corpus")
    p.add_argument("directory")
    p.set_defaults(func=cmd_synth)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (*DATA_ERRORS, ValueError) as exc:
        print(f"{parser.prog} {args.command}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
