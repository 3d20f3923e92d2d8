"""Command-line entry point: ``cswaug <subcommand> ...``.

Data goes to stdout (or ``--out``); diagnostics go to stderr. Failures print a
single JSON line ``{"error": CODE, "message": ...}`` on stderr and exit
nonzero. Path arguments of the form ``@name`` refer to bundled data files.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import tomli

from . import data_path
from ._util import as_fraction
from .agreement import (
    Dimension,
    default_bins,
    fleiss_kappa,
    fleiss_table,
    load_ratings,
    mos,
    mos_histogram,
    pairwise_cohen,
)
from .align import DEFAULT_MAX_LEN, SegmentPair, is_consistent
from .augmentation import Augmentation, read_augmentations, write_augmentations
from .btselect import DEFAULT_K, load_nbest, select_csw, selection_stats
from .corpus import (
    Corpus,
    Norm,
    append_target_target,
    intersect_augmented,
    load_parallel,
    normalize,
    read_tsv,
    sample_subset,
    write_tsv,
)
from .errors import CswError, UsageError
from .langid import is_csw
from .lexrep import DEFAULT_PERCENT, GlossLexicon, lex_dict, lex_pred, lex_rand_segment, lex_rand_word, load_labels, write_labels
from .metrics import corpus_stats
from .tagger import tag_corpus
from .theories import (
    CLOSED_CLASS_TAGS,
    DEFAULT_MAX_CANDIDATES,
    DEFAULT_SPF_REFERENCE,
    SPFReference,
    generate_ec,
    generate_mlf,
    is_complete,
    load_closed_class,
    sample_random,
    sample_spf,
    validate_ec,
    validate_mlf,
    write_generations,
)

log = logging.getLogger("cswaug")

EXIT_CODES = {
    "E_ARGS": 2,
    "E_USAGE": 3,
    "E_IO": 4,
    "E_FORMAT": 5,
    "E_STRUCTURE": 6,
    "E_CONFIG": 7,
    "E_VALIDATION": 8,
    "E_GENERIC": 1,
}


class ArgsError(CswError):
    code = "E_ARGS"


class ConfigError(CswError):
    code = "E_CONFIG"


class ValidationError(CswError):
    code = "E_VALIDATION"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ArgsError(f"{self.prog}: {message}")


def _path(value: str) -> Path:
    if value.startswith("@"):
        return data_path(value[1:])
    return Path(value)


# ------------------------------------------------------------------ augment

TECHNIQUES = ("dict", "rand-word", "rand-seg", "pred", "ec", "ml")


@dataclass
class AugmentOptions:
    technique: str
    sampling: str = "random"
    k: int = 1
    percent: object = DEFAULT_PERCENT
    spf_ref: object = DEFAULT_SPF_REFERENCE
    seed: int = 0
    max_len: int = DEFAULT_MAX_LEN
    max_candidates: int = DEFAULT_MAX_CANDIDATES
    closed_tags: frozenset = CLOSED_CLASS_TAGS
    lexicon: GlossLexicon | None = None
    labels: dict = field(default_factory=dict)


def augment_sentence(sentence, opts: AugmentOptions) -> list[Augmentation]:
    t = opts.technique
    if t == "dict":
        result = lex_dict(sentence, opts.lexicon, opts.percent, opts.seed)
    elif t == "rand-word":
        result = lex_rand_word(sentence, opts.percent, opts.seed)
    elif t == "rand-seg":
        result = lex_rand_segment(sentence, opts.percent, opts.seed, opts.max_len)
    elif t == "pred":
        labels = opts.labels.get(sentence.id)
        if labels is None:
            return []
        result = lex_pred(sentence, labels, opts.max_len)
    elif t in ("ec", "ml"):
        if t == "ec":
            gens = generate_ec(sentence, opts.max_candidates, opts.max_len)
        else:
            gens = generate_mlf(sentence, opts.max_candidates, opts.max_len, opts.closed_tags)
        if opts.sampling == "spf":
            return sample_spf(gens, opts.k, SPFReference(opts.spf_ref))
        return sample_random(gens, opts.k, opts.seed)
    else:
        raise UsageError(f"unknown technique {t!r}")
    return [result] if result is not None else []


_WORKER_OPTS: AugmentOptions | None = None


def _init_worker(opts: AugmentOptions) -> None:
    global _WORKER_OPTS
    _WORKER_OPTS = opts


def _worker(sentence) -> list[Augmentation]:
    return augment_sentence(sentence, _WORKER_OPTS)


def run_augment(corpus: Corpus, opts: AugmentOptions, jobs: int = 1) -> list[Augmentation]:
    """Augment every sentence; output follows input order whatever ``jobs`` is."""
    if jobs <= 1 or len(corpus) < 2:
        per_sentence = [augment_sentence(s, opts) for s in corpus]
    else:
        chunk = max(1, len(corpus) // (jobs * 4))
        with ProcessPoolExecutor(max_workers=jobs, initializer=_init_worker, initargs=(opts,)) as ex:
            per_sentence = list(ex.map(_worker, corpus.sentences, chunksize=chunk))
    return [a for augs in per_sentence for a in augs]


def validate_augmentation(aug: Augmentation, sentence, opts: AugmentOptions) -> bool:
    if aug.tgt != sentence.tgt or not is_csw(aug.mixed_src) or not is_complete(aug, sentence):
        return False
    t = opts.technique
    if t == "ec":
        return validate_ec(aug, sentence, opts.max_len)
    if t == "ml":
        return validate_mlf(aug, sentence, opts.max_len, opts.closed_tags)
    if t == "dict":
        return all(r.is_gloss and r.s_hi - r.s_lo == 1 for r in aug.replaced_spans)
    links = sentence.alignment.links
    return all(
        not r.is_gloss and is_consistent(links, SegmentPair(r.s_lo, r.s_hi, r.t_lo, r.t_hi))
        for r in aug.replaced_spans
    )


# ----------------------------------------------------------------- helpers

def _load_corpus(args) -> Corpus:
    if getattr(args, "input", None):
        return read_tsv(_path(args.input))
    if getattr(args, "src", None) and getattr(args, "tgt", None):
        opt = lambda v: _path(v) if v else None  # noqa: E731
        return load_parallel(_path(args.src), _path(args.tgt), opt(args.align), opt(args.trees), opt(args.ids))
    raise UsageError("give a corpus TSV with --in, or --src and --tgt files")


def _open_out(args):
    if getattr(args, "out", None):
        return open(args.out, "w", encoding="utf-8", newline="\n")
    return _StdoutProxy()


class _StdoutProxy:
    def __enter__(self):
        return sys.stdout

    def __exit__(self, *exc):
        sys.stdout.flush()
        return False


def _add_corpus_args(p):
    p.add_argument("--in", dest="input", help="corpus TSV (id, src, tgt, alignment, tree)")
    p.add_argument("--src", help="source text file, one pre-tokenized sentence per line")
    p.add_argument("--tgt", help="target text file")
    p.add_argument("--align", help="Pharaoh alignment file")
    p.add_argument("--trees", help="bracketed target parse trees, one per line")
    p.add_argument("--ids", help="sentence ids, one per line")
    p.add_argument("--out", help="output file (default: stdout)")


# ------------------------------------------------------------- subcommands

def cmd_augment(args) -> int:
    corpus = _load_corpus(args)
    opts = AugmentOptions(
        technique=args.technique,
        sampling=args.sampling,
        k=args.k,
        percent=as_fraction(args.percent),
        spf_ref=as_fraction(args.spf_ref),
        seed=args.seed,
        max_len=args.max_len,
        max_candidates=args.max_candidates,
    )
    if args.k < 1:
        raise UsageError(f"--k must be >= 1, got {args.k}")
    if not (0 < opts.percent <= 1):
        raise UsageError(f"--percent must be in (0, 1], got {args.percent}")
    if args.closed_class:
        opts.closed_tags = load_closed_class(_path(args.closed_class))
    if args.technique == "dict":
        if not args.lexicon:
            raise UsageError("--technique dict needs --lexicon")
        opts.lexicon = GlossLexicon.load(_path(args.lexicon))
    if args.technique == "pred":
        if not args.labels:
            raise UsageError("--technique pred needs --labels")
        opts.labels = load_labels(_path(args.labels))
    augs = run_augment(corpus, opts, args.jobs)
    if args.validate:
        by_id = corpus.by_id()
        bad = [a.sentence_id for a in augs if not validate_augmentation(a, by_id[a.sentence_id], opts)]
        if bad:
            raise ValidationError(f"{len(bad)} augmentation(s) failed re-validation: {', '.join(bad[:10])}")
        log.info("validated %d augmentation(s)", len(augs))
    if args.dump_generations and args.technique in ("ec", "ml"):
        if args.technique == "ec":
            sets = [generate_ec(s, opts.max_candidates, opts.max_len) for s in corpus]
        else:
            sets = [generate_mlf(s, opts.max_candidates, opts.max_len, opts.closed_tags) for s in corpus]
        write_generations(sets, args.dump_generations)
    with _open_out(args) as out:
        write_augmentations(augs, out)
    log.info("%s: %d augmentation(s) from %d sentence(s)", args.technique, len(augs), len(corpus))
    return 0


def cmd_stats(args) -> int:
    augs = []
    for path in args.input:
        augs.extend(read_augmentations(_path(path)))
    groups: dict[str, list[Augmentation]] = {}
    for a in augs:
        groups.setdefault(args.technique or a.technique.value, []).append(a)
    if not groups:
        groups[args.technique or ""] = []
    with _open_out(args) as out:
        for technique, items in groups.items():
            out.write(corpus_stats(items).to_json(technique) + "\n")
    return 0


def cmd_btselect(args) -> int:
    nbests = load_nbest(_path(args.nbest), negate=args.negate)
    tgt = {}
    if args.corpus:
        tgt = {s.id: s.tgt for s in read_tsv(_path(args.corpus))}
    results = [select_csw(nb, args.k, tgt.get(nb.sentence_id, ())) for nb in nbests]
    with _open_out(args) as out:
        write_augmentations([r for r in results if r is not None], out)
    stats = selection_stats(results)
    log.info("btselect k=%d: %d of %d sentences (%.3f)", args.k, stats.augmented, stats.total, stats.fraction)
    return 0


def cmd_tag(args) -> int:
    labels = tag_corpus(_load_corpus(args))
    with _open_out(args) as out:
        write_labels(labels, out)
    return 0


def cmd_append_tt(args) -> int:
    with _open_out(args) as out:
        write_tsv(append_target_target(_load_corpus(args)), out)
    return 0


def cmd_normalize(args) -> int:
    flags = Norm.NONE
    for name in args.flags.split(","):
        name = name.strip().upper().replace("-", "_")
        if not name:
            continue
        try:
            flags |= Norm[name]
        except KeyError:
            raise UsageError(f"unknown normalization flag {name.lower()!r}") from None
    with _open_out(args) as out:
        write_tsv(normalize(_load_corpus(args), flags), out)
    return 0


def cmd_intersect(args) -> int:
    sets = {}
    order: list[str] = []
    for path in args.input:
        augs = read_augmentations(_path(path))
        sets[str(path)] = augs
        if not order:
            order = list(dict.fromkeys(a.sentence_id for a in augs))
    common = intersect_augmented(sets)
    with _open_out(args) as out:
        for sid in order:
            if sid in common:
                out.write(sid + "\n")
    return 0


def cmd_sample(args) -> int:
    with _open_out(args) as out:
        write_tsv(sample_subset(_load_corpus(args), args.fraction, args.seed), out)
    return 0


def cmd_kappa(args) -> int:
    records = load_ratings(_path(args.ratings))
    dims = [Dimension(args.dimension)] if args.dimension else list(Dimension)
    result: dict = {"mode": args.mode}
    for dim in dims:
        if args.mode == "cohen":
            result[dim.value] = {f"{a}-{b}": k for (a, b), k in pairwise_cohen(records, dim).items()}
        elif args.mode == "fleiss":
            items, table = fleiss_table(records, dim)
            result[dim.value] = fleiss_kappa(table)
        else:
            scores = mos(records, dim)
            bins = default_bins(dim)
            result[dim.value] = {
                "mos": scores,
                "mean": sum(scores.values()) / len(scores) if scores else 0.0,
                "histogram": dict(zip((b.label() for b in bins), mos_histogram(scores, bins))),
            }
    with _open_out(args) as out:
        out.write(json.dumps(result, ensure_ascii=False, sort_keys=True) + "\n")
    return 0


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cswaug", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="TOML file with default option values")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("augment", help="generate code-switched sources")
    _add_corpus_args(p)
    p.add_argument("--technique", required=True, choices=TECHNIQUES)
    p.add_argument("--sampling", choices=("random", "spf"), default="random")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--percent", default=str(DEFAULT_PERCENT))
    p.add_argument("--spf-ref", dest="spf_ref", default="0.22")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-len", dest="max_len", type=int, default=DEFAULT_MAX_LEN)
    p.add_argument("--max-candidates", dest="max_candidates", type=int, default=DEFAULT_MAX_CANDIDATES)
    p.add_argument("--lexicon", help="gloss lexicon TSV (dict)")
    p.add_argument("--labels", help="prediction labels file (pred)")
    p.add_argument("--closed-class", dest="closed_class", help="closed-class POS tags, one per line (ml)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--validate", action="store_true", help="re-check every emitted row")
    p.add_argument("--dump-generations", dest="dump_generations", help="write all ec/ml candidates here")
    p.set_defaults(func=cmd_augment)

    p = sub.add_parser("stats", help="CMI / SPF / %%En statistics of augmentation TSVs")
    p.add_argument("--in", dest="input", nargs="+", required=True)
    p.add_argument("--technique", help="label for the JSON output (default: per-row technique)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("btselect", help="select code-switched hypotheses from n-best lists")
    p.add_argument("--nbest", required=True)
    p.add_argument("--k", type=int, default=DEFAULT_K)
    p.add_argument("--negate", action="store_true", help="scores are costs (lower is better)")
    p.add_argument("--corpus", help="corpus TSV supplying the English side by id")
    p.add_argument("--out")
    p.set_defaults(func=cmd_btselect)

    p = sub.add_parser("tag", help="0/1 switch labels from real code-switched parallel data")
    _add_corpus_args(p)
    p.set_defaults(func=cmd_tag)

    p = sub.add_parser("append-tt", help="append target-target copies")
    _add_corpus_args(p)
    p.set_defaults(func=cmd_append_tt)

    p = sub.add_parser("normalize", help="lowercase / Alef / Ya normalization, URL and emoticon stripping")
    _add_corpus_args(p)
    p.add_argument("--flags", default="lowercase,alef,ya")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("intersect", help="ids augmented by every given technique")
    p.add_argument("--in", dest="input", nargs="+", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_intersect)

    p = sub.add_parser("sample", help="seeded corpus subset")
    _add_corpus_args(p)
    p.add_argument("--fraction", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("kappa", help="MOS and inter-annotator agreement")
    p.add_argument("--ratings", required=True)
    p.add_argument("--mode", choices=("cohen", "fleiss", "mos"), required=True)
    p.add_argument("--dimension", choices=[d.value for d in Dimension])
    p.add_argument("--out")
    p.set_defaults(func=cmd_kappa)
    return parser


def _apply_config(parser: argparse.ArgumentParser, argv: list[str]) -> None:
    """Load ``--config`` and install its values as parser defaults.

    Top-level keys apply to every subcommand that has the option; a table named
    after a subcommand (``[augment]``) applies to that one only and wins.
    """
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    try:
        with open(known.config, "rb") as fh:
            config = tomli.load(fh)
    except OSError as e:
        raise ConfigError(f"cannot read config {known.config}: {e.strerror}") from None
    except tomli.TOMLDecodeError as e:
        raise ConfigError(f"bad config {known.config}: {e}") from None
    subparsers = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction)).choices
    common = {k: v for k, v in config.items() if not isinstance(v, dict)}
    for name, sp in subparsers.items():
        dests = {a.dest for a in sp._actions}
        values = {k.replace("-", "_"): v for k, v in common.items() if k.replace("-", "_") in dests}
        values.update({k.replace("-", "_"): v for k, v in config.get(name, {}).items()})
        unknown = set(values) - dests
        if unknown:
            raise ConfigError(f"unknown option(s) for {name} in config: {', '.join(sorted(unknown))}")
        for action in sp._actions:
            if action.dest in values:
                action.required = False
        sp.set_defaults(**values)
    for name in config:
        if isinstance(config[name], dict) and name not in subparsers:
            raise ConfigError(f"unknown config section [{name}]")


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        parser = build_parser()
        _apply_config(parser, argv)
        args = parser.parse_args(argv)
        logging.basicConfig(
            level=logging.INFO if args.verbose else logging.WARNING,
            format="%(name)s: %(message)s",
            stream=sys.stderr,
        )
        return args.func(args)
    except CswError as e:
        _report(e.code, str(e))
        return EXIT_CODES.get(e.code, 1)
    except FileNotFoundError as e:
        _report("E_IO", f"no such file: {e.filename}")
        return EXIT_CODES["E_IO"]
    except OSError as e:
        _report("E_IO", str(e))
        return EXIT_CODES["E_IO"]


def _report(code: str, message: str) -> None:
    sys.stderr.write(json.dumps({"error": code, "message": message}, ensure_ascii=False) + "\n")


if __name__ == "__main__":
    sys.exit(main())
