"""Run every augmentation technique over the bundled toy corpus.

Writes one augmentation TSV per technique plus a stats table, mirroring the
shape of the full-scale corpus statistics (size, CMI, SPF, SPF std, %En).

    python3 scripts/run_toy_pipeline.py --out runs/toy
"""

import argparse
import logging
from pathlib import Path

from cswaug import data_path
from cswaug.augmentation import write_augmentations
from cswaug.btselect import load_nbest, select_csw
from cswaug.cli import AugmentOptions, run_augment
from cswaug.corpus import append_target_target, intersect_augmented, read_tsv
from cswaug.lexrep import GlossLexicon, load_labels
from cswaug.metrics import corpus_stats

RUNS = [
    ("LexDict", dict(technique="dict")),
    ("LexRandSeg", dict(technique="rand-seg")),
    ("LexPred", dict(technique="pred")),
    ("ECrand", dict(technique="ec", sampling="random")),
    ("ECspf", dict(technique="ec", sampling="spf")),
    ("MLrand", dict(technique="ml", sampling="random")),
    ("MLspf", dict(technique="ml", sampling="spf")),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--out", default="runs/toy")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(message)s")

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    corpus = read_tsv(data_path("toy.tsv"))
    lexicon = GlossLexicon.load(data_path("toy_lexicon.tsv"))
    labels = load_labels(data_path("toy_labels.txt"))

    results = {}
    for name, kw in RUNS:
        opts = AugmentOptions(seed=args.seed, lexicon=lexicon, labels=labels, **kw)
        results[name] = run_augment(corpus, opts, args.jobs)
    tgt = {s.id: s.tgt for s in corpus}
    bt = [select_csw(nb, 19, tgt.get(nb.sentence_id, ())) for nb in load_nbest(data_path("toy_nbest.tsv"))]
    results["BT"] = [a for a in bt if a is not None]

    print(f"{'technique':<12}{'size':>6}{'CMI':>7}{'SPF':>7}{'SPFsd':>7}{'%En':>7}")
    for name, augs in results.items():
        write_augmentations(augs, out / f"{name}.tsv")
        st = corpus_stats(augs)
        print(
            f"{name:<12}{st.size:>6}{float(st.cmi_mean):>7.2f}{float(st.spf_mean):>7.2f}"
            f"{float(st.spf_std):>7.2f}{100 * float(st.pct_en_mean):>7.1f}"
        )

    common = intersect_augmented({k: v for k, v in results.items() if k != "BT"})
    print(f"\naugmented by every lexical/theory technique: {sorted(common)}")
    print(f"baseline with target-target pairs: {len(append_target_target(corpus))} rows")


if __name__ == "__main__":
    main()
