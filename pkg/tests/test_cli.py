import json

import pytest

from cswaug import data_path
from cswaug.augmentation import read_augmentations
from cswaug.cli import EXIT_CODES, main
from cswaug.corpus import read_tsv

TOY = str(data_path("toy.tsv"))


@pytest.fixture(scope="module")
def toy_1to1(tmp_path_factory):
    """Toy corpus with only 1:1 links kept, as word-level replacement requires."""
    from collections import Counter

    from cswaug.align import AlignmentSet
    from cswaug.corpus import BiSentence, Corpus, write_tsv

    rows = []
    for s in read_tsv(TOY):
        links = s.alignment.links
        si, ti = Counter(i for i, _ in links), Counter(j for _, j in links)
        keep = frozenset((i, j) for i, j in links if si[i] == 1 and ti[j] == 1)
        rows.append(BiSentence(s.id, s.src, s.tgt, AlignmentSet(keep, "intersection"), s.tree))
    path = tmp_path_factory.mktemp("c") / "toy_1to1.tsv"
    write_tsv(Corpus(tuple(rows)), path)
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def error_of(err):
    return json.loads(err.strip().splitlines()[-1])["error"]


@pytest.mark.parametrize(
    "technique,extra",
    [
        ("dict", ["--lexicon", "@toy_lexicon.tsv"]),
        ("rand-word", []),
        ("rand-seg", []),
        ("pred", ["--labels", "@toy_labels.txt"]),
        ("ec", ["--sampling", "spf", "--k", "2"]),
        ("ml", ["--sampling", "random", "--k", "2"]),
    ],
)
def test_augment_every_technique_validates(tmp_path, capsys, toy_1to1, technique, extra):
    out = tmp_path / "a.tsv"
    corpus = toy_1to1 if technique == "rand-word" else TOY
    code, _, err = run(capsys, "augment", "--in", corpus, "--technique", technique, "--out", str(out), "--validate", *extra)
    assert code == 0, err
    augs = read_augmentations(out)
    assert augs
    assert {a.sentence_id for a in augs} <= set(read_tsv(TOY).ids())


def test_augment_stdout_and_parallel_files(tmp_path, capsys):
    src, tgt, al = tmp_path / "s", tmp_path / "t", tmp_path / "a"
    corpus = read_tsv(TOY)
    src.write_text("".join(" ".join(t.surface for t in s.src) + "\n" for s in corpus), encoding="utf-8")
    tgt.write_text("".join(" ".join(t.surface for t in s.tgt) + "\n" for s in corpus), encoding="utf-8")
    al.write_text("".join(s.alignment.to_pharaoh() + "\n" for s in corpus), encoding="utf-8")
    code, out, _ = run(capsys, "augment", "--src", str(src), "--tgt", str(tgt), "--align", str(al), "--technique", "ec")
    assert code == 0
    assert out.startswith("id\ttechnique\t")


def test_dump_generations(tmp_path, capsys):
    dump = tmp_path / "g.tsv"
    code, _, _ = run(capsys, "augment", "--in", TOY, "--technique", "ec", "--dump-generations", str(dump))
    assert code == 0
    rows = dump.read_text(encoding="utf-8").splitlines()
    assert any("انا عايز try اكل ايطالي ." in r for r in rows)


def test_stats(tmp_path, capsys):
    aug = tmp_path / "a.tsv"
    run(capsys, "augment", "--in", TOY, "--technique", "ec", "--out", str(aug))
    code, out, _ = run(capsys, "stats", "--in", str(aug))
    assert code == 0
    row = json.loads(out)
    assert row["technique"] == "ECrand" and row["size"] > 0
    assert set(row) == {"technique", "size", "cmi", "spf", "spf_std", "pct_en"}


def test_stats_empty(tmp_path, capsys):
    empty = tmp_path / "e.tsv"
    empty.write_text("")
    code, out, _ = run(capsys, "stats", "--in", str(empty))
    assert code == 0
    assert json.loads(out)["size"] == 0


def test_btselect(tmp_path, capsys):
    code, out, _ = run(capsys, "btselect", "--nbest", "@toy_nbest.tsv", "--k", "19", "--corpus", TOY)
    assert code == 0
    assert "انا عايز اجرب اكل Italian ." in out
    code, out1, _ = run(capsys, "btselect", "--nbest", "@toy_nbest.tsv", "--k", "1")
    assert out1.count("\n") <= out.count("\n")


def test_tag(capsys):
    code, out, _ = run(capsys, "tag", "--in", TOY)
    assert code == 0
    assert len(out.splitlines()) == 5


def test_append_tt_and_normalize(tmp_path, capsys):
    out = tmp_path / "tt.tsv"
    assert run(capsys, "append-tt", "--in", TOY, "--out", str(out))[0] == 0
    assert len(read_tsv(out)) == 2 * len(read_tsv(TOY))
    code, text, _ = run(capsys, "normalize", "--in", TOY, "--flags", "lowercase")
    assert code == 0 and "italian food" in text
    code, _, err = run(capsys, "normalize", "--in", TOY, "--flags", "shout")
    assert code == EXIT_CODES["E_USAGE"] and error_of(err) == "E_USAGE"


def test_intersect(tmp_path, capsys):
    a, b = tmp_path / "a.tsv", tmp_path / "b.tsv"
    run(capsys, "augment", "--in", TOY, "--technique", "ec", "--out", str(a))
    run(capsys, "augment", "--in", TOY, "--technique", "dict", "--lexicon", "@toy_lexicon.tsv", "--out", str(b))
    code, out, _ = run(capsys, "intersect", "--in", str(a), str(b))
    assert code == 0
    ids_a = {x.sentence_id for x in read_augmentations(a)}
    ids_b = {x.sentence_id for x in read_augmentations(b)}
    assert set(out.split()) == ids_a & ids_b
    code, _, err = run(capsys, "intersect", "--in", str(a))
    assert code == EXIT_CODES["E_USAGE"]


def test_sample(capsys):
    code, out, _ = run(capsys, "sample", "--in", TOY, "--fraction", "0.4", "--seed", "3")
    assert code == 0
    assert len(out.splitlines()) == 1 + 2


@pytest.mark.parametrize("mode", ["cohen", "fleiss", "mos"])
def test_kappa(capsys, mode):
    code, out, _ = run(capsys, "kappa", "--ratings", "@toy_ratings.csv", "--mode", mode)
    assert code == 0
    res = json.loads(out)
    assert res["mode"] == mode and {"understandability", "naturalness"} <= set(res)
    if mode == "mos":
        assert abs(sum(res["naturalness"]["histogram"].values()) - 100) <= 0.1


def test_rand_word_rejects_many_to_many(capsys):
    status, _, err = run(capsys, "augment", "--in", TOY, "--technique", "rand-word")
    assert status == EXIT_CODES["E_USAGE"]
    assert "1-1" in json.loads(err)["message"]


def test_config_defaults_and_override(tmp_path, capsys, toy_1to1):
    cfg = tmp_path / "c.toml"
    cfg.write_text('seed = 5\n[augment]\ntechnique = "rand-word"\npercent = 0.5\n')
    code, out_cfg, _ = run(capsys, "--config", str(cfg), "augment", "--in", toy_1to1)
    assert code == 0
    code, out_flags, _ = run(capsys, "augment", "--in", toy_1to1, "--technique", "rand-word", "--percent", "0.5", "--seed", "5")
    assert out_cfg == out_flags
    code, out_over, _ = run(capsys, "--config", str(cfg), "augment", "--in", TOY, "--technique", "ec")
    assert code == 0 and "ECrand" in out_over


@pytest.mark.parametrize(
    "argv,code",
    [
        (["augment", "--in", TOY, "--technique", "ec", "--bogus"], "E_ARGS"),
        (["frobnicate"], "E_ARGS"),
        (["augment", "--in", "/nonexistent.tsv", "--technique", "ec"], "E_IO"),
        (["augment", "--in", TOY, "--technique", "dict"], "E_USAGE"),
        (["augment", "--in", TOY, "--technique", "ec", "--k", "0"], "E_USAGE"),
        (["augment", "--in", TOY, "--technique", "rand-word", "--percent", "1.5"], "E_USAGE"),
        (["augment", "--technique", "ec"], "E_USAGE"),
    ],
)
def test_error_codes(capsys, argv, code):
    status, out, err = run(capsys, *argv)
    assert status == EXIT_CODES[code]
    assert out == ""
    assert error_of(err) == code


def test_format_and_structure_errors(tmp_path, capsys):
    bad = tmp_path / "bad.tsv"
    bad.write_text("id\tsrc\ttgt\talignment\ttree\nx\tانا\ti\t0-x\t\n", encoding="utf-8")
    status, _, err = run(capsys, "augment", "--in", str(bad), "--technique", "ec")
    assert (status, error_of(err)) == (EXIT_CODES["E_FORMAT"], "E_FORMAT")
    bad.write_text("id\tsrc\ttgt\talignment\ttree\nx\tانا\ti\t0-5\t\n", encoding="utf-8")
    status, _, err = run(capsys, "augment", "--in", str(bad), "--technique", "ec")
    assert (status, error_of(err)) == (EXIT_CODES["E_STRUCTURE"], "E_STRUCTURE")


def test_config_errors(tmp_path, capsys):
    cfg = tmp_path / "c.toml"
    cfg.write_text("seed = \n")
    status, _, err = run(capsys, "--config", str(cfg), "stats", "--in", "x")
    assert error_of(err) == "E_CONFIG" and status == EXIT_CODES["E_CONFIG"]
    cfg.write_text("[augment]\nwhatever = 1\n")
    assert error_of(run(capsys, "--config", str(cfg), "stats", "--in", "x")[2]) == "E_CONFIG"
    cfg.write_text("[nosuch]\nk = 1\n")
    assert error_of(run(capsys, "--config", str(cfg), "stats", "--in", "x")[2]) == "E_CONFIG"


def test_exit_codes_distinct():
    assert len(set(EXIT_CODES.values())) == len(EXIT_CODES)
