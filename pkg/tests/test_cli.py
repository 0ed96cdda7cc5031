import subprocess
import sys

import pytest

from colloquality.cli import main
from conftest import REPO

BENCH = REPO / "data" / "benchmark"


@pytest.fixture
def tiny_corpus(tmp_path):
    d = tmp_path / "corpus"
    d.mkdir()
    (d / "a.txt").write_text("The source code of the system. Source code is open.\n")
    (d / "b.txt").write_text("Source code releases help. A distributed system runs source code.\n")
    return d


def test_build_kb_ok_and_deterministic(tiny_corpus, tmp_path):
    out1, out2 = tmp_path / "kb1.tsv", tmp_path / "kb2.tsv"
    assert main(["build-kb", str(tiny_corpus), "-o", str(out1), "--min-freq", "1"]) == 0
    assert main(["build-kb", str(tiny_corpus), "-o", str(out2), "--min-freq", "1"]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    assert "source\tcode\t4\t" in out1.read_text()


def test_missing_corpus_dir(tmp_path, capsys):
    assert main(["build-kb", str(tmp_path / "nope"), "-o", str(tmp_path / "kb.tsv")]) == 2
    assert "corpus directory not found" in capsys.readouterr().err


def test_empty_corpus_is_data_error(tmp_path, capsys):
    (tmp_path / "empty").mkdir()
    assert main(["build-kb", str(tmp_path / "empty"), "-o", str(tmp_path / "kb.tsv")]) == 1
    assert "no readable" in capsys.readouterr().err


def test_score_requires_kb(tiny_corpus):
    proc = subprocess.run([sys.executable, "-m", "colloquality", "score", str(tiny_corpus)],
                          capture_output=True, text=True)
    assert proc.returncode == 2
    assert "--kb" in proc.stderr


def test_malformed_kb_reports_line(tiny_corpus, tmp_path, capsys):
    kb = tmp_path / "kb.tsv"
    kb.write_text("word1\tword2\tcount\tllr\nsource\tcode\tx\t1.0\n")
    assert main(["score", str(tiny_corpus), "--kb", str(kb)]) == 1
    assert "kb.tsv:2:" in capsys.readouterr().err


def test_score_and_compare_self(tiny_corpus, tmp_path, capsys):
    kb, scores = tmp_path / "kb.tsv", tmp_path / "s.tsv"
    main(["build-kb", str(tiny_corpus), "-o", str(kb), "--min-freq", "1"])
    assert main(["score", str(tiny_corpus), "--kb", str(kb), "--out", str(scores)]) == 0
    lines = scores.read_text().splitlines()
    assert lines[0] == "id\tads\tadsn\tm\tw" and [l.split("\t")[0] for l in lines[1:]] == ["a.txt", "b.txt"]
    capsys.readouterr()
    assert main(["compare", str(scores), str(scores)]) == 0
    rows = dict(l.split("\t", 1) for l in capsys.readouterr().out.splitlines())
    assert rows["t Stat"] == "0"
    assert rows["P(T<=t) two-tail"] == "1"


def test_readability_and_collocations(tiny_corpus, capsys):
    assert main(["readability", str(tiny_corpus)]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0].split("\t")[:2] == ["id", "flesch_reading_ease"] and len(out) == 3
    assert main(["collocations", str(tiny_corpus)]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "doc_id\tword1\tword2" and "a.txt\tsource\tcode" in out


def test_jobs_do_not_change_output(tmp_path, capsys):
    main(["build-kb", str(BENCH / "main"), "-o", str(tmp_path / "kb.tsv")])
    capsys.readouterr()
    args = ["score", str(BENCH / "test"), "--kb", str(tmp_path / "kb.tsv")]
    main(args)
    serial = capsys.readouterr().out
    main(args + ["--jobs", "3"])
    assert capsys.readouterr().out == serial


def test_full_pipeline_on_bundled_benchmark(tmp_path, capsys):
    kb, feats = tmp_path / "kb.tsv", tmp_path / "f.tsv"
    manifest = str(BENCH / "test_manifest.tsv")
    assert main(["build-kb", str(BENCH / "main"), "-o", str(kb)]) == 0
    assert main(["features", str(BENCH / "test"), "--kb", str(kb), "--manifest", manifest, "--out", str(feats)]) == 0
    models = []
    for preset in ("readability", "all"):
        models += ["--model", str(tmp_path / f"{preset}.tsv")]
        assert main(["train", str(feats), "--features", preset, "-o", models[-1]]) == 0
    capsys.readouterr()
    assert main(["evaluate", str(feats)] + models) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "Classifier based on:\tAUC Result"
    auc = {k: float(v) for k, v in (l.split("\t") for l in out[1:])}
    assert auc["all"] > auc["readability"]


def test_bow_train_evaluate(tmp_path, capsys):
    manifest = str(BENCH / "test_manifest.tsv")
    model = str(tmp_path / "bow.tsv")
    assert main(["train", str(BENCH / "test"), "--manifest", manifest, "--features", "bow", "-o", model]) == 0
    capsys.readouterr()
    assert main(["evaluate", str(BENCH / "test"), "--manifest", manifest, "--model", model]) == 0
    name, auc = capsys.readouterr().out.splitlines()[1].split("\t")
    assert name == "bow" and 0.0 <= float(auc) <= 1.0


def test_anova(tmp_path, capsys):
    files = []
    for i, vals in enumerate([[1, 2, 3], [2, 3, 4], [5, 6, 7]]):
        p = tmp_path / f"g{i}.tsv"
        p.write_text("id\tads\n" + "".join(f"d{j}\t{v}\n" for j, v in enumerate(vals)))
        files.append(str(p))
    assert main(["anova"] + files) == 0
    out = capsys.readouterr().out
    assert "F(2, 6)\t13" in out


def test_synth(tmp_path):
    assert main(["synth", str(tmp_path / "b")]) == 0
    assert len(list((tmp_path / "b" / "main").glob("*.txt"))) == 60
