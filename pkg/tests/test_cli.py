import csv
import io
import json
import shutil

import pytest

from swsumm.cli import main, parse_range
from swsumm.corpus import dump_annotated, build_document, Concept
from swsumm.synthetic import clustered_document


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


@pytest.fixture
def corpus(tmp_path, fixtures):
    shutil.copytree(fixtures / "corpus", tmp_path / "corpus")
    shutil.copytree(fixtures / "models", tmp_path / "models")
    return tmp_path


def test_parse_range():
    assert parse_range("0.1:0.8:0.1") == [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8]
    assert parse_range("0.3") == [0.3]
    assert parse_range("0,0.5") == [0.0, 0.5]


def test_summarize_annotated(capsys, fixtures):
    code, out, _ = run(capsys, "summarize", "--input", fixtures / "corpus" / "overlap.json")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 3  # round_half_up(0.3 * 10)
    text = (fixtures / "corpus" / "overlap.json").read_text()
    assert all(line in text for line in lines)


def test_summarize_85_sentences_gives_26(capsys, tmp_path):
    doc = clustered_document(n_paragraphs=17, paragraph_size=5, n_background=200)
    assert doc.n == 85
    path = tmp_path / "doc85.json"
    path.write_text(dump_annotated(doc))
    code, out, _ = run(capsys, "summarize", "-i", path)
    assert code == 0 and len(out.splitlines()) == 26


def test_summarize_single_sentence(capsys, tmp_path):
    path = tmp_path / "one.txt"
    path.write_text("Only this sentence matters.")
    code, out, _ = run(capsys, "summarize", "-i", path, "--surrogate")
    assert code == 0 and out == "Only this sentence matters.\n"


def test_missing_file_exit_2(capsys, tmp_path):
    code, out, err = run(capsys, "summarize", "-i", tmp_path / "nope.json")
    assert code == 2 and out == "" and "not found" in err


def test_bad_schema_exit_1(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"paragraphs": []}')
    code, _, err = run(capsys, "summarize", "-i", path)
    assert code == 1 and "error" in err


def test_explain_side_files(capsys, tmp_path, fixtures):
    out = tmp_path / "summary.txt"
    code, _, _ = run(capsys, "summarize", "-i", fixtures / "corpus" / "overlap.json",
                     "--explain", "-o", out, "--epsilon", "0.1")
    assert code == 0
    meaning = json.loads((tmp_path / "summary.meaning.json").read_text())
    assert meaning["epsilon"] == 0.1 and meaning["meaningful"]
    graph = json.loads((tmp_path / "summary.graph.json").read_text())
    assert graph["n"] == 10
    assert (tmp_path / "summary.graph.dot").read_text().startswith('graph "overlap" {')
    code, _, err = run(capsys, "summarize", "-i", fixtures / "corpus" / "overlap.json",
                       "--explain")
    assert code == 2 and "--output" in err


def test_graph_out_formats(capsys, tmp_path, fixtures):
    doc = fixtures / "corpus" / "overlap.json"
    run(capsys, "summarize", "-i", doc, "--graph-out", tmp_path / "g.json")
    assert json.loads((tmp_path / "g.json").read_text())["n"] == 10
    run(capsys, "summarize", "-i", doc, "--graph-out", tmp_path / "g.txt", "--format", "dot")
    assert (tmp_path / "g.txt").read_text().startswith("graph")


def test_config_file_and_flag_precedence(capsys, tmp_path, fixtures):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"rate": 0.5, "epsilon": 0.1}))
    doc = fixtures / "corpus" / "overlap.json"
    _, out, _ = run(capsys, "summarize", "-i", doc, "--config", cfg)
    assert len(out.splitlines()) == 5
    _, out, _ = run(capsys, "summarize", "-i", doc, "--config", cfg, "--rate", "0.2")
    assert len(out.splitlines()) == 2
    cfg.write_text(json.dumps({"bogus": 1}))
    code, _, _ = run(capsys, "summarize", "-i", doc, "--config", cfg)
    assert code == 2


def test_generic_types_from_config(capsys, tmp_path, fixtures):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"generic_types": []}))
    doc = fixtures / "corpus" / "overlap.json"
    out = tmp_path / "m.json"
    run(capsys, "summarize", "-i", doc, "--config", cfg, "--dump-meaning", out)
    ids = {c["id"] for c in json.loads(out.read_text())["concepts"]}
    assert "C0542341" in ids  # "Function" (Functional Concept) survives an empty filter
    run(capsys, "summarize", "-i", doc, "--dump-meaning", out)
    assert "C0542341" not in {c["id"] for c in json.loads(out.read_text())["concepts"]}


def test_sweep_rows_and_unmatched(capsys, caplog, corpus):
    code, out, _ = run(capsys, "sweep", "--corpus", corpus / "corpus", "--models",
                         corpus / "models", "--surrogate", "--epsilons", "0.1:0.8:0.1")
    assert code == 0
    table = rows(out)
    assert len(table) == 8 and all(r["n_docs"] == "2" for r in table)
    assert "orphan" in caplog.text
    # the compression rate fixes the summary size; epsilon only changes which sentences
    assert len({r["summary_sentences"] for r in table}) == 1


def test_sweep_single_document_equals_evaluate(capsys, corpus, tmp_path):
    (corpus / "corpus" / "plain.txt").unlink()
    (corpus / "corpus" / "orphan.txt").unlink()
    code, out, _ = run(capsys, "sweep", "--corpus", corpus / "corpus", "--models",
                       corpus / "models", "--epsilons", "0.2")
    assert code == 0
    (row,) = rows(out)
    summary = tmp_path / "overlap.txt"
    run(capsys, "summarize", "-i", corpus / "corpus" / "overlap.json", "--epsilon", "0.2",
        "-o", summary)
    _, out, _ = run(capsys, "evaluate", "-i", summary, "--models", corpus / "models")
    scores = rows(out)[0]
    assert row["rouge2"] == scores["rouge2_r"] and row["rougesu4"] == scores["rougesu4_r"]


def test_sweep_empty_corpus(capsys, caplog, tmp_path):
    (tmp_path / "c").mkdir()
    (tmp_path / "m").mkdir()
    code, _, _ = run(capsys, "sweep", "--corpus", tmp_path / "c", "--models", tmp_path / "m")
    assert code == 1 and "no corpus document" in caplog.text


def test_sweep_thread_independent(capsys, corpus):
    args = ["sweep", "--corpus", corpus / "corpus", "--models", corpus / "models",
            "--surrogate", "--epsilons", "0:1:0.25", "--per-doc", corpus / "per_doc.csv"]
    _, one, _ = run(capsys, *args, "--jobs", "1")
    per_one = (corpus / "per_doc.csv").read_text()
    _, four, _ = run(capsys, *args, "--jobs", "4")
    assert one == four and per_one == (corpus / "per_doc.csv").read_text()
    ids = [(r["doc_id"], float(r["epsilon"])) for r in rows(per_one)]
    assert ids == sorted(ids)


def test_evaluate_against_itself(capsys, tmp_path, fixtures):
    (tmp_path / "sys").mkdir()
    shutil.copy(fixtures / "models" / "plain.txt", tmp_path / "sys" / "plain.txt")
    shutil.copy(fixtures / "models" / "overlap.txt", tmp_path / "sys" / "overlap.txt")
    code, out, _ = run(capsys, "evaluate", "--corpus", tmp_path / "sys",
                       "--models", fixtures / "models")
    assert code == 0
    table = rows(out)
    assert [r["doc_id"] for r in table] == ["overlap", "plain", "MEAN"]
    for r in table:
        assert all(float(r[k]) == 1.0 for k in r if k != "doc_id")


def test_compare(capsys, tmp_path):
    header = "doc_id,rouge2_r,rouge2_p,rouge2_f,rougesu4_r,rougesu4_p,rougesu4_f\n"
    a = tmp_path / "a.csv"
    a.write_text(header + "".join(f"d{i},0.{i}1,0,0,0,0,0\n" for i in range(6))
                 + "MEAN,9,9,9,9,9,9\n")
    code, out, _ = run(capsys, "compare", "--a", a, "--b", a)
    result = json.loads(out)
    assert code == 0 and result["p_value"] == 1.0 and result["degenerate"]
    b = tmp_path / "b.csv"
    b.write_text(header + "".join(f"d{i},0.{i}0,0,0,0,0,0\n" for i in range(6)))
    _, out, _ = run(capsys, "compare", "--a", a, "--b", b, "--metric", "rouge2_r")
    result = json.loads(out)
    assert result["n_effective"] == 6 and result["p_value"] == 0.03125
    assert result["significant_at_95"] is True


def test_topology_path_document_is_regular(capsys, tmp_path):
    doc = build_document("p", [[(f"s{i}", [Concept(f"c{i}")]) for i in range(10)]])
    path = tmp_path / "p.json"
    path.write_text(dump_annotated(doc))
    code, out, _ = run(capsys, "topology", "-i", path)
    report = json.loads(out)
    assert code == 0 and report["regime"] == "regular" and report["edge_count"] == 9
    _, out, _ = run(capsys, "topology", "-i", path, "--format", "csv")
    assert rows(out)[0]["regime"] == "regular"


def test_topology_from_graph_json(capsys, tmp_path, fixtures):
    g = tmp_path / "g.json"
    run(capsys, "summarize", "-i", fixtures / "corpus" / "overlap.json", "--graph-out", g)
    code, out, _ = run(capsys, "topology", "-i", g)
    assert code == 0 and json.loads(out)["n"] == 10


def test_summarize_deterministic(capsys, tmp_path, fixtures):
    outputs = []
    for jobs in ("1", "4", "4"):
        out = tmp_path / f"s{len(outputs)}.txt"
        run(capsys, "summarize", "-i", fixtures / "corpus" / "overlap.json", "--jobs", jobs,
            "--explain", "-o", out)
        outputs.append([out.read_bytes()] + [out.with_suffix(s).read_bytes()
                                             for s in (".meaning.json", ".graph.dot",
                                                       ".graph.json")])
    assert outputs[0] == outputs[1] == outputs[2]
