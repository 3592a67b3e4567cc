import json

import pytest

from xmodlab.cli import main
from xmodlab.corpus import (default_corpus_document, load_corpus,
                            load_corpus_file, serialize_corpus)
from xmodlab.errors import ParseError, ValidationError


@pytest.fixture(scope="module")
def doc():
    return default_corpus_document()


@pytest.fixture(scope="module")
def corpus(doc):
    return load_corpus(doc)


def test_load_default(corpus):
    assert len(corpus.xmods) >= 30
    assert len(corpus.sequences) >= 10
    assert set(corpus.localizers) == {"ab", "i", "pxz", "nullify:XC2", "lf:phi"}


def test_round_trip(corpus, doc):
    ser = serialize_corpus(corpus, doc)
    again = load_corpus(ser)
    assert serialize_corpus(again, ser) == ser
    # structural equality of a reloaded object
    import numpy as np
    for name in corpus.xmods:
        a, b = corpus.xmods[name], again.xmods[name]
        assert np.array_equal(a.bottom.table, b.bottom.table)
        assert a.boundary.mapping == b.boundary.mapping
        assert np.array_equal(a.action.act, b.action.act)


def test_bad_table_rejected():
    with pytest.raises((ParseError, ValidationError)):
        load_corpus({"groups": {"g": {"table": [[0, 1, 2], [1, 0, 0],
                                               [2, 0, 0]]}}})


def test_bad_morphism_named():
    data = {
        "groups": {"C2": "cyclic(2)", "C4": "cyclic(4)"},
        "xmods": {"XC2": {"x_of": "C2"}, "XC4": {"x_of": "C4"}},
        "morphisms": {"notamap": {"src": "XC4", "dst": "XC2",
                                  "f1": "trivial",
                                  "f2": {"map": [0, 1, 1, 0]}}},
    }
    with pytest.raises(ValidationError) as err:
        load_corpus(data)
    assert "notamap" in str(err.value)


def test_missing_file():
    with pytest.raises(ParseError):
        load_corpus_file("/nonexistent/corpus.json")


def test_cli_validate_default():
    assert main(["validate"]) == 0


def test_cli_localize(capsys):
    assert main(["localize", "XS3", "ab"]) == 0
    out = capsys.readouterr().out
    assert "top order 2" in out


def test_cli_nullify_json(capsys):
    assert main(["--json", "nullify", "XS3", "XC2"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["acyclic"] is True
    assert data["stages"] == 1


def test_cli_counterexample(capsys):
    assert main(["counterexample"]) == 1
    out = capsys.readouterr().out
    assert "NOT FLAT" in out
    assert "Z + Z/2" in out


def test_cli_flat_check_exit_codes():
    assert main(["flat-check", "seq0", "i"]) == 0


def test_cli_unknown_name(capsys):
    assert main(["localize", "NOPE", "ab"]) == 2


def test_cli_corpus_file(tmp_path, capsys):
    path = tmp_path / "tiny.json"
    path.write_text(json.dumps({
        "groups": {"C2": "cyclic(2)"},
        "xmods": {"XC2": {"x_of": "C2"}},
        "localizers": {"ab": "ab"},
    }))
    assert main(["--corpus", str(path), "localize", "XC2", "ab"]) == 0


def test_cli_env_corpus_dir(tmp_path, monkeypatch, capsys):
    (tmp_path / "standard.json").write_text(json.dumps({
        "groups": {"C3": "cyclic(3)"},
        "xmods": {"XC3": {"x_of": "C3"}},
    }))
    monkeypatch.setenv("XMODLAB_CORPUS", str(tmp_path))
    assert main(["validate"]) == 0
    assert main(["localize", "XC3", "ab"]) == 0


def test_cli_fiberwise(capsys):
    assert main(["fiberwise", "seq1", "ab"]) == 0


def test_cli_admissibility_scan(capsys):
    assert main(["--seed", "3", "admissibility-scan", "pxz"]) == 0
    out = capsys.readouterr().out
    assert "pass" in out
