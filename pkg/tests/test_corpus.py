"""Tokenization, n-gram counting, and corpus ingestion."""

from __future__ import annotations

import json
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mtqual import (
    AlignmentError,
    EvaluationSet,
    IngestionError,
    Segment,
    TokenizationPolicy,
    load_evaluation_set,
    make_segments,
    ngrams,
    read_segment_file,
    tokenize,
)

words = st.text(alphabet="abcdefg", min_size=1, max_size=6)
token_lists = st.lists(words, max_size=12)


class TestTokenize:
    def test_punctuation_and_case(self):
        assert tokenize("Ram eats mango.") == ("ram", "eats", "mango", ".")

    def test_empty(self):
        assert tokenize("") == ()

    def test_plain_sentence(self):
        assert tokenize("I am feeling hungry") == ("i", "am", "feeling", "hungry")

    def test_policy_no_casefold(self):
        policy = TokenizationPolicy(casefold=False)
        assert tokenize("Ram eats", policy) == ("Ram", "eats")

    def test_policy_no_punctuation_split(self):
        policy = TokenizationPolicy(split_punctuation=False)
        assert tokenize("mango.", policy) == ("mango.",)

    def test_interior_punctuation_split(self):
        assert tokenize("well, yes!") == ("well", ",", "yes", "!")

    def test_unicode_normalization(self):
        # e + combining acute composes to the same token as precomposed e-acute
        assert tokenize("café") == tokenize("café")

    def test_devanagari_whitespace_split(self):
        assert tokenize("राम आम") == (
            "राम",
            "आम",
        )

    @given(st.lists(words, min_size=0, max_size=10))
    def test_idempotent_on_own_output(self, tokens):
        first = tokenize(" ".join(tokens))
        assert tokenize(" ".join(first)) == first

    @given(st.text(max_size=40))
    def test_deterministic_and_whitespace_free(self, text):
        out = tokenize(text)
        assert out == tokenize(text)
        for token in out:
            assert token
            assert not any(ch.isspace() for ch in token)


class TestNgrams:
    def test_unigrams(self):
        assert dict(ngrams(("a", "b", "a"), 1)) == {("a",): 2, ("b",): 1}

    def test_bigrams(self):
        assert dict(ngrams(("a", "b", "a"), 2)) == {("a", "b"): 1, ("b", "a"): 1}

    def test_order_longer_than_segment(self):
        assert dict(ngrams(("a",), 4)) == {}

    def test_rejects_nonpositive_order(self):
        with pytest.raises(ValueError):
            ngrams(("a",), 0)

    @given(token_lists, st.integers(min_value=1, max_value=5))
    def test_total_count(self, tokens, n):
        counts = ngrams(tuple(tokens), n)
        assert sum(counts.values()) == max(0, len(tokens) - n + 1)
        assert all(len(gram) == n for gram in counts)


class TestSegment:
    def test_len_and_text(self):
        seg = Segment(id="0", tokens=("a", "b"))
        assert len(seg) == 2
        assert seg.text == "a b"

    def test_make_segments_round_trip(self):
        lines = ["Ram eats mango.", "I am feeling hungry"]
        segs = make_segments(lines)
        assert [s.tokens for s in segs] == [tokenize(line) for line in lines]
        # Re-tokenizing the joined tokens reproduces them exactly.
        for seg in segs:
            assert tokenize(seg.text) == seg.tokens


class TestReadSegmentFile:
    def test_reads_lines(self, tmp_path: Path):
        p = tmp_path / "f.txt"
        p.write_text("One line.\nTwo lines!\n", encoding="utf-8")
        segs = read_segment_file(p)
        assert [s.tokens for s in segs] == [
            ("one", "line", "."),
            ("two", "lines", "!"),
        ]

    def test_strips_carriage_returns(self, tmp_path: Path):
        p = tmp_path / "crlf.txt"
        p.write_bytes(b"a b\r\nc d\r\n")
        assert [s.tokens for s in read_segment_file(p)] == [("a", "b"), ("c", "d")]

    def test_invalid_utf8_names_offset(self, tmp_path: Path):
        p = tmp_path / "bad.txt"
        p.write_bytes(b"fine\n\xffbroken\n")
        with pytest.raises(IngestionError) as exc:
            read_segment_file(p)
        message = str(exc.value)
        assert str(p) in message
        assert "byte offset 5" in message

    def test_missing_file_is_io_error(self, tmp_path: Path):
        with pytest.raises(OSError):
            read_segment_file(tmp_path / "nope.txt")


class TestLoadEvaluationSet:
    def test_full_manifest(self, corpus_manifest: Path):
        es = load_evaluation_set(corpus_manifest)
        assert es.documents == ("doc1", "doc2", "doc3")
        assert es.system_ids == ("E1", "E2", "E3")
        assert all(es.reference_versions(doc) == 2 for doc in es.documents)
        assert all(es.segment_count(doc) == 3 for doc in es.documents)
        both = es.references_for("doc1", 0)
        assert len(both) == 2  # one segment per reference version
        only_first = es.references_for("doc1", 0, version=0)
        assert only_first == [both[0]]

    def test_minimal_manifest(self, tmp_path: Path):
        (tmp_path / "c.txt").write_text("a b\n", encoding="utf-8")
        (tmp_path / "r.txt").write_text("a b\n", encoding="utf-8")
        manifest = tmp_path / "m.json"
        manifest.write_text(json.dumps({
            "documents": [
                {"id": "d", "systems": {"S": "c.txt"}, "references": ["r.txt"]}
            ]
        }), encoding="utf-8")
        es = load_evaluation_set(manifest)
        assert es.system_ids == ("S",)
        assert es.segment_count("d") == 1

    def test_line_count_mismatch(self, tmp_path: Path):
        (tmp_path / "c.txt").write_text("a\nb\n", encoding="utf-8")
        (tmp_path / "r.txt").write_text("a\n", encoding="utf-8")
        manifest = tmp_path / "m.json"
        manifest.write_text(json.dumps({
            "documents": [
                {"id": "d", "systems": {"S": "c.txt"}, "references": ["r.txt"]}
            ]
        }), encoding="utf-8")
        with pytest.raises(AlignmentError) as exc:
            load_evaluation_set(manifest)
        assert "aligned files disagree" in str(exc.value)

    def test_no_references(self, tmp_path: Path):
        (tmp_path / "c.txt").write_text("a\n", encoding="utf-8")
        manifest = tmp_path / "m.json"
        manifest.write_text(json.dumps({
            "documents": [{"id": "d", "systems": {"S": "c.txt"}, "references": []}]
        }), encoding="utf-8")
        with pytest.raises(IngestionError):
            load_evaluation_set(manifest)

    def test_direct_constructor_validates_alignment(self):
        with pytest.raises(AlignmentError):
            EvaluationSet(
                documents=("d",),
                systems={"S": {"d": make_segments(["a", "b"])}},
                references={"d": [make_segments(["a"])]},
            )

    def test_policy_recorded(self, corpus_manifest: Path):
        es = load_evaluation_set(corpus_manifest)
        assert es.policy.as_dict() == {"casefold": True, "split_punctuation": True}
