"""Shared corpus builders for the test suite.

Two fixtures dominate: a small deterministic three-document corpus with
three systems and two reference versions (written to disk behind a JSON
manifest, exercising the same path the CLI uses), and an in-memory
two-system dataset engineered so that unigram-driven metrics and
order-driven metrics disagree about which system is better.
"""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from mtqual import EvaluationSet, load_evaluation_set, make_segments
from mtqual.human import HumanRating

DOCS = ("doc1", "doc2", "doc3")
SYSTEMS = ("E1", "E2", "E3")

_REF1 = {
    "doc1": [
        "the cat sat on the mat",
        "a dog barked at the moon",
        "birds sing in the morning",
    ],
    "doc2": [
        "rain fell over the quiet town",
        "children played near the river",
        "the market opened at dawn",
    ],
    "doc3": [
        "the train left the station",
        "an old man read the news",
        "stars filled the night sky",
    ],
}

_REF2 = {
    "doc1": [
        "the cat was sitting on the mat",
        "a dog howled at the moon",
        "the birds sing early in the morning",
    ],
    "doc2": [
        "rain came down on the quiet town",
        "the children played by the river",
        "the market opened at sunrise",
    ],
    "doc3": [
        "the train departed from the station",
        "an old man was reading the news",
        "the night sky was full of stars",
    ],
}

# E1 copies reference 1, E2 keeps roughly half the words, E3 shares nothing.
_E2 = {
    "doc1": [
        "the cat sat under a mat",
        "a dog shouted at the moon",
        "birds whistle in the evening",
    ],
    "doc2": [
        "rain fell over a noisy town",
        "children worked near the river",
        "the market closed at dawn",
    ],
    "doc3": [
        "the train left the harbour",
        "an old man wrote the news",
        "stars filled the dark ocean",
    ],
}

_E3 = {
    "doc1": [
        "zib zab zob quux flerp",
        "wibble wobble frob nix",
        "gorp snark blivet quux",
    ],
    "doc2": [
        "frob nix zib wobble",
        "blivet gorp snark zab",
        "quux flerp wibble zob",
    ],
    "doc3": [
        "snark zib flerp wobble",
        "nix quux gorp zab",
        "blivet frob zob wibble",
    ],
}


def corpus_lines() -> dict[str, dict[str, list[str]]]:
    """Raw text lines keyed by role ("ref1", "ref2", "E1", ...) then document."""
    return {
        "ref1": {d: list(_REF1[d]) for d in DOCS},
        "ref2": {d: list(_REF2[d]) for d in DOCS},
        "E1": {d: list(_REF1[d]) for d in DOCS},
        "E2": {d: list(_E2[d]) for d in DOCS},
        "E3": {d: list(_E3[d]) for d in DOCS},
    }


def write_corpus(root: Path) -> Path:
    """Write the three-document corpus and return the manifest path."""
    lines = corpus_lines()
    entries = []
    for doc in DOCS:
        entry = {"id": doc, "systems": {}, "references": []}
        for system in SYSTEMS:
            name = f"{doc}.{system}.txt"
            (root / name).write_text("\n".join(lines[system][doc]) + "\n", encoding="utf-8")
            entry["systems"][system] = name
        for ref in ("ref1", "ref2"):
            name = f"{doc}.{ref}.txt"
            (root / name).write_text("\n".join(lines[ref][doc]) + "\n", encoding="utf-8")
            entry["references"].append(name)
        entries.append(entry)
    manifest = root / "manifest.json"
    manifest.write_text(json.dumps({"documents": entries}, indent=2), encoding="utf-8")
    return manifest


@pytest.fixture()
def corpus_manifest(tmp_path: Path) -> Path:
    return write_corpus(tmp_path)


@pytest.fixture()
def corpus_eval_set(corpus_manifest: Path) -> EvaluationSet:
    return load_evaluation_set(corpus_manifest)


# ---------------------------------------------------------------------------
# Two systems that genuinely disagree across metric families.
#
# Each reference segment is  [c c c c r1 r2 r3 r4 c c]  where "c" is a very
# common filler word and r1..r4 are unique content words.  System A keeps
# most words (high unigram F) but scrambles the order and drops two rare
# words; system B keeps the rare words in perfect order but loses most of
# the filler (low unigram F, long exact n-gram runs, high information
# recall per token).  Unigram-F metrics therefore prefer A while n-gram
# precision and information-weighted metrics prefer B.
# ---------------------------------------------------------------------------

FINDING_SEGMENTS = 4


def finding_eval_set() -> EvaluationSet:
    refs, sys_a, sys_b = [], [], []
    for i in range(FINDING_SEGMENTS):
        r = [f"r{i}{j}" for j in range(1, 5)]
        refs.append(["c", "c", "c", "c", r[0], r[1], r[2], r[3], "c", "c"])
        # A: 6 fillers + two rare words, scrambled, two junk tokens.
        sys_a.append([r[1], "c", r[0], "c", "c", f"ja{i}", "c", f"jb{i}", "c", "c"])
        # B: all four rare words in reference order flanked by fillers,
        # plus one junk token.
        sys_b.append(["c", r[0], r[1], r[2], r[3], "c", f"jc{i}"])
    doc = "doc1"
    return EvaluationSet(
        documents=(doc,),
        systems={
            "sysA": {doc: make_segments([" ".join(t) for t in sys_a])},
            "sysB": {doc: make_segments([" ".join(t) for t in sys_b])},
        },
        references={doc: [make_segments([" ".join(t) for t in refs])]},
    )


def finding_ratings() -> list[HumanRating]:
    """Two judges score every segment: A excellent-ish, B poor-ish."""
    ratings = []
    for judge in ("j1", "j2"):
        for i in range(FINDING_SEGMENTS):
            for parameter in (1, 6, 10):
                ratings.append(HumanRating(
                    judge_id=judge, system_id="sysA", document="doc1",
                    segment_index=i, parameter=parameter, rating=4,
                ))
                ratings.append(HumanRating(
                    judge_id=judge, system_id="sysB", document="doc1",
                    segment_index=i, parameter=parameter, rating=2,
                ))
    return ratings
