"""Text normalization, tokenization and ingestion of parallel evaluation data.

All metrics in this package operate on word tokens.  Tokenization is kept
deliberately simple and canonical so that scores are reproducible: input text
is normalised to Unicode NFC, optionally case-folded, punctuation characters
are split off as standalone tokens and the result is divided on whitespace.
The same policy applies to every script, including Devanagari (the danda and
other marks carry Unicode punctuation categories and split off naturally).

Candidate and reference files are plain UTF-8 text with one segment per line.
A JSON manifest maps files onto documents, systems and reference slots; see
:func:`load_evaluation_set`.
"""

from __future__ import annotations

import json
import unicodedata
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

from .errors import AlignmentError, IngestionError

NGramCounts = Counter  # keys are n-token tuples, values occurrence counts


@dataclass(frozen=True)
class TokenizationPolicy:
    """Knobs that change what counts as a token.

    The policy travels with every score report, because case folding and
    punctuation handling materially change n-gram matches.
    """

    casefold: bool = True
    split_punctuation: bool = True

    def as_dict(self) -> dict:
        return {"casefold": self.casefold, "split_punctuation": self.split_punctuation}


DEFAULT_POLICY = TokenizationPolicy()


def _is_punctuation(ch: str) -> bool:
    return unicodedata.category(ch).startswith("P")


def tokenize(text: str, policy: TokenizationPolicy = DEFAULT_POLICY) -> tuple[str, ...]:
    """Split ``text`` into normalised word tokens.

    Deterministic and idempotent: tokenizing the space-joined output again
    yields the same tokens.  Every token is non-empty and whitespace-free.
    """
    text = unicodedata.normalize("NFC", text)
    if policy.casefold:
        # Case folding can denormalise (e.g. U+0130), so normalise again.
        text = unicodedata.normalize("NFC", text.casefold())
    tokens: list[str] = []
    for chunk in text.split():
        if not policy.split_punctuation:
            tokens.append(chunk)
            continue
        word = []
        for ch in chunk:
            if _is_punctuation(ch):
                if word:
                    tokens.append("".join(word))
                    word = []
                tokens.append(ch)
            else:
                word.append(ch)
        if word:
            tokens.append("".join(word))
    return tuple(tokens)


def ngrams(tokens: Iterable[str], n: int) -> NGramCounts:
    """Count every contiguous ``n``-token window.

    The counts always sum to ``max(0, len(tokens) - n + 1)``; sequences
    shorter than ``n`` yield an empty counter.
    """
    if n < 1:
        raise ValueError(f"n-gram order must be >= 1, got {n}")
    toks = tuple(tokens)
    return Counter(toks[i : i + n] for i in range(len(toks) - n + 1))


@dataclass(frozen=True)
class Segment:
    """One tokenized sentence; the atomic scoring unit."""

    id: str
    tokens: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.tokens)

    @property
    def text(self) -> str:
        return " ".join(self.tokens)


def make_segments(lines: Iterable[str], policy: TokenizationPolicy = DEFAULT_POLICY) -> list[Segment]:
    """Tokenize raw lines into positionally-identified segments."""
    return [Segment(id=str(i), tokens=tokenize(line, policy)) for i, line in enumerate(lines)]


@dataclass(frozen=True)
class EvaluationSet:
    """Aligned candidates and references for a set of systems and documents.

    ``systems`` maps system id -> document id -> segment list, ``references``
    maps document id -> list of reference versions (each a segment list).
    Alignment is positional: line k of every file for a document is segment k.
    Treat instances as immutable once built.
    """

    documents: tuple[str, ...]
    systems: Mapping[str, Mapping[str, list[Segment]]]
    references: Mapping[str, list[list[Segment]]]
    policy: TokenizationPolicy = DEFAULT_POLICY
    sources: Mapping[str, list[str]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for doc in self.documents:
            versions = self.references.get(doc, [])
            if not versions:
                raise AlignmentError(f"document {doc!r} has no reference version")
            counts = {f"reference {i + 1}": len(v) for i, v in enumerate(versions)}
            for sys_id, docs in self.systems.items():
                counts[f"system {sys_id}"] = len(docs[doc])
            if len(set(counts.values())) > 1:
                detail = ", ".join(f"{name}={n}" for name, n in sorted(counts.items()))
                raise AlignmentError(f"document {doc!r}: segment counts differ ({detail})")

    @property
    def system_ids(self) -> tuple[str, ...]:
        return tuple(sorted(self.systems))

    def reference_versions(self, doc: str) -> int:
        return len(self.references[doc])

    def segment_count(self, doc: str) -> int:
        return len(self.references[doc][0])

    def references_for(self, doc: str, index: int, version: int | None = None) -> list[Segment]:
        """Reference segment(s) at one position: one version or all of them."""
        if version is not None:
            return [self.references[doc][version][index]]
        return [v[index] for v in self.references[doc]]


def read_segment_file(path: str | Path, policy: TokenizationPolicy = DEFAULT_POLICY) -> list[Segment]:
    """Read a one-segment-per-line UTF-8 file. CR characters are stripped."""
    raw = Path(path).read_bytes()
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as e:
        raise IngestionError(f"{path}: invalid UTF-8 at byte offset {e.start}") from None
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return make_segments((line.rstrip("\r") for line in lines), policy)


def _read_raw_lines(path: Path) -> list[str]:
    raw = path.read_bytes()
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as e:
        raise IngestionError(f"{path}: invalid UTF-8 at byte offset {e.start}") from None
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return [line.rstrip("\r") for line in lines]


def load_evaluation_set(
    manifest: str | Path | Mapping,
    policy: TokenizationPolicy = DEFAULT_POLICY,
) -> EvaluationSet:
    """Build an :class:`EvaluationSet` from a JSON manifest.

    Manifest shape::

        {"documents": [{"id": "doc1",
                        "systems": {"E1": "e1.txt", ...},
                        "references": ["ref1.txt", "ref2.txt"],
                        "source": "src.txt"}]}          # source optional

    Relative paths are resolved against the manifest's own directory.
    Files aligned to the same document must have identical line counts.
    """
    base = Path(".")
    if isinstance(manifest, (str, Path)):
        manifest_path = Path(manifest)
        base = manifest_path.parent
        try:
            manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as e:
            raise IngestionError(f"{manifest_path}: invalid JSON ({e})") from None

    doc_entries = manifest.get("documents")
    if not doc_entries:
        raise IngestionError("manifest has no documents")

    documents: list[str] = []
    systems: dict[str, dict[str, list[Segment]]] = {}
    references: dict[str, list[list[Segment]]] = {}
    sources: dict[str, list[str]] = {}

    for entry in doc_entries:
        doc_id = entry["id"]
        documents.append(doc_id)
        ref_paths = [base / p for p in entry.get("references", [])]
        if not ref_paths:
            raise IngestionError(f"document {doc_id!r}: manifest lists no references")
        ref_versions = [read_segment_file(p, policy) for p in ref_paths]
        references[doc_id] = ref_versions

        counts = {str(p): len(v) for p, v in zip(ref_paths, ref_versions)}
        for sys_id, rel in entry.get("systems", {}).items():
            path = base / rel
            segs = read_segment_file(path, policy)
            systems.setdefault(sys_id, {})[doc_id] = segs
            counts[str(path)] = len(segs)
        if len(set(counts.values())) > 1:
            detail = ", ".join(f"{p}: {n} lines" for p, n in sorted(counts.items()))
            raise AlignmentError(f"document {doc_id!r}: aligned files disagree ({detail})")

        if "source" in entry:
            sources[doc_id] = _read_raw_lines(base / entry["source"])

    # Every system must cover every document.
    for sys_id, docs in systems.items():
        missing = [d for d in documents if d not in docs]
        if missing:
            raise IngestionError(f"system {sys_id!r} missing documents: {missing}")

    return EvaluationSet(
        documents=tuple(documents),
        systems=systems,
        references=references,
        policy=policy,
        sources=sources,
    )
