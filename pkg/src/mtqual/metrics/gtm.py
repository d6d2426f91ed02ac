"""GTM: unigram-based F-measure over a maximum word matching.

With the default run exponent of 1.0 the size of a maximum bipartite
matching between candidate and reference words reduces to a bag
intersection:

    match = sum over w of min(count_cand(w), count_ref(w))

because words only match identical words, so the match graph splits into
one complete block per distinct word.  Precision divides by the candidate
length, recall by the reference length, and F is their harmonic mean.

An exponent above 1.0 rewards contiguous runs of matched words: runs are
picked greedily longest-first (ties toward the earliest candidate, then
earliest reference position) and the match size becomes
(sum over runs of len^e)^(1/e), a generalisation that leaves e=1 exact.

Multiple references score one at a time; the best F wins.  Corpus level
pools match sizes and lengths over segments before forming P, R, and F.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from ..corpus import Segment
from ..errors import ScoringError


def _tokens(segment: Segment | Sequence[str]) -> tuple[str, ...]:
    if isinstance(segment, Segment):
        return segment.tokens
    return tuple(segment)


@dataclass(frozen=True)
class GtmScore:
    """F-measure plus the match size and lengths behind it."""

    value: float
    precision: float
    recall: float
    match_size: float
    candidate_length: int
    reference_length: int
    exponent: float = 1.0
    degenerate: bool = False

    def components(self) -> dict:
        return {
            "precision": self.precision,
            "recall": self.recall,
            "match_size": self.match_size,
            "candidate_length": self.candidate_length,
            "reference_length": self.reference_length,
            "exponent": self.exponent,
            "degenerate": self.degenerate,
        }


def maximum_match_size(
    candidate: Segment | Sequence[str], reference: Segment | Sequence[str]
) -> int:
    """Size of a maximum word matching: the multiset intersection size."""
    cand = Counter(_tokens(candidate))
    ref = Counter(_tokens(reference))
    return sum(min(count, ref[word]) for word, count in cand.items())


def run_match_size(
    candidate: Segment | Sequence[str],
    reference: Segment | Sequence[str],
    exponent: float,
) -> float:
    """Greedy longest-run match size: (sum of run lengths ** e) ** (1/e).

    Runs are maximal contiguous blocks equal in both texts over positions
    not yet consumed by an earlier (longer) run.
    """
    if exponent <= 0:
        raise ValueError(f"exponent must be positive, got {exponent}")
    cand = _tokens(candidate)
    ref = _tokens(reference)
    cand_free = [True] * len(cand)
    ref_free = [True] * len(ref)
    total = 0.0
    matched = 0
    while True:
        best_len = 0
        best_pos: tuple[int, int] | None = None
        for i in range(len(cand)):
            for j in range(len(ref)):
                length = 0
                while (
                    i + length < len(cand)
                    and j + length < len(ref)
                    and cand_free[i + length]
                    and ref_free[j + length]
                    and cand[i + length] == ref[j + length]
                ):
                    length += 1
                if length > best_len:
                    best_len = length
                    best_pos = (i, j)
        if best_len == 0:
            break
        i, j = best_pos  # type: ignore[misc]
        for k in range(best_len):
            cand_free[i + k] = False
            ref_free[j + k] = False
        total += float(best_len) ** exponent
        matched += best_len
    if exponent == 1.0:
        return float(matched)
    return total ** (1.0 / exponent)


def _pair_match(
    candidate: Segment | Sequence[str],
    reference: Segment | Sequence[str],
    exponent: float,
) -> float:
    if exponent == 1.0:
        return float(maximum_match_size(candidate, reference))
    return run_match_size(candidate, reference, exponent)


def _f_measure(match: float, cand_len: int, ref_len: int) -> tuple[float, float, float]:
    precision = match / cand_len if cand_len else 0.0
    recall = match / ref_len if ref_len else 0.0
    if precision + recall == 0.0:
        return precision, recall, 0.0
    return precision, recall, 2.0 * precision * recall / (precision + recall)


def gtm_score(
    candidates: Sequence[Segment | Sequence[str]],
    references: Sequence[Sequence[Segment | Sequence[str]]],
    level: str = "corpus",
    exponent: float = 1.0,
) -> GtmScore | list[GtmScore]:
    """Score aligned candidate/reference segments.

    Per segment the reference version with the best F is kept.  Corpus
    level sums match sizes and both lengths of the chosen versions before
    forming the final quotients.  A segment where either side is empty
    scores zero and is flagged degenerate; it is an error only when every
    candidate and every reference in the corpus is empty.
    """
    if level not in ("corpus", "sentence"):
        raise ValueError(f"unknown level {level!r}")
    if exponent <= 0:
        raise ValueError(f"exponent must be positive, got {exponent}")
    if len(candidates) != len(references):
        raise ScoringError(
            f"candidate/reference mismatch: {len(candidates)} vs {len(references)}"
        )
    if not candidates:
        raise ScoringError("no segments to score")

    per_segment: list[GtmScore] = []
    any_content = False
    for cand, refs in zip(candidates, references):
        if not refs:
            raise ScoringError("at least one reference is required")
        cand_tokens = _tokens(cand)
        best: GtmScore | None = None
        for ref in refs:
            ref_tokens = _tokens(ref)
            if not cand_tokens or not ref_tokens:
                score = GtmScore(
                    value=0.0,
                    precision=0.0,
                    recall=0.0,
                    match_size=0.0,
                    candidate_length=len(cand_tokens),
                    reference_length=len(ref_tokens),
                    exponent=exponent,
                    degenerate=True,
                )
            else:
                match = _pair_match(cand_tokens, ref_tokens, exponent)
                precision, recall, f = _f_measure(
                    match, len(cand_tokens), len(ref_tokens)
                )
                score = GtmScore(
                    value=f,
                    precision=precision,
                    recall=recall,
                    match_size=match,
                    candidate_length=len(cand_tokens),
                    reference_length=len(ref_tokens),
                    exponent=exponent,
                )
            if best is None or score.value > best.value:
                best = score
        assert best is not None
        per_segment.append(best)
        if best.candidate_length or best.reference_length:
            any_content = True
    if not any_content:
        raise ScoringError("every candidate and reference segment is empty")

    if level == "sentence":
        return per_segment

    match_sum = sum(s.match_size for s in per_segment)
    cand_len = sum(s.candidate_length for s in per_segment)
    ref_len = sum(s.reference_length for s in per_segment)
    precision, recall, f = _f_measure(match_sum, cand_len, ref_len)
    return GtmScore(
        value=f,
        precision=precision,
        recall=recall,
        match_size=match_sum,
        candidate_length=cand_len,
        reference_length=ref_len,
        exponent=exponent,
        degenerate=any(s.degenerate for s in per_segment),
    )
