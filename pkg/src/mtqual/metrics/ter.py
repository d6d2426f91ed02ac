"""TER: word edit distance plus block shifts, over the average reference length.

The edit model is insertion, deletion, substitution (each cost 1) plus a
block shift (cost 1) that moves a contiguous candidate block to another
position.  Shifts are searched greedily: every block of up to
``max_shift_block`` words whose content exactly matches a reference span
is tried at that span's position, and the shift whose resulting edit
distance is lowest is accepted only when total edits strictly decrease
(ties between candidate shifts break toward the smallest start, length,
destination triple).  The loop stops after ``max_iterations`` accepted
shifts; hitting either cap is reported on the trace rather than silently
changing the score.

With multiple references the candidate is scored against each and the
cheapest edit total wins, while the denominator stays the average
reference token count:

    TER = min_edits / avg_reference_length

An empty candidate costs one insertion per reference word.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..corpus import Segment
from ..errors import ScoringError

DEFAULT_MAX_SHIFT_BLOCK = 10
DEFAULT_MAX_ITERATIONS = 50


def _tokens(segment: Segment | Sequence[str]) -> tuple[str, ...]:
    if isinstance(segment, Segment):
        return segment.tokens
    return tuple(segment)


@dataclass(frozen=True)
class EditTrace:
    """Edit counts by kind plus the shifted blocks in application order."""

    insertions: int
    deletions: int
    substitutions: int
    shifts: int
    shifted_blocks: tuple[tuple[int, int, int], ...] = ()
    caps_hit: bool = False

    @property
    def total_edits(self) -> int:
        return self.insertions + self.deletions + self.substitutions + self.shifts

    def components(self) -> dict:
        return {
            "insertions": self.insertions,
            "deletions": self.deletions,
            "substitutions": self.substitutions,
            "shifts": self.shifts,
            "shifted_blocks": [list(b) for b in self.shifted_blocks],
            "caps_hit": self.caps_hit,
            "total_edits": self.total_edits,
        }


@dataclass(frozen=True)
class TerScore:
    """Error rate plus the trace and denominator it came from."""

    value: float
    edits: EditTrace
    avg_reference_length: float
    reference_index: int | None = 0
    segments: int = 1

    def components(self) -> dict:
        out = self.edits.components()
        out["avg_reference_length"] = self.avg_reference_length
        out["reference_index"] = self.reference_index
        out["segments"] = self.segments
        return out


def word_edit_distance(
    candidate: Segment | Sequence[str], reference: Segment | Sequence[str]
) -> int:
    """Plain word-level Levenshtein distance, no shifts."""
    cand = _tokens(candidate)
    ref = _tokens(reference)
    previous = list(range(len(ref) + 1))
    for i, cword in enumerate(cand, start=1):
        current = [i] + [0] * len(ref)
        for j, rword in enumerate(ref, start=1):
            sub = previous[j - 1] + (0 if cword == rword else 1)
            current[j] = min(sub, previous[j] + 1, current[j - 1] + 1)
        previous = current
    return previous[len(ref)]


def _edit_counts(
    cand: Sequence[str], ref: Sequence[str]
) -> tuple[int, int, int]:
    """(insertions, deletions, substitutions) along one cheapest edit path.

    Backtrace prefers the diagonal, then deletion, then insertion, so the
    per-kind split is deterministic even when several paths tie.
    """
    rows = len(cand) + 1
    cols = len(ref) + 1
    dp = [[0] * cols for _ in range(rows)]
    for i in range(1, rows):
        dp[i][0] = i
    for j in range(1, cols):
        dp[0][j] = j
    for i in range(1, rows):
        for j in range(1, cols):
            sub = dp[i - 1][j - 1] + (0 if cand[i - 1] == ref[j - 1] else 1)
            dp[i][j] = min(sub, dp[i - 1][j] + 1, dp[i][j - 1] + 1)
    insertions = deletions = substitutions = 0
    i, j = len(cand), len(ref)
    while i > 0 or j > 0:
        if i > 0 and j > 0:
            diag = dp[i - 1][j - 1] + (0 if cand[i - 1] == ref[j - 1] else 1)
            if dp[i][j] == diag:
                if cand[i - 1] != ref[j - 1]:
                    substitutions += 1
                i -= 1
                j -= 1
                continue
        if i > 0 and dp[i][j] == dp[i - 1][j] + 1:
            deletions += 1
            i -= 1
            continue
        insertions += 1
        j -= 1
    return insertions, deletions, substitutions


def _longest_common_block(cand: Sequence[str], ref: Sequence[str]) -> int:
    best = 0
    for i in range(len(cand)):
        for j in range(len(ref)):
            if i > 0 and j > 0 and cand[i - 1] == ref[j - 1]:
                continue  # not the start of a run
            length = 0
            while (
                i + length < len(cand)
                and j + length < len(ref)
                and cand[i + length] == ref[j + length]
            ):
                length += 1
            if length > best:
                best = length
    return best


def _best_shift(
    cand: list[str], ref: Sequence[str], max_block: int
) -> tuple[int, int, int, int, list[str]] | None:
    """Cheapest single shift as (distance, start, length, destination, result)."""
    best: tuple[int, int, int, int, list[str]] | None = None
    for i in range(len(cand)):
        for length in range(1, min(max_block, len(cand) - i) + 1):
            block = cand[i : i + length]
            for j in range(len(ref) - length + 1):
                if ref[j : j + length] != block:
                    continue
                remainder = cand[:i] + cand[i + length :]
                insert_at = min(j, len(remainder))
                shifted = remainder[:insert_at] + block + remainder[insert_at:]
                if shifted == cand:
                    continue
                distance = word_edit_distance(shifted, ref)
                key = (distance, i, length, insert_at)
                if best is None or key < (best[0], best[1], best[2], best[3]):
                    best = (distance, i, length, insert_at, shifted)
    return best


def _edits_against(
    candidate: Sequence[str],
    reference: Sequence[str],
    max_block: int,
    max_iterations: int,
) -> EditTrace:
    current = list(candidate)
    ref = list(reference)
    distance = word_edit_distance(current, ref)
    block_capped = _longest_common_block(current, ref) > max_block
    shifted_blocks: list[tuple[int, int, int]] = []
    iter_capped = False
    while True:
        best = _best_shift(current, ref, max_block)
        improves = best is not None and best[0] + 1 < distance
        if not improves:
            break
        if len(shifted_blocks) >= max_iterations:
            iter_capped = True
            break
        distance, start, length, dest, current = best  # type: ignore[misc]
        shifted_blocks.append((start, length, dest))
    insertions, deletions, substitutions = _edit_counts(current, ref)
    return EditTrace(
        insertions=insertions,
        deletions=deletions,
        substitutions=substitutions,
        shifts=len(shifted_blocks),
        shifted_blocks=tuple(shifted_blocks),
        caps_hit=block_capped or iter_capped,
    )


def ter_score(
    candidate: Segment | Sequence[str],
    references: Sequence[Segment | Sequence[str]],
    max_shift_block: int = DEFAULT_MAX_SHIFT_BLOCK,
    max_iterations: int = DEFAULT_MAX_ITERATIONS,
) -> TerScore:
    """Score one candidate segment against its reference versions."""
    cand = _tokens(candidate)
    refs = [_tokens(r) for r in references]
    if not refs:
        raise ScoringError("at least one reference is required")
    if all(not r for r in refs):
        raise ScoringError("every reference version is empty")
    best_trace: EditTrace | None = None
    best_index = 0
    for index, ref in enumerate(refs):
        trace = _edits_against(cand, ref, max_shift_block, max_iterations)
        if best_trace is None or trace.total_edits < best_trace.total_edits:
            best_trace = trace
            best_index = index
    assert best_trace is not None
    avg_len = sum(len(r) for r in refs) / len(refs)
    return TerScore(
        value=best_trace.total_edits / avg_len,
        edits=best_trace,
        avg_reference_length=avg_len,
        reference_index=best_index,
    )


def ter_corpus(
    candidates: Sequence[Segment | Sequence[str]],
    references: Sequence[Sequence[Segment | Sequence[str]]],
    max_shift_block: int = DEFAULT_MAX_SHIFT_BLOCK,
    max_iterations: int = DEFAULT_MAX_ITERATIONS,
) -> TerScore:
    """Pool edit totals and average reference lengths over all segments."""
    if len(candidates) != len(references):
        raise ScoringError(
            f"candidate/reference mismatch: {len(candidates)} vs {len(references)}"
        )
    if not candidates:
        raise ScoringError("no segments to score")
    total_edits = 0
    total_len = 0.0
    insertions = deletions = substitutions = shifts = 0
    caps = False
    for index, (cand, refs) in enumerate(zip(candidates, references)):
        try:
            score = ter_score(cand, refs, max_shift_block, max_iterations)
        except ScoringError as exc:
            raise ScoringError(f"segment {index}: {exc}") from exc
        total_edits += score.edits.total_edits
        total_len += score.avg_reference_length
        insertions += score.edits.insertions
        deletions += score.edits.deletions
        substitutions += score.edits.substitutions
        shifts += score.edits.shifts
        caps = caps or score.edits.caps_hit
    if total_len == 0:
        raise ScoringError("every reference segment is empty")
    trace = EditTrace(
        insertions=insertions,
        deletions=deletions,
        substitutions=substitutions,
        shifts=shifts,
        caps_hit=caps,
    )
    return TerScore(
        value=total_edits / total_len,
        edits=trace,
        avg_reference_length=total_len,
        reference_index=None,
        segments=len(candidates),
    )
