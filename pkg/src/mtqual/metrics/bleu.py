"""BLEU: geometric mean of clipped n-gram precisions times a brevity penalty.

Modified n-gram precision clips each candidate n-gram count at the maximum
count observed for that n-gram in any single reference.  Per-order matches
and totals are pooled over all segments before the precision quotient is
taken, so the corpus score is not a mean of sentence scores.  The brevity
penalty is exp(1 - r/c) for candidate length c below the effective
reference length r, where r sums the per-segment reference length closest
to the candidate length (ties resolved toward the shorter reference).

Orders that contribute no candidate n-grams at all (every segment shorter
than the order) are dropped and the remaining weights renormalised, so a
corpus of identical short segments still scores exactly 1.0.

Sentence-level scoring supports two smoothing modes for zero-match orders:

* ``add_one``   p_n = (m_n + 1) / (t_n + 1)
* ``exp_decay`` p_n = 1 / (2^k * t_n) for the k-th consecutive zero order

With ``smoothing="none"`` any zero-match order forces a 0.0 score.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from ..corpus import Segment, ngrams
from ..errors import ScoringError, UndefinedPrecisionError

SMOOTHING_MODES = ("none", "add_one", "exp_decay")


def _tokens(segment: Segment | Sequence[str]) -> tuple[str, ...]:
    if isinstance(segment, Segment):
        return segment.tokens
    return tuple(segment)


@dataclass(frozen=True)
class BleuConfig:
    """Scoring knobs: maximum order, per-order weights, smoothing mode."""

    max_order: int = 4
    weights: tuple[float, ...] | None = None
    smoothing: str = "none"

    def __post_init__(self) -> None:
        if self.max_order < 1:
            raise ValueError(f"max_order must be >= 1, got {self.max_order}")
        if self.smoothing not in SMOOTHING_MODES:
            raise ValueError(
                f"unknown smoothing {self.smoothing!r}; expected one of {SMOOTHING_MODES}"
            )
        if self.weights is not None:
            if len(self.weights) != self.max_order:
                raise ValueError(
                    f"expected {self.max_order} weights, got {len(self.weights)}"
                )
            if any(w < 0 for w in self.weights):
                raise ValueError("weights must be non-negative")
            if not math.isclose(sum(self.weights), 1.0, abs_tol=1e-9):
                raise ValueError("weights must sum to 1")

    def resolved_weights(self) -> tuple[float, ...]:
        if self.weights is not None:
            return tuple(self.weights)
        return tuple(1.0 / self.max_order for _ in range(self.max_order))


@dataclass(frozen=True)
class BleuScore:
    """Score value plus the quantities it was assembled from."""

    value: float
    precisions: tuple[float, ...]
    matches: tuple[int, ...]
    totals: tuple[int, ...]
    brevity_penalty: float
    candidate_length: int
    reference_length: int
    smoothing: str = "none"
    degenerate_orders: tuple[int, ...] = ()

    def components(self) -> dict:
        return {
            "precisions": list(self.precisions),
            "matches": list(self.matches),
            "totals": list(self.totals),
            "brevity_penalty": self.brevity_penalty,
            "candidate_length": self.candidate_length,
            "reference_length": self.reference_length,
            "smoothing": self.smoothing,
            "degenerate_orders": list(self.degenerate_orders),
        }


def modified_precision(
    candidate: Segment | Sequence[str],
    references: Sequence[Segment | Sequence[str]],
    n: int,
) -> tuple[int, int]:
    """Return (clipped matches, candidate n-gram total) for one segment.

    Each candidate n-gram counts at most as often as it appears in the
    single reference where it is most frequent.
    """
    cand = _tokens(candidate)
    if not cand:
        raise UndefinedPrecisionError(
            "modified precision is undefined for an empty candidate"
        )
    if not references:
        raise ScoringError("at least one reference is required")
    cand_counts = ngrams(cand, n)
    total = sum(cand_counts.values())
    if total == 0:
        return 0, 0
    max_ref_counts: dict[tuple[str, ...], int] = {}
    for ref in references:
        for gram, count in ngrams(_tokens(ref), n).items():
            if count > max_ref_counts.get(gram, 0):
                max_ref_counts[gram] = count
    matches = sum(
        min(count, max_ref_counts.get(gram, 0)) for gram, count in cand_counts.items()
    )
    return matches, total


def closest_reference_length(
    candidate_length: int, reference_lengths: Sequence[int]
) -> int:
    """Reference length nearest the candidate; ties go to the shorter one."""
    if not reference_lengths:
        raise ScoringError("at least one reference is required")
    return min(reference_lengths, key=lambda r: (abs(r - candidate_length), r))


def brevity_penalty(candidate_length: int, reference_lengths: Sequence[int]) -> float:
    """Penalty against the closest reference length (ties toward shorter).

    Returns 1.0 when the candidate is at least that long, else
    exp(1 - r/c).
    """
    if candidate_length < 1:
        raise ScoringError(f"candidate length must be >= 1, got {candidate_length}")
    effective = closest_reference_length(candidate_length, reference_lengths)
    return _length_penalty(candidate_length, effective)


def _length_penalty(candidate_length: int, reference_length: int) -> float:
    if candidate_length <= 0:
        return 0.0
    if candidate_length >= reference_length:
        return 1.0
    return math.exp(1.0 - reference_length / candidate_length)


def _smoothed_precisions(
    matches: Sequence[int], totals: Sequence[int], smoothing: str
) -> list[float]:
    # Only orders with a non-zero total reach this point.
    precisions: list[float] = []
    zero_streak = 0
    for m, t in zip(matches, totals):
        if m > 0:
            precisions.append(m / t)
        elif smoothing == "add_one":
            precisions.append((m + 1) / (t + 1))
        elif smoothing == "exp_decay":
            zero_streak += 1
            precisions.append(1.0 / (2**zero_streak * t))
        else:
            precisions.append(0.0)
    return precisions


def _assemble(
    matches: list[int],
    totals: list[int],
    cand_len: int,
    ref_len: int,
    config: BleuConfig,
) -> BleuScore:
    weights = config.resolved_weights()
    live = [i for i, t in enumerate(totals) if t > 0]
    degenerate = tuple(i + 1 for i, t in enumerate(totals) if t == 0)
    bp = _length_penalty(cand_len, ref_len)
    if not live:
        return BleuScore(
            value=0.0,
            precisions=tuple(0.0 for _ in totals),
            matches=tuple(matches),
            totals=tuple(totals),
            brevity_penalty=bp,
            candidate_length=cand_len,
            reference_length=ref_len,
            smoothing=config.smoothing,
            degenerate_orders=degenerate,
        )
    live_matches = [matches[i] for i in live]
    live_totals = [totals[i] for i in live]
    live_precisions = _smoothed_precisions(live_matches, live_totals, config.smoothing)
    precisions = [0.0] * len(totals)
    for slot, i in enumerate(live):
        precisions[i] = live_precisions[slot]
    weight_mass = sum(weights[i] for i in live)
    if weight_mass <= 0 or any(p == 0.0 for p in live_precisions):
        value = 0.0
    else:
        log_mean = sum(
            (weights[i] / weight_mass) * math.log(precisions[i]) for i in live
        )
        value = bp * math.exp(log_mean)
    return BleuScore(
        value=value,
        precisions=tuple(precisions),
        matches=tuple(matches),
        totals=tuple(totals),
        brevity_penalty=bp,
        candidate_length=cand_len,
        reference_length=ref_len,
        smoothing=config.smoothing,
        degenerate_orders=degenerate,
    )


def _segment_counts(
    candidate: Segment | Sequence[str],
    references: Sequence[Segment | Sequence[str]],
    max_order: int,
) -> tuple[list[int], list[int], int, int]:
    cand = _tokens(candidate)
    ref_lengths = [len(_tokens(r)) for r in references]
    closest = closest_reference_length(len(cand), ref_lengths)
    matches = [0] * max_order
    totals = [0] * max_order
    if cand:
        for n in range(1, max_order + 1):
            m, t = modified_precision(cand, references, n)
            matches[n - 1] = m
            totals[n - 1] = t
    return matches, totals, len(cand), closest


def bleu_score(
    candidates: Sequence[Segment | Sequence[str]],
    references: Sequence[Sequence[Segment | Sequence[str]]],
    config: BleuConfig | None = None,
    level: str = "corpus",
) -> BleuScore | list[BleuScore]:
    """Score aligned candidate/reference segments.

    ``candidates[i]`` is scored against the reference list ``references[i]``.
    ``level="corpus"`` pools matches, totals, and lengths over all segments
    and returns one score; ``level="sentence"`` returns one score per
    segment.  Empty candidate segments contribute zero counts but their
    closest reference length still enters the corpus brevity penalty.

    When no config is given, corpus scoring uses no smoothing while
    sentence scoring smooths zero-match orders with ``add_one``.
    """
    if level not in ("corpus", "sentence"):
        raise ValueError(f"unknown level {level!r}")
    if config is None:
        config = BleuConfig(smoothing="add_one" if level == "sentence" else "none")
    if len(candidates) != len(references):
        raise ScoringError(
            f"candidate/reference mismatch: {len(candidates)} vs {len(references)}"
        )
    if not candidates:
        raise ScoringError("no segments to score")
    if all(len(_tokens(c)) == 0 for c in candidates):
        raise ScoringError("all candidate segments are empty")

    if level == "sentence":
        scores = []
        for cand, refs in zip(candidates, references):
            matches, totals, c_len, r_len = _segment_counts(
                cand, refs, config.max_order
            )
            scores.append(_assemble(matches, totals, c_len, r_len, config))
        return scores

    pooled_matches = [0] * config.max_order
    pooled_totals = [0] * config.max_order
    cand_len = 0
    ref_len = 0
    for cand, refs in zip(candidates, references):
        matches, totals, c_len, r_len = _segment_counts(cand, refs, config.max_order)
        for i in range(config.max_order):
            pooled_matches[i] += matches[i]
            pooled_totals[i] += totals[i]
        cand_len += c_len
        ref_len += r_len
    return _assemble(pooled_matches, pooled_totals, cand_len, ref_len, config)
