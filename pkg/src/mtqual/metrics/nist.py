"""NIST: information-weighted n-gram co-occurrence with a length brevity factor.

Information weights come from pooled reference counts:

    Info(w1..wn) = log2(count(w1..wn-1) / count(w1..wn))

where the empty prefix count for unigrams is the total reference token
count.  Rare n-grams therefore carry more weight than common ones.

For each order n up to ``max_order`` the score accumulates the summed
information of co-occurring candidate n-grams (clipped at the best single
reference count) divided by the number of candidate n-grams of that order,
then adds the per-order quotients and multiplies by the brevity factor

    exp(beta * log(min(L_sys / L_ref, 1)) ** 2)

with beta calibrated so the factor is 0.5 when the candidate is two thirds
of the average reference length.  L_ref averages the reference version
token counts.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from ..corpus import Segment, ngrams
from ..errors import ScoringError

# Brevity factor is 0.5 when the length ratio is 2/3.
BETA_DEFAULT = math.log(0.5) / math.log(2.0 / 3.0) ** 2

DEFAULT_MAX_ORDER = 5


def _tokens(segment: Segment | Sequence[str]) -> tuple[str, ...]:
    if isinstance(segment, Segment):
        return segment.tokens
    return tuple(segment)


@dataclass(frozen=True)
class InfoWeightTable:
    """Per-order n-gram information weights derived from a reference corpus."""

    max_order: int
    total_tokens: int
    counts: tuple[Mapping[tuple[str, ...], int], ...]

    def count(self, gram: tuple[str, ...]) -> int:
        n = len(gram)
        if not 1 <= n <= self.max_order:
            return 0
        return self.counts[n - 1].get(gram, 0)

    def info(self, gram: tuple[str, ...]) -> float:
        """Information of one n-gram; 0.0 for n-grams unseen in the references."""
        n = len(gram)
        if not 1 <= n <= self.max_order:
            raise ValueError(f"order {n} outside 1..{self.max_order}")
        joint = self.counts[n - 1].get(gram, 0)
        if joint == 0:
            return 0.0
        prefix = self.total_tokens if n == 1 else self.counts[n - 2][gram[:-1]]
        return math.log2(prefix / joint)

    def export_rows(self) -> list[tuple[str, int, float]]:
        """Deterministic (ngram, count, info) rows for inspection dumps."""
        rows = []
        for table in self.counts:
            for gram in sorted(table):
                rows.append((" ".join(gram), table[gram], self.info(gram)))
        return rows


def build_info_weights(
    reference_segments: Iterable[Segment | Sequence[str]],
    max_order: int = DEFAULT_MAX_ORDER,
) -> InfoWeightTable:
    """Count n-grams of every order over the pooled reference segments.

    Pass every reference version of every document; the table is a corpus
    statistic, not a per-segment one.
    """
    if max_order < 1:
        raise ValueError(f"max_order must be >= 1, got {max_order}")
    counters: list[Counter] = [Counter() for _ in range(max_order)]
    total = 0
    for segment in reference_segments:
        tokens = _tokens(segment)
        total += len(tokens)
        for n in range(1, max_order + 1):
            counters[n - 1].update(ngrams(tokens, n))
    if total == 0:
        raise ScoringError("reference corpus is empty")
    return InfoWeightTable(
        max_order=max_order,
        total_tokens=total,
        counts=tuple(dict(c) for c in counters),
    )


@dataclass(frozen=True)
class NistScore:
    """Score value plus per-order sums and the length ratio that shaped it."""

    value: float
    info_sums: tuple[float, ...]
    totals: tuple[int, ...]
    brevity_factor: float
    candidate_length: int
    reference_length: float
    beta: float

    def components(self) -> dict:
        return {
            "info_sums": list(self.info_sums),
            "totals": list(self.totals),
            "brevity_factor": self.brevity_factor,
            "candidate_length": self.candidate_length,
            "reference_length": self.reference_length,
            "beta": self.beta,
        }


def brevity_factor(
    candidate_length: int, reference_length: float, beta: float = BETA_DEFAULT
) -> float:
    """exp(beta * log^2) length factor; 1.0 at or above the reference length."""
    if reference_length <= 0:
        raise ScoringError("reference length must be positive")
    if candidate_length <= 0:
        return 0.0
    ratio = min(candidate_length / reference_length, 1.0)
    return math.exp(beta * math.log(ratio) ** 2)


def nist_score(
    candidates: Sequence[Segment | Sequence[str]],
    references: Sequence[Sequence[Segment | Sequence[str]]],
    info: InfoWeightTable,
    max_order: int | None = None,
    beta: float = BETA_DEFAULT,
) -> NistScore:
    """Score aligned candidate/reference segments against an info table.

    Co-occurrence is clipped at the best single-reference count, mirroring
    modified precision.  Orders where the candidates contribute no n-grams
    add nothing.  L_ref averages, per segment, the reference version
    lengths, summed over segments.
    """
    if len(candidates) != len(references):
        raise ScoringError(
            f"candidate/reference mismatch: {len(candidates)} vs {len(references)}"
        )
    if not candidates:
        raise ScoringError("no segments to score")
    if all(len(_tokens(c)) == 0 for c in candidates):
        raise ScoringError("all candidate segments are empty")
    order = info.max_order if max_order is None else max_order
    if order > info.max_order:
        raise ScoringError(
            f"info table only covers orders up to {info.max_order}, asked for {order}"
        )

    info_sums = [0.0] * order
    totals = [0] * order
    cand_len = 0
    ref_len = 0.0
    for cand, refs in zip(candidates, references):
        tokens = _tokens(cand)
        if not refs:
            raise ScoringError("at least one reference is required")
        cand_len += len(tokens)
        ref_len += sum(len(_tokens(r)) for r in refs) / len(refs)
        for n in range(1, order + 1):
            cand_counts = ngrams(tokens, n)
            if not cand_counts:
                continue
            max_ref_counts: Counter = Counter()
            for ref in refs:
                for gram, count in ngrams(_tokens(ref), n).items():
                    if count > max_ref_counts[gram]:
                        max_ref_counts[gram] = count
            totals[n - 1] += sum(cand_counts.values())
            info_sums[n - 1] += sum(
                min(count, max_ref_counts[gram]) * info.info(gram)
                for gram, count in cand_counts.items()
                if gram in max_ref_counts
            )

    factor = brevity_factor(cand_len, ref_len, beta)
    mean = sum(
        info_sums[i] / totals[i] for i in range(order) if totals[i] > 0
    )
    return NistScore(
        value=mean * factor,
        info_sums=tuple(info_sums),
        totals=tuple(totals),
        brevity_factor=factor,
        candidate_length=cand_len,
        reference_length=ref_len,
        beta=beta,
    )
