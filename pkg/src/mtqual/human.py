"""Human adequacy judgments: a 5-point scale over ten linguistic parameters.

Judges rate each system output per segment on ten parameters, each on a
1..5 scale.  Aggregation averages without weighting: per judge over the
parameters they rated, then over judges, then (for system level) over
segments.  The normalised value maps the 1..5 mean onto 0..1 via
(mean - 1) / 4 so human scores share a scale with the automatic metrics.

Correlation against metric scores reports Pearson's r on the raw paired
values and Spearman's rho on average ranks, with an explicit error when
either side has no variance, plus system rankings and whether each
metric's ranking agrees with the human one.
"""

from __future__ import annotations

import csv
import io
import json
import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import CorrelationError, IngestionError

PARAMETER_LABELS: dict[int, str] = {
    1: "Translation of Gender and Number of the Noun/s.",
    2: "Translation of tense in the source sentence.",
    3: "Translation of Voice in the source sentence.",
    4: "Identification of the Proper Nouns.",
    5: "Use of Adjectives and Adverbs corresponding to the nouns and verbs in the source sentence.",
    6: "Selection of proper words / synonyms.",
    7: "The sequence of Noun, Helping Verb and Verb in the translation.",
    8: "Use of Punctuation signs in the translation.",
    9: "Maintaining the stress on the significant part in the source sentence in the translation.",
    10: "Maintaining the semantics of the source sentence in the translation.",
}

SCALE_LABELS: dict[int, str] = {
    1: "Unacceptable",
    2: "Barely Understandable",
    3: "Understandable",
    4: "Good",
    5: "Excellent",
}

RATINGS_CSV_FIELDS = (
    "judge_id",
    "system_id",
    "document",
    "segment_index",
    "parameter",
    "rating",
)


def parameter_label(parameter: int) -> str:
    """Text of one of the ten judged parameters."""
    if parameter not in PARAMETER_LABELS:
        raise ValueError(f"parameter must lie in 1..10, got {parameter}")
    return PARAMETER_LABELS[parameter]


def scale_label(rating: int) -> str:
    """Text of one of the five scale points."""
    if rating not in SCALE_LABELS:
        raise ValueError(f"rating must lie in 1..5, got {rating}")
    return SCALE_LABELS[rating]


@dataclass(frozen=True)
class HumanRating:
    """One judge's rating of one parameter for one system output segment."""

    judge_id: str
    system_id: str
    document: str
    segment_index: int
    parameter: int
    rating: int

    def __post_init__(self) -> None:
        if not self.judge_id:
            raise ValueError("judge_id must be non-empty")
        if not self.system_id:
            raise ValueError("system_id must be non-empty")
        if self.segment_index < 0:
            raise ValueError(f"segment_index must be >= 0, got {self.segment_index}")
        if self.parameter not in PARAMETER_LABELS:
            raise ValueError(f"parameter must lie in 1..10, got {self.parameter}")
        if self.rating not in SCALE_LABELS:
            raise ValueError(f"rating must lie in 1..5, got {self.rating}")


@dataclass(frozen=True)
class HumanScore:
    """Aggregated mean rating with its 0..1 normalisation and coverage."""

    system_id: str
    mean: float
    normalized: float
    coverage: float
    n_ratings: int
    document: str | None = None
    segment_index: int | None = None


def read_ratings_csv(source) -> list[HumanRating]:
    """Parse ratings from a CSV path or file-like object.

    Expected header: judge_id,system_id,document,segment_index,parameter,rating
    """
    if hasattr(source, "read"):
        return _parse_ratings(source)
    with open(source, newline="", encoding="utf-8") as handle:
        return _parse_ratings(handle)


def _parse_ratings(handle) -> list[HumanRating]:
    reader = csv.DictReader(handle)
    if reader.fieldnames is None:
        raise IngestionError("ratings CSV is empty")
    missing = [f for f in RATINGS_CSV_FIELDS if f not in reader.fieldnames]
    if missing:
        raise IngestionError(f"ratings CSV is missing columns: {', '.join(missing)}")
    ratings = []
    for lineno, row in enumerate(reader, start=2):
        try:
            ratings.append(
                HumanRating(
                    judge_id=row["judge_id"],
                    system_id=row["system_id"],
                    document=row["document"],
                    segment_index=int(row["segment_index"]),
                    parameter=int(row["parameter"]),
                    rating=int(row["rating"]),
                )
            )
        except (TypeError, ValueError) as exc:
            raise IngestionError(f"ratings CSV line {lineno}: {exc}") from exc
    return ratings


def write_ratings_csv(ratings: Iterable[HumanRating], handle=None) -> str:
    """Serialise ratings; returns the CSV text and optionally writes it."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(RATINGS_CSV_FIELDS)
    for r in ratings:
        writer.writerow(
            [r.judge_id, r.system_id, r.document, r.segment_index, r.parameter, r.rating]
        )
    text = out.getvalue()
    if handle is not None:
        handle.write(text)
    return text


def _mean(values: Sequence[float]) -> float:
    return sum(values) / len(values)


def _segment_mean(ratings: Sequence[HumanRating]) -> tuple[float, float, int]:
    """(mean, coverage, n) for one (system, document, segment) cell.

    Duplicate submissions of the same (judge, parameter) average first so
    aggregation is order-independent; parameters average per judge, then
    judges average.
    """
    per_judge: dict[str, dict[int, list[int]]] = defaultdict(lambda: defaultdict(list))
    parameters_seen: set[int] = set()
    for r in ratings:
        per_judge[r.judge_id][r.parameter].append(r.rating)
        parameters_seen.add(r.parameter)
    judge_means = []
    for params in per_judge.values():
        param_means = [_mean(vals) for vals in params.values()]
        judge_means.append(_mean(param_means))
    return _mean(judge_means), len(parameters_seen) / 10.0, len(ratings)


def aggregate_human(
    ratings: Sequence[HumanRating], level: str = "system"
) -> list[HumanScore]:
    """Aggregate ratings to segment or system level.

    Segment level yields one score per (system, document, segment_index);
    system level averages a system's segment means.  Results are sorted by
    their keys so equal inputs always serialise identically.
    """
    if level not in ("segment", "system"):
        raise ValueError(f"unknown level {level!r}")
    if not ratings:
        raise ValueError("no ratings to aggregate")
    cells: dict[tuple[str, str, int], list[HumanRating]] = defaultdict(list)
    for r in ratings:
        cells[(r.system_id, r.document, r.segment_index)].append(r)

    segment_scores = []
    for (system_id, document, segment_index) in sorted(cells):
        mean, coverage, n = _segment_mean(cells[(system_id, document, segment_index)])
        segment_scores.append(
            HumanScore(
                system_id=system_id,
                mean=mean,
                normalized=(mean - 1.0) / 4.0,
                coverage=coverage,
                n_ratings=n,
                document=document,
                segment_index=segment_index,
            )
        )
    if level == "segment":
        return segment_scores

    by_system: dict[str, list[HumanScore]] = defaultdict(list)
    for score in segment_scores:
        by_system[score.system_id].append(score)
    system_scores = []
    for system_id in sorted(by_system):
        scores = by_system[system_id]
        mean = _mean([s.mean for s in scores])
        system_scores.append(
            HumanScore(
                system_id=system_id,
                mean=mean,
                normalized=(mean - 1.0) / 4.0,
                coverage=_mean([s.coverage for s in scores]),
                n_ratings=sum(s.n_ratings for s in scores),
            )
        )
    return system_scores


def pearson(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Pearson's r; errors on length mismatch, n < 2, or zero variance."""
    if len(xs) != len(ys):
        raise CorrelationError(f"length mismatch: {len(xs)} vs {len(ys)}")
    if len(xs) < 2:
        raise CorrelationError(f"need at least 2 pairs, got {len(xs)}")
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    dx = x - x.mean()
    dy = y - y.mean()
    sx = float(np.sqrt(np.sum(dx * dx)))
    sy = float(np.sqrt(np.sum(dy * dy)))
    if sx == 0.0 or sy == 0.0:
        raise CorrelationError("correlation is undefined when one side is constant")
    return float(np.sum(dx * dy) / (sx * sy))


def _average_ranks(values: Sequence[float]) -> list[float]:
    """1-based ranks; tied values share the mean of their rank positions."""
    order = np.argsort(np.asarray(values, dtype=float), kind="stable")
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        mean_rank = (i + j) / 2.0 + 1.0
        for k in range(i, j + 1):
            ranks[order[k]] = mean_rank
        i = j + 1
    return ranks


def spearman(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Spearman's rho: Pearson's r over average ranks."""
    if len(xs) != len(ys):
        raise CorrelationError(f"length mismatch: {len(xs)} vs {len(ys)}")
    if len(xs) < 2:
        raise CorrelationError(f"need at least 2 pairs, got {len(xs)}")
    return pearson(_average_ranks(xs), _average_ranks(ys))


def rank_systems(
    scores: Mapping[str, float], higher_is_better: bool = True
) -> tuple[str, ...]:
    """System ids from best to worst; ties break alphabetically."""
    ordered = sorted(
        scores,
        key=lambda s: ((-scores[s]) if higher_is_better else scores[s], s),
    )
    return tuple(ordered)


@dataclass(frozen=True)
class MetricCorrelation:
    """One metric's agreement with the human scores."""

    metric: str
    pearson: float
    spearman: float
    n: int
    ranking: tuple[str, ...]
    matches_human: bool
    higher_is_better: bool = True
    ties: bool = False


@dataclass(frozen=True)
class CorrelationReport:
    """Per-metric correlations plus the human ranking they are judged against."""

    granularity: str
    human_ranking: tuple[str, ...]
    metrics: tuple[MetricCorrelation, ...]
    warnings: tuple[str, ...] = ()

    def to_json(self) -> str:
        payload = {
            "granularity": self.granularity,
            "human_ranking": list(self.human_ranking),
            "metrics": [
                {
                    "metric": m.metric,
                    "granularity": self.granularity,
                    "pearson": m.pearson,
                    "spearman": m.spearman,
                    "n": m.n,
                    "ranking": list(m.ranking),
                    "matches_human": m.matches_human,
                    "higher_is_better": m.higher_is_better,
                    "ties": m.ties,
                }
                for m in self.metrics
            ],
            "warnings": list(self.warnings),
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"


# Metrics where a lower score is better, so rankings sort ascending.
ASCENDING_METRICS = frozenset({"ter"})

SMALL_SAMPLE_WARNING = 5


def build_correlation_report(
    metric_scores: Mapping[str, Mapping],
    human_scores: Mapping,
    granularity: str = "system",
    system_scores: Mapping[str, Mapping[str, float]] | None = None,
    human_system_scores: Mapping[str, float] | None = None,
) -> CorrelationReport:
    """Correlate each metric with the human scores over shared keys.

    ``metric_scores`` maps metric name to {key: value} where keys are
    system ids (system granularity) or (system, document, segment) tuples
    (segment granularity).  Rankings always come from per-system values;
    at segment granularity pass those via ``system_scores`` and
    ``human_system_scores``.
    """
    if granularity not in ("system", "segment"):
        raise ValueError(f"unknown granularity {granularity!r}")
    if granularity == "system":
        system_scores = {m: dict(v) for m, v in metric_scores.items()}
        human_system_scores = dict(human_scores)
    elif system_scores is None or human_system_scores is None:
        raise ValueError("segment granularity needs per-system scores for rankings")

    human_ranking = rank_systems(human_system_scores)
    warnings: list[str] = []
    if len(set(human_system_scores.values())) < len(human_system_scores):
        warnings.append("human: tied system scores; ranking ties broken by id")
    rows = []
    for metric in metric_scores:
        pairs = metric_scores[metric]
        shared = sorted(set(pairs) & set(human_scores), key=repr)
        n = len(shared)
        if n < 2:
            raise CorrelationError(
                f"metric {metric!r} shares only {n} scored item(s) with the human data"
            )
        if n < SMALL_SAMPLE_WARNING:
            warnings.append(
                f"{metric}: only {n} paired items; correlations are fragile"
            )
        xs = [pairs[key] for key in shared]
        ys = [human_scores[key] for key in shared]
        per_system = system_scores[metric]
        ties = len(set(per_system.values())) < len(per_system)
        ranking = rank_systems(
            per_system, higher_is_better=metric not in ASCENDING_METRICS
        )
        if ties:
            warnings.append(f"{metric}: tied system scores; ranking ties broken by id")
        rows.append(
            MetricCorrelation(
                metric=metric,
                pearson=pearson(xs, ys),
                spearman=spearman(xs, ys),
                n=n,
                ranking=ranking,
                matches_human=ranking == human_ranking,
                higher_is_better=metric not in ASCENDING_METRICS,
                ties=ties,
            )
        )
    return CorrelationReport(
        granularity=granularity,
        human_ranking=human_ranking,
        metrics=tuple(rows),
        warnings=tuple(warnings),
    )
