"""Human ratings: aggregation, correlation statistics, report building."""

from __future__ import annotations

import io
import json
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mtqual.errors import CorrelationError, IngestionError
from mtqual.human import (
    CorrelationReport,
    HumanRating,
    HumanScore,
    aggregate_human,
    build_correlation_report,
    parameter_label,
    pearson,
    rank_systems,
    read_ratings_csv,
    scale_label,
    spearman,
    write_ratings_csv,
)


def rating(judge="j1", system="E1", document="doc1", index=0, parameter=1, value=3):
    return HumanRating(
        judge_id=judge,
        system_id=system,
        document=document,
        segment_index=index,
        parameter=parameter,
        rating=value,
    )


class TestLabels:
    def test_parameter_labels_frozen(self):
        expected = {
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
        for parameter, text in expected.items():
            assert parameter_label(parameter) == text

    def test_scale_labels_frozen(self):
        expected = {
            1: "Unacceptable",
            2: "Barely Understandable",
            3: "Understandable",
            4: "Good",
            5: "Excellent",
        }
        for value, text in expected.items():
            assert scale_label(value) == text

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            parameter_label(0)
        with pytest.raises(ValueError):
            parameter_label(11)
        with pytest.raises(ValueError):
            scale_label(6)


class TestHumanRating:
    def test_bounds_enforced(self):
        with pytest.raises(ValueError):
            rating(parameter=11)
        with pytest.raises(ValueError):
            rating(parameter=0)
        with pytest.raises(ValueError):
            rating(value=0)
        with pytest.raises(ValueError):
            rating(value=6)
        with pytest.raises(ValueError):
            rating(index=-1)
        with pytest.raises(ValueError):
            rating(judge="")
        with pytest.raises(ValueError):
            rating(system="")


class TestAggregateHuman:
    def test_single_rating(self):
        [score] = aggregate_human([rating(value=3)], level="segment")
        assert score.mean == 3.0
        assert score.normalized == 0.5
        assert score.coverage == pytest.approx(0.1)
        assert score.n_ratings == 1

    def test_two_judges_symmetric_mean(self):
        ratings = [
            rating(judge="j1", value=1),
            rating(judge="j2", value=5),
        ]
        [score] = aggregate_human(ratings, level="segment")
        assert score.mean == 3.0

    def test_all_fives_normalize_to_one(self):
        ratings = [
            rating(judge=j, parameter=p, value=5)
            for j in ("j1", "j2")
            for p in range(1, 11)
        ]
        [score] = aggregate_human(ratings, level="system")
        assert score.normalized == 1.0
        assert score.coverage == 1.0

    def test_judges_average_after_parameters(self):
        # j1 rates two parameters low, j2 rates one parameter high.  Judges
        # weigh equally, so the mean is (1 + 5) / 2, not the mean of the
        # three raw ratings.
        ratings = [
            rating(judge="j1", parameter=1, value=1),
            rating(judge="j1", parameter=2, value=1),
            rating(judge="j2", parameter=1, value=5),
        ]
        [score] = aggregate_human(ratings, level="segment")
        assert score.mean == 3.0

    def test_duplicate_submissions_average_first(self):
        ratings = [
            rating(judge="j1", parameter=1, value=1),
            rating(judge="j1", parameter=1, value=5),
        ]
        [score] = aggregate_human(ratings, level="segment")
        assert score.mean == 3.0
        assert score.n_ratings == 2

    def test_system_level_averages_segment_means(self):
        ratings = [
            rating(index=0, value=1),
            rating(index=1, value=3),
        ]
        [score] = aggregate_human(ratings, level="system")
        assert score.mean == 2.0
        assert score.normalized == 0.25
        assert score.document is None and score.segment_index is None

    def test_segment_level_keys(self):
        ratings = [
            rating(system="E2", index=1, value=4),
            rating(system="E1", index=0, value=2),
        ]
        scores = aggregate_human(ratings, level="segment")
        assert [(s.system_id, s.segment_index) for s in scores] == [
            ("E1", 0),
            ("E2", 1),
        ]

    def test_rejects_bad_level_and_empty(self):
        with pytest.raises(ValueError):
            aggregate_human([rating()], level="corpus")
        with pytest.raises(ValueError):
            aggregate_human([], level="system")

    def test_permutation_invariance(self):
        rng = random.Random(11)
        ratings = [
            rating(judge=j, system=s, index=i, parameter=p, value=rng.randint(1, 5))
            for j in ("j1", "j2")
            for s in ("E1", "E2")
            for i in (0, 1)
            for p in (1, 5, 9)
        ]
        baseline = aggregate_human(ratings, level="system")
        for _ in range(5):
            rng.shuffle(ratings)
            assert aggregate_human(ratings, level="system") == baseline

    @given(
        st.lists(
            st.tuples(
                st.sampled_from(["j1", "j2", "j3"]),
                st.sampled_from(["E1", "E2"]),
                st.integers(min_value=0, max_value=2),
                st.integers(min_value=1, max_value=10),
                st.integers(min_value=1, max_value=5),
            ),
            min_size=1,
            max_size=30,
        )
    )
    @settings(max_examples=100)
    def test_normalized_in_unit_interval(self, rows):
        ratings = [
            rating(judge=j, system=s, index=i, parameter=p, value=v)
            for j, s, i, p, v in rows
        ]
        for level in ("segment", "system"):
            for score in aggregate_human(ratings, level=level):
                assert 0.0 <= score.normalized <= 1.0
                assert score.normalized == pytest.approx((score.mean - 1.0) / 4.0)
                assert 0.0 < score.coverage <= 1.0


class TestPearson:
    def test_perfect_linear(self):
        xs = [1.0, 2.0, 3.0, 4.0]
        assert pearson(xs, [2 * x + 1 for x in xs]) == pytest.approx(1.0, abs=1e-12)

    def test_perfect_inverse(self):
        xs = [1.0, 2.0, 3.0]
        assert pearson(xs, [-x for x in xs]) == pytest.approx(-1.0, abs=1e-12)

    def test_hand_value(self):
        assert pearson([1, 2, 3], [1, 3, 2]) == pytest.approx(0.5, abs=1e-12)

    def test_errors(self):
        with pytest.raises(CorrelationError):
            pearson([1, 2], [1, 2, 3])
        with pytest.raises(CorrelationError):
            pearson([1], [2])
        with pytest.raises(CorrelationError):
            pearson([2, 2, 2], [1, 2, 3])

    @given(
        st.lists(st.integers(min_value=-50, max_value=50), min_size=3, max_size=15, unique=True),
        st.floats(min_value=0.1, max_value=10),
        st.floats(min_value=-5, max_value=5),
    )
    @settings(max_examples=100)
    def test_affine_invariance_and_symmetry(self, xs, scale, offset):
        ys = [((i * 37) % 11) - 5 for i in range(len(xs))]
        if len(set(ys)) < 2:
            return
        base = pearson(xs, ys)
        transformed = pearson([scale * x + offset for x in xs], ys)
        assert transformed == pytest.approx(base, abs=1e-9)
        assert pearson(ys, xs) == pytest.approx(base, abs=1e-12)
        assert -1.0 <= base <= 1.0 or math.isclose(abs(base), 1.0)


class TestSpearman:
    def test_monotone_transform_is_perfect(self):
        xs = [0.5, 1.0, 2.0, 3.5]
        assert spearman(xs, [math.exp(x) for x in xs]) == pytest.approx(1.0, abs=1e-12)

    def test_reversal_is_minus_one(self):
        xs = [1.0, 2.0, 3.0, 4.0]
        assert spearman(xs, list(reversed(xs))) == pytest.approx(-1.0, abs=1e-12)

    def test_single_adjacent_swap_of_four(self):
        assert spearman([1, 2, 3, 4], [1, 2, 4, 3]) == pytest.approx(0.8, abs=1e-12)

    def test_single_transposition_of_three(self):
        assert spearman([1, 2, 3], [1, 3, 2]) == pytest.approx(0.5, abs=1e-12)

    def test_ties_share_average_rank(self):
        # ranks of x are (1.5, 1.5, 3); Pearson against (1, 2, 3) is √3/2
        assert spearman([1, 1, 2], [1, 2, 3]) == pytest.approx(
            math.sqrt(3) / 2, abs=1e-12
        )

    def test_all_tied_side_rejected(self):
        with pytest.raises(CorrelationError):
            spearman([4, 4, 4], [1, 2, 3])

    @given(
        st.lists(st.integers(min_value=-30, max_value=30), min_size=3, max_size=12, unique=True)
    )
    @settings(max_examples=100)
    def test_invariant_under_strictly_monotone_transform(self, xs):
        ys = [((i * 29) % 13) - 6 for i in range(len(xs))]
        if len(set(ys)) < 2:
            return
        base = spearman(xs, ys)
        cubed = spearman([x ** 3 for x in xs], ys)
        assert cubed == pytest.approx(base, abs=1e-12)
        assert spearman(ys, xs) == pytest.approx(base, abs=1e-12)


class TestRankSystems:
    def test_descending_by_default(self):
        assert rank_systems({"E1": 0.2, "E2": 0.9, "E3": 0.5}) == ("E2", "E3", "E1")

    def test_ascending_for_error_rates(self):
        scores = {"E1": 0.2, "E2": 0.9, "E3": 0.5}
        assert rank_systems(scores, higher_is_better=False) == ("E1", "E3", "E2")

    def test_ties_break_alphabetically(self):
        assert rank_systems({"b": 1.0, "a": 1.0, "c": 0.5}) == ("a", "b", "c")


class TestCsvRoundTrip:
    def test_round_trip(self):
        ratings = [
            rating(judge="j1", system="E1", index=0, parameter=1, value=4),
            rating(judge="j2", system="E2", index=1, parameter=10, value=2),
        ]
        text = write_ratings_csv(ratings)
        assert text.splitlines()[0] == (
            "judge_id,system_id,document,segment_index,parameter,rating"
        )
        assert read_ratings_csv(io.StringIO(text)) == ratings

    def test_write_to_handle(self):
        buffer = io.StringIO()
        text = write_ratings_csv([rating()], handle=buffer)
        assert buffer.getvalue() == text

    def test_bad_value_reports_line_number(self):
        text = (
            "judge_id,system_id,document,segment_index,parameter,rating\n"
            "j1,E1,doc1,0,1,4\n"
            "j1,E1,doc1,0,2,nine\n"
        )
        with pytest.raises(IngestionError, match="line 3"):
            read_ratings_csv(io.StringIO(text))

    def test_out_of_scale_rating_reports_line_number(self):
        text = (
            "judge_id,system_id,document,segment_index,parameter,rating\n"
            "j1,E1,doc1,0,1,9\n"
        )
        with pytest.raises(IngestionError, match="line 2"):
            read_ratings_csv(io.StringIO(text))

    def test_missing_column_rejected(self):
        text = "judge_id,system_id,document,segment_index,parameter\nj1,E1,doc1,0,1\n"
        with pytest.raises(IngestionError, match="rating"):
            read_ratings_csv(io.StringIO(text))

    def test_empty_file_rejected(self):
        with pytest.raises(IngestionError, match="empty"):
            read_ratings_csv(io.StringIO(""))

    def test_reads_from_path(self, tmp_path):
        path = tmp_path / "ratings.csv"
        path.write_text(write_ratings_csv([rating()]), encoding="utf-8")
        assert read_ratings_csv(path) == [rating()]


HUMAN = {"E1": 0.9, "E2": 0.6, "E3": 0.3}


class TestBuildCorrelationReport:
    def test_agreeing_metric(self):
        report = build_correlation_report(
            {"meteor": {"E1": 0.8, "E2": 0.5, "E3": 0.2}}, HUMAN
        )
        [row] = report.metrics
        assert row.spearman == pytest.approx(1.0, abs=1e-12)
        assert row.ranking == ("E1", "E2", "E3")
        assert row.matches_human
        assert report.human_ranking == ("E1", "E2", "E3")
        assert report.granularity == "system"

    def test_single_transposition_rho(self):
        report = build_correlation_report(
            {"bleu": {"E1": 0.5, "E2": 0.8, "E3": 0.2}}, HUMAN
        )
        [row] = report.metrics
        assert row.spearman == pytest.approx(0.5, abs=1e-12)
        assert row.n == 3
        assert row.ranking == ("E2", "E1", "E3")
        assert not row.matches_human

    def test_ter_ranked_ascending(self):
        report = build_correlation_report(
            {"ter": {"E1": 0.1, "E2": 0.4, "E3": 0.7}}, HUMAN
        )
        [row] = report.metrics
        assert row.ranking == ("E1", "E2", "E3")
        assert not row.higher_is_better
        assert row.matches_human

    def test_small_sample_warning_always_present_for_three_systems(self):
        report = build_correlation_report(
            {"gtm": {"E1": 0.8, "E2": 0.5, "E3": 0.2}}, HUMAN
        )
        assert any("gtm" in w and "3" in w for w in report.warnings)

    def test_tied_metric_flagged(self):
        report = build_correlation_report(
            {"gtm": {"E1": 0.5, "E2": 0.5, "E3": 0.2}}, HUMAN
        )
        [row] = report.metrics
        assert row.ties
        assert row.ranking == ("E1", "E2", "E3")
        assert any("tie" in w.lower() for w in report.warnings)

    def test_too_few_shared_items(self):
        with pytest.raises(CorrelationError):
            build_correlation_report({"bleu": {"E9": 0.5}}, HUMAN)

    def test_rejects_unknown_granularity(self):
        with pytest.raises(ValueError):
            build_correlation_report({"bleu": HUMAN}, HUMAN, granularity="document")

    def test_segment_granularity_needs_system_scores(self):
        seg_scores = {("E1", "doc1", 0): 0.5, ("E1", "doc1", 1): 0.7}
        with pytest.raises(ValueError):
            build_correlation_report({"bleu": seg_scores}, seg_scores, granularity="segment")

    def test_segment_granularity(self):
        metric_segments = {
            ("E1", "doc1", 0): 0.9,
            ("E1", "doc1", 1): 0.7,
            ("E2", "doc1", 0): 0.4,
            ("E2", "doc1", 1): 0.2,
        }
        human_segments = {
            ("E1", "doc1", 0): 0.8,
            ("E1", "doc1", 1): 0.6,
            ("E2", "doc1", 0): 0.5,
            ("E2", "doc1", 1): 0.1,
        }
        report = build_correlation_report(
            {"meteor": metric_segments},
            human_segments,
            granularity="segment",
            system_scores={"meteor": {"E1": 0.8, "E2": 0.3}},
            human_system_scores={"E1": 0.7, "E2": 0.3},
        )
        [row] = report.metrics
        assert row.n == 4
        assert row.ranking == ("E1", "E2")
        assert row.matches_human
        assert report.granularity == "segment"

    def test_json_shape(self):
        report = build_correlation_report(
            {"meteor": {"E1": 0.8, "E2": 0.5, "E3": 0.2}}, HUMAN
        )
        payload = json.loads(report.to_json())
        [row] = payload["metrics"]
        assert row["metric"] == "meteor"
        assert row["granularity"] == "system"
        assert isinstance(row["pearson"], float)
        assert isinstance(row["spearman"], float)
        assert row["n"] == 3
        assert row["ranking"] == ["E1", "E2", "E3"]
        assert payload["human_ranking"] == ["E1", "E2", "E3"]

    def test_ranking_stable_under_positive_rescaling(self):
        scores = {"E1": 0.31, "E2": 0.72, "E3": 0.11}
        base = build_correlation_report({"nist": scores}, HUMAN).metrics[0].ranking
        for factor in (0.01, 3.7, 250.0):
            scaled = {s: v * factor for s, v in scores.items()}
            rescaled = build_correlation_report({"nist": scaled}, HUMAN)
            assert rescaled.metrics[0].ranking == base

    def test_report_correlations_bounded(self):
        rng = random.Random(23)
        for _ in range(20):
            scores = {s: rng.random() for s in ("E1", "E2", "E3", "E4", "E5")}
            human = {s: rng.random() for s in scores}
            report = build_correlation_report({"bleu": scores}, human)
            [row] = report.metrics
            assert -1.0 - 1e-12 <= row.pearson <= 1.0 + 1e-12
            assert -1.0 - 1e-12 <= row.spearman <= 1.0 + 1e-12
            assert sorted(row.ranking) == sorted(scores)
