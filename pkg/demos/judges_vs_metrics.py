"""
Human judgments, and where the metrics disagree
===============================================

Automatic scores are only trustworthy insofar as they track what human
judges think.  This walkthrough rates three systems on the 5-point scale
across the ten linguistic parameters, aggregates the ratings, and then
correlates every metric with the judges — exposing one metric that backs
the wrong system.  Run me with ``python3 demos/judges_vs_metrics.py``.
"""

import io

from mtqual import (
    PARAMETER_LABELS,
    SCALE_LABELS,
    EvaluationSet,
    HumanRating,
    PipelineConfig,
    SynonymLexicon,
    aggregate_human,
    build_correlation_report,
    make_segments,
    rank_systems,
    read_ratings_csv,
    spearman,
    system_scores,
    write_ratings_csv,
)

# ---------------------------------------------------------------------
# The rating scheme: every output sentence can be judged on ten
# parameters, each on the same 1..5 comprehensibility scale.
# ---------------------------------------------------------------------
print("the ten parameters a judge can rate:")
for number, label in PARAMETER_LABELS.items():
    print(f"  {number:>2}. {label}")
print("the 5-point scale:")
for point, label in SCALE_LABELS.items():
    print(f"  {point}. {label}")
print()

# ---------------------------------------------------------------------
# Three systems, one document, six sentences, one reference version.
#   sysP paraphrases fluently: word order moves, a few synonyms swap in.
#   sysQ copies four sentences verbatim and emits gibberish on two.
#   sysR is gibberish throughout.
# Judges read the outputs; metrics only count tokens.  The tension
# between those two views is the whole point of this demo.
# ---------------------------------------------------------------------
refs = [
    "the minister announced a new education policy at the meeting",
    "farmers in the region harvested a record wheat crop",
    "the committee will publish its final report next week",
    "heavy snow delayed trains across the northern district",
    "the university opened a research center for renewable energy",
    "doctors recommended regular exercise for older patients",
]
sys_p = [
    "at the meeting the minister revealed a new education policy",
    "farmers of the region harvested a record wheat harvest",
    "next week the committee publishes its final report",
    "heavy snowfall delayed trains across the northern district",
    "the university opened a research centre for renewable energy",
    "doctors advised regular exercise for elderly patients",
]
sys_q = [
    refs[0], refs[1], refs[2], refs[3],
    "zorp blint miza the of norp",
    "gleb worp zanzi bip",
]
sys_r = [
    "blint zorp the miza", "worp gleb a", "zanzi bip norp the",
    "miza blint", "norp zorp gleb worp", "bip zanzi",
]

eval_set = EvaluationSet(
    documents=("talks",),
    systems={
        "sysP": {"talks": make_segments(sys_p)},
        "sysQ": {"talks": make_segments(sys_q)},
        "sysR": {"talks": make_segments(sys_r)},
    },
    references={"talks": [make_segments(refs)]},
)

# ---------------------------------------------------------------------
# Two judges rate parameters 1 (gender and number), 6 (word and
# synonym selection) and 10 (semantic fidelity) for every sentence.
# sysP reads well (4s and 5s), sysQ is
# perfect where it copied and unintelligible where it did not, sysR
# never rises above 2.  Judge jb runs one point gentler than ja on the
# middle system — aggregation averages that disagreement away.
# ---------------------------------------------------------------------
PER_SEGMENT = {
    "sysP": {"ja": [5, 4, 5, 4, 5, 4], "jb": [5, 5, 4, 5, 4, 5]},
    "sysQ": {"ja": [5, 5, 5, 5, 1, 1], "jb": [5, 5, 5, 5, 2, 2]},
    "sysR": {"ja": [1, 1, 2, 1, 1, 1], "jb": [2, 1, 1, 1, 2, 1]},
}
ratings = [
    HumanRating(judge_id=judge, system_id=system, document="talks",
                segment_index=index, parameter=parameter, rating=value)
    for system, judges in PER_SEGMENT.items()
    for judge, per_segment in judges.items()
    for index, value in enumerate(per_segment)
    for parameter in (1, 6, 10)
]
print("ratings collected:", len(ratings),
      "(3 systems x 2 judges x 6 sentences x 3 parameters)")

# Ratings round-trip through CSV, so judging can happen anywhere.
csv_text = write_ratings_csv(ratings)
assert read_ratings_csv(io.StringIO(csv_text)) == ratings
print("csv round-trip: OK,", len(csv_text.splitlines()) - 1, "data rows")
print()

# Aggregation runs inside-out: duplicate (judge, parameter) submissions
# average first, then parameters within a judge, then judges within a
# sentence, then sentences within a system.  The normalized column maps
# the 1..5 mean onto 0..1 so it can sit next to the metrics.
human_by_system = {s.system_id: s for s in aggregate_human(ratings)}
print("aggregated human scores:")
for system_id, score in human_by_system.items():
    print(f"  {system_id}: mean {score.mean:.3f} on 1..5,"
          f" normalized {score.normalized:.3f}, from {score.n_ratings} ratings")
human_values = {s: score.normalized for s, score in human_by_system.items()}
print("human ranking:", " > ".join(rank_systems(human_values)))
print()

# ---------------------------------------------------------------------
# Now the metric side: one pooled score per (metric, system), using a
# synonym lexicon that covers sysP's substitutions.
# ---------------------------------------------------------------------
lexicon = SynonymLexicon.from_groups([
    ["announced", "revealed"], ["crop", "harvest"],
    ["snow", "snowfall"], ["center", "centre"],
    ["recommended", "advised"], ["older", "elderly"],
])
pooled = system_scores(eval_set, config=PipelineConfig(lexicon=lexicon))
print("pooled metric scores:")
for metric, row in pooled.items():
    cells = "  ".join(f"{s}={row[s]:.4f}" for s in sorted(row))
    print(f"  {metric:>6}: {cells}")
print()

# ---------------------------------------------------------------------
# The correlation report pairs each metric's per-system values with the
# human means, computes Pearson and Spearman, and compares rankings.
# TER is registered as an error rate, so its ranking reads low-to-high
# and a strongly negative correlation is exactly what agreement looks
# like there.
# ---------------------------------------------------------------------
report = build_correlation_report(pooled, human_values)
print("human ranking  :", " > ".join(report.human_ranking))
for row in report.metrics:
    direction = "higher wins" if row.higher_is_better else "lower wins"
    verdict = "agrees" if row.matches_human else "DISAGREES"
    print(f"  {row.metric:>6}: ranks {' > '.join(row.ranking)}  ({direction})"
          f"  pearson {row.pearson:+.3f}  spearman {row.spearman:+.3f}  -> {verdict}")
for warning in report.warnings:
    print("  warning:", warning)
print()

# The copier's verbatim four-gram streaks buy more BLEU than the
# paraphraser's fluency, so BLEU alone backs sysQ; unigram-oriented and
# edit-based metrics side with the judges.
dissenters = [r.metric for r in report.metrics if not r.matches_human]
assert dissenters == ["bleu"], dissenters
assert spearman([pooled["bleu"][s] for s in sorted(pooled["bleu"])],
                [human_values[s] for s in sorted(human_values)]) < 1.0
print("dissenting metric:", ", ".join(dissenters))
print("moral: quote rank agreement alongside any single score —")
print("       one metric can be confidently, quietly wrong.")
