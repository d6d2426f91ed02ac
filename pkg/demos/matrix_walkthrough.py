"""
From aligned files to a score matrix
====================================

Three systems translated the same two documents; two reference versions
exist for each.  This walkthrough builds the in-memory evaluation set,
scores every (metric, document, system, reference) cell in one call, and
renders the result as a report.  Run me with
``python3 demos/matrix_walkthrough.py``.
"""

from mtqual import (
    EvaluationSet,
    PipelineConfig,
    make_segments,
    render_report,
    run_matrix,
    sentence_series,
    system_scores,
)

# ---------------------------------------------------------------------
# The corpus.  Alignment is positional: line k of every file for a
# document is the same source sentence.  sysX copies the first reference,
# sysY paraphrases loosely, sysZ is barely related — a built-in sanity
# ordering we can look for in every metric.
# ---------------------------------------------------------------------
ref_one = {
    "news": [
        "the council approved the new budget on monday",
        "heavy rain closed two roads in the north",
        "the museum reopened after a long renovation",
    ],
    "sport": [
        "the home team won the final match",
        "the coach praised her young players",
    ],
}
ref_two = {
    "news": [
        "on monday the council passed the new budget",
        "two roads in the north were shut by heavy rain",
        "after a lengthy renovation the museum opened again",
    ],
    "sport": [
        "the final match was won by the home side",
        "the coach had praise for her young squad",
    ],
}
outputs = {
    "sysX": ref_one,  # verbatim copy of reference version 1
    "sysY": {
        "news": [
            "the council approved a new budget monday",
            "heavy rains closed two northern roads",
            "the museum reopened after renovation",
        ],
        "sport": [
            "the home team won the final",
            "the coach praised young players",
        ],
    },
    "sysZ": {
        "news": [
            "council budget monday new",
            "rain roads north",
            "museum renovation long",
        ],
        "sport": [
            "team final won",
            "coach players",
        ],
    },
}

eval_set = EvaluationSet(
    documents=("news", "sport"),
    systems={
        sys_id: {doc: make_segments(lines) for doc, lines in docs.items()}
        for sys_id, docs in outputs.items()
    },
    references={
        doc: [make_segments(ref_one[doc]), make_segments(ref_two[doc])]
        for doc in ("news", "sport")
    },
)
print("documents:", eval_set.documents)
print("systems  :", eval_set.system_ids)
print("reference versions per document:",
      {doc: eval_set.reference_versions(doc) for doc in eval_set.documents})
print()

# ---------------------------------------------------------------------
# One call scores the full grid.  include_combined adds an "All" column
# that hands every reference version to the metric at once (multi-
# reference scoring, usually the kindest view); include_corpus adds an
# "ALL" row that pools both documents before dividing.
# ---------------------------------------------------------------------
matrix = run_matrix(eval_set, include_combined=True, include_corpus=True)
print("cells scored:", len(matrix.ordered_cells()))
cell = matrix.get("bleu", "news", "sysY", "Ref1")
print("one cell     : BLEU / news / sysY / Ref1 =", round(cell.value, 4))
print("its components keep the intermediate counts:",
      {k: cell.components[k] for k in ("candidate_length", "reference_length")})
print()

# A failing cell never aborts the run; it records its error message and
# the rest of the grid still fills in.  (None here — the corpus is clean.)
errors = [c for c in matrix.ordered_cells() if c.error is not None]
print("cells with errors:", len(errors))
print()

# ---------------------------------------------------------------------
# Rendering.  Markdown groups one table per metric with a Doc No. column;
# CSV is one flat row per cell at full float precision; JSON nests the
# same data with the config snapshot that produced it.  All three are
# deterministic: rendering the same matrix twice is byte-identical.
# ---------------------------------------------------------------------
md = render_report(matrix, "md")
print(md[: md.index("### GTM")].rstrip())  # show the first two metric tables
print("...")
print()

csv_text = render_report(matrix, "csv")
print("csv header   :", csv_text.splitlines()[0])
print("csv rows     :", len(csv_text.splitlines()) - 1)
assert render_report(matrix, "md") == md  # deterministic re-render
print()

# ---------------------------------------------------------------------
# Two finer-grained views.  sentence_series keeps the per-segment scores
# behind a document cell — useful for spotting which sentence dragged an
# average down.  system_scores collapses everything to one number per
# (metric, system) with all references pooled.
# ---------------------------------------------------------------------
series = sentence_series(eval_set, metrics=["gtm"])
print("per-sentence GTM, news document, all systems (Ref1):")
for system in eval_set.system_ids:
    values = series[("gtm", "news", system, "Ref1")]
    print(f"  {system}: ", [round(v, 3) for v in values])
print()

pooled = system_scores(eval_set, config=PipelineConfig())
print("pooled per-system scores (all references):")
for metric in ("bleu", "nist", "gtm", "meteor", "ter"):
    row = pooled[metric]
    cells = "  ".join(f"{s}={row[s]:.4f}" for s in eval_set.system_ids)
    print(f"  {metric:>6}: {cells}")
print()

# The sanity ordering holds: the copying system beats the paraphraser,
# which beats word salad — and TER, an error rate, runs the other way.
for metric in ("bleu", "nist", "gtm", "meteor"):
    row = pooled[metric]
    assert row["sysX"] > row["sysY"] > row["sysZ"], metric
assert pooled["ter"]["sysX"] < pooled["ter"]["sysY"] < pooled["ter"]["sysZ"]
print("ordering check: sysX > sysY > sysZ on every gain metric,")
print("                sysX < sysY < sysZ on TER (an error rate). OK.")
