"""
A tour of the five automatic metrics
====================================

One candidate translation, two reference versions, five scores.  Each
metric looks at the same words through a different lens: n-gram overlap
(BLEU), information-weighted overlap (NIST), unigram F-measure (GTM),
staged word alignment (METEOR), and edit distance with block moves (TER).
Run me with ``python3 demos/five_metrics_tour.py``.
"""

from mtqual import (
    BleuConfig,
    MeteorConfig,
    SynonymLexicon,
    align,
    bleu_score,
    brevity_penalty,
    build_info_weights,
    gtm_score,
    meteor_score,
    nist_score,
    ter_score,
    tokenize,
    word_edit_distance,
)

# A candidate sentence and two reference translations of the same source.
# tokenize() lowercases and splits punctuation off, so "Minister," and
# "minister" count as the same word plus a comma token.
candidate = tokenize("the prime minister said the talks were productive")
ref_a = tokenize("the Prime Minister said that the talks were productive")
ref_b = tokenize("the PM stated the negotiations had been productive")
references = [ref_a, ref_b]

print("candidate :", " ".join(candidate))
print("reference1:", " ".join(ref_a))
print("reference2:", " ".join(ref_b))
print()

# ---------------------------------------------------------------------
# BLEU: geometric mean of modified n-gram precisions times a brevity
# penalty.  "Modified" means a candidate n-gram can only match as many
# times as it appears in the single best reference, so repeating "the"
# five times buys nothing.
# ---------------------------------------------------------------------
bleu = bleu_score([candidate], [references])
print("BLEU            :", round(bleu.value, 4))
print("  precisions    :", [round(p, 3) for p in bleu.precisions])
print("  brevity penalty:", round(bleu.brevity_penalty, 4))

# The brevity penalty is available on its own.  It compares the candidate
# length with the closest reference length and only ever reduces a score:
# an 8-token candidate against 9- and 9-token references pays exp(1 - 9/8).
print("  bp(8, [9, 9]) =", round(brevity_penalty(8, [9, 9]), 4))

# At sentence level a zero count for one n-gram order would zero the whole
# geometric mean, so sentence scoring smooths by default (add-one on the
# orders that matched nothing).  Corpus scoring pools counts over many
# segments first and stays unsmoothed.
sentence = bleu_score([candidate], [references], level="sentence")[0]
print("  sentence BLEU :", round(sentence.value, 4), "(add-one smoothing)")

# Config makes the choices explicit: fewer orders, different smoothing.
bigram_only = bleu_score(
    [candidate], [references], config=BleuConfig(max_order=2, smoothing="none")
)
print("  bigram BLEU   :", round(bigram_only.value, 4))
print()

# ---------------------------------------------------------------------
# NIST: like BLEU but each matched n-gram is weighted by how informative
# it is — log2 of (count of the (n-1)-gram prefix / count of the n-gram)
# over the reference corpus.  Rare, specific phrases earn more than "of
# the".  The info table is built from references once and reused.
# ---------------------------------------------------------------------
info = build_info_weights([ref_a, ref_b], max_order=5)
nist = nist_score([candidate], [references], info)
print("NIST            :", round(nist.value, 4))
print("  info('the')   :", round(info.info(("the",)), 4), "bits")
print("  info('productive'):", round(info.info(("productive",)), 4), "bits")
print("  brevity factor:", round(nist.brevity_factor, 4))
print()

# ---------------------------------------------------------------------
# GTM: precision, recall and F-measure over a maximum unigram matching.
# The match size is the largest set of one-to-one candidate/reference
# word pairings, which for bags of words is just summed minimum counts.
# ---------------------------------------------------------------------
gtm = gtm_score([candidate], [references])
print("GTM F-measure   :", round(gtm.value, 4))
print("  precision     :", round(gtm.precision, 4))
print("  recall        :", round(gtm.recall, 4))
print("  match size    :", gtm.match_size, "of", gtm.candidate_length, "candidate tokens")

# An exponent above 1 rewards contiguous runs of matches: each run of
# length L contributes L**e before the final root, so word salad with the
# right vocabulary scores lower than a fluent ordering.
gtm_runs = gtm_score([candidate], [references], exponent=2.0)
print("  with exponent 2:", round(gtm_runs.value, 4))
print()

# ---------------------------------------------------------------------
# METEOR: align candidate words to reference words in stages — exact
# match first, then shared stems, then synonyms — and score the unigram
# alignment.  Among equally large alignments the one with the fewest
# crossing links wins, which keeps the pairing readable.
# ---------------------------------------------------------------------
lexicon = SynonymLexicon.from_groups([
    ["talks", "negotiations"],
    ["said", "stated"],
])
alignment = align(candidate, ref_b, lexicon=lexicon)
print("METEOR alignment against reference 2:")
for (ci, ri), stage in zip(alignment.pairs, alignment.stages):
    print(f"  {candidate[ci]:>12} -> {ref_b[ri]:<12} ({stage})")
print("  chunks        :", alignment.chunk_count, " crossings:", alignment.crossings)

# The default score is the harmonic mean of alignment precision and
# recall; the weighted mode biases toward recall and charges a fragmentation
# penalty based on how many chunks the alignment breaks into.
simple = meteor_score([candidate], [references], lexicon=lexicon)
weighted = meteor_score(
    [candidate],
    [references],
    config=MeteorConfig(mode="weighted_penalized"),
    lexicon=lexicon,
    level="sentence",
)[0]
print("  simple mode   :", round(simple.value, 4))
print("  weighted mode :", round(weighted.value, 4),
      f"(penalty {weighted.penalty:.4f}, {weighted.chunk_count} chunks)")
print()

# ---------------------------------------------------------------------
# TER: how many edits — insertions, deletions, substitutions, and block
# shifts — turn the candidate into a reference, divided by the average
# reference length.  Lower is better; 0.0 means a perfect copy.
# ---------------------------------------------------------------------
ter = ter_score(candidate, references)
trace = ter.edits
print("TER             :", round(ter.value, 4))
print("  edits         :", trace.total_edits,
      f"(ins {trace.insertions}, del {trace.deletions},",
      f"sub {trace.substitutions}, shift {trace.shifts})")
print("  plain edit distance to reference 1:", word_edit_distance(candidate, ref_a))

# A shift repairs word order in one move where plain edit distance would
# pay twice.  Here the clause order is swapped: one block shift plus
# nothing else beats the delete-and-reinsert accounting.
moved = tokenize("were productive the talks")
target = tokenize("the talks were productive")
shifted = ter_score(moved, [target])
print("  'were productive the talks' vs 'the talks were productive':")
print("    TER =", round(shifted.value, 4),
      "using", shifted.edits.shifts, "shift and",
      shifted.edits.total_edits - shifted.edits.shifts, "other edits")
print("    plain edit distance would be", word_edit_distance(moved, target))
