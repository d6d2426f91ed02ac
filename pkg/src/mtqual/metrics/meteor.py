"""METEOR: staged unigram alignment scored by a recall-weighted harmonic mean.

Alignment runs match stages in order (exact surface form, then shared
Porter stem, then shared synonym group), each stage only touching words
no earlier stage aligned.  Within a stage the chosen matching must have
maximum size; among maximum matchings the one with the fewest crossings
against all pairs selected so far wins, and remaining ties go to the
lexicographically smallest pair list.  Sequences up to
``exact_search_limit`` tokens per side use an exact branch-and-bound
search; longer ones fall back to a beam search whose result is completed
to maximum size by augmenting paths (the ``exact_search`` flag on the
alignment records which route ran).

Scoring modes:

* ``paper_simple``        F = 2PR / (P + R)
* ``weighted_penalized``  F = PR / (alpha*P + (1-alpha)*R) scaled by
                          1 - gamma * (chunks / matches) ** penalty_power

where P = matches / candidate length, R = matches / reference length and
chunks counts maximal contiguous blocks of the alignment that are in
identical order in both sequences.  Multiple references score one at a
time and the best value wins.  Corpus level takes a length-weighted mean
of segment scores (weight: longest reference version).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from ..corpus import Segment
from ..errors import AlignmentError, ScoringError
from ..stemmer import stem

STAGES = ("exact", "stem", "synonym")


def _tokens(segment: Segment | Sequence[str]) -> tuple[str, ...]:
    if isinstance(segment, Segment):
        return segment.tokens
    return tuple(segment)


@dataclass(frozen=True)
class SynonymLexicon:
    """Maps words to synonym group ids; words sharing a group may align."""

    groups: Mapping[str, frozenset[int]] = field(default_factory=dict)

    @classmethod
    def from_groups(cls, groups: Iterable[Iterable[str]]) -> "SynonymLexicon":
        table: dict[str, set[int]] = {}
        for gid, words in enumerate(groups):
            for word in words:
                table.setdefault(word, set()).add(gid)
        return cls({w: frozenset(ids) for w, ids in table.items()})

    @classmethod
    def from_file(cls, path) -> "SynonymLexicon":
        """One synonym group per line, words separated by whitespace."""
        with open(path, encoding="utf-8") as handle:
            rows = [line.split() for line in handle if line.strip()]
        return cls.from_groups(rows)

    def related(self, a: str, b: str) -> bool:
        ga = self.groups.get(a)
        if not ga:
            return False
        gb = self.groups.get(b)
        if not gb:
            return False
        return not ga.isdisjoint(gb)


EMPTY_LEXICON = SynonymLexicon()


@dataclass(frozen=True)
class Alignment:
    """Word alignment: (candidate, reference) index pairs plus stage tags."""

    pairs: tuple[tuple[int, int], ...]
    stages: tuple[str, ...]
    chunk_count: int
    crossings: int
    exact_search: bool = True

    def __post_init__(self) -> None:
        if len(self.pairs) != len(self.stages):
            raise AlignmentError("one stage tag per pair is required")


def crossing_count(pairs: Sequence[tuple[int, int]]) -> int:
    """Number of pair pairs that link in opposite orders."""
    count = 0
    items = list(pairs)
    for a in range(len(items)):
        for b in range(a + 1, len(items)):
            (i1, j1), (i2, j2) = items[a], items[b]
            if (i1 - i2) * (j1 - j2) < 0:
                count += 1
    return count


def chunk_count(pairs: Sequence[tuple[int, int]]) -> int:
    """Maximal runs of pairs contiguous and in order on both sides."""
    ordered = sorted(pairs)
    if not ordered:
        return 0
    chunks = 1
    for (i1, j1), (i2, j2) in zip(ordered, ordered[1:]):
        if i2 != i1 + 1 or j2 != j1 + 1:
            chunks += 1
    return chunks


def _max_matching_size(adj: Mapping[int, Sequence[int]]) -> int:
    match_ref: dict[int, int] = {}

    def try_augment(ci: int, visited: set[int]) -> bool:
        for rj in adj[ci]:
            if rj in visited:
                continue
            visited.add(rj)
            if rj not in match_ref or try_augment(match_ref[rj], visited):
                match_ref[rj] = ci
                return True
        return False

    for ci in sorted(adj):
        try_augment(ci, set())
    return len(match_ref)


def _crossings_with(
    ci: int, rj: int, pairs: Iterable[tuple[int, int]]
) -> int:
    return sum(1 for pi, pj in pairs if (pi - ci) * (pj - rj) < 0)


def _min_crossing_exact(
    adj: Mapping[int, Sequence[int]],
    fixed: Sequence[tuple[int, int]],
    target: int,
) -> list[tuple[int, int]]:
    """Depth-first branch and bound over candidate positions in order.

    Complete matchings are visited in lexicographic pair-list order, so
    keeping the first solution at each new crossing minimum yields the
    lexicographically smallest minimiser.  Partial states are cut as soon
    as their crossing count reaches the incumbent or the remaining
    positions cannot restore maximum size.
    """
    positions = sorted(adj)
    best: list[tuple[int, int]] | None = None
    best_cross = math.inf
    chosen: list[tuple[int, int]] = []
    used: set[int] = set()

    def free_bound(idx: int) -> int:
        return sum(
            1 for ci in positions[idx:] if any(r not in used for r in adj[ci])
        )

    def dfs(idx: int, cross: int) -> None:
        nonlocal best, best_cross
        if best is not None and cross >= best_cross:
            return
        if len(chosen) == target:
            best = list(chosen)
            best_cross = cross
            return
        if idx == len(positions) or len(chosen) + free_bound(idx) < target:
            return
        ci = positions[idx]
        for rj in adj[ci]:
            if rj in used:
                continue
            delta = _crossings_with(ci, rj, chosen) + _crossings_with(ci, rj, fixed)
            chosen.append((ci, rj))
            used.add(rj)
            dfs(idx + 1, cross + delta)
            used.discard(rj)
            chosen.pop()
        dfs(idx + 1, cross)

    dfs(0, 0)
    assert best is not None, "target came from a maximum matching"
    return best


def _complete_matching(
    adj: Mapping[int, Sequence[int]],
    pairs: Sequence[tuple[int, int]],
    target: int,
) -> list[tuple[int, int]]:
    """Grow a partial matching to maximum size via augmenting paths."""
    match_ref: dict[int, int] = {rj: ci for ci, rj in pairs}
    matched_c = {ci for ci, _ in pairs}

    def try_augment(ci: int, visited: set[int]) -> bool:
        for rj in adj[ci]:
            if rj in visited:
                continue
            visited.add(rj)
            if rj not in match_ref or try_augment(match_ref[rj], visited):
                match_ref[rj] = ci
                return True
        return False

    for ci in sorted(adj):
        if len(match_ref) >= target:
            break
        if ci not in matched_c:
            if try_augment(ci, set()):
                matched_c = {c for c in match_ref.values()}
    return sorted((ci, rj) for rj, ci in match_ref.items())


def _min_crossing_beam(
    adj: Mapping[int, Sequence[int]],
    fixed: Sequence[tuple[int, int]],
    target: int,
    beam_width: int,
) -> list[tuple[int, int]]:
    positions = sorted(adj)
    # state: (pairs, used refs, crossings)
    states: list[tuple[tuple[tuple[int, int], ...], frozenset[int], int]] = [
        ((), frozenset(), 0)
    ]
    for ci in positions:
        grown: list[tuple[tuple[tuple[int, int], ...], frozenset[int], int]] = []
        for pairs, used, cross in states:
            grown.append((pairs, used, cross))
            for rj in adj[ci]:
                if rj in used:
                    continue
                delta = _crossings_with(ci, rj, pairs) + _crossings_with(
                    ci, rj, fixed
                )
                grown.append((pairs + ((ci, rj),), used | {rj}, cross + delta))
        grown.sort(key=lambda s: (-len(s[0]), s[2], s[0]))
        states = grown[:beam_width]
    pairs, _, _ = states[0]
    if len(pairs) < target:
        return _complete_matching(adj, pairs, target)
    return sorted(pairs)


def _stage_match(stage: str, cand_word: str, ref_word: str, lexicon: SynonymLexicon) -> bool:
    if stage == "exact":
        return cand_word == ref_word
    if stage == "stem":
        return stem(cand_word) == stem(ref_word)
    if stage == "synonym":
        return lexicon.related(cand_word, ref_word)
    raise ValueError(f"unknown stage {stage!r}")


@dataclass(frozen=True)
class MeteorConfig:
    """Stage list, score mode, and search limits."""

    stages: tuple[str, ...] = STAGES
    mode: str = "paper_simple"
    alpha: float = 0.9
    gamma: float = 0.5
    penalty_power: float = 3.0
    exact_search_limit: int = 12
    beam_width: int = 64

    def __post_init__(self) -> None:
        if not self.stages:
            raise ValueError("at least one stage is required")
        for stage in self.stages:
            if stage not in STAGES:
                raise ValueError(f"unknown stage {stage!r}; expected one of {STAGES}")
        if self.mode not in ("paper_simple", "weighted_penalized"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if not 0.0 < self.alpha < 1.0:
            raise ValueError("alpha must lie strictly between 0 and 1")
        if not 0.0 <= self.gamma <= 1.0:
            raise ValueError("gamma must lie in [0, 1]")
        if self.penalty_power <= 0:
            raise ValueError("penalty_power must be positive")
        if self.exact_search_limit < 1:
            raise ValueError("exact_search_limit must be >= 1")
        if self.beam_width < 1:
            raise ValueError("beam_width must be >= 1")


def align(
    candidate: Segment | Sequence[str],
    reference: Segment | Sequence[str],
    config: MeteorConfig = MeteorConfig(),
    lexicon: SynonymLexicon = EMPTY_LEXICON,
) -> Alignment:
    """Align candidate words to reference words stage by stage.

    Every reference word is used at most once; stages never revisit words
    an earlier stage aligned.  Identical sequences short-circuit to the
    identity alignment.
    """
    cand = _tokens(candidate)
    ref = _tokens(reference)
    if cand and cand == ref:
        return Alignment(
            pairs=tuple((i, i) for i in range(len(cand))),
            stages=tuple("exact" for _ in cand),
            chunk_count=1,
            crossings=0,
            exact_search=True,
        )

    fixed: list[tuple[int, int]] = []
    tags: dict[tuple[int, int], str] = {}
    free_c = set(range(len(cand)))
    free_r = set(range(len(ref)))
    exact_route = True
    for stage in config.stages:
        adj = {}
        for ci in sorted(free_c):
            neighbours = [
                rj for rj in sorted(free_r)
                if _stage_match(stage, cand[ci], ref[rj], lexicon)
            ]
            if neighbours:
                adj[ci] = neighbours
        if not adj:
            continue
        target = _max_matching_size(adj)
        if target == 0:
            continue
        small = (
            len(cand) <= config.exact_search_limit
            and len(ref) <= config.exact_search_limit
        )
        if small:
            new_pairs = _min_crossing_exact(adj, fixed, target)
        else:
            new_pairs = _min_crossing_beam(adj, fixed, target, config.beam_width)
            exact_route = False
        for ci, rj in new_pairs:
            fixed.append((ci, rj))
            tags[(ci, rj)] = stage
            free_c.discard(ci)
            free_r.discard(rj)

    pairs = tuple(sorted(fixed))
    return Alignment(
        pairs=pairs,
        stages=tuple(tags[p] for p in pairs),
        chunk_count=chunk_count(pairs),
        crossings=crossing_count(pairs),
        exact_search=exact_route,
    )


@dataclass(frozen=True)
class MeteorScore:
    """Score value plus the alignment quantities behind it."""

    value: float
    matches: int
    precision: float
    recall: float
    chunk_count: int
    penalty: float
    mode: str
    candidate_length: int
    reference_length: int
    reference_version: int | None = 0
    exact_search: bool = True
    segments: int = 1

    def components(self) -> dict:
        return {
            "matches": self.matches,
            "precision": self.precision,
            "recall": self.recall,
            "chunk_count": self.chunk_count,
            "penalty": self.penalty,
            "mode": self.mode,
            "candidate_length": self.candidate_length,
            "reference_length": self.reference_length,
            "reference_version": self.reference_version,
            "exact_search": self.exact_search,
            "segments": self.segments,
        }


def _score_single(
    cand: tuple[str, ...],
    ref: tuple[str, ...],
    version: int,
    config: MeteorConfig,
    lexicon: SynonymLexicon,
) -> MeteorScore:
    alignment = align(cand, ref, config, lexicon)
    m = len(alignment.pairs)
    if m == 0:
        return MeteorScore(
            value=0.0,
            matches=0,
            precision=0.0,
            recall=0.0,
            chunk_count=0,
            penalty=0.0,
            mode=config.mode,
            candidate_length=len(cand),
            reference_length=len(ref),
            reference_version=version,
            exact_search=alignment.exact_search,
        )
    precision = m / len(cand)
    recall = m / len(ref)
    if config.mode == "paper_simple":
        penalty = 0.0
        value = 2.0 * precision * recall / (precision + recall)
    else:
        fmean = (
            precision
            * recall
            / (config.alpha * precision + (1.0 - config.alpha) * recall)
        )
        penalty = config.gamma * (alignment.chunk_count / m) ** config.penalty_power
        value = fmean * (1.0 - penalty)
    return MeteorScore(
        value=value,
        matches=m,
        precision=precision,
        recall=recall,
        chunk_count=alignment.chunk_count,
        penalty=penalty,
        mode=config.mode,
        candidate_length=len(cand),
        reference_length=len(ref),
        reference_version=version,
        exact_search=alignment.exact_search,
    )


def _segment_score(
    cand: tuple[str, ...],
    refs: Sequence[tuple[str, ...]],
    config: MeteorConfig,
    lexicon: SynonymLexicon,
) -> MeteorScore:
    if not refs:
        raise ScoringError("at least one reference is required")
    if not cand and all(not r for r in refs):
        raise ScoringError("cannot score an empty candidate against empty references")
    best: MeteorScore | None = None
    for version, ref in enumerate(refs):
        if not cand or not ref:
            score = MeteorScore(
                value=0.0,
                matches=0,
                precision=0.0,
                recall=0.0,
                chunk_count=0,
                penalty=0.0,
                mode=config.mode,
                candidate_length=len(cand),
                reference_length=len(ref),
                reference_version=version,
            )
        else:
            score = _score_single(cand, ref, version, config, lexicon)
        if best is None or score.value > best.value:
            best = score
    assert best is not None
    return best


def meteor_score(
    candidates: Sequence[Segment | Sequence[str]],
    references: Sequence[Sequence[Segment | Sequence[str]]],
    config: MeteorConfig = MeteorConfig(),
    lexicon: SynonymLexicon = EMPTY_LEXICON,
    level: str = "corpus",
) -> MeteorScore | list[MeteorScore]:
    """Score aligned candidate/reference segments.

    Sentence level returns the best-reference score per segment.  Corpus
    level averages segment values weighted by the longest reference
    version's token count, which keeps long segments from counting the
    same as short ones.
    """
    if level not in ("corpus", "sentence"):
        raise ValueError(f"unknown level {level!r}")
    if len(candidates) != len(references):
        raise ScoringError(
            f"candidate/reference mismatch: {len(candidates)} vs {len(references)}"
        )
    if not candidates:
        raise ScoringError("no segments to score")

    scored: list[MeteorScore] = []
    for index, (cand, refs) in enumerate(zip(candidates, references)):
        cand_tokens = _tokens(cand)
        ref_tokens = [_tokens(r) for r in refs]
        try:
            scored.append(_segment_score(cand_tokens, ref_tokens, config, lexicon))
        except ScoringError as exc:
            raise ScoringError(f"segment {index}: {exc}") from exc
    if level == "sentence":
        return scored

    weights = []
    for refs, score in zip(references, scored):
        weights.append(max(len(_tokens(r)) for r in refs))
    total_weight = sum(weights)
    if total_weight == 0:
        value = 0.0
        precision = recall = 0.0
    else:
        value = sum(w * s.value for w, s in zip(weights, scored)) / total_weight
        precision = sum(w * s.precision for w, s in zip(weights, scored)) / total_weight
        recall = sum(w * s.recall for w, s in zip(weights, scored)) / total_weight
    return MeteorScore(
        value=value,
        matches=sum(s.matches for s in scored),
        precision=precision,
        recall=recall,
        chunk_count=sum(s.chunk_count for s in scored),
        penalty=0.0,
        mode=config.mode,
        candidate_length=sum(s.candidate_length for s in scored),
        reference_length=sum(s.reference_length for s in scored),
        reference_version=None,
        exact_search=all(s.exact_search for s in scored),
        segments=len(scored),
    )
