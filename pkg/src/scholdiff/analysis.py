"""Corpus analytics: per-pair per-section scoring, ten-bin distributions,
first-vs-last version delta reports, and publication-date precedence."""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import simcore, textprep
from .docmodel import SECTIONS, MatchedPair
from .simcore import EditCosts, SignedLengthDelta, UNIT_COSTS

__all__ = [
    "METRICS",
    "BIN_LABELS",
    "DEFAULT_DAY_BIN_EDGES",
    "OutOfRangeScore",
    "MetricMismatch",
    "SimilarityScores",
    "SectionComparison",
    "BinnedDistribution",
    "PrecedenceRecord",
    "PrecedenceReport",
    "score_texts",
    "compare_pair",
    "bin_index",
    "bin_scores",
    "delta_report",
    "precedence",
]

METRICS = ("length", "levenshtein", "cosine", "sorensen", "jaccard")

# Bin 0 holds the highest-similarity scores; labels read high-to-low.
BIN_LABELS = (
    "1.0-0.9", "0.9-0.8", "0.8-0.7", "0.7-0.6", "0.6-0.5",
    "0.5-0.4", "0.4-0.3", "0.3-0.2", "0.2-0.1", "0.1-0.0",
)
_BIN_EDGES = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)

DEFAULT_DAY_BIN_EDGES = (1, 91, 181, 271, 361)


class OutOfRangeScore(ValueError):
    """A score fell outside [0, 1]; upstream produced a bad value."""


class MetricMismatch(ValueError):
    """Two distributions do not describe the same metric."""


@dataclass(frozen=True)
class SimilarityScores:
    """The five normalized scores plus the signed length variant."""

    length: float
    levenshtein: float
    cosine: float
    sorensen: float
    jaccard: float
    signed_length: SignedLengthDelta

    def __post_init__(self) -> None:
        for metric in METRICS:
            value = getattr(self, metric)
            if not 0.0 <= value <= 1.0:
                raise OutOfRangeScore(f"{metric} score {value!r} outside [0, 1]")
        if not -1.0 <= self.signed_length.value <= 1.0:
            raise OutOfRangeScore(
                f"signed_length {self.signed_length.value!r} outside [-1, 1]"
            )

    def by_metric(self) -> dict[str, float]:
        return {metric: getattr(self, metric) for metric in METRICS}


@dataclass(frozen=True)
class SectionComparison:
    doi: str
    section: str
    preprint_version_index: int
    scores: SimilarityScores | None  # None iff either side lacks the section


def score_texts(
    preprint_text: str,
    published_text: str,
    *,
    costs: EditCosts = UNIT_COSTS,
    stopwords: frozenset[str] | None = None,
) -> SimilarityScores:
    """All measures for one section pair; the textprep chain feeds cosine only."""
    return SimilarityScores(
        length=simcore.length_similarity(preprint_text, published_text),
        levenshtein=simcore.levenshtein_ratio(preprint_text, published_text, costs),
        cosine=simcore.cosine_similarity(
            textprep.prepare_terms(preprint_text, stopwords),
            textprep.prepare_terms(published_text, stopwords),
        ),
        sorensen=simcore.char_set_sorensen(preprint_text, published_text),
        jaccard=simcore.char_set_jaccard(preprint_text, published_text),
        signed_length=simcore.signed_length_delta(preprint_text, published_text),
    )


def compare_pair(
    pair: MatchedPair,
    which_version: str = "last",
    *,
    costs: EditCosts = UNIT_COSTS,
    stopwords: frozenset[str] | None = None,
    sections: Sequence[str] = SECTIONS,
) -> list[SectionComparison]:
    """One SectionComparison per section, scores absent when either side is."""
    preprint = pair.select_version(which_version)
    comparisons = []
    for section in sections:
        if section not in SECTIONS:
            raise ValueError(f"unknown section {section!r}")
        pre_text = preprint.sections.get(section)
        pub_text = pair.published.sections.get(section)
        if pre_text is None or pub_text is None:
            scores = None
        else:
            scores = score_texts(pre_text, pub_text, costs=costs, stopwords=stopwords)
        comparisons.append(
            SectionComparison(pair.doi, section, preprint.version_index, scores)
        )
    return comparisons


@dataclass(frozen=True)
class BinnedDistribution:
    """Ten-bin histogram; bin 0 covers [0.9, 1.0], bin 9 covers [0, 0.1)."""

    metric: str
    counts: tuple[int, ...]
    total: int

    def __post_init__(self) -> None:
        if len(self.counts) != 10:
            raise ValueError("a distribution has exactly ten bins")
        if sum(self.counts) != self.total or self.total <= 0:
            raise ValueError("counts must sum to a positive total")

    @property
    def relative_pct(self) -> tuple[float, ...]:
        return tuple(100.0 * c / self.total for c in self.counts)


def bin_index(score: float) -> int:
    """Decile bin for a score; exact boundaries go to the higher-similarity bin."""
    if not 0.0 <= score <= 1.0:
        raise OutOfRangeScore(f"score {score!r} outside [0, 1]")
    return 9 - bisect_right(_BIN_EDGES, score)


def bin_scores(scores: Iterable[float], metric: str) -> BinnedDistribution:
    counts = [0] * 10
    total = 0
    for score in scores:
        counts[bin_index(score)] += 1
        total += 1
    if total == 0:
        raise ValueError("cannot bin an empty score list")
    return BinnedDistribution(metric=metric, counts=tuple(counts), total=total)


def delta_report(
    first_dist: BinnedDistribution, last_dist: BinnedDistribution
) -> tuple[float, ...]:
    """Per-bin first-minus-last difference of relative percentages."""
    if first_dist.metric != last_dist.metric:
        raise MetricMismatch(
            f"cannot difference {first_dist.metric!r} against {last_dist.metric!r}"
        )
    return tuple(
        f - l for f, l in zip(first_dist.relative_pct, last_dist.relative_pct)
    )


@dataclass(frozen=True)
class PrecedenceRecord:
    doi: str
    first_venue: str  # preprint | publisher | same-day
    day_gap: int

    def __post_init__(self) -> None:
        if self.first_venue not in ("preprint", "publisher", "same-day"):
            raise ValueError(f"unknown venue {self.first_venue!r}")
        if self.day_gap < 0:
            raise ValueError("day_gap is a whole-day count, never negative")
        if (self.first_venue == "same-day") != (self.day_gap == 0):
            raise ValueError("same-day exactly when the gap is zero days")


@dataclass
class PrecedenceReport:
    day_bin_edges: tuple[int, ...]
    day_bin_labels: tuple[str, ...]
    records: list[PrecedenceRecord] = field(default_factory=list)
    preprint_first_bins: list[int] = field(default_factory=list)
    publisher_first_bins: list[int] = field(default_factory=list)
    pct_preprint_first: float = 0.0
    pct_publisher_first: float = 0.0
    pct_same_day: float = 0.0
    excluded_missing_date: list[str] = field(default_factory=list)

    @property
    def included(self) -> int:
        return len(self.records)


def _day_bin_labels(edges: Sequence[int]) -> tuple[str, ...]:
    labels = []
    for i, edge in enumerate(edges):
        if i + 1 < len(edges):
            labels.append(f"{edge}-{edges[i + 1] - 1}")
        else:
            labels.append(f"{edge}+")
    return tuple(labels)


def precedence(
    pairs: Iterable[MatchedPair],
    which_version: str = "last",
    day_bin_edges: Sequence[int] = DEFAULT_DAY_BIN_EDGES,
) -> PrecedenceReport:
    """Which venue each pair appeared in first, with day gaps binned.

    Same-day is its own category (bin-exempt, gap 0).  Pairs missing a date
    on either side are excluded and listed in the exclusions ledger.
    """
    edges = tuple(day_bin_edges)
    if not edges or list(edges) != sorted(set(edges)) or edges[0] != 1:
        raise ValueError("day bin edges must be strictly increasing and start at 1")
    report = PrecedenceReport(
        day_bin_edges=edges,
        day_bin_labels=_day_bin_labels(edges),
        preprint_first_bins=[0] * len(edges),
        publisher_first_bins=[0] * len(edges),
    )

    n_preprint = n_publisher = n_same = 0
    for pair in pairs:
        pre_date = pair.select_version(which_version).version_date
        pub_date = pair.published.version_date
        if pre_date is None or pub_date is None:
            report.excluded_missing_date.append(pair.doi)
            continue
        gap = abs((pub_date - pre_date).days)
        if gap == 0:
            venue = "same-day"
            n_same += 1
        elif pre_date < pub_date:
            venue = "preprint"
            n_preprint += 1
            report.preprint_first_bins[bisect_right(edges, gap) - 1] += 1
        else:
            venue = "publisher"
            n_publisher += 1
            report.publisher_first_bins[bisect_right(edges, gap) - 1] += 1
        report.records.append(PrecedenceRecord(pair.doi, venue, gap))

    included = n_preprint + n_publisher + n_same
    if included:
        report.pct_preprint_first = 100.0 * n_preprint / included
        report.pct_publisher_first = 100.0 * n_publisher / included
        report.pct_same_day = 100.0 * n_same / included
    return report


def mean_levenshtein_ratio(
    texts: Iterable[tuple[str, str]], costs: EditCosts = UNIT_COSTS
) -> float:
    """Average edit ratio over text pairs (empty input is an error)."""
    total = 0.0
    n = 0
    for a, b in texts:
        total += simcore.levenshtein_ratio(a, b, costs)
        n += 1
    if n == 0:
        raise ValueError("no text pairs")
    return total / n
