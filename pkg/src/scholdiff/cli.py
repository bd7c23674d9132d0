"""Command-line pipeline over a file-backed store.

Stages persist to files so each can be replayed or fed externally produced
data: ``harvest``/``import``/``synth`` fill the store with interchange
records, ``match`` writes the DOI-keyed pair manifest, ``compare`` writes
the per-pair similarity table, ``report`` writes binned distributions, the
first-vs-last delta, and the precedence summary.

Exit codes: 0 success, 1 usage error, 2 transport/protocol failure,
3 store corruption.
"""

from __future__ import annotations

import argparse
import csv
import datetime as dt
import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Sequence

from . import analysis, extract, harvest, synth, textprep
from .analysis import BIN_LABELS, DEFAULT_DAY_BIN_EDGES, METRICS
from .docmodel import (
    Document,
    MatchedPair,
    PROV_SEGMENTED,
    PROV_STRUCTURED,
    SECTIONS,
    SOURCE_PREPRINT,
    SOURCE_PUBLISHER,
    SectionSet,
    document_to_json,
    match_pairs,
    read_documents,
    write_documents,
)
from .harvest import (
    HarvestStats,
    HttpTransport,
    PoliteSession,
    ProtocolError,
    TransportError,
    Transport,
)
from .cache import DownloadFailed
from .simcore import CITED_TOOL_COSTS, EditCosts, UNIT_COSTS

__all__ = ["RunConfig", "StoreCorruption", "main"]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_TRANSPORT = 2
EXIT_STORE = 3

PREPRINTS_FILE = "preprints.jsonl"
PUBLISHED_FILE = "published.jsonl"
PAIRS_FILE = "pairs.json"
STATE_FILE = "harvest_state.json"
REPORT_DIR = "report"

_COST_MODELS = {"paper": UNIT_COSTS, "cited-tool": CITED_TOOL_COSTS}
_TABLE_COLUMNS = ("doi", "section", "preprint_version_index", "metric", "score")
_TABLE_METRICS = METRICS + ("signed_length",)


class StoreCorruption(Exception):
    """A store file exists but cannot be read back as written."""


class _UsageError(Exception):
    """Bad invocation or configuration; maps to exit code 1."""


@dataclass(frozen=True)
class RunConfig:
    """Effective settings for one invocation.

    Values come from defaults, then the ``--config`` JSON file, then
    command-line flags, each layer overriding the previous one.
    """

    store_dir: Path = Path("store")
    endpoints: dict[str, str] = field(default_factory=dict)
    stopword_file: Path | None = None
    cost_model: str = "paper"
    bin_edges_days: tuple[int, ...] = DEFAULT_DAY_BIN_EDGES
    section_filter: tuple[str, ...] = SECTIONS
    version_select: str = "last"
    seed: int = 42
    min_request_interval: float = 1.0
    max_retries: int = 3
    synth: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.cost_model not in _COST_MODELS:
            raise _UsageError(
                f"cost_model must be one of {sorted(_COST_MODELS)}, "
                f"got {self.cost_model!r}"
            )
        if self.version_select not in ("first", "last"):
            raise _UsageError(
                f"version_select must be 'first' or 'last', got {self.version_select!r}"
            )
        bad = [s for s in self.section_filter if s not in SECTIONS]
        if bad or not self.section_filter:
            raise _UsageError(
                f"section filter must be a non-empty subset of {SECTIONS}, got {bad or '()'}"
            )

    @property
    def costs(self) -> EditCosts:
        return _COST_MODELS[self.cost_model]

    def stopwords(self) -> frozenset[str] | None:
        if self.stopword_file is None:
            return None  # measure chain falls back to the packaged list
        return textprep.load_stopwords(self.stopword_file)

    def comparisons_file(self, version_select: str | None = None) -> Path:
        which = version_select or self.version_select
        return self.store_dir / f"comparisons_{which}.csv"


_CONFIG_KEYS = {
    "store_dir",
    "endpoints",
    "stopword_file",
    "cost_model",
    "bin_edges_days",
    "section_filter",
    "version_select",
    "seed",
    "min_request_interval",
    "max_retries",
    "synth",
}
_SYNTH_KEYS = {
    "n_pairs",
    "mutation_rates",
    "date_offsets_days",
    "versions_per_pair",
    "title_words",
    "abstract_words",
    "body_words",
}


def _load_config_file(path: Path) -> dict:
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise _UsageError(f"config file not found: {path}")
    except json.JSONDecodeError as exc:
        raise _UsageError(f"config file {path} is not valid JSON: {exc}")
    if not isinstance(raw, dict):
        raise _UsageError(f"config file {path} must hold a JSON object")
    unknown = set(raw) - _CONFIG_KEYS
    if unknown:
        raise _UsageError(f"unknown config keys: {sorted(unknown)}")
    synth_block = raw.get("synth", {})
    if not isinstance(synth_block, dict):
        raise _UsageError("config key 'synth' must hold an object")
    unknown = set(synth_block) - _SYNTH_KEYS
    if unknown:
        raise _UsageError(f"unknown synth config keys: {sorted(unknown)}")
    return raw


def build_config(args: argparse.Namespace) -> RunConfig:
    raw = _load_config_file(Path(args.config)) if args.config else {}
    try:
        config = RunConfig(
            store_dir=Path(raw.get("store_dir", "store")),
            endpoints=dict(raw.get("endpoints", {})),
            stopword_file=(
                Path(raw["stopword_file"]) if raw.get("stopword_file") else None
            ),
            cost_model=raw.get("cost_model", "paper"),
            bin_edges_days=tuple(raw.get("bin_edges_days", DEFAULT_DAY_BIN_EDGES)),
            section_filter=tuple(raw.get("section_filter", SECTIONS)),
            version_select=raw.get("version_select", "last"),
            seed=int(raw.get("seed", 42)),
            min_request_interval=float(raw.get("min_request_interval", 1.0)),
            max_retries=int(raw.get("max_retries", 3)),
            synth=dict(raw.get("synth", {})),
        )
    except (TypeError, ValueError) as exc:
        raise _UsageError(f"bad config value: {exc}")

    overrides: dict = {}
    if args.store is not None:
        overrides["store_dir"] = Path(args.store)
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.version_select is not None:
        overrides["version_select"] = args.version_select
    if args.cost_model is not None:
        overrides["cost_model"] = args.cost_model
    if args.sections is not None:
        wanted = {s.strip() for s in args.sections.split(",") if s.strip()}
        overrides["section_filter"] = tuple(s for s in SECTIONS if s in wanted)
        unknown = wanted - set(SECTIONS)
        if unknown:
            raise _UsageError(f"unknown sections: {sorted(unknown)}")
    return replace(config, **overrides) if overrides else config


# --------------------------------------------------------------------------
# store helpers


def _store_path(config: RunConfig, name: str) -> Path:
    return config.store_dir / name


def _read_store_documents(path: Path) -> list[Document]:
    try:
        return list(read_documents(path))
    except FileNotFoundError:
        raise _UsageError(f"store file missing: {path} (run the producing stage first)")
    except ValueError as exc:
        raise StoreCorruption(str(exc))


def _append_documents(path: Path, docs: Sequence[Document]) -> None:
    with path.open("a", encoding="utf-8") as fh:
        for doc in docs:
            fh.write(document_to_json(doc) + "\n")


def _existing_version_keys(path: Path) -> set[tuple[str, int]]:
    if not path.exists():
        return set()
    return {(d.source_id, d.version_index) for d in _read_store_documents(path)}


def _write_pairs_manifest(path: Path, result) -> None:
    payload = {
        "pairs": [
            {
                "doi": p.doi,
                "preprint_versions": [
                    {"source_id": d.source_id, "version_index": d.version_index}
                    for d in p.preprint_versions
                ],
                "published_source_id": p.published.source_id,
            }
            for p in result.pairs
        ],
        "unmatched": [
            {"source_id": u.source_id, "source": u.source, "reason": u.reason}
            for u in result.unmatched
        ],
        "conflicts": [
            {
                "doi": c.doi,
                "kept_source_id": c.kept_source_id,
                "dropped_source_id": c.dropped_source_id,
                "kind": c.kind,
            }
            for c in result.conflicts
        ],
    }
    path.write_text(
        json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )


def _load_pairs(config: RunConfig) -> list[MatchedPair]:
    manifest_path = _store_path(config, PAIRS_FILE)
    try:
        manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise _UsageError(f"pair manifest missing: {manifest_path} (run match first)")
    except json.JSONDecodeError as exc:
        raise StoreCorruption(f"{manifest_path}: {exc}")

    pre_index = {
        (d.source_id, d.version_index): d
        for d in _read_store_documents(_store_path(config, PREPRINTS_FILE))
    }
    pub_index = {
        d.source_id: d
        for d in _read_store_documents(_store_path(config, PUBLISHED_FILE))
    }
    pairs = []
    try:
        for entry in manifest["pairs"]:
            versions = tuple(
                pre_index[(v["source_id"], v["version_index"])]
                for v in entry["preprint_versions"]
            )
            pairs.append(
                MatchedPair(entry["doi"], versions, pub_index[entry["published_source_id"]])
            )
    except (KeyError, TypeError, ValueError) as exc:
        raise StoreCorruption(
            f"{manifest_path}: manifest references records absent from the store "
            f"or is malformed ({exc!r})"
        )
    return pairs


# --------------------------------------------------------------------------
# harvest / import


def _documents_from_record(record: harvest.OaiRecord, source: str) -> list[Document]:
    """Metadata-only interchange documents for one harvested record.

    A preprint record carrying several date entries is treated as that many
    versions, dates ascending; the publisher side keeps its earliest date.
    Records with neither title nor description carry no usable section and
    produce nothing.
    """
    titles = record.field_values("title")
    descriptions = record.field_values("description")
    title = titles[0] if titles else None
    abstract = descriptions[0] if descriptions else None
    if title is None and abstract is None:
        return []
    dates = []
    for raw in record.field_values("date"):
        try:
            dates.append(dt.date.fromisoformat(raw.strip()[:10]))
        except ValueError:
            continue
    dates.sort()
    doi = record.find_doi()
    sections = SectionSet(title=title, abstract=abstract)
    if source == SOURCE_PUBLISHER or len(dates) <= 1:
        version_date = dates[0] if dates else None
        return [
            Document(record.identifier, doi, source, 1, version_date, sections,
                     PROV_STRUCTURED)
        ]
    return [
        Document(record.identifier, doi, source, k, date, sections, PROV_STRUCTURED)
        for k, date in enumerate(dates, 1)
    ]


def _load_state(config: RunConfig) -> dict:
    path = _store_path(config, STATE_FILE)
    if not path.exists():
        return {}
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise StoreCorruption(f"{path}: {exc}")


def _save_state(config: RunConfig, state: dict) -> None:
    _store_path(config, STATE_FILE).write_text(
        json.dumps(state, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def cmd_harvest(config: RunConfig, args: argparse.Namespace,
                transport: Transport | None) -> int:
    source = args.source
    endpoint_key = f"{'preprint' if source == SOURCE_PREPRINT else 'publisher'}-oai"
    endpoint = args.endpoint or config.endpoints.get(endpoint_key)
    if not endpoint:
        raise _UsageError(
            f"no endpoint: pass --endpoint or set endpoints.{endpoint_key} in the config"
        )

    config.store_dir.mkdir(parents=True, exist_ok=True)
    target = _store_path(
        config, PREPRINTS_FILE if source == SOURCE_PREPRINT else PUBLISHED_FILE
    )
    existing = _existing_version_keys(target)

    state = _load_state(config)
    from_date = args.from_date or state.get(source, {}).get("last_datestamp")

    session = PoliteSession(
        transport or HttpTransport(),
        min_request_interval=config.min_request_interval,
        max_retries=config.max_retries,
    )
    stats = HarvestStats()
    appended = skipped = sectionless = 0
    max_stamp: dt.date | None = None
    with target.open("a", encoding="utf-8") as fh:
        for record in harvest.harvest_metadata(
            endpoint,
            session,
            set_filter=args.set_filter,
            from_date=from_date,
            until_date=args.until_date,
            stats=stats,
        ):
            if max_stamp is None or record.datestamp > max_stamp:
                max_stamp = record.datestamp
            docs = _documents_from_record(record, source)
            if not docs:
                sectionless += 1
                continue
            for doc in docs:
                key = (doc.source_id, doc.version_index)
                if key in existing:
                    skipped += 1
                    continue
                fh.write(document_to_json(doc) + "\n")
                existing.add(key)
                appended += 1

    if max_stamp is not None:
        state.setdefault(source, {})["last_datestamp"] = max_stamp.isoformat()
        state[source]["endpoint"] = endpoint
        _save_state(config, state)

    print(
        f"harvest {source}: {stats.yielded} records over {stats.pages} pages; "
        f"{appended} new documents, {skipped} already stored, "
        f"{sectionless} without usable sections, {stats.deleted_skipped} deleted, "
        f"{stats.token_restarts} window restarts"
    )
    return EXIT_OK


def cmd_import(config: RunConfig, args: argparse.Namespace,
               transport: Transport | None) -> int:
    manifest_path = Path(args.manifest)
    try:
        lines = manifest_path.read_text(encoding="utf-8").splitlines()
    except FileNotFoundError:
        raise _UsageError(f"import manifest not found: {manifest_path}")

    config.store_dir.mkdir(parents=True, exist_ok=True)
    target = _store_path(
        config, PREPRINTS_FILE if args.source == SOURCE_PREPRINT else PUBLISHED_FILE
    )
    existing = _existing_version_keys(target)

    imported = skipped = failed = 0
    docs: list[Document] = []
    for lineno, line in enumerate(lines, 1):
        line = line.strip()
        if not line:
            continue
        try:
            entry = json.loads(line)
            path = Path(entry["path"])
            if not path.is_absolute():
                path = manifest_path.parent / path
            provenance = entry.get("provenance", PROV_STRUCTURED)
            content = path.read_bytes()
            if provenance == PROV_SEGMENTED:
                sections = extract.extract_sections_segmented(content)
            else:
                sections = extract.extract_sections_structured(content)
            raw_date = entry.get("version_date")
            doc = Document(
                source_id=entry["source_id"],
                doi=entry.get("doi"),
                source=args.source,
                version_index=int(entry.get("version_index", 1)),
                version_date=(
                    dt.date.fromisoformat(str(raw_date)[:10]) if raw_date else None
                ),
                sections=sections,
                provenance=provenance,
            )
        except (KeyError, TypeError, ValueError, OSError,
                extract.UnparsableRecord) as exc:
            failed += 1
            print(f"import: {manifest_path}:{lineno}: skipped ({exc})",
                  file=sys.stderr)
            continue
        key = (doc.source_id, doc.version_index)
        if key in existing:
            skipped += 1
            continue
        existing.add(key)
        docs.append(doc)

    _append_documents(target, docs)
    imported = len(docs)
    print(
        f"import {args.source}: {imported} documents added, "
        f"{skipped} already stored, {failed} failed"
    )
    return EXIT_OK


# --------------------------------------------------------------------------
# match / compare


def cmd_match(config: RunConfig, args: argparse.Namespace,
              transport: Transport | None) -> int:
    preprints = _read_store_documents(_store_path(config, PREPRINTS_FILE))
    published = _read_store_documents(_store_path(config, PUBLISHED_FILE))
    result = match_pairs(preprints, published)
    _write_pairs_manifest(_store_path(config, PAIRS_FILE), result)
    reasons: dict[str, int] = {}
    for u in result.unmatched:
        reasons[u.reason] = reasons.get(u.reason, 0) + 1
    reason_text = (
        ", ".join(f"{k}: {v}" for k, v in sorted(reasons.items())) or "none"
    )
    print(
        f"match: {len(result.pairs)} pairs, {len(result.unmatched)} unmatched "
        f"({reason_text}), {len(result.conflicts)} conflicts"
    )
    return EXIT_OK


def _fmt(value: float) -> str:
    return repr(float(value))


def cmd_compare(config: RunConfig, args: argparse.Namespace,
                transport: Transport | None) -> int:
    pairs = _load_pairs(config)
    stopwords = config.stopwords()

    def compare_one(pair: MatchedPair) -> list[analysis.SectionComparison]:
        return analysis.compare_pair(
            pair,
            config.version_select,
            costs=config.costs,
            stopwords=stopwords,
            sections=config.section_filter,
        )

    with ThreadPoolExecutor(max_workers=args.workers) as pool:
        comparison_lists = list(pool.map(compare_one, pairs))

    out_path = config.comparisons_file()
    with out_path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(_TABLE_COLUMNS)
        rows = 0
        for comparisons in comparison_lists:
            for comp in comparisons:
                values: dict[str, float | None]
                if comp.scores is None:
                    values = {metric: None for metric in _TABLE_METRICS}
                else:
                    values = dict(comp.scores.by_metric())
                    values["signed_length"] = comp.scores.signed_length.value
                for metric in _TABLE_METRICS:
                    score = values[metric]
                    writer.writerow(
                        (
                            comp.doi,
                            comp.section,
                            comp.preprint_version_index,
                            metric,
                            "" if score is None else _fmt(score),
                        )
                    )
                    rows += 1
    print(
        f"compare ({config.version_select} version, {config.cost_model} costs): "
        f"{len(pairs)} pairs -> {rows} rows in {out_path}"
    )
    return EXIT_OK


# --------------------------------------------------------------------------
# report


def _read_comparison_table(path: Path) -> list[dict]:
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise _UsageError(f"comparison table missing: {path} (run compare first)")
    rows = []
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header != list(_TABLE_COLUMNS):
        raise StoreCorruption(f"{path}: unexpected header {header!r}")
    for row in reader:
        if len(row) != len(_TABLE_COLUMNS):
            raise StoreCorruption(f"{path}: malformed row {row!r}")
        doi, section, version_index, metric, score = row
        rows.append(
            {
                "doi": doi,
                "section": section,
                "metric": metric,
                "score": float(score) if score else None,
            }
        )
    return rows


def _distributions(table: list[dict]) -> dict[str, dict[str, analysis.BinnedDistribution]]:
    by_key: dict[tuple[str, str], list[float]] = {}
    for row in table:
        if row["metric"] in METRICS and row["score"] is not None:
            by_key.setdefault((row["section"], row["metric"]), []).append(row["score"])
    out: dict[str, dict[str, analysis.BinnedDistribution]] = {}
    for section in SECTIONS:
        for metric in METRICS:
            scores = by_key.get((section, metric))
            if scores:
                out.setdefault(section, {})[metric] = analysis.bin_scores(
                    scores, metric
                )
    return out


def cmd_report(config: RunConfig, args: argparse.Namespace,
               transport: Transport | None) -> int:
    table = _read_comparison_table(config.comparisons_file())
    if not table:
        raise _UsageError("comparison table is empty; nothing to report")

    distributions = _distributions(table)
    if not distributions:
        raise _UsageError("comparison table holds no scored sections")

    report_dir = _store_path(config, REPORT_DIR)
    report_dir.mkdir(parents=True, exist_ok=True)

    pairs = _load_pairs(config)
    corpus_pairs = len(pairs)

    for section, by_metric in distributions.items():
        for metric, dist in by_metric.items():
            with (report_dir / f"dist_{section}_{metric}.csv").open(
                "w", encoding="utf-8", newline=""
            ) as fh:
                writer = csv.writer(fh, lineterminator="\n")
                writer.writerow(("bin", "range", "count", "relative_pct"))
                for i, label in enumerate(BIN_LABELS):
                    writer.writerow(
                        (i, label, dist.counts[i], _fmt(dist.relative_pct[i]))
                    )

    # First-vs-last delta needs both tables; skip quietly when only one exists.
    deltas: dict[str, dict[str, tuple[float, ...]]] = {}
    other = "first" if config.version_select == "last" else "last"
    other_path = config.comparisons_file(other)
    if other_path.exists():
        other_dists = _distributions(_read_comparison_table(other_path))
        first_dists, last_dists = (
            (distributions, other_dists)
            if config.version_select == "first"
            else (other_dists, distributions)
        )
        for section, by_metric in first_dists.items():
            for metric, first_dist in by_metric.items():
                last_dist = last_dists.get(section, {}).get(metric)
                if last_dist is None:
                    continue
                delta = analysis.delta_report(first_dist, last_dist)
                deltas.setdefault(section, {})[metric] = delta
                with (report_dir / f"delta_{section}_{metric}.csv").open(
                    "w", encoding="utf-8", newline=""
                ) as fh:
                    writer = csv.writer(fh, lineterminator="\n")
                    writer.writerow(
                        ("bin", "range", "first_pct", "last_pct", "delta")
                    )
                    for i, label in enumerate(BIN_LABELS):
                        writer.writerow(
                            (
                                i,
                                label,
                                _fmt(first_dist.relative_pct[i]),
                                _fmt(last_dist.relative_pct[i]),
                                _fmt(delta[i]),
                            )
                        )

    precedence_report = analysis.precedence(
        pairs, config.version_select, config.bin_edges_days
    )

    null_rows: dict[str, int] = {}
    for row in table:
        if row["metric"] == "levenshtein" and row["score"] is None:
            null_rows[row["section"]] = null_rows.get(row["section"], 0) + 1

    summary = {
        "version_select": config.version_select,
        "cost_model": config.cost_model,
        "sections": list(config.section_filter),
        "bin_labels": list(BIN_LABELS),
        "corpus_pairs": corpus_pairs,
        "distributions": {
            section: {
                metric: {
                    "counts": list(dist.counts),
                    "total": dist.total,
                    "relative_pct": list(dist.relative_pct),
                    "corpus_pct": [
                        100.0 * c / corpus_pairs if corpus_pairs else 0.0
                        for c in dist.counts
                    ],
                }
                for metric, dist in by_metric.items()
            }
            for section, by_metric in distributions.items()
        },
        "deltas": {
            section: {metric: list(delta) for metric, delta in by_metric.items()}
            for section, by_metric in deltas.items()
        },
        "pairs_missing_section": null_rows,
        "precedence": {
            "included": precedence_report.included,
            "pct_preprint_first": precedence_report.pct_preprint_first,
            "pct_publisher_first": precedence_report.pct_publisher_first,
            "pct_same_day": precedence_report.pct_same_day,
            "day_bin_edges": list(precedence_report.day_bin_edges),
            "day_bin_labels": list(precedence_report.day_bin_labels),
            "preprint_first_bins": list(precedence_report.preprint_first_bins),
            "publisher_first_bins": list(precedence_report.publisher_first_bins),
            "excluded_missing_date": list(precedence_report.excluded_missing_date),
        },
    }
    (report_dir / "summary.json").write_text(
        json.dumps(summary, indent=2, sort_keys=True, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )

    for section in SECTIONS:
        by_metric = distributions.get(section)
        if not by_metric:
            continue
        shares = ", ".join(
            f"{metric} {dist.relative_pct[0]:.1f}%"
            for metric, dist in sorted(by_metric.items())
        )
        print(f"report {section}: top-bin share {shares}")
    print(
        f"report precedence: preprint first {precedence_report.pct_preprint_first:.1f}%, "
        f"publisher first {precedence_report.pct_publisher_first:.1f}%, "
        f"same day {precedence_report.pct_same_day:.1f}% "
        f"({precedence_report.included} dated pairs, "
        f"{len(precedence_report.excluded_missing_date)} excluded)"
    )
    return EXIT_OK


# --------------------------------------------------------------------------
# synth


def cmd_synth(config: RunConfig, args: argparse.Namespace,
              transport: Transport | None) -> int:
    block = dict(config.synth)
    if args.pairs is not None:
        block["n_pairs"] = args.pairs
    if args.mutation_rates is not None:
        block["mutation_rates"] = [
            float(v) for v in args.mutation_rates.split(",") if v.strip()
        ]
    if args.date_offsets is not None:
        block["date_offsets_days"] = [
            int(v) for v in args.date_offsets.split(",") if v.strip()
        ]
    if args.versions_per_pair is not None:
        block["versions_per_pair"] = args.versions_per_pair
    try:
        synth_config = synth.SynthConfig(
            seed=config.seed,
            **{
                **{k: tuple(v) if isinstance(v, list) else v for k, v in block.items()},
            },
        )
    except (TypeError, ValueError) as exc:
        raise _UsageError(f"bad synth settings: {exc}")

    preprints, published = synth.generate_corpus(synth_config)
    config.store_dir.mkdir(parents=True, exist_ok=True)
    write_documents(_store_path(config, PREPRINTS_FILE), preprints)
    write_documents(_store_path(config, PUBLISHED_FILE), published)
    print(
        f"synth: seed {synth_config.seed}, {synth_config.n_pairs} pairs, "
        f"rates {list(synth_config.mutation_rates)}, "
        f"offsets {list(synth_config.date_offsets_days)} days, "
        f"{synth_config.versions_per_pair} version(s) per pair"
    )
    return EXIT_OK


# --------------------------------------------------------------------------
# parser / entry point


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise _UsageError(message)


def _build_parser() -> _Parser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--store", help="store directory (default ./store)")
    shared.add_argument("--config", help="JSON config file")
    shared.add_argument("--seed", type=int, help="seed for synthetic subcommands")
    shared.add_argument(
        "--version-select",
        choices=("first", "last"),
        dest="version_select",
        help="which preprint version to compare against the published one",
    )
    shared.add_argument(
        "--sections", help="comma-separated subset of title,abstract,body"
    )
    shared.add_argument(
        "--cost-model",
        choices=tuple(_COST_MODELS),
        dest="cost_model",
        help="edit-cost model for the Levenshtein measure",
    )

    parser = _Parser(
        prog="scholdiff",
        description="Compare preprint and published versions of scholarly articles.",
    )
    sub = parser.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser("harvest", parents=[shared],
                       help="pull metadata records from an OAI-PMH endpoint")
    p.add_argument("--source", required=True,
                   choices=(SOURCE_PREPRINT, SOURCE_PUBLISHER))
    p.add_argument("--endpoint", help="endpoint URL (overrides config)")
    p.add_argument("--set", dest="set_filter", help="OAI set filter")
    p.add_argument("--from", dest="from_date", help="datestamp window start")
    p.add_argument("--until", dest="until_date", help="datestamp window end")

    p = sub.add_parser("import", parents=[shared],
                       help="extract sections from local article files")
    p.add_argument("--source", required=True,
                   choices=(SOURCE_PREPRINT, SOURCE_PUBLISHER))
    p.add_argument("manifest",
                   help="JSONL manifest: path, source_id, doi, version fields")

    sub.add_parser("match", parents=[shared],
                   help="pair preprint and published records by DOI")

    p = sub.add_parser("compare", parents=[shared],
                       help="score every matched pair section by section")
    p.add_argument("--workers", type=int, default=4)

    sub.add_parser("report", parents=[shared],
                   help="write binned distributions, deltas, and precedence")

    p = sub.add_parser("synth", parents=[shared],
                       help="generate a deterministic synthetic corpus")
    p.add_argument("--pairs", type=int, help="number of article pairs")
    p.add_argument("--mutation-rates", dest="mutation_rates",
                   help="comma-separated substitution rates, cycled over pairs")
    p.add_argument("--date-offsets", dest="date_offsets",
                   help="comma-separated day offsets (preprint lead), cycled")
    p.add_argument("--versions-per-pair", dest="versions_per_pair", type=int)

    return parser


_COMMANDS = {
    "harvest": cmd_harvest,
    "import": cmd_import,
    "match": cmd_match,
    "compare": cmd_compare,
    "report": cmd_report,
    "synth": cmd_synth,
}


def main(argv: Sequence[str] | None = None, *,
         transport: Transport | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return 0 if exc.code in (None, 0) else EXIT_USAGE

    if not args.command:
        parser.print_help(sys.stderr)
        return EXIT_USAGE

    try:
        config = build_config(args)
        return _COMMANDS[args.command](config, args, transport)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (TransportError, ProtocolError, DownloadFailed) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TRANSPORT
    except StoreCorruption as exc:
        print(f"store corruption: {exc}", file=sys.stderr)
        return EXIT_STORE


if __name__ == "__main__":
    sys.exit(main())
