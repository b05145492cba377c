"""End-to-end orchestration: text in, solved layout document out.

Stages run in fixed order (corpus, embeddings, semgraph, cluster, treemap,
fontfit); every stage is timed and failures are wrapped with the stage name so
callers (CLI exit codes, HTTP status mapping) can report where things broke.
Identical config plus identical input files reproduce the document exactly.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

from . import cluster as cluster_mod
from . import corpus as corpus_mod
from . import embeddings as embeddings_mod
from . import fontfit as fontfit_mod
from . import render as render_mod
from . import semgraph as semgraph_mod
from . import treemap as treemap_mod
from .geometry import Polygon

MIN_EM_LAYOUT = 1.0  # sliver-cell clamp at layout scale (container ~1000 units)

WEIGHTINGS = ("linear", "sqrt")
FORMATS = ("svg", "json", "both")
CONTAINERS = ("circle", "square")


class ConfigError(ValueError):
    """Invalid run configuration; the message names the offending flag."""


class PipelineError(Exception):
    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"{stage}: {cause}")
        self.stage = stage
        self.cause = cause


@dataclass(frozen=True)
class RunConfig:
    """The user-facing parameter surface of a layout run."""

    input_path: str | None = None
    embedding_path: str | None = None
    output_path: str | None = None
    stopword_path: str | None = None
    keep_lexicon_path: str | None = None
    language: str = "en"
    max_words: int = 150
    k: int = 3
    weighting: str = "linear"
    container: str = "circle"
    font: str = "sans"
    optimize_font: bool = True
    rotation_step: float = 3.0
    hyphenate: bool = True
    seed: int = 42
    format: str = "svg"
    threads: int | None = None

    def validated(self, *, need_input: bool = True, need_output: bool = True) -> "RunConfig":
        if need_input:
            if not self.input_path:
                raise ConfigError("--input: required")
            if not Path(self.input_path).is_file():
                raise ConfigError(f"--input: file not found: {self.input_path}")
        if not self.embedding_path:
            raise ConfigError("--vectors: required")
        if not Path(self.embedding_path).is_file():
            raise ConfigError(f"--vectors: file not found: {self.embedding_path}")
        for flag, path in (
            ("--stopwords", self.stopword_path),
            ("--keep-lexicon", self.keep_lexicon_path),
        ):
            if path is not None and not Path(path).is_file():
                raise ConfigError(f"{flag}: file not found: {path}")
        if need_output and not self.output_path:
            raise ConfigError("--out: required")
        if self.max_words < 1:
            raise ConfigError("--max-words: must be >= 1")
        if self.k < 1:
            raise ConfigError("--k: must be >= 1")
        if self.weighting not in WEIGHTINGS:
            raise ConfigError(f"--weighting: must be one of {WEIGHTINGS}")
        if not (0.0 < self.rotation_step <= 90.0):
            raise ConfigError("--rotation-step: must be in (0, 90] degrees")
        if self.format not in FORMATS:
            raise ConfigError(f"--format: must be one of {FORMATS}")
        if self.threads is not None and self.threads < 1:
            raise ConfigError("--threads: must be >= 1")
        if self.container not in CONTAINERS and not Path(self.container).is_file():
            raise ConfigError(
                f"--container: must be one of {CONTAINERS} or a polygon JSON file"
            )
        return self


def resolve_container(spec: str) -> Polygon:
    if spec in CONTAINERS:
        return treemap_mod.default_container(spec)
    raw = json.loads(Path(spec).read_text(encoding="utf-8"))
    return Polygon(raw)


def _thread_count(config: RunConfig) -> int:
    if config.threads:
        return config.threads
    env = os.environ.get("STORYGEM_THREADS")
    if env and env.isdigit() and int(env) > 0:
        return int(env)
    return os.cpu_count() or 1


@dataclass
class PipelineResult:
    doc: treemap_mod.LayoutDocument
    entries: list
    partition: list[int]
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def cluster_count(self) -> int:
        return len(self.doc.cells)


class _Timer:
    def __init__(self):
        self.timings: dict[str, float] = {}
        self._t0 = None
        self._stage = None

    def start(self, stage: str):
        self._stage = stage
        self._t0 = time.perf_counter()

    def stop(self):
        self.timings[self._stage] = round(time.perf_counter() - self._t0, 6)


def run_pipeline(
    text: str,
    config: RunConfig,
    table: embeddings_mod.EmbeddingTable | None = None,
) -> PipelineResult:
    """Run every stage on the given text. A preloaded embedding table (the
    service's startup cache) short-circuits the file load."""
    timer = _Timer()

    def stage(name):
        timer.start(name)
        return name

    name = stage("corpus")
    try:
        stopwords = (
            corpus_mod.load_wordlist(config.stopword_path)
            if config.stopword_path
            else corpus_mod.default_stopwords(config.language)
            if config.language in corpus_mod.SUPPORTED_LANGUAGES
            else frozenset()
        )
        keep = (
            corpus_mod.load_wordlist(config.keep_lexicon_path)
            if config.keep_lexicon_path
            else None
        )
        filter_config = corpus_mod.TokenFilterConfig(
            language=config.language,
            stopwords=stopwords,
            keep_lexicon=keep,
            max_words=config.max_words,
        )
        tokens = corpus_mod.tokenize(text, filter_config)
        entries = corpus_mod.count_words(tokens, filter_config)
        if not entries:
            raise ValueError("no words survive filtering")
    except Exception as exc:
        raise PipelineError(name, exc) from exc
    timer.stop()

    name = stage("embeddings")
    try:
        if table is None:
            table = embeddings_mod.load_vectors(
                config.embedding_path, {e.surface for e in entries}
            )
        entries = embeddings_mod.drop_oov(entries, table)
        if not entries:
            raise embeddings_mod.EmptyIntersection("every word is out of vocabulary")
    except Exception as exc:
        raise PipelineError(name, exc) from exc
    timer.stop()

    name = stage("semgraph")
    try:
        graph = semgraph_mod.knn_graph(entries, config.k)
    except Exception as exc:
        raise PipelineError(name, exc) from exc
    timer.stop()

    name = stage("cluster")
    try:
        partition = cluster_mod.louvain(
            graph, cluster_mod.LouvainConfig(seed=config.seed)
        )
        tree = cluster_mod.build_tree(partition, entries, weighting=config.weighting)
    except Exception as exc:
        raise PipelineError(name, exc) from exc
    timer.stop()

    name = stage("treemap")
    try:
        container = resolve_container(config.container)
        doc = treemap_mod.layout_tree(tree, container, config.seed)
    except Exception as exc:
        raise PipelineError(name, exc) from exc
    timer.stop()

    name = stage("fontfit")
    try:
        metrics = fontfit_mod.load_metrics(config.font)
        leaves = doc.leaves()
        for leaf in leaves:
            leaf.word = entries[leaf.word_index].surface

        def fit(leaf):
            if config.optimize_font:
                return fontfit_mod.fit_word(
                    leaf.word,
                    leaf.polygon,
                    metrics,
                    rotation_step=config.rotation_step,
                    hyphenate=config.hyphenate,
                    min_em=MIN_EM_LAYOUT,
                )
            return fontfit_mod.fit_word_baseline(
                leaf.word, leaf.polygon, metrics, min_em=MIN_EM_LAYOUT
            )

        with ThreadPoolExecutor(max_workers=_thread_count(config)) as pool:
            placements = list(pool.map(fit, leaves))
        for leaf, placement in zip(leaves, placements):
            leaf.placement = placement
    except Exception as exc:
        raise PipelineError(name, exc) from exc
    timer.stop()

    doc.meta = {
        "seed": config.seed,
        "k": config.k,
        "weighting": config.weighting,
        "max_words": config.max_words,
        "optimize_font": config.optimize_font,
        "rotation_step": config.rotation_step,
        "hyphenate": config.hyphenate,
        "font": metrics.name,
        "line_advance": metrics.line_advance,
        "words": len(entries),
        "clusters": len(doc.cells),
    }
    return PipelineResult(
        doc=doc,
        entries=entries,
        partition=partition,
        timings=timer.timings,
    )


def render_outputs(result: PipelineResult, config: RunConfig) -> dict[str, bytes]:
    """Serialize per the requested format; keys are output file paths."""
    out = Path(config.output_path)
    artifacts: dict[str, bytes] = {}
    if config.format in ("svg", "both"):
        svg_path = out if out.suffix == ".svg" else out.with_suffix(".svg")
        artifacts[str(svg_path)] = render_mod.to_svg(result.doc)
    if config.format in ("json", "both"):
        json_path = out if out.suffix == ".json" and config.format == "json" else out.with_suffix(".json")
        artifacts[str(json_path)] = (render_mod.to_json(result.doc) + "\n").encode("utf-8")
    return artifacts


def config_from_dict(data: dict, base: RunConfig = RunConfig()) -> RunConfig:
    """Overlay a JSON-ish dict of snake_case fields onto a base config."""
    allowed = {f for f in RunConfig.__dataclass_fields__}
    unknown = set(data) - allowed
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    return replace(base, **data)
