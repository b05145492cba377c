"""storygem: gapless word maps.

Text goes in; a Voronoi treemap comes out in which every word owns a convex
cell sized by its frequency, colored by its semantic cluster, and drawn at
the largest size that provably fits its cell.
"""

from .cluster import ClusterTree, LouvainConfig, build_tree, louvain
from .corpus import TokenFilterConfig, WordEntry, count_words, tokenize
from .embeddings import EmbeddingTable, cosine, drop_oov, load_vectors
from .fontfit import (
    FontMetrics,
    Placement,
    WordShape,
    fit_word,
    fit_word_baseline,
    load_metrics,
    solve_fit_lp,
    syllable_breaks,
    word_hull,
)
from .geometry import Polygon
from .pipeline import PipelineResult, RunConfig, run_pipeline
from .render import RenderStyle, to_json, to_svg
from .semgraph import SemanticGraph, knn_graph
from .treemap import LayoutDocument, cvt_layout, layout_tree, power_diagram

__version__ = "0.1.0"
