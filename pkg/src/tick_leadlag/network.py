"""Lead/lag network: minimum spanning tree over pairwise correlations.

Edges are weighted by the distance sqrt(2 (1 - rho)) and oriented from the leader
to the lagger according to the pair's LLR.
"""

import logging
import math
from dataclasses import dataclass
from functools import partial
from itertools import combinations
from typing import Any, Callable, Iterable, Mapping, Optional

import networkx as nx
import pandas as pd

from tick_leadlag.hycorr import (
    EstimatorError,
    LagGrid,
    cross_correlation_curve,
    default_lag_grid,
    extract_summary,
)
from tick_leadlag.parallel import map_ordered

logger = logging.getLogger(__name__)

CORRELATIONS = ("max_corr", "rho0")


class NetworkError(Exception):
    """Pairwise input does not cover every pair of nodes."""

    def __init__(self, missing: list[tuple[str, str]]):
        self.missing = missing
        shown = ", ".join(f"{a}-{b}" for a, b in missing[:10])
        more = f" (+{len(missing) - 10} more)" if len(missing) > 10 else ""
        super().__init__(f"Missing pair summaries: {shown}{more}")


@dataclass(frozen=True)
class PairSummary:
    """Correlation and LLR of the ordered pair (x, y); llr > 1 means x leads."""

    x: str
    y: str
    rho: float
    llr: float
    max_lag_s: float = math.nan


@dataclass(frozen=True)
class LeadLagEdge:
    source: str
    target: str
    rho: float
    llr: float
    distance: float
    directed: bool = True


@dataclass
class LeadLagGraph:
    nodes: list[str]
    edges: list[LeadLagEdge]

    def to_networkx(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(self.nodes)
        for e in self.edges:
            g.add_edge(
                e.source, e.target, rho=e.rho, llr=e.llr, distance=e.distance,
                directed=int(e.directed),
            )
        return g

    def edges_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [
                {"from": e.source, "to": e.target, "rho": e.rho, "llr": e.llr,
                 "directed": e.directed}
                for e in self.edges
            ],
            columns=["from", "to", "rho", "llr", "directed"],
        )


def correlation_distance(rho: float) -> float:
    """sqrt(2 (1 - rho)), clamped at 0 for rho slightly above 1."""
    return math.sqrt(max(2.0 * (1.0 - rho), 0.0))


def build_mst(
    pairs: Iterable[PairSummary],
    *,
    nodes: Optional[Iterable[str]] = None,
    distance: Callable[[float], float] = correlation_distance,
) -> LeadLagGraph:
    """Minimum spanning tree of the pairwise distances, edges oriented by LLR.

    Ties in distance are resolved by lexicographic pair order. An edge whose LLR is
    exactly 1 (or NaN) keeps lexicographic orientation and is flagged undirected; an LLR
    of 0 points the edge at the pair's first leg with an infinite ratio.

    Raises:
        NetworkError: A pair of nodes has no summary.
        ValueError: Fewer than two nodes.
    """
    by_key: dict[tuple[str, str], PairSummary] = {}
    for p in pairs:
        by_key[tuple(sorted((p.x, p.y)))] = p
    names = sorted(set(nodes) if nodes is not None else {n for k in by_key for n in k})
    if len(names) < 2:
        raise ValueError("build_mst needs at least two nodes")

    missing = [k for k in combinations(names, 2) if k not in by_key]
    if missing:
        raise NetworkError(missing)

    g = nx.Graph()
    g.add_nodes_from(names)
    for key in combinations(names, 2):
        g.add_edge(*key, distance=distance(by_key[key].rho))
    tree = nx.minimum_spanning_tree(g, weight="distance", algorithm="kruskal")

    edges = []
    for a, b in sorted(tuple(sorted(e)) for e in tree.edges()):
        p = by_key[(a, b)]
        # orient in the pair's own frame, then to leader -> lagger
        source, target, ratio = p.x, p.y, p.llr
        if ratio == 0:
            logger.info("Pair %s/%s has LLR 0; %s leads outright", p.x, p.y, p.y)
            source, target, ratio = target, source, math.inf
        elif ratio < 1:
            source, target, ratio = target, source, 1.0 / ratio
        directed = not math.isnan(ratio) and ratio != 1
        if not directed:
            source, target = a, b
        edges.append(
            LeadLagEdge(source, target, p.rho, ratio, tree.edges[a, b]["distance"], directed)
        )
    logger.debug("MST over %d nodes kept %d edges", len(names), len(edges))
    return LeadLagGraph(nodes=names, edges=edges)


def graph_to_gml(graph: LeadLagGraph) -> str:
    """GML description of the directed tree for external layout tools."""
    return "\n".join(nx.generate_gml(graph.to_networkx())) + "\n"


def _pair_summary(
    job: tuple[str, str, Mapping[str, Any], Mapping[str, Any]],
    grid: LagGrid,
    correlation: str,
) -> Optional[PairSummary]:
    x, y, x_days, y_days = job
    curve = cross_correlation_curve(x_days, y_days, grid)
    if curve.n_days == 0:
        logger.warning("No usable common day for %s/%s", x, y)
        return None
    try:
        summary = extract_summary(curve)
    except EstimatorError as e:
        logger.warning("Pair %s/%s has no summary: %s", x, y, e)
        return None
    rho = summary.max_corr if correlation == "max_corr" else float(curve.rho[grid.zero_index])
    return PairSummary(x, y, rho, summary.llr, summary.max_lag_s)


def summarize_pairs(
    series_by_ric: Mapping[str, Mapping[str, Any]],
    grid: Optional[LagGrid] = None,
    *,
    correlation: str = "max_corr",
    jobs: Optional[int] = 1,
) -> list[PairSummary]:
    """Summaries of every lexicographically ordered pair of instruments.

    Pairs without a usable curve are left out, so build_mst reports them missing.
    """
    if correlation not in CORRELATIONS:
        raise ValueError(f"Unknown correlation {correlation!r}; expected one of {CORRELATIONS}")
    grid = grid or default_lag_grid()
    rics = sorted(series_by_ric)
    work = [(a, b, series_by_ric[a], series_by_ric[b]) for a, b in combinations(rics, 2)]
    results = map_ordered(partial(_pair_summary, grid=grid, correlation=correlation), work, jobs)
    return [r for r in results if r is not None]
