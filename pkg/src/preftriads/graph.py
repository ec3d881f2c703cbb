"""Simple undirected graphs: triangle census, clustering and degree-preserving rewiring."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

log = logging.getLogger(__name__)

DEFAULT_SWAP_MULTIPLIER = 10
ATTEMPTS_PER_SWAP = 100


class RewireSaturationError(RuntimeError):
    def __init__(self, message: str, graph: Graph, report: SwapReport):
        super().__init__(message)
        self.graph = graph
        self.report = report


@dataclass(frozen=True)
class IngestReport:
    loops_dropped: int = 0
    duplicates_merged: int = 0


@dataclass(frozen=True)
class SwapReport:
    requested: int
    successful: int
    attempts: int
    rejections: int
    # connectivity is not preserved or checked during rewiring
    connectivity_enforced: bool = False


class Graph:
    """Immutable simple undirected graph on nodes ``0..node_count-1``."""

    __slots__ = ("node_count", "adjacency", "edge_count", "_nbr_sets", "_triangles")

    def __init__(self, node_count: int, edges: Iterable[tuple[int, int]]):
        nbrs: list[set[int]] = [set() for _ in range(node_count)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        self.node_count = node_count
        self.adjacency = tuple(tuple(sorted(s)) for s in nbrs)
        self.edge_count = sum(len(a) for a in self.adjacency) // 2
        self._nbr_sets = tuple(frozenset(s) for s in nbrs)
        self._triangles = None

    def __repr__(self) -> str:
        return f"Graph(node_count={self.node_count}, edge_count={self.edge_count})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.adjacency == other.adjacency

    def __hash__(self) -> int:
        return hash(self.adjacency)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, nb in enumerate(self.adjacency) for v in nb if u < v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._nbr_sets[u]

    def neighbors(self, u: int) -> tuple[int, ...]:
        return self.adjacency[u]

    def degree(self, u: int) -> int:
        return len(self.adjacency[u])


def from_edge_list(edges: Iterable[tuple[int, int]]) -> tuple[Graph, IngestReport]:
    """Build a simple graph, dropping self-loops and merging repeated or reversed pairs."""
    seen: set[tuple[int, int]] = set()
    loops = dups = 0
    max_id = -1
    for u, v in edges:
        u, v = int(u), int(v)
        if u < 0 or v < 0:
            raise ValueError(f"negative node id in edge ({u}, {v})")
        max_id = max(max_id, u, v)
        if u == v:
            loops += 1
            continue
        key = (u, v) if u < v else (v, u)
        if key in seen:
            dups += 1
        else:
            seen.add(key)
    if loops:
        log.warning("dropped %d self-loop(s)", loops)
    return Graph(max_id + 1, sorted(seen)), IngestReport(loops, dups)


def read_edge_list(path: str | Path) -> tuple[Graph, IngestReport]:
    edges = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected two node ids, got {line!r}")
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise ValueError(f"{path}:{lineno}: node ids must be integers, got {line!r}") from None
            edges.append((u, v))
    return from_edge_list(edges)


def write_edge_list(g: Graph, path: str | Path, header: str | None = None) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        if header:
            for line in header.splitlines():
                fh.write(f"# {line}\n")
        for u, v in g.edges():
            fh.write(f"{u} {v}\n")


def triangles(g: Graph) -> Iterator[tuple[int, int, int]]:
    """Yield every triangle once as ``(u, v, w)`` with ``u < v < w``."""
    adj = g.adjacency
    sets = g._nbr_sets
    for u in range(g.node_count):
        nu = sets[u]
        for v in adj[u]:
            if v <= u:
                continue
            for w in adj[v]:
                if w > v and w in nu:
                    yield (u, v, w)


def triangle_array(g: Graph) -> np.ndarray:
    """All triangles as a cached ``(T, 3)`` integer array, rows sorted ascending."""
    if g._triangles is None:
        tris = np.array(list(triangles(g)), dtype=np.int64).reshape(-1, 3)
        tris.setflags(write=False)
        g._triangles = tris
    return g._triangles


def triangle_count(g: Graph) -> int:
    return len(triangle_array(g))


def wedge_count(g: Graph) -> int:
    return sum(d * (d - 1) // 2 for d in map(len, g.adjacency))


def closed_triangle_fraction(g: Graph) -> float:
    """Global clustering coefficient: 3 * triangles / connected triples."""
    wedges = wedge_count(g)
    if wedges == 0:
        return 0.0
    return 3 * triangle_count(g) / wedges


def degree_sequence(g: Graph) -> tuple[int, ...]:
    return tuple(sorted(len(a) for a in g.adjacency))


def is_simple(g: Graph) -> bool:
    for u, nb in enumerate(g.adjacency):
        if u in nb or len(set(nb)) != len(nb) or list(nb) != sorted(nb):
            return False
        if any(u not in g._nbr_sets[v] for v in nb):
            return False
    return True


def make_rng(seed) -> np.random.Generator:
    """PCG64 generator; ``seed`` may be an int or a sequence of ints."""
    return np.random.Generator(np.random.PCG64(seed))


def rewire(
    g: Graph,
    successful_swaps: int,
    seed=None,
    *,
    rng: np.random.Generator | None = None,
    check: bool = False,
) -> tuple[Graph, SwapReport]:
    """Randomize ``g`` by double-edge swaps until ``successful_swaps`` swaps succeed.

    Each attempt picks two distinct edges (a, b), (c, d) uniformly, flips the
    orientation of the second with probability 1/2, and proposes replacing them
    by (a, d), (c, b). Proposals creating a self-loop or a parallel edge are
    rejected. Raises ``RewireSaturationError`` (carrying the partial result)
    after ``100 * successful_swaps`` attempts.

    With ``check=True`` degrees and simplicity are verified after every swap.
    """
    if successful_swaps < 0:
        raise ValueError("successful_swaps must be non-negative")
    if successful_swaps and g.edge_count < 2:
        raise ValueError("rewiring needs at least 2 edges")
    rng = rng if rng is not None else make_rng(seed)
    edges = g.edges()
    present = set(edges)
    m = len(edges)
    degrees = [len(a) for a in g.adjacency] if check else None
    max_attempts = ATTEMPTS_PER_SWAP * successful_swaps
    done = attempts = 0
    batch = 4096
    while done < successful_swaps:
        # draw in batches; each row is (first edge, second edge offset, flip)
        firsts = rng.integers(0, m, size=batch)
        offsets = rng.integers(1, m, size=batch)
        flips = rng.integers(0, 2, size=batch)
        for i, off, flip in zip(firsts.tolist(), offsets.tolist(), flips.tolist()):
            if done >= successful_swaps:
                break
            if attempts >= max_attempts:
                out = Graph(g.node_count, edges)
                report = SwapReport(successful_swaps, done, attempts, attempts - done)
                raise RewireSaturationError(
                    f"only {done} of {successful_swaps} swaps succeeded in {attempts} attempts", out, report
                )
            attempts += 1
            j = (i + off) % m
            a, b = edges[i]
            c, d = edges[j]
            if flip:
                c, d = d, c
            if a == d or c == b:
                continue
            e1 = (a, d) if a < d else (d, a)
            e2 = (c, b) if c < b else (b, c)
            if e1 in present or e2 in present or e1 == e2:
                continue
            present.discard(edges[i])
            present.discard(edges[j])
            present.add(e1)
            present.add(e2)
            edges[i] = e1
            edges[j] = e2
            done += 1
            if check:
                _check_swap(g.node_count, edges, present, degrees)
    out = Graph(g.node_count, sorted(edges))
    return out, SwapReport(successful_swaps, done, attempts, attempts - done)


def _check_swap(node_count, edges, present, degrees):
    if len(present) != len(edges):
        raise AssertionError("parallel edge created during rewiring")
    deg = [0] * node_count
    for u, v in edges:
        if u == v:
            raise AssertionError(f"self-loop created at node {u}")
        deg[u] += 1
        deg[v] += 1
    if deg != degrees:
        raise AssertionError("degree sequence changed during rewiring")


def default_swaps(g: Graph, multiplier: int = DEFAULT_SWAP_MULTIPLIER) -> int:
    return multiplier * g.edge_count


def gnm_random_graph(node_count: int, edge_count: int, seed=None, *, rng=None) -> Graph:
    """Uniform random simple graph with exactly ``edge_count`` edges."""
    max_edges = node_count * (node_count - 1) // 2
    if edge_count > max_edges:
        raise ValueError(f"{edge_count} edges do not fit in a simple graph on {node_count} nodes")
    rng = rng if rng is not None else make_rng(seed)
    chosen: set[tuple[int, int]] = set()
    while len(chosen) < edge_count:
        need = edge_count - len(chosen)
        us = rng.integers(0, node_count, size=2 * need + 16).tolist()
        vs = rng.integers(0, node_count, size=2 * need + 16).tolist()
        for u, v in zip(us, vs):
            if u == v:
                continue
            chosen.add((u, v) if u < v else (v, u))
            if len(chosen) == edge_count:
                break
    return Graph(node_count, sorted(chosen))


def planted_partition_graph(
    labels: list[int], edge_count: int, intra_fraction: float, seed=None, *, rng=None
) -> Graph:
    """Random simple graph where roughly ``intra_fraction`` of the edges join nodes with equal labels."""
    rng = rng if rng is not None else make_rng(seed)
    n = len(labels)
    groups: dict[int, list[int]] = {}
    for node, lab in enumerate(labels):
        groups.setdefault(lab, []).append(node)
    members = [np.array(groups[k]) for k in sorted(groups)]
    sizes = np.array([len(m) for m in members], dtype=float)
    intra_capacity = sum(len(m) * (len(m) - 1) // 2 for m in members)
    n_intra = min(int(round(intra_fraction * edge_count)), intra_capacity)
    chosen: set[tuple[int, int]] = set()
    weights = sizes**2 / (sizes**2).sum()
    while len(chosen) < n_intra:
        k = rng.choice(len(members), p=weights)
        grp = members[k]
        if len(grp) < 2:
            continue
        u, v = rng.choice(grp, size=2, replace=False).tolist()
        chosen.add((u, v) if u < v else (v, u))
    while len(chosen) < edge_count:
        u, v = rng.integers(0, n, size=2).tolist()
        if u != v:
            chosen.add((u, v) if u < v else (v, u))
    return Graph(n, sorted(chosen))
