"""Class census of preference triangles in a network, null ensembles and comparisons."""

from __future__ import annotations

import csv
import io
import json
import logging
import math
from dataclasses import asdict, dataclass
from typing import Mapping, Sequence

import numpy as np
from scipy import stats

from .dataset import (
    PreferenceDataset,
    PreferenceSet,
    empirical_distribution,
    extract_subsets,
    sample_assignment,
)
from .graph import (
    Graph,
    RewireSaturationError,
    SwapReport,
    closed_triangle_fraction,
    default_swaps,
    degree_sequence,
    make_rng,
    rewire,
    triangle_array,
)
from .perm import Permutation, all_permutations, format_ordering, AlternativeAlphabet
from .triads import class_lookup3

log = logging.getLogger(__name__)

NUM_CLASSES = 10
DEFAULT_SEED = 20220401
SCHEMA_VERSION = 1
MODES = ("rewire", "resample", "rewire+resample")
# float slack when ranking replicate statistics against the observed one
_TIE_EPS = 1e-12


class MissingAssignmentError(KeyError):
    def __init__(self, node: int):
        super().__init__(f"node {node} lies on a triangle but has no preference ordering")
        self.node = node


class UndefinedComparisonError(ValueError):
    pass


@dataclass(frozen=True)
class ClassHistogram:
    counts: tuple[int, ...]

    def __post_init__(self):
        if len(self.counts) != NUM_CLASSES:
            raise ValueError(f"need {NUM_CLASSES} class counts, got {len(self.counts)}")

    @property
    def total_triangles(self) -> int:
        return sum(self.counts)

    @property
    def normalized(self) -> tuple[float, ...]:
        total = self.total_triangles
        if total == 0:
            return (0.0,) * NUM_CLASSES
        return tuple(c / total for c in self.counts)

    def count(self, class_id: int) -> int:
        return self.counts[class_id - 1]


_ORDER_INDEX = {p: i for i, p in enumerate(all_permutations(3))}
_LOOKUP = np.array(class_lookup3(), dtype=np.int64)


def census(g: Graph, assignment: Mapping[int, Permutation]) -> ClassHistogram:
    """Count the triangles of ``g`` in each of the 10 classes under ``assignment``."""
    tris = triangle_array(g)
    if len(tris) == 0:
        return ClassHistogram((0,) * NUM_CLASSES)
    idx = np.full(g.node_count, -1, dtype=np.int64)
    for node, perm in assignment.items():
        if 0 <= node < g.node_count:
            try:
                idx[node] = _ORDER_INDEX[perm]
            except KeyError:
                raise ValueError(f"node {node}: census needs orderings on 3 alternatives, got {perm!r}") from None
    orders = idx[tris]
    if (orders < 0).any():
        row, col = np.argwhere(orders < 0)[0]
        raise MissingAssignmentError(int(tris[row, col]))
    classes = _LOOKUP[orders[:, 0], orders[:, 1], orders[:, 2]]
    counts = np.bincount(classes, minlength=NUM_CLASSES + 1)[1:]
    return ClassHistogram(tuple(int(c) for c in counts))


@dataclass(frozen=True)
class Replicate:
    index: int
    seed: int
    histogram: ClassHistogram
    swaps: int = 0
    attempts: int = 0
    rejections: int = 0
    degree_preserved: bool = True
    saturated: bool = False


@dataclass
class NullEnsemble:
    mode: str
    replicates: list[Replicate]

    @property
    def histograms(self) -> list[ClassHistogram]:
        return [r.histogram for r in self.replicates]


def replicate_seed(base_seed: int, index: int) -> int:
    return base_seed + index


def rewired_graphs(
    g: Graph,
    replicates: int,
    base_seed: int = DEFAULT_SEED,
    swaps: int | None = None,
    *,
    strict: bool = False,
    check: bool = False,
) -> list[tuple[Graph, SwapReport, bool]]:
    """One degree-preserving randomization of ``g`` per replicate.

    Returns ``(graph, report, saturated)`` triples. Unless ``strict``, a
    saturated run keeps its partial result instead of raising.
    """
    swaps = default_swaps(g) if swaps is None else swaps
    if g.edge_count < 2:
        swaps = 0
    out = []
    for i in range(replicates):
        rng = make_rng([replicate_seed(base_seed, i), 0])
        try:
            h, rep = rewire(g, swaps, rng=rng, check=check)
            out.append((h, rep, False))
        except RewireSaturationError as exc:
            if strict:
                raise
            log.warning("replicate %d: %s", i, exc)
            out.append((exc.graph, exc.report, True))
    return out


def null_ensemble(
    g: Graph,
    ps: PreferenceSet,
    replicates: int = 10,
    mode: str = "rewire+resample",
    base_seed: int = DEFAULT_SEED,
    swaps: int | None = None,
    *,
    graphs: Sequence[tuple[Graph, SwapReport, bool]] | None = None,
    strict: bool = True,
) -> NullEnsemble:
    """Census ``replicates`` randomized versions of ``(g, ps)``.

    ``rewire`` keeps the observed orderings on rewired edges, ``resample``
    keeps the edges and redraws orderings from the set's empirical
    distribution, ``rewire+resample`` does both. Replicate ``i`` uses seed
    ``base_seed + i``. Pre-rewired ``graphs`` may be passed to share them
    across preference sets. With ``strict`` a saturated rewiring raises.
    """
    if replicates < 1:
        raise ValueError("need at least one replicate")
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    rewiring = mode in ("rewire", "rewire+resample")
    resampling = mode in ("resample", "rewire+resample")
    if rewiring:
        if graphs is None:
            graphs = rewired_graphs(g, replicates, base_seed, swaps, strict=strict)
        if len(graphs) < replicates:
            raise ValueError(f"{replicates} replicates requested, {len(graphs)} graphs supplied")
    dist = empirical_distribution(ps) if resampling else None
    nodes = sorted(ps.assignment)
    base_degrees = degree_sequence(g)
    out = []
    for i in range(replicates):
        seed = replicate_seed(base_seed, i)
        if rewiring:
            h, rep, saturated = graphs[i]
        else:
            h, rep, saturated = g, SwapReport(0, 0, 0, 0), False
        if resampling:
            assignment = sample_assignment(dist, nodes, rng=make_rng([seed, 1, ps.set_index]))
        else:
            assignment = ps.assignment
        out.append(
            Replicate(
                index=i,
                seed=seed,
                histogram=census(h, assignment),
                swaps=rep.successful,
                attempts=rep.attempts,
                rejections=rep.rejections,
                degree_preserved=degree_sequence(h) == base_degrees,
                saturated=saturated,
            )
        )
    return NullEnsemble(mode, out)


@dataclass
class ClassComparison:
    class_id: int
    observed_count: int
    observed_freq: float
    ensemble_mean: float
    ensemble_std: float
    ensemble_mean_freq: float
    ensemble_std_freq: float
    p_value: float


@dataclass
class ComparisonReport:
    classes: list[ClassComparison]
    total_variation: float
    chi_square: float
    chi_square_dof: int
    chi_square_asymptotic_p: float
    p_value: float
    replicates_used: int

    def to_dict(self) -> dict:
        return asdict(self)


def total_variation(p: Sequence[float], q: Sequence[float]) -> float:
    return 0.5 * float(np.abs(np.asarray(p, float) - np.asarray(q, float)).sum())


def _std(x: np.ndarray, axis=0) -> np.ndarray:
    return x.std(axis=axis, ddof=1) if x.shape[axis] > 1 else np.zeros(x.shape[1 - axis])


def compare(observed: ClassHistogram, ensemble: NullEnsemble) -> ComparisonReport:
    """Observed histogram against the null ensemble.

    p-values are ensemble ranks with +1 smoothing: the fraction of replicates
    at least as far from the ensemble mean as the observed histogram. Per
    class the distance is the absolute frequency deviation; overall it is
    the total-variation distance.
    """
    hists = ensemble.histograms
    if not hists:
        raise UndefinedComparisonError("empty ensemble")
    if observed.total_triangles == 0:
        raise UndefinedComparisonError("observed histogram has no triangles")
    usable = [h for h in hists if h.total_triangles > 0]
    if not usable:
        raise UndefinedComparisonError("no replicate contains a triangle")
    counts = np.array([h.counts for h in hists], dtype=float)
    freqs = np.array([h.normalized for h in usable], dtype=float)
    obs = np.array(observed.normalized)
    mean_f = freqs.mean(axis=0)
    std_f = _std(freqs)
    mean_c = counts.mean(axis=0)
    std_c = _std(counts)
    r = len(usable)

    dev_obs = np.abs(obs - mean_f)
    dev_rep = np.abs(freqs - mean_f)
    class_p = (1 + (dev_rep >= dev_obs - _TIE_EPS).sum(axis=0)) / (r + 1)

    tv_obs = total_variation(obs, mean_f)
    tv_rep = np.array([total_variation(f, mean_f) for f in freqs])
    p_overall = (1 + int((tv_rep >= tv_obs - _TIE_EPS).sum())) / (r + 1)

    expected = mean_f * observed.total_triangles
    support = expected > 0
    observed_counts = np.array(observed.counts, dtype=float)
    if (observed_counts[~support] > 0).any():
        chi2 = math.inf
    else:
        chi2 = float((((observed_counts - expected) ** 2)[support] / expected[support]).sum())
    dof = max(int(support.sum()) - 1, 0)
    chi2_p = float(stats.chi2.sf(chi2, dof)) if dof > 0 else 1.0

    classes = [
        ClassComparison(
            class_id=k + 1,
            observed_count=observed.counts[k],
            observed_freq=float(obs[k]),
            ensemble_mean=float(mean_c[k]),
            ensemble_std=float(std_c[k]),
            ensemble_mean_freq=float(mean_f[k]),
            ensemble_std_freq=float(std_f[k]),
            p_value=float(class_p[k]),
        )
        for k in range(NUM_CLASSES)
    ]
    return ComparisonReport(classes, tv_obs, chi2, dof, chi2_p, p_overall, r)


@dataclass
class ExperimentConfig:
    replicates: int = 10
    mode: str = "rewire+resample"
    seed: int = DEFAULT_SEED
    swap_multiplier: int = 10
    swaps: int | None = None

    def swaps_for(self, g: Graph) -> int:
        return self.swaps if self.swaps is not None else default_swaps(g, self.swap_multiplier)


def _ordering_label(p: Permutation, labels: Sequence[str]) -> str:
    return format_ordering(p, AlternativeAlphabet(tuple(labels))) if labels else format_ordering(p)


def _entry(ps: PreferenceSet, ds: PreferenceDataset, g: Graph, cfg: ExperimentConfig, graphs) -> dict:
    topic = ds.topics[ps.topic_index]
    entry: dict = {
        "set_index": ps.set_index,
        "topic": topic.name,
        "topic_index": ps.topic_index,
        "subset": list(ps.labels),
        "subset_items": list(ps.kept_items),
        "subset_rank": ps.subset_rank,
        "node_count": len(ps.assignment),
    }
    dist = empirical_distribution(ps)
    entry["distribution"] = {
        _ordering_label(o, ps.labels): c for o, c in zip(dist.orderings, dist.counts)
    }
    observed = census(g, ps.assignment)
    ens = null_ensemble(g, ps, cfg.replicates, cfg.mode, cfg.seed, graphs=graphs)
    entry["observed_histogram"] = {
        "counts": list(observed.counts),
        "frequencies": list(observed.normalized),
        "total": observed.total_triangles,
    }
    counts = np.array([r.histogram.counts for r in ens.replicates], dtype=float)
    entry["ensemble"] = [
        {"replicate": r.index, "seed": r.seed, "counts": list(r.histogram.counts), "total": r.histogram.total_triangles}
        for r in ens.replicates
    ]
    entry["ensemble_summaries"] = {
        "mean": counts.mean(axis=0).tolist(),
        "std": _std(counts).tolist(),
    }
    entry["zero_triangles"] = observed.total_triangles == 0
    if observed.total_triangles == 0:
        entry["comparison"] = None
    else:
        try:
            entry["comparison"] = compare(observed, ens).to_dict()
        except UndefinedComparisonError as exc:
            entry["comparison"] = None
            entry["note"] = str(exc)
    return entry


def run_experiment(ds: PreferenceDataset, g: Graph, config: ExperimentConfig | None = None) -> dict:
    """Census, null ensemble and comparison for every (topic, 3-item subset) preference set.

    Rewired graphs are drawn once and shared by all preference sets; the
    orderings are resampled per set. Failures in one set are recorded in
    its entry and do not stop the batch.
    """
    cfg = config or ExperimentConfig()
    if cfg.mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {cfg.mode!r}")
    swaps = cfg.swaps_for(g)
    graphs = None
    graph_info = []
    if cfg.mode in ("rewire", "rewire+resample"):
        graphs = rewired_graphs(g, cfg.replicates, cfg.seed, swaps)
        base_degrees = degree_sequence(g)
        for i, (h, rep, saturated) in enumerate(graphs):
            graph_info.append(
                {
                    "replicate": i,
                    "seed": replicate_seed(cfg.seed, i),
                    "swaps": rep.successful,
                    "attempts": rep.attempts,
                    "rejections": rep.rejections,
                    "saturated": saturated,
                    "degree_preserved": degree_sequence(h) == base_degrees,
                    "triangles": len(triangle_array(h)),
                }
            )
    entries = []
    for ps in extract_subsets(ds):
        try:
            entries.append(_entry(ps, ds, g, cfg, graphs))
        except Exception as exc:  # one bad set must not abort the batch
            log.error("set %d failed: %s", ps.set_index, exc)
            entries.append(
                {
                    "set_index": ps.set_index,
                    "topic": ds.topics[ps.topic_index].name,
                    "topic_index": ps.topic_index,
                    "subset": list(ps.labels),
                    "subset_rank": ps.subset_rank,
                    "error": f"{type(exc).__name__}: {exc}",
                }
            )
    entries.sort(key=lambda e: (e["topic_index"], e["subset_rank"]))
    return {
        "schema_version": SCHEMA_VERSION,
        "config": {
            "seed": cfg.seed,
            "replicates": cfg.replicates,
            "mode": cfg.mode,
            "swap_multiplier": cfg.swap_multiplier,
            "swaps": swaps,
            "replicate_seed_rule": "seed + replicate_index",
            "connectivity_enforced": False,
        },
        "network": {
            "nodes": g.node_count,
            "edges": g.edge_count,
            "triangles": len(triangle_array(g)),
            "closed_triangle_fraction": closed_triangle_fraction(g),
        },
        "dataset": {"nodes": len(ds.node_ids), "topics": [t.name for t in ds.topics]},
        "replicate_graphs": graph_info,
        "entries": entries,
    }


def _json_safe(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return "inf" if obj > 0 else ("-inf" if obj < 0 else "nan")
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    return obj


def report_to_json(report: dict) -> str:
    return json.dumps(_json_safe(report), indent=2, ensure_ascii=False) + "\n"


def histogram_csv(entry: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["class_id", "observed_count", "ensemble_mean", "ensemble_std"])
    obs = entry.get("observed_histogram", {}).get("counts", [0] * NUM_CLASSES)
    summ = entry.get("ensemble_summaries", {})
    mean = summ.get("mean", [0.0] * NUM_CLASSES)
    std = summ.get("std", [0.0] * NUM_CLASSES)
    for k in range(NUM_CLASSES):
        w.writerow([k + 1, obs[k], repr(float(mean[k])), repr(float(std[k]))])
    return buf.getvalue()
