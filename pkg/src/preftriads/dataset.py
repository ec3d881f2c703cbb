"""Preference datasets: loading, subset extraction, empirical distributions and synthetic data.

File formats
------------
Topics file (CSV)::

    topic,item1,item2,item3,item4,item5
    Facebook activity,Viewing posts,Chatting,Posting,Games/Apps,Marketing

Preferences file (CSV), one full ranking per node and topic, most preferred first::

    node_id,topic,ranking
    0,Facebook activity,Chatting>Viewing posts>Posting>Marketing>Games/Apps

Lines starting with ``#`` are ignored in both files.
"""

from __future__ import annotations

import csv
import io
import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .perm import (
    AlternativeAlphabet,
    OrderingParseError,
    Permutation,
    all_permutations,
    format_ordering,
    parse_ordering,
    restrict_ordering,
)
from .graph import make_rng

log = logging.getLogger(__name__)

ITEMS_PER_TOPIC = 5
SUBSET_SIZE = 3

# Topic schema of the Facebook-app survey; synthetic data reuses it.
SURVEY_TOPICS: tuple[tuple[str, tuple[str, ...]], ...] = (
    ("Hangout place", ("Friend's place", "Adventure park", "Trekking", "Mall", "Historical place")),
    ("Chatting app", ("WhatsApp", "Facebook", "Hangouts", "SMS", "Skype")),
    ("Facebook activity", ("Viewing posts", "Chatting", "Posting", "Games/Apps", "Marketing")),
    ("Lifestyle", ("Intellectual", "Exercising", "Social activist", "Lavish", "Smoking")),
    ("Website visited", ("Google", "Facebook", "Youtube", "Wikipedia", "Amazon")),
    ("Government investment", ("Education", "Agriculture", "Infrastructure", "Military", "Space explore")),
    ("Serious crime", ("Rape", "Terrorism", "Murder", "Corruption", "Extortion")),
    ("Leader", ("N. Modi (India)", "B. Obama (USA)", "D. Cameron (UK)", "V. Putin (Russia)", "X. Jinping (China)")),
)


class DatasetError(ValueError):
    """Malformed or inconsistent preference data."""


class EmptyInputError(ValueError):
    pass


@dataclass(frozen=True)
class TopicSpec:
    name: str
    items: AlternativeAlphabet

    @classmethod
    def of(cls, name: str, items: Sequence[str], expected: int | None = ITEMS_PER_TOPIC) -> TopicSpec:
        if expected is not None and len(items) != expected:
            raise DatasetError(f"topic {name!r} has {len(items)} items, expected {expected}")
        try:
            return cls(name, AlternativeAlphabet(tuple(items)))
        except ValueError as exc:
            raise DatasetError(f"topic {name!r}: {exc}") from None


@dataclass
class PreferenceDataset:
    topics: list[TopicSpec]
    # (node_id, topic_index) -> full ranking of that topic's items
    rankings: dict[tuple[int, int], Permutation]

    @property
    def node_ids(self) -> list[int]:
        return sorted({node for node, _ in self.rankings})

    def topic_nodes(self, topic_index: int) -> list[int]:
        return sorted(node for node, t in self.rankings if t == topic_index)


@dataclass
class PreferenceSet:
    topic_index: int
    kept_items: tuple[int, int, int]
    assignment: dict[int, Permutation]
    subset_rank: int = 0
    labels: tuple[str, ...] = ()

    @property
    def set_index(self) -> int:
        return self.topic_index * 10 + self.subset_rank


@dataclass(frozen=True)
class EmpiricalDistribution:
    orderings: tuple[Permutation, ...]
    counts: tuple[int, ...]
    sample_count: int
    weights: tuple[float, ...] = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(c / self.sample_count for c in self.counts))

    def exact_weights(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.sample_count) for c in self.counts)

    def as_dict(self) -> dict[Permutation, float]:
        return dict(zip(self.orderings, self.weights))


def _data_lines(fh) -> Iterable[tuple[int, str]]:
    for lineno, line in enumerate(fh, 1):
        if line.strip() and not line.lstrip().startswith("#"):
            yield lineno, line


def load_topics(path: str | Path, items_per_topic: int | None = ITEMS_PER_TOPIC) -> list[TopicSpec]:
    topics = []
    with open(path, encoding="utf-8", newline="") as fh:
        lines = list(_data_lines(fh))
    if not lines:
        raise DatasetError(f"{path}: no header")
    rows = list(csv.reader([line for _, line in lines]))
    header = rows[0]
    if not header or header[0].strip() != "topic":
        raise DatasetError(f"{path}:{lines[0][0]}: expected header starting with 'topic'")
    names = set()
    for (lineno, _), row in zip(lines[1:], rows[1:]):
        row = [c.strip() for c in row]
        if len(row) < 2:
            raise DatasetError(f"{path}:{lineno}: topic row needs a name and items")
        if row[0] in names:
            raise DatasetError(f"{path}:{lineno}: duplicate topic {row[0]!r}")
        names.add(row[0])
        try:
            topics.append(TopicSpec.of(row[0], row[1:], items_per_topic))
        except DatasetError as exc:
            raise DatasetError(f"{path}:{lineno}: {exc}") from None
    return topics


def load_dataset(
    pref_path: str | Path,
    topics_path: str | Path,
    *,
    drop_incomplete: bool = False,
    items_per_topic: int | None = ITEMS_PER_TOPIC,
) -> PreferenceDataset:
    """Load and validate a preference dataset.

    By default every node must rank every topic; with ``drop_incomplete`` a
    node missing a topic is simply absent from that topic.
    """
    topics = load_topics(topics_path, items_per_topic)
    by_name = {t.name: i for i, t in enumerate(topics)}
    rankings: dict[tuple[int, int], Permutation] = {}
    with open(pref_path, encoding="utf-8", newline="") as fh:
        lines = list(_data_lines(fh))
    if not lines:
        raise DatasetError(f"{pref_path}: no header")
    rows = list(csv.reader([line for _, line in lines]))
    if [c.strip() for c in rows[0]] != ["node_id", "topic", "ranking"]:
        raise DatasetError(f"{pref_path}:{lines[0][0]}: expected header node_id,topic,ranking")
    for (lineno, _), row in zip(lines[1:], rows[1:]):
        where = f"{pref_path}:{lineno}"
        if len(row) != 3:
            raise DatasetError(f"{where}: expected 3 fields, got {len(row)}")
        node_s, topic, ranking = (c.strip() for c in row)
        try:
            node = int(node_s)
        except ValueError:
            raise DatasetError(f"{where}: node_id must be an integer, got {node_s!r}") from None
        if node < 0:
            raise DatasetError(f"{where}: negative node_id {node}")
        if topic not in by_name:
            raise DatasetError(f"{where}: unknown topic {topic!r}")
        t = by_name[topic]
        labels = [lab.strip() for lab in ranking.split(">")]
        try:
            perm = parse_ordering(">".join(labels), topics[t].items)
        except OrderingParseError as exc:
            kind = {"duplicate": "duplicate item", "missing": "incomplete ranking"}.get(exc.kind, "unknown item")
            raise DatasetError(f"{where}: {kind}: {exc}") from None
        if (node, t) in rankings:
            raise DatasetError(f"{where}: node {node} ranks topic {topic!r} twice")
        rankings[(node, t)] = perm
    ds = PreferenceDataset(topics, rankings)
    nodes = ds.node_ids
    for t, spec in enumerate(topics):
        have = len(ds.topic_nodes(t))
        if have < len(nodes):
            if not drop_incomplete:
                missing = sorted(set(nodes) - set(ds.topic_nodes(t)))
                raise DatasetError(
                    f"topic {spec.name!r} is missing rankings for {len(missing)} node(s), "
                    f"first {missing[0]}; pass drop_incomplete to skip them"
                )
            log.info("topic %r: %d of %d nodes ranked", spec.name, have, len(nodes))
    log.info("loaded %d nodes, %d topics", len(nodes), len(topics))
    return ds


def dataset_to_csv(ds: PreferenceDataset) -> tuple[str, str]:
    """Serialize to (preferences CSV, topics CSV) text."""
    tbuf = io.StringIO()
    tw = csv.writer(tbuf, lineterminator="\n")
    width = max((t.items.n for t in ds.topics), default=ITEMS_PER_TOPIC)
    tw.writerow(["topic"] + [f"item{i + 1}" for i in range(width)])
    for t in ds.topics:
        tw.writerow([t.name, *t.items.labels])
    pbuf = io.StringIO()
    pw = csv.writer(pbuf, lineterminator="\n")
    pw.writerow(["node_id", "topic", "ranking"])
    for (node, t), perm in sorted(ds.rankings.items()):
        labels = ds.topics[t].items.labels
        pw.writerow([node, ds.topics[t].name, ">".join(labels[x] for x in perm.word)])
    return pbuf.getvalue(), tbuf.getvalue()


def save_dataset(ds: PreferenceDataset, pref_path: str | Path, topics_path: str | Path) -> None:
    prefs, topics = dataset_to_csv(ds)
    Path(pref_path).write_text(prefs, encoding="utf-8")
    Path(topics_path).write_text(topics, encoding="utf-8")


def extract_subsets(ds: PreferenceDataset) -> list[PreferenceSet]:
    """Every (topic, 3-item subset) preference set, in topic-major lexicographic order."""
    out = []
    for t, spec in enumerate(ds.topics):
        if spec.items.n != ITEMS_PER_TOPIC:
            raise DatasetError(f"topic {spec.name!r} has {spec.items.n} items, expected {ITEMS_PER_TOPIC}")
        nodes = ds.topic_nodes(t)
        for rank, keep in enumerate(combinations(range(spec.items.n), SUBSET_SIZE)):
            assignment = {node: restrict_ordering(ds.rankings[(node, t)], keep) for node in nodes}
            labels = tuple(spec.items.labels[k] for k in keep)
            out.append(PreferenceSet(t, keep, assignment, rank, labels))
    return out


def empirical_distribution(ps: PreferenceSet | Mapping[int, Permutation]) -> EmpiricalDistribution:
    assignment = ps.assignment if isinstance(ps, PreferenceSet) else ps
    if not assignment:
        raise EmptyInputError("cannot build a distribution from an empty preference set")
    n = next(iter(assignment.values())).n
    orderings = tuple(all_permutations(n))
    tally = Counter(assignment.values())
    return EmpiricalDistribution(orderings, tuple(tally[o] for o in orderings), len(assignment))


def sample_assignment(
    dist: EmpiricalDistribution, node_ids: Sequence[int], seed=None, *, rng: np.random.Generator | None = None
) -> dict[int, Permutation]:
    rng = rng if rng is not None else make_rng(seed)
    p = np.array(dist.counts, dtype=float) / dist.sample_count
    draws = rng.choice(len(dist.orderings), size=len(node_ids), p=p)
    return {node: dist.orderings[k] for node, k in zip(node_ids, draws.tolist())}


def preference_set_csv(ps: PreferenceSet) -> str:
    alphabet = AlternativeAlphabet(ps.labels) if ps.labels else None
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["node_id", "ordering"])
    for node in sorted(ps.assignment):
        w.writerow([node, format_ordering(ps.assignment[node], alphabet)])
    return buf.getvalue()


def sample_mallows(reference: Permutation, dispersion: float, rng: np.random.Generator) -> Permutation:
    """One ranking from a Mallows model via repeated insertion.

    ``dispersion`` is the Mallows phi: 1 gives a uniform ranking, 0 returns ``reference``.
    """
    word: list[int] = []
    for i, item in enumerate(reference.word):
        # inserting at position j displaces i - j items: weight phi**(i - j)
        if dispersion >= 1.0:
            pos = int(rng.integers(0, i + 1))
        elif dispersion <= 0.0:
            pos = i
        else:
            w = dispersion ** np.arange(i, -1, -1, dtype=float)
            pos = int(rng.choice(i + 1, p=w / w.sum()))
        word.insert(pos, item)
    return Permutation(tuple(word))


def generate_synthetic_dataset(
    node_count: int,
    topic_count: int = 8,
    seed=None,
    skew: float = 0.0,
    *,
    communities: Sequence[int] | None = None,
    items_per_topic: int = ITEMS_PER_TOPIC,
) -> PreferenceDataset:
    """Random stand-in dataset with ``topic_count`` topics of ``items_per_topic`` items.

    Rankings follow a Mallows model with dispersion ``1 - skew`` around a
    reference ranking per topic (per topic and community when ``communities``
    gives a label per node): ``skew=0`` is uniform, ``skew=1`` puts every node
    of a community on the reference ranking.
    """
    if node_count < 3:
        raise ValueError(f"need at least 3 nodes, got {node_count}")
    if not 0.0 <= skew <= 1.0:
        raise ValueError(f"skew must be in [0, 1], got {skew}")
    if communities is not None and len(communities) != node_count:
        raise ValueError("communities needs one label per node")
    rng = make_rng(seed)
    topics = []
    for t in range(topic_count):
        if t < len(SURVEY_TOPICS) and items_per_topic == ITEMS_PER_TOPIC:
            name, items = SURVEY_TOPICS[t]
        else:
            name, items = f"Topic {t + 1}", tuple(f"T{t + 1}.{i + 1}" for i in range(items_per_topic))
        topics.append(TopicSpec.of(name, items, expected=None))
    labels = list(communities) if communities is not None else [0] * node_count
    phi = 1.0 - skew
    rankings = {}
    for t in range(topic_count):
        refs = {
            c: Permutation(tuple(rng.permutation(items_per_topic).tolist())) for c in sorted(set(labels))
        }
        for node in range(node_count):
            rankings[(node, t)] = sample_mallows(refs[labels[node]], phi, rng)
    return PreferenceDataset(topics, rankings)
