"""Query featurization: ratio, dependency, lexical, tree-shape, interaction
and surface features, mutual-information feature selection, and z-score
standardization.

The raw vector concatenates seven named blocks in a fixed order (85 features
total). Zero denominators always yield 0 so every emitted value is finite,
even for degenerate one-word queries.

Deprel group membership is matched on the base relation (the part before any
":" subtype), using these fixed sets:

  subject-verb   nsubj, csubj
  object-verb    obj, iobj, dobj
  modifier       amod, advmod, nmod, nummod, appos
  coordination   cc, conj
  subordination  mark, advcl, ccomp, xcomp, acl
"""

from __future__ import annotations

import csv
import json
import math
import os
from dataclasses import dataclass

import numpy as np

from .errors import (
    EmptyTrainingSetError,
    KTooLargeError,
    SingleClassLabelsError,
)
from .parses import DependencyTree, EntitySpan, ParsedQuery
from .treepatterns import UnitCounts, count_units

REL_SUBJECT = frozenset({"nsubj", "csubj"})
REL_OBJECT = frozenset({"obj", "iobj", "dobj"})
REL_MODIFIER = frozenset({"amod", "advmod", "nmod", "nummod", "appos"})
REL_COORDINATION = frozenset({"cc", "conj"})
REL_SUBORDINATION = frozenset({"mark", "advcl", "ccomp", "xcomp", "acl"})
MARKER_SUBORDINATION = frozenset({"mark", "advcl", "ccomp", "xcomp"})

CONTENT_UPOS = frozenset({"NOUN", "VERB", "ADJ", "ADV", "PROPN"})
QUESTION_WORDS = ("what", "who", "when", "where", "which", "how", "why")
POS_COUNT_TAGS = ("NOUN", "VERB", "ADJ", "ADV", "PROPN", "PRON", "DET",
                  "ADP", "AUX", "NUM", "PART", "SCONJ", "CCONJ")

RATIO_NAMES = ("MLS", "MLT", "MLC", "C/S", "C/T", "CT/T", "DC/C", "DC/T",
               "CP/C", "CP/T", "T/S", "CN/C", "CN/T", "VP/T")

LONG_RANGE_DISTANCE = 5


def _safe_div(num: float, den: float) -> float:
    return num / den if den else 0.0


def _base_rel(deprel: str) -> str:
    return deprel.split(":", 1)[0]


@dataclass(frozen=True)
class RawFeatureVector:
    names: tuple[str, ...]
    values: np.ndarray

    def __post_init__(self):
        if len(self.names) != len(self.values):
            raise ValueError("names and values must have equal length")
        if len(set(self.names)) != len(self.names):
            raise ValueError("feature names must be distinct")
        if len(self.names) < 80:
            raise ValueError("raw feature vector must have at least 80 entries")


@dataclass(frozen=True)
class FeatureSchema:
    """Selected raw-feature indices plus standardization statistics."""

    selected: tuple[int, ...]
    mu: np.ndarray
    sigma: np.ndarray

    def __post_init__(self):
        if len(set(self.selected)) != len(self.selected):
            raise ValueError("selected indices must be distinct")
        if not (len(self.selected) == len(self.mu) == len(self.sigma)):
            raise ValueError("selected/mu/sigma must have equal length")
        if np.any(np.asarray(self.sigma) <= 0):
            raise ValueError("sigma entries must be strictly positive")

    @property
    def dim(self) -> int:
        return len(self.selected)

    def to_json(self) -> dict:
        return {
            "format": "synroute-feature-schema",
            "version": 1,
            "selected": list(self.selected),
            "mu": [float(v) for v in self.mu],
            "sigma": [float(v) for v in self.sigma],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "FeatureSchema":
        from .errors import VersionMismatchError

        if obj.get("format") != "synroute-feature-schema" or obj.get("version") != 1:
            raise VersionMismatchError("unrecognized feature schema file")
        return cls(selected=tuple(int(i) for i in obj["selected"]),
                   mu=np.asarray(obj["mu"], dtype=np.float64),
                   sigma=np.asarray(obj["sigma"], dtype=np.float64))

    def save(self, path: str) -> None:
        os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json(), fh)

    @classmethod
    def load(cls, path: str) -> "FeatureSchema":
        from .errors import MissingFileError

        if not os.path.exists(path):
            raise MissingFileError(f"no such file: {path}")
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))


def ratio_features(u: UnitCounts) -> dict[str, float]:
    """The 14 length/subordination/coordination/sophistication ratios."""
    return {
        "MLS": _safe_div(u.W, u.S),
        "MLT": _safe_div(u.W, u.T),
        "MLC": _safe_div(u.W, u.C),
        "C/S": _safe_div(u.C, u.S),
        "C/T": _safe_div(u.C, u.T),
        "CT/T": _safe_div(u.CT, u.T),
        "DC/C": _safe_div(u.DC, u.C),
        "DC/T": _safe_div(u.DC, u.T),
        "CP/C": _safe_div(u.CP, u.C),
        "CP/T": _safe_div(u.CP, u.T),
        "T/S": _safe_div(u.T, u.S),
        "CN/C": _safe_div(u.CN, u.C),
        "CN/T": _safe_div(u.CN, u.T),
        "VP/T": _safe_div(u.VP, u.T),
    }


def _dependency_features_multi(deps: tuple[DependencyTree, ...]) -> dict[str, float]:
    distances: list[int] = []
    rel_counts = {"rel_subject_verb": 0, "rel_object_verb": 0, "rel_modifier": 0,
                  "rel_coordination": 0, "rel_subordination": 0}
    imbalance_weighted = 0.0
    total_tokens = 0
    for dep in deps:
        for t in dep.tokens:
            if t.head != 0:
                distances.append(abs(t.index - t.head))
            base = _base_rel(t.deprel)
            if base in REL_SUBJECT:
                rel_counts["rel_subject_verb"] += 1
            if base in REL_OBJECT:
                rel_counts["rel_object_verb"] += 1
            if base in REL_MODIFIER:
                rel_counts["rel_modifier"] += 1
            if base in REL_COORDINATION:
                rel_counts["rel_coordination"] += 1
            if base in REL_SUBORDINATION:
                rel_counts["rel_subordination"] += 1
        n = len(dep)
        if n:
            root_children = dep.children_of(dep.root.index)
            if len(root_children) >= 2:
                sizes = dep.subtree_sizes()
                child_sizes = [sizes[c.index] for c in root_children]
                imbalance = (max(child_sizes) - min(child_sizes)) / n
            else:
                imbalance = 0.0
            imbalance_weighted += imbalance * n
            total_tokens += n
    out: dict[str, float] = {
        "max_dep_dist": float(max(distances)) if distances else 0.0,
        "avg_dep_dist": float(sum(distances) / len(distances)) if distances else 0.0,
        "long_range_count": float(sum(1 for d in distances if d > LONG_RANGE_DISTANCE)),
    }
    out.update({k: float(v) for k, v in rel_counts.items()})
    out["tree_imbalance"] = _safe_div(imbalance_weighted, total_tokens)
    return out


def dependency_features(dep: DependencyTree) -> dict[str, float]:
    """Distance, relation-group, and imbalance features of one sentence."""
    return _dependency_features_multi((dep,))


def _lexical_features_multi(deps: tuple[DependencyTree, ...],
                            entities: tuple[EntitySpan, ...]) -> dict[str, float]:
    tokens = [t for dep in deps for t in dep.tokens]
    words = [t for t in tokens if t.upos != "PUNCT"]
    w = len(words)

    by_type = {etype: 0 for etype in ("PERSON", "ORG", "LOC", "DATE")}
    for e in entities:
        if e.etype in by_type:
            by_type[e.etype] += 1
    entity_total = len(entities)

    agent = sum(1 for t in tokens if _base_rel(t.deprel) == "nsubj")
    patient = sum(1 for t in tokens if _base_rel(t.deprel) in ("obj", "dobj"))

    content = sum(1 for t in words if t.upos in CONTENT_UPOS)
    function = w - content
    distinct = len({t.form.lower() for t in words})

    qtype = "other"
    for t in tokens:
        if t.form.lower() in QUESTION_WORDS:
            qtype = t.form.lower()
            break

    coord = sum(1 for t in tokens if _base_rel(t.deprel) == "cc")
    subord = sum(1 for t in tokens if _base_rel(t.deprel) in MARKER_SUBORDINATION)
    negation = sum(
        1 for t in tokens
        if (t.upos == "PART" and t.lemma.lower() == "not") or "neg" in t.deprel.lower()
    )
    passive = sum(1 for t in tokens if "pass" in t.deprel.lower())

    out: dict[str, float] = {
        "entity_total": float(entity_total),
        "entity_person": float(by_type["PERSON"]),
        "entity_org": float(by_type["ORG"]),
        "entity_loc": float(by_type["LOC"]),
        "entity_date": float(by_type["DATE"]),
        "entity_density": _safe_div(entity_total, w),
        "role_agent": float(agent),
        "role_patient": float(patient),
        "role_temporal": float(by_type["DATE"]),
        "role_locative": float(by_type["LOC"]),
        "unique_token_ratio": _safe_div(distinct, w),
        "content_function_ratio": _safe_div(content, function),
        "info_density": _safe_div(content, w),
    }
    for qw in QUESTION_WORDS + ("other",):
        out[f"qtype_{qw}"] = 1.0 if qtype == qw else 0.0
    out.update({
        "marker_coordination": float(coord),
        "marker_subordination": float(subord),
        "marker_negation": float(negation),
        "marker_passive": float(passive),
    })
    return out


def lexical_semantic_features(dep: DependencyTree,
                              ents: tuple[EntitySpan, ...] | list[EntitySpan]) -> dict[str, float]:
    """Entity, role, diversity, question-type and complexity-marker features."""
    return _lexical_features_multi((dep,), tuple(ents))


def _tree_structure_multi(deps: tuple[DependencyTree, ...]) -> dict[str, float]:
    max_depth = 0
    width_by_depth: dict[int, int] = {}
    leaves = 0
    nonleaves = 0
    children_total = 0
    for dep in deps:
        if not len(dep):
            continue
        depths = dep.depths()
        for d in depths.values():
            width_by_depth[d] = width_by_depth.get(d, 0) + 1
        max_depth = max(max_depth, max(depths.values(), default=0))
        for t in dep.tokens:
            n_children = len(dep.children_of(t.index))
            if n_children == 0:
                leaves += 1
            else:
                nonleaves += 1
                children_total += n_children
    max_width = max(width_by_depth.values(), default=0)
    return {
        "max_depth": float(max_depth),
        "max_width": float(max_width),
        "leaf_ratio": _safe_div(leaves, nonleaves),
        "avg_branching": _safe_div(children_total, nonleaves),
        "depth_width_ratio": _safe_div(max_depth, max_width),
    }


def tree_structure_features(dep: DependencyTree) -> dict[str, float]:
    """Global shape of the dependency tree (depth, width, branching)."""
    return _tree_structure_multi((dep,))


def interaction_features(units: UnitCounts, prior: dict[str, float]) -> dict[str, float]:
    """Cross-dimension terms combining unit counts with earlier features."""
    connectors = prior.get("marker_coordination", 0.0) + prior.get("marker_subordination", 0.0)
    return {
        "tokens_per_clause": _safe_div(units.W, units.C),
        "entities_per_token": _safe_div(prior.get("entity_total", 0.0), units.W),
        "depth_per_token": _safe_div(prior.get("max_depth", 0.0), units.W),
        "connectors_per_clause": _safe_div(connectors, units.C),
    }


def _surface_features_multi(deps: tuple[DependencyTree, ...]) -> dict[str, float]:
    tokens = [t for dep in deps for t in dep.tokens]
    words = [t for t in tokens if t.upos != "PUNCT"]
    content = sum(1 for t in words if t.upos in CONTENT_UPOS)
    out: dict[str, float] = {
        "content_count": float(content),
        "function_count": float(len(words) - content),
    }
    for tag in POS_COUNT_TAGS:
        out[f"pos_{tag.lower()}"] = float(sum(1 for t in tokens if t.upos == tag))
    out["char_length"] = float(sum(len(t.form) for t in tokens))
    out["token_total"] = float(len(tokens))
    out["punct_count"] = float(len(tokens) - len(words))
    out["avg_word_length"] = _safe_div(sum(len(t.form) for t in words), len(words))
    return out


def assemble_raw(pq: ParsedQuery) -> RawFeatureVector:
    """Concatenate all feature blocks in the fixed documented order."""
    units = count_units(pq.con)
    feats: dict[str, float] = {
        "W": float(units.W), "S": float(units.S), "C": float(units.C),
        "DC": float(units.DC), "T": float(units.T), "CT": float(units.CT),
        "CP": float(units.CP), "CN": float(units.CN), "VP": float(units.VP),
    }
    feats.update(ratio_features(units))
    feats.update(_dependency_features_multi(pq.deps))
    feats.update(_lexical_features_multi(pq.deps, pq.entities))
    feats.update(_tree_structure_multi(pq.deps))
    feats.update(interaction_features(units, feats))
    feats.update(_surface_features_multi(pq.deps))
    names = tuple(feats.keys())
    values = np.array([feats[n] for n in names], dtype=np.float64)
    if not np.all(np.isfinite(values)):
        bad = [n for n, v in zip(names, values) if not math.isfinite(v)]
        raise ValueError(f"non-finite features: {bad}")
    return RawFeatureVector(names=names, values=values)


def _binned(col: np.ndarray, n_bins: int = 10) -> np.ndarray:
    qs = np.linspace(0.0, 1.0, n_bins + 1)[1:-1]
    edges = np.quantile(col, qs)
    return np.searchsorted(edges, col, side="right")


def mutual_information(col: np.ndarray, y: np.ndarray, n_bins: int = 10) -> float:
    """Discrete MI (natural log) between a quantile-binned column and labels."""
    bins = _binned(np.asarray(col, dtype=np.float64), n_bins)
    n = len(y)
    mi = 0.0
    for b in np.unique(bins):
        pb = float(np.sum(bins == b)) / n
        for c in (0, 1):
            joint = float(np.sum((bins == b) & (y == c))) / n
            if joint == 0.0:
                continue
            pc = float(np.sum(y == c)) / n
            ratio = joint / (pb * pc)
            if ratio != 1.0:
                mi += joint * math.log(ratio)
    return mi


def select_features(X: np.ndarray, y, k: int) -> list[int]:
    """Indices of the k columns with highest MI against the binary labels.

    Ties break toward the lower index.
    """
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    if X.ndim != 2 or len(y) != X.shape[0]:
        raise ValueError("X must be n x d with one label per row")
    classes = set(int(v) for v in y)
    if classes != {0, 1}:
        raise SingleClassLabelsError(f"need both classes present, got {sorted(classes)}")
    d = X.shape[1]
    if k > d:
        raise KTooLargeError(f"k={k} exceeds the {d} available features")
    scores = [mutual_information(X[:, j], y) for j in range(d)]
    order = sorted(range(d), key=lambda j: (-scores[j], j))
    return order[:k]


def fit_standardizer(X_selected: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Column means and stds; near-constant columns get sigma 1."""
    X_selected = np.asarray(X_selected, dtype=np.float64)
    if X_selected.ndim != 2 or X_selected.shape[0] == 0:
        raise EmptyTrainingSetError("standardizer needs at least one row")
    mu = X_selected.mean(axis=0)
    sigma = X_selected.std(axis=0)
    sigma = np.where(sigma < 1e-12, 1.0, sigma)
    return mu, sigma


def apply_standardizer(schema: FeatureSchema, x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (schema.dim,):
        raise ValueError(f"expected vector of length {schema.dim}, got {x.shape}")
    return (x - schema.mu) / schema.sigma


def fit_schema(X_raw: np.ndarray, y, k: int) -> FeatureSchema:
    """Select features on the raw matrix, then fit the standardizer."""
    X_raw = np.asarray(X_raw, dtype=np.float64)
    k = min(k, X_raw.shape[1])
    selected = select_features(X_raw, y, k)
    mu, sigma = fit_standardizer(X_raw[:, selected])
    return FeatureSchema(selected=tuple(selected), mu=mu, sigma=sigma)


def featurize(pq: ParsedQuery, schema: FeatureSchema) -> np.ndarray:
    """assemble_raw -> project to schema.selected -> standardize."""
    raw = assemble_raw(pq)
    if max(schema.selected) >= len(raw.values):
        raise ValueError("schema indices exceed raw feature dimensionality")
    return apply_standardizer(schema, raw.values[list(schema.selected)])


def export_features_csv(path: str, query_ids: list[str], raws: list[RawFeatureVector]) -> None:
    """Debug export: header of feature names, one row per query."""
    if not raws:
        raise EmptyTrainingSetError("nothing to export")
    names = raws[0].names
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(("query_id",) + names)
        for qid, raw in zip(query_ids, raws):
            writer.writerow([qid] + [repr(float(v)) for v in raw.values])
