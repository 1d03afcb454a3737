"""In-memory dependency and constituency parses plus readers for the two
interchange formats delivered by the parsing sidecar.

CoNLL-U blocks arrive as 10 tab-separated columns (comment lines start with
'#'); constituency trees arrive as PTB-style bracketed text. Parse objects
are immutable after construction and shareable read-only.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import (
    CyclicHeadsError,
    EmptyNodeError,
    EmptyTreeError,
    InvalidHeadError,
    MalformedColumnCountError,
    MalformedLineError,
    MissingFileError,
    MultipleRootsError,
    UnbalancedParensError,
)

ENTITY_TYPES = ("PERSON", "ORG", "LOC", "DATE", "OTHER")


@dataclass(frozen=True)
class Token:
    index: int  # 1-based position in the sentence
    form: str
    lemma: str
    upos: str
    head: int  # 0 = root
    deprel: str


class DependencyTree:
    """A single-sentence dependency tree; validates the tree invariant."""

    def __init__(self, tokens: list[Token]):
        self.tokens = tuple(tokens)
        n = len(self.tokens)
        roots = [t.index for t in self.tokens if t.head == 0]
        if len(roots) > 1:
            raise MultipleRootsError(f"tokens {roots} all claim head 0")
        if n and not roots:
            raise CyclicHeadsError("no root token (head 0) present")
        for t in self.tokens:
            if t.head < 0 or t.head > n:
                raise InvalidHeadError(f"token {t.index} has head {t.head} outside [0, {n}]")
            if t.head == t.index:
                raise CyclicHeadsError(f"token {t.index} is its own head")
        # every token must reach the root by following heads
        children: dict[int, list[int]] = {i: [] for i in range(n + 1)}
        for t in self.tokens:
            children[t.head].append(t.index)
        reached = set()
        stack = list(children[0])
        while stack:
            i = stack.pop()
            reached.add(i)
            stack.extend(children[i])
        if len(reached) != n:
            raise CyclicHeadsError("head links contain a cycle")
        self._children = children

    def __len__(self) -> int:
        return len(self.tokens)

    @property
    def root(self) -> Token:
        return next(t for t in self.tokens if t.head == 0)

    def children_of(self, index: int) -> list[Token]:
        return [self.tokens[i - 1] for i in self._children.get(index, [])]

    def depths(self) -> dict[int, int]:
        """Token index -> depth, with the root at depth 0."""
        out: dict[int, int] = {}
        stack = [(i, 0) for i in self._children[0]]
        while stack:
            i, d = stack.pop()
            out[i] = d
            stack.extend((j, d + 1) for j in self._children[i])
        return out

    def subtree_sizes(self) -> dict[int, int]:
        """Token index -> size of its subtree (including itself)."""
        sizes: dict[int, int] = {}

        def walk(i: int) -> int:
            total = 1
            for j in self._children[i]:
                total += walk(j)
            sizes[i] = total
            return total

        for i in self._children[0]:
            walk(i)
        return sizes


@dataclass(frozen=True)
class ConstituencyTree:
    """PTB-style node: internal nodes carry children, leaves carry a form."""

    label: str
    children: tuple["ConstituencyTree", ...] = ()
    leaf_form: str | None = None

    def __post_init__(self):
        if self.children and self.leaf_form is not None:
            raise EmptyNodeError(f"node {self.label!r} has both children and a leaf form")
        if not self.children and self.leaf_form is None:
            raise EmptyNodeError(f"node {self.label!r} has neither children nor a leaf form")

    @property
    def is_leaf(self) -> bool:
        return self.leaf_form is not None

    def leaves(self) -> list["ConstituencyTree"]:
        if self.is_leaf:
            return [self]
        out = []
        for c in self.children:
            out.extend(c.leaves())
        return out

    def leaf_forms(self) -> list[str]:
        return [leaf.leaf_form for leaf in self.leaves()]  # type: ignore[misc]


@dataclass(frozen=True)
class EntitySpan:
    text: str
    etype: str  # one of ENTITY_TYPES
    start: int  # token offsets
    end: int

    def __post_init__(self):
        if self.etype not in ENTITY_TYPES:
            object.__setattr__(self, "etype", "OTHER")


@dataclass(frozen=True)
class ParsedQuery:
    """Joint parse input to the featurizer.

    Multi-sentence queries carry one dependency tree per sentence (the
    constituency side is merged under a single root by the reader).
    """

    query_id: str
    deps: tuple[DependencyTree, ...]
    con: ConstituencyTree
    entities: tuple[EntitySpan, ...] = ()

    @property
    def dep(self) -> DependencyTree:
        return self.deps[0]


def read_conllu(text: str) -> DependencyTree:
    """Parse a single-sentence CoNLL-U block.

    Columns ID, FORM, LEMMA, UPOS, HEAD, DEPREL are used; the rest are
    ignored. Multi-word token ranges and empty nodes (ranged or decimal IDs)
    are skipped so only syntactic words remain.
    """
    tokens: list[Token] = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 10:
            raise MalformedColumnCountError(line_no, len(cols))
        tid = cols[0]
        if "-" in tid or "." in tid:
            continue  # multi-word token range / empty node
        try:
            index = int(tid)
            head = int(cols[6])
        except ValueError:
            raise MalformedColumnCountError(line_no, len(cols)) from None
        tokens.append(Token(index=index, form=cols[1], lemma=cols[2],
                            upos=cols[3], head=head, deprel=cols[7]))
    return DependencyTree(tokens)


def read_conllu_document(text: str) -> list[DependencyTree]:
    """Split a CoNLL-U document on blank lines into per-sentence trees."""
    blocks = [b for b in text.split("\n\n") if b.strip()]
    return [read_conllu(b) for b in blocks]


def read_bracketed(text: str) -> ConstituencyTree:
    """Parse a single PTB-style bracketed tree; whitespace-insensitive."""
    trees, _ = _parse_bracketed_many(text, single=True)
    return trees[0]


def read_bracketed_forest(text: str) -> ConstituencyTree:
    """Parse one or more bracketed trees and merge them under one root.

    A single tree is returned unchanged. When several trees are present
    (multi-sentence input), children of per-sentence ROOT/TOP wrappers are
    hoisted under a fresh ROOT so sentence-level units stay top-level.
    """
    trees, _ = _parse_bracketed_many(text, single=False)
    if len(trees) == 1:
        return trees[0]
    merged: list[ConstituencyTree] = []
    for t in trees:
        if t.label in ("ROOT", "TOP", "") and not t.is_leaf:
            merged.extend(t.children)
        else:
            merged.append(t)
    return ConstituencyTree(label="ROOT", children=tuple(merged))


def _parse_bracketed_many(text: str, single: bool) -> tuple[list[ConstituencyTree], int]:
    pos = 0
    n = len(text)
    trees: list[ConstituencyTree] = []

    def skip_ws(i: int) -> int:
        while i < n and text[i].isspace():
            i += 1
        return i

    def parse_node(i: int) -> tuple[ConstituencyTree, int]:
        if text[i] != "(":
            raise UnbalancedParensError(i)
        open_pos = i
        i = skip_ws(i + 1)
        label_start = i
        while i < n and text[i] not in "() \t\r\n":
            i += 1
        label = text[label_start:i]
        i = skip_ws(i)
        if i >= n:
            raise UnbalancedParensError(open_pos)
        if text[i] == "(":
            children = []
            while i < n and text[i] == "(":
                child, i = parse_node(i)
                children.append(child)
                i = skip_ws(i)
            if i >= n or text[i] != ")":
                raise UnbalancedParensError(open_pos)
            if not label and len(children) == 1:
                # tolerate the "( (S ...))" wrapper emitted by some parsers
                return children[0], i + 1
            return ConstituencyTree(label=label or "ROOT", children=tuple(children)), i + 1
        if text[i] == ")":
            raise EmptyNodeError(f"node {label!r} at offset {open_pos} has no children")
        form_start = i
        while i < n and text[i] not in "()":
            i += 1
        form = text[form_start:i].strip()
        if i >= n or text[i] != ")":
            raise UnbalancedParensError(open_pos)
        if not form:
            raise EmptyNodeError(f"node {label!r} at offset {open_pos} has no children")
        return ConstituencyTree(label=label, leaf_form=form), i + 1

    pos = skip_ws(pos)
    if pos >= n:
        raise EmptyTreeError("no tree in input")
    while pos < n:
        tree, pos = parse_node(pos)
        trees.append(tree)
        pos = skip_ws(pos)
        if single and pos < n:
            raise UnbalancedParensError(pos)
        if single:
            break
    return trees, pos


def print_bracketed(tree: ConstituencyTree) -> str:
    if tree.is_leaf:
        return f"({tree.label} {tree.leaf_form})"
    inner = " ".join(print_bracketed(c) for c in tree.children)
    return f"({tree.label} {inner})"


def parse_record_to_query(record: dict) -> ParsedQuery:
    """Build a ParsedQuery from one parses.jsonl record."""
    deps = tuple(read_conllu_document(record["conllu"]))
    if not deps:
        raise EmptyTreeError(f"record {record.get('id')!r} has no dependency sentences")
    con = read_bracketed_forest(record["constituency"])
    entities = tuple(
        EntitySpan(text=e["text"], etype=e.get("type", "OTHER"),
                   start=int(e["start"]), end=int(e["end"]))
        for e in record.get("entities", [])
    )
    return ParsedQuery(query_id=str(record["id"]), deps=deps, con=con, entities=entities)


def load_parse_records(path: str) -> tuple[dict[str, ParsedQuery], dict[str, str]]:
    """Read parses.jsonl into {query_id: ParsedQuery}.

    Records of the form {"id", "error"} (per-record sidecar failures) are
    collected separately instead of aborting the load.
    """
    import os

    if not os.path.exists(path):
        raise MissingFileError(f"no such file: {path}")
    parsed: dict[str, ParsedQuery] = {}
    failed: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise MalformedLineError(line_no, str(exc)) from None
            if "error" in record:
                failed[str(record.get("id"))] = str(record["error"])
                continue
            pq = parse_record_to_query(record)
            parsed[pq.query_id] = pq
    return parsed, failed
