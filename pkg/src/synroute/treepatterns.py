"""Production-unit counting over constituency trees.

The nine units (words, sentences, clauses, dependent clauses, T-units,
complex T-units, coordinate phrases, complex nominals, verb phrases) are
counted with a small structural pattern matcher: each unit is a predicate
over tree nodes built from label tests plus child / descendant / sibling
constraints. "Immediately headed by" tests from the classic Tregex
formulations are approximated as "has a child with that label", which
coincides with head-finding on the flat verb phrases these patterns target.

Counting rules, one per unit (FIN = {MD, VBD, VBP, VBZ}):

  W  - leaves whose tag is not punctuation
  S  - top-level S/SQ/SINV/FRAG nodes (at least 1 for any non-empty tree)
  C  - S|SINV|SQ that is finite: has a FIN child, or a finite VP child
       (directly finite or a CC-coordination of finite VPs), or is a
       top-level clause whose first child is a VP with a VB child
  DC - SBAR with a child matching C
  T  - S|SBARQ|SINV|SQ that is top-level, or follows a sibling of those
       labels while not dominated by SBAR/VP; plus top-level FRAGs that
       dominate no such node
  CT - T-unit dominating an SBAR that matches DC
  CP - ADJP|ADVP|NP|VP with a CC child
  CN - NP (parent not NP) dominating JJ/POS/PP/S/VBG or an NP with a later
       NP sibling not immediately followed by CC; SBAR complement (WHNP/
       that/for child, or leading S child) next to or under a VP; S headed
       by VBG/TO VP immediately before a VP
  VP - VP under S|SINV|SQ, plus finite verbs directly under a VP-less SQ
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import EmptyTreeError
from .parses import ConstituencyTree

FINITE_TAGS = frozenset({"MD", "VBD", "VBP", "VBZ"})
SENTENCE_LABELS = frozenset({"S", "SQ", "SINV", "FRAG"})
TUNIT_LABELS = frozenset({"S", "SBARQ", "SINV", "SQ"})
CLAUSE_LABELS = frozenset({"S", "SINV", "SQ"})
PUNCT_TAGS = frozenset({
    ".", ",", ":", "``", "''", "-LRB-", "-RRB-", "-LSB-", "-RSB-",
    "-LCB-", "-RCB-", "HYPH", "NFP", "SYM", "$", "#", "PUNCT",
})


@dataclass
class UnitCounts:
    W: int
    S: int
    C: int
    DC: int
    T: int
    CT: int
    CP: int
    CN: int
    VP: int

    def __post_init__(self):
        if self.DC > self.C or self.CT > self.T:
            raise ValueError("unit counts violate DC <= C or CT <= T")


class _Node:
    """Tree node with parent/sibling context for pattern tests."""

    __slots__ = ("tree", "parent", "idx", "children")

    def __init__(self, tree: ConstituencyTree, parent: "_Node | None", idx: int):
        self.tree = tree
        self.parent = parent
        self.idx = idx
        self.children: list[_Node] = []

    @property
    def label(self) -> str:
        return self.tree.label

    @property
    def leaf_form(self) -> str | None:
        return self.tree.leaf_form

    @property
    def is_top_level(self) -> bool:
        return self.parent is None or self.parent.parent is None

    def descendants(self):
        for c in self.children:
            yield c
            yield from c.descendants()

    def ancestors(self):
        node = self.parent
        while node is not None:
            yield node
            node = node.parent

    def preceding_siblings(self):
        if self.parent is None:
            return []
        return self.parent.children[: self.idx]

    def next_sibling(self) -> "_Node | None":
        if self.parent is None or self.idx + 1 >= len(self.parent.children):
            return None
        return self.parent.children[self.idx + 1]


def _build(tree: ConstituencyTree) -> _Node:
    root = _Node(tree, None, 0)
    stack = [root]
    while stack:
        node = stack.pop()
        for i, child in enumerate(node.tree.children):
            cn = _Node(child, node, i)
            node.children.append(cn)
            stack.append(cn)
        node.children.sort(key=lambda c: c.idx)
    return root


def _has_child(node: _Node, labels) -> bool:
    return any(c.label in labels for c in node.children)


def _is_finite_vp(node: _Node) -> bool:
    # VP [<# FIN | < CC < (VP <# FIN)]
    if node.label != "VP":
        return False
    if _has_child(node, FINITE_TAGS):
        return True
    if _has_child(node, ("CC",)):
        return any(c.label == "VP" and _has_child(c, FINITE_TAGS) for c in node.children)
    return False


def _is_clause(node: _Node) -> bool:
    # S|SINV|SQ [> ROOT <, (VP <# VB) | <# FIN | < finite-VP]
    if node.label not in CLAUSE_LABELS:
        return False
    if node.is_top_level and node.children:
        first = node.children[0]
        if first.label == "VP" and _has_child(first, ("VB",)):
            return True
    if _has_child(node, FINITE_TAGS):
        return True
    return any(_is_finite_vp(c) for c in node.children)


def _is_tunit_core(node: _Node) -> bool:
    # S|SBARQ|SINV|SQ > ROOT | [$-- S|SBARQ|SINV|SQ !>> SBAR|VP]
    if node.label not in TUNIT_LABELS:
        return False
    if node.is_top_level:
        return True
    if any(sib.label in TUNIT_LABELS for sib in node.preceding_siblings()):
        if not any(a.label in ("SBAR", "VP") for a in node.ancestors()):
            return True
    return False


def _is_fragment_tunit(node: _Node) -> bool:
    # FRAG > ROOT, dominating no T-unit of its own
    if node.label != "FRAG" or not node.is_top_level:
        return False
    return not any(_is_tunit_core(d) for d in node.descendants())


def _is_dependent_clause(node: _Node) -> bool:
    return node.label == "SBAR" and any(_is_clause(c) for c in node.children)


def _is_coordinate_phrase(node: _Node) -> bool:
    return node.label in ("ADJP", "ADVP", "NP", "VP") and _has_child(node, ("CC",))


def _is_complex_nominal(node: _Node) -> bool:
    # CN1: NP !> NP [<< JJ|POS|PP|S|VBG | << (NP $++ NP !$+ CC)]
    if node.label == "NP" and (node.parent is None or node.parent.label != "NP"):
        for d in node.descendants():
            if d.label in ("JJ", "POS", "PP", "S", "VBG"):
                return True
            if d.label == "NP":
                later = d.parent.children[d.idx + 1:] if d.parent else []
                if any(s.label == "NP" for s in later):
                    nxt = d.next_sibling()
                    if nxt is None or nxt.label != "CC":
                        return True
        return False
    # CN2: SBAR [<# WHNP | <# (IN < that|That|for|For) | <, S] & [$+ VP | > VP]
    if node.label == "SBAR":
        headish = _has_child(node, ("WHNP",)) or any(
            c.label == "IN" and c.leaf_form in ("that", "That", "for", "For")
            for c in node.children
        )
        if not headish and node.children and node.children[0].label == "S":
            headish = True
        if headish:
            nxt = node.next_sibling()
            if nxt is not None and nxt.label == "VP":
                return True
            if node.parent is not None and node.parent.label == "VP":
                return True
        return False
    # CN3: S < (VP <# VBG|TO) $+ VP
    if node.label == "S":
        if any(c.label == "VP" and _has_child(c, ("VBG", "TO")) for c in node.children):
            nxt = node.next_sibling()
            if nxt is not None and nxt.label == "VP":
                return True
    return False


def _is_verb_phrase(node: _Node) -> bool:
    # VP > S|SINV|SQ, plus FIN > (SQ !< VP)
    if node.label == "VP" and node.parent is not None and node.parent.label in CLAUSE_LABELS:
        return True
    if node.label in FINITE_TAGS and node.parent is not None and node.parent.label == "SQ":
        return not _has_child(node.parent, ("VP",))
    return False


def count_units(con: ConstituencyTree) -> UnitCounts:
    """Count the nine production units of a (possibly multi-sentence) tree."""
    if con is None:
        raise EmptyTreeError("no tree given")
    leaves = con.leaves()
    if not leaves:
        raise EmptyTreeError("tree has no leaves")

    root = _build(con)
    nodes = [root] + list(root.descendants())

    w = sum(1 for leaf in leaves if leaf.label not in PUNCT_TAGS)
    if root.label in ("ROOT", "TOP", ""):
        top = root.children
    else:
        top = [root]
    s = sum(1 for n in top if n.label in SENTENCE_LABELS)
    s = max(s, 1)

    c = sum(1 for n in nodes if _is_clause(n))
    dc = sum(1 for n in nodes if _is_dependent_clause(n))
    t_core = sum(1 for n in nodes if _is_tunit_core(n))
    t = t_core + sum(1 for n in nodes if _is_fragment_tunit(n))
    ct = sum(
        1 for n in nodes
        if _is_tunit_core(n) and any(_is_dependent_clause(d) for d in n.descendants())
    )
    cp = sum(1 for n in nodes if _is_coordinate_phrase(n))
    cn = sum(1 for n in nodes if _is_complex_nominal(n))
    vp = sum(1 for n in nodes if _is_verb_phrase(n))

    return UnitCounts(W=w, S=s, C=c, DC=dc, T=t, CT=ct, CP=cp, CN=cn, VP=vp)
