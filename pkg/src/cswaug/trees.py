"""Bracketed (PTB-style) constituency trees over target tokens."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator

from .errors import FormatError

_TOKEN_RE = re.compile(r"\(|\)|[^\s()]+")

# PTB escapes for brackets inside leaves
PTB_ESCAPES = {"-LRB-": "(", "-RRB-": ")", "-LSB-": "[", "-RSB-": "]", "-LCB-": "{", "-RCB-": "}"}


@dataclass
class Node:
    label: str
    children: list["Node"] = field(default_factory=list)
    word: str | None = None
    # filled in by ParseTree: leaf span [start, end) over the target tokens
    start: int = 0
    end: int = 0

    @property
    def is_leaf(self) -> bool:
        return self.word is not None

    @property
    def is_preterminal(self) -> bool:
        return len(self.children) == 1 and self.children[0].is_leaf

    def walk(self) -> Iterator["Node"]:
        yield self
        for child in self.children:
            yield from child.walk()

    def to_string(self) -> str:
        if self.is_leaf:
            return self.word
        inner = " ".join(c.to_string() for c in self.children)
        return f"({self.label} {inner})" if self.label else f"( {inner})"


class ParseTree:
    """A constituency tree whose leaves are the target tokens in order.

    Leaves are stored as word nodes under a POS preterminal, so ``(NN food)`` is
    a node labelled ``NN`` with one leaf child ``food``.
    """

    def __init__(self, root: Node):
        self.root = root
        self._leaves: list[Node] = []
        self._index(root)

    def _index(self, node: Node) -> None:
        if node.is_leaf:
            node.start = len(self._leaves)
            node.end = node.start + 1
            self._leaves.append(node)
            return
        node.start = len(self._leaves)
        for child in node.children:
            self._index(child)
        node.end = len(self._leaves)

    @classmethod
    def parse(cls, text: str) -> "ParseTree":
        tokens = _TOKEN_RE.findall(text)
        if not tokens:
            raise FormatError("empty tree")
        pos = 0

        def node() -> Node:
            nonlocal pos
            if tokens[pos] != "(":
                raise FormatError(f"expected '(' at token {pos} in tree")
            pos += 1
            label = ""
            if pos < len(tokens) and tokens[pos] not in "()":
                label = tokens[pos]
                pos += 1
            children = []
            while pos < len(tokens) and tokens[pos] != ")":
                if tokens[pos] == "(":
                    children.append(node())
                else:
                    children.append(Node(label="", word=tokens[pos]))
                    pos += 1
            if pos >= len(tokens):
                raise FormatError("unbalanced brackets in tree")
            pos += 1
            if not children:
                raise FormatError(f"constituent {label!r} has no children")
            if any(c.is_leaf for c in children):
                if len(children) != 1:
                    raise FormatError(f"leaf under {label!r} must be its only child")
                if not label:
                    raise FormatError(f"leaf {children[0].word!r} has no POS tag")
            return Node(label=label, children=children)

        try:
            root = node()
        except IndexError:
            raise FormatError("unbalanced brackets in tree") from None
        if pos != len(tokens):
            raise FormatError("trailing material after tree")
        # unwrap the PTB "( (S ...))" convention
        while not root.label and len(root.children) == 1 and not root.children[0].is_leaf:
            root = root.children[0]
        return cls(root)

    def without_leaves(self, drop: set[int]) -> "ParseTree | None":
        """Copy of the tree with the given leaf positions removed; constituents
        left empty are pruned. Returns None if nothing remains."""

        def copy(n: Node) -> Node | None:
            if n.is_preterminal:
                if n.start in drop:
                    return None
                return Node(n.label, [Node("", word=n.children[0].word)])
            kids = [c for c in (copy(ch) for ch in n.children) if c is not None]
            return Node(n.label, kids) if kids else None

        root = copy(self.root)
        return ParseTree(root) if root is not None else None

    def map_leaves(self, fn) -> "ParseTree":
        def copy(n: Node) -> Node:
            if n.is_leaf:
                return Node("", word=fn(n.word))
            return Node(n.label, [copy(c) for c in n.children])

        return ParseTree(copy(self.root))

    def leaves(self) -> list[str]:
        return [PTB_ESCAPES.get(leaf.word, leaf.word) for leaf in self._leaves]

    def pos_tags(self) -> list[str]:
        return [self.preterminal(k).label for k in range(len(self._leaves))]

    def preterminal(self, k: int) -> Node:
        for n in self.root.walk():
            if n.is_preterminal and n.start == k:
                return n
        raise IndexError(k)

    def constituents(self) -> list[Node]:
        """Non-leaf nodes in pre-order (preterminals included)."""
        return [n for n in self.root.walk() if not n.is_leaf]

    def __len__(self) -> int:
        return len(self._leaves)

    def __str__(self) -> str:
        return self.root.to_string()

    def __eq__(self, other) -> bool:
        return isinstance(other, ParseTree) and str(self) == str(other)

    def __hash__(self):
        return hash(str(self))

    def __repr__(self) -> str:
        return f"ParseTree({str(self)!r})"
