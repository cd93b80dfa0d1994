"""Finite rooted trees: binary, ordered, and slotted, plus labelings.

Vertices are addressed by the path of child indices from the root, so the
root is the empty tuple ``()`` and ``(0, 1)`` is the second child of the
first child.  Binary trees restrict steps to 0 (left) and 1 (right) and
record which side a lone child occupies.  Slotted trees are ordered trees
whose children sit in explicitly numbered slots; they represent finite
subtrees of an infinite tree whose per-vertex child counts come from a
branching oracle, with the slot path preserving each vertex's address in
the infinite tree.

Every tree carries its canonical encoding, computed at construction:

    binary   node = "(" sub "," sub ")"      sub = node | "."
    ordered  node = "(" node* ")"
    slotted  node = "(" ("[" slot "]" node)* ")"

A labeled tree additionally writes ":k" directly after each "(".  Equal
trees have equal encodings and vice versa; the strings are ASCII-only and
whitespace-free and are the wire format of all CLI output.  Trees are
immutable after construction and safe to share across threads.
"""

from __future__ import annotations

from typing import Iterator, Mapping, Optional, Union

Address = tuple[int, ...]


class AddressError(ValueError):
    """An address does not point at a vertex of the given tree."""


class LabelingError(ValueError):
    """A label assignment is not an increasing labeling of its shape."""


class TreeParseError(ValueError):
    """Malformed tree encoding; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class BinaryTree:
    """Rooted tree where each vertex has an optional left and right child."""

    __slots__ = ("left", "right", "size", "enc")

    def __init__(
        self,
        left: Optional["BinaryTree"] = None,
        right: Optional["BinaryTree"] = None,
    ):
        self.left = left
        self.right = right
        self.size = 1 + (left.size if left else 0) + (right.size if right else 0)
        self.enc = "({},{})".format(
            left.enc if left else ".",
            right.enc if right else ".",
        )

    def child_items(self) -> list[tuple[int, "BinaryTree"]]:
        items = []
        if self.left is not None:
            items.append((0, self.left))
        if self.right is not None:
            items.append((1, self.right))
        return items

    def __eq__(self, other: object) -> bool:
        if isinstance(other, BinaryTree):
            return self.enc == other.enc
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("BinaryTree", self.enc))

    def __repr__(self) -> str:
        return f"<BinaryTree {self.enc}>"


class OrderedTree:
    """Rooted tree with a linearly ordered sequence of children per vertex."""

    __slots__ = ("children", "size", "enc")

    def __init__(self, children: tuple["OrderedTree", ...] = ()):
        self.children = tuple(children)
        self.size = 1 + sum(c.size for c in self.children)
        self.enc = "({})".format("".join(c.enc for c in self.children))

    def child_items(self) -> list[tuple[int, "OrderedTree"]]:
        return list(enumerate(self.children))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, OrderedTree):
            return self.enc == other.enc
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("OrderedTree", self.enc))

    def __repr__(self) -> str:
        return f"<OrderedTree {self.enc}>"


class SlottedTree:
    """Ordered tree whose children occupy numbered slots.

    ``children`` holds (slot, subtree) pairs with strictly increasing
    nonnegative slots.  The slot path from the root is the vertex's address
    in the ambient infinite tree, which is what makes two subtrees equal
    exactly when they use the same ambient vertex set.
    """

    __slots__ = ("children", "size", "enc")

    def __init__(self, children: tuple[tuple[int, "SlottedTree"], ...] = ()):
        children = tuple(children)
        last = -1
        for slot, _ in children:
            if slot <= last:
                raise ValueError("slots must be strictly increasing")
            last = slot
        if children and children[0][0] < 0:
            raise ValueError("slots must be nonnegative")
        self.children = children
        self.size = 1 + sum(c.size for _, c in children)
        self.enc = "({})".format(
            "".join(f"[{slot}]{c.enc}" for slot, c in children)
        )

    def child_items(self) -> list[tuple[int, "SlottedTree"]]:
        return list(self.children)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, SlottedTree):
            return self.enc == other.enc
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("SlottedTree", self.enc))

    def __repr__(self) -> str:
        return f"<SlottedTree {self.enc}>"


Tree = Union[BinaryTree, OrderedTree, SlottedTree]


class LabeledTree:
    """A tree shape together with a vertex -> label assignment.

    ``labels`` maps each vertex address of ``shape`` to an integer.  For an
    increasing labeling the labels are a bijection onto 1..n, the root gets 1
    and every child's label exceeds its parent's; use ``check_labeling`` to
    enforce that, construction itself only requires the addresses to match.
    """

    __slots__ = ("shape", "labels")

    def __init__(self, shape: Tree, labels: Mapping[Address, int]):
        labels = dict(labels)
        if set(labels) != set(addresses(shape)):
            raise LabelingError("labels must cover exactly the vertices of the shape")
        self.shape = shape
        self.labels = labels

    @property
    def size(self) -> int:
        return self.shape.size

    @property
    def enc(self) -> str:
        return self._encode(self.shape, ())

    def _encode(self, node: Tree, addr: Address) -> str:
        head = f"(:{self.labels[addr]}"
        if isinstance(node, BinaryTree):
            left = self._encode(node.left, addr + (0,)) if node.left else "."
            right = self._encode(node.right, addr + (1,)) if node.right else "."
            return f"{head}{left},{right})"
        if isinstance(node, SlottedTree):
            inner = "".join(
                f"[{slot}]{self._encode(c, addr + (slot,))}"
                for slot, c in node.children
            )
            return f"{head}{inner})"
        inner = "".join(
            self._encode(c, addr + (i,)) for i, c in enumerate(node.children)
        )
        return f"{head}{inner})"

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LabeledTree):
            return self.shape == other.shape and self.labels == other.labels
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("LabeledTree", type(self.shape).__name__, self.enc))

    def __repr__(self) -> str:
        return f"<LabeledTree {self.enc}>"


def check_labeling(labeled: LabeledTree) -> None:
    """Raise LabelingError unless ``labeled`` is an increasing labeling."""
    labels = labeled.labels
    n = labeled.size
    if sorted(labels.values()) != list(range(1, n + 1)):
        raise LabelingError("labels must be a bijection onto 1..n")
    if labels[()] != 1:
        raise LabelingError("root must be labeled 1")
    for addr, label in labels.items():
        if addr and labels[addr[:-1]] >= label:
            raise LabelingError(f"label at {addr} does not exceed its parent's")


def addresses(t: Tree | LabeledTree) -> list[Address]:
    """All vertex addresses of ``t`` in preorder."""
    if isinstance(t, LabeledTree):
        t = t.shape
    out: list[Address] = []

    def walk(node: Tree, addr: Address) -> None:
        out.append(addr)
        for step, child in node.child_items():
            walk(child, addr + (step,))

    walk(t, ())
    return out


def subtree_at(t: Tree, addr: Address) -> Tree:
    """The subtree rooted at ``addr``; raises AddressError if absent."""
    node = t
    for i, step in enumerate(addr):
        for s, child in node.child_items():
            if s == step:
                node = child
                break
        else:
            raise AddressError(f"no vertex at address {addr!r} (failed at step {i})")
    return node


def depth(t: Tree | LabeledTree, addr: Address) -> int:
    """Length of the root path to ``addr``, validated against ``t``."""
    if isinstance(t, LabeledTree):
        t = t.shape
    subtree_at(t, addr)
    return len(addr)


def hook_lengths(t: Tree | LabeledTree) -> dict[Address, int]:
    """Map each vertex to the size of its descendant set (itself included)."""
    if isinstance(t, LabeledTree):
        t = t.shape
    hooks: dict[Address, int] = {}

    def walk(node: Tree, addr: Address) -> int:
        total = 1
        for step, child in node.child_items():
            total += walk(child, addr + (step,))
        hooks[addr] = total
        return total

    walk(t, ())
    return hooks


def completion(t: BinaryTree) -> BinaryTree:
    """Fill every empty child slot of ``t`` with a leaf.

    The result is a complete binary tree (every vertex has 0 or 2 children)
    on 2n+1 vertices whose internal vertices are exactly the vertices of
    ``t``; the n+1 added leaves occupy the slots ``t`` left empty.
    """

    def fill(node: Optional[BinaryTree]) -> BinaryTree:
        if node is None:
            return BinaryTree()
        return BinaryTree(fill(node.left), fill(node.right))

    return fill(t)


def encode(t: Tree | LabeledTree) -> str:
    """Canonical string encoding (see the module grammar)."""
    return t.enc


def decode(text: str, family: str | None = None) -> Tree | LabeledTree:
    """Parse a canonical encoding back into a tree.

    ``family`` may be "binary", "ordered" or "slotted"; when omitted it is
    inferred from the string ("," or "." means binary, "[" means slotted,
    otherwise ordered; a childless slotted tree is indistinguishable from an
    ordered one and parses as ordered).  Labeled encodings yield a
    LabeledTree.  Raises TreeParseError with the offending position.
    """
    if family is None:
        if "," in text or "." in text:
            family = "binary"
        elif "[" in text:
            family = "slotted"
        else:
            family = "ordered"
    if family not in ("binary", "ordered", "slotted"):
        raise ValueError(f"unknown family {family!r}")
    parser = _Parser(text, family)
    shape = parser.parse_node(())
    if parser.pos != len(text):
        raise TreeParseError("trailing characters after tree", parser.pos)
    if parser.labels is not None:
        return LabeledTree(shape, parser.labels)
    return shape


class _Parser:
    def __init__(self, text: str, family: str):
        self.text = text
        self.family = family
        self.pos = 0
        self.labels: dict[Address, int] | None = None

    def error(self, message: str) -> TreeParseError:
        return TreeParseError(message, self.pos)

    def peek(self) -> str:
        if self.pos >= len(self.text):
            raise self.error("unexpected end of input")
        return self.text[self.pos]

    def expect(self, ch: str) -> None:
        if self.pos >= len(self.text) or self.text[self.pos] != ch:
            raise self.error(f"expected {ch!r}")
        self.pos += 1

    def parse_int(self) -> int:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise self.error("expected an integer")
        return int(self.text[start : self.pos])

    def parse_label(self, addr: Address, first: bool) -> None:
        has_label = self.pos < len(self.text) and self.text[self.pos] == ":"
        if first:
            self.labels = {} if has_label else None
        if (self.labels is not None) != has_label:
            raise self.error("labels must appear on every vertex or none")
        if has_label:
            self.pos += 1
            assert self.labels is not None
            self.labels[addr] = self.parse_int()

    def parse_node(self, addr: Address) -> Tree:
        self.expect("(")
        self.parse_label(addr, first=addr == ())
        if self.family == "binary":
            left = self.parse_binary_sub(addr + (0,))
            self.expect(",")
            right = self.parse_binary_sub(addr + (1,))
            self.expect(")")
            return BinaryTree(left, right)
        if self.family == "slotted":
            children = []
            last_slot = -1
            while self.peek() == "[":
                self.pos += 1
                slot = self.parse_int()
                if slot <= last_slot:
                    raise self.error("slots must be strictly increasing")
                last_slot = slot
                self.expect("]")
                children.append((slot, self.parse_node(addr + (slot,))))
            self.expect(")")
            return SlottedTree(tuple(children))
        children = []
        index = 0
        while self.peek() == "(":
            children.append(self.parse_node(addr + (index,)))
            index += 1
        self.expect(")")
        return OrderedTree(tuple(children))

    def parse_binary_sub(self, addr: Address) -> Optional[BinaryTree]:
        if self.peek() == ".":
            self.pos += 1
            return None
        if self.peek() == "(":
            node = self.parse_node(addr)
            assert isinstance(node, BinaryTree)
            return node
        raise self.error("expected '.' or '('")
