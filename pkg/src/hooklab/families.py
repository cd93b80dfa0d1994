"""Tree families: branching oracles, family specs, exhaustive enumerators.

The three families are binary trees, ordered trees weighted by a variable m,
and rooted subtrees of a fixed infinite ordered tree.  The infinite tree is
never materialized: a branching oracle maps each vertex address to its child
count (always finite and at least 1), and enumeration and sampling query it
lazily, never deeper than the tree size they are producing.

Enumerators yield each tree exactly once in lexicographic order of its
canonical encoding, and they stream: sub-streams for the possible subtree
sizes are merged lazily instead of materializing the family.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

from .trees import Address, BinaryTree, OrderedTree, SlottedTree


class FamilyConfigError(ValueError):
    """Family parameters that cannot define a valid growth process."""


class OracleSyntaxError(ValueError):
    """Malformed branching-oracle string."""


class BranchingOracle:
    """Lazy description of an infinite ordered tree by child counts."""

    def child_count(self, addr: Address) -> int:
        raise NotImplementedError


@dataclass(frozen=True)
class ConstantBranching(BranchingOracle):
    """Every vertex has the same number of children."""

    count: int

    def __post_init__(self):
        if self.count < 1:
            raise FamilyConfigError("child counts must be at least 1")

    def child_count(self, addr: Address) -> int:
        return self.count

    def __str__(self) -> str:
        return f"const:{self.count}"


@dataclass(frozen=True)
class DepthBranching(BranchingOracle):
    """Child count depends on depth; the last entry repeats below."""

    counts: tuple[int, ...]

    def __post_init__(self):
        if not self.counts:
            raise FamilyConfigError("depth rule needs at least one count")
        if any(c < 1 for c in self.counts):
            raise FamilyConfigError("child counts must be at least 1")

    def child_count(self, addr: Address) -> int:
        return self.counts[min(len(addr), len(self.counts) - 1)]

    def __str__(self) -> str:
        return "depth:" + ",".join(str(c) for c in self.counts)


@dataclass(frozen=True)
class TableBranching(BranchingOracle):
    """Explicit counts for listed addresses, a fallback rule elsewhere."""

    entries: tuple[tuple[Address, int], ...]
    default: BranchingOracle

    def __post_init__(self):
        if any(c < 1 for _, c in self.entries):
            raise FamilyConfigError("child counts must be at least 1")
        object.__setattr__(self, "_lookup", dict(self.entries))

    def child_count(self, addr: Address) -> int:
        count = self._lookup.get(addr)
        if count is not None:
            return count
        return self.default.child_count(addr)

    def __str__(self) -> str:
        listed = ",".join(
            "{}={}".format("/".join(map(str, a)), c) for a, c in self.entries
        )
        return f"table:{{{listed}}};default:{self.default}"


def parse_oracle(spec: str) -> BranchingOracle:
    """Parse an oracle spec: ``const:K``, ``depth:K1,K2,...`` or ``file:PATH``.

    The file form is a JSON object mapping slash-joined addresses such as
    ``"0/2/1"`` (the root is ``""``) to child counts, plus a mandatory
    ``"default"`` entry holding a const/depth spec for unlisted addresses.
    """
    kind, sep, rest = spec.partition(":")
    if not sep:
        raise OracleSyntaxError(f"oracle spec {spec!r} has no ':'")
    if kind == "const":
        return ConstantBranching(_parse_count(rest))
    if kind == "depth":
        counts = tuple(_parse_count(tok) for tok in rest.split(","))
        return DepthBranching(counts)
    if kind == "file":
        try:
            with open(rest, encoding="ascii") as fh:
                data = json.load(fh)
        except OSError as exc:
            raise OracleSyntaxError(f"cannot read oracle file {rest!r}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise OracleSyntaxError(f"oracle file {rest!r} is not valid JSON: {exc}") from exc
        if not isinstance(data, dict) or "default" not in data:
            raise OracleSyntaxError(f"oracle file {rest!r} must be an object with a 'default' entry")
        default_spec = data.pop("default")
        default = parse_oracle(default_spec)
        if isinstance(default, TableBranching):
            raise OracleSyntaxError("the 'default' entry must be a const or depth spec")
        entries = []
        for key, value in sorted(data.items()):
            entries.append((_parse_address(key), _parse_count(value)))
        return TableBranching(tuple(entries), default)
    raise OracleSyntaxError(f"unknown oracle kind {kind!r}")


def _parse_count(token) -> int:
    try:
        count = int(token)
    except (TypeError, ValueError):
        raise OracleSyntaxError(f"bad child count {token!r}") from None
    if count < 1:
        raise OracleSyntaxError(f"child count {token!r} must be at least 1")
    return count


def _parse_address(key: str) -> Address:
    if key == "":
        return ()
    try:
        return tuple(int(part) for part in key.split("/"))
    except ValueError:
        raise OracleSyntaxError(f"bad address key {key!r}") from None


@dataclass(frozen=True)
class BinaryFamily:
    label = "binary"


@dataclass(frozen=True)
class OrderedFamily:
    """Ordered trees; ``m`` is the weight value, None meaning symbolic."""

    m: Fraction | None = None

    label = "ordered"

    def __post_init__(self):
        if self.m is not None:
            object.__setattr__(self, "m", Fraction(self.m))


@dataclass(frozen=True)
class TbarFamily:
    oracle: BranchingOracle

    label = "tbar"


Family = Union[BinaryFamily, OrderedFamily, TbarFamily]


def _enc(t) -> str:
    return t.enc


def enum_binary(n: int) -> Iterator[BinaryTree]:
    """All binary trees on ``n`` vertices, once each, encoding-ordered."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return _binary(n)


def _binary(n: int) -> Iterator[BinaryTree]:
    if n == 1:
        yield BinaryTree()
        return
    # Encodings interleave across left-subtree sizes, so merge the
    # per-size streams; an absent left child ('.') sorts after any node.
    for left in heapq.merge(*(_binary(i) for i in range(1, n)), key=_enc):
        rest = n - 1 - left.size
        if rest == 0:
            yield BinaryTree(left, None)
        else:
            for right in _binary(rest):
                yield BinaryTree(left, right)
    for right in _binary(n - 1):
        yield BinaryTree(None, right)


def enum_ordered(n: int) -> Iterator[OrderedTree]:
    """All ordered trees on ``n`` vertices, once each, encoding-ordered."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return _ordered(n)


def _ordered(n: int) -> Iterator[OrderedTree]:
    for children in _ordered_seq(n - 1):
        yield OrderedTree(children)


def _ordered_seq(total: int) -> Iterator[tuple[OrderedTree, ...]]:
    """Child sequences of combined size ``total``, ordered by concatenated
    encoding."""
    if total == 0:
        yield ()
        return
    firsts = heapq.merge(*(_ordered(i) for i in range(1, total + 1)), key=_enc)
    for first in firsts:
        for rest in _ordered_seq(total - first.size):
            yield (first,) + rest


def enum_tbar(oracle: BranchingOracle, n: int) -> Iterator[SlottedTree]:
    """All size-``n`` rooted subtrees of the oracle's infinite tree.

    Subtrees are identified by their ambient vertex sets, which the slot
    paths preserve.  The oracle is queried only at vertices that receive
    children, so never at depth n-1 or beyond.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    return _slotted(oracle, (), n)


def _slotted(oracle: BranchingOracle, addr: Address, size: int) -> Iterator[SlottedTree]:
    if size == 1:
        yield SlottedTree()
        return
    width = oracle.child_count(addr)
    for children in _slot_seq(oracle, addr, 0, width, size - 1):
        yield SlottedTree(children)


def _slot_seq(
    oracle: BranchingOracle,
    addr: Address,
    min_slot: int,
    width: int,
    budget: int,
) -> Iterator[tuple[tuple[int, SlottedTree], ...]]:
    """(slot, subtree) sequences using slots in [min_slot, width), strictly
    increasing, with subtree sizes summing to ``budget``; ordered by the
    concatenated "[slot]encoding" text."""
    if budget == 0:
        yield ()
        return
    # "[12]..." sorts before "[1]..." because a digit precedes "]", so order
    # candidate leading slots by the slot text with the bracket appended.
    for slot in sorted(range(min_slot, width), key=lambda s: f"{s}]"):
        subs = heapq.merge(
            *(_slotted(oracle, addr + (slot,), i) for i in range(1, budget + 1)),
            key=_enc,
        )
        for sub in subs:
            for rest in _slot_seq(oracle, addr, slot + 1, width, budget - sub.size):
                yield ((slot, sub),) + rest
