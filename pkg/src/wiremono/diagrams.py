"""Brauer diagrams and set partitions of [n] ∪ [n]'.

Points are encoded by a flat index: 0..n-1 are the left points 1..n and
n..2n-1 are the right points 1'..n'.  The canonical order of points is the
index order, i.e. 1 < ... < n < 1' < ... < n'.

A :class:`Matching` stores the partner of every point (a fixed-point-free
involution).  A :class:`SetPartition` stores a block id per point, with
blocks numbered in order of their least point.

Products follow the gluing picture: the right points of the first factor are
identified with the left points of the second one, giving a middle layer.
Components that live entirely in the middle layer are the circles.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Union


def point_label(p: int, n: int) -> str:
    return str(p + 1) if p < n else f"{p - n + 1}'"


def parse_point(label: str, n: int) -> int:
    label = label.strip()
    primed = label.endswith("'")
    digits = label[:-1] if primed else label
    if not digits.isdigit():
        raise ValueError(f"bad point label {label!r}")
    k = int(digits)
    if not 1 <= k <= n:
        raise ValueError(f"point {label!r} out of range for n={n}")
    return k - 1 + (n if primed else 0)


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")


def _canonical_block_ids(raw: Sequence[int]) -> tuple[int, ...]:
    relabel: dict[int, int] = {}
    out = []
    for b in raw:
        if b not in relabel:
            relabel[b] = len(relabel)
        out.append(relabel[b])
    return tuple(out)


def _blocks_from_ids(block_id: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    blocks: list[list[int]] = []
    for p, b in enumerate(block_id):
        if b == len(blocks):
            blocks.append([])
        blocks[b].append(p)
    return tuple(tuple(b) for b in blocks)


def _format_blocks(n: int, blocks: Iterable[Sequence[int]]) -> str:
    body = "".join(
        "[" + " ".join(point_label(p, n) for p in block) + "]" for block in blocks
    )
    return f"n={n} {body}"


_TEXT_RE = re.compile(r"^\s*n\s*=\s*(\d+)\s*((?:\[[^\]]*\]\s*)*)$")


def _parse_blocks_text(text: str) -> tuple[int, list[list[int]]]:
    m = _TEXT_RE.match(text)
    if m is None:
        raise ValueError(f"cannot parse diagram {text!r}")
    n = int(m.group(1))
    _check_n(n)
    blocks = [
        [parse_point(tok, n) for tok in chunk.split()]
        for chunk in re.findall(r"\[([^\]]*)\]", m.group(2))
    ]
    return n, blocks


@dataclass(frozen=True)
class Matching:
    """A Brauer diagram: a perfect matching of the 2n points."""

    n: int
    partner: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_n(self.n)
        p = self.partner
        if len(p) != 2 * self.n:
            raise ValueError("partner array must have length 2n")
        for i, q in enumerate(p):
            if not (0 <= q < 2 * self.n) or q == i or p[q] != i:
                raise ValueError(f"partner is not a fixed-point-free involution: {p}")

    @classmethod
    def from_blocks(cls, n: int, blocks: Iterable[Sequence[int]]) -> "Matching":
        partner = [-1] * (2 * n)
        for block in blocks:
            if len(block) != 2:
                raise ValueError(f"Brauer blocks must have two points, got {block}")
            a, b = block
            if partner[a] != -1 or partner[b] != -1:
                raise ValueError("point used twice")
            partner[a], partner[b] = b, a
        if -1 in partner:
            raise ValueError("blocks do not cover all points")
        return cls(n, tuple(partner))

    @classmethod
    def from_labels(cls, n: int, blocks: Iterable[Sequence[str]]) -> "Matching":
        return cls.from_blocks(n, [[parse_point(x, n) for x in b] for b in blocks])

    @classmethod
    def parse(cls, text: str) -> "Matching":
        n, blocks = _parse_blocks_text(text)
        return cls.from_blocks(n, blocks)

    @classmethod
    def from_json(cls, text: str) -> "Matching":
        data = json.loads(text)
        return cls.from_labels(data["n"], data["blocks"])

    @classmethod
    def from_permutation(cls, images: Sequence[int]) -> "Matching":
        """Diagram with t-wires {i, images[i]'} (0-based images)."""
        n = len(images)
        return cls.from_blocks(n, [(i, n + images[i]) for i in range(n)])

    def blocks(self) -> tuple[tuple[int, int], ...]:
        return tuple((p, q) for p, q in enumerate(self.partner) if p < q)

    def to_partition(self) -> "SetPartition":
        return SetPartition(self.n, _canonical_block_ids([min(p, q) for p, q in enumerate(self.partner)]))

    def format(self) -> str:
        return _format_blocks(self.n, self.blocks())

    def to_json(self) -> str:
        return _blocks_json(self.n, self.blocks())

    def t_count(self) -> int:
        n = self.n
        return sum(1 for p in range(n) if self.partner[p] >= n)

    def is_permutation(self) -> bool:
        return self.t_count() == self.n

    def __str__(self) -> str:
        return self.format()


@dataclass(frozen=True)
class SetPartition:
    """An arbitrary partition of the 2n points, in canonical block numbering."""

    n: int
    block_id: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_n(self.n)
        if len(self.block_id) != 2 * self.n:
            raise ValueError("block_id array must have length 2n")
        if _canonical_block_ids(self.block_id) != tuple(self.block_id):
            raise ValueError(f"block ids not in canonical form: {self.block_id}")

    @classmethod
    def from_blocks(cls, n: int, blocks: Iterable[Sequence[int]]) -> "SetPartition":
        raw = [-1] * (2 * n)
        for k, block in enumerate(blocks):
            if not block:
                raise ValueError("empty block")
            for p in block:
                if raw[p] != -1:
                    raise ValueError("point used twice")
                raw[p] = k
        if -1 in raw:
            raise ValueError("blocks do not cover all points")
        return cls(n, _canonical_block_ids(raw))

    @classmethod
    def from_labels(cls, n: int, blocks: Iterable[Sequence[str]]) -> "SetPartition":
        return cls.from_blocks(n, [[parse_point(x, n) for x in b] for b in blocks])

    @classmethod
    def parse(cls, text: str) -> "SetPartition":
        n, blocks = _parse_blocks_text(text)
        return cls.from_blocks(n, blocks)

    @classmethod
    def from_json(cls, text: str) -> "SetPartition":
        data = json.loads(text)
        return cls.from_labels(data["n"], data["blocks"])

    def blocks(self) -> tuple[tuple[int, ...], ...]:
        return _blocks_from_ids(self.block_id)

    def is_matching(self) -> bool:
        return all(len(b) == 2 for b in self.blocks())

    def to_matching(self) -> Matching:
        return Matching.from_blocks(self.n, self.blocks())

    def format(self) -> str:
        return _format_blocks(self.n, self.blocks())

    def to_json(self) -> str:
        return _blocks_json(self.n, self.blocks())

    def __str__(self) -> str:
        return self.format()


Diagram = Union[Matching, SetPartition]


def _blocks_json(n: int, blocks: Iterable[Sequence[int]]) -> str:
    payload = {"n": n, "blocks": [[point_label(p, n) for p in b] for b in blocks]}
    return json.dumps(payload, separators=(",", ":"))


def identity_matching(n: int) -> Matching:
    _check_n(n)
    return Matching(n, tuple(list(range(n, 2 * n)) + list(range(n))))


def identity_partition(n: int) -> SetPartition:
    return identity_matching(n).to_partition()


def transposition_matching(n: int, i: int) -> Matching:
    """t_i for 1 <= i <= n-1: wires {i,(i+1)'}, {i',i+1}, the rest horizontal."""
    if not 1 <= i <= n - 1:
        raise ValueError(f"transposition index {i} out of range for n={n}")
    images = list(range(n))
    images[i - 1], images[i] = i, i - 1
    return Matching.from_permutation(images)


def hook_matching(n: int, i: int) -> Matching:
    """h_i for 1 <= i <= n-1: wires {i,i+1}, {i',(i+1)'}, the rest horizontal."""
    if not 1 <= i <= n - 1:
        raise ValueError(f"hook index {i} out of range for n={n}")
    blocks = [(i - 1, i), (n + i - 1, n + i)]
    blocks += [(j, n + j) for j in range(n) if j not in (i - 1, i)]
    return Matching.from_blocks(n, blocks)


def brauer_multiply(a: Matching, b: Matching) -> tuple[Matching, int]:
    """Glue ``a`` to ``b`` and return the product diagram and the new circle count."""
    n = a.n
    if b.n != n:
        raise ValueError(f"cannot multiply diagrams of ranks {a.n} and {b.n}")
    pa, pb = a.partner, b.partner
    seen = [False] * n
    result = [-1] * (2 * n)
    for start in range(2 * n):
        if result[start] != -1:
            continue
        # side 0: standing on a point of a; side 1: on a point of b
        side, pt = (0, start) if start < n else (1, start)
        while True:
            if side == 0:
                q = pa[pt]
                if q < n:
                    end = q
                    break
                seen[q - n] = True
                side, pt = 1, q - n
            else:
                q = pb[pt]
                if q >= n:
                    end = q
                    break
                seen[q] = True
                side, pt = 0, q + n
        result[start], result[end] = end, start
    circles = 0
    for u in range(n):
        if seen[u]:
            continue
        circles += 1
        v = u
        while True:
            seen[v] = True
            w = pb[v]  # l-wire of b, stays in the middle layer
            seen[w] = True
            v = pa[w + n] - n  # r-wire of a
            if v == u:
                break
    return Matching(n, tuple(result)), circles


class _DSU:
    def __init__(self, size: int) -> None:
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[ry] = rx


def partition_multiply(a: SetPartition, b: SetPartition) -> tuple[SetPartition, int]:
    """Product of set partitions via equivalence closure on three layers.

    Nodes 0..n-1 are the left points of ``a``, n..2n-1 the middle layer and
    2n..3n-1 the right points of ``b``.
    """
    n = a.n
    if b.n != n:
        raise ValueError(f"cannot multiply partitions of ranks {a.n} and {b.n}")
    dsu = _DSU(3 * n)
    for block in a.blocks():
        for p in block[1:]:
            dsu.union(block[0], p)
    for block in b.blocks():
        nodes = [p + n for p in block]
        for q in nodes[1:]:
            dsu.union(nodes[0], q)
    outer_roots = {dsu.find(p) for p in range(n)} | {dsu.find(p) for p in range(2 * n, 3 * n)}
    middle_roots = {dsu.find(p) for p in range(n, 2 * n)}
    circles = len(middle_roots - outer_roots)
    raw = [dsu.find(p) for p in range(n)] + [dsu.find(p) for p in range(2 * n, 3 * n)]
    return SetPartition(n, _canonical_block_ids(raw)), circles


def star(a: Diagram) -> Diagram:
    """Swap primed and unprimed points."""
    n = a.n
    swap = lambda p: (p + n) % (2 * n)  # noqa: E731
    if isinstance(a, Matching):
        return Matching(n, tuple(swap(a.partner[swap(p)]) for p in range(2 * n)))
    return SetPartition.from_blocks(n, [[swap(p) for p in b] for b in a.blocks()])


@dataclass(frozen=True)
class WireProfile:
    left: frozenset[tuple[int, int]]
    right: frozenset[tuple[int, int]]
    t: int


def wire_profile(a: Matching) -> WireProfile:
    """The l-wires, r-wires and the number of t-wires of a Brauer diagram."""
    n = a.n
    left, right = set(), set()
    for p, q in a.blocks():
        if q < n:
            left.add((p, q))
        elif p >= n:
            right.add((p, q))
    return WireProfile(frozenset(left), frozenset(right), n - 2 * len(left))


def is_partial_brauer(a: Diagram) -> bool:
    if isinstance(a, Matching):
        return True
    return all(len(b) <= 2 for b in a.blocks())


def all_matchings(n: int) -> Iterator[Matching]:
    """All (2n-1)!! Brauer diagrams of rank n."""
    _check_n(n)

    def rec(free: list[int]) -> Iterator[list[tuple[int, int]]]:
        if not free:
            yield []
            return
        first, rest = free[0], free[1:]
        for k, other in enumerate(rest):
            for tail in rec(rest[:k] + rest[k + 1 :]):
                yield [(first, other)] + tail

    for blocks in rec(list(range(2 * n))):
        yield Matching.from_blocks(n, blocks)


def all_set_partitions(n: int, max_block: int | None = None) -> Iterator[SetPartition]:
    """All set partitions of the 2n points, optionally with bounded block size."""
    _check_n(n)
    size = 2 * n

    def rec(p: int, ids: list[int], sizes: list[int]) -> Iterator[tuple[int, ...]]:
        if p == size:
            yield tuple(ids)
            return
        for b in range(len(sizes) + 1):
            if b < len(sizes):
                if max_block is not None and sizes[b] >= max_block:
                    continue
                sizes[b] += 1
                ids.append(b)
                yield from rec(p + 1, ids, sizes)
                ids.pop()
                sizes[b] -= 1
            else:
                sizes.append(1)
                ids.append(b)
                yield from rec(p + 1, ids, sizes)
                ids.pop()
                sizes.pop()

    for ids in rec(0, [], []):
        yield SetPartition(n, ids)


def double_factorial_odd(n: int) -> int:
    """(2n-1)!!, the number of Brauer diagrams of rank n."""
    return math.prod(range(1, 2 * n, 2))


def permutation_of(a: Matching) -> tuple[int, ...]:
    """0-based images of a permutation diagram."""
    if not a.is_permutation():
        raise ValueError("diagram has l- or r-wires")
    return tuple(a.partner[i] - a.n for i in range(a.n))


__all__ = [
    "Diagram",
    "Matching",
    "SetPartition",
    "WireProfile",
    "all_matchings",
    "all_set_partitions",
    "brauer_multiply",
    "hook_matching",
    "identity_matching",
    "identity_partition",
    "is_partial_brauer",
    "partition_multiply",
    "permutation_of",
    "point_label",
    "parse_point",
    "star",
    "transposition_matching",
    "wire_profile",
]
