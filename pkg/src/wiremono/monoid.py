"""Twisted diagram monoids: pairs (diagram; s) multiplied with circle bookkeeping.

Four families are supported, all keyed by a rank n:

``bt``   twisted Brauer monoid, s >= 0
``pbt``  the +/- twisted Brauer monoid, s any integer (adds the inverse circle d)
``pt``   twisted partition monoid, s >= 0
``pbr``  twisted partial Brauer monoid (blocks of size <= 2), s >= 0

The product is (a; s) (b; r) = (ab; s + r + <a, b>) where <a, b> counts the
circles closed up in the middle layer.
"""

from __future__ import annotations

import enum
import math
import random
import re
from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Sequence, Union

import numpy as np

from .diagrams import (
    Diagram,
    Matching,
    SetPartition,
    all_matchings,
    all_set_partitions,
    brauer_multiply,
    hook_matching,
    identity_matching,
    is_partial_brauer,
    partition_multiply,
    transposition_matching,
)


class Family(enum.Enum):
    BT = "bt"
    PBT = "pbt"
    PT = "pt"
    PBR = "pbr"


@dataclass(frozen=True)
class MonoidKind:
    family: Family
    n: int

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"rank must be a positive integer, got {self.n!r}")

    @classmethod
    def parse(cls, spec: str) -> "MonoidKind":
        m = re.fullmatch(r"\s*(bt|pbt|pt|pbr)\s*:\s*(\d+)\s*", spec)
        if m is None:
            raise ValueError(f"bad monoid kind {spec!r}; expected bt:<n>, pbt:<n>, pt:<n> or pbr:<n>")
        return cls(Family(m.group(1)), int(m.group(2)))

    @property
    def signed(self) -> bool:
        return self.family is Family.PBT

    @property
    def uses_partitions(self) -> bool:
        return self.family in (Family.PT, Family.PBR)

    def __str__(self) -> str:
        return f"{self.family.value}:{self.n}"


def twisted_brauer(n: int) -> MonoidKind:
    return MonoidKind(Family.BT, n)


def pm_twisted_brauer(n: int) -> MonoidKind:
    return MonoidKind(Family.PBT, n)


def twisted_partition(n: int) -> MonoidKind:
    return MonoidKind(Family.PT, n)


def twisted_partial_brauer(n: int) -> MonoidKind:
    return MonoidKind(Family.PBR, n)


class KindMismatch(ValueError):
    pass


def _check_diagram(kind: MonoidKind, diagram: Diagram) -> None:
    if diagram.n != kind.n:
        raise ValueError(f"diagram rank {diagram.n} does not match {kind}")
    if kind.uses_partitions:
        if not isinstance(diagram, SetPartition):
            raise TypeError(f"{kind} elements carry a SetPartition")
        if kind.family is Family.PBR and not is_partial_brauer(diagram):
            raise ValueError("partial Brauer diagrams have blocks of size at most 2")
    elif not isinstance(diagram, Matching):
        raise TypeError(f"{kind} elements carry a Matching")


@dataclass(frozen=True)
class TwistedElement:
    kind: MonoidKind
    diagram: Diagram
    s: int

    def __post_init__(self) -> None:
        _check_diagram(self.kind, self.diagram)
        if not isinstance(self.s, int):
            raise TypeError("circle count must be an integer")
        if self.s < 0 and not self.kind.signed:
            raise ValueError(f"negative circle count {self.s} is only allowed in pbt")

    def __mul__(self, other: "TwistedElement") -> "TwistedElement":
        return multiply(self, other)

    def format(self) -> str:
        body = self.diagram.format().split(" ", 1)[1]
        return f"{self.kind} {body} ; s={self.s}"

    def __str__(self) -> str:
        return self.format()

    @classmethod
    def parse(cls, text: str) -> "TwistedElement":
        return parse_element(text)


Element = TwistedElement


def diagram_product(a: Diagram, b: Diagram) -> tuple[Diagram, int]:
    if isinstance(a, Matching) and isinstance(b, Matching):
        return brauer_multiply(a, b)
    if isinstance(a, SetPartition) and isinstance(b, SetPartition):
        return partition_multiply(a, b)
    raise TypeError("cannot multiply a Matching with a SetPartition")


def multiply(x: TwistedElement, y: TwistedElement) -> TwistedElement:
    if x.kind != y.kind:
        raise KindMismatch(f"cannot multiply {x.kind} by {y.kind}")
    d, circles = diagram_product(x.diagram, y.diagram)
    return TwistedElement(x.kind, d, x.s + y.s + circles)


def identity_element(kind: MonoidKind) -> TwistedElement:
    d = identity_matching(kind.n)
    return TwistedElement(kind, d.to_partition() if kind.uses_partitions else d, 0)


def forget(x: TwistedElement) -> Diagram:
    return x.diagram


def convert(x: TwistedElement, kind: MonoidKind) -> TwistedElement:
    """Re-tag ``x`` as an element of ``kind`` (inclusion of submonoids)."""
    d = x.diagram
    if kind.uses_partitions and isinstance(d, Matching):
        d = d.to_partition()
    elif not kind.uses_partitions and isinstance(d, SetPartition):
        d = d.to_matching()
    return TwistedElement(kind, d, x.s)


# -- generators -------------------------------------------------------------

_GEN_RE = re.compile(r"([thcdpe])(\d*)")


@dataclass(frozen=True)
class Gen:
    """A generator symbol: t_i, h_i, c, d, and for partition kinds p_i, e_i.

    ``p_i`` is the identity with the wire {i, i'} cut into two singletons,
    ``e_i`` merges {i, i+1, i', (i+1)'} into one block.
    """

    name: str
    index: int | None = None

    def __str__(self) -> str:
        return self.name + ("" if self.index is None else str(self.index))

    @classmethod
    def parse(cls, token: str) -> "Gen":
        m = _GEN_RE.fullmatch(token.strip())
        if m is None:
            raise ValueError(f"bad generator {token!r}")
        name, digits = m.groups()
        if name in "cd":
            if digits:
                raise ValueError(f"generator {name} takes no index")
            return cls(name)
        if not digits:
            raise ValueError(f"generator {name} needs an index")
        return cls(name, int(digits))


def T(i: int) -> Gen:
    return Gen("t", i)


def H(i: int) -> Gen:
    return Gen("h", i)


C = Gen("c")
D = Gen("d")


def parse_generator_word(text: str) -> list[Gen]:
    return [Gen.parse(tok) for tok in text.split()]


def format_generator_word(word: Sequence[Gen]) -> str:
    return " ".join(str(g) for g in word) if word else "1"


def valid_generators(kind: MonoidKind) -> list[Gen]:
    n = kind.n
    gens = [T(i) for i in range(1, n)] + [H(i) for i in range(1, n)] + [C]
    if kind.signed:
        gens.append(D)
    if kind.uses_partitions:
        gens += [Gen("p", i) for i in range(1, n + 1)]
    if kind.family is Family.PT:
        gens += [Gen("e", i) for i in range(1, n)]
    return gens


def generator(kind: MonoidKind, g: Gen) -> TwistedElement:
    n = kind.n
    if g.name == "t":
        d: Diagram = transposition_matching(n, g.index)
    elif g.name == "h":
        d = hook_matching(n, g.index)
    elif g.name == "c":
        return TwistedElement(kind, identity_element(kind).diagram, 1)
    elif g.name == "d":
        if not kind.signed:
            raise ValueError(f"generator d is only available in pbt, not {kind}")
        return TwistedElement(kind, identity_element(kind).diagram, -1)
    elif g.name == "p":
        if not kind.uses_partitions:
            raise ValueError(f"generator p is only available in pt/pbr, not {kind}")
        i = g.index
        if not 1 <= i <= n:
            raise ValueError(f"p index {i} out of range for n={n}")
        blocks = [[j, n + j] for j in range(n) if j != i - 1] + [[i - 1], [n + i - 1]]
        return TwistedElement(kind, SetPartition.from_blocks(n, blocks), 0)
    elif g.name == "e":
        if kind.family is not Family.PT:
            raise ValueError(f"generator e is only available in pt, not {kind}")
        i = g.index
        if not 1 <= i <= n - 1:
            raise ValueError(f"e index {i} out of range for n={n}")
        blocks = [[j, n + j] for j in range(n) if j not in (i - 1, i)]
        blocks.append([i - 1, i, n + i - 1, n + i])
        return TwistedElement(kind, SetPartition.from_blocks(n, blocks), 0)
    else:
        raise ValueError(f"unknown generator {g}")
    if kind.uses_partitions:
        d = d.to_partition()
    return TwistedElement(kind, d, 0)


def evaluate_generator_word(kind: MonoidKind, word: Sequence[Gen | str]) -> TwistedElement:
    if not word:
        raise ValueError("empty generator word; use identity_element for the identity")
    gens = [Gen.parse(g) if isinstance(g, str) else g for g in word]
    return reduce(multiply, (generator(kind, g) for g in gens))


def random_element(kind: MonoidKind, length: int, seed: Union[int, random.Random, None] = None) -> TwistedElement:
    """Product of ``length`` uniformly drawn generators; deterministic per seed."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    gens = valid_generators(kind)
    x = identity_element(kind)
    for _ in range(length):
        x = multiply(x, generator(kind, rng.choice(gens)))
    return x


# -- text format ------------------------------------------------------------

_ELT_RE = re.compile(r"^\s*(bt|pbt|pt|pbr)\s*:\s*(\d+)\s+(.*?)\s*;\s*s\s*=\s*(-?\d+)\s*$")


def parse_element(text: str) -> TwistedElement:
    """Parse ``bt:3 [1 2][3 3'][1' 2'] ; s=0``."""
    m = _ELT_RE.match(text)
    if m is None:
        raise ValueError(f"cannot parse element {text!r}")
    kind = MonoidKind(Family(m.group(1)), int(m.group(2)))
    diagram_text = f"n={kind.n} {m.group(3)}"
    if kind.uses_partitions:
        d: Diagram = SetPartition.parse(diagram_text)
    else:
        d = Matching.parse(diagram_text)
    return TwistedElement(kind, d, int(m.group(4)))


# -- finite diagram tables for batched evaluation ---------------------------

MAX_TABLE_SIZE = 1000


class DiagramTable:
    """All diagrams of a kind, indexed, with product and circle tables.

    Lets many substitutions be evaluated at once with numpy gathers:
    an element is a pair of arrays (diagram index, s).
    """

    def __init__(self, kind: MonoidKind) -> None:
        self.kind = kind
        n = kind.n
        if kind.family in (Family.BT, Family.PBT):
            diagrams: list[Diagram] = list(all_matchings(n))
        elif kind.family is Family.PBR:
            diagrams = list(all_set_partitions(n, max_block=2))
        else:
            diagrams = list(all_set_partitions(n))
        if len(diagrams) > MAX_TABLE_SIZE:
            raise ValueError(f"{kind} has {len(diagrams)} diagrams, table too large")
        self.diagrams = diagrams
        self.index = {d: i for i, d in enumerate(diagrams)}
        size = len(diagrams)
        self.product = np.empty((size, size), dtype=np.int64)
        self.circles = np.empty((size, size), dtype=np.int64)
        for i, a in enumerate(diagrams):
            for j, b in enumerate(diagrams):
                d, c = diagram_product(a, b)
                self.product[i, j] = self.index[d]
                self.circles[i, j] = c
        self.identity_index = self.index[identity_element(kind).diagram]

    def __len__(self) -> int:
        return len(self.diagrams)

    def mul(self, x: tuple[np.ndarray, np.ndarray], y: tuple[np.ndarray, np.ndarray]) -> tuple[np.ndarray, np.ndarray]:
        xi, xs = x
        yi, ys = y
        return self.product[xi, yi], xs + ys + self.circles[xi, yi]

    def encode(self, x: TwistedElement) -> tuple[int, int]:
        return self.index[x.diagram], x.s

    def decode(self, index: int, s: int) -> TwistedElement:
        return TwistedElement(self.kind, self.diagrams[int(index)], int(s))

    def sample(self, rng: np.random.Generator, size: int, s_range: int) -> tuple[np.ndarray, np.ndarray]:
        """Uniform diagrams with s uniform in [0, s_range] (or [-s_range, s_range] for pbt)."""
        idx = rng.integers(0, len(self.diagrams), size=size)
        low = -s_range if self.kind.signed else 0
        s = rng.integers(low, s_range + 1, size=size)
        return idx, s


def table_size(kind: MonoidKind) -> int:
    n = kind.n
    if kind.family in (Family.BT, Family.PBT):
        return math.prod(range(1, 2 * n, 2))
    if kind.family is Family.PBR:
        # involutions on 2n points (with fixed points)
        a, b = 1, 1
        for k in range(2, 2 * n + 1):
            a, b = b, b + (k - 1) * a
        return b
    # Bell number B(2n)
    row = [1]
    for _ in range(2 * n):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]


@lru_cache(maxsize=None)
def diagram_table(kind: MonoidKind) -> DiagramTable:
    return DiagramTable(kind)


def all_elements_up_to(kind: MonoidKind, max_length: int) -> list[TwistedElement]:
    """Distinct elements reachable by generator words of length <= max_length (BFS order)."""
    gens = [generator(kind, g) for g in valid_generators(kind)]
    frontier = [identity_element(kind)]
    seen = {frontier[0]: None}
    for _ in range(max_length):
        nxt = []
        for x in frontier:
            for g in gens:
                y = multiply(x, g)
                if y not in seen:
                    seen[y] = None
                    nxt.append(y)
        frontier = nxt
    return list(seen)


__all__ = [
    "C",
    "D",
    "DiagramTable",
    "Element",
    "Family",
    "Gen",
    "H",
    "KindMismatch",
    "MonoidKind",
    "T",
    "TwistedElement",
    "all_elements_up_to",
    "convert",
    "diagram_product",
    "diagram_table",
    "evaluate_generator_word",
    "forget",
    "format_generator_word",
    "generator",
    "identity_element",
    "multiply",
    "parse_element",
    "parse_generator_word",
    "pm_twisted_brauer",
    "random_element",
    "table_size",
    "twisted_brauer",
    "twisted_partial_brauer",
    "twisted_partition",
    "valid_generators",
]
