"""Permutations of {1..k} with left-to-right composition.

``p * q`` applies ``p`` first and then ``q``, which is the composition that
permutation diagrams realise when glued left to right.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterator


@dataclass(frozen=True)
class Perm:
    images: tuple[int, ...]  # 0-based: point i goes to images[i]

    def __post_init__(self) -> None:
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, k: int) -> "Perm":
        return cls(tuple(range(k)))

    @classmethod
    def from_cycles(cls, k: int, text: str) -> "Perm":
        """Parse cycle notation such as ``(1 2)(3 4 5)``; ``()`` is the identity."""
        images = list(range(k))
        text = text.strip()
        if not re.fullmatch(r"(\(\s*[\d\s,]*\)\s*)*", text):
            raise ValueError(f"bad cycle notation {text!r}")
        # cycles are applied left to right, each one a permutation on its own
        result = cls.identity(k)
        for body in re.findall(r"\(([^)]*)\)", text):
            pts = [int(x) - 1 for x in re.split(r"[\s,]+", body.strip()) if x]
            if any(not 0 <= p < k for p in pts) or len(set(pts)) != len(pts):
                raise ValueError(f"bad cycle ({body}) for degree {k}")
            images = list(range(k))
            for a, b in zip(pts, pts[1:] + pts[:1]):
                images[a] = b
            result = result * cls(tuple(images))
        return result

    @property
    def degree(self) -> int:
        return len(self.images)

    def __mul__(self, other: "Perm") -> "Perm":
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return Perm(tuple(other.images[i] for i in self.images))

    def inverse(self) -> "Perm":
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(self.degree):
            if start in seen or self.images[start] == start:
                continue
            cyc = []
            i = start
            while i not in seen:
                seen.add(i)
                cyc.append(i)
                i = self.images[i]
            out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(str(i + 1) for i in c) + ")" for c in cyc)


def symmetric_group(k: int) -> Iterator[Perm]:
    for images in itertools.permutations(range(k)):
        yield Perm(images)
