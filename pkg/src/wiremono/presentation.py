"""Defining relations of the twisted Brauer monoid, checked by evaluation."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .monoid import (
    C,
    D,
    Gen,
    H,
    MonoidKind,
    T,
    TwistedElement,
    evaluate_generator_word,
    format_generator_word,
    identity_element,
)

RELATION_NAMES = (
    "M1", "M2", "M3", "C", "TL1", "TL2", "TL3a", "TL3b",
    "Mix1a", "Mix1b", "Mix2", "Mix3a", "Mix3b", "Inv",
)


@dataclass(frozen=True)
class RelationInstance:
    name: str
    lhs: tuple[Gen, ...]
    rhs: tuple[Gen, ...]  # empty tuple denotes the identity element
    indices: tuple[int, ...] = ()

    def __str__(self) -> str:
        return f"{format_generator_word(self.lhs)} = {format_generator_word(self.rhs)}"


def relation_suite(n: int, include_d: bool = False) -> list[RelationInstance]:
    if n < 2:
        raise ValueError("relations need n >= 2")
    idx = range(1, n)
    pairs = [(i, j) for i in idx for j in idx]
    far = [(i, j) for i, j in pairs if abs(i - j) >= 2]
    near = [(i, j) for i, j in pairs if abs(i - j) == 1]
    R = RelationInstance
    out: list[RelationInstance] = []
    out += [R("M1", (T(i), T(i)), (), (i,)) for i in idx]
    out += [R("M2", (T(i), T(j)), (T(j), T(i)), (i, j)) for i, j in far]
    out += [R("M3", (T(i), T(j), T(i)), (T(j), T(i), T(j)), (i, j)) for i, j in near]
    out += [R("C", (C, T(i)), (T(i), C), (i,)) for i in idx]
    out += [R("TL1", (H(i), H(j)), (H(j), H(i)), (i, j)) for i, j in far]
    out += [R("TL2", (H(i), H(j), H(i)), (H(i),), (i, j)) for i, j in near]
    for i in idx:
        out.append(R("TL3a", (H(i), H(i)), (C, H(i)), (i,)))
        out.append(R("TL3b", (H(i), H(i)), (H(i), C), (i,)))
    for i in idx:
        out.append(R("Mix1a", (H(i), T(i)), (H(i),), (i,)))
        out.append(R("Mix1b", (T(i), H(i)), (H(i),), (i,)))
    out += [R("Mix2", (H(i), T(j)), (T(j), H(i)), (i, j)) for i, j in far]
    for i, j in near:
        out.append(R("Mix3a", (T(i), H(j), H(i)), (T(j), H(i)), (i, j)))
        out.append(R("Mix3b", (H(i), H(j), T(i)), (H(i), T(j)), (i, j)))
    if include_d:
        out.append(R("Inv", (C, D), ()))
        out.append(R("Inv", (D, C), ()))
    return out


def evaluate_side(kind: MonoidKind, word: Sequence[Gen]) -> TwistedElement:
    return evaluate_generator_word(kind, word) if word else identity_element(kind)


@dataclass
class Failure:
    relation: RelationInstance
    lhs_value: TwistedElement
    rhs_value: TwistedElement


@dataclass
class RelationReport:
    kind: MonoidKind
    checked: int = 0
    failures: list[Failure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def first_failure(self) -> Failure | None:
        return self.failures[0] if self.failures else None


def check_relations(kind: MonoidKind, relations: Sequence[RelationInstance]) -> RelationReport:
    report = RelationReport(kind)
    for rel in relations:
        lhs = evaluate_side(kind, rel.lhs)
        rhs = evaluate_side(kind, rel.rhs)
        report.checked += 1
        if lhs != rhs:
            report.failures.append(Failure(rel, lhs, rhs))
    return report


def derived_d_commutations(n: int) -> list[RelationInstance]:
    gens = [T(i) for i in range(1, n)] + [H(i) for i in range(1, n)]
    return [RelationInstance("Dcomm", (D, g), (g, D), (g.index,)) for g in gens]


def verify_relations(kind: MonoidKind) -> RelationReport:
    """Evaluate every defining relation (and d-commutations for pbt) in ``kind``."""
    relations = relation_suite(kind.n, include_d=kind.signed)
    if kind.signed:
        relations += derived_d_commutations(kind.n)
    return check_relations(kind, relations)
