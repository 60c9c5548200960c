"""Green's relations, regularity and maximal subgroups of the +/- twisted Brauer monoid.

All predicates read off wire profiles: L-classes are fixed by the r-wires,
R-classes by the l-wires and J-classes by the number of t-wires.  A finite
brute-force oracle on the plain Brauer monoid is provided for cross-checks.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Union

from .diagrams import (
    Matching,
    all_matchings,
    brauer_multiply,
    hook_matching,
    identity_matching,
    star,
    transposition_matching,
    wire_profile,
)
from .monoid import (
    Family,
    MonoidKind,
    TwistedElement,
    identity_element,
    multiply,
    pm_twisted_brauer,
    random_element,
)
from .perms import Perm


class NotInHClass(ValueError):
    pass


def _require_signed(*xs: TwistedElement) -> None:
    kind = xs[0].kind
    for x in xs:
        if x.kind != kind:
            raise ValueError(f"elements of different monoids: {x.kind} vs {kind}")
    if kind.family is not Family.PBT:
        raise ValueError(f"Green predicates are implemented for pbt only, got {kind}")


def l_related(x: TwistedElement, y: TwistedElement) -> bool:
    _require_signed(x, y)
    return wire_profile(x.diagram).right == wire_profile(y.diagram).right


def r_related(x: TwistedElement, y: TwistedElement) -> bool:
    _require_signed(x, y)
    return wire_profile(x.diagram).left == wire_profile(y.diagram).left


def h_related(x: TwistedElement, y: TwistedElement) -> bool:
    return l_related(x, y) and r_related(x, y)


def j_related(x: TwistedElement, y: TwistedElement) -> bool:
    _require_signed(x, y)
    return wire_profile(x.diagram).t == wire_profile(y.diagram).t


d_related = j_related


def d_connector(x: TwistedElement, y: TwistedElement) -> TwistedElement:
    """An element c with x L c and c R y, for J-related x and y.

    c keeps the r-wires of x and the l-wires of y; the free points are paired
    off in increasing order.
    """
    if not j_related(x, y):
        raise ValueError("elements are not J-related")
    n = x.kind.n
    px, py = wire_profile(x.diagram), wire_profile(y.diagram)
    blocks = list(px.right) + list(py.left)
    used = {p for b in blocks for p in b}
    free_left = [p for p in range(n) if p not in used]
    free_right = [p for p in range(n, 2 * n) if p not in used]
    blocks += list(zip(free_left, free_right))
    return TwistedElement(x.kind, Matching.from_blocks(n, blocks), 0)


def j_class_count(n: int) -> int:
    """Number of J-classes of the +/- twisted Brauer monoid, ceil((n+1)/2)."""
    if n < 1:
        raise ValueError("n must be positive")
    return (n + 2) // 2


def regular_witness(x: TwistedElement) -> TwistedElement:
    """The element (pi*; -2m - s) with x * it * x == x."""
    _require_signed(x)
    m = (x.kind.n - wire_profile(x.diagram).t) // 2
    return TwistedElement(x.kind, star(x.diagram), -2 * m - x.s)


# -- maximal subgroups ------------------------------------------------------


def _return_map(pi: Matching) -> dict[int, int] | None:
    """For a diagram whose H-class is a group: middle point b -> left t-point.

    Starting from a right t-endpoint b' of pi (first factor), walk through the
    l-wires of the second factor and r-wires of the first factor until a
    left t-endpoint of the second factor is reached.  Returns None if some
    walk comes back to a t-wire of the first factor.
    """
    n = pi.n
    p = pi.partner
    left_t = {a for a in range(n) if p[a] >= n}
    right_t = [p[a] - n for a in sorted(left_t)]
    out = {}
    for b in right_t:
        u = b
        while u not in left_t:
            c = p[u]  # l-wire in the second factor
            if p[c + n] < n:  # c' is a t-endpoint of the first factor
                return None
            u = p[c + n] - n
        out[b] = u
    return out


@dataclass(frozen=True)
class SubgroupCoordinates:
    perm: Perm
    z: int

    def __mul__(self, other: "SubgroupCoordinates") -> "SubgroupCoordinates":
        return SubgroupCoordinates(self.perm * other.perm, self.z + other.z)


@dataclass(frozen=True)
class SubgroupDescriptor:
    """A maximal subgroup, given by its idempotent, isomorphic to S_k x Z."""

    idempotent: TwistedElement
    k: int
    s_offset: int

    @cached_property
    def _frame(self) -> tuple[list[int], dict[int, int], dict[int, int]]:
        pi = self.idempotent.diagram
        n = pi.n
        left_t = sorted(a for a in range(n) if pi.partner[a] >= n)
        back = _return_map(pi)
        forward = {a: b for b, a in back.items()}
        return left_t, back, forward

    def contains(self, x: TwistedElement) -> bool:
        return x.kind == self.idempotent.kind and h_related(x, self.idempotent)


def find_idempotent_in_h_class(x: TwistedElement) -> SubgroupDescriptor | None:
    """The maximal subgroup containing x, or None if its H-class is not a group."""
    _require_signed(x)
    if not h_related(multiply(x, x), x):
        return None
    pi = x.diagram
    n = pi.n
    back = _return_map(pi)
    if back is None:
        raise AssertionError(f"H-class test and return walk disagree on {x}")
    prof = wire_profile(pi)
    blocks = list(prof.left) + list(prof.right)
    blocks += [(a, n + b) for b, a in back.items()]
    e = Matching.from_blocks(n, blocks)
    _, loops = brauer_multiply(e, e)
    return SubgroupDescriptor(TwistedElement(x.kind, e, -loops), prof.t, -loops)


def units_descriptor(n: int) -> SubgroupDescriptor:
    return SubgroupDescriptor(identity_element(pm_twisted_brauer(n)), n, 0)


def subgroup_coordinates(desc: SubgroupDescriptor, x: TwistedElement) -> SubgroupCoordinates:
    if not desc.contains(x):
        raise NotInHClass(f"{x} is not in the H-class of {desc.idempotent}")
    left_t, back, _ = desc._frame
    n = x.kind.n
    pos = {a: i for i, a in enumerate(left_t)}
    images = tuple(pos[back[x.diagram.partner[a] - n]] for a in left_t)
    return SubgroupCoordinates(Perm(images), x.s - desc.s_offset)


def subgroup_element(desc: SubgroupDescriptor, coords: SubgroupCoordinates) -> TwistedElement:
    left_t, _, forward = desc._frame
    if coords.perm.degree != desc.k:
        raise ValueError(f"permutation degree {coords.perm.degree} != {desc.k}")
    pi = desc.idempotent.diagram
    n = pi.n
    prof = wire_profile(pi)
    blocks = list(prof.left) + list(prof.right)
    for i, a in enumerate(left_t):
        blocks.append((a, n + forward[left_t[coords.perm.images[i]]]))
    d = Matching.from_blocks(n, blocks)
    return TwistedElement(desc.idempotent.kind, d, coords.z + desc.s_offset)


def subgroup_inverse(desc: SubgroupDescriptor, x: TwistedElement) -> TwistedElement:
    c = subgroup_coordinates(desc, x)
    return subgroup_element(desc, SubgroupCoordinates(c.perm.inverse(), -c.z))


# -- brute-force oracle on B_n ----------------------------------------------

RELATIONS = ("L", "R", "H", "J", "D")


@dataclass
class GreenOracle:
    """Green's relations of the finite Brauer monoid B_n by exhaustive search."""

    n: int
    elements: list[Matching]
    classes: dict[str, list[int]] = field(default_factory=dict)

    @cached_property
    def index(self) -> dict[Matching, int]:
        return {e: i for i, e in enumerate(self.elements)}

    def related(self, relation: str, a: Matching, b: Matching) -> bool:
        lab = self.classes[relation]
        return lab[self.index[a]] == lab[self.index[b]]

    def class_sizes(self, relation: str) -> list[int]:
        counts: dict[int, int] = {}
        for lab in self.classes[relation]:
            counts[lab] = counts.get(lab, 0) + 1
        return sorted(counts.values(), reverse=True)


def _closure(start: Matching, step) -> frozenset[Matching]:
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y in step(x):
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def _labels(ideals: list[frozenset[Matching]], elements: list[Matching]) -> list[int]:
    """Class labels for the equivalence a ~ b iff each lies in the other's ideal."""
    idx = {e: i for i, e in enumerate(elements)}
    labels = [-1] * len(elements)
    nxt = 0
    for i, e in enumerate(elements):
        if labels[i] != -1:
            continue
        for f in ideals[i]:
            j = idx[f]
            if labels[j] == -1 and e in ideals[j]:
                labels[j] = nxt
        nxt += 1
    return labels


def brute_force_green_oracle(n: int) -> GreenOracle:
    if n < 1:
        raise ValueError("n must be positive")
    if n > 4:
        raise ValueError("the brute-force oracle is limited to n <= 4")
    gens = [transposition_matching(n, i) for i in range(1, n)]
    gens += [hook_matching(n, i) for i in range(1, n)]
    prod = lambda a, b: brauer_multiply(a, b)[0]  # noqa: E731
    elements = sorted(
        _closure(identity_matching(n), lambda x: (prod(x, g) for g in gens)),
        key=lambda m: m.partner,
    )
    expected = len(list(all_matchings(n)))
    if len(elements) != expected:
        raise AssertionError(f"generator closure gave {len(elements)} diagrams, expected {expected}")
    right = [_closure(e, lambda x: (prod(x, g) for g in gens)) for e in elements]
    left = [_closure(e, lambda x: (prod(g, x) for g in gens)) for e in elements]
    both = [
        _closure(e, lambda x: [prod(x, g) for g in gens] + [prod(g, x) for g in gens])
        for e in elements
    ]
    oracle = GreenOracle(n, elements)
    oracle.classes["L"] = _labels(left, elements)
    oracle.classes["R"] = _labels(right, elements)
    oracle.classes["J"] = _labels(both, elements)
    pairs = list(zip(oracle.classes["L"], oracle.classes["R"]))
    h_ids: dict[tuple[int, int], int] = {}
    oracle.classes["H"] = [h_ids.setdefault(p, len(h_ids)) for p in pairs]
    # D = L o R: a D b iff the L-class of a meets the R-class of b
    meets = set(pairs)
    l_of, r_of = oracle.classes["L"], oracle.classes["R"]
    d_lab = [-1] * len(elements)
    nxt = 0
    for i in range(len(elements)):
        if d_lab[i] != -1:
            continue
        for j in range(len(elements)):
            if d_lab[j] == -1 and (l_of[i], r_of[j]) in meets:
                d_lab[j] = nxt
        nxt += 1
    oracle.classes["D"] = d_lab
    return oracle


# -- stability ---------------------------------------------------------------


@dataclass
class StabilityReport:
    checked: int = 0
    violations: list[tuple[TwistedElement, TwistedElement, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_stable_pair(a: TwistedElement, b: TwistedElement) -> list[str]:
    problems = []
    ab, ba = multiply(a, b), multiply(b, a)
    if j_related(a, ab) and not r_related(a, ab):
        problems.append("a J ab but not a R ab")
    if j_related(a, ba) and not l_related(a, ba):
        problems.append("a J ba but not a L ba")
    return problems


def stability_check(
    kind: MonoidKind,
    samples: int,
    seed: Union[int, random.Random, None] = None,
    length: int = 12,
    pairs: Iterable[tuple[TwistedElement, TwistedElement]] | None = None,
) -> StabilityReport:
    if kind.family is not Family.PBT:
        raise ValueError("stability check is for pbt kinds")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    if pairs is None:
        pairs = (
            (random_element(kind, rng.randint(0, length), rng), random_element(kind, rng.randint(0, length), rng))
            for _ in range(samples)
        )
    report = StabilityReport()
    for a, b in pairs:
        report.checked += 1
        for problem in check_stable_pair(a, b):
            report.violations.append((a, b, problem))
    return report
