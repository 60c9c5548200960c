"""From group identities to twisted Brauer identities, and back for counterexamples.

Given ``u = v`` over letters x_1..x_m, the seed words

    w_i = x_1 ... x_{i-1} x_i^2 x_{i+1} ... x_m x_1   (i < m)
    w_m = x_1 x_2 ... x_m x_1

define an endomorphism phi: x_i -> w_i.  With N the number of J-classes of
the +/- twisted Brauer monoid of rank n, the identity U = V is obtained by
substituting phi^(2N)(x_i) for x_i in u and v.  On the free group phi is
invertible; its inverse is used to pull group counterexamples back to
substitutions for U = V.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass, field
from functools import reduce
from typing import Any, Callable, Mapping, Sequence

from .diagrams import Matching
from .green import (
    SubgroupCoordinates,
    SubgroupDescriptor,
    find_idempotent_in_h_class,
    h_related,
    j_class_count,
    subgroup_element,
    subgroup_inverse,
    units_descriptor,
)
from .identities import Identity, Word, WordTooLong, evaluate, max_word_len
from .monoid import Family, MonoidKind, TwistedElement, convert, multiply, twisted_brauer
from .perms import Perm

Letters = tuple[int, ...]  # 1-based letter indices


@dataclass(frozen=True)
class ReductionPlan:
    m: int
    n: int

    @property
    def N(self) -> int:
        return j_class_count(self.n)

    @property
    def k(self) -> int:
        return 2 * self.N


def seed_words(m: int) -> list[Letters]:
    """The m seed words as tuples of letter indices 1..m."""
    if m < 1:
        raise ValueError("m must be positive")
    base = list(range(1, m + 1))
    words = []
    for i in range(1, m):
        w = base[: i] + [i] + base[i:] + [1]
        words.append(tuple(w))
    words.append(tuple(base + [1]))
    return words


def seed_lengths(m: int, k: int) -> list[int]:
    """|phi^k(x_i)| for each i, from the length recurrence."""
    seeds = seed_words(m)
    lengths = [1] * m
    for _ in range(k):
        lengths = [sum(lengths[j - 1] for j in w) for w in seeds]
    return lengths


def phi_layers(m: int, k: int, cap: int | None = None) -> list[list[Letters]]:
    """[phi^0(x_i)], [phi^1(x_i)], ..., [phi^k(x_i)], each a list over i."""
    cap = max_word_len() if cap is None else cap
    longest = max(seed_lengths(m, k))
    if longest > cap:
        raise WordTooLong(f"phi^{k} produces words of length {longest} > cap {cap}")
    seeds = seed_words(m)
    layer: list[Letters] = [(i,) for i in range(1, m + 1)]
    layers = [layer]
    for _ in range(k):
        layer = [tuple(x for j in w for x in layer[j - 1]) for w in seeds]
        layers.append(layer)
    return layers


def phi_power(m: int, k: int, i: int, cap: int | None = None) -> Letters:
    """w_{i,k} = phi^k(x_i), with w_{i,k+1} = w_i(w_{1,k}, ..., w_{m,k})."""
    if not 1 <= i <= m:
        raise ValueError(f"letter index {i} out of range 1..{m}")
    return phi_layers(m, k, cap)[k][i - 1]


def _to_word(indices: Sequence[int], letters: Sequence[str]) -> Word:
    return Word(tuple(letters[i - 1] for i in indices))


@dataclass(frozen=True)
class ReducedIdentity(Identity):
    """U = V together with the data needed to evaluate it without expanding."""

    source: Identity | None = None
    letters: tuple[str, ...] = ()
    exponent: int = 0

    def layer_values(self, values: Mapping[str, Any], mul: Callable[[Any, Any], Any] = operator.mul) -> list[Any]:
        """Values of w_{i,exponent} for each i, computed layer by layer."""
        seeds = seed_words(len(self.letters))
        cur = [values[x] for x in self.letters]
        for _ in range(self.exponent):
            cur = [reduce(mul, (cur[j - 1] for j in w)) for w in seeds]
        return cur

    def evaluate_sides(self, values, mul=operator.mul):
        inner = dict(zip(self.letters, self.layer_values(values, mul)))
        return self.source.evaluate_sides(inner, mul)


def build_reduced_identity(u: Word, v: Word, n: int, cap: int | None = None) -> ReducedIdentity:
    """U = V with U = u(w_{1,2N}, ..., w_{m,2N}) and likewise for V."""
    source = Identity(u, v)
    letters = source.alphabet()
    m = len(letters)
    plan = ReductionPlan(m, n)
    cap = max_word_len() if cap is None else cap
    lengths = seed_lengths(m, plan.k)
    pos = {x: i for i, x in enumerate(letters)}
    size_u = sum(lengths[pos[x]] for x in u.letters)
    size_v = sum(lengths[pos[x]] for x in v.letters)
    if max(size_u, size_v) > cap:
        raise WordTooLong(f"U = V would have length {max(size_u, size_v)} > cap {cap}")
    top = phi_layers(m, plan.k, cap)[plan.k]
    images = {x: _to_word(top[i], letters) for i, x in enumerate(letters)}
    U = Word(tuple(y for x in u.letters for y in images[x].letters))
    V = Word(tuple(y for x in v.letters for y in images[x].letters))
    bound = max(len(u), len(v)) * (m + 2) ** plan.k
    assert len(U) <= bound and len(V) <= bound, "size bound violated"
    return ReducedIdentity(U, V, source=source, letters=letters, exponent=plan.k)


# -- free group --------------------------------------------------------------

GroupWord = tuple[int, ...]  # signed letter indices, -i is the inverse of x_i


def free_reduce(w: Sequence[int]) -> GroupWord:
    out: list[int] = []
    for a in w:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def group_inverse(w: Sequence[int]) -> GroupWord:
    return tuple(-a for a in reversed(w))


def substitute(w: Sequence[int], images: Sequence[Sequence[int]], cap: int | None = None) -> GroupWord:
    """Replace x_i by images[i-1] (inverses by inverse images) and reduce."""
    cap = max_word_len() if cap is None else cap
    inv = [group_inverse(img) for img in images]
    out: list[int] = []
    for a in w:
        piece = images[a - 1] if a > 0 else inv[-a - 1]
        for b in piece:
            if out and out[-1] == -b:
                out.pop()
            else:
                out.append(b)
        if len(out) > cap:
            raise WordTooLong(f"group word exceeds cap {cap}")
    return tuple(out)


def phi_group(m: int, w: Sequence[int], cap: int | None = None) -> GroupWord:
    return substitute(w, seed_words(m), cap)


def inverse_images(m: int) -> list[GroupWord]:
    """Words y_i with phi(y_i) = x_i, from expressing x_i through w_1..w_m.

    y_1 = x_1 x_m^-1
    y_i = (y_1 ... y_{i-1})^-1 x_i x_m^-1 (y_1 ... y_{i-1})   for 1 < i < m
    y_m = (y_1 ... y_{m-1})^-1 x_m y_1^-1
    """
    if m < 2:
        raise ValueError("phi is not invertible on the free group of rank 1")
    ys: list[GroupWord] = [free_reduce((1, -m))]
    for i in range(2, m):
        prefix = free_reduce([a for y in ys for a in y])
        ys.append(free_reduce(group_inverse(prefix) + (i, -m) + prefix))
    prefix = free_reduce([a for y in ys for a in y])
    ys.append(free_reduce(group_inverse(prefix) + (m,) + group_inverse(ys[0])))
    return ys


def phi_inverse(m: int, w: Sequence[int], cap: int | None = None) -> GroupWord:
    return substitute(w, inverse_images(m), cap)


def g_words(m: int, n: int, cap: int | None = None) -> list[GroupWord]:
    """g_i = phi^(-2N)(x_i) as reduced group words."""
    plan = ReductionPlan(m, n)
    ys = inverse_images(m)
    g: list[GroupWord] = [(i,) for i in range(1, m + 1)]
    for _ in range(plan.k):
        g = [substitute(y, g, cap) for y in ys]
    return g


def reduce_phi_power_at(m: int, k: int, images: Sequence[Sequence[int]], cap: int | None = None) -> list[GroupWord]:
    """reduce(w_{i,k}(images)) for each i, without expanding w_{i,k}."""
    cur = [free_reduce(img) for img in images]
    seeds = seed_words(m)
    for _ in range(k):
        cur = [substitute(w, cur, cap) for w in seeds]
    return cur


# -- the trap lemma and lifting ----------------------------------------------


class TrapFailure(AssertionError):
    pass


@dataclass
class Trap:
    descriptor: SubgroupDescriptor
    values: list[TwistedElement] = field(default_factory=list)


def almeida_trap(kind: MonoidKind, sub: Mapping[Any, TwistedElement], m: int, n: int) -> Trap:
    """Evaluate all w_{i,2N} under ``sub`` and return the subgroup holding them.

    ``sub`` is keyed by 1..m (or by the letters x1..xm).
    """
    if kind.family is not Family.PBT or kind.n != n:
        raise ValueError(f"the trap lemma is applied in pbt:{n}, got {kind}")
    base = [sub[i] if i in sub else sub[f"x{i}"] for i in range(1, m + 1)]
    plan = ReductionPlan(m, n)
    seeds = seed_words(m)
    cur = base
    for _ in range(plan.k):
        cur = [reduce(multiply, (cur[j - 1] for j in w)) for w in seeds]
    first = cur[0]
    for i, val in enumerate(cur):
        if not h_related(val, first):
            raise TrapFailure(f"w_{i + 1},{plan.k} not H-related to w_1,{plan.k}; inputs {base}")
    if not h_related(multiply(first, first), first):
        raise TrapFailure(f"H-class of w_1,{plan.k} is not a group; inputs {base}")
    desc = find_idempotent_in_h_class(first)
    if desc is None:
        raise TrapFailure(f"no idempotent found; inputs {base}")
    return Trap(desc, cur)


def evaluate_group_word(
    w: Sequence[int],
    values: Sequence[TwistedElement],
    desc: SubgroupDescriptor,
) -> TwistedElement:
    """Value of a signed word inside the subgroup ``desc``."""
    inverses = [subgroup_inverse(desc, v) for v in values]
    acc = desc.idempotent
    for a in w:
        acc = multiply(acc, values[a - 1] if a > 0 else inverses[-a - 1])
    return acc


def lift_counterexample(
    n: int,
    u: Word,
    v: Word,
    witness: Mapping[str, Perm | SubgroupCoordinates],
) -> dict[str, TwistedElement]:
    """Turn permutations h with u(h) != v(h) into a substitution refuting U = V in bt:n.

    Each letter x_i is sent to g_i(h_1, ..., h_m), computed in the group of
    units; then w_{i,2N} takes the value h_i and U, V take the values u(h),
    v(h).
    """
    source = Identity(u, v)
    letters = source.alphabet()
    m = len(letters)
    if m < 2:
        raise ValueError("lifting needs at least two letters (phi is not invertible for m = 1)")
    desc = units_descriptor(n)
    hs = []
    for x in letters:
        h = witness[x]
        if isinstance(h, Perm):
            h = SubgroupCoordinates(h, 0)
        if h.z != 0:
            raise ValueError("witness must lie in S_n (z = 0)")
        hs.append(subgroup_element(desc, h))
    group_sub = dict(zip(letters, hs))
    if evaluate(u, group_sub) == evaluate(v, group_sub):
        raise ValueError("witness does not separate u and v")
    plan = ReductionPlan(m, n)
    ys = inverse_images(m)
    cur = hs
    for _ in range(plan.k):
        cur = [evaluate_group_word(y, cur, desc) for y in ys]
    target = twisted_brauer(n)
    return {x: convert(val, target) for x, val in zip(letters, cur)}


def permutation_diagram(p: Perm) -> Matching:
    return Matching.from_permutation(p.images)
